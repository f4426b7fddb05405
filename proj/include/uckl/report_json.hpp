#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "uckl/class_functionals.hpp"
#include "uckl/verify.hpp"

namespace uckl {

using ojson = nlohmann::ordered_json;

ojson estimate_json(const NormEstimate& e);
ojson grid_json(int n, double h, std::size_t points);
ojson lemma_report_json(const LemmaReport& r);
ojson class_scan_json(const ClassScanReport& r);

// Report envelope: {schemaVersion, command, params, estimate, grid, wallTimeMs,
// seed} plus an optional command-specific "result" object appended by callers.
ojson run_report(const std::string& command, ojson params, ojson estimate, ojson grid,
                 double wallTimeMs, std::uint64_t seed);

// Determinism comparison: equal after dropping wallTimeMs everywhere.
bool reports_equal_modulo_time(const ojson& a, const ojson& b);
ojson strip_wall_time(const ojson& j);

// Validates each input's schemaVersion and concatenates:
// {schemaVersion, merged: true, count, reports: [...]}.
ojson merge_reports(const std::vector<std::string>& paths, const std::vector<ojson>& reports);

void write_json_file(const std::string& path, const ojson& j);
ojson read_json_file(const std::string& path);

void write_scan_csv(const std::string& path, const ClassScanReport& r);

} // namespace uckl
