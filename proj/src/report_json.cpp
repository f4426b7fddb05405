#include "uckl/report_json.hpp"

#include <fstream>

#include "uckl/errors.hpp"

namespace uckl {

namespace {
constexpr int kSchemaVersion = 1;
}

ojson estimate_json(const NormEstimate& e) {
    ojson j;
    j["kind"] = norm_kind_name(e.kind);
    j["value"] = e.value;
    j["residual"] = e.residual;
    j["iterations"] = e.iterations;
    return j;
}

ojson grid_json(int n, double h, std::size_t points) {
    ojson j;
    j["n"] = n;
    j["h"] = h;
    j["points"] = points;
    return j;
}

ojson lemma_report_json(const LemmaReport& r) {
    ojson j;
    j["lemmaId"] = r.lemmaId;
    j["samples"] = r.samples;
    j["empiricalConstant"] = r.empiricalConstant;
    ojson fg = ojson::object();
    for (const auto& [k, v] : r.fittedGrowth) fg[k] = v;
    j["fittedGrowth"] = fg;
    ojson wc = ojson::object();
    for (const auto& [k, v] : r.worstCase) wc[k] = v;
    j["worstCase"] = wc;
    j["pass"] = r.pass;
    j["notes"] = r.notes;
    return j;
}

ojson class_scan_json(const ClassScanReport& r) {
    ojson j;
    j["potential"] = r.potential;
    j["class"] = class_to_string(r.cls);
    j["p"] = r.p;
    j["centers"] = r.centers;
    j["radii"] = r.radii;
    j["values"] = r.values;
    j["betaHat"] = r.betaHat;
    j["trend"] = r.trend;
    return j;
}

ojson run_report(const std::string& command, ojson params, ojson estimate, ojson grid,
                 double wallTimeMs, std::uint64_t seed) {
    ojson j;
    j["schemaVersion"] = kSchemaVersion;
    j["command"] = command;
    j["params"] = std::move(params);
    j["estimate"] = std::move(estimate);
    j["grid"] = std::move(grid);
    j["wallTimeMs"] = wallTimeMs;
    j["seed"] = seed;
    return j;
}

ojson strip_wall_time(const ojson& j) {
    if (j.is_object()) {
        ojson out = ojson::object();
        for (auto it = j.begin(); it != j.end(); ++it) {
            if (it.key() == "wallTimeMs") continue;
            out[it.key()] = strip_wall_time(it.value());
        }
        return out;
    }
    if (j.is_array()) {
        ojson out = ojson::array();
        for (const auto& el : j) out.push_back(strip_wall_time(el));
        return out;
    }
    return j;
}

bool reports_equal_modulo_time(const ojson& a, const ojson& b) {
    return strip_wall_time(a) == strip_wall_time(b);
}

ojson merge_reports(const std::vector<std::string>& paths, const std::vector<ojson>& reports) {
    if (paths.size() != reports.size())
        throw DomainError("merge_reports: path/report count mismatch");
    ojson merged;
    merged["schemaVersion"] = kSchemaVersion;
    merged["merged"] = true;
    merged["count"] = reports.size();
    ojson arr = ojson::array();
    for (std::size_t i = 0; i < reports.size(); ++i) {
        const ojson& r = reports[i];
        if (!r.is_object() || !r.contains("schemaVersion") ||
            !r["schemaVersion"].is_number_integer() ||
            r["schemaVersion"].get<int>() != kSchemaVersion)
            throw DomainError("merge_reports: '" + paths[i] +
                              "' is not a schemaVersion " + std::to_string(kSchemaVersion) +
                              " report");
        ojson entry = ojson::object();
        entry["source"] = paths[i];
        entry["report"] = r;
        arr.push_back(std::move(entry));
    }
    merged["reports"] = std::move(arr);
    return merged;
}

void write_json_file(const std::string& path, const ojson& j) {
    std::ofstream os(path);
    if (!os) throw DomainError("cannot open '" + path + "' for writing");
    os << j.dump(2) << "\n";
}

ojson read_json_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw DomainError("cannot open '" + path + "' for reading");
    ojson j = ojson::parse(is, nullptr, true);
    return j;
}

void write_scan_csv(const std::string& path, const ClassScanReport& r) {
    std::ofstream os(path);
    if (!os) throw DomainError("cannot open '" + path + "' for writing");
    os.precision(17);
    os << "centerIndex";
    std::size_t d = r.centers.empty() ? 0 : r.centers.front().size();
    for (std::size_t k = 0; k < d; ++k) os << ",c" << k;
    for (double rho : r.radii) os << ",rho=" << rho;
    os << ",trend\n";
    for (std::size_t c = 0; c < r.centers.size(); ++c) {
        os << c;
        for (double x : r.centers[c]) os << "," << x;
        for (double v : r.values[c]) os << "," << v;
        os << "," << r.trend[c] << "\n";
    }
}

} // namespace uckl
