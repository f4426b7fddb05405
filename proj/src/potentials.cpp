#include "uckl/potentials.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace uckl {

namespace {

double norm2(const double* x, int d) {
    double s = 0.0;
    for (int i = 0; i < d; ++i) s += x[i] * x[i];
    return std::sqrt(s);
}

double stein_value(const Potential& p, double sphereDist) {
    if (sphereDist >= p.steinDelta) return 0.0;
    if (sphereDist >= 1.0)
        throw DomainError("stein evaluation needs sphere distance < 1 (floor too coarse)");
    double expo = 2.0 / (static_cast<double>(p.d) - 1.0);
    return p.C / (std::pow(sphereDist, expo) * std::pow(-std::log(sphereDist), p.b));
}

double hardy_value(const Potential& p, double r) {
    double half = (static_cast<double>(p.d) - 2.0) / 2.0;
    return p.beta * half * half / (r * r);
}

double nearest_sample_value(const Potential& p, const double* x) {
    if (p.gvalues.empty()) throw DomainError("grid-sampled potential has no samples");
    std::size_t best = 0;
    double bestD = std::numeric_limits<double>::infinity();
    const std::size_t n = p.gvalues.size();
    for (std::size_t i = 0; i < n; ++i) {
        double s = 0.0;
        const double* pi = p.gpoints.data() + i * p.d;
        for (int k = 0; k < p.d; ++k) {
            double dx = x[k] - pi[k];
            s += dx * dx;
        }
        if (s < bestD) {
            bestD = s;
            best = i;
        }
    }
    return p.gvalues[best];
}

} // namespace

void Potential::validate() const {
    if (d < 3) throw DomainError("potential dimension must be >= 3");
    switch (kind) {
    case PotentialKind::Hardy:
        if (beta < 0.0) throw DomainError("hardy potential requires beta >= 0");
        break;
    case PotentialKind::ConstantBall:
        if (!(radius > 0.0)) throw DomainError("constant-ball potential requires radius > 0");
        break;
    case PotentialKind::Stein:
        if (!(C > 0.0)) throw DomainError("stein potential requires C > 0");
        if (!(steinDelta > 0.0 && steinDelta < 1.0))
            throw DomainError("stein potential requires delta in (0,1)");
        if (!(b > 2.0 / (static_cast<double>(d) - 1.0)))
            throw DomainError("stein potential requires b > 2/(d-1)");
        break;
    case PotentialKind::GridSampled:
        if (!(cellVolume > 0.0)) throw DomainError("grid-sampled potential requires cellVolume > 0");
        if (gvalues.size() * static_cast<std::size_t>(d) != gpoints.size())
            throw DomainError("grid-sampled potential points/values length mismatch");
        break;
    }
}

Potential Potential::hardy(double beta, int d) {
    Potential p;
    p.kind = PotentialKind::Hardy;
    p.d = d;
    p.beta = beta;
    p.validate();
    return p;
}

Potential Potential::constant_ball(double c, double radius, int d) {
    Potential p;
    p.kind = PotentialKind::ConstantBall;
    p.d = d;
    p.c = c;
    p.radius = radius;
    p.validate();
    return p;
}

Potential Potential::stein(double C, double b, double steinDelta, int d) {
    Potential p;
    p.kind = PotentialKind::Stein;
    p.d = d;
    p.C = C;
    p.b = b;
    p.steinDelta = steinDelta;
    p.validate();
    return p;
}

Potential Potential::grid_sampled(std::vector<double> points, std::vector<double> values,
                                  double cellVolume, int d) {
    Potential p;
    p.kind = PotentialKind::GridSampled;
    p.d = d;
    p.gpoints = std::move(points);
    p.gvalues = std::move(values);
    p.cellVolume = cellVolume;
    p.validate();
    return p;
}

double eval_potential(const Potential& p, const double* x) {
    switch (p.kind) {
    case PotentialKind::Hardy: {
        double r = norm2(x, p.d);
        if (r == 0.0) throw SingularityError("hardy potential is singular at the origin");
        return hardy_value(p, r);
    }
    case PotentialKind::ConstantBall:
        return norm2(x, p.d) < p.radius ? p.c : 0.0;
    case PotentialKind::Stein: {
        double s = std::abs(norm2(x, p.d) - 1.0);
        if (s == 0.0) throw SingularityError("stein potential is singular on the unit sphere");
        return stein_value(p, s);
    }
    case PotentialKind::GridSampled:
        return nearest_sample_value(p, x);
    }
    throw DomainError("unknown potential kind");
}

double eval_potential_floored(const Potential& p, const double* x, double floor) {
    switch (p.kind) {
    case PotentialKind::Hardy: {
        double r = std::max(norm2(x, p.d), floor);
        if (r == 0.0) throw SingularityError("hardy potential needs a positive floor at the origin");
        return hardy_value(p, r);
    }
    case PotentialKind::Stein: {
        double s = std::abs(norm2(x, p.d) - 1.0);
        if (s >= p.steinDelta) return 0.0; // support decided by the true distance
        s = std::max(s, floor);
        if (s == 0.0) throw SingularityError("stein potential needs a positive floor at the sphere");
        return stein_value(p, std::min(s, p.steinDelta));
    }
    default:
        return eval_potential(p, x);
    }
}

void SampledField::validate() const {
    if (values.size() != cellVolumes.size() ||
        values.size() * static_cast<std::size_t>(d) != points.size())
        throw DomainError("sampled field length mismatch");
    for (double v : cellVolumes)
        if (!(v > 0.0)) throw DomainError("sampled field requires positive cell volumes");
}

SampledField sample_on_region(const Potential& p, const Region& region, const GridParams& grid) {
    p.validate();
    if (region.dim() != p.d) throw DomainError("region dimension does not match potential");
    GridPoints gp = grid_points(region, grid);
    SampledField f;
    f.d = p.d;
    f.points = gp.pts;
    f.values.resize(gp.count);
    f.cellVolumes.assign(gp.count, gp.cellVolume());
    double floor = gp.h / 2.0;
    for (std::size_t i = 0; i < gp.count; ++i)
        f.values[i] = eval_potential_floored(p, gp.at(i), floor);
    return f;
}

namespace {

std::vector<std::pair<std::string, std::string>> parse_kv(const std::string& s) {
    std::vector<std::pair<std::string, std::string>> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0)
            throw DomainError("bad potential option '" + item + "' (want key=value)");
        out.emplace_back(item.substr(0, eq), item.substr(eq + 1));
    }
    return out;
}

double to_double(const std::string& key, const std::string& v) {
    try {
        std::size_t used = 0;
        double x = std::stod(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw DomainError("bad numeric value for potential option '" + key + "': " + v);
    }
}

} // namespace

Potential parse_potential(const std::string& spec, int d) {
    std::string name = spec;
    std::string opts;
    if (auto colon = spec.find(':'); colon != std::string::npos) {
        name = spec.substr(0, colon);
        opts = spec.substr(colon + 1);
    }
    auto kv = parse_kv(opts);
    auto reject_unknown = [&](std::initializer_list<const char*> known) {
        for (const auto& [k, v] : kv) {
            bool ok = false;
            for (const char* K : known) ok = ok || k == K;
            if (!ok) throw DomainError("unknown option '" + k + "' for potential '" + name + "'");
            (void)v;
        }
    };
    if (name == "hardy") {
        reject_unknown({"beta"});
        double beta = 1.0;
        for (const auto& [k, v] : kv)
            if (k == "beta") beta = to_double(k, v);
        return Potential::hardy(beta, d);
    }
    if (name == "const") {
        reject_unknown({"c", "radius"});
        double c = 1.0, radius = 1.0;
        for (const auto& [k, v] : kv) {
            if (k == "c") c = to_double(k, v);
            if (k == "radius") radius = to_double(k, v);
        }
        return Potential::constant_ball(c, radius, d);
    }
    if (name == "stein") {
        reject_unknown({"C", "b", "delta"});
        double C = 1.0, b = 2.0, delta = 0.5;
        for (const auto& [k, v] : kv) {
            if (k == "C") C = to_double(k, v);
            if (k == "b") b = to_double(k, v);
            if (k == "delta") delta = to_double(k, v);
        }
        return Potential::stein(C, b, delta, d);
    }
    if (name == "zero") {
        reject_unknown({});
        return Potential::constant_ball(0.0, 1.0, d);
    }
    if (name == "grid") {
        reject_unknown({"path", "cellvol"});
        std::string path;
        double cellvol = 1.0;
        for (const auto& [k, v] : kv) {
            if (k == "path") path = v;
            if (k == "cellvol") cellvol = to_double(k, v);
        }
        if (path.empty()) throw DomainError("grid potential requires path=<csv>");
        return potential_from_csv(path, cellvol, d);
    }
    throw DomainError("unknown potential '" + name + "' (want hardy|const|stein|zero|grid)");
}

std::string potential_to_string(const Potential& p) {
    std::ostringstream os;
    os.precision(15);
    switch (p.kind) {
    case PotentialKind::Hardy:
        os << "hardy:beta=" << p.beta;
        break;
    case PotentialKind::ConstantBall:
        os << "const:c=" << p.c << ",radius=" << p.radius;
        break;
    case PotentialKind::Stein:
        os << "stein:C=" << p.C << ",b=" << p.b << ",delta=" << p.steinDelta;
        break;
    case PotentialKind::GridSampled:
        os << "grid:points=" << p.gvalues.size() << ",cellvol=" << p.cellVolume;
        break;
    }
    return os.str();
}

Potential potential_from_csv(const std::string& path, double cellVolume, int d) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open potential csv: " + path);
    std::string line;
    if (!std::getline(in, line)) throw DomainError("empty potential csv: " + path);
    std::vector<double> pts, vals;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string cell;
        std::vector<double> row;
        while (std::getline(ss, cell, ',')) row.push_back(to_double("csv", cell));
        if (row.size() != static_cast<std::size_t>(d) + 1)
            throw DomainError("potential csv row " + std::to_string(lineno) + " has " +
                              std::to_string(row.size()) + " columns, want " +
                              std::to_string(d + 1));
        pts.insert(pts.end(), row.begin(), row.end() - 1);
        vals.push_back(row.back());
    }
    return Potential::grid_sampled(std::move(pts), std::move(vals), cellVolume, d);
}

} // namespace uckl
