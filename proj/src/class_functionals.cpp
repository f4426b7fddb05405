#include "uckl/class_functionals.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "uckl/kahan.hpp"

namespace uckl {

namespace {

void require_point(const std::vector<double>& x0, int d, const char* who) {
    if (static_cast<int>(x0.size()) != d)
        throw DomainError(std::string(who) + ": center dimension must match d");
}

// Shared core of tau / tau_f3 / the |V|+1 variant: 2->2 norm of the
// multiplier-sandwiched kernel operator on B(x0, rho).
NormEstimate tau_sandwich(const MultiplierSpec& mult, const std::vector<double>& x0, double rho,
                          int d, cdouble z, const GridParams& grid) {
    if (!(rho > 0.0)) throw DomainError("tau requires rho > 0");
    Region B = Region::ball(x0, rho);
    KernelSpec spec;
    spec.d = d;
    spec.z = z;
    spec.N = 0;
    spec.w = 0.0;
    DiscreteOperator A = assemble(spec, B, B, mult, mult, grid);
    return spectral_norm(A);
}

} // namespace

NormEstimate tau(const Potential& V, const std::vector<double>& x0, double rho, int d,
                 const GridParams& grid) {
    V.validate();
    if (V.d != d) throw DomainError("tau: potential dimension must match d");
    require_point(x0, d, "tau");
    double q = (static_cast<double>(d) - 1.0) / 4.0;
    return tau_sandwich(MultiplierSpec::abs_power(V, q), x0, rho, d,
                        cdouble(static_cast<double>(d) - 1.0, 0.0), grid);
}

NormEstimate tau_f3(const Potential& V, const std::vector<double>& x0, double rho,
                    const GridParams& grid) {
    V.validate();
    require_point(x0, V.d, "tau_f3");
    return tau_sandwich(MultiplierSpec::abs_power(V, 0.5), x0, rho, V.d, cdouble(2.0, 0.0), grid);
}

NormEstimate kato_norm(const Potential& V, const std::vector<double>& x0, double rho,
                       const GridParams& grid) {
    V.validate();
    require_point(x0, V.d, "kato_norm");
    if (!(rho > 0.0)) throw DomainError("kato_norm requires rho > 0");
    Region B = Region::ball(x0, rho);
    SampledField f = sample_on_region(V, B, grid);
    for (double& v : f.values) v = std::abs(v);
    KernelSpec spec;
    spec.d = V.d;
    spec.z = 2.0;
    return sup_image_norm(spec, f, B, grid);
}

NormEstimate morrey_norm(const Potential& V, double p, const Region& region,
                         const std::vector<double>& radii, const GridParams& grid) {
    V.validate();
    region.validate();
    if (region.dim() != V.d) throw DomainError("morrey_norm: region dimension mismatch");
    if (!(p > (static_cast<double>(V.d) - 1.0) / 2.0))
        throw DomainError("morrey_norm requires p > (d-1)/2");
    if (radii.empty()) throw DomainError("morrey_norm requires at least one radius");
    for (double r : radii)
        if (!(r > 0.0)) throw DomainError("morrey_norm radii must be positive");

    GridParams centerGrid = grid;
    centerGrid.n = std::min(grid.n, 6);
    GridPoints centers = grid_points(region, centerGrid);

    double power = 2.0 - static_cast<double>(V.d) / p;
    NormEstimate est;
    est.kind = NormKind::SupImage;
    est.gridN = grid.n;
    int cells = 0;
    for (std::size_t c = 0; c < centers.count; ++c) {
        std::vector<double> x(centers.at(c), centers.at(c) + V.d);
        for (double r : radii) {
            SampledField f = sample_on_region(V, Region::ball(x, r), grid);
            double v = std::pow(r, power) * lp_local_norm(f, p);
            est.value = std::max(est.value, v);
            ++cells;
        }
    }
    est.iterations = cells;
    return est;
}

double weak_lorentz_norm(const SampledField& f, double p) {
    f.validate();
    if (!(p >= 1.0)) throw DomainError("weak lorentz norm requires p >= 1");
    const std::size_t n = f.size();
    if (n == 0) return 0.0;
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        return std::abs(f.values[a]) > std::abs(f.values[b]);
    });
    double best = 0.0;
    KahanR cum;
    for (std::size_t k = 0; k < n; ++k) {
        cum.add(f.cellVolumes[idx[k]]);
        best = std::max(best, std::abs(f.values[idx[k]]) * std::pow(cum.value(), 1.0 / p));
    }
    return best;
}

double lp_local_norm(const SampledField& f, double p) {
    f.validate();
    if (!(p > 0.0)) throw DomainError("lp norm requires p > 0");
    KahanR s;
    for (std::size_t j = 0; j < f.size(); ++j)
        s.add(f.cellVolumes[j] * std::pow(std::abs(f.values[j]), p));
    return std::pow(s.value(), 1.0 / p);
}

double strichartz_prefactor(int d) {
    if (d < 3) throw DomainError("strichartz prefactor requires d >= 3");
    double dd = static_cast<double>(d);
    const double pi = 3.141592653589793238462643383279502884;
    double cHalf = riesz_constant(cdouble(0.5, 0.0), d).real();
    double cDHalf = riesz_constant(cdouble(dd / 2.0, 0.0), d).real();
    return 2.0 / dd * std::pow(pi, dd / 2.0) * cHalf / (std::tgamma(dd / 2.0) * cDHalf);
}

double strichartz_rhs(const Potential& V, const std::vector<double>& x0, double rho, int d,
                      const GridParams& grid) {
    V.validate();
    if (V.d != d) throw DomainError("strichartz_rhs: potential dimension must match d");
    require_point(x0, d, "strichartz_rhs");
    if (!(rho > 0.0)) throw DomainError("strichartz_rhs requires rho > 0");
    SampledField f = sample_on_region(V, Region::ball(x0, rho), grid);
    double wl = weak_lorentz_norm(f, static_cast<double>(d) / 2.0);
    return strichartz_prefactor(d) * std::pow(wl, (static_cast<double>(d) - 1.0) / 4.0);
}

PotClass parse_class(const std::string& name) {
    if (name == "fd") return PotClass::Fd;
    if (name == "f3") return PotClass::F3;
    if (name == "kato") return PotClass::Kato;
    if (name == "morrey") return PotClass::Morrey;
    if (name == "lorentz") return PotClass::WeakLorentz;
    throw DomainError("unknown class '" + name + "' (want fd|f3|kato|morrey|lorentz)");
}

std::string class_to_string(PotClass cls) {
    switch (cls) {
    case PotClass::Fd: return "fd";
    case PotClass::F3: return "f3";
    case PotClass::Kato: return "kato";
    case PotClass::Morrey: return "morrey";
    case PotClass::WeakLorentz: return "lorentz";
    }
    return "unknown";
}

ClassScanReport class_scan(const Potential& V, const Region& compactRegion, int centersPerAxis,
                           double rho0, int levels, PotClass cls, const GridParams& grid,
                           double p) {
    V.validate();
    compactRegion.validate();
    if (compactRegion.dim() != V.d) throw DomainError("class_scan: region dimension mismatch");
    if (levels < 2) throw DomainError("class_scan requires levels >= 2");
    if (!(rho0 > 0.0)) throw DomainError("class_scan requires rho0 > 0");
    if (centersPerAxis < 1) throw DomainError("class_scan requires centersPerAxis >= 1");

    ClassScanReport rep;
    rep.potential = potential_to_string(V);
    rep.cls = cls;
    rep.p = p;
    if (centersPerAxis == 1) {
        rep.centers.push_back(compactRegion.center);
    } else {
        GridParams cg = grid;
        cg.n = centersPerAxis;
        GridPoints cpts = grid_points(compactRegion, cg);
        for (std::size_t c = 0; c < cpts.count; ++c)
            rep.centers.emplace_back(cpts.at(c), cpts.at(c) + V.d);
    }
    rep.radii.resize(levels);
    for (int k = 0; k < levels; ++k) rep.radii[k] = rho0 * std::pow(2.0, -k);

    auto evalCell = [&](const std::vector<double>& c, double rho) -> double {
        switch (cls) {
        case PotClass::Fd:
            return tau(V, c, rho, V.d, grid).value;
        case PotClass::F3:
            return tau_f3(V, c, rho, grid).value;
        case PotClass::Kato:
            return kato_norm(V, c, rho, grid).value;
        case PotClass::Morrey: {
            SampledField f = sample_on_region(V, Region::ball(c, rho), grid);
            return std::pow(rho, 2.0 - static_cast<double>(V.d) / p) * lp_local_norm(f, p);
        }
        case PotClass::WeakLorentz: {
            SampledField f = sample_on_region(V, Region::ball(c, rho), grid);
            return weak_lorentz_norm(f, p);
        }
        }
        throw DomainError("unknown class");
    };

    rep.values.assign(rep.centers.size(), std::vector<double>(levels, 0.0));
    for (std::size_t c = 0; c < rep.centers.size(); ++c)
        for (int k = 0; k < levels; ++k) rep.values[c][k] = evalCell(rep.centers[c], rep.radii[k]);

    rep.trend.resize(rep.centers.size());
    for (std::size_t c = 0; c < rep.centers.size(); ++c) {
        double first = rep.values[c].front();
        double last = rep.values[c].back();
        rep.betaHat = std::max(rep.betaHat, last);
        if (last < 0.9 * first)
            rep.trend[c] = "decreasing";
        else if (last > 1.1 * first)
            rep.trend[c] = "increasing";
        else
            rep.trend[c] = "flat";
    }
    return rep;
}

std::vector<OneRelRow> one_rel_check(const Potential& V, const std::vector<double>& x0,
                                     const std::vector<double>& rhoSequence,
                                     const GridParams& grid) {
    V.validate();
    require_point(x0, V.d, "one_rel_check");
    if (rhoSequence.empty()) throw DomainError("one_rel_check requires at least one rho");
    int d = V.d;
    double q = (static_cast<double>(d) - 1.0) / 4.0;
    cdouble z(static_cast<double>(d) - 1.0, 0.0);
    std::vector<OneRelRow> rows;
    rows.reserve(rhoSequence.size());
    for (double rho : rhoSequence) {
        OneRelRow row;
        row.rho = rho;
        row.lhs = tau_sandwich(MultiplierSpec::abs_power(V, q, 1.0), x0, rho, d, z, grid).value;
        row.rhs = tau_sandwich(MultiplierSpec::abs_power(V, q, 0.0), x0, rho, d, z, grid).value;
        row.epsHat = row.lhs - row.rhs;
        rows.push_back(row);
    }
    return rows;
}

} // namespace uckl
