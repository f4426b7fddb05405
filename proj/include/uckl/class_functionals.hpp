#pragma once
#include <string>
#include <vector>

#include "uckl/discretize.hpp"

namespace uckl {

// 2->2 norm of 1_B |V|^{(d-1)/4} (-Laplace)^{-(d-1)/2} |V|^{(d-1)/4} 1_B on B(x0,rho).
NormEstimate tau(const Potential& V, const std::vector<double>& x0, double rho, int d,
                 const GridParams& grid);

// Same with exponent pair (z = 2, multiplier power 1/2); coincides with tau when d = 3.
NormEstimate tau_f3(const Potential& V, const std::vector<double>& x0, double rho,
                    const GridParams& grid);

// sup_x (-Laplace)^{-1}(1_B |V|)(x) over the lattice of B(x0,rho) plus its center.
NormEstimate kato_norm(const Potential& V, const std::vector<double>& x0, double rho,
                       const GridParams& grid);

// max over lattice centers x in region and r in radii of r^{2-d/p} ||1_{B(x,r)} V||_p.
NormEstimate morrey_norm(const Potential& V, double p, const Region& region,
                         const std::vector<double>& radii, const GridParams& grid);

// sup_t t lambda(t)^{1/p} from the decreasing rearrangement of the samples:
// max_k v_(k) (sum_{j<=k} m_j)^{1/p}.
double weak_lorentz_norm(const SampledField& f, double p);

// (sum_j m_j |v_j|^p)^{1/p}.
double lp_local_norm(const SampledField& f, double p);

// (2 d^{-1} pi^{d/2} c_{1/2} / (Gamma(d/2) c_{d/2})) ||1_B V||_{d/2,inf}^{(d-1)/4}.
double strichartz_rhs(const Potential& V, const std::vector<double>& x0, double rho, int d,
                      const GridParams& grid);
double strichartz_prefactor(int d); // the Gamma-ratio constant above (= 2 pi/3 at d = 3)

enum class PotClass { Fd, F3, Kato, Morrey, WeakLorentz };
PotClass parse_class(const std::string& name); // fd | f3 | kato | morrey | lorentz
std::string class_to_string(PotClass cls);

struct ClassScanReport {
    std::string potential;
    PotClass cls = PotClass::F3;
    double p = 2.0; // exponent for Morrey / WeakLorentz scans
    std::vector<std::vector<double>> centers; // lattice over the compact region
    std::vector<double> radii;                // rho0 2^{-k}, strictly decreasing
    std::vector<std::vector<double>> values;  // [center][radius]
    double betaHat = 0.0;                     // max over centers at the finest radius
    std::vector<std::string> trend;           // per center: decreasing | increasing | flat
};

// Finite rendering of sup over centers / shrinking-radius limit: evaluates the
// class functional on a center lattice and the dyadic radius ladder; betaHat is
// read off the finest level, the limit itself is only reported as a trend.
ClassScanReport class_scan(const Potential& V, const Region& compactRegion, int centersPerAxis,
                           double rho0, int levels, PotClass cls, const GridParams& grid,
                           double p = 2.0);

struct OneRelRow {
    double rho = 0.0;
    double lhs = 0.0;    // tau(|V|+1, x0, rho)
    double rhs = 0.0;    // tau(V, x0, rho)
    double epsHat = 0.0; // lhs - rhs, expected to decrease toward 0 with rho
};

std::vector<OneRelRow> one_rel_check(const Potential& V, const std::vector<double>& x0,
                                     const std::vector<double>& rhoSequence,
                                     const GridParams& grid);

} // namespace uckl
