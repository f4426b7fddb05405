#include "uckl/verify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

#include "uckl/kahan.hpp"
#include "uckl/parallel.hpp"

namespace uckl {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

// Frozen envelope for the inner/outer annulus estimates; recalibrated from the
// C++ calibrate tool before freezing tests (observed maxima sit near 0.28).
constexpr double kAnnulusEnvelope = 0.35;

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

std::vector<double> zeros(int d) { return std::vector<double>(static_cast<std::size_t>(d), 0.0); }

double max_over_min(const std::vector<double>& v) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    for (double x : v) {
        lo = std::min(lo, x);
        hi = std::max(hi, x);
    }
    if (!(lo > 0.0)) return std::numeric_limits<double>::infinity();
    return hi / lo;
}

} // namespace

double ManufacturedSolution::psi(double r) const {
    double w = std::clamp((r - r1) / (r2 - r1), 0.0, 1.0);
    return 1.0 - ((6.0 * w - 15.0) * w + 10.0) * w * w * w;
}

double ManufacturedSolution::dpsi(double r) const {
    if (r <= r1 || r >= r2) return 0.0;
    double w = (r - r1) / (r2 - r1);
    return -((30.0 * w - 60.0) * w + 30.0) * w * w / (r2 - r1);
}

double ManufacturedSolution::d2psi(double r) const {
    if (r <= r1 || r >= r2) return 0.0;
    double w = (r - r1) / (r2 - r1);
    return -((120.0 * w - 180.0) * w + 60.0) * w / ((r2 - r1) * (r2 - r1));
}

double ManufacturedSolution::u(double r, int d) const {
    (void)d;
    return std::pow(r, 2.0 * m) * psi(r);
}

double ManufacturedSolution::laplacian(double r, int d) const {
    double k = 2.0 * m;
    double dd = static_cast<double>(d);
    return k * (k + dd - 2.0) * std::pow(r, k - 2.0) * psi(r) +
           (2.0 * k + dd - 1.0) * std::pow(r, k - 1.0) * dpsi(r) +
           std::pow(r, k) * d2psi(r);
}

std::vector<double> default_theta_grid(int count) {
    if (count < 2) throw DomainError("theta grid needs at least two points");
    std::vector<double> th(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i)
        th[static_cast<std::size_t>(i)] = kPi * static_cast<double>(i) / (count - 1);
    return th;
}

std::vector<double> default_t_grid_low() {
    std::vector<double> ts;
    for (int i = 1; i <= 19; ++i) ts.push_back(0.05 * i);
    return ts;
}

std::vector<double> default_t_grid_regimes() {
    return {0.05, 0.14, 0.23, 0.32, 0.41, 0.50, 0.55, 0.60, 0.65, 0.70, 0.75, 0.80, 0.85,
            0.90, 0.95, 1.03, 1.1,  1.3,  1.6,  1.9,  2.0,  2.5,  3.5,  5.0,  8.0};
}

std::vector<double> default_gamma_grid(double gammaMax) {
    std::vector<double> gs{0.0};
    for (double g : {0.5, 1.0, 2.0, 3.0, 4.0}) {
        if (g > gammaMax + 1e-12) break;
        gs.push_back(g);
        gs.push_back(-g);
    }
    return gs;
}

LemmaReport check_lemma1(int d, int Nmax, const std::vector<double>& tGrid,
                         const std::vector<double>& thetaGrid, double zReal) {
    if (Nmax < 2) throw DomainError("check_lemma1 requires Nmax >= 2");
    if (tGrid.empty() || thetaGrid.empty()) throw DomainError("check_lemma1 requires sample grids");
    cdouble z(zReal, 0.0);
    KernelSpec probe;
    probe.d = d;
    probe.z = z;
    probe.validate();

    const std::size_t T = tGrid.size(), H = thetaGrid.size();
    const std::size_t total = static_cast<std::size_t>(Nmax) * T * H;
    std::vector<double> ratios(total, 0.0);
    parallel_for(total, [&](std::size_t idx) {
        int N = static_cast<int>(idx / (T * H)) + 1;
        double t = tGrid[(idx / H) % T];
        double th = thetaGrid[idx % H];
        double F = std::abs(remainder_reduced(z, d, 0, t, th).value);
        double denom = std::pow(static_cast<double>(N), d - 3) * std::pow(t, N) * F;
        double R = std::abs(remainder_reduced(z, d, N, t, th).value);
        ratios[idx] = denom > 0.0 ? R / denom : 0.0;
    });

    double cFull = 0.0, cHalf = 0.0;
    std::size_t worst = 0;
    for (std::size_t idx = 0; idx < total; ++idx) {
        int N = static_cast<int>(idx / (T * H)) + 1;
        if (ratios[idx] > cFull) {
            cFull = ratios[idx];
            worst = idx;
        }
        if (N <= Nmax / 2) cHalf = std::max(cHalf, ratios[idx]);
    }

    LemmaReport rep;
    rep.lemmaId = "L1";
    rep.samples = static_cast<long>(total);
    rep.empiricalConstant = cFull;
    double stability = cHalf > 0.0 ? cFull / cHalf : std::numeric_limits<double>::infinity();
    rep.fittedGrowth = {{"halfDepthConstant", cHalf}, {"stabilityRatio", stability}};
    rep.worstCase = {{"N", static_cast<double>(worst / (T * H) + 1)},
                     {"t", tGrid[(worst / H) % T]},
                     {"theta", thetaGrid[worst % H]}};
    rep.pass = std::isfinite(cFull) && cFull > 0.0 && stability <= 1.2;
    rep.notes.push_back("ratio |R_N| / (N^{d-3} t^N |F|), sup over N <= " + std::to_string(Nmax));
    return rep;
}

LemmaReport check_lemma2(int d, const std::vector<double>& gammaGrid, int Nmax,
                         const std::vector<double>& tGrid, const std::vector<double>& thetaGrid) {
    if (Nmax < 1) throw DomainError("check_lemma2 requires Nmax >= 1");
    if (gammaGrid.empty() || tGrid.empty() || thetaGrid.empty())
        throw DomainError("check_lemma2 requires sample grids");

    const std::size_t G = gammaGrid.size(), T = tGrid.size(), H = thetaGrid.size();
    const std::size_t perGamma = static_cast<std::size_t>(Nmax) * T * H;

    std::vector<double> sup(G, 0.0);
    std::vector<std::array<double, 3>> supAt(G); // N, t, theta of the per-gamma sup
    long excluded = 0;

    std::vector<double> ratios(perGamma);
    std::vector<unsigned char> skip(perGamma);
    for (std::size_t g = 0; g < G; ++g) {
        cdouble z(static_cast<double>(d) - 1.0, gammaGrid[g]);
        parallel_for(perGamma, [&](std::size_t idx) {
            int N = static_cast<int>(idx / (T * H)) + 1;
            double t = tGrid[(idx / H) % T];
            double th = thetaGrid[idx % H];
            ReducedRemainder R = remainder_reduced(z, d, N, t, th);
            double mag = std::abs(R.value);
            if (mag > 0.0 && R.err > 1e-6 * mag) { // cancellation sentinel
                skip[idx] = 1;
                ratios[idx] = 0.0;
                return;
            }
            skip[idx] = 0;
            double F = std::abs(remainder_reduced(z, d, 0, t, th).value);
            double denom = std::pow(t, N) * F;
            ratios[idx] = denom > 0.0 ? mag / denom : 0.0;
        });
        for (std::size_t idx = 0; idx < perGamma; ++idx) {
            if (skip[idx]) {
                ++excluded;
                continue;
            }
            if (ratios[idx] > sup[g]) {
                sup[g] = ratios[idx];
                supAt[g] = {static_cast<double>(idx / (T * H) + 1), tGrid[(idx / H) % T],
                            thetaGrid[idx % H]};
            }
        }
    }

    // Least-squares ln sup = ln C1 + c1 gamma^2, slope clamped to >= 0,
    // intercept raised so every per-gamma sup sits under the envelope.
    double Sx = 0, Sy = 0, Sxx = 0, Sxy = 0;
    for (std::size_t g = 0; g < G; ++g) {
        double x = gammaGrid[g] * gammaGrid[g], y = std::log(std::max(sup[g], 1e-300));
        Sx += x;
        Sy += y;
        Sxx += x * x;
        Sxy += x * y;
    }
    double n = static_cast<double>(G);
    double denomFit = n * Sxx - Sx * Sx;
    double c1 = denomFit > 0.0 ? std::max(0.0, (n * Sxy - Sx * Sy) / denomFit) : 0.0;
    double maxResid = -std::numeric_limits<double>::infinity();
    std::size_t worstG = 0;
    for (std::size_t g = 0; g < G; ++g) {
        double resid = std::log(std::max(sup[g], 1e-300)) - c1 * gammaGrid[g] * gammaGrid[g];
        if (resid > maxResid) {
            maxResid = resid;
            worstG = g;
        }
    }
    double C1 = std::exp(maxResid);

    bool holds = true;
    for (std::size_t g = 0; g < G; ++g)
        if (sup[g] > C1 * std::exp(c1 * gammaGrid[g] * gammaGrid[g]) * (1.0 + 1e-9)) holds = false;

    long total = static_cast<long>(G * perGamma);
    LemmaReport rep;
    rep.lemmaId = "L2";
    rep.samples = total;
    rep.empiricalConstant = C1;
    rep.fittedGrowth = {{"C1", C1},
                        {"c1", c1},
                        {"excludedFraction", static_cast<double>(excluded) / total}};
    rep.worstCase = {{"gamma", gammaGrid[worstG]},
                     {"N", supAt[worstG][0]},
                     {"t", supAt[worstG][1]},
                     {"theta", supAt[worstG][2]}};
    rep.pass = holds;
    rep.notes.push_back("per-gamma sup of |R_N| / (t^N |1 - t e^{i theta}|^{-1}), excluded " +
                        std::to_string(excluded) + " of " + std::to_string(total));
    return rep;
}

double binom_bound_exponent() { return kPi * kPi / 16.0; }
double binom_bound_exponent_understated() { return kPi * kPi / 48.0; }

LemmaReport check_binom_bound(const std::vector<double>& gammaGrid, int Kmax, double c) {
    if (Kmax < 1) throw DomainError("check_binom_bound requires Kmax >= 1");
    if (gammaGrid.empty()) throw DomainError("check_binom_bound requires a gamma grid");
    if (!(c > 0.0)) throw DomainError("check_binom_bound requires c > 0");

    std::vector<cdouble> base = binom_coeff_seq(cdouble(-0.5, 0.0), Kmax);
    double worstRatio = 0.0, worstGamma = 0.0;
    int worstK = 0;
    for (double gamma : gammaGrid) {
        std::vector<cdouble> h = binom_coeff_seq(cdouble(-0.5, gamma / 2.0), Kmax);
        double growth = std::exp(c * gamma * gamma);
        for (int k = 0; k <= Kmax; ++k) {
            double ratio = std::abs(h[static_cast<std::size_t>(k)]) /
                           (std::abs(base[static_cast<std::size_t>(k)]) * growth);
            if (ratio > worstRatio) {
                worstRatio = ratio;
                worstGamma = gamma;
                worstK = k;
            }
        }
    }

    LemmaReport rep;
    rep.lemmaId = "Binom";
    rep.samples = static_cast<long>(gammaGrid.size()) * (Kmax + 1);
    rep.empiricalConstant = worstRatio;
    rep.fittedGrowth = {{"exponent", c}};
    rep.worstCase = {{"gamma", worstGamma}, {"k", static_cast<double>(worstK)}};
    rep.pass = worstRatio <= 1.0 + 1e-12;
    if (rep.pass)
        rep.notes.push_back("equality at gamma = 0 by construction");
    else
        rep.notes.push_back("bound violated: ratio " + fmt(worstRatio) + " at gamma " +
                            fmt(worstGamma) + ", k " + std::to_string(worstK));
    return rep;
}

LemmaReport check_binom_bound(const std::vector<double>& gammaGrid, int Kmax) {
    return check_binom_bound(gammaGrid, Kmax, binom_bound_exponent());
}

LemmaReport check_prop_ourlem(const Potential& V, double rho, double a, double delta, int d,
                              const std::vector<int>& Nlist, const GridParams& grid) {
    V.validate();
    if (V.d != d) throw DomainError("check_prop_ourlem: potential dimension must match d");
    if (!(0.0 < a && a < rho)) throw DomainError("check_prop_ourlem requires 0 < a < rho");
    if (Nlist.empty()) throw DomainError("check_prop_ourlem requires a nonempty N list");

    double tauVal = tau(V, zeros(d), rho, d, grid).value;
    double tpow = std::pow(tauVal, 1.0 / (static_cast<double>(d) - 1.0));

    Region ann = Region::annulus(zeros(d), a, rho);
    MultiplierSpec half = MultiplierSpec::abs_power(V, 0.5);
    std::vector<double> ratios;
    ratios.reserve(Nlist.size());
    int worstN = Nlist.front();
    double worstRatio = 0.0;
    for (int N : Nlist) {
        KernelSpec spec;
        spec.d = d;
        spec.z = cdouble(static_cast<double>(d) - 1.0, 0.0);
        spec.N = N;
        spec.w = weight_exponent(N, d, delta);
        DiscreteOperator A = assemble(spec, ann, ann, half, half, grid);
        double lhs = spectral_norm(A).value;
        double ratio = tpow > 0.0 ? lhs / tpow : lhs;
        ratios.push_back(ratio);
        if (ratio >= worstRatio) {
            worstRatio = ratio;
            worstN = N;
        }
    }

    double mm = max_over_min(ratios);
    LemmaReport rep;
    rep.lemmaId = "PropOurlem";
    rep.samples = static_cast<long>(Nlist.size());
    rep.empiricalConstant = worstRatio;
    rep.fittedGrowth = {{"tau", tauVal},
                        {"minRatio", *std::min_element(ratios.begin(), ratios.end())},
                        {"maxOverMin", mm}};
    rep.worstCase = {{"N", static_cast<double>(worstN)}, {"ratio", worstRatio}};
    if (tpow == 0.0) {
        rep.pass = worstRatio == 0.0;
        rep.notes.push_back("tau = 0: operator must vanish identically");
    } else {
        rep.pass = std::isfinite(mm) && mm <= 5.0;
        rep.notes.push_back("N-uniformity of norm / tau^{1/(d-1)} over N in Nlist");
    }
    return rep;
}

std::vector<LemmaReport> check_E_estimates(const Potential& V, double rho, double a, int j,
                                           double delta, int d, const std::vector<int>& Nlist,
                                           const GridParams& grid) {
    V.validate();
    if (V.d != d) throw DomainError("check_E_estimates: potential dimension must match d");
    if (!(0.0 < a && a < rho)) throw DomainError("check_E_estimates requires 0 < a < rho");
    if (j < 1 || 2.0 / j > rho) throw DomainError("check_E_estimates requires 2/j <= rho");
    if (Nlist.empty()) throw DomainError("check_E_estimates requires a nonempty N list");

    double tauVal = tau(V, zeros(d), rho, d, grid).value;
    double tpow = std::pow(tauVal, 1.0 / (static_cast<double>(d) - 1.0));
    double p = 2.0 * d / (static_cast<double>(d) + 2.0);

    Region inner = Region::annulus(zeros(d), 1.0 / j, rho);
    Region outer = Region::annulus(zeros(d), rho, 3.0 * rho);
    Region right = Region::annulus(zeros(d), a, rho);
    MultiplierSpec half = MultiplierSpec::abs_power(V, 0.5);

    std::vector<double> upper, lower;
    double worstU = 0.0, worstL = 0.0;
    int worstUN = Nlist.front(), worstLN = Nlist.front();
    int worstUSide = 1, worstLSide = 3;
    for (int N : Nlist) {
        KernelSpec spec;
        spec.d = d;
        spec.z = cdouble(static_cast<double>(d) - 1.0, 0.0);
        spec.N = N;
        spec.w = weight_exponent(N, d, delta);
        DiscreteOperator A1 = assemble(spec, inner, right, half, half, grid);
        DiscreteOperator A2 = assemble(spec, outer, right, half, half, grid);
        double e1 = spectral_norm(A1).value;
        double e2 = spectral_norm(A2).value;
        double e3 = p_to_two_lower(A1, p).value;
        double e4 = p_to_two_lower(A2, p).value;
        auto scale = [&](double v) { return tpow > 0.0 ? v / tpow : v; };
        for (auto [v, side] : {std::pair{scale(e1), 1}, std::pair{scale(e2), 2}}) {
            upper.push_back(v);
            if (v >= worstU) {
                worstU = v;
                worstUN = N;
                worstUSide = side;
            }
        }
        for (auto [v, side] : {std::pair{scale(e3), 3}, std::pair{scale(e4), 4}}) {
            lower.push_back(v);
            if (v >= worstL) {
                worstL = v;
                worstLN = N;
                worstLSide = side;
            }
        }
    }

    bool trivial = tpow == 0.0;
    LemmaReport r12;
    r12.lemmaId = "E1E2";
    r12.samples = static_cast<long>(2 * Nlist.size());
    r12.empiricalConstant = worstU;
    r12.fittedGrowth = {{"envelope", kAnnulusEnvelope}, {"tau", tauVal}};
    r12.worstCase = {{"N", static_cast<double>(worstUN)},
                     {"estimate", static_cast<double>(worstUSide)},
                     {"ratio", worstU}};
    r12.pass = trivial ? worstU == 0.0 : worstU <= kAnnulusEnvelope;
    r12.notes.push_back(trivial ? "tau = 0: norms must vanish"
                                : "spectral norms of inner/outer annulus operators vs envelope");

    LemmaReport r34;
    r34.lemmaId = "E3E4";
    r34.samples = static_cast<long>(2 * Nlist.size());
    r34.empiricalConstant = worstL;
    r34.fittedGrowth = {{"envelope", kAnnulusEnvelope}, {"tau", tauVal}, {"p", p}};
    r34.worstCase = {{"N", static_cast<double>(worstLN)},
                     {"estimate", static_cast<double>(worstLSide)},
                     {"ratio", worstL}};
    r34.pass = trivial ? worstL == 0.0 : worstL <= kAnnulusEnvelope;
    r34.notes.push_back(trivial ? "tau = 0: lower bounds must vanish"
                                : "p->2 lower bounds must sit below the same envelope");
    return {r12, r34};
}

LemmaReport check_kato_contraction(const Potential& V, double rho, const std::vector<int>& Nlist,
                                   const GridParams& grid) {
    V.validate();
    if (V.d != 3) throw UnsupportedError("check_kato_contraction is implemented for d = 3");
    if (!(rho > 0.0)) throw DomainError("check_kato_contraction requires rho > 0");
    if (Nlist.empty()) throw DomainError("check_kato_contraction requires a nonempty N list");

    Region B = Region::ball(zeros(3), rho);
    MultiplierSpec mV = MultiplierSpec::abs_power(V, 1.0);
    MultiplierSpec one = MultiplierSpec::one();

    KernelSpec plain;
    plain.d = 3;
    plain.z = cdouble(2.0, 0.0);
    double comp = one_one_norm(assemble(plain, B, B, mV, one, grid)).value;
    double beta = kato_norm(V, zeros(3), rho, grid).value;

    std::vector<double> ratios;
    double maxNorm = 0.0, worstRatio = 0.0;
    int worstN = Nlist.front();
    for (int N : Nlist) {
        KernelSpec spec;
        spec.d = 3;
        spec.z = cdouble(2.0, 0.0);
        spec.N = N;
        spec.w = static_cast<double>(N); // d = 3 collapses the weight exponent to N
        double n11 = one_one_norm(assemble(spec, B, B, mV, one, grid)).value;
        maxNorm = std::max(maxNorm, n11);
        double ratio = comp > 0.0 ? n11 / comp : n11;
        ratios.push_back(ratio);
        if (ratio >= worstRatio) {
            worstRatio = ratio;
            worstN = N;
        }
    }

    double mm = max_over_min(ratios);
    LemmaReport rep;
    rep.lemmaId = "KatoContraction";
    rep.samples = static_cast<long>(Nlist.size());
    rep.empiricalConstant = worstRatio;
    rep.fittedGrowth = {{"comparisonNorm", comp},
                        {"katoBeta", beta},
                        {"minRatio", *std::min_element(ratios.begin(), ratios.end())},
                        {"maxWeightedNorm", maxNorm}};
    rep.worstCase = {{"N", static_cast<double>(worstN)}, {"ratio", worstRatio}};
    if (comp == 0.0) {
        rep.pass = maxNorm == 0.0;
        rep.notes.push_back("comparison norm 0: weighted norms must vanish");
    } else {
        rep.pass = std::isfinite(mm) && mm <= 5.0;
        rep.notes.push_back("1->1 norms of weighted operators vs unweighted comparison");
    }

    // Refinement probe: a Kato-class V keeps beta roughly stable when the
    // lattice (and with it the singularity floor) is refined.
    GridParams fine = grid;
    fine.n = 2 * grid.n;
    try {
        double beta2 = kato_norm(V, zeros(3), rho, fine).value;
        if (beta2 > beta + 0.15 * std::max(beta, 1e-12))
            rep.notes.push_back("kato norm grows under refinement (" + fmt(beta) + " -> " +
                                fmt(beta2) + "); potential likely not Kato-class");
        else
            rep.notes.push_back("kato norm stable under refinement (" + fmt(beta) + " -> " +
                                fmt(beta2) + ")");
    } catch (const CapacityError&) {
        rep.notes.push_back("refinement probe skipped (point cap)");
    }
    return rep;
}

namespace {

// Quadrature of K_N(x, .) against a sampled density over a fixed lattice,
// with the same coincidence handling as the operator assembly.
double kernel_row_apply(int N, int d, const std::vector<double>& x, const GridPoints& pts,
                        const std::vector<double>& dens) {
    cdouble z(2.0, 0.0);
    KernelSpec ks;
    ks.d = d;
    ks.z = z;
    ks.N = N;
    double cz = riesz_constant(z, d).real();
    double m = pts.cellVolume();
    double diagAvg = diag_cell_average(z, d, m).real();
    double polyAtOne = N > 0 ? taylor_poly_reduced(ks, ReducedCoords{1.0, 0.0}).real() : 0.0;
    double coincTol = 1e-12 * pts.h;
    double xnorm = 0.0;
    for (int k = 0; k < d; ++k) xnorm += x[static_cast<std::size_t>(k)] * x[static_cast<std::size_t>(k)];
    xnorm = std::sqrt(xnorm);

    std::vector<double> contrib(pts.count, 0.0);
    parallel_for(pts.count, [&](std::size_t jj) {
        const double* y = pts.at(jj);
        double dist2 = 0.0, ynorm2 = 0.0;
        for (int k = 0; k < d; ++k) {
            double dk = x[static_cast<std::size_t>(k)] - y[k];
            dist2 += dk * dk;
            ynorm2 += y[k] * y[k];
        }
        double dist = std::sqrt(dist2);
        double K;
        if (dist <= coincTol) {
            K = diagAvg;
            if (N > 0) K -= cz * std::pow(std::sqrt(ynorm2), 2.0 - d) * polyAtOne;
        } else if (N == 0) {
            K = cz * std::pow(dist, 2.0 - d);
        } else {
            double ynorm = std::sqrt(ynorm2);
            double t = xnorm / ynorm;
            double dot = 0.0;
            for (int k = 0; k < d; ++k) dot += x[static_cast<std::size_t>(k)] * y[k];
            double cosTh = xnorm > 0.0 ? std::clamp(dot / (xnorm * ynorm), -1.0, 1.0) : 1.0;
            double theta = xnorm > 0.0 ? std::acos(cosTh) : 0.0;
            K = cz * std::pow(ynorm, 2.0 - d) * remainder_reduced(z, d, N, t, theta).value.real();
        }
        contrib[jj] = K * dens[jj] * m;
    });
    KahanR acc;
    for (double c : contrib) acc.add(c);
    return acc.value();
}

} // namespace

LemmaReport check_identity(const ManufacturedSolution& ms, int N, int d, const GridParams& grid,
                           int samplePoints) {
    if (ms.m < 1 || !(0.0 < ms.r1 && ms.r1 < ms.r2))
        throw DomainError("check_identity requires m >= 1 and 0 < r1 < r2");
    if (N < 0 || N > 2 * ms.m)
        throw DomainError("check_identity requires 0 <= N <= 2m (vanishing order of u)");
    if (samplePoints < 1) throw DomainError("check_identity requires samplePoints >= 1");
    if (d < 3) throw DomainError("check_identity requires d >= 3");

    Region B = Region::ball(zeros(d), ms.r2);
    GridPoints pts = grid_points(B, grid);
    std::vector<double> dens(pts.count, 0.0);
    parallel_for(pts.count, [&](std::size_t j) {
        const double* y = pts.at(j);
        double r2 = 0.0;
        for (int k = 0; k < d; ++k) r2 += y[k] * y[k];
        dens[j] = -ms.laplacian(std::sqrt(r2), d);
    });

    // Interior probes on a fixed ray, snapped to lattice cells; the fractions
    // keep r well inside (r1, r2) where u is not vanishingly small.
    std::vector<double> dir(static_cast<std::size_t>(d), 0.0);
    dir[0] = 1.0 / 3.0;
    dir[1] = 2.0 / 3.0;
    dir[2] = 2.0 / 3.0;
    std::vector<std::size_t> chosen;
    for (int i = 0; i < samplePoints; ++i) {
        double f = samplePoints == 1
                       ? 0.65
                       : 0.5 + (0.8125 - 0.5) * static_cast<double>(i) / (samplePoints - 1);
        double r = f * ms.r2;
        std::size_t best = 0;
        double bestD = std::numeric_limits<double>::infinity();
        for (std::size_t jj = 0; jj < pts.count; ++jj) {
            const double* y = pts.at(jj);
            double d2 = 0.0;
            for (int k = 0; k < d; ++k) {
                double dk = y[k] - r * dir[static_cast<std::size_t>(k)];
                d2 += dk * dk;
            }
            if (d2 < bestD) {
                bestD = d2;
                best = jj;
            }
        }
        if (std::find(chosen.begin(), chosen.end(), best) == chosen.end()) chosen.push_back(best);
    }

    double maxRel = 0.0, worstR = 0.0;
    for (std::size_t s : chosen) {
        std::vector<double> x(pts.at(s), pts.at(s) + d);
        double r = 0.0;
        for (double xk : x) r += xk * xk;
        r = std::sqrt(r);
        double rec = kernel_row_apply(N, d, x, pts, dens);
        double exact = ms.u(r, d);
        double rel = std::abs(rec - exact) / std::abs(exact);
        if (rel > maxRel) {
            maxRel = rel;
            worstR = r;
        }
    }

    std::vector<double> xOut(static_cast<std::size_t>(d), 0.0);
    xOut[0] = 1.375 * ms.r2;
    double outside = std::abs(kernel_row_apply(N, d, xOut, pts, dens));

    LemmaReport rep;
    rep.lemmaId = "Identity";
    rep.samples = static_cast<long>(chosen.size());
    rep.empiricalConstant = maxRel;
    rep.fittedGrowth = {{"maxRelError", maxRel}, {"outsideResidual", outside}};
    rep.worstCase = {{"radius", worstR}, {"relError", maxRel}};
    rep.pass = maxRel <= 0.05;
    rep.notes.push_back("reconstruction outside supp u: " + fmt(outside));
    return rep;
}

LemmaReport check_strichartz(int d, const GridParams& grid) {
    Potential Vc = Potential::constant_ball(1.0, 1.0, d);
    Potential Vh = Potential::hardy(0.5, d);
    std::vector<double> x0 = zeros(d);

    double tauC = tau(Vc, x0, 1.0, d, grid).value;
    double rhsC = strichartz_rhs(Vc, x0, 1.0, d, grid);
    double tauH = tau(Vh, x0, 1.0, d, grid).value;
    double rhsH = strichartz_rhs(Vh, x0, 1.0, d, grid);

    double ratioC = std::sqrt(tauC) / rhsC;
    double ratioH = std::sqrt(tauH) / rhsH;

    LemmaReport rep;
    rep.lemmaId = "Strichartz";
    rep.samples = 2;
    rep.empiricalConstant = std::max(ratioC, ratioH);
    rep.fittedGrowth = {{"prefactor", strichartz_prefactor(d)},
                        {"constSqrtTau", std::sqrt(tauC)},
                        {"constRhs", rhsC},
                        {"hardySqrtTau", std::sqrt(tauH)},
                        {"hardyRhs", rhsH}};
    rep.worstCase = {{"case", ratioC >= ratioH ? 0.0 : 1.0},
                     {"ratio", std::max(ratioC, ratioH)}};
    rep.pass = rep.empiricalConstant <= 1.1;
    rep.notes.push_back("case 0: V = 1 on B(0,1); case 1: Hardy(0.5)");
    return rep;
}

LemmaReport check_inclusions(int d, const GridParams& grid) {
    if (d < 3) throw DomainError("check_inclusions requires d >= 3");
    std::vector<double> origin = zeros(d);
    std::vector<double> spherePt = zeros(d);
    spherePt[0] = 1.0;

    Potential Vh5 = Potential::hardy(0.5, d);
    Potential Vh1 = Potential::hardy(1.0, d);
    Potential Vs = Potential::stein(1.0, 2.0, 0.5, d);
    Region ann = Region::annulus(origin, 0.5, 1.5);
    GridParams fine = grid;
    fine.n = 2 * grid.n;

    LemmaReport rep;
    rep.lemmaId = "Inclusions";

    // Hardy stays bounded in the scale-invariant scan ...
    double f3a = tau_f3(Vh5, origin, 0.25, grid).value;
    double f3b = tau_f3(Vh5, origin, 0.125, grid).value;
    bool hardyBounded = f3a <= 0.55 && f3b <= 0.55;

    // ... yet its Kato norm keeps growing as the singularity floor tightens.
    double k1 = kato_norm(Vh1, origin, 0.5, grid).value;
    double katoGrowth = std::numeric_limits<double>::quiet_NaN();
    bool hardyKatoDivergent = false;
    bool katoProbeRan = true;
    try {
        double k2 = kato_norm(Vh1, origin, 0.5, fine).value;
        katoGrowth = k2 - k1;
        hardyKatoDivergent = katoGrowth > 0.08;
        rep.fittedGrowth.emplace_back("hardyKatoCoarse", k1);
        rep.fittedGrowth.emplace_back("hardyKatoFine", k2);
    } catch (const CapacityError&) {
        katoProbeRan = false;
        rep.notes.push_back("hardy kato refinement probe skipped (point cap)");
    }

    // The boundary-concentrated potential: stable in L^{(d-1)/2} ...
    double pLow = (static_cast<double>(d) - 1.0) / 2.0;
    double l1 = lp_local_norm(sample_on_region(Vs, ann, grid), pLow);
    double steinDrift = std::numeric_limits<double>::quiet_NaN();
    bool steinStable = false;
    bool steinProbeRan = true;
    try {
        double l2 = lp_local_norm(sample_on_region(Vs, ann, fine), pLow);
        steinDrift = (l2 - l1) / std::max(l1, 1e-300);
        steinStable = std::abs(steinDrift) <= 0.1;
        rep.fittedGrowth.emplace_back("steinLpCoarse", l1);
        rep.fittedGrowth.emplace_back("steinLpFine", l2);
    } catch (const CapacityError&) {
        steinProbeRan = false;
        rep.notes.push_back("stein L^p refinement probe skipped (point cap)");
    }

    // ... while the weak-L^{d/2} and slightly-higher-L^p masses diverge only
    // logarithmically: invisible at these lattice sizes, so recorded as trend
    // labels rather than folded into the pass verdict.
    auto trendLabel = [](double lo, double hi) -> std::string {
        if (hi > 1.15 * lo) return "increasing";
        if (hi < 0.85 * lo) return "decreasing";
        return "flat";
    };
    try {
        double w1 = weak_lorentz_norm(sample_on_region(Vs, ann, grid), d / 2.0);
        double w2 = weak_lorentz_norm(sample_on_region(Vs, ann, fine), d / 2.0);
        rep.fittedGrowth.emplace_back("steinWeakCoarse", w1);
        rep.fittedGrowth.emplace_back("steinWeakFine", w2);
        rep.notes.push_back("stein weak-L^{d/2} trend " + trendLabel(w1, w2) + " (" + fmt(w1) +
                            " -> " + fmt(w2) + "); log-scale divergence not visible here");
        double a1 = lp_local_norm(sample_on_region(Vs, ann, grid), pLow * 1.25);
        double a2 = lp_local_norm(sample_on_region(Vs, ann, fine), pLow * 1.25);
        rep.fittedGrowth.emplace_back("steinLpAboveCoarse", a1);
        rep.fittedGrowth.emplace_back("steinLpAboveFine", a2);
        rep.notes.push_back("stein L^p (p above (d-1)/2) trend " + trendLabel(a1, a2) + " (" +
                            fmt(a1) + " -> " + fmt(a2) + "); divergence likewise logarithmic");
    } catch (const CapacityError&) {
        rep.notes.push_back("stein divergence trend probes skipped (point cap)");
    }

    // Stein stays in the scan near its singular sphere.
    double sf1 = tau_f3(Vs, spherePt, 0.3, grid).value;
    double sf2 = tau_f3(Vs, spherePt, 0.15, grid).value;
    bool steinBounded = std::isfinite(sf1) && std::isfinite(sf2) && sf2 <= 1.1 * sf1 + 1e-12;

    rep.samples = 10;
    rep.empiricalConstant = std::max(f3a, f3b);
    rep.worstCase = {{"hardyF3", std::max(f3a, f3b)},
                     {"hardyKatoGrowth", katoGrowth},
                     {"steinLpDrift", steinDrift},
                     {"steinF3Coarse", sf1},
                     {"steinF3Fine", sf2}};
    rep.pass = hardyBounded && steinBounded && (!katoProbeRan || hardyKatoDivergent) &&
               (!steinProbeRan || steinStable);
    rep.notes.push_back(std::string("hardy bounded in scan: ") + (hardyBounded ? "yes" : "no") +
                        "; hardy kato divergent: " + (hardyKatoDivergent ? "yes" : "no") +
                        "; stein L^{(d-1)/2} stable: " + (steinStable ? "yes" : "no") +
                        "; stein bounded at sphere: " + (steinBounded ? "yes" : "no"));
    return rep;
}

} // namespace uckl
