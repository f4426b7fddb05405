// Regenerates every lattice-derived constant frozen in tests/frozen_values.hpp.
// Run from the build tree:  ./uckl_calibrate > calibration.txt
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <vector>

#include "uckl/discretize.hpp"
#include "uckl/report_json.hpp"
#include "uckl/verify.hpp"

using namespace uckl;

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

GridParams gp(int n) {
    GridParams g;
    g.n = n;
    return g;
}

void print_report(const char* tag, const LemmaReport& r) {
    std::printf("%-28s constant=%.12g pass=%d samples=%ld\n", tag, r.empiricalConstant, r.pass ? 1 : 0,
                r.samples);
    for (const auto& [k, v] : r.fittedGrowth) std::printf("    fit  %-22s %.12g\n", k.c_str(), v);
    for (const auto& [k, v] : r.worstCase) std::printf("    wrst %-22s %.12g\n", k.c_str(), v);
    for (const auto& n : r.notes) std::printf("    note %s\n", n.c_str());
}

// Half operator 1_B |V|^{(d-1)/4} (-Delta)^{-(d-1)/4} sampled from the ball
// lattice into the enclosing cube of side 2*(factor*rOuter), matching spacing.
double half_factorization_norm(const Potential& V, double rho, int factor, int n) {
    const int d = 3;
    GridPoints ball = grid_points(Region::ball({0.0, 0.0, 0.0}, rho), gp(n));
    const double h = ball.h;
    const double m = ball.cellVolume();
    const int nb = factor * n;
    const double half = factor * rho;
    const double mB = h * h * h;

    cdouble z(1.0, 0.0);
    const double cz = riesz_constant(z, d).real();
    const double diagAvg = diag_cell_average(z, d, m).real();

    DiscreteOperator H;
    H.rows = static_cast<std::size_t>(nb) * nb * nb;
    H.cols = ball.count;
    H.rowVol = mB;
    H.colVol = m;
    H.seed = 42;
    H.gridN = n;
    H.a.assign(H.rows * H.cols, cdouble{});
    std::vector<double> R(ball.count);
    for (std::size_t j = 0; j < ball.count; ++j)
        R[j] = MultiplierSpec::abs_power(V, 0.5).eval(ball.at(j), h / 2.0);

    const double sq = std::sqrt(mB) * std::sqrt(m);
    for (int ix = 0; ix < nb; ++ix)
        for (int iy = 0; iy < nb; ++iy)
            for (int iz = 0; iz < nb; ++iz) {
                double x[3] = {-half + (ix + 0.5) * h, -half + (iy + 0.5) * h,
                               -half + (iz + 0.5) * h};
                std::size_t e = (static_cast<std::size_t>(ix) * nb + iy) * nb + iz;
                cdouble* row = H.a.data() + e * H.cols;
                for (std::size_t j = 0; j < ball.count; ++j) {
                    const double* y = ball.at(j);
                    double rr = 0.0;
                    for (int k = 0; k < 3; ++k) rr += (x[k] - y[k]) * (x[k] - y[k]);
                    double dist = std::sqrt(rr);
                    double K = dist <= 1e-12 * h ? diagAvg : cz / rr;
                    row[j] = sq * K * R[j];
                }
            }
    return spectral_norm(H).value;
}

} // namespace

int main() {
    std::printf("== lemma 1 (d=3, z=2, t<=0.95, theta 64, Nmax 30) ==\n");
    print_report("L1", check_lemma1(3, 30, default_t_grid_low(), default_theta_grid(64)));

    std::printf("\n== lemma 2 (d=3, |gamma|<=4, Nmax 20, four regimes, theta 32) ==\n");
    print_report("L2", check_lemma2(3, default_gamma_grid(4.0), 20, default_t_grid_regimes(),
                                    default_theta_grid(32)));

    std::printf("\n== binomial bound (kmax 200, |gamma|<=10) ==\n");
    std::vector<double> gs;
    for (double g = -10.0; g <= 10.0 + 1e-12; g += 0.5) gs.push_back(g);
    print_report("binom pi^2/16", check_binom_bound(gs, 200));
    print_report("binom pi^2/48", check_binom_bound(gs, 200, binom_bound_exponent_understated()));

    std::printf("\n== coefficient sup |a_m(theta)|, m<=50, z=2+i gamma ==\n");
    for (double g : {0.0, 0.5, 1.0, 2.0, 3.0, 4.0}) {
        double sup = 0.0;
        for (double th : default_theta_grid(64)) {
            auto as = taylor_coeffs_reduced(cdouble(2.0, g), 3, th, 50);
            for (const auto& a : as) sup = std::max(sup, std::abs(a));
        }
        std::printf("  gamma=%.1f sup=%.12g  e^{2(pi^2/16)g^2}=%.6g  e^{2(pi^2/48)g^2}=%.6g\n", g,
                    sup, std::exp(2.0 * binom_bound_exponent() * g * g),
                    std::exp(2.0 * binom_bound_exponent_understated() * g * g));
    }

    std::printf("\n== quadrature golds ==\n");
    Potential vOne = Potential::constant_ball(1.0, 1.0);
    Potential vHardy1 = Potential::hardy(1.0);
    Potential vInvSq = Potential::hardy(4.0); // beta ((d-2)/2)^2 = 1 -> |x|^{-2}
    std::vector<double> o{0.0, 0.0, 0.0};
    double kato24 = kato_norm(vOne, o, 0.5, gp(24)).value;
    std::printf("  kato(V=1, rho=0.5, n=24) = %.12g   (rho^2/2 = 0.125)\n", kato24);
    double hk16 = kato_norm(vHardy1, o, 0.5, gp(16)).value;
    double hk32 = kato_norm(vHardy1, o, 0.5, gp(32)).value;
    std::printf("  kato(Hardy(1), rho=0.5): n=16 %.12g  n=32 %.12g  growth %.12g  ((1/4)ln2 = %.12g)\n",
                hk16, hk32, hk32 - hk16, 0.25 * std::log(2.0));
    double wl = weak_lorentz_norm(sample_on_region(vInvSq, Region::ball(o, 1.0), gp(24)), 1.5);
    std::printf("  weakL^{3/2}(|x|^-2, n=24) = %.12g   (continuum (4pi/3)^{2/3} = %.12g; lattice "
                "sup at the 8 nearest cells = 16/3)\n",
                wl, std::pow(4.0 * kPi / 3.0, 2.0 / 3.0));

    std::printf("\n== tau golds ==\n");
    Potential vH5 = Potential::hardy(0.5);
    for (int n : {12, 16})
        std::printf("  tau_f3(Hardy(0.5), rho=0.25, n=%d) = %.12g\n", n,
                    tau_f3(vH5, o, 0.25, gp(n)).value);
    for (int n : {8, 12, 16})
        std::printf("  tau(V=1, rho=1, n=%d) = %.12g\n", n, tau(vOne, o, 1.0, 3, gp(n)).value);

    std::printf("\n== strichartz (n=16) ==\n");
    print_report("strichartz", check_strichartz(3, gp(16)));

    std::printf("\n== ourlem (Hardy(0.5), rho=0.5, a=0.1, delta=0.25, N=1..10, n=16) ==\n");
    print_report("ourlem", check_prop_ourlem(vH5, 0.5, 0.1, 0.25, 3,
                                             {1, 2, 3, 4, 5, 6, 7, 8, 9, 10}, gp(16)));

    std::printf("\n== E estimates (Hardy(0.5), rho=0.5, a=0.1, j=10, delta=0.25, N=1..6, n=12) ==\n");
    for (const auto& r : check_E_estimates(vH5, 0.5, 0.1, 10, 0.25, 3, {1, 2, 3, 4, 5, 6}, gp(12)))
        print_report(r.lemmaId.c_str(), r);

    std::printf("\n== kato contraction (V=1, rho=0.5, N=1..10, n=16) ==\n");
    print_report("kato-contraction", check_kato_contraction(vOne, 0.5,
                                                            {1, 2, 3, 4, 5, 6, 7, 8, 9, 10}, gp(16)));

    std::printf("\n== reconstruction identity (m=2, N=0..3) ==\n");
    ManufacturedSolution ms;
    for (int n : {16, 24})
        for (int N : {0, 1, 2, 3}) {
            LemmaReport r = check_identity(ms, N, 3, gp(n));
            std::printf("  n=%d N=%d maxRel=%.6g outside=%.6g pass=%d\n", n, N,
                        r.empiricalConstant, r.fittedGrowth[1].second, r.pass ? 1 : 0);
        }

    std::printf("\n== inclusions battery (n=16) ==\n");
    print_report("inclusions", check_inclusions(3, gp(16)));

    std::printf("\n== one-relative comparison (n=12) ==\n");
    for (const Potential& V : {vH5, Potential::constant_ball(0.0, 1.0)}) {
        std::printf("  potential %s\n", potential_to_string(V).c_str());
        for (const auto& row : one_rel_check(V, o, {0.2, 0.1, 0.05}, gp(12)))
            std::printf("    rho=%.2f lhs=%.12g rhs=%.12g epsHat=%.12g\n", row.rho, row.lhs,
                        row.rhs, row.epsHat);
    }

    std::printf("\n== stein functionals ==\n");
    Potential vS = Potential::stein(1.0, 2.0, 0.5);
    std::vector<double> e1{1.0, 0.0, 0.0};
    for (double rho : {0.3, 0.15, 0.075})
        std::printf("  tau_f3(Stein, center=(1,0,0), rho=%.3f, n=16) = %.12g\n", rho,
                    tau_f3(vS, e1, rho, gp(16)).value);
    Region ann = Region::annulus(o, 0.5, 1.5);
    for (int n : {12, 16, 24, 32}) {
        SampledField f = sample_on_region(vS, ann, gp(n));
        std::printf("  n=%2d L1=%.8g L1.25=%.8g weakL1.5=%.8g\n", n, lp_local_norm(f, 1.0),
                    lp_local_norm(f, 1.25), weak_lorentz_norm(f, 1.5));
    }

    std::printf("\n== factorization diagnostic (V=1, rho=1) ==\n");
    for (auto [factor, n] : {std::pair{2, 8}, std::pair{2, 12}, std::pair{3, 8}}) {
        double tauVal = tau(vOne, o, 1.0, 3, gp(n)).value;
        double halfN = half_factorization_norm(vOne, 1.0, factor, n);
        std::printf("  factor=%d n=%2d tau=%.10g half^2=%.10g deficit=%.4f%%\n", factor, n, tauVal,
                    halfN * halfN, 100.0 * (halfN * halfN - tauVal) / tauVal);
    }
    return 0;
}
