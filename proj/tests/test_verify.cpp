#include <cmath>
#include <string>
#include <vector>

#include "doctest.h"
#include "frozen_values.hpp"
#include "uckl/verify.hpp"

using namespace uckl;

namespace {

double get(const std::vector<std::pair<std::string, double>>& kv, const std::string& key) {
    for (const auto& [k, v] : kv)
        if (k == key) return v;
    FAIL("missing report key: " << key);
    return 0.0;
}

bool has_note(const LemmaReport& r, const std::string& needle) {
    for (const auto& n : r.notes)
        if (n.find(needle) != std::string::npos) return true;
    return false;
}

GridParams gp(int n) {
    GridParams g;
    g.n = n;
    return g;
}

std::vector<double> binom_gamma_grid() {
    std::vector<double> gs;
    for (double g = -10.0; g <= 10.0 + 1e-9; g += 0.5) gs.push_back(g);
    return gs;
}

} // namespace

TEST_CASE("manufactured solution: cutoff, continuity, laplacian") {
    ManufacturedSolution ms; // m=2, r1=0.4, r2=0.8
    CHECK(ms.psi(0.2) == 1.0);
    CHECK(ms.psi(0.4) == 1.0);
    CHECK(ms.psi(0.8) == 0.0);
    CHECK(ms.psi(1.0) == 0.0);
    CHECK(ms.dpsi(0.4) == 0.0);
    CHECK(ms.dpsi(0.8) == 0.0);
    CHECK(ms.u(0.5, 3) == std::pow(0.5, 4) * ms.psi(0.5));

    // radial laplacian u'' + (d-1)/r u' against central differences
    for (double r : {0.45, 0.6, 0.7}) {
        double h = 1e-5;
        double upp = (ms.u(r + h, 3) - 2.0 * ms.u(r, 3) + ms.u(r - h, 3)) / (h * h);
        double up = (ms.u(r + h, 3) - ms.u(r - h, 3)) / (2.0 * h);
        double want = upp + 2.0 / r * up;
        CHECK(std::abs(ms.laplacian(r, 3) - want) < 1e-4 * std::abs(want));
    }
}

TEST_CASE("default sample grids") {
    auto th = default_theta_grid(64);
    REQUIRE(th.size() == 64);
    CHECK(th.front() == 0.0);
    CHECK(std::abs(th.back() - 3.14159265358979323846) < 1e-15);

    auto lo = default_t_grid_low();
    CHECK(lo.front() > 0.0);
    CHECK(lo.back() <= 0.95 + 1e-12);

    auto reg = default_t_grid_regimes();
    CHECK(reg.back() > 1.0); // covers the exterior regime too

    auto gam = default_gamma_grid(4.0);
    CHECK(gam.front() == 0.0);
    CHECK(gam.size() == 11);

    CHECK_THROWS_AS(default_theta_grid(1), DomainError);
}

TEST_CASE("remainder-over-leading-term ratio is uniformly bounded") {
    auto rep = check_lemma1(3, 30, default_t_grid_low(), default_theta_grid(64));
    CHECK(rep.pass);
    CHECK(rep.samples == 30 * 19 * 64);
    CHECK(rep.empiricalConstant > 0.9);
    CHECK(rep.empiricalConstant <= frozen::kLemma1Bound);
    CHECK(get(rep.fittedGrowth, "stabilityRatio") <= 1.2);

    // identical reruns give bitwise-identical constants
    auto rep2 = check_lemma1(3, 30, default_t_grid_low(), default_theta_grid(64));
    CHECK(rep.empiricalConstant == rep2.empiricalConstant);

    CHECK_THROWS_AS(check_lemma1(3, 1, default_t_grid_low(), default_theta_grid(8)), DomainError);
    CHECK_THROWS_AS(check_lemma1(3, 5, {}, default_theta_grid(8)), DomainError);
}

TEST_CASE("complex-order remainder envelope fits a gaussian gamma profile") {
    auto rep = check_lemma2(3, default_gamma_grid(4.0), 20, default_t_grid_regimes(),
                            default_theta_grid(32));
    CHECK(rep.pass);
    CHECK(std::abs(rep.empiricalConstant - frozen::kLemma2C1) < 1e-9);
    CHECK(std::abs(get(rep.fittedGrowth, "C1") - frozen::kLemma2C1) < 1e-9);
    CHECK(std::abs(get(rep.fittedGrowth, "c1") - frozen::kLemma2c1) < 1e-9);
    CHECK(get(rep.fittedGrowth, "excludedFraction") == 0.0);
    CHECK(get(rep.fittedGrowth, "C1") <= frozen::kLemma2C1Bound);
    CHECK(get(rep.fittedGrowth, "c1") <= frozen::kLemma2c1Bound);

    CHECK_THROWS_AS(check_lemma2(3, {}, 20, default_t_grid_regimes(), default_theta_grid(8)),
                    DomainError);
}

TEST_CASE("binomial modulus bound: corrected exponent holds, understated fails") {
    auto grid = binom_gamma_grid();
    auto ok = check_binom_bound(grid, 200); // default corrected exponent pi^2/16
    CHECK(ok.pass);
    CHECK(std::abs(ok.empiricalConstant - 1.0) <= 1e-12); // equality at gamma = 0
    CHECK(get(ok.fittedGrowth, "exponent") == binom_bound_exponent());

    auto bad = check_binom_bound(grid, 200, binom_bound_exponent_understated());
    CHECK_FALSE(bad.pass);
    CHECK(std::abs(bad.empiricalConstant - frozen::kBinomUnderstatedViolation) < 1e-9);
    CHECK(std::abs(get(bad.worstCase, "gamma")) == 2.0);
    CHECK(get(bad.worstCase, "k") == 200.0);
    CHECK(has_note(bad, "bound violated"));

    CHECK_THROWS_AS(check_binom_bound(grid, 0), DomainError);
    CHECK_THROWS_AS(check_binom_bound(grid, 10, 0.0), DomainError);
}

TEST_CASE("reduced-coefficient sups over the theta grid match frozen values") {
    auto th = default_theta_grid(64);
    for (int gi = 0; gi < 6; ++gi) {
        double gamma = frozen::kCoeffSupGamma[gi];
        double sup = 0.0;
        for (double theta : th) {
            auto a = taylor_coeffs_reduced({2.0, gamma}, 3, theta, 50);
            for (const auto& am : a) sup = std::max(sup, std::abs(am));
        }
        CHECK(std::abs(sup - frozen::kCoeffSup[gi]) < 1e-9 * frozen::kCoeffSup[gi]);
        // corrected growth envelope holds with room; the understated one
        // already fails at gamma = 2
        CHECK(sup <= std::exp(2.0 * binom_bound_exponent() * gamma * gamma) * (1.0 + 1e-12));
        if (gamma == 2.0)
            CHECK(sup > std::exp(2.0 * binom_bound_exponent_understated() * gamma * gamma));
    }
}

TEST_CASE("annulus operator norms are N-uniform next to tau^{1/(d-1)}") {
    auto rep = check_prop_ourlem(Potential::hardy(0.5), 0.5, 0.1, 0.25, 3, {1, 2}, gp(16));
    CHECK(rep.pass);
    CHECK(std::abs(rep.empiricalConstant - frozen::kOurlemMaxRatio) < 1e-9);
    CHECK(get(rep.worstCase, "N") == 1.0);
    CHECK(rep.empiricalConstant <= frozen::kOurlemEnvelope);
    CHECK(get(rep.fittedGrowth, "maxOverMin") <= 5.0);
    // scale invariance: the Hardy tau at rho = 0.5 equals the rho = 0.25 value
    CHECK(get(rep.fittedGrowth, "tau") == doctest::Approx(frozen::kTauF3HardyN16).epsilon(1e-12));

    CHECK_THROWS_AS(check_prop_ourlem(Potential::hardy(0.5), 0.5, 0.6, 0.25, 3, {1}, gp(8)),
                    DomainError);
    CHECK_THROWS_AS(check_prop_ourlem(Potential::hardy(0.5), 0.5, 0.1, 0.25, 3, {}, gp(8)),
                    DomainError);
}

TEST_CASE("annulus upper/lower estimates sit below the frozen envelope") {
    auto reps =
        check_E_estimates(Potential::hardy(0.5), 0.5, 0.1, 10, 0.25, 3, {1}, gp(12));
    REQUIRE(reps.size() == 2);
    const auto& up = reps[0];
    const auto& low = reps[1];
    CHECK(up.lemmaId == "E1E2");
    CHECK(up.pass);
    CHECK(std::abs(up.empiricalConstant - frozen::kAnnulusUpperMax) < 1e-9);
    CHECK(get(up.worstCase, "estimate") == 2.0); // outer annulus is the tight side
    CHECK(low.lemmaId == "E3E4");
    CHECK(low.pass);
    CHECK(std::abs(low.empiricalConstant - frozen::kAnnulusLowerMax) < 1e-9);
    CHECK(up.empiricalConstant <= frozen::kAnnulusEnvelope);
    CHECK(low.empiricalConstant <= frozen::kAnnulusEnvelope);

    CHECK_THROWS_AS(
        check_E_estimates(Potential::hardy(0.5), 0.5, 0.1, 3, 0.25, 3, {1}, gp(8)),
        DomainError); // 2/j > rho
}

TEST_CASE("weighted 1->1 norms contract against the unweighted comparison") {
    auto rep = check_kato_contraction(Potential::constant_ball(1.0, 1.0), 0.5, {1, 2}, gp(16));
    CHECK(rep.pass);
    CHECK(std::abs(rep.empiricalConstant - frozen::kKatoContractionMaxRatio) < 1e-9);
    CHECK(get(rep.worstCase, "N") == 1.0);
    CHECK(rep.empiricalConstant <= frozen::kKatoContractionBound);
    CHECK(std::abs(get(rep.fittedGrowth, "comparisonNorm") - 0.125590981871) < 1e-9);
    CHECK(std::abs(get(rep.fittedGrowth, "katoBeta") - 0.125960327321) < 1e-9);
    CHECK(std::abs(get(rep.fittedGrowth, "maxWeightedNorm") - frozen::kKatoMaxWeightedNorm) <
          1e-9);
    CHECK(get(rep.fittedGrowth, "maxWeightedNorm") < 1.0);
    CHECK(has_note(rep, "stable under refinement"));

    CHECK_THROWS_AS(
        check_kato_contraction(Potential::constant_ball(1.0, 1.0, 4), 0.5, {1}, gp(8)),
        UnsupportedError);
}

TEST_CASE("reconstruction identity on the manufactured solution") {
    ManufacturedSolution ms;
    auto r0 = check_identity(ms, 0, 3, gp(16));
    CHECK(r0.pass);
    CHECK(std::abs(r0.empiricalConstant - 0.0379468) < 1e-4);
    auto r1 = check_identity(ms, 1, 3, gp(16));
    CHECK(r1.pass);
    CHECK(std::abs(r1.empiricalConstant - frozen::kIdentityN16) < 1e-4);
    CHECK(get(r1.fittedGrowth, "outsideResidual") < 0.005);

    CHECK_THROWS_AS(check_identity(ms, 5, 3, gp(8)), DomainError); // N > 2m
    ManufacturedSolution bad;
    bad.r1 = 0.9;
    CHECK_THROWS_AS(check_identity(bad, 0, 3, gp(8)), DomainError);
    CHECK_THROWS_AS(check_identity(ms, 0, 3, gp(8), 0), DomainError);
}

TEST_CASE("square root of tau stays under the rearrangement bound") {
    auto rep = check_strichartz(3, gp(16));
    CHECK(rep.pass);
    CHECK(std::abs(rep.empiricalConstant - frozen::kStrichartzMaxRatio) < 1e-9);
    CHECK(std::abs(get(rep.fittedGrowth, "prefactor") - frozen::kStrichartzPrefactorD3) < 1e-12);
    CHECK(std::abs(get(rep.fittedGrowth, "constSqrtTau") - 0.63932536658) < 1e-9);
    CHECK(std::abs(get(rep.fittedGrowth, "constRhs") - 3.39251354513) < 1e-9);
    CHECK(std::abs(get(rep.fittedGrowth, "hardySqrtTau") - 0.484948473192) < 1e-9);
    CHECK(std::abs(get(rep.fittedGrowth, "hardyRhs") - 1.71006644022) < 1e-9);
}

TEST_CASE("class inclusion panel separates the model potentials") {
    auto rep = check_inclusions(3, gp(16));
    CHECK(rep.pass);
    CHECK(std::abs(get(rep.worstCase, "hardyF3") - frozen::kTauF3HardyN16) < 1e-9);
    CHECK(std::abs(get(rep.worstCase, "hardyKatoGrowth") - frozen::kHardyKatoGrowth) < 1e-9);
    CHECK(std::abs(get(rep.worstCase, "steinF3Coarse") - frozen::kSteinF3Rho300) < 1e-9);
    CHECK(std::abs(get(rep.worstCase, "steinLpDrift") - 0.00945408355724) < 1e-6);
    CHECK(std::abs(get(rep.fittedGrowth, "steinWeakCoarse") - 10.6095139734) < 1e-6);
    CHECK(has_note(rep, "log-scale divergence not visible here"));
    CHECK(has_note(rep, "hardy bounded in scan: yes"));
}

TEST_CASE("trivial potential short-circuits the operator checks") {
    Potential zero = Potential::constant_ball(0.0, 1.0);
    auto ou = check_prop_ourlem(zero, 0.5, 0.1, 0.25, 3, {1}, gp(8));
    CHECK(ou.pass);
    CHECK(ou.empiricalConstant == 0.0);
    CHECK(has_note(ou, "tau = 0"));

    auto es = check_E_estimates(zero, 0.5, 0.1, 10, 0.25, 3, {1}, gp(8));
    CHECK(es[0].pass);
    CHECK(es[1].pass);

    auto kc = check_kato_contraction(zero, 0.5, {1}, gp(8));
    CHECK(kc.pass);
    CHECK(has_note(kc, "comparison norm 0"));
}
