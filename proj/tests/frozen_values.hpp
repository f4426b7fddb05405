#pragma once
// Regression constants measured on this implementation's default lattices and
// sample grids (fixed seeds, ordered reductions, so exact reproduction is
// expected). Regenerate with the uckl_calibrate tool and transcribe.

namespace frozen {

// Reduced-remainder ratio checks.
inline constexpr double kLemma1Bound = 1.000001;          // measured 1.0 (worst N=21, t=0.65, theta=0)
inline constexpr double kLemma2C1 = 2.07951021647;        // fitted envelope constant
inline constexpr double kLemma2c1 = 0.261637329701;       // fitted gamma^2 growth rate
inline constexpr double kLemma2C1Bound = 2.5;
inline constexpr double kLemma2c1Bound = 0.30;

// Binomial-coefficient bound: corrected exponent pi^2/16 holds with equality
// at gamma = 0; the understated pi^2/48 variant is violated by this ratio.
inline constexpr double kBinomUnderstatedViolation = 1.49210603655; // at gamma = +-2, k = 200

// sup_{m<=50, theta in 64-grid} |a_m(theta)| at z = 2 + i gamma, d = 3.
inline constexpr double kCoeffSup[6] = {1.0,           1.20740131074, 1.89842231275,
                                        6.27445396953, 23.4551626862, 91.181691735};
inline constexpr double kCoeffSupGamma[6] = {0.0, 0.5, 1.0, 2.0, 3.0, 4.0};

// Quadrature golds (d = 3).
inline constexpr double kKatoConstBallN24 = 0.124540138607;  // V=1, rho=0.5; continuum rho^2/2
inline constexpr double kHardyKatoN16 = 0.699413698917;      // Hardy(1), rho=0.5, floor ~ h/2
inline constexpr double kHardyKatoN32 = 0.871988533183;
inline constexpr double kHardyKatoGrowth = 0.172574834266;   // per floor halving; (1/4)ln2 = 0.173287
inline constexpr double kWeakLorentzInvSqLattice = 16.0 / 3.0; // |x|^{-2}: 8 nearest cells, any n

// tau / tau_f3 values.
inline constexpr double kTauF3HardyN12 = 0.219116800851; // Hardy(0.5), rho = 0.25 (rho-independent)
inline constexpr double kTauF3HardyN16 = 0.235175021651;
inline constexpr double kTauBallN8 = 0.416217530911;     // V = 1, rho = 1
inline constexpr double kTauBallN12 = 0.406770917735;
inline constexpr double kTauBallN16 = 0.408736924352;

// Stein potential at a singular-sphere center (n = 16).
inline constexpr double kSteinF3Rho300 = 0.0815252364808;
inline constexpr double kSteinF3Rho150 = 0.02510380751;
inline constexpr double kSteinF3Rho075 = 0.00876490013;

// Envelopes / bounds regressed by the verification checks.
inline constexpr double kOurlemMaxRatio = 0.0932770561884;  // N=1..10, Hardy(0.5), n=16
inline constexpr double kOurlemMinRatio = 0.0247011816513;
inline constexpr double kOurlemEnvelope = 0.12;
inline constexpr double kAnnulusUpperMax = 0.120857372168;  // E-estimate maxima at n=12, N=1..6
inline constexpr double kAnnulusLowerMax = 0.281696772992;
inline constexpr double kAnnulusEnvelope = 0.35;
inline constexpr double kKatoContractionMaxRatio = 0.80730666401; // V=1, rho=0.5, n=16
inline constexpr double kKatoContractionBound = 0.95;
inline constexpr double kKatoMaxWeightedNorm = 0.101390436604;

// Reconstruction identity: max relative error over the probe ladder.
inline constexpr double kIdentityN16 = 0.04292;   // N >= 1 (N = 0: 0.0379468)
inline constexpr double kIdentityN24 = 0.0102907; // N >= 1 (N = 0: 0.0134875)

// Strichartz-type comparison, n = 16.
inline constexpr double kStrichartzMaxRatio = 0.283584579983;
inline constexpr double kStrichartzPrefactorD3 = 2.0943951023931954923; // 2 pi / 3
inline constexpr double kStrichartzPrefactorD4 = 3.5381702545053520571;
inline constexpr double kStrichartzRhsBallN16 = 3.39251354513; // V = 1 on B(0,1)

// One-relative comparison rows, Hardy(0.5), n = 12.
inline constexpr double kOneRelHardyEps[3] = {0.0127505922307, 0.00314505458011,
                                              0.000783489932216}; // rho = 0.2, 0.1, 0.05

// Factorization diagnostic deficits (V = 1, rho = 1): half^2 undershoots tau.
inline constexpr double kFactorizationBand = 0.25;        // measured -16.93% (factor 2, n = 8)
inline constexpr double kFactorDeficitF2N8 = -0.169273;
inline constexpr double kFactorDeficitF3N8 = -0.120881;

} // namespace frozen
