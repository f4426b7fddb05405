#pragma once
#include <cmath>
#include <complex>

namespace uckl {

// log Gamma(z) for complex z, Lanczos (g = 7, 9 coefficients), principal branch.
// Reflection for Re(z) < 0.5. Accurate to ~1e-14 relative over the range used here.
inline std::complex<double> log_gamma(std::complex<double> z) {
    static const double g = 7.0;
    static const double coef[9] = {
        0.99999999999980993,
        676.5203681218851,
        -1259.1392167224028,
        771.32342877765313,
        -176.61502916214059,
        12.507343278686905,
        -0.13857109526572012,
        9.9843695780195716e-6,
        1.5056327351493116e-7,
    };
    const double pi = 3.141592653589793238462643383279502884;
    if (z.real() < 0.5) {
        // log Gamma(z) = log(pi / sin(pi z)) - log Gamma(1 - z)
        return std::log(pi / std::sin(pi * z)) - log_gamma(1.0 - z);
    }
    z -= 1.0;
    std::complex<double> x = coef[0];
    for (int i = 1; i < 9; ++i) x += coef[i] / (z + static_cast<double>(i));
    std::complex<double> t = z + g + 0.5;
    return 0.5 * std::log(2.0 * pi) + (z + 0.5) * std::log(t) - t + std::log(x);
}

inline std::complex<double> cgamma(std::complex<double> z) {
    if (z.imag() == 0.0 && z.real() > 0.0) return {std::tgamma(z.real()), 0.0};
    return std::exp(log_gamma(z));
}

} // namespace uckl
