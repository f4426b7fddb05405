#pragma once
#include <complex>
#include <cstdint>
#include <random>

namespace uckl {

// Deterministic uniform doubles built from raw mt19937_64 bits.
// std::uniform_real_distribution is not bitwise-portable across standard
// libraries; this construction is.
struct DetRng {
    std::mt19937_64 eng;
    explicit DetRng(std::uint64_t seed) : eng(seed) {}
    double uniform() { return static_cast<double>(eng() >> 11) * 0x1.0p-53; } // [0,1)
    double symmetric() { return uniform() - 0.5; }
    std::complex<double> csym() {
        double re = symmetric();
        double im = symmetric();
        return {re, im};
    }
};

} // namespace uckl
