#pragma once
#include <cmath>
#include <complex>

namespace uckl {

// Neumaier-compensated accumulator; magnitude() feeds roundoff estimates
// (eps * sum of |terms|) used by the cancellation sentinel.
template <class T>
struct KahanSum {
    T s{};
    T c{};
    double mag = 0.0;

    void add(T x) {
        T t = s + x;
        if constexpr (std::is_same_v<T, double>) {
            if (std::abs(s) >= std::abs(x))
                c += (s - t) + x;
            else
                c += (x - t) + s;
        } else {
            c += (s - t) + x; // complex: plain Kahan step componentwise
        }
        s = t;
        mag += std::abs(x);
    }
    T value() const { return s + c; }
    double magnitude() const { return mag; }
};

using KahanC = KahanSum<std::complex<double>>;
using KahanR = KahanSum<double>;

} // namespace uckl
