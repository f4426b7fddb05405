#pragma once
#include <complex>
#include <vector>

#include "uckl/errors.hpp"

namespace uckl {

using cdouble = std::complex<double>;

struct KernelSpec {
    int d = 3;
    cdouble z = {2.0, 0.0};
    int N = 0;      // truncation order; 0 = plain kernel
    double w = 0.0; // singular-weight exponent (|x|^{-w} ... |y|^{w}), 0 = unweighted

    void validate() const;                  // truncated range: 0 < Re z <= d-1
    void validate_plain() const;            // plain range:     0 < Re z <  d
};

struct ReducedCoords {
    double t = 0.0;     // |x| / |y|
    double theta = 0.0; // angle(x, y), in [0, pi]
};

ReducedCoords reduce_pair(int d, const double* x, const double* y);

// c_z = Gamma((d-z)/2) / (pi^{d/2} 2^z Gamma(z/2)), 0 < Re z < d.
cdouble riesz_constant(cdouble z, int d);

// c_z |x-y|^{z-d}; modulus power, phase exp(i Im z ln|x-y|).
cdouble riesz_kernel(const KernelSpec& spec, const double* x, const double* y);

// Coefficients of (1-w)^s = sum h_k w^k: h_0 = 1, h_k = h_{k-1} (k-1-s)/k.
std::vector<cdouble> binom_coeff_seq(cdouble s, int K);

// Three-term recurrence for the reduced Taylor coefficients a_m(theta)
// (Gegenbauer C_m^lambda(cos theta) with lambda = (d-z)/2); equals the
// convolution sum_{k+l=m} h_k h_l e^{i(k-l)theta} of the h-sequence.
struct CoeffRecurrence {
    cdouble lam;
    double c; // cos theta
    cdouble am2{}, am1{};
    int m = 0;
    CoeffRecurrence(cdouble z, int d, double cosTheta)
        : lam(0.5 * (static_cast<double>(d) - z)), c(cosTheta) {}
    cdouble next() { // yields a_0, a_1, a_2, ...
        cdouble a;
        if (m == 0)
            a = 1.0;
        else if (m == 1)
            a = 2.0 * lam * c;
        else {
            double md = static_cast<double>(m);
            a = (2.0 * c * (md + lam - 1.0) * am1 - (md + 2.0 * lam - 2.0) * am2) / md;
        }
        am2 = am1;
        am1 = a;
        ++m;
        return a;
    }
};

// a_0 .. a_K at fixed theta.
std::vector<cdouble> taylor_coeffs_reduced(cdouble z, int d, double theta, int K);

// P_{N-1}(t, theta) = sum_{m<N} a_m(theta) t^m (0 for N = 0), compensated.
cdouble taylor_poly_reduced(const KernelSpec& spec, const ReducedCoords& rc);

// Reduced remainder |1 - t e^{i theta}|^{z-d} - P_{N-1}(t,theta) with a
// roundoff estimate. Route selection:
//   tail        t < 1 and (t^N < 1e-4, or near-1 zone for Re z = d-1, N > 20)
//   reflected   t in (1, 1.02), N > 20, Re z = d-1
//   subtraction otherwise
struct ReducedRemainder {
    cdouble value{};
    double err = 0.0;
    enum Route { Plain, Zero, Sub, Tail, Reflected } route = Sub;
};
ReducedRemainder remainder_reduced(cdouble z, int d, int N, double t, double theta);

// remainder * t^{-w}, with the weight folded into the series scaling so small
// t with large w does not overflow/underflow en route.
ReducedRemainder weighted_remainder_reduced(cdouble z, int d, int N, double w, double t, double theta);

// [kernel]_N(x,y) = c_z |y|^{z-d} * remainder(t, theta).
cdouble truncated_kernel(const KernelSpec& spec, const double* x, const double* y);

// Direct multivariate Taylor subtraction, N <= 3; the oracle for the reduced route.
cdouble truncated_kernel_direct(const KernelSpec& spec, const double* x, const double* y);

// |x|^{-w} [kernel]_N(x,y) |y|^{w}.
cdouble weighted_truncated_kernel(const KernelSpec& spec, const double* x, const double* y);

// N + (d/2 - delta)(d-3)/(d-1), 0 < delta < 1/2.
double weight_exponent(int N, int d, double delta);

} // namespace uckl
