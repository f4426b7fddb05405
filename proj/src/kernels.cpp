#include "uckl/kernels.hpp"

#include <algorithm>
#include <cmath>

#include "uckl/cgamma.hpp"
#include "uckl/kahan.hpp"

namespace uckl {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kEps = 2.2e-16;
constexpr long kTailCap = 200000;

double norm2(const double* x, int d) {
    double s = 0.0;
    for (int i = 0; i < d; ++i) s += x[i] * x[i];
    return std::sqrt(s);
}

// |1 - t e^{i theta}|^2, stable at theta ~ 0, t ~ 1.
double chord2(double t, double theta) {
    double sh = std::sin(0.5 * theta);
    return (1.0 - t) * (1.0 - t) + 4.0 * t * sh * sh;
}

cdouble F_reduced(cdouble z, int d, double t, double theta) {
    double w2 = chord2(t, theta);
    if (w2 == 0.0) throw SingularityError("reduced kernel at t = 1, theta = 0 (x = y)");
    return std::exp((z - static_cast<double>(d)) * (0.5 * std::log(w2)));
}

// e^w - 1 without cancellation for small w.
cdouble cexpm1(cdouble w) {
    double ea = std::expm1(w.real());
    double sb = std::sin(w.imag());
    double half = std::sin(0.5 * w.imag());
    double cbm1 = -2.0 * half * half; // cos b - 1
    return {ea * (cbm1 + 1.0) + cbm1, (ea + 1.0) * sb};
}

struct TailSum {
    cdouble value{}; // sum_{m >= N} a_m t^{m-N}
    double mag = 0.0;
};

// Tail of the reduced series, scaled by t^{-N} so the caller can fold in
// weights without intermediate under/overflow.
TailSum tail_scaled(cdouble z, int d, int N, double t, double theta) {
    CoeffRecurrence rec(z, d, std::cos(theta));
    for (int m = 0; m < N; ++m) rec.next();
    TailSum out;
    KahanC acc;
    double tm = 1.0;
    int small = 0;
    for (long m = 0; m < kTailCap; ++m) {
        cdouble term = rec.next() * tm;
        acc.add(term);
        if (std::abs(term) <= 1e-18 * std::max(acc.magnitude(), 1e-300)) {
            if (++small >= 3) {
                out.value = acc.value();
                out.mag = acc.magnitude();
                return out;
            }
        } else {
            small = 0;
        }
        tm *= t;
    }
    throw NonConvergenceError("reduced-kernel tail series did not converge (t too close to 1)",
                              std::abs(acc.value()), 1.0, static_cast<int>(kTailCap));
}

bool in_spec_zone(cdouble z, int d, int N, double t) {
    return std::abs(z.real() - (static_cast<double>(d) - 1.0)) < 1e-12 && N > 20 &&
           t > 0.98 && t < 1.02 && t != 1.0;
}

} // namespace

void KernelSpec::validate() const {
    if (d < 3) throw DomainError("kernel dimension must be >= 3");
    if (N < 0) throw DomainError("kernel truncation order must be >= 0");
    if (!(z.real() > 0.0 && z.real() <= static_cast<double>(d) - 1.0))
        throw DomainError("truncated kernel requires 0 < Re z <= d-1");
}

void KernelSpec::validate_plain() const {
    if (d < 3) throw DomainError("kernel dimension must be >= 3");
    if (!(z.real() > 0.0 && z.real() < static_cast<double>(d)))
        throw DomainError("riesz kernel requires 0 < Re z < d");
}

ReducedCoords reduce_pair(int d, const double* x, const double* y) {
    double ax = norm2(x, d);
    double ay = norm2(y, d);
    if (ay == 0.0) throw DomainError("kernel reduction requires y != 0");
    ReducedCoords rc;
    rc.t = ax / ay;
    if (ax == 0.0) {
        rc.theta = 0.0;
        return rc;
    }
    double dot = 0.0;
    for (int i = 0; i < d; ++i) dot += x[i] * y[i];
    double ct = std::clamp(dot / (ax * ay), -1.0, 1.0);
    rc.theta = std::acos(ct);
    return rc;
}

cdouble riesz_constant(cdouble z, int d) {
    if (!(z.real() > 0.0 && z.real() < static_cast<double>(d)))
        throw DomainError("riesz constant requires 0 < Re z < d");
    double dd = static_cast<double>(d);
    cdouble num = cgamma((dd - z) / 2.0);
    cdouble den = std::pow(kPi, dd / 2.0) * std::exp(z * std::log(2.0)) * cgamma(z / 2.0);
    return num / den;
}

cdouble riesz_kernel(const KernelSpec& spec, const double* x, const double* y) {
    spec.validate_plain();
    double s = 0.0;
    for (int i = 0; i < spec.d; ++i) {
        double dx = x[i] - y[i];
        s += dx * dx;
    }
    double r = std::sqrt(s);
    if (r == 0.0) throw SingularityError("riesz kernel evaluated at x = y");
    return riesz_constant(spec.z, spec.d) *
           std::exp((spec.z - static_cast<double>(spec.d)) * std::log(r));
}

std::vector<cdouble> binom_coeff_seq(cdouble s, int K) {
    if (K < 0) throw DomainError("coefficient count must be >= 0");
    std::vector<cdouble> h(static_cast<std::size_t>(K) + 1);
    h[0] = 1.0;
    for (int k = 1; k <= K; ++k)
        h[k] = h[k - 1] * (static_cast<double>(k) - 1.0 - s) / static_cast<double>(k);
    return h;
}

std::vector<cdouble> taylor_coeffs_reduced(cdouble z, int d, double theta, int K) {
    if (K < 0) throw DomainError("coefficient count must be >= 0");
    CoeffRecurrence rec(z, d, std::cos(theta));
    std::vector<cdouble> a(static_cast<std::size_t>(K) + 1);
    for (int m = 0; m <= K; ++m) a[m] = rec.next();
    return a;
}

cdouble taylor_poly_reduced(const KernelSpec& spec, const ReducedCoords& rc) {
    spec.validate();
    CoeffRecurrence rec(spec.z, spec.d, std::cos(rc.theta));
    KahanC P;
    double tm = 1.0;
    for (int m = 0; m < spec.N; ++m) {
        P.add(rec.next() * tm);
        tm *= rc.t;
    }
    return P.value();
}

ReducedRemainder remainder_reduced(cdouble z, int d, int N, double t, double theta) {
    if (t < 0.0 || !std::isfinite(t)) throw DomainError("reduced coordinate t must be finite and >= 0");
    if (N < 0) throw DomainError("kernel truncation order must be >= 0");
    ReducedRemainder out;
    if (N == 0) {
        out.value = F_reduced(z, d, t, theta);
        out.err = kEps * std::abs(out.value);
        out.route = ReducedRemainder::Plain;
        return out;
    }
    if (t == 0.0) {
        out.value = 0.0;
        out.err = 0.0;
        out.route = ReducedRemainder::Zero;
        return out;
    }
    const bool specZone = in_spec_zone(z, d, N, t);
    if (t < 1.0 && (std::pow(t, N) < 1e-4 || specZone)) {
        TailSum tail = tail_scaled(z, d, N, t, theta);
        double tN = std::pow(t, N);
        out.value = tail.value * tN;
        out.err = (kEps + 1e-18) * tail.mag * tN;
        out.route = ReducedRemainder::Tail;
        return out;
    }
    if (specZone && t > 1.0) {
        // sum_{m<N} a_m t^m (t^{z-d-2m} - 1)  +  t^{z-d} sum_{m>=N} a_m t^{-m}
        double lt = std::log(t);
        CoeffRecurrence rec(z, d, std::cos(theta));
        KahanC acc;
        double tm = 1.0;
        for (int m = 0; m < N; ++m) {
            cdouble a = rec.next();
            cdouble ex = (z - static_cast<double>(d) - 2.0 * m) * lt;
            acc.add(a * tm * cexpm1(ex));
            tm *= t;
        }
        TailSum tail = tail_scaled(z, d, N, 1.0 / t, theta);
        cdouble pref = std::exp((z - static_cast<double>(d)) * lt) * std::pow(1.0 / t, N);
        out.value = acc.value() + pref * tail.value;
        out.err = kEps * (acc.magnitude() + std::abs(pref) * tail.mag);
        out.route = ReducedRemainder::Reflected;
        return out;
    }
    cdouble F = F_reduced(z, d, t, theta);
    CoeffRecurrence rec(z, d, std::cos(theta));
    KahanC P;
    double tm = 1.0;
    for (int m = 0; m < N; ++m) {
        P.add(rec.next() * tm);
        tm *= t;
    }
    out.value = F - P.value();
    out.err = kEps * (std::abs(F) + P.magnitude() + std::abs(P.value()));
    out.route = ReducedRemainder::Sub;
    return out;
}

ReducedRemainder weighted_remainder_reduced(cdouble z, int d, int N, double w, double t,
                                            double theta) {
    if (w == 0.0) return remainder_reduced(z, d, N, t, theta);
    if (t == 0.0) throw DomainError("weighted kernel requires x != 0");
    if (t < 0.0 || !std::isfinite(t)) throw DomainError("reduced coordinate t must be finite and >= 0");
    const bool specZone = in_spec_zone(z, d, N, t);
    if (N > 0 && t < 1.0 && (std::pow(t, N) < 1e-4 || specZone)) {
        // fold the weight into the series scale: t^{-w} R = t^{N-w} sum a_m t^{m-N}
        TailSum tail = tail_scaled(z, d, N, t, theta);
        double scale = std::exp((static_cast<double>(N) - w) * std::log(t));
        ReducedRemainder out;
        out.value = tail.value * scale;
        out.err = (kEps + 1e-18) * tail.mag * scale;
        out.route = ReducedRemainder::Tail;
        return out;
    }
    ReducedRemainder out = remainder_reduced(z, d, N, t, theta);
    double scale = std::exp(-w * std::log(t));
    out.value *= scale;
    out.err *= scale;
    return out;
}

cdouble truncated_kernel(const KernelSpec& spec, const double* x, const double* y) {
    spec.validate();
    double ay = norm2(y, spec.d);
    if (ay == 0.0) throw DomainError("truncated kernel requires y != 0");
    ReducedCoords rc = reduce_pair(spec.d, x, y);
    ReducedRemainder R = remainder_reduced(spec.z, spec.d, spec.N, rc.t, rc.theta);
    return riesz_constant(spec.z, spec.d) *
           std::exp((spec.z - static_cast<double>(spec.d)) * std::log(ay)) * R.value;
}

cdouble truncated_kernel_direct(const KernelSpec& spec, const double* x, const double* y) {
    spec.validate();
    if (spec.N > 3)
        throw UnsupportedError("direct truncated-kernel oracle implemented for N <= 3 only");
    const cdouble a = spec.z - static_cast<double>(spec.d);
    double ay = norm2(y, spec.d);
    if (ay == 0.0) throw DomainError("truncated kernel requires y != 0");
    double rr = 0.0, xy = 0.0, xx = 0.0;
    for (int i = 0; i < spec.d; ++i) {
        double dx = x[i] - y[i];
        rr += dx * dx;
        xy += x[i] * y[i];
        xx += x[i] * x[i];
    }
    double r = std::sqrt(rr);
    if (r == 0.0) throw SingularityError("truncated kernel evaluated at x = y");
    cdouble full = std::exp(a * std::log(r));
    double lay = std::log(ay);
    KahanC T;
    if (spec.N >= 1) T.add(std::exp(a * lay));
    if (spec.N >= 2) T.add(a * std::exp((a - 2.0) * lay) * (-xy));
    if (spec.N >= 3)
        T.add(0.5 * (a * (a - 2.0) * std::exp((a - 4.0) * lay) * (xy * xy) +
                     a * std::exp((a - 2.0) * lay) * xx));
    return riesz_constant(spec.z, spec.d) * (full - T.value());
}

cdouble weighted_truncated_kernel(const KernelSpec& spec, const double* x, const double* y) {
    spec.validate();
    if (spec.w == 0.0) return truncated_kernel(spec, x, y);
    double ax = norm2(x, spec.d);
    if (ax == 0.0) throw DomainError("weighted truncated kernel requires x != 0");
    double ay = norm2(y, spec.d);
    if (ay == 0.0) throw DomainError("weighted truncated kernel requires y != 0");
    ReducedCoords rc = reduce_pair(spec.d, x, y);
    ReducedRemainder R =
        weighted_remainder_reduced(spec.z, spec.d, spec.N, spec.w, rc.t, rc.theta);
    return riesz_constant(spec.z, spec.d) *
           std::exp((spec.z - static_cast<double>(spec.d)) * std::log(ay)) * R.value;
}

double weight_exponent(int N, int d, double delta) {
    if (N < 0) throw DomainError("weight exponent requires N >= 0");
    if (d < 3) throw DomainError("weight exponent requires d >= 3");
    if (!(delta > 0.0 && delta < 0.5)) throw DomainError("weight exponent requires 0 < delta < 1/2");
    double dd = static_cast<double>(d);
    return static_cast<double>(N) + (dd / 2.0 - delta) * (dd - 3.0) / (dd - 1.0);
}

} // namespace uckl
