#include "uckl/discretize.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "uckl/cgamma.hpp"
#include "uckl/kahan.hpp"
#include "uckl/parallel.hpp"
#include "uckl/rng.hpp"

namespace uckl {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

double cnorm2(const std::vector<cdouble>& v) {
    double s = 0.0;
    for (const cdouble& x : v) s += std::norm(x);
    return std::sqrt(s);
}

// w = A v, parallel over rows, each row reduced sequentially (deterministic).
void matvec(const DiscreteOperator& A, const std::vector<cdouble>& v, std::vector<cdouble>& w) {
    w.assign(A.rows, cdouble{});
    parallel_for(A.rows, [&](std::size_t i) {
        const cdouble* row = A.a.data() + i * A.cols;
        cdouble s{};
        for (std::size_t j = 0; j < A.cols; ++j) s += row[j] * v[j];
        w[i] = s;
    });
}

// u = A^H w, parallel over columns (deterministic).
void matvec_adj(const DiscreteOperator& A, const std::vector<cdouble>& w, std::vector<cdouble>& u) {
    u.assign(A.cols, cdouble{});
    parallel_for(A.cols, [&](std::size_t j) {
        cdouble s{};
        for (std::size_t i = 0; i < A.rows; ++i) s += std::conj(A.a[i * A.cols + j]) * w[i];
        u[j] = s;
    });
}

double vnorm(const double* x, int d) {
    double s = 0.0;
    for (int i = 0; i < d; ++i) s += x[i] * x[i];
    return std::sqrt(s);
}

} // namespace

MultiplierSpec MultiplierSpec::abs_power(Potential p, double power, double shift) {
    p.validate();
    MultiplierSpec m;
    m.pot = std::move(p);
    m.power = power;
    m.shift = shift;
    return m;
}

double MultiplierSpec::eval(const double* x, double floor) const {
    double base = shift;
    if (pot) base += std::abs(eval_potential_floored(*pot, x, floor));
    if (base == 0.0) return power == 0.0 ? 1.0 : 0.0;
    if (power == 1.0) return base;
    return std::pow(base, power);
}

std::string MultiplierSpec::describe() const {
    std::ostringstream os;
    os.precision(15);
    if (!pot) {
        if (power == 1.0 || shift == 1.0 || shift == 0.0)
            os << (shift == 1.0 ? 1.0 : (shift == 0.0 ? 0.0 : std::pow(shift, power)));
        else
            os << shift << "^" << power;
        return os.str();
    }
    os << "(|" << potential_to_string(*pot) << "|";
    if (shift != 0.0) os << "+" << shift;
    os << ")^" << power;
    return os.str();
}

std::string norm_kind_name(NormKind k) {
    switch (k) {
    case NormKind::TwoTwo: return "twoTwo";
    case NormKind::OneOne: return "oneOne";
    case NormKind::SupImage: return "supImage";
    case NormKind::PToTwoLower: return "pToTwoLower";
    }
    return "unknown";
}

double sphere_area(int d) {
    return 2.0 * std::pow(kPi, static_cast<double>(d) / 2.0) /
           std::tgamma(static_cast<double>(d) / 2.0);
}

double ball_volume(int d) { return sphere_area(d) / static_cast<double>(d); }

cdouble diag_cell_average(cdouble z, int d, double cellVolume) {
    double rc = std::pow(cellVolume / ball_volume(d), 1.0 / static_cast<double>(d));
    cdouble rcz = std::exp(z * std::log(rc));
    return riesz_constant(z, d) * sphere_area(d) * rcz / (z * cellVolume);
}

DiscreteOperator assemble(const KernelSpec& spec, const Region& left, const Region& right,
                          const MultiplierSpec& leftMult, const MultiplierSpec& rightMult,
                          const GridParams& grid) {
    spec.validate();
    left.validate();
    right.validate();
    if (left.dim() != spec.d || right.dim() != spec.d)
        throw DomainError("region dimension does not match kernel dimension");

    DiscreteOperator A;
    A.spec = spec;
    A.left = left;
    A.right = right;
    A.leftMult = leftMult;
    A.rightMult = rightMult;
    A.seed = grid.seed;
    A.gridN = grid.n;
    A.rowPts = grid_points(left, grid);
    const bool shared = same_region(left, right);
    A.colPts = shared ? A.rowPts : grid_points(right, grid);
    A.rows = A.rowPts.count;
    A.cols = A.colPts.count;
    const long long budget = shared ? static_cast<long long>(A.rows)
                                    : static_cast<long long>(A.rows) + static_cast<long long>(A.cols);
    if (budget > grid.pointCap)
        throw CapacityError("assembled grids exceed the point cap (" + std::to_string(budget) +
                            " > " + std::to_string(grid.pointCap) + ")");
    A.rowVol = A.rowPts.cellVolume();
    A.colVol = A.colPts.cellVolume();

    const int d = spec.d;
    const double sqL = std::sqrt(A.rowVol);
    const double sqR = std::sqrt(A.colVol);
    std::vector<double> L(A.rows), R(A.cols), xa(A.rows), ya(A.cols);
    for (std::size_t i = 0; i < A.rows; ++i) {
        L[i] = leftMult.eval(A.rowPts.at(i), A.rowPts.h / 2.0);
        xa[i] = vnorm(A.rowPts.at(i), d);
    }
    for (std::size_t j = 0; j < A.cols; ++j) {
        R[j] = rightMult.eval(A.colPts.at(j), A.colPts.h / 2.0);
        ya[j] = vnorm(A.colPts.at(j), d);
    }

    const cdouble cz = riesz_constant(spec.z, d);
    const cdouble zmd = spec.z - static_cast<double>(d);
    const bool reduced = spec.N > 0 || spec.w != 0.0;
    const bool realPlain = !reduced && spec.z.imag() == 0.0;
    const double coincTol = 1e-12 * A.rowPts.h;

    // Smooth part of the kernel at a shared node: c_z |y|^{z-d} P_{N-1}(1, 0).
    cdouble polyAtOne{};
    if (spec.N > 0) {
        KernelSpec s0 = spec;
        ReducedCoords rc{1.0, 0.0};
        polyAtOne = taylor_poly_reduced(s0, rc);
    }
    const cdouble diagAvg = diag_cell_average(spec.z, d, A.colVol);

    A.a.assign(A.rows * A.cols, cdouble{});
    std::vector<std::size_t> corrected(A.rows, 0);
    parallel_for(A.rows, [&](std::size_t i) {
        const double* x = A.rowPts.at(i);
        cdouble* row = A.a.data() + i * A.cols;
        for (std::size_t j = 0; j < A.cols; ++j) {
            const double* y = A.colPts.at(j);
            double rr = 0.0, dot = 0.0;
            for (int k = 0; k < d; ++k) {
                double dx = x[k] - y[k];
                rr += dx * dx;
                dot += x[k] * y[k];
            }
            double dist = std::sqrt(rr);
            cdouble K;
            if (dist <= coincTol) {
                K = diagAvg;
                if (spec.N > 0) K -= cz * std::exp(zmd * std::log(ya[j])) * polyAtOne;
                ++corrected[i];
            } else if (realPlain) {
                K = cz.real() * std::pow(dist, zmd.real());
            } else if (!reduced) {
                K = cz * std::exp(zmd * std::log(dist));
            } else {
                if (ya[j] == 0.0)
                    throw DomainError("truncated kernel node at the expansion origin; "
                                      "shift the region or use an even grid n");
                double t = xa[i] / ya[j];
                double theta = 0.0;
                if (xa[i] > 0.0)
                    theta = std::acos(std::clamp(dot / (xa[i] * ya[j]), -1.0, 1.0));
                else if (spec.w != 0.0)
                    throw DomainError("weighted kernel node at the origin; "
                                      "shift the region or use an even grid n");
                ReducedRemainder rem =
                    weighted_remainder_reduced(spec.z, d, spec.N, spec.w, t, theta);
                K = cz * std::exp(zmd * std::log(ya[j])) * rem.value;
            }
            row[j] = sqL * L[i] * K * R[j] * sqR;
        }
    });
    for (std::size_t c : corrected) A.correctedCells += c;
    return A;
}

NormEstimate spectral_norm(const DiscreteOperator& A, double tol, int maxIter) {
    if (!(tol > 0.0)) throw DomainError("spectral norm requires tol > 0");
    if (maxIter < 1) throw DomainError("spectral norm requires maxIter >= 1");
    NormEstimate est;
    est.kind = NormKind::TwoTwo;
    est.gridN = A.gridN;
    if (A.rows == 0 || A.cols == 0) return est;

    DetRng rng(A.seed);
    std::vector<cdouble> v(A.cols);
    for (auto& x : v) x = 2.0 * rng.symmetric();
    double nv = cnorm2(v);
    if (nv == 0.0) throw DomainError("degenerate start vector");
    for (auto& x : v) x /= nv;

    std::vector<cdouble> w, u;
    double sOld = 0.0, s = 0.0;
    for (int it = 1; it <= maxIter; ++it) {
        matvec(A, v, w);
        s = cnorm2(w);
        matvec_adj(A, w, u);
        double nu = cnorm2(u);
        if (nu == 0.0) {
            est.value = 0.0;
            est.residual = 0.0;
            est.iterations = it;
            return est;
        }
        for (std::size_t j = 0; j < A.cols; ++j) v[j] = u[j] / nu;
        double resid = std::abs(s - sOld) / std::max(s, 1e-300);
        if (std::abs(s - sOld) <= tol * std::max(s, 1e-300)) {
            est.value = s;
            est.residual = resid;
            est.iterations = it;
            return est;
        }
        sOld = s;
    }
    throw NonConvergenceError("power iteration did not converge in " + std::to_string(maxIter) +
                                  " iterations",
                              s, std::abs(s - sOld) / std::max(s, 1e-300), maxIter);
}

NormEstimate one_one_norm(const DiscreteOperator& A) {
    NormEstimate est;
    est.kind = NormKind::OneOne;
    est.gridN = A.gridN;
    if (A.rows == 0 || A.cols == 0) return est;
    const double scale = std::sqrt(A.rowVol / A.colVol); // |a_ij| sqrt(m_i/m_j) = m_i |L K R|
    std::vector<double> colSum(A.cols, 0.0);
    parallel_for(A.cols, [&](std::size_t j) {
        KahanR s;
        for (std::size_t i = 0; i < A.rows; ++i) s.add(std::abs(A.a[i * A.cols + j]));
        colSum[j] = s.value() * scale;
    });
    est.value = *std::max_element(colSum.begin(), colSum.end());
    est.residual = 0.0;
    est.iterations = 0;
    return est;
}

NormEstimate sup_image_norm(const KernelSpec& spec, const SampledField& density,
                            const Region& evalRegion, const GridParams& grid) {
    spec.validate();
    density.validate();
    for (double v : density.values)
        if (v < 0.0) throw DomainError("sup-image norm requires a nonnegative density");
    if (evalRegion.dim() != spec.d || density.d != spec.d)
        throw DomainError("dimension mismatch in sup-image norm");

    GridPoints ev = grid_points(evalRegion, grid);
    std::vector<double> evals;
    evals.insert(evals.end(), ev.pts.begin(), ev.pts.end());
    evals.insert(evals.end(), evalRegion.center.begin(), evalRegion.center.end());
    const std::size_t E = ev.count + 1;

    const int d = spec.d;
    const std::size_t M = density.size();
    const cdouble cz = riesz_constant(spec.z, d);
    const cdouble zmd = spec.z - static_cast<double>(d);
    const bool reduced = spec.N > 0 || spec.w != 0.0;
    const bool realPlain = !reduced && spec.z.imag() == 0.0;
    const double coincTol = 1e-12 * ev.h;

    cdouble polyAtOne{};
    if (spec.N > 0) polyAtOne = taylor_poly_reduced(spec, ReducedCoords{1.0, 0.0});

    std::vector<double> ya(M);
    for (std::size_t j = 0; j < M; ++j) ya[j] = vnorm(density.at(j), d);

    std::vector<double> image(E, 0.0);
    parallel_for(E, [&](std::size_t e) {
        const double* x = evals.data() + e * d;
        double xaN = vnorm(x, d);
        KahanC s;
        for (std::size_t j = 0; j < M; ++j) {
            const double* y = density.at(j);
            double rr = 0.0, dot = 0.0;
            for (int k = 0; k < d; ++k) {
                double dx = x[k] - y[k];
                rr += dx * dx;
                dot += x[k] * y[k];
            }
            double dist = std::sqrt(rr);
            cdouble K;
            if (dist <= coincTol) {
                K = diag_cell_average(spec.z, d, density.cellVolumes[j]);
                if (spec.N > 0) K -= cz * std::exp(zmd * std::log(ya[j])) * polyAtOne;
            } else if (realPlain) {
                K = cz.real() * std::pow(dist, zmd.real());
            } else if (!reduced) {
                K = cz * std::exp(zmd * std::log(dist));
            } else {
                if (ya[j] == 0.0)
                    throw DomainError("truncated kernel node at the expansion origin");
                double t = xaN / ya[j];
                double theta =
                    xaN > 0.0 ? std::acos(std::clamp(dot / (xaN * ya[j]), -1.0, 1.0)) : 0.0;
                ReducedRemainder rem =
                    weighted_remainder_reduced(spec.z, d, spec.N, spec.w, t, theta);
                K = cz * std::exp(zmd * std::log(ya[j])) * rem.value;
            }
            s.add(K * density.values[j] * density.cellVolumes[j]);
        }
        image[e] = std::abs(s.value());
    });

    NormEstimate est;
    est.kind = NormKind::SupImage;
    est.gridN = grid.n;
    est.value = *std::max_element(image.begin(), image.end());
    est.residual = 0.0;
    est.iterations = static_cast<int>(E);
    return est;
}

NormEstimate p_to_two_lower(const DiscreteOperator& A, double p, int iters) {
    if (!(p > 1.0 && p <= 2.0)) throw DomainError("p->2 lower bound requires 1 < p <= 2");
    if (iters < 1) throw DomainError("p->2 lower bound requires iters >= 1");
    NormEstimate est;
    est.kind = NormKind::PToTwoLower;
    est.gridN = A.gridN;
    if (A.rows == 0 || A.cols == 0) return est;

    const double w = std::pow(A.colVol, 1.0 - p / 2.0); // ||f||_p^p = sum w |g_j|^p
    const double dualPow = 1.0 / (p - 1.0);
    DetRng rng(A.seed);
    std::vector<cdouble> g(A.cols);
    for (auto& x : g) x = rng.csym();

    std::vector<cdouble> u, h;
    double best = 0.0, prevBest = 0.0;
    for (int it = 0; it < iters; ++it) {
        KahanR gp;
        for (const cdouble& x : g) gp.add(w * std::pow(std::abs(x), p));
        double gnorm = std::pow(gp.value(), 1.0 / p);
        if (gnorm == 0.0) break;
        matvec(A, g, u);
        double un = cnorm2(u);
        prevBest = best;
        best = std::max(best, un / gnorm);
        if (un == 0.0) break;
        for (auto& x : u) x /= un;
        matvec_adj(A, u, h);
        for (std::size_t j = 0; j < A.cols; ++j) {
            double ah = std::abs(h[j]);
            g[j] = ah > 0.0 ? (h[j] / ah) * std::pow(ah / w, dualPow) : cdouble{};
        }
    }
    est.value = best;
    est.residual = best > 0.0 ? (best - prevBest) / best : 0.0;
    est.iterations = iters;
    return est;
}

void dump_matrix_csv(const DiscreteOperator& A, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw DomainError("cannot open matrix dump path: " + path);
    out << "row,col,re,im\n";
    out.precision(17);
    for (std::size_t i = 0; i < A.rows; ++i)
        for (std::size_t j = 0; j < A.cols; ++j) {
            const cdouble& v = A.a[i * A.cols + j];
            out << i << "," << j << "," << v.real() << "," << v.imag() << "\n";
        }
}

} // namespace uckl
