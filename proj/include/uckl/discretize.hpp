#pragma once
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "uckl/kernels.hpp"
#include "uckl/potentials.hpp"
#include "uckl/region.hpp"

namespace uckl {

// Pointwise multiplier (|V| + shift)^power; no potential means the constant
// shift^power (with the conventions one() = 1, zero potential handled as 0).
struct MultiplierSpec {
    std::optional<Potential> pot;
    double power = 1.0;
    double shift = 0.0;

    static MultiplierSpec one() {
        MultiplierSpec m;
        m.shift = 1.0;
        return m;
    }
    static MultiplierSpec abs_power(Potential p, double power, double shift = 0.0);
    // floor = half cell side, passed through to the potential evaluation.
    double eval(const double* x, double floor) const;
    bool is_one() const { return !pot && shift == 1.0 && power == 1.0; }
    std::string describe() const;
};

struct DiscreteOperator {
    std::vector<cdouble> a; // row-major, rows x cols
    std::size_t rows = 0, cols = 0;
    GridPoints rowPts, colPts;
    double rowVol = 1.0, colVol = 1.0; // uniform cell volumes
    KernelSpec spec;
    Region left, right;
    MultiplierSpec leftMult, rightMult;
    std::size_t correctedCells = 0;
    std::uint64_t seed = 42;
    int gridN = 0;

    cdouble& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    const cdouble& at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
};

enum class NormKind { TwoTwo, OneOne, SupImage, PToTwoLower };
std::string norm_kind_name(NormKind k);

struct NormEstimate {
    double value = 0.0;
    double residual = 0.0;
    int iterations = 0;
    int gridN = 0;
    NormKind kind = NormKind::TwoTwo;
};

// Nystrom matrix: entry(i,j) = sqrt(m_i) L(x_i) K(x_i,x_j) R(x_j) sqrt(m_j);
// when the two lattices share cells, diagonal self-interactions are replaced
// by the exact kernel average over the volume-equivalent ball.
DiscreteOperator assemble(const KernelSpec& spec, const Region& left, const Region& right,
                          const MultiplierSpec& leftMult, const MultiplierSpec& rightMult,
                          const GridParams& grid);

// Largest singular value by power iteration on A* A, seeded start, ordered
// (deterministic) reductions; throws NonConvergenceError past maxIter.
NormEstimate spectral_norm(const DiscreteOperator& A, double tol = 1e-6, int maxIter = 10000);

// Exact max weighted column sum of the L1-convention matrix:
// max_j sum_i m_i |L K R| = max_j sum_i |a_ij| sqrt(m_i/m_j).
NormEstimate one_one_norm(const DiscreteOperator& A);

// sup over evaluation points x (lattice of evalRegion plus its center) of
// sum_j K(x,y_j) density_j m_j, with the cell-average correction when x
// lands on a density node.
NormEstimate sup_image_norm(const KernelSpec& spec, const SampledField& density,
                            const Region& evalRegion, const GridParams& grid);

// Certified lower bound on the p->2 norm (domain measured with the cell
// volumes) via alternating duality: g_j <- phase(h_j) (|h_j|/w_j)^{1/(p-1)},
// w_j = m_j^{1-p/2}. Every iterate is a valid lower bound; best is kept.
NormEstimate p_to_two_lower(const DiscreteOperator& A, double p, int iters = 60);

// Singular diagonal replacement: cell average over the equal-volume ball,
// (1/m) c_z sigma_{d-1} r_c^z / z, r_c = (m/omega_d)^{1/d}.
cdouble diag_cell_average(cdouble z, int d, double cellVolume);
double sphere_area(int d);  // sigma_{d-1} = 2 pi^{d/2} / Gamma(d/2)
double ball_volume(int d);  // omega_d = sigma_{d-1} / d

void dump_matrix_csv(const DiscreteOperator& A, const std::string& path);

} // namespace uckl
