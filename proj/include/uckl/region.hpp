#pragma once
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "uckl/errors.hpp"

namespace uckl {

enum class RegionKind { Ball, Annulus };

struct Region {
    RegionKind kind = RegionKind::Ball;
    std::vector<double> center; // dimension = center.size()
    double rInner = 0.0;
    double rOuter = 1.0;

    int dim() const { return static_cast<int>(center.size()); }
    void validate() const;
    bool contains(const double* x) const;

    static Region ball(std::vector<double> c, double r) {
        return Region{RegionKind::Ball, std::move(c), 0.0, r};
    }
    static Region annulus(std::vector<double> c, double rIn, double rOut) {
        return Region{RegionKind::Annulus, std::move(c), rIn, rOut};
    }
};

bool same_region(const Region& a, const Region& b);

struct GridParams {
    int n = 16;
    int pointCap = 20000;
    std::uint64_t seed = 42;
};

// Cell centers of the cubic lattice over [center - rOuter, center + rOuter]^d
// that lie in the region; h = 2 rOuter / n, one cell volume h^d each.
struct GridPoints {
    std::vector<double> pts; // flat, stride d
    std::size_t count = 0;
    int d = 3;
    double h = 0.0;
    const double* at(std::size_t i) const { return pts.data() + i * d; }
    double cellVolume() const;
};

GridPoints grid_points(const Region& region, const GridParams& grid);

double radial_distance(const double* x, const std::vector<double>& center);

} // namespace uckl
