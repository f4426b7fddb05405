#include "uckl/region.hpp"

#include <cmath>

namespace uckl {

void Region::validate() const {
    if (center.empty()) throw DomainError("region center must have dimension >= 1");
    if (!std::isfinite(rInner) || !std::isfinite(rOuter))
        throw DomainError("region radii must be finite");
    if (rInner < 0.0) throw DomainError("region rInner must be >= 0");
    if (!(rOuter > rInner)) throw DomainError("region requires rOuter > rInner");
    if (kind == RegionKind::Ball && rInner != 0.0)
        throw DomainError("ball region requires rInner = 0");
    if (kind == RegionKind::Annulus && !(rInner > 0.0))
        throw DomainError("annulus region requires rInner > 0");
}

bool Region::contains(const double* x) const {
    double r = radial_distance(x, center);
    if (kind == RegionKind::Ball) return r < rOuter;
    return r >= rInner && r < rOuter;
}

bool same_region(const Region& a, const Region& b) {
    return a.kind == b.kind && a.center == b.center && a.rInner == b.rInner &&
           a.rOuter == b.rOuter;
}

double radial_distance(const double* x, const std::vector<double>& center) {
    double s = 0.0;
    for (std::size_t i = 0; i < center.size(); ++i) {
        double dx = x[i] - center[i];
        s += dx * dx;
    }
    return std::sqrt(s);
}

double GridPoints::cellVolume() const {
    double v = 1.0;
    for (int i = 0; i < d; ++i) v *= h;
    return v;
}

GridPoints grid_points(const Region& region, const GridParams& grid) {
    region.validate();
    if (grid.n < 2) throw DomainError("grid n must be >= 2");
    if (grid.pointCap < 1) throw DomainError("grid pointCap must be >= 1");

    const int d = region.dim();
    GridPoints gp;
    gp.d = d;
    gp.h = 2.0 * region.rOuter / static_cast<double>(grid.n);

    std::vector<int> idx(d, 0);
    std::vector<double> x(d);
    const long long capacity = grid.pointCap;
    while (true) {
        for (int i = 0; i < d; ++i)
            x[i] = region.center[i] - region.rOuter + (idx[i] + 0.5) * gp.h;
        if (region.contains(x.data())) {
            if (static_cast<long long>(gp.count) >= capacity)
                throw CapacityError("grid would exceed the point cap (" +
                                    std::to_string(grid.pointCap) + ")");
            gp.pts.insert(gp.pts.end(), x.begin(), x.end());
            ++gp.count;
        }
        int axis = d - 1;
        while (axis >= 0 && ++idx[axis] == grid.n) idx[axis--] = 0;
        if (axis < 0) break;
    }
    if (gp.count == 0) throw DomainError("region contains no grid cell centers at n = " +
                                         std::to_string(grid.n));
    return gp;
}

} // namespace uckl
