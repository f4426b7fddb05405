#pragma once
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "uckl/region.hpp"

namespace uckl {

enum class PotentialKind { Hardy, ConstantBall, Stein, GridSampled };

struct Potential {
    PotentialKind kind = PotentialKind::ConstantBall;
    int d = 3;

    double beta = 0.0; // Hardy: beta ((d-2)/2)^2 |x|^{-2}

    double c = 0.0; // ConstantBall: c on B(0, radius)
    double radius = 1.0;

    double C = 1.0; // Stein: C / (||x|-1|^{2/(d-1)} (-ln||x|-1|)^b) on the open annulus
    double b = 2.0;
    double steinDelta = 0.5;

    std::vector<double> gpoints; // GridSampled: flat sample coordinates, stride d
    std::vector<double> gvalues;
    double cellVolume = 1.0;

    void validate() const;

    static Potential hardy(double beta, int d = 3);
    static Potential constant_ball(double c, double radius, int d = 3);
    static Potential stein(double C, double b, double steinDelta, int d = 3);
    static Potential grid_sampled(std::vector<double> points, std::vector<double> values,
                                  double cellVolume, int d = 3);
};

// Strict evaluation; throws DomainError at excluded singular points
// (Hardy at 0, Stein on the unit sphere).
double eval_potential(const Potential& p, const double* x);

// Quadrature evaluation: Hardy radius and Stein sphere-distance floored at
// `floor` (= h/2 during sampling) so cell values stay finite while the
// divergence rate survives refinement.
double eval_potential_floored(const Potential& p, const double* x, double floor);

struct SampledField {
    std::vector<double> points; // flat, stride d
    std::vector<double> values;
    std::vector<double> cellVolumes;
    int d = 3;
    std::size_t size() const { return values.size(); }
    const double* at(std::size_t i) const { return points.data() + i * d; }
    void validate() const;
};

SampledField sample_on_region(const Potential& p, const Region& region, const GridParams& grid);

// CLI mini-grammar: name(:key=value(,key=value)*)?, e.g. hardy:beta=0.5,
// stein:C=1,b=2,delta=0.5, const:c=1,radius=1, grid:path=file.csv,cellvol=0.001.
Potential parse_potential(const std::string& spec, int d = 3);
std::string potential_to_string(const Potential& p);

// CSV with one header row x1,..,xd,value.
Potential potential_from_csv(const std::string& path, double cellVolume, int d = 3);

} // namespace uckl
