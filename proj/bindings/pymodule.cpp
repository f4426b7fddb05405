#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "uckl/class_functionals.hpp"
#include "uckl/errors.hpp"
#include "uckl/kernels.hpp"
#include "uckl/potentials.hpp"
#include "uckl/region.hpp"
#include "uckl/verify.hpp"

namespace py = pybind11;
using namespace uckl;

namespace {

GridParams make_grid(int n, std::uint64_t seed, std::size_t pointCap) {
    GridParams g;
    g.n = n;
    g.seed = seed;
    g.pointCap = pointCap;
    return g;
}

KernelSpec make_spec(int d, cdouble z, int N, double w) {
    KernelSpec s;
    s.d = d;
    s.z = z;
    s.N = N;
    s.w = w;
    return s;
}

void check_point(const std::vector<double>& x, int d, const char* name) {
    if (static_cast<int>(x.size()) != d)
        throw DomainError(std::string(name) + " must have d coordinates");
}

py::dict estimate_dict(const NormEstimate& e) {
    py::dict out;
    out["kind"] = norm_kind_name(e.kind);
    out["value"] = e.value;
    out["residual"] = e.residual;
    out["iterations"] = e.iterations;
    out["gridN"] = e.gridN;
    return out;
}

py::dict lemma_dict(const LemmaReport& r) {
    py::dict out;
    out["lemmaId"] = r.lemmaId;
    out["samples"] = r.samples;
    out["empiricalConstant"] = r.empiricalConstant;
    py::dict fg;
    for (const auto& kv : r.fittedGrowth) fg[kv.first.c_str()] = kv.second;
    out["fittedGrowth"] = fg;
    py::dict wc;
    for (const auto& kv : r.worstCase) wc[kv.first.c_str()] = kv.second;
    out["worstCase"] = wc;
    out["pass"] = r.pass;
    out["notes"] = r.notes;
    return out;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "truncated Riesz kernels, singular-integral operators, and "
              "potential-class functionals";

    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<CapacityError>(m, "CapacityError", PyExc_RuntimeError);
    py::register_exception<NonConvergenceError>(m, "NonConvergenceError", PyExc_RuntimeError);

    m.def("riesz_constant", &riesz_constant, py::arg("z"), py::arg("d"),
          "Gamma-ratio normalization of the Riesz kernel c_z |x-y|^{z-d}");

    m.def(
        "kernel",
        [](const std::vector<double>& x, const std::vector<double>& y, int d, cdouble z, int N,
           double w) {
            check_point(x, d, "x");
            check_point(y, d, "y");
            KernelSpec s = make_spec(d, z, N, w);
            return w != 0.0 ? weighted_truncated_kernel(s, x.data(), y.data())
                            : truncated_kernel(s, x.data(), y.data());
        },
        py::arg("x"), py::arg("y"), py::arg("d") = 3, py::arg("z") = cdouble(2.0, 0.0),
        py::arg("N") = 0, py::arg("w") = 0.0,
        "(weighted) truncated kernel value; N = 0 gives the plain kernel");

    m.def("weight_exponent", &weight_exponent, py::arg("N"), py::arg("d"), py::arg("delta"),
          "singular-weight exponent N + (d/2 - delta)(d-3)/(d-1)");

    m.def(
        "eval_potential",
        [](const std::string& potential, const std::vector<double>& x, int d) {
            Potential V = parse_potential(potential, d);
            check_point(x, d, "x");
            return eval_potential(V, x.data());
        },
        py::arg("potential"), py::arg("x"), py::arg("d") = 3,
        "strict pointwise evaluation of a potential spec string");

    m.def(
        "tau",
        [](const std::string& potential, const std::vector<double>& center, double rho, int d,
           int n, std::uint64_t seed, std::size_t pointCap) {
            return estimate_dict(
                tau(parse_potential(potential, d), center, rho, d, make_grid(n, seed, pointCap)));
        },
        py::arg("potential"), py::arg("center"), py::arg("rho"), py::arg("d") = 3,
        py::arg("n") = 16, py::arg("seed") = 42, py::arg("point_cap") = 20000,
        "2->2 norm of the |V|^{(d-1)/4}-sandwiched kernel operator on B(center, rho)");

    m.def(
        "tau_f3",
        [](const std::string& potential, const std::vector<double>& center, double rho, int d,
           int n, std::uint64_t seed, std::size_t pointCap) {
            return estimate_dict(
                tau_f3(parse_potential(potential, d), center, rho, make_grid(n, seed, pointCap)));
        },
        py::arg("potential"), py::arg("center"), py::arg("rho"), py::arg("d") = 3,
        py::arg("n") = 16, py::arg("seed") = 42, py::arg("point_cap") = 20000,
        "the z = 2, power-1/2 variant; coincides with tau at d = 3");

    m.def(
        "kato_norm",
        [](const std::string& potential, const std::vector<double>& center, double rho, int d,
           int n, std::uint64_t seed, std::size_t pointCap) {
            return estimate_dict(kato_norm(parse_potential(potential, d), center, rho,
                                           make_grid(n, seed, pointCap)));
        },
        py::arg("potential"), py::arg("center"), py::arg("rho"), py::arg("d") = 3,
        py::arg("n") = 16, py::arg("seed") = 42, py::arg("point_cap") = 20000,
        "sup of (-Laplace)^{-1}(1_B |V|) over the lattice of B(center, rho)");

    m.def(
        "morrey_norm",
        [](const std::string& potential, double p, const std::vector<double>& center,
           double regionRadius, const std::vector<double>& radii, int d, int n,
           std::uint64_t seed, std::size_t pointCap) {
            return estimate_dict(morrey_norm(parse_potential(potential, d), p,
                                             Region::ball(center, regionRadius), radii,
                                             make_grid(n, seed, pointCap)));
        },
        py::arg("potential"), py::arg("p"), py::arg("center"), py::arg("region_radius"),
        py::arg("radii"), py::arg("d") = 3, py::arg("n") = 16, py::arg("seed") = 42,
        py::arg("point_cap") = 20000,
        "max over ball centers and radii of r^{2-d/p} ||V||_{L^p(B)}");

    m.def(
        "weak_lorentz",
        [](const std::string& potential, const std::vector<double>& center, double rho, double p,
           int d, int n) {
            SampledField f = sample_on_region(parse_potential(potential, d),
                                              Region::ball(center, rho), make_grid(n, 42, 20000));
            return weak_lorentz_norm(f, p);
        },
        py::arg("potential"), py::arg("center"), py::arg("rho"), py::arg("p"), py::arg("d") = 3,
        py::arg("n") = 16, "weak-L^p norm of the sampled potential on B(center, rho)");

    m.def(
        "lp_local",
        [](const std::string& potential, const std::vector<double>& center, double rho, double p,
           int d, int n) {
            SampledField f = sample_on_region(parse_potential(potential, d),
                                              Region::ball(center, rho), make_grid(n, 42, 20000));
            return lp_local_norm(f, p);
        },
        py::arg("potential"), py::arg("center"), py::arg("rho"), py::arg("p"), py::arg("d") = 3,
        py::arg("n") = 16, "L^p norm of the sampled potential on B(center, rho)");

    m.def("strichartz_prefactor", &strichartz_prefactor, py::arg("d"),
          "the Gamma-ratio constant (= 2 pi / 3 at d = 3)");

    m.def(
        "strichartz_rhs",
        [](const std::string& potential, const std::vector<double>& center, double rho, int d,
           int n) {
            return strichartz_rhs(parse_potential(potential, d), center, rho, d,
                                  make_grid(n, 42, 20000));
        },
        py::arg("potential"), py::arg("center"), py::arg("rho"), py::arg("d") = 3,
        py::arg("n") = 16, "prefactor times the weak-L^{d/2} norm to the power (d-1)/4");

    m.def(
        "binom_bound",
        [](double gammaMax, int kmax, py::object c) {
            std::vector<double> gammas = default_gamma_grid(gammaMax);
            LemmaReport rep = c.is_none() ? check_binom_bound(gammas, kmax)
                                          : check_binom_bound(gammas, kmax, c.cast<double>());
            return lemma_dict(rep);
        },
        py::arg("gamma_max") = 10.0, py::arg("kmax") = 200, py::arg("c") = py::none(),
        "coefficient-modulus bound check; default exponent pi^2/16");

    m.def(
        "identity_check",
        [](int N, int d, int n, int mOrder, double r1, double r2, int samplePoints) {
            ManufacturedSolution ms;
            ms.m = mOrder;
            ms.r1 = r1;
            ms.r2 = r2;
            return lemma_dict(check_identity(ms, N, d, make_grid(n, 42, 20000), samplePoints));
        },
        py::arg("N") = 1, py::arg("d") = 3, py::arg("n") = 16, py::arg("m") = 2,
        py::arg("r1") = 0.4, py::arg("r2") = 0.8, py::arg("sample_points") = 5,
        "reconstruction of a manufactured radial solution through the kernel quadrature");
}
