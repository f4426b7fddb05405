#include <chrono>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "uckl/discretize.hpp"
#include "uckl/report_json.hpp"
#include "uckl/verify.hpp"

using namespace uckl;

namespace {

std::vector<double> parse_csv_doubles(const std::string& s) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        std::size_t comma = s.find(',', pos);
        std::string tok = s.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(tok, &used);
        } catch (const std::exception&) {
            throw DomainError("cannot parse '" + tok + "' as a number");
        }
        if (used != tok.size()) throw DomainError("cannot parse '" + tok + "' as a number");
        out.push_back(v);
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (out.empty()) throw DomainError("empty numeric list");
    return out;
}

std::vector<int> parse_csv_ints(const std::string& s) {
    std::vector<int> out;
    for (double v : parse_csv_doubles(s)) {
        int i = static_cast<int>(v);
        if (static_cast<double>(i) != v) throw DomainError("expected integer list, got '" + s + "'");
        out.push_back(i);
    }
    return out;
}

struct Common {
    std::uint64_t seed = 42;
    int gridN = 16;
    std::size_t pointCap = 20000;
    double tol = 1e-6;
    int maxIter = 10000;
    std::string out;

    GridParams grid() const {
        GridParams g;
        g.n = gridN;
        g.pointCap = pointCap;
        g.seed = seed;
        return g;
    }
    void add_options(CLI::App* cmd) {
        cmd->add_option("--seed", seed, "RNG seed for iteration start vectors");
        cmd->add_option("--grid", gridN, "lattice resolution per axis")->check(CLI::PositiveNumber);
        cmd->add_option("--point-cap", pointCap, "max lattice points per operator");
        cmd->add_option("--tol", tol, "power-iteration relative tolerance");
        cmd->add_option("--max-iter", maxIter, "power-iteration cap")->check(CLI::PositiveNumber);
        cmd->add_option("--out", out, "write the JSON report to this path");
    }
};

ojson pointwise_estimate(double value) {
    ojson e;
    e["kind"] = "pointwise";
    e["value"] = value;
    e["residual"] = 0.0;
    e["iterations"] = 1;
    return e;
}

ojson scalar_estimate(const char* kind, double value, long iterations) {
    ojson e;
    e["kind"] = kind;
    e["value"] = value;
    e["residual"] = 0.0;
    e["iterations"] = iterations;
    return e;
}

ojson common_params(const Common& c) {
    ojson p;
    p["seed"] = c.seed;
    p["grid"] = c.gridN;
    p["pointCap"] = c.pointCap;
    p["tol"] = c.tol;
    p["maxIter"] = c.maxIter;
    return p;
}

double elapsed_ms(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
}

// --out set: write file, keep stdout to the summary line. Otherwise the full
// report goes to stdout so the run is still machine-readable.
void emit(const ojson& report, const std::string& out) {
    if (!out.empty())
        write_json_file(out, report);
    else
        std::cout << report.dump(2) << "\n";
}

int finish_nonconvergence(const std::string& command, ojson params, const Common& c,
                          const NonConvergenceError& e,
                          std::chrono::steady_clock::time_point t0) {
    ojson est;
    est["kind"] = "twoTwo";
    est["value"] = e.best;
    est["residual"] = e.residual;
    est["iterations"] = e.iterations;
    ojson rep = run_report(command, std::move(params), std::move(est),
                           grid_json(c.gridN, 0.0, 0), elapsed_ms(t0), c.seed);
    rep["result"] = ojson{{"error", "non-convergence"}, {"message", e.what()}};
    std::cerr << "non-convergence: " << e.what() << "\n";
    emit(rep, c.out);
    return 3;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"truncated Riesz kernels, singular-integral operators, and "
                 "potential-class functionals"};
    app.require_subcommand(1);

    // ---- kernel eval ----
    CLI::App* kernelCmd = app.add_subcommand("kernel", "pointwise kernel evaluation");
    kernelCmd->require_subcommand(1);
    CLI::App* evalCmd = kernelCmd->add_subcommand("eval", "evaluate the (weighted) truncated kernel");
    struct {
        int d = 3;
        double zRe = 2.0, zIm = 0.0, w = 0.0;
        int N = 0;
        std::string x, y;
        Common c;
    } kev;
    evalCmd->add_option("--d", kev.d, "dimension")->check(CLI::Range(3, 16));
    evalCmd->add_option("--z-re", kev.zRe, "Re z");
    evalCmd->add_option("--z-im", kev.zIm, "Im z");
    evalCmd->add_option("--N", kev.N, "truncation order")->check(CLI::NonNegativeNumber);
    evalCmd->add_option("--w", kev.w, "weight exponent (|x|^{-w} K |y|^{w})");
    evalCmd->add_option("--x", kev.x, "point x as x1,..,xd")->required();
    evalCmd->add_option("--y", kev.y, "point y as y1,..,yd")->required();
    kev.c.add_options(evalCmd);

    // ---- tau ----
    CLI::App* tauCmd = app.add_subcommand("tau", "potential-class functional on a ball");
    struct {
        std::string potential = "hardy:beta=0.5";
        int d = 3;
        std::string center;
        double rho = 0.25;
        std::string cls = "fd";
        double p = 0.0; // 0 = class default
        std::string dumpMatrix;
        Common c;
    } tv;
    tauCmd->add_option("--potential", tv.potential, "potential spec, e.g. hardy:beta=0.5");
    tauCmd->add_option("--d", tv.d, "dimension")->check(CLI::Range(3, 16));
    tauCmd->add_option("--center", tv.center, "ball center x1,..,xd (default origin)");
    tauCmd->add_option("--rho", tv.rho, "ball radius")->check(CLI::PositiveNumber);
    tauCmd->add_option("--class", tv.cls, "functional: fd|f3|kato|morrey|lorentz");
    tauCmd->add_option("--p", tv.p, "exponent for morrey/lorentz (defaults 2 and d/2)");
    tauCmd->add_option("--dump-matrix", tv.dumpMatrix, "write the assembled matrix CSV (fd/f3)");
    tv.c.add_options(tauCmd);

    // ---- certify ----
    CLI::App* certifyCmd = app.add_subcommand("certify", "scan a potential class over a box");
    struct {
        std::string cls = "f3";
        std::string potential = "hardy:beta=0.5";
        int d = 3;
        std::string centerBox;
        double boxHalf = 0.5;
        int centersPerAxis = 3;
        double rho0 = 0.25;
        int levels = 3;
        double p = 0.0;
        std::string csv;
        Common c;
    } cf;
    certifyCmd->add_option("--class", cf.cls, "fd|f3|kato|morrey|lorentz")->required();
    certifyCmd->add_option("--potential", cf.potential, "potential spec")->required();
    certifyCmd->add_option("--d", cf.d, "dimension")->check(CLI::Range(3, 16));
    certifyCmd->add_option("--center-box", cf.centerBox, "box center x1,..,xd (default origin)");
    certifyCmd->add_option("--box-half", cf.boxHalf, "half-width of the center box")
        ->check(CLI::PositiveNumber);
    certifyCmd->add_option("--centers-per-axis", cf.centersPerAxis, "ball-center lattice density")
        ->check(CLI::PositiveNumber);
    certifyCmd->add_option("--rho0", cf.rho0, "coarsest radius")->check(CLI::PositiveNumber);
    certifyCmd->add_option("--levels", cf.levels, "number of radius halvings")
        ->check(CLI::Range(2, 20));
    certifyCmd->add_option("--p", cf.p, "exponent for morrey/lorentz (defaults 2 and d/2)");
    certifyCmd->add_option("--csv", cf.csv, "value-matrix CSV path (default: <out>.csv)");
    cf.c.add_options(certifyCmd);

    // ---- lemma ----
    CLI::App* lemmaCmd = app.add_subcommand("lemma", "run one verification check");
    struct {
        std::string which;
        int d = 3;
        int nmax = 0; // 0 = per-check default
        double gammaMax = 0.0;
        double gammaStep = 0.5;
        int kmax = 200;
        double exponent = 0.0;
        int thetaCount = 0;
        std::string potential;
        double rho = 0.5, a = 0.1, delta = 0.25;
        int j = 10;
        std::string nList;
        int N = 1, m = 2, samplePoints = 5;
        double r1 = 0.4, r2 = 0.8;
        double zRe = 2.0;
        Common c;
    } lv;
    lemmaCmd
        ->add_option("--which", lv.which,
                     "1|2|binom|ourlem|e-est|kato-contraction|identity|inclusions|strichartz")
        ->required();
    lemmaCmd->add_option("--d", lv.d, "dimension")->check(CLI::Range(3, 16));
    lemmaCmd->add_option("--nmax", lv.nmax, "max truncation order (checks 1, 2)");
    lemmaCmd->add_option("--gamma-max", lv.gammaMax, "max |Im z| (checks 2, binom)");
    lemmaCmd->add_option("--gamma-step", lv.gammaStep, "gamma grid step (binom)");
    lemmaCmd->add_option("--kmax", lv.kmax, "max coefficient index (binom)");
    lemmaCmd->add_option("--exponent", lv.exponent, "gamma^2 exponent (binom; default pi^2/16)");
    lemmaCmd->add_option("--theta-count", lv.thetaCount, "theta grid size (checks 1, 2)");
    lemmaCmd->add_option("--z-re", lv.zRe, "Re z (check 1)");
    lemmaCmd->add_option("--potential", lv.potential, "potential spec (ourlem/e-est/kato-contraction)");
    lemmaCmd->add_option("--rho", lv.rho, "outer radius")->check(CLI::PositiveNumber);
    lemmaCmd->add_option("--a", lv.a, "inner radius (ourlem/e-est)");
    lemmaCmd->add_option("--delta", lv.delta, "weight-exponent offset");
    lemmaCmd->add_option("--j", lv.j, "inner annulus parameter (e-est)");
    lemmaCmd->add_option("--n-list", lv.nList, "truncation orders, e.g. 1,2,3");
    lemmaCmd->add_option("--N", lv.N, "truncation order (identity)");
    lemmaCmd->add_option("--m", lv.m, "vanishing half-order of the manufactured u (identity)");
    lemmaCmd->add_option("--r1", lv.r1, "cutoff start (identity)");
    lemmaCmd->add_option("--r2", lv.r2, "support radius (identity)");
    lemmaCmd->add_option("--sample-points", lv.samplePoints, "interior probes (identity)");
    lv.c.add_options(lemmaCmd);

    // ---- report-merge ----
    CLI::App* mergeCmd = app.add_subcommand("report-merge", "concatenate JSON reports");
    struct {
        std::vector<std::string> inputs;
        std::string out;
    } mg;
    mergeCmd->add_option("inputs", mg.inputs, "report files")->required()->expected(-1);
    mergeCmd->add_option("--out", mg.out, "write the merged JSON to this path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    auto t0 = std::chrono::steady_clock::now();
    try {
        if (kernelCmd->parsed() && evalCmd->parsed()) {
            KernelSpec spec;
            spec.d = kev.d;
            spec.z = cdouble(kev.zRe, kev.zIm);
            spec.N = kev.N;
            spec.w = kev.w;
            std::vector<double> x = parse_csv_doubles(kev.x);
            std::vector<double> y = parse_csv_doubles(kev.y);
            if (static_cast<int>(x.size()) != kev.d || static_cast<int>(y.size()) != kev.d)
                throw DomainError("--x/--y must have d coordinates");
            cdouble K = kev.w != 0.0 ? weighted_truncated_kernel(spec, x.data(), y.data())
                                     : truncated_kernel(spec, x.data(), y.data());
            std::printf("%.15g %.15g\n", K.real(), K.imag());
            ojson params = common_params(kev.c);
            params["d"] = kev.d;
            params["zRe"] = kev.zRe;
            params["zIm"] = kev.zIm;
            params["N"] = kev.N;
            params["w"] = kev.w;
            params["x"] = x;
            params["y"] = y;
            ojson rep = run_report("kernel eval", std::move(params), pointwise_estimate(K.real()),
                                   grid_json(0, 0.0, 0), elapsed_ms(t0), kev.c.seed);
            rep["result"] = ojson{{"re", K.real()}, {"im", K.imag()}};
            if (!kev.c.out.empty()) write_json_file(kev.c.out, rep);
            return 0;
        }

        if (tauCmd->parsed()) {
            Potential V = parse_potential(tv.potential, tv.d);
            std::vector<double> x0 =
                tv.center.empty() ? std::vector<double>(tv.d, 0.0) : parse_csv_doubles(tv.center);
            if (static_cast<int>(x0.size()) != tv.d)
                throw DomainError("--center must have d coordinates");
            PotClass cls = parse_class(tv.cls);
            GridParams grid = tv.c.grid();
            ojson params = common_params(tv.c);
            params["potential"] = tv.potential;
            params["d"] = tv.d;
            params["center"] = x0;
            params["rho"] = tv.rho;
            params["class"] = tv.cls;

            Region B = Region::ball(x0, tv.rho);
            NormEstimate est;
            double h = 0.0;
            std::size_t points = 0;
            try {
                if (cls == PotClass::Fd || cls == PotClass::F3) {
                    double q = cls == PotClass::Fd ? (tv.d - 1.0) / 4.0 : 0.5;
                    KernelSpec spec;
                    spec.d = tv.d;
                    spec.z = cdouble(cls == PotClass::Fd ? tv.d - 1.0 : 2.0, 0.0);
                    MultiplierSpec mult = MultiplierSpec::abs_power(V, q);
                    DiscreteOperator A = assemble(spec, B, B, mult, mult, grid);
                    h = A.rowPts.h;
                    points = A.rowPts.count;
                    if (!tv.dumpMatrix.empty()) dump_matrix_csv(A, tv.dumpMatrix);
                    est = spectral_norm(A, tv.c.tol, tv.c.maxIter);
                } else if (cls == PotClass::Kato) {
                    est = kato_norm(V, x0, tv.rho, grid);
                } else if (cls == PotClass::Morrey) {
                    double p = tv.p > 0.0 ? tv.p : 2.0;
                    params["p"] = p;
                    est = morrey_norm(V, p, B, {tv.rho, tv.rho / 2.0, tv.rho / 4.0}, grid);
                } else {
                    double p = tv.p > 0.0 ? tv.p : tv.d / 2.0;
                    params["p"] = p;
                    SampledField f = sample_on_region(V, B, grid);
                    est.kind = NormKind::SupImage;
                    est.value = weak_lorentz_norm(f, p);
                    est.iterations = static_cast<long>(f.size());
                    est.gridN = grid.n;
                }
            } catch (const NonConvergenceError& e) {
                return finish_nonconvergence("tau", std::move(params), tv.c, e, t0);
            }
            if (points == 0) {
                GridPoints gp = grid_points(B, grid);
                h = gp.h;
                points = gp.count;
            }
            std::printf("%s = %.15g\n", tv.cls.c_str(), est.value);
            ojson rep = run_report("tau", std::move(params), estimate_json(est),
                                   grid_json(grid.n, h, points), elapsed_ms(t0), tv.c.seed);
            rep["result"] = ojson{{"class", tv.cls}, {"value", est.value}};
            emit(rep, tv.c.out);
            return 0;
        }

        if (certifyCmd->parsed()) {
            Potential V = parse_potential(cf.potential, cf.d);
            std::vector<double> bc = cf.centerBox.empty() ? std::vector<double>(cf.d, 0.0)
                                                          : parse_csv_doubles(cf.centerBox);
            if (static_cast<int>(bc.size()) != cf.d)
                throw DomainError("--center-box must have d coordinates");
            PotClass cls = parse_class(cf.cls);
            double p = cf.p > 0.0 ? cf.p : (cls == PotClass::WeakLorentz ? cf.d / 2.0 : 2.0);
            GridParams grid = cf.c.grid();
            ojson params = common_params(cf.c);
            params["class"] = cf.cls;
            params["potential"] = cf.potential;
            params["d"] = cf.d;
            params["centerBox"] = bc;
            params["boxHalf"] = cf.boxHalf;
            params["centersPerAxis"] = cf.centersPerAxis;
            params["rho0"] = cf.rho0;
            params["levels"] = cf.levels;
            params["p"] = p;

            ClassScanReport scan;
            try {
                scan = class_scan(V, Region::ball(bc, cf.boxHalf), cf.centersPerAxis, cf.rho0,
                                  cf.levels, cls, grid, p);
            } catch (const NonConvergenceError& e) {
                return finish_nonconvergence("certify", std::move(params), cf.c, e, t0);
            }
            long cells = static_cast<long>(scan.centers.size()) * cf.levels;
            std::printf("betaHat = %.15g\n", scan.betaHat);
            ojson rep = run_report("certify", std::move(params),
                                   scalar_estimate("scan", scan.betaHat, cells),
                                   grid_json(grid.n, 0.0, 0), elapsed_ms(t0), cf.c.seed);
            rep["result"] = class_scan_json(scan);
            emit(rep, cf.c.out);
            std::string csvPath = cf.csv;
            if (csvPath.empty() && !cf.c.out.empty()) csvPath = cf.c.out + ".csv";
            if (!csvPath.empty()) write_scan_csv(csvPath, scan);
            return 0;
        }

        if (lemmaCmd->parsed()) {
            GridParams grid = lv.c.grid();
            ojson params = common_params(lv.c);
            params["which"] = lv.which;
            params["d"] = lv.d;

            std::vector<LemmaReport> reps;
            try {
                if (lv.which == "1") {
                    int nmax = lv.nmax > 0 ? lv.nmax : 30;
                    int th = lv.thetaCount > 0 ? lv.thetaCount : 64;
                    params["nmax"] = nmax;
                    params["thetaCount"] = th;
                    params["zRe"] = lv.zRe;
                    reps.push_back(check_lemma1(lv.d, nmax, default_t_grid_low(),
                                                default_theta_grid(th), lv.zRe));
                } else if (lv.which == "2") {
                    int nmax = lv.nmax > 0 ? lv.nmax : 20;
                    int th = lv.thetaCount > 0 ? lv.thetaCount : 32;
                    double gmax = lv.gammaMax > 0.0 ? lv.gammaMax : 4.0;
                    params["nmax"] = nmax;
                    params["thetaCount"] = th;
                    params["gammaMax"] = gmax;
                    reps.push_back(check_lemma2(lv.d, default_gamma_grid(gmax), nmax,
                                                default_t_grid_regimes(), default_theta_grid(th)));
                } else if (lv.which == "binom") {
                    double gmax = lv.gammaMax > 0.0 ? lv.gammaMax : 10.0;
                    double c = lv.exponent > 0.0 ? lv.exponent : binom_bound_exponent();
                    params["gammaMax"] = gmax;
                    params["gammaStep"] = lv.gammaStep;
                    params["kmax"] = lv.kmax;
                    params["exponent"] = c;
                    std::vector<double> gs;
                    for (double g = -gmax; g <= gmax + 1e-12; g += lv.gammaStep) gs.push_back(g);
                    reps.push_back(check_binom_bound(gs, lv.kmax, c));
                } else if (lv.which == "ourlem" || lv.which == "e-est") {
                    std::string potSpec = lv.potential.empty() ? "hardy:beta=0.5" : lv.potential;
                    Potential V = parse_potential(potSpec, lv.d);
                    std::vector<int> Ns =
                        lv.nList.empty() ? std::vector<int>{1, 2, 3, 4, 5, 6} : parse_csv_ints(lv.nList);
                    params["potential"] = potSpec;
                    params["rho"] = lv.rho;
                    params["a"] = lv.a;
                    params["delta"] = lv.delta;
                    params["nList"] = Ns;
                    if (lv.which == "ourlem") {
                        reps.push_back(
                            check_prop_ourlem(V, lv.rho, lv.a, lv.delta, lv.d, Ns, grid));
                    } else {
                        params["j"] = lv.j;
                        auto two = check_E_estimates(V, lv.rho, lv.a, lv.j, lv.delta, lv.d, Ns, grid);
                        reps.insert(reps.end(), two.begin(), two.end());
                    }
                } else if (lv.which == "kato-contraction") {
                    std::string potSpec = lv.potential.empty() ? "const:c=1,radius=1" : lv.potential;
                    Potential V = parse_potential(potSpec, lv.d);
                    std::vector<int> Ns =
                        lv.nList.empty() ? std::vector<int>{1, 2, 3, 4, 5, 6} : parse_csv_ints(lv.nList);
                    params["potential"] = potSpec;
                    params["rho"] = lv.rho;
                    params["nList"] = Ns;
                    reps.push_back(check_kato_contraction(V, lv.rho, Ns, grid));
                } else if (lv.which == "identity") {
                    ManufacturedSolution ms;
                    ms.m = lv.m;
                    ms.r1 = lv.r1;
                    ms.r2 = lv.r2;
                    params["N"] = lv.N;
                    params["m"] = lv.m;
                    params["r1"] = lv.r1;
                    params["r2"] = lv.r2;
                    params["samplePoints"] = lv.samplePoints;
                    reps.push_back(check_identity(ms, lv.N, lv.d, grid, lv.samplePoints));
                } else if (lv.which == "inclusions") {
                    reps.push_back(check_inclusions(lv.d, grid));
                } else if (lv.which == "strichartz") {
                    reps.push_back(check_strichartz(lv.d, grid));
                } else {
                    throw DomainError("unknown --which '" + lv.which + "'");
                }
            } catch (const NonConvergenceError& e) {
                return finish_nonconvergence("lemma", std::move(params), lv.c, e, t0);
            }

            const LemmaReport& lead = reps.front();
            long samples = 0;
            for (const auto& r : reps) samples += r.samples;
            for (const auto& r : reps)
                std::printf("%s: pass=%s constant=%.15g\n", r.lemmaId.c_str(),
                            r.pass ? "true" : "false", r.empiricalConstant);
            ojson rep = run_report("lemma", std::move(params),
                                   scalar_estimate("lemma", lead.empiricalConstant, samples),
                                   grid_json(grid.n, 0.0, 0), elapsed_ms(t0), lv.c.seed);
            if (reps.size() == 1) {
                rep["result"] = lemma_report_json(reps.front());
            } else {
                ojson arr = ojson::array();
                for (const auto& r : reps) arr.push_back(lemma_report_json(r));
                rep["result"] = ojson{{"reports", arr}};
            }
            emit(rep, lv.c.out);
            return 0;
        }

        if (mergeCmd->parsed()) {
            std::vector<ojson> reports;
            reports.reserve(mg.inputs.size());
            for (const std::string& pth : mg.inputs) {
                try {
                    reports.push_back(read_json_file(pth));
                } catch (const nlohmann::json::exception& e) {
                    throw DomainError("cannot parse '" + pth + "': " + e.what());
                }
            }
            ojson merged = merge_reports(mg.inputs, reports);
            if (!mg.out.empty()) {
                write_json_file(mg.out, merged);
                std::printf("merged %zu reports\n", mg.inputs.size());
            } else {
                std::cout << merged.dump(2) << "\n";
            }
            return 0;
        }
    } catch (const CapacityError& e) {
        std::cerr << "capacity: " << e.what() << "\n";
        return 4;
    } catch (const NonConvergenceError& e) {
        std::cerr << "non-convergence: " << e.what() << "\n";
        return 3;
    } catch (const DomainError& e) {
        std::cerr << "invalid parameters: " << e.what() << "\n";
        return 2;
    } catch (const UnsupportedError& e) {
        std::cerr << "invalid parameters: " << e.what() << "\n";
        return 2;
    } catch (const SingularityError& e) {
        std::cerr << "invalid parameters: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    std::cerr << "no subcommand\n";
    return 2;
}
