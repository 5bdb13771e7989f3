// Command line front end: rotation matrices, coefficient tables, sweep and
// convergence CSVs, the verification suite, and a small benchmark.
//
// Exit codes: 0 success, 1 verification failure, 2 usage error, 3 capability
// ceiling (exact Vandermonde path is limited to 2j <= 60).

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "spinpoly/spinpoly.hpp"

namespace {

constexpr double kPi = std::numbers::pi;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

spinpoly::Axis parse_axis(const std::string& text) {
    spinpoly::Axis a;
    char tail = 0;
    if (std::sscanf(text.c_str(), "%lf,%lf,%lf%c", &a.x, &a.y, &a.z, &tail) != 3)
        throw UsageError("axis must be given as x,y,z");
    try {
        return spinpoly::normalize(a);
    } catch (const std::domain_error&) {
        throw UsageError("axis must have nonzero length");
    }
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw UsageError("cannot open output file: " + path);
    return out;
}

struct RotateArgs {
    int twice_j = 0;
    double theta = 0.0;
    std::string axis = "0,0,1";
    std::string method = "poly";
    std::string out = "text";
    bool degrees = false;
};

int cmd_rotate(const RotateArgs& args) {
    const spinpoly::Spin spin(args.twice_j);
    const double theta = args.degrees ? args.theta * kPi / 180.0 : args.theta;
    const spinpoly::Axis axis = parse_axis(args.axis);

    spinpoly::ComplexMatrix u;
    if (args.method == "poly") {
        u = spinpoly::rotation_from_polynomial(spin, theta, axis);
    } else if (args.method == "oracle") {
        u = spinpoly::rotation_oracle(spin, theta, axis);
    } else {
        const std::vector<spinpoly::Complex> c = spinpoly::solve_coefficients(spin, theta);
        const spinpoly::ComplexMatrix m = 2.0 * spinpoly::axis_dot_j(axis, spin);
        spinpoly::ComplexMatrix power =
            spinpoly::ComplexMatrix::Identity(spin.dim(), spin.dim());
        u = c[0] * power;
        for (int k = 1; k <= spin.twice_j; ++k) {
            power = power * m;
            u += c[k] * power;
        }
    }

    if (args.out == "json")
        spinpoly::write_matrix_json(std::cout, u);
    else
        spinpoly::write_matrix_text(std::cout, u);
    return 0;
}

struct CoeffsArgs {
    int twice_j = 0;
    std::string format = "rational";
};

int cmd_coeffs(const CoeffsArgs& args) {
    const spinpoly::Spin spin(args.twice_j);
    for (int k = 0; k <= spin.twice_j; ++k) {
        const spinpoly::RationalPoly poly = spinpoly::coefficient_polynomial(spin, k);
        std::cout << "k=" << k << " eps=" << poly.parity << " coeffs=";
        for (const auto& c : poly.coeffs) {
            if (args.format == "rational") {
                std::cout << ' ' << c;
            } else {
                char buf[32];
                std::snprintf(buf, sizeof buf, "%.17g", spinpoly::to_double(c));
                std::cout << ' ' << buf;
            }
        }
        std::cout << '\n';
    }
    return 0;
}

struct SweepArgs {
    int twice_j = 0;
    int k = 0;
    double theta_min = -2 * kPi;
    double theta_max = 2 * kPi;
    int n_points = 2001;
    std::string out;
    bool degrees = false;
};

void write_sweep(std::ostream& os, const SweepArgs& args) {
    const spinpoly::Spin spin(args.twice_j);
    const spinpoly::RationalPoly poly = spinpoly::coefficient_polynomial(spin, args.k);
    const double lo = args.degrees ? args.theta_min * kPi / 180.0 : args.theta_min;
    const double hi = args.degrees ? args.theta_max * kPi / 180.0 : args.theta_max;

    std::vector<double> values(args.n_points);
    spinpoly::parallel_for(args.n_points, [&](int i) {
        const double theta = lo + (hi - lo) * i / (args.n_points - 1);
        double v = spinpoly::eval_coefficient(poly, theta);
        const double s = std::sin(theta / 2);
        for (int p = 0; p < args.k; ++p) v *= s;
        values[i] = v;
    });

    os << "theta,value\n";
    char buf[64];
    for (int i = 0; i < args.n_points; ++i) {
        const double theta = lo + (hi - lo) * i / (args.n_points - 1);
        std::snprintf(buf, sizeof buf, "%.12e,%.12e", theta, values[i]);
        os << buf << '\n';
    }
}

int cmd_sweep(const SweepArgs& args) {
    if (args.n_points < 2) throw UsageError("sweep needs at least 2 points");
    if (args.out.empty()) {
        write_sweep(std::cout, args);
    } else {
        std::ofstream out = open_output(args.out);
        write_sweep(out, args);
    }
    return 0;
}

struct ConvergeArgs {
    std::vector<int> twice_j;
    int k = 0;
    std::string out;
};

int cmd_converge(const ConvergeArgs& args) {
    std::vector<spinpoly::Spin> spins;
    for (const int tj : args.twice_j) spins.emplace_back(tj);
    std::vector<double> grid;
    const int n = 2001;
    const double lo = -2 * kPi + 0.3, hi = 2 * kPi - 0.3;
    for (int i = 0; i < n; ++i) grid.push_back(lo + (hi - lo) * i / (n - 1));
    const auto rows = spinpoly::convergence_report(args.k, grid, spins);
    if (args.out.empty()) {
        spinpoly::write_convergence_csv(std::cout, rows);
    } else {
        std::ofstream out = open_output(args.out);
        spinpoly::write_convergence_csv(out, rows);
    }
    return 0;
}

struct TrianglesArgs {
    int max_twice_j = 12;
    std::string out;
};

int cmd_triangles(const TrianglesArgs& args) {
    const spinpoly::Triangles tri = spinpoly::central_factorial_triangles(args.max_twice_j);
    if (args.out.empty()) {
        spinpoly::write_triangles(std::cout, tri);
    } else {
        std::ofstream out = open_output(args.out);
        spinpoly::write_triangles(out, tri);
    }
    return 0;
}

struct VerifyArgs {
    int max_twice_j = 8;
    unsigned long long seed = 1;
    bool inject_error = false;
};

int cmd_verify(const VerifyArgs& args) {
    if (args.max_twice_j < 1) throw UsageError("verify needs --max-twice-j >= 1");
    spinpoly::VerifyOptions opt;
    opt.max_twice_j = args.max_twice_j;
    opt.seed = args.seed;
    opt.inject_error = args.inject_error;
    const auto results = spinpoly::run_verification(opt);
    for (const auto& r : results) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "residual=%.3e tolerance=%.1e", r.residual, r.tolerance);
        std::cout << (r.pass ? "PASS " : "FAIL ") << r.name << ' ' << buf << '\n';
    }
    return spinpoly::all_pass(results) ? 0 : 1;
}

struct BenchArgs {
    std::vector<int> twice_j;
    int reps = 5;
};

int cmd_bench(const BenchArgs& args) {
    if (args.twice_j.empty()) throw UsageError("bench needs at least one --twice-j value");
    if (args.reps < 3) throw UsageError("bench needs --reps >= 3");
    const spinpoly::Axis axis = parse_axis("0.36,0.48,0.8");
    constexpr int kBatch = 16;

    const auto run = [&](const spinpoly::Spin spin, bool poly) {
        std::vector<double> samples;
        for (int rep = 0; rep < args.reps; ++rep) {
            const auto start = std::chrono::steady_clock::now();
            double sink = 0.0;
            for (int i = 0; i < kBatch; ++i) {
                const double theta = 0.1 + 0.37 * i;
                const spinpoly::ComplexMatrix u =
                    poly ? spinpoly::rotation_from_polynomial(spin, theta, axis)
                         : spinpoly::rotation_oracle(spin, theta, axis);
                sink += u(0, 0).real();
            }
            const auto stop = std::chrono::steady_clock::now();
            volatile double guard = sink;  // keep the loop live
            (void)guard;
            samples.push_back(
                std::chrono::duration<double, std::nano>(stop - start).count() / kBatch);
        }
        std::sort(samples.begin(), samples.end());
        const double median = samples[samples.size() / 2];
        const double spread = samples.back() - samples.front();
        return std::pair<double, double>(median, spread);
    };

    std::cout << "twice_j poly_median_ns poly_spread_ns oracle_median_ns oracle_spread_ns\n";
    for (const int tj : args.twice_j) {
        const spinpoly::Spin spin(tj);
        spinpoly::rotation_from_polynomial(spin, 0.2, axis);  // warm coefficient cache
        const auto [pm, ps] = run(spin, true);
        const auto [om, os] = run(spin, false);
        char buf[160];
        std::snprintf(buf, sizeof buf, "%d %.0f %.0f %.0f %.0f", tj, pm, ps, om, os);
        std::cout << buf << '\n';
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Polynomial expansions of SU(2) rotation matrices"};
    app.require_subcommand(1);

    RotateArgs rotate;
    CLI::App* rot = app.add_subcommand("rotate", "Print one rotation matrix");
    rot->add_option("--twice-j", rotate.twice_j, "Spin as the integer 2j")->required();
    rot->add_option("--theta", rotate.theta, "Rotation angle")->required();
    rot->add_option("--axis", rotate.axis, "Rotation axis as x,y,z");
    rot->add_option("--method", rotate.method, "poly, oracle, or vandermonde")
        ->check(CLI::IsMember({"poly", "oracle", "vandermonde"}));
    rot->add_option("--out", rotate.out, "Output format: text or json")
        ->check(CLI::IsMember({"text", "json"}));
    rot->add_flag("--degrees", rotate.degrees, "Interpret angles in degrees");

    CoeffsArgs coeffs;
    CLI::App* cof = app.add_subcommand("coeffs", "Print the coefficient polynomials");
    cof->add_option("--twice-j", coeffs.twice_j, "Spin as the integer 2j")->required();
    cof->add_option("--format", coeffs.format, "rational or decimal")
        ->check(CLI::IsMember({"rational", "decimal"}));

    SweepArgs sweep;
    CLI::App* swp = app.add_subcommand("sweep", "CSV of c_k(theta) sin^k(theta/2)");
    swp->add_option("--twice-j", sweep.twice_j, "Spin as the integer 2j")->required();
    swp->add_option("--k", sweep.k, "Coefficient index k")->required();
    swp->add_option("--theta-min", sweep.theta_min, "Grid start (default -2*pi)");
    swp->add_option("--theta-max", sweep.theta_max, "Grid end (default 2*pi)");
    swp->add_option("--n-points", sweep.n_points, "Grid size (default 2001)");
    swp->add_option("--out", sweep.out, "Output CSV path (default stdout)");
    swp->add_flag("--degrees", sweep.degrees, "Interpret angles in degrees");

    ConvergeArgs converge;
    CLI::App* cnv = app.add_subcommand("converge", "CSV of sup errors against the large-spin limit");
    cnv->add_option("--twice-j", converge.twice_j, "Spins, ascending, one parity")
        ->required()
        ->expected(-1);
    cnv->add_option("--k", converge.k, "Coefficient index k")->required();
    cnv->add_option("--out", converge.out, "Output CSV path (default stdout)");

    TrianglesArgs triangles;
    CLI::App* tri = app.add_subcommand("triangles", "Central factorial number triangles");
    tri->add_option("--max-twice-j", triangles.max_twice_j, "Largest 2j row");
    tri->add_option("--out", triangles.out, "Output path (default stdout)");

    VerifyArgs verify;
    CLI::App* ver = app.add_subcommand("verify", "Run the cross-check suite");
    ver->add_option("--max-twice-j", verify.max_twice_j, "Largest 2j to check (default 8)");
    ver->add_option("--seed", verify.seed, "Random seed (default 1)");
    ver->add_flag("--inject-error", verify.inject_error,
                  "Corrupt one matrix entry as a negative control");

    BenchArgs bench;
    CLI::App* ben = app.add_subcommand("bench", "Time the polynomial path against the oracle");
    ben->add_option("--twice-j", bench.twice_j, "Spins to benchmark")->required()->expected(-1);
    ben->add_option("--reps", bench.reps, "Samples per spin (default 5, min 3)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (rot->parsed()) return cmd_rotate(rotate);
        if (cof->parsed()) return cmd_coeffs(coeffs);
        if (swp->parsed()) return cmd_sweep(sweep);
        if (cnv->parsed()) return cmd_converge(converge);
        if (tri->parsed()) return cmd_triangles(triangles);
        if (ver->parsed()) return cmd_verify(verify);
        if (ben->parsed()) return cmd_bench(bench);
    } catch (const spinpoly::CeilingError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}
