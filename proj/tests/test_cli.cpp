#include <sys/wait.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>

#include <catch2/catch_amalgamated.hpp>
#include <json.hpp>

#include "spinpoly/matrix.hpp"

namespace {

struct RunResult {
    int code = -1;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    static int counter = 0;
    const std::string capture = "cli_capture_" + std::to_string(counter++) + ".txt";
    const std::string cmd =
        std::string("\"") + SPINPOLY_CLI_PATH + "\" " + args + " > " + capture + " 2>/dev/null";
    const int status = std::system(cmd.c_str());
    RunResult r;
    if (status != -1 && WIFEXITED(status)) r.code = WEXITSTATUS(status);
    std::ifstream in(capture);
    std::stringstream ss;
    ss << in.rdbuf();
    r.out = ss.str();
    std::remove(capture.c_str());
    return r;
}

spinpoly::ComplexMatrix parse_json_matrix(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    const int dim = j.at("dim").get<int>();
    spinpoly::ComplexMatrix m(dim, dim);
    const auto& entries = j.at("entries");
    for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c) {
            const auto& e = entries.at(static_cast<size_t>(r * dim + c));
            m(r, c) = std::complex<double>(e.at(0).get<double>(), e.at(1).get<double>());
        }
    return m;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

constexpr double kPi = std::numbers::pi;

}  // namespace

TEST_CASE("rotate command") {
    SECTION("pauli half turn, json output") {
        const auto r = run_cli("rotate --twice-j 1 --theta 3.141592653589793 --axis 0,0,1 --out json");
        REQUIRE(r.code == 0);
        const auto u = parse_json_matrix(r.out);
        CHECK(std::abs(u(0, 0) - std::complex<double>(0, 1)) < 1e-12);
        CHECK(std::abs(u(1, 1) - std::complex<double>(0, -1)) < 1e-12);
    }
    SECTION("zero angle is the identity") {
        const auto r = run_cli("rotate --twice-j 3 --theta 0 --axis 0,1,0 --out json");
        REQUIRE(r.code == 0);
        const auto u = parse_json_matrix(r.out);
        REQUIRE(u.rows() == 4);
        CHECK(spinpoly::max_abs_diff(u, spinpoly::ComplexMatrix::Identity(4, 4)) < 1e-14);
    }
    SECTION("the three methods agree") {
        const std::string base = "rotate --twice-j 4 --theta 1.0 --axis 0,1,0 --out json --method ";
        const auto poly = run_cli(base + "poly");
        const auto oracle = run_cli(base + "oracle");
        const auto vand = run_cli(base + "vandermonde");
        REQUIRE(poly.code == 0);
        REQUIRE(oracle.code == 0);
        REQUIRE(vand.code == 0);
        const auto a = parse_json_matrix(poly.out);
        const auto b = parse_json_matrix(oracle.out);
        const auto c = parse_json_matrix(vand.out);
        CHECK(spinpoly::max_abs_diff(a, b) <= 1e-10);
        CHECK(spinpoly::max_abs_diff(a, c) <= 1e-10);
    }
    SECTION("degrees flag") {
        const auto deg = run_cli("rotate --twice-j 2 --theta 90 --degrees --axis 1,0,0 --out json");
        const auto rad = run_cli("rotate --twice-j 2 --theta 1.5707963267948966 --axis 1,0,0 --out json");
        REQUIRE(deg.code == 0);
        REQUIRE(rad.code == 0);
        CHECK(spinpoly::max_abs_diff(parse_json_matrix(deg.out), parse_json_matrix(rad.out)) <
              1e-12);
    }
    SECTION("error paths") {
        CHECK(run_cli("rotate --twice-j 1 --theta 1 --axis 0,0").code == 2);
        CHECK(run_cli("rotate --twice-j 1 --theta 1 --axis 0,0,0").code == 2);
        CHECK(run_cli("rotate --twice-j 1 --theta 1 --method cayley").code == 2);
        CHECK(run_cli("rotate --twice-j -1 --theta 1").code == 2);
        CHECK(run_cli("rotate --twice-j 61 --theta 1 --method vandermonde").code == 3);
    }
}

TEST_CASE("coeffs command") {
    SECTION("quartet table") {
        const auto r = run_cli("coeffs --twice-j 3");
        REQUIRE(r.code == 0);
        CHECK(r.out ==
              "k=0 eps=1 coeffs= 1 1/2\n"
              "k=1 eps=0 coeffs= 1 1/6\n"
              "k=2 eps=1 coeffs= 1\n"
              "k=3 eps=0 coeffs= 1\n");
    }
    SECTION("scalar spin") {
        const auto r = run_cli("coeffs --twice-j 0");
        REQUIRE(r.code == 0);
        CHECK(r.out == "k=0 eps=0 coeffs= 1\n");
    }
    SECTION("decimal format") {
        const auto r = run_cli("coeffs --twice-j 4 --format decimal");
        REQUIRE(r.code == 0);
        CHECK(r.out.find("0.666666666666666") != std::string::npos);
    }
}

TEST_CASE("sweep command") {
    SECTION("integer spin k = 0 column is one") {
        const auto r = run_cli("sweep --twice-j 138 --k 0 --n-points 9");
        REQUIRE(r.code == 0);
        std::stringstream ss(r.out);
        std::string line;
        std::getline(ss, line);
        CHECK(line == "theta,value");
        int rows = 0;
        while (std::getline(ss, line)) {
            CHECK(line.substr(line.find(',') + 1) == "1.000000000000e+00");
            ++rows;
        }
        CHECK(rows == 9);
    }
    SECTION("deterministic output") {
        const std::string args = "sweep --twice-j 5 --k 1 --theta-min -1 --theta-max 1 --n-points 64";
        const auto a = run_cli(args);
        const auto b = run_cli(args);
        REQUIRE(a.code == 0);
        CHECK(a.out == b.out);
        CHECK(a.out.find("theta,value\n") == 0);
    }
    SECTION("file output") {
        const auto r = run_cli("sweep --twice-j 4 --k 1 --n-points 21 --out sweep_test.csv");
        REQUIRE(r.code == 0);
        const std::string body = read_file("sweep_test.csv");
        std::remove("sweep_test.csv");
        CHECK(body.find("theta,value\n") == 0);
        CHECK(std::count(body.begin(), body.end(), '\n') == 22);
    }
    SECTION("grid validation") {
        CHECK(run_cli("sweep --twice-j 4 --k 1 --n-points 1").code == 2);
    }
}

TEST_CASE("converge command") {
    const auto r = run_cli("converge --twice-j 8 16 --k 1");
    REQUIRE(r.code == 0);
    std::stringstream ss(r.out);
    std::string header, row8, row16;
    std::getline(ss, header);
    std::getline(ss, row8);
    std::getline(ss, row16);
    CHECK(header == "twice_j,k,sup_error");
    CHECK(row8.substr(0, 4) == "8,1,");
    CHECK(row16.substr(0, 5) == "16,1,");
    const double sup8 = std::stod(row8.substr(4));
    const double sup16 = std::stod(row16.substr(5));
    CHECK(sup8 > sup16);
    SECTION("mixed parity is rejected") {
        CHECK(run_cli("converge --twice-j 8 9 --k 1").code == 2);
    }
}

TEST_CASE("triangles command") {
    const auto r = run_cli("triangles --max-twice-j 4");
    REQUIRE(r.code == 0);
    CHECK(r.out == "# fermionic\n1 1\n3 -9 10\n# bosonic\n2 4\n4 -64 20\n");
}

TEST_CASE("verify command") {
    SECTION("small run passes") {
        const auto r = run_cli("verify --max-twice-j 3 --seed 5");
        REQUIRE(r.code == 0);
        size_t passes = 0;
        for (size_t pos = 0; (pos = r.out.find("PASS", pos)) != std::string::npos; ++pos) ++passes;
        CHECK(passes == 8);
        CHECK(r.out.find("FAIL") == std::string::npos);
    }
    SECTION("negative control") {
        const auto r = run_cli("verify --max-twice-j 3 --seed 5 --inject-error");
        CHECK(r.code == 1);
        CHECK(r.out.find("FAIL oracle-equivalence") != std::string::npos);
    }
    SECTION("argument validation") {
        CHECK(run_cli("verify --max-twice-j 0").code == 2);
    }
}

TEST_CASE("bench command") {
    SECTION("missing spin list") { CHECK(run_cli("bench").code == 2); }
    SECTION("rep floor") { CHECK(run_cli("bench --twice-j 1 --reps 2").code == 2); }
    SECTION("small run") {
        const auto r = run_cli("bench --twice-j 1 2 --reps 3");
        REQUIRE(r.code == 0);
        CHECK(r.out.find("twice_j poly_median_ns poly_spread_ns oracle_median_ns oracle_spread_ns\n") == 0);
        int rows = 0;
        std::stringstream ss(r.out);
        for (std::string line; std::getline(ss, line);) ++rows;
        CHECK(rows == 3);
    }
}

TEST_CASE("usage errors") {
    CHECK(run_cli("").code == 2);
    CHECK(run_cli("frobnicate").code == 2);
    CHECK(run_cli("rotate").code == 2);
}
