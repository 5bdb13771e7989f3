#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "spinpoly/asymptotics.hpp"
#include "spinpoly/cayley_hamilton.hpp"
#include "spinpoly/parallel.hpp"
#include "spinpoly/series.hpp"
#include "spinpoly/spin_algebra.hpp"
#include "spinpoly/vandermonde.hpp"

namespace spinpoly {

struct CheckResult {
    std::string name;
    double residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

struct VerifyOptions {
    int max_twice_j = 8;
    unsigned long long seed = 1;
    bool inject_error = false;  // corrupt one matrix entry as a negative control
};

namespace detail {

inline Axis random_axis(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    while (true) {
        Axis a{unit(rng), unit(rng), unit(rng)};
        const double n2 = a.x * a.x + a.y * a.y + a.z * a.z;
        if (n2 > 0.05 && n2 <= 1.0) return normalize(a);
    }
}

}  // namespace detail

// Runs every cross-check once at a CLI-friendly size and returns one row per
// check family with its worst residual.
inline std::vector<CheckResult> run_verification(const VerifyOptions& opt) {
    constexpr double pi = std::numbers::pi;
    std::vector<CheckResult> results;
    const auto add = [&results](const std::string& name, double residual, double tol) {
        results.push_back({name, residual, tol, residual <= tol});
    };

    // Polynomial path against the dense exponential, random angles and axes.
    {
        const int n_spins = opt.max_twice_j + 1;
        std::vector<double> per_spin(n_spins, 0.0);
        std::vector<std::mt19937_64> rngs;
        rngs.reserve(n_spins);
        for (int tj = 0; tj < n_spins; ++tj) rngs.emplace_back(opt.seed + tj);
        const bool inject = opt.inject_error;
        parallel_for(n_spins, [&](int tj) {
            std::mt19937_64& rng = rngs[tj];
            std::uniform_real_distribution<double> angle(-2 * pi, 2 * pi);
            const Spin spin(tj);
            double worst = 0.0;
            for (int rep = 0; rep < 5; ++rep) {
                const double theta = angle(rng);
                const Axis axis = detail::random_axis(rng);
                ComplexMatrix poly = rotation_from_polynomial(spin, theta, axis);
                if (inject && rep == 0) poly(0, 0) += 1e-6;
                worst = std::max(worst, max_abs_diff(poly, rotation_oracle(spin, theta, axis)));
            }
            per_spin[tj] = worst;
        });
        add("oracle-equivalence", *std::max_element(per_spin.begin(), per_spin.end()), 1e-10);
    }

    // Vandermonde-solved coefficients against the exact-series route.
    {
        double worst = 0.0;
        for (int tj = 0; tj <= opt.max_twice_j; ++tj) {
            const Spin spin(tj);
            for (int g = 0; g < 9; ++g) {
                const double theta = -2 * pi + 4 * pi * g / 8.0;
                const std::vector<Complex> solved = solve_coefficients(spin, theta);
                for (int m = 0; m <= tj; ++m)
                    worst = std::max(worst,
                                     std::abs(solved[m] - top_down_coefficient(spin, tj - m, theta)));
            }
        }
        add("path-equivalence", worst, 1e-10);
    }

    // First-order relations among the coefficients, finite differences.
    {
        const double h = 1e-5;
        const double thetas[] = {0.9, 2.3, -1.7};
        double worst = 0.0;
        for (int tj = 1; tj <= std::min(opt.max_twice_j, 8); ++tj) {
            const Spin spin(tj);
            for (const double theta : thetas) {
                worst = std::max(worst, verify_dC_relation(spin, theta, h));
                worst = std::max(worst, verify_hierarchy(spin, theta, h));
                worst = std::max(worst, derivative_pairing_residual(spin, theta, h));
                if (spin.half_integer())
                    worst = std::max(worst, c0_closure_residual(spin, theta, h));
                for (int n = 0; 2 * n <= tj - 2 - spin.parity(); ++n)
                    worst = std::max(worst, verify_mixed_spin_relations(spin, n, theta, h));
            }
        }
        add("ode-residuals", worst, 1e-6);
    }

    // Resolution polynomial recursion, exact integers.
    {
        int bad = 0;
        for (int tj = 1; tj <= std::max(opt.max_twice_j, 4); ++tj)
            for (const BigInt& r : verify_pj_recursion(Spin(tj)))
                if (r != 0) ++bad;
        add("pj-recursion", bad, 0.0);
    }

    // Triangle rows against an independent exact linear solve.
    {
        int bad = 0;
        const int cap = std::min(std::max(opt.max_twice_j, 4), kVandermondeCeiling);
        for (int tj = 1; tj <= cap; ++tj) {
            const Spin spin(tj);
            const ResolutionPoly poly = resolution_polynomial(spin);
            const VandermondeInverse& inv = vandermonde_inverse(spin);
            for (int m = 0; m <= tj; ++m) {
                Rational am = 0;
                for (int i = 0; i <= tj; ++i)
                    am += inv.exact[m][i] * Rational(pow_int(BigInt(tj - 2 * i), tj + 1));
                if (am != Rational(poly.a[m])) ++bad;
            }
        }
        add("triangle-oracle", bad, 0.0);
    }

    // 2 pi periodicity up to the spin-statistics sign.
    {
        std::mt19937_64 rng(opt.seed ^ 0x9e3779b97f4a7c15ull);
        double worst = 0.0;
        for (int tj = 0; tj <= std::min(opt.max_twice_j, 12); ++tj) {
            const Spin spin(tj);
            const Axis axis = detail::random_axis(rng);
            for (const double theta : {-1.3, 0.4, 2.9}) {
                const ComplexMatrix base = rotation_from_polynomial(spin, theta, axis);
                const ComplexMatrix shifted = rotation_from_polynomial(spin, theta + 2 * pi, axis);
                const double sign = spin.parity() ? -1.0 : 1.0;
                worst = std::max(worst, max_abs_diff(shifted, sign * base));
            }
        }
        add("periodicity", worst, 1e-10);
    }

    // Trace against the closed-form character.
    {
        std::mt19937_64 rng(opt.seed ^ 0x5851f42d4c957f2dull);
        double worst = 0.0;
        for (int tj = 0; tj <= std::min(opt.max_twice_j, 12); ++tj) {
            const Spin spin(tj);
            const Axis axis = detail::random_axis(rng);
            for (const double theta : {0.0, 0.6, 1.9, -2.8, 2 * pi}) {
                const Complex tr = rotation_from_polynomial(spin, theta, axis).trace();
                worst = std::max(worst, std::abs(tr - Complex(character(spin, theta), 0)));
            }
        }
        add("character", worst, 1e-9);
    }

    // Gamma form of the characteristic product.
    {
        double worst = 0.0;
        for (const int tj : {1, 2, 4, 8}) {
            if (tj > std::max(opt.max_twice_j, 2)) continue;
            for (const double lambda : {0.3, 0.5, 1.1})
                worst = std::max(worst, characteristic_identity_check(Spin(tj), lambda));
        }
        add("gamma-identity", worst, 1e-8);
    }

    return results;
}

inline bool all_pass(const std::vector<CheckResult>& results) {
    for (const auto& r : results)
        if (!r.pass) return false;
    return true;
}

}  // namespace spinpoly
