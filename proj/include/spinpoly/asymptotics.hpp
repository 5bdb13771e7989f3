#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "spinpoly/series.hpp"
#include "spinpoly/spin.hpp"

namespace spinpoly {

// Large-j limit target of c_k(theta) sin^k(theta/2): a periodicized (theta/2)^k
// with a sign flip on every other period when parity is 1.
struct LimitSpec {
    int k = 0;
    int parity = 0;  // 0: 2*pi-periodic, 1: 4*pi-periodic with sign flip
};

inline double periodicized_monomial(const LimitSpec& spec, double theta) {
    constexpr double two_pi = 2 * std::numbers::pi;
    const double w = std::floor(theta / two_pi - 0.5);
    const double base = 0.5 * (theta - two_pi - two_pi * w);
    double value = 1.0;
    for (int i = 0; i < spec.k; ++i) value *= base;
    const long long sign_exp = spec.parity * (1 + static_cast<long long>(w));
    return (sign_exp % 2 != 0) ? -value : value;
}

struct ConvergenceRow {
    int twice_j = 0;
    int k = 0;
    double sup_error = 0.0;
};

// Sup over the grid, excluding delta-neighborhoods of the discontinuities at
// theta == pi (mod 2 pi), of |c_k(theta) sin^k(theta/2) - limit|.
inline std::vector<ConvergenceRow> convergence_report(int k, const std::vector<double>& theta_grid,
                                                      const std::vector<Spin>& spins,
                                                      double delta = 0.3) {
    if (spins.empty()) throw std::domain_error("convergence_report: empty spin list");
    const int parity = spins.front().parity();
    for (size_t i = 0; i < spins.size(); ++i) {
        if (spins[i].parity() != parity)
            throw std::domain_error("convergence_report: mixed parities in one series");
        if (i > 0 && !(spins[i - 1] < spins[i]))
            throw std::domain_error("convergence_report: spins must be sorted ascending");
    }
    constexpr double two_pi = 2 * std::numbers::pi;
    std::vector<ConvergenceRow> out;
    out.reserve(spins.size());
    for (const Spin spin : spins) {
        const RationalPoly poly = coefficient_polynomial(spin, k);
        const LimitSpec limit{k, parity};
        double sup = 0.0;
        for (const double theta : theta_grid) {
            double r = std::remainder(theta - std::numbers::pi, two_pi);
            if (std::abs(r) < delta) continue;
            double value = eval_coefficient(poly, theta);
            const double s = std::sin(theta / 2);
            for (int i = 0; i < k; ++i) value *= s;
            sup = std::max(sup, std::abs(value - periodicized_monomial(limit, theta)));
        }
        out.push_back({spin.twice_j, k, sup});
    }
    return out;
}

inline void write_convergence_csv(std::ostream& os, const std::vector<ConvergenceRow>& rows) {
    os << "twice_j,k,sup_error\n";
    char buf[48];
    for (const auto& row : rows) {
        std::snprintf(buf, sizeof buf, "%.12e", row.sup_error);
        os << row.twice_j << ',' << row.k << ',' << buf << '\n';
    }
}

// Confluent hypergeometric M(a,b,z) = sum (a)_n z^n / ((b)_n n!).
inline Complex kummer_m(double a, double b, Complex z) {
    Complex term(1, 0), sum(1, 0);
    for (int n = 0; n < 500; ++n) {
        term *= (a + n) * z / ((b + n) * (n + 1.0));
        sum += term;
        if (std::abs(term) < 1e-17 * std::abs(sum)) break;
    }
    return sum;
}

struct GenFuncResult {
    Complex partial_sum;
    Complex closed_form;
};

// Partial sum over all spins of t^m C_{m-order}[m/2] against the closed form
// of the generating function for order 0, 1, or 2.
inline GenFuncResult generating_function_check(int order, double t, double theta, int m_cap) {
    if (order < 0 || order > 2)
        throw std::domain_error("generating_function_check: order must be 0, 1, or 2");
    if (m_cap < order)
        throw std::domain_error("generating_function_check: M must be >= order");
    Complex partial(0, 0);
    double tpow = 1.0;
    for (int m = 0; m <= m_cap; ++m) {
        if (m >= order) partial += tpow * top_down_coefficient(Spin(m), order, theta);
        tpow *= t;
    }
    const double s = std::sin(theta / 2);
    Complex closed;
    switch (order) {
        case 0:
            closed = std::exp(Complex(0, t * s));
            break;
        case 1:
            closed = std::cos(theta / 2) * t * std::exp(Complex(0, t * s));
            break;
        default:
            if (std::abs(s) < 1e-12) {
                // Both sides tend to t^2 as sin(theta/2) -> 0: only the m=2
                // term of the partial sum survives, and the closed form's
                // correction factor tends to 1.
                closed = Complex(t * t, 0);
            } else {
                const double s2 = s * s;
                closed = t * t * kummer_m((s2 + 6) / s2, 6 / s2, Complex(0, t * s));
            }
            break;
    }
    return {partial, closed};
}

// Relative error of the product over eigenvalue gaps against its Gamma/sine
// closed form, evaluated in log space so large spins do not overflow.
inline double characteristic_identity_check(Spin spin, double lambda) {
    for (int n = 0; n <= spin.twice_j; ++n)
        if (std::abs(lambda - (spin.twice_j - 2 * n)) < 1e-6)
            throw std::domain_error("characteristic_identity_check: lambda too close to an eigenvalue");
    const double j = spin.j();
    if (1 + j + lambda / 2 < 0.5 || 1 + j - lambda / 2 < 0.5)
        throw std::domain_error("characteristic_identity_check: lambda in the Gamma pole region");

    double lhs_log = 0.0;
    int lhs_sign = 1;
    for (int n = 0; n <= spin.twice_j; ++n) {
        const double gap = lambda - (spin.twice_j - 2 * n);
        lhs_log += std::log(std::abs(gap));
        if (gap < 0) lhs_sign = -lhs_sign;
    }
    const double sine = std::sin(std::numbers::pi * (lambda / 2 - j));
    const double rhs_log = (spin.twice_j + 1) * std::log(2.0) - std::log(std::numbers::pi) +
                           std::lgamma(1 + j + lambda / 2) + std::lgamma(1 + j - lambda / 2) +
                           std::log(std::abs(sine));
    const int rhs_sign = sine >= 0 ? 1 : -1;
    return std::abs(lhs_sign * rhs_sign * std::exp(lhs_log - rhs_log) - 1);
}

}  // namespace spinpoly
