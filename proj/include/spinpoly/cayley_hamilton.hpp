#pragma once

#include <cmath>
#include <complex>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "spinpoly/matrix.hpp"
#include "spinpoly/rational.hpp"
#include "spinpoly/spin.hpp"
#include "spinpoly/spin_algebra.hpp"
#include "spinpoly/vandermonde.hpp"

namespace spinpoly {

// Coefficients of the resolution p_j(x) = sum_m A_m x^m with
// (2 n.J)^(2j+1) = p_j(2 n.J). Entries of same parity as 2j vanish.
struct ResolutionPoly {
    Spin spin;
    std::vector<BigInt> a;  // a[m] = A_m, m = 0..2j
};

inline ResolutionPoly resolution_polynomial(Spin spin) {
    if (spin.twice_j < 1)
        throw std::domain_error("resolution_polynomial: needs twice_j >= 1");
    const int tj = spin.twice_j;
    // Product over m of (x^2 - w_m m^2), w_m = 1 when m and 2j share parity.
    std::vector<BigInt> prod(2 * tj + 3, 0);
    prod[0] = 1;
    int deg = 0;
    for (int m = 0; m <= tj; ++m) {
        const BigInt c = ((m + tj) % 2 == 0) ? BigInt(m) * m : BigInt(0);
        for (int i = deg; i >= 0; --i) {
            prod[i + 2] += prod[i];
            prod[i] = -c * prod[i];
        }
        deg += 2;
    }
    for (int i = 0; i <= tj; ++i)
        if (prod[i] != 0) throw std::logic_error("resolution_polynomial: division not exact");
    std::vector<BigInt> a(tj + 1);
    for (int m = 0; m <= tj; ++m) a[m] = -prod[tj + 1 + m];
    return {spin, std::move(a)};
}

// Exact difference between p_{j+1} computed directly and via
// p_{j+1}(x) = (2j+2)^2 x^(2j+1) + (x^2 - (2j+2)^2) p_j(x).
inline std::vector<BigInt> verify_pj_recursion(Spin spin) {
    if (spin.twice_j < 1)
        throw std::domain_error("verify_pj_recursion: needs twice_j >= 1");
    const int tj = spin.twice_j;
    const std::vector<BigInt> pj = resolution_polynomial(spin).a;
    const std::vector<BigInt> direct = resolution_polynomial(Spin(tj + 2)).a;
    const BigInt g2 = BigInt(tj + 2) * (tj + 2);
    std::vector<BigInt> via(tj + 3, 0);
    via[tj + 1] = g2;
    for (int m = 0; m <= tj; ++m) {
        via[m + 2] += pj[m];
        via[m] -= g2 * pj[m];
    }
    std::vector<BigInt> residual(tj + 3);
    for (int m = 0; m <= tj + 2; ++m) residual[m] = direct[m] - via[m];
    return residual;
}

struct Triangles {
    std::vector<std::vector<BigInt>> fermionic;  // rows 2j = 1, 3, 5, ...
    std::vector<std::vector<BigInt>> bosonic;    // rows 2j = 2, 4, 6, ...
};

// Nonzero A_m per spin, ascending m. Half-integer rows are the fermionic
// central factorial numbers, integer rows the scaled (bosonic) ones.
inline Triangles central_factorial_triangles(int max_twice_j) {
    if (max_twice_j < 1)
        throw std::domain_error("central_factorial_triangles: needs max_twice_j >= 1");
    Triangles tri;
    for (int tj = 1; tj <= max_twice_j; ++tj) {
        const ResolutionPoly poly = resolution_polynomial(Spin(tj));
        std::vector<BigInt> row;
        for (int m = 0; m <= tj; ++m)
            if ((m + tj) % 2 != 0) row.push_back(poly.a[m]);
        (tj % 2 ? tri.fermionic : tri.bosonic).push_back(std::move(row));
    }
    return tri;
}

inline void write_triangles(std::ostream& os, const Triangles& tri) {
    const auto dump = [&os](const char* name, const std::vector<std::vector<BigInt>>& rows,
                            int first_twice_j) {
        os << "# " << name << '\n';
        int tj = first_twice_j;
        for (const auto& row : rows) {
            os << tj;
            for (const auto& v : row) os << ' ' << v;
            os << '\n';
            tj += 2;
        }
    };
    dump("fermionic", tri.fermionic, 1);
    dump("bosonic", tri.bosonic, 2);
}

// Relative max-entry residual of (2 n.J)^(2j+1) = sum_m A_m (2 n.J)^m,
// measured against the spectral scale (2j)^(2j+1).
inline double matrix_resolution_residual(Spin spin, const Axis& axis) {
    const ResolutionPoly poly = resolution_polynomial(spin);
    const ComplexMatrix m = 2.0 * axis_dot_j(axis, spin);
    ComplexMatrix power = ComplexMatrix::Identity(spin.dim(), spin.dim());
    ComplexMatrix rhs = to_double(poly.a[0]) * power;
    for (int k = 1; k <= spin.twice_j; ++k) {
        power = power * m;
        rhs += to_double(poly.a[k]) * power;
    }
    const ComplexMatrix lhs = power * m;
    double scale = 1.0;
    for (int k = 0; k <= spin.twice_j; ++k) scale *= spin.twice_j;
    return max_abs_diff(lhs, rhs) / scale;
}

namespace detail {

// Coefficient C_m of the solved expansion, with out-of-range indices and
// negative spins contributing zero and C_0 = 1 at spin 0.
inline Complex coefficient_or_zero(int twice_j, int m, double theta) {
    if (twice_j < 0 || m < 0 || m > twice_j) return {0, 0};
    return solve_coefficients(Spin(twice_j), theta)[m];
}

inline Complex dalpha(Spin spin, int m, double theta, double h) {
    const Complex plus = solve_coefficients(spin, theta + h)[m];
    const Complex minus = solve_coefficients(spin, theta - h)[m];
    return Complex(0, -2) * (plus - minus) / (2 * h);
}

}  // namespace detail

// Max residual over m of dC_m/dalpha = C_{m-1} + C_{2j} A_m, with the
// derivative taken along alpha = i theta / 2 by central differences.
inline double verify_dC_relation(Spin spin, double theta, double h) {
    if (h <= 0) throw std::domain_error("verify_dC_relation: h must be positive");
    if (spin.twice_j == 0) return 0.0;
    const ResolutionPoly poly = resolution_polynomial(spin);
    const std::vector<Complex> c = solve_coefficients(spin, theta);
    double worst = 0.0;
    for (int m = 0; m <= spin.twice_j; ++m) {
        const Complex lhs = detail::dalpha(spin, m, theta, h);
        const Complex rhs = (m > 0 ? c[m - 1] : Complex(0, 0)) +
                            c[spin.twice_j] * to_double(poly.a[m]);
        worst = std::max(worst, std::abs(lhs - rhs));
    }
    return worst;
}

// Same relation on the indices carrying the A term, with C_{2j} replaced by
// its closed form (i sin(theta/2))^{2j} / (2j)!.
inline double verify_hierarchy(Spin spin, double theta, double h) {
    if (h <= 0) throw std::domain_error("verify_hierarchy: h must be positive");
    if (spin.twice_j == 0) return 0.0;
    const ResolutionPoly poly = resolution_polynomial(spin);
    const std::vector<Complex> c = solve_coefficients(spin, theta);
    Complex top(1, 0);
    const Complex is(0, std::sin(theta / 2));
    for (int l = 1; l <= spin.twice_j; ++l) top *= is / double(l);
    double worst = 0.0;
    for (int m = 1 - spin.parity(); m <= spin.twice_j; m += 2) {
        const Complex lhs = detail::dalpha(spin, m, theta, h);
        const Complex rhs = (m > 0 ? c[m - 1] : Complex(0, 0)) + top * to_double(poly.a[m]);
        worst = std::max(worst, std::abs(lhs - rhs));
    }
    return worst;
}

// Residual of the lower-spin expansion of (2 d/dtheta + tan(theta/2)) acting
// on C_{2n+1} (integer j) or C_{2n} (half-integer j). Terms whose index falls
// outside a lower spin's range drop out.
inline double verify_mixed_spin_relations(Spin spin, int n, double theta, double h) {
    if (h <= 0) throw std::domain_error("verify_mixed_spin_relations: h must be positive");
    if (n < 0) throw std::domain_error("verify_mixed_spin_relations: n must be >= 0");
    const int tj = spin.twice_j;
    const int midx = 2 * n + 1 - spin.parity();
    if (tj - 2 * n < 2 + spin.parity())
        throw std::domain_error("verify_mixed_spin_relations: spin too small for this n");

    const Complex deriv = (solve_coefficients(spin, theta + h)[midx] -
                           solve_coefficients(spin, theta - h)[midx]) /
                          h;
    const Complex lhs = deriv + std::tan(theta / 2) * solve_coefficients(spin, theta)[midx];

    const double cosv = std::cos(theta / 2);
    const double sinv = std::sin(theta / 2);
    Complex rhs(0, 0);
    double spow = 1.0;  // sin^{2m}
    const int m_max = (tj - 2 * n - 1) / 2;
    for (int m = 0; m <= m_max; ++m) {
        const int lower = tj - 2 * m - 2;
        rhs += Complex(0, cosv * cosv * spow) * detail::coefficient_or_zero(lower, midx - 1, theta);
        rhs += cosv * spow * sinv * detail::coefficient_or_zero(lower, midx, theta);
        spow *= sinv * sinv;
    }
    return std::abs(lhs - rhs);
}

}  // namespace spinpoly
