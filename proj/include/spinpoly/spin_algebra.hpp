#pragma once

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <stdexcept>

#include "spinpoly/matrix.hpp"
#include "spinpoly/series.hpp"
#include "spinpoly/spin.hpp"

namespace spinpoly {

struct Axis {
    double x = 0, y = 0, z = 1;
};

inline Axis normalize(const Axis& a) {
    const double n = std::sqrt(a.x * a.x + a.y * a.y + a.z * a.z);
    if (!(n > 1e-12)) throw std::domain_error("Axis: zero or non-finite direction");
    return {a.x / n, a.y / n, a.z / n};
}

struct SpinTriple {
    ComplexMatrix jx, jy, jz;
};

// Standard spin matrices in the |j,m> basis ordered m = j, j-1, ..., -j.
inline SpinTriple spin_matrices(Spin spin) {
    const int dim = spin.dim();
    const double j = spin.j();
    ComplexMatrix jz = ComplexMatrix::Zero(dim, dim);
    for (int r = 0; r < dim; ++r) jz(r, r) = j - r;
    ComplexMatrix jp = ComplexMatrix::Zero(dim, dim);
    for (int r = 1; r < dim; ++r) {
        const double m = j - r;
        jp(r - 1, r) = std::sqrt(j * (j + 1) - m * (m + 1));
    }
    const ComplexMatrix jm = jp.adjoint();
    SpinTriple t;
    t.jx = (jp + jm) / 2.0;
    t.jy = (jp - jm) / Complex(0, 2);
    t.jz = std::move(jz);
    return t;
}

inline ComplexMatrix axis_dot_j(const Axis& axis, Spin spin) {
    const Axis n = normalize(axis);
    const SpinTriple t = spin_matrices(spin);
    return n.x * t.jx + n.y * t.jy + n.z * t.jz;
}

// Per-spin table of c_k coefficients compiled to long double, so the matrix
// polynomial can be accumulated in extended precision. The alternating-sign
// sum over k cancels terms up to ~10^6 in magnitude at 2j=16, which costs
// double accumulation its last six digits; 80-bit accumulation keeps the
// result well inside 1e-10 of the true exponential.
class CoefficientTable {
public:
    static const CoefficientTable& for_spin(Spin spin) {
        static std::mutex mutex;
        static std::map<int, std::unique_ptr<const CoefficientTable>> cache;
        std::lock_guard<std::mutex> lock(mutex);
        auto& slot = cache[spin.twice_j];
        if (!slot) slot = std::unique_ptr<const CoefficientTable>(new CoefficientTable(spin));
        return *slot;
    }

    // c_k(theta) with the cos(theta/2) parity prefactor included.
    long double eval(int k, long double theta) const {
        const auto& row = rows_[static_cast<size_t>(k)];
        const long double s = std::sin(theta / 2);
        const long double x = s * s;
        long double acc = 0;
        for (auto it = row.coeffs.rbegin(); it != row.coeffs.rend(); ++it) acc = acc * x + *it;
        if (row.parity) acc *= std::cos(theta / 2);
        return acc;
    }

private:
    explicit CoefficientTable(Spin spin) {
        rows_.reserve(static_cast<size_t>(spin.twice_j) + 1);
        for (int k = 0; k <= spin.twice_j; ++k) {
            const RationalPoly poly = coefficient_polynomial(spin, k);
            Row row;
            row.parity = poly.parity;
            row.coeffs.reserve(poly.coeffs.size());
            for (const auto& q : poly.coeffs) row.coeffs.push_back(to_long_double(q));
            rows_.push_back(std::move(row));
        }
    }

    struct Row {
        std::vector<long double> coeffs;
        int parity = 0;
    };
    std::vector<Row> rows_;
};

// Evaluates sum_k c_k(theta) (2 i sin(theta/2))^k / k! * m^k with the c_k of
// coeff_spin. m need not be the spin matrix of coeff_spin; the spin-reduction
// check evaluates a lower spin's polynomial on a higher spin's matrix.
inline ComplexMatrix polynomial_on_matrix(Spin coeff_spin, double theta, const ComplexMatrix& m) {
    using CLD = std::complex<long double>;
    using MatrixLD = Eigen::Matrix<CLD, Eigen::Dynamic, Eigen::Dynamic>;
    const auto& table = CoefficientTable::for_spin(coeff_spin);
    const long double th = theta;
    const long double s = std::sin(th / 2);
    const MatrixLD mld = m.cast<CLD>();
    const Eigen::Index dim = m.rows();

    MatrixLD term = MatrixLD::Identity(dim, dim);
    MatrixLD acc = table.eval(0, th) * term;
    CLD factor(1, 0);
    const CLD step(0, 2 * s);
    for (int k = 1; k <= coeff_spin.twice_j; ++k) {
        factor *= step / static_cast<long double>(k);
        term = term * mld;
        acc += (table.eval(k, th) * factor) * term;
    }
    ComplexMatrix out(dim, dim);
    for (Eigen::Index r = 0; r < dim; ++r)
        for (Eigen::Index c = 0; c < dim; ++c)
            out(r, c) = {static_cast<double>(acc(r, c).real()), static_cast<double>(acc(r, c).imag())};
    return out;
}

inline ComplexMatrix rotation_from_polynomial(Spin spin, double theta, const Axis& axis) {
    return polynomial_on_matrix(spin, theta, axis_dot_j(axis, spin));
}

// Scaling-and-squaring Taylor exponential. Deliberately independent of the
// coefficient machinery above so the two rotation paths share no code.
inline ComplexMatrix matrix_exponential(const ComplexMatrix& a) {
    const Eigen::Index dim = a.rows();
    const double norm = a.cwiseAbs().colwise().sum().maxCoeff();
    int squarings = 0;
    if (norm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
    const ComplexMatrix b = a * std::ldexp(1.0, -squarings);

    ComplexMatrix x = ComplexMatrix::Identity(dim, dim);
    ComplexMatrix t = ComplexMatrix::Identity(dim, dim);
    for (int k = 1; k <= 64; ++k) {
        t = (t * b) / static_cast<double>(k);
        x += t;
        if (t.cwiseAbs().maxCoeff() < 1e-20) break;
    }
    for (int i = 0; i < squarings; ++i) x = x * x;
    return x;
}

inline ComplexMatrix rotation_oracle(Spin spin, double theta, const Axis& axis) {
    return matrix_exponential(Complex(0, theta) * axis_dot_j(axis, spin));
}

// Trace of the rotation as a function of theta alone. Near theta = 2*pi*l the
// ratio form is singular; the limit is (2j+1) times the periodicity sign.
inline double character(Spin spin, double theta) {
    const double s = std::sin(theta / 2);
    if (std::abs(s) < 1e-8) {
        const long l = std::lround(theta / (2 * std::numbers::pi));
        double val = spin.dim();
        if (l % 2 != 0 && spin.parity()) val = -val;
        return val;
    }
    return std::sin((spin.twice_j + 1) * theta / 2) / s;
}

// Residual of rebuilding the spin-j rotation from the spin-(j-1) polynomial
// plus a two-term correction along the characteristic polynomial of the
// lower spin's matrix.
inline double verify_spin_reduction(Spin spin, double theta, const Axis& axis) {
    if (spin.twice_j < 2)
        throw std::domain_error("verify_spin_reduction: needs twice_j >= 2");
    const ComplexMatrix m = axis_dot_j(axis, spin);
    const Eigen::Index dim = spin.dim();
    const Spin lower(spin.twice_j - 2);

    const ComplexMatrix head = polynomial_on_matrix(lower, theta, m);

    // chi_{j-1}(m) = prod over eigenvalues mu of the spin-(j-1) matrix.
    ComplexMatrix chi = ComplexMatrix::Identity(dim, dim);
    for (int l = 0; l <= lower.twice_j; ++l) {
        const double mu = lower.j() - l;
        chi = chi * (m - mu * ComplexMatrix::Identity(dim, dim));
    }

    const double s = std::sin(theta / 2);
    Complex a(1, 0);
    for (int l = 1; l <= spin.twice_j; ++l) a *= Complex(0, 2 * s) / static_cast<double>(l);
    Complex b(std::cos(theta / 2), 0);
    for (int l = 1; l <= spin.twice_j - 1; ++l) b *= Complex(0, 2 * s) / static_cast<double>(l);

    const ComplexMatrix rebuilt = head + (a * m + b * ComplexMatrix::Identity(dim, dim)) * chi;
    return max_abs_diff(rebuilt, rotation_from_polynomial(spin, theta, axis));
}

}  // namespace spinpoly
