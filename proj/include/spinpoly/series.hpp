#pragma once

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <vector>

#include "spinpoly/rational.hpp"
#include "spinpoly/spin.hpp"

namespace spinpoly {

// Truncated Taylor polynomial in x = sin^2(theta/2). parity == 1 means a
// cos(theta/2) prefactor applies on evaluation (and a 1/sqrt(1-x) series
// factor has been folded into coeffs).
struct RationalPoly {
    std::vector<Rational> coeffs;  // coefficient of x^0 ... x^degree
    int parity = 0;

    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
};

inline std::vector<Rational> mul_trunc(const std::vector<Rational>& a,
                                       const std::vector<Rational>& b, int n_terms) {
    std::vector<Rational> out(static_cast<size_t>(n_terms), Rational(0));
    for (size_t i = 0; i < a.size() && i < static_cast<size_t>(n_terms); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size() && i + j < static_cast<size_t>(n_terms); ++j)
            out[i + j] += a[i] * b[j];
    }
    return out;
}

// Thread-safe cache of the two base series and powers of the arcsin series.
// Extension is monotone: a longer request recomputes and replaces, and the
// recurrence is deterministic, so previously observed prefixes never change.
class SeriesCache {
public:
    static SeriesCache& instance() {
        static SeriesCache cache;
        return cache;
    }

    // 1/sqrt(1-x): coefficient m is C(2m,m)/4^m.
    std::vector<Rational> inv_sqrt(int n_terms) {
        std::lock_guard<std::mutex> lock(mutex_);
        for (int m = static_cast<int>(inv_sqrt_.size()); m < n_terms; ++m)
            inv_sqrt_.emplace_back(binomial(2 * m, m), pow_int(4, m));
        return {inv_sqrt_.begin(), inv_sqrt_.begin() + n_terms};
    }

    // arcsin(sqrt x)/sqrt x: coefficient m is C(2m,m)/(4^m (2m+1)).
    std::vector<Rational> arcsin_base(int n_terms) {
        std::lock_guard<std::mutex> lock(mutex_);
        return arcsin_base_locked(n_terms);
    }

    // (arcsin(sqrt x)/sqrt x)^k by iterated truncated multiplication.
    std::vector<Rational> arcsin_power(int k, int n_terms) {
        if (k == 0) {
            std::vector<Rational> one(static_cast<size_t>(n_terms), Rational(0));
            one[0] = 1;
            return one;
        }
        std::lock_guard<std::mutex> lock(mutex_);
        auto& entry = powers_[k];
        if (static_cast<int>(entry.size()) < n_terms) {
            auto base = arcsin_base_locked(n_terms);
            auto acc = base;
            for (int i = 1; i < k; ++i) acc = mul_trunc(acc, base, n_terms);
            entry = std::move(acc);
        }
        return {entry.begin(), entry.begin() + n_terms};
    }

private:
    std::vector<Rational> arcsin_base_locked(int n_terms) {
        for (int m = static_cast<int>(arcsin_base_.size()); m < n_terms; ++m)
            arcsin_base_.emplace_back(binomial(2 * m, m), pow_int(4, m) * (2 * m + 1));
        return {arcsin_base_.begin(), arcsin_base_.begin() + n_terms};
    }

    std::mutex mutex_;
    std::vector<Rational> inv_sqrt_;
    std::vector<Rational> arcsin_base_;
    std::map<int, std::vector<Rational>> powers_;
};

inline std::vector<Rational> series_inv_sqrt(int n_terms) {
    if (n_terms < 1) throw std::domain_error("series_inv_sqrt: n_terms must be >= 1");
    return SeriesCache::instance().inv_sqrt(n_terms);
}

inline std::vector<Rational> series_arcsin_power(int k, int n_terms) {
    if (k < 0) throw std::domain_error("series_arcsin_power: k must be >= 0");
    if (n_terms < 1) throw std::domain_error("series_arcsin_power: n_terms must be >= 1");
    return SeriesCache::instance().arcsin_power(k, n_terms);
}

// c_k polynomial for the given spin: truncation to degree (2j-k)/2 rounded
// down, with the 1/sqrt(1-x) factor folded in when 2j-k is odd.
inline RationalPoly coefficient_polynomial(Spin spin, int k) {
    if (k < 0 || k > spin.twice_j)
        throw std::domain_error("coefficient_polynomial: k out of [0, 2j]");
    const int n_terms = (spin.twice_j - k) / 2 + 1;
    const int parity = (spin.twice_j - k) & 1;
    auto ser = series_arcsin_power(k, n_terms);
    if (parity) ser = mul_trunc(ser, series_inv_sqrt(n_terms), n_terms);
    while (ser.size() > 1 && ser.back() == 0) ser.pop_back();
    return {std::move(ser), parity};
}

inline double eval_coefficient(const RationalPoly& poly, double theta) {
    const double s = std::sin(theta / 2);
    const double x = s * s;
    double acc = 0.0;
    for (auto it = poly.coeffs.rbegin(); it != poly.coeffs.rend(); ++it)
        acc = acc * x + to_double(*it);
    if (poly.parity) acc *= std::cos(theta / 2);
    return acc;
}

// Descending-order coefficient of the expansion in powers of (2 n.J): the
// return value is C_{2j-m}[j] as a function of theta.
inline Complex top_down_coefficient(Spin spin, int m, double theta) {
    if (m < 0 || m > spin.twice_j)
        throw std::domain_error("top_down_coefficient: m out of [0, 2j]");
    const int power = spin.twice_j - m;
    const int eps = m & 1;
    const int n_terms = m / 2 + 1;
    auto ser = series_arcsin_power(power, n_terms);
    if (eps) ser = mul_trunc(ser, series_inv_sqrt(n_terms), n_terms);

    const double s = std::sin(theta / 2);
    const double x = s * s;
    double val = 0.0;
    for (auto it = ser.rbegin(); it != ser.rend(); ++it) val = val * x + to_double(*it);
    if (eps) val *= std::cos(theta / 2);

    Complex pref(1.0, 0.0);
    const Complex is(0.0, s);
    for (int l = 1; l <= power; ++l) pref *= is / static_cast<double>(l);
    return val * pref;
}

// Closed form of C_0 for half-integer spin: cos(theta/2) times the truncated
// 1/sqrt(1-x) series of order j-1/2.
inline double c0_half_integer(Spin spin, double theta) {
    if (!spin.half_integer())
        throw std::domain_error("c0_half_integer: spin must be half-integer");
    const int n_terms = (spin.twice_j - 1) / 2 + 1;
    auto ser = series_inv_sqrt(n_terms);
    const double s = std::sin(theta / 2);
    const double x = s * s;
    double acc = 0.0;
    for (auto it = ser.rbegin(); it != ser.rend(); ++it) acc = acc * x + to_double(*it);
    return acc * std::cos(theta / 2);
}

// Residual of i*C_{2(j-n)-1} = 2 d/dtheta C_{2(j-n)}, maximized over n, with
// the derivative taken by central differences.
inline double derivative_pairing_residual(Spin spin, double theta, double h) {
    if (h <= 0) throw std::domain_error("derivative_pairing_residual: h must be > 0");
    double worst = 0.0;
    for (int n = 0; 2 * n + 1 <= spin.twice_j; ++n) {
        const Complex odd = top_down_coefficient(spin, 2 * n + 1, theta);
        const Complex dplus = top_down_coefficient(spin, 2 * n, theta + h);
        const Complex dminus = top_down_coefficient(spin, 2 * n, theta - h);
        const Complex deriv = (dplus - dminus) / (2 * h);
        worst = std::max(worst, std::abs(Complex(0, 1) * odd - 2.0 * deriv));
    }
    return worst;
}

// Residual of dC_0/dalpha = (-1)^floor(j) [(2j)!!]^2 C_{2j} for half-integer
// spin, with alpha = i theta / 2 so d/dalpha = -2i d/dtheta.
inline double c0_closure_residual(Spin spin, double theta, double h) {
    if (!spin.half_integer())
        throw std::domain_error("c0_closure_residual: spin must be half-integer");
    if (h <= 0) throw std::domain_error("c0_closure_residual: h must be > 0");
    const double dtheta =
        (c0_half_integer(spin, theta + h) - c0_half_integer(spin, theta - h)) / (2 * h);
    const Complex lhs = Complex(0, -2) * dtheta;

    // [(2j)!!]^2 C_{2j} evaluated as ([(2j)!!]^2/(2j)!) * (i sin(theta/2))^{2j}
    // to keep every factor O(1)-scaled.
    const BigInt df = double_factorial(spin.twice_j);
    const Rational mag(df * df, factorial(spin.twice_j));
    const double sign = ((spin.twice_j - 1) / 2) % 2 ? -1.0 : 1.0;
    const Complex is(0.0, std::sin(theta / 2));
    Complex is_pow(1.0, 0.0);
    for (int l = 0; l < spin.twice_j; ++l) is_pow *= is;
    return std::abs(lhs - sign * to_double(mag) * is_pow);
}

}  // namespace spinpoly
