#pragma once

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <vector>

#include "spinpoly/rational.hpp"
#include "spinpoly/spin.hpp"

namespace spinpoly {

// Exact inversion cost grows fast with dimension; beyond this the CLI reports
// a capability ceiling instead of grinding.
inline constexpr int kVandermondeCeiling = 60;

struct CeilingError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Row i holds ascending powers of lambda_i = 2j - 2i (the doubled eigenvalues
// of 2 n.J, descending from 2j to -2j).
struct VandermondeSystem {
    Spin spin;
    std::vector<std::vector<BigInt>> rows;
};

inline VandermondeSystem vandermonde_matrix(Spin spin) {
    const int n = spin.dim();
    VandermondeSystem sys{spin, {}};
    sys.rows.reserve(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        const BigInt lambda = spin.twice_j - 2 * i;
        std::vector<BigInt> row(static_cast<size_t>(n));
        row[0] = 1;
        for (int p = 1; p < n; ++p) row[static_cast<size_t>(p)] = row[static_cast<size_t>(p - 1)] * lambda;
        sys.rows.push_back(std::move(row));
    }
    return sys;
}

struct VandermondeInverse {
    std::vector<std::vector<Rational>> exact;
    std::vector<std::vector<double>> as_double;
};

namespace detail {

inline std::unique_ptr<const VandermondeInverse> invert_exact(Spin spin) {
    const auto sys = vandermonde_matrix(spin);
    const int n = spin.dim();
    // Gauss-Jordan on [V | I] in exact rationals.
    std::vector<std::vector<Rational>> aug(static_cast<size_t>(n),
                                           std::vector<Rational>(static_cast<size_t>(2 * n), Rational(0)));
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) aug[r][c] = Rational(sys.rows[r][c]);
        aug[r][static_cast<size_t>(n + r)] = 1;
    }
    for (int col = 0; col < n; ++col) {
        int piv = col;
        while (piv < n && aug[piv][col] == 0) ++piv;
        if (piv == n) throw std::logic_error("vandermonde inverse: singular matrix");
        std::swap(aug[static_cast<size_t>(col)], aug[static_cast<size_t>(piv)]);
        const Rational pv = aug[col][col];
        for (auto& v : aug[col]) v /= pv;
        for (int r = 0; r < n; ++r) {
            if (r == col || aug[r][col] == 0) continue;
            const Rational f = aug[r][col];
            for (int c = col; c < 2 * n; ++c) aug[r][c] -= f * aug[col][c];
        }
    }
    auto inv = std::make_unique<VandermondeInverse>();
    inv->exact.assign(static_cast<size_t>(n), std::vector<Rational>(static_cast<size_t>(n)));
    inv->as_double.assign(static_cast<size_t>(n), std::vector<double>(static_cast<size_t>(n)));
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) {
            inv->exact[r][c] = aug[r][static_cast<size_t>(n + c)];
            inv->as_double[r][c] = to_double(inv->exact[r][c]);
        }
    return inv;
}

}  // namespace detail

inline const VandermondeInverse& vandermonde_inverse(Spin spin) {
    if (spin.twice_j > kVandermondeCeiling)
        throw CeilingError("vandermonde_inverse: twice_j exceeds the exact-inverse ceiling");
    static std::mutex mutex;
    static std::map<int, std::unique_ptr<const VandermondeInverse>> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto& slot = cache[spin.twice_j];
    if (!slot) slot = detail::invert_exact(spin);
    return *slot;
}

// C_m such that exp(i theta n.J) = sum_m C_m (2 n.J)^m, from the exact inverse
// applied to the eigenvalue exponentials exp(i lambda theta / 2).
inline std::vector<Complex> solve_coefficients(Spin spin, double theta) {
    const auto& inv = vandermonde_inverse(spin);
    const int n = spin.dim();
    std::vector<Complex> rhs(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        const double lambda = spin.twice_j - 2 * i;
        rhs[static_cast<size_t>(i)] = {std::cos(lambda * theta / 2), std::sin(lambda * theta / 2)};
    }
    std::vector<Complex> c(static_cast<size_t>(n), Complex(0, 0));
    for (int m = 0; m < n; ++m) {
        Complex acc(0, 0);
        for (int i = 0; i < n; ++i) acc += inv.as_double[m][i] * rhs[static_cast<size_t>(i)];
        c[static_cast<size_t>(m)] = acc;
    }
    return c;
}

struct DetFactorization {
    BigInt det;
    int sign = 0;
    std::map<int, int> prime_multiplicity;
    BigInt unfactored_residue = 1;  // 1 when primes <= max(2, 2j) exhaust |det|
};

inline std::vector<int> primes_upto(int n) {
    n = std::max(n, 2);
    std::vector<bool> sieve(static_cast<size_t>(n) + 1, true);
    sieve[0] = sieve[1] = false;
    for (int p = 2; p * p <= n; ++p)
        if (sieve[static_cast<size_t>(p)])
            for (int q = p * p; q <= n; q += p) sieve[static_cast<size_t>(q)] = false;
    std::vector<int> out;
    for (int p = 2; p <= n; ++p)
        if (sieve[static_cast<size_t>(p)]) out.push_back(p);
    return out;
}

// Fraction-free (Bareiss) determinant, exact integers throughout.
inline BigInt det_bareiss(std::vector<std::vector<BigInt>> a) {
    const int n = static_cast<int>(a.size());
    if (n == 0) return 1;
    int sign = 1;
    BigInt prev = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (a[k][k] == 0) {
            int sw = k + 1;
            while (sw < n && a[sw][k] == 0) ++sw;
            if (sw == n) return 0;
            std::swap(a[static_cast<size_t>(k)], a[static_cast<size_t>(sw)]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j)
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    return sign * a[static_cast<size_t>(n - 1)][static_cast<size_t>(n - 1)];
}

inline DetFactorization vandermonde_det(Spin spin) {
    DetFactorization out;
    out.det = det_bareiss(vandermonde_matrix(spin).rows);
    out.sign = out.det > 0 ? 1 : (out.det < 0 ? -1 : 0);
    BigInt n = abs(out.det);
    for (int p : primes_upto(std::max(2, spin.twice_j))) {
        int mult = 0;
        while (n % p == 0) {
            n /= p;
            ++mult;
        }
        if (mult > 0) out.prime_multiplicity[p] = mult;
    }
    out.unfactored_residue = n;
    return out;
}

// Floor-sum formula for the multiplicity of 2 in det V.
inline long long m2_formula(Spin spin) {
    long long total = 0;
    for (long long k = 1; k <= spin.twice_j; ++k)
        for (long long pm = 1; pm <= k; pm *= 2) total += k / pm;
    return total;
}

// Floor-sum formula for the multiplicity of an odd prime p in det V.
inline long long mp_formula(int p, Spin spin) {
    if (p < 3) throw std::domain_error("mp_formula: use m2_formula for p = 2");
    long long total = 0;
    for (long long k = 1; k <= spin.twice_j; ++k)
        for (long long pm = 1; pm <= k; pm *= p) total += k / pm;
    const long long tj = spin.twice_j;
    return total - tj * (tj + 1) / 2;
}

}  // namespace spinpoly
