#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <complex>
#include <stdexcept>

namespace spinpoly {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
using Complex = std::complex<double>;

inline double to_double(const Rational& q) { return q.template convert_to<double>(); }
inline double to_double(const BigInt& n) { return n.template convert_to<double>(); }
inline long double to_long_double(const Rational& q) { return q.template convert_to<long double>(); }

inline BigInt factorial(int n) {
    if (n < 0) throw std::domain_error("factorial: negative argument");
    BigInt r = 1;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

// n!! = n(n-2)(n-4)...; 0!! = (-1)!! = 1
inline BigInt double_factorial(int n) {
    if (n < -1) throw std::domain_error("double_factorial: argument below -1");
    BigInt r = 1;
    for (int i = n; i > 1; i -= 2) r *= i;
    return r;
}

inline BigInt binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    BigInt r = 1;
    for (int i = 1; i <= k; ++i) {
        r *= n - k + i;
        r /= i;
    }
    return r;
}

inline BigInt pow_int(const BigInt& base, int exp) {
    if (exp < 0) throw std::domain_error("pow_int: negative exponent");
    BigInt r = 1, b = base;
    for (int e = exp; e > 0; e >>= 1) {
        if (e & 1) r *= b;
        b *= b;
    }
    return r;
}

}  // namespace spinpoly
