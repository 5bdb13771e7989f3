#pragma once

#include <stdexcept>

namespace spinpoly {

// Spin label stored as the integer 2j, so half-integer spins stay exact.
struct Spin {
    int twice_j = 0;

    constexpr Spin() = default;
    constexpr explicit Spin(int t) : twice_j(t) {
        if (t < 0) throw std::domain_error("Spin: twice_j must be non-negative");
    }

    constexpr int dim() const { return twice_j + 1; }
    // Bose/Fermi index: 0 for integer j, 1 for half-integer j.
    constexpr int parity() const { return twice_j & 1; }
    constexpr bool half_integer() const { return parity() == 1; }
    constexpr double j() const { return 0.5 * twice_j; }

    friend constexpr bool operator==(Spin a, Spin b) { return a.twice_j == b.twice_j; }
    friend constexpr bool operator<(Spin a, Spin b) { return a.twice_j < b.twice_j; }
};

}  // namespace spinpoly
