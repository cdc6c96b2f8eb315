#pragma once
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace coarse {

using PointId = std::uint32_t;
using Dist = std::int64_t;  // scaled integer distance

constexpr Dist DIST_INF = std::numeric_limits<Dist>::max() / 4;

// Exact half-integer, stored as twice its value (Gromov products, delta estimates).
struct HalfInt {
    std::int64_t twice = 0;
    bool is_integer() const { return twice % 2 == 0; }
    double approx() const { return 0.5 * static_cast<double>(twice); }
    friend bool operator==(const HalfInt&, const HalfInt&) = default;
    friend bool operator<(const HalfInt& a, const HalfInt& b) { return a.twice < b.twice; }
};

struct Budget {
    std::size_t points = 200000;
    std::size_t matrix_cells = 200000000;  // all-pairs distance entries
    std::size_t simplices = 5000000;
};

// Process-wide defaults; COARSE_LAB_BUDGET_POINTS overrides `points` when set.
Budget& global_budget();

struct budget_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace coarse
