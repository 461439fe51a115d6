#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <vector>

namespace frfbands::detail {

// cos/sin of 2π r / n for r in [0, n); indexing by (k·j) mod n keeps the
// trig arguments exactly on the unit-circle lattice.
struct Twiddles {
    explicit Twiddles(std::size_t n) : cos_(n), sin_(n) {
        for (std::size_t r = 0; r < n; ++r) {
            const double a =
                2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(n);
            cos_[r] = std::cos(a);
            sin_[r] = std::sin(a);
        }
    }
    std::vector<double> cos_;
    std::vector<double> sin_;
};

} // namespace frfbands::detail
