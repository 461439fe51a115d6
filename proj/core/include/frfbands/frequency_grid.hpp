#pragma once

#include <string>
#include <vector>

#include "frfbands/rational.hpp"

namespace frfbands {

/// The vector of analysis frequencies (Hz) shared by a set of frequency
/// response functions and their time-domain reconstructions.
///
/// Frequencies are held as exact rationals so that their greatest common
/// divisor, and hence the common signal period, exists exactly. The two
/// supported construction paths both preserve exactness: parsing decimal
/// text (CLI / file input) and exact rational arithmetic (band averaging in
/// the estimation pipeline).
class FrequencyGrid {
public:
    /// Parses decimal literals, e.g. {"0.05", "0.15", ...}.
    static FrequencyGrid from_decimal_text(const std::vector<std::string>& decimals);

    /// Parses a comma-separated list, e.g. "0.05,0.15,0.3".
    static FrequencyGrid from_decimal_text(const std::string& comma_separated);

    /// Builds from exact rationals (already reduced or not).
    static FrequencyGrid from_rationals(std::vector<Rational> freqs);

    /// The 11-frequency grid conventionally used for support-surface-tilt
    /// posturography: 0.05 .. 2.2 Hz.
    static FrequencyGrid standard_posture_grid();

    std::size_t size() const { return values_.size(); }
    const std::vector<double>& freqs() const { return values_; }
    double freq(std::size_t i) const { return values_[i]; }
    const std::vector<Rational>& rationals() const { return rationals_; }
    double max_freq() const { return values_.back(); }

    /// gcd of all frequencies, as an exact rational (Hz).
    Rational gcd() const;

    bool operator==(const FrequencyGrid& o) const { return rationals_ == o.rationals_; }
    bool operator!=(const FrequencyGrid& o) const { return !(*this == o); }

private:
    explicit FrequencyGrid(std::vector<Rational> freqs);

    std::vector<Rational> rationals_;
    std::vector<double> values_;
};

} // namespace frfbands
