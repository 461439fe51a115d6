#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "frfbands/types.hpp"

namespace frfbands {

/// Pseudo-random ternary sequence generator settings.
///
/// The sequence is a maximal-length shift-register sequence over the
/// three-symbol alphabet; symbols map to velocities {0, +s, -s}. One cycle
/// is 3^stages − 1 states of dt seconds each.
struct PrtsConfig {
    std::uint32_t stages = 5;         ///< register length; 242 states by default
    std::uint32_t seed_state = 1;     ///< initial register contents, base-3 digits, nonzero
    double velocity = 1.0;            ///< s, degrees/second
    double dt = 0.25;                 ///< state duration, seconds
    std::optional<double> amplitude_target; ///< peak-to-peak degrees; rescales velocity
    std::vector<std::uint8_t> taps;   ///< feedback taps mod 3; empty = built-in maximal set

    std::size_t states_per_cycle() const; ///< 3^stages − 1
    double cycle_duration() const;        ///< states × dt, seconds
};

/// Uniformly sampled real signal.
struct TimeSeries {
    std::vector<double> samples;
    Rational sample_rate; ///< Hz, exact (so cycle frequencies stay rational)

    TimeSeries(std::vector<double> samples_, Rational sample_rate_);
    double rate() const { return sample_rate.value(); }
};

/// One cycle of the ternary velocity sequence (values 0, +s, -s), one entry
/// per dt state. Useful for inspecting the comb spectrum of the stimulus.
std::vector<double> prts_velocity_cycle(const PrtsConfig& config);

/// The position profile of a PRTS stimulus: the integral of the ternary
/// velocity sequence, sampled at sample_rate over the given number of
/// cycles. Periodic with the sequence cycle; velocity is piecewise constant
/// over dt, so position is piecewise linear and sampling off state
/// boundaries is exact.
TimeSeries generate_prts(const PrtsConfig& config, std::uint32_t cycles,
                         const Rational& sample_rate);

/// Empirical transfer function at the stimulus's excited frequencies.
struct RawTransfer {
    std::vector<std::size_t> bins;        ///< DFT bin per excited frequency
    std::vector<double> freqs;            ///< Hz
    std::vector<Rational> freq_rationals; ///< exact Hz
    std::vector<Complex> values;          ///< Φ(f_k) = G_xy / G_yy
    std::size_t cycle_samples = 0;
};

/// Splits both series into cycles, averages cross- and auto-power spectra
/// across the cycles (after optionally discarding the first, which carries
/// the transient), and divides: Φ = mean(X·conj(Y)) / mean(|Y|²), with Y the
/// stimulus and X the response. Only bins where the stimulus power exceeds
/// 1e-6 × its peak are returned.
RawTransfer estimate_raw_transfer(const TimeSeries& stimulus, const TimeSeries& response,
                                  std::size_t cycle_length, bool discard_first);

/// Complex-domain mean of Φ over each band; the output grid is the exact
/// mean frequency of each band.
Frf band_average(const RawTransfer& raw, const BandSpec& spec);

/// Contiguous greedy partition of the excited frequencies: each band grows
/// while its running mean moves closer to the next target frequency.
/// Frequencies above the last band are left out.
BandSpec default_band_spec(const RawTransfer& raw, const FrequencyGrid& target_grid);

} // namespace frfbands
