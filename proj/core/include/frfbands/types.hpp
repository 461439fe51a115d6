#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "frfbands/frequency_grid.hpp"

namespace frfbands {

using Complex = std::complex<double>;

/// One frequency response function: complex gain values on a shared grid.
class Frf {
public:
    Frf(std::shared_ptr<const FrequencyGrid> grid, std::vector<Complex> values);

    const FrequencyGrid& grid() const { return *grid_; }
    std::shared_ptr<const FrequencyGrid> grid_ptr() const { return grid_; }
    const std::vector<Complex>& values() const { return values_; }
    std::size_t size() const { return values_.size(); }

private:
    std::shared_ptr<const FrequencyGrid> grid_;
    std::vector<Complex> values_;
};

/// A sample of FRFs observed on one common grid. Band estimation needs
/// n ≥ 3; the container itself only requires a nonempty, grid-consistent
/// collection.
class FrfSet {
public:
    explicit FrfSet(std::vector<Frf> members);

    std::size_t size() const { return members_.size(); }
    const Frf& member(std::size_t i) const { return members_[i]; }
    const std::vector<Frf>& members() const { return members_; }
    const FrequencyGrid& grid() const { return members_.front().grid(); }
    std::shared_ptr<const FrequencyGrid> grid_ptr() const { return members_.front().grid_ptr(); }

private:
    std::vector<Frf> members_;
};

/// Structured diagnostics for a would-be FrfSet assembled from raw input.
/// Construction of Frf/FrfSet throws on bad data; this reports instead, so
/// file readers can surface every problem at once.
struct FrfSetDiagnostics {
    bool ok = true;
    std::vector<std::string> violations;
};

/// Checks raw member data against a grid for the documented violations:
/// value-count/grid mismatch, non-finite components, fewer than two members.
FrfSetDiagnostics validate_frf_set(const FrequencyGrid& grid,
                                   const std::vector<std::vector<Complex>>& members);

/// Real periodic time series equivalent to one FRF.
///
/// sample count == period × sample_rate, which is an integer by
/// construction of the transform that produces Pir values.
class Pir {
public:
    Pir(std::vector<double> samples, double sample_rate, double period);

    const std::vector<double>& samples() const { return samples_; }
    double sample_rate() const { return sample_rate_; }
    double period() const { return period_; }
    std::size_t size() const { return samples_.size(); }
    double time_at(std::size_t j) const { return static_cast<double>(j) / sample_rate_; }

private:
    std::vector<double> samples_;
    double sample_rate_;
    double period_;
};

enum class BandKind { confidence, prediction };

const char* to_string(BandKind kind);

/// A simultaneous band around the pointwise mean of a set of PIRs:
/// bounds are avg ± constant·sigma at every sample time.
class BandEstimate {
public:
    BandEstimate(BandKind kind,
                 std::vector<double> avg,
                 std::vector<double> sigma,
                 double constant,
                 double alpha,
                 std::uint32_t replicates,
                 std::vector<double> histogram_values,
                 double sample_rate,
                 std::uint64_t degenerate_replicates = 0);

    BandKind kind() const { return kind_; }
    const std::vector<double>& avg() const { return avg_; }
    const std::vector<double>& sigma() const { return sigma_; }
    const std::vector<double>& lower() const { return lower_; }
    const std::vector<double>& upper() const { return upper_; }
    double constant() const { return constant_; }
    double alpha() const { return alpha_; }
    std::uint32_t replicates() const { return replicates_; }
    /// Sorted bootstrap statistics the constant was selected from.
    const std::vector<double>& histogram_values() const { return histogram_values_; }
    double sample_rate() const { return sample_rate_; }
    /// Number of replicates where the epsilon guard replaced a zero sigma.
    std::uint64_t degenerate_replicates() const { return degenerate_replicates_; }
    std::size_t size() const { return avg_.size(); }

private:
    BandKind kind_;
    std::vector<double> avg_;
    std::vector<double> sigma_;
    std::vector<double> lower_;
    std::vector<double> upper_;
    double constant_;
    double alpha_;
    std::uint32_t replicates_;
    std::vector<double> histogram_values_;
    double sample_rate_;
    std::uint64_t degenerate_replicates_;
};

/// Frequency-band layout: disjoint index sets into a raw-frequency vector,
/// with each band's center equal to the mean of its raw frequencies.
/// Raw frequencies are exact rationals so the centers stay exact and a
/// grid built from them keeps a well-defined gcd.
class BandSpec {
public:
    BandSpec(std::vector<std::vector<std::size_t>> bands,
             const std::vector<Rational>& raw_freqs);

    const std::vector<std::vector<std::size_t>>& bands() const { return bands_; }
    const std::vector<double>& center_freqs() const { return center_freqs_; }
    const std::vector<Rational>& center_rationals() const { return center_rationals_; }
    std::size_t size() const { return bands_.size(); }

private:
    std::vector<std::vector<std::size_t>> bands_;
    std::vector<Rational> center_rationals_;
    std::vector<double> center_freqs_;
};

} // namespace frfbands
