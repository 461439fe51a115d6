#pragma once

#include <cstdint>
#include <vector>

#include "frfbands/types.hpp"

namespace frfbands {

/// Describes a deterministic resampling run: replicate r of a plan always
/// draws the same index vector, whatever order or thread executes it.
///
/// B is not capped: for tiny n the number of distinct resamples is small
/// (C(2n-1, n) multisets), so very large B adds resolution to the quantile
/// selection but no new information.
struct ResamplePlan {
    std::uint64_t seed = 0;
    std::uint32_t replicates = 10'000; ///< B
    std::uint32_t sample_count = 0;    ///< n

    ResamplePlan(std::uint64_t seed_, std::uint32_t replicates_, std::uint32_t sample_count_);

    /// The n indices drawn (with replacement) for one replicate.
    std::vector<std::uint32_t> indices(std::uint64_t replicate) const;
};

/// x̂(t_j): arithmetic mean across PIRs at each sample time.
std::vector<double> pointwise_mean(const std::vector<Pir>& pirs);

/// σ̂_x(t_j): sample standard deviation (N−1 denominator) per sample time.
std::vector<double> pointwise_sigma(const std::vector<Pir>& pirs,
                                    const std::vector<double>& mean);

/// max_j |x(t_j) − mean(t_j)| / max(sigma(t_j), epsilon).
/// With epsilon == 0 and sigma(t_j) == 0, a zero deviation contributes 0 and
/// a nonzero one contributes +inf.
double max_standardized_deviation(const Pir& x,
                                  const std::vector<double>& mean,
                                  const std::vector<double>& sigma,
                                  double epsilon);

/// Output of a bootstrap constant estimation.
struct ConstantEstimate {
    double constant = 0.0;
    /// All collected statistics, sorted ascending (the cumulative histogram
    /// the constant was read off).
    std::vector<double> histogram_values;
    /// Replicates where the epsilon guard replaced a degenerate sigma.
    std::uint64_t degenerate_replicates = 0;
    /// The guard actually used: 1e-12 × max |sample| over the original set.
    double epsilon = 0.0;
};

/// Prediction constant C_p at confidence alpha% (alpha in (50, 100)).
///
/// For every replicate the resampled mean and sigma are recomputed
/// (pivoting), and each ORIGINAL member's maximum standardized deviation
/// from them is collected; C_p is the smallest value whose cumulative
/// fraction among the n·B statistics reaches alpha/100.
ConstantEstimate prediction_constant(const FrfSet& set, double alpha,
                                     const ResamplePlan& plan, double sample_rate,
                                     unsigned threads = 0);

/// Confidence constant C_c: same scheme, but the collected statistic is the
/// deviation of the original-sample mean from each replicate's mean, one
/// value per replicate.
ConstantEstimate confidence_constant(const FrfSet& set, double alpha,
                                     const ResamplePlan& plan, double sample_rate,
                                     unsigned threads = 0);

/// Assembles a BandEstimate with bounds avg ± constant·sigma.
BandEstimate make_band(BandKind kind,
                       std::vector<double> avg,
                       std::vector<double> sigma,
                       double constant,
                       double alpha,
                       std::uint32_t replicates,
                       double sample_rate,
                       std::vector<double> histogram_values = {},
                       std::uint64_t degenerate_replicates = 0);

/// Closed-boundary membership: lower ≤ x ≤ upper at every sample time.
bool band_contains(const BandEstimate& band, const Pir& x);

/// Full prediction band of a set: pointwise mean/sigma plus C_p.
BandEstimate prediction_band(const FrfSet& set, double alpha, const ResamplePlan& plan,
                             double sample_rate, unsigned threads = 0);

/// Full confidence band of a set: pointwise mean/sigma plus C_c.
BandEstimate confidence_band(const FrfSet& set, double alpha, const ResamplePlan& plan,
                             double sample_rate, unsigned threads = 0);

struct PairedTestResult {
    bool reject = false;      ///< true iff the zero function exits the band
    BandEstimate band;        ///< confidence band of the paired differences
    std::vector<Frf> diffs;   ///< per-pair FRF differences A_i − B_i
};

/// Paired H0 test: builds the confidence band on the PIRs of the pairwise
/// FRF differences and rejects when zero is not entirely inside it.
PairedTestResult paired_h0_test(const FrfSet& set_a, const FrfSet& set_b, double alpha,
                                const ResamplePlan& plan, double sample_rate,
                                unsigned threads = 0);

namespace detail {

/// PIRs of a set packed row-major; shared by bands, tests, and
/// cross-validation.
struct PirMatrix {
    std::size_t n = 0;
    std::size_t len = 0;
    std::vector<double> data; ///< n × len
    double sample_rate = 0.0;
    double period = 0.0;

    const double* row(std::size_t i) const { return data.data() + i * len; }
};

PirMatrix pack_pirs(const FrfSet& set, double sample_rate);

/// Engine used by the public entry points: bootstrap on packed rows.
/// With need_histogram == false only the constant is computed (selection via
/// nth_element; same value, no sorted copy retained).
ConstantEstimate bootstrap_constant(const PirMatrix& pirs, BandKind kind, double alpha,
                                    const ResamplePlan& plan, unsigned threads,
                                    bool need_histogram = true);

/// Quantile selection on sorted statistics: the ⌈(alpha/100)·K⌉-th order
/// statistic, the smallest value whose cumulative fraction ≥ alpha/100.
double select_constant(const std::vector<double>& sorted_values, double alpha);

} // namespace detail

} // namespace frfbands
