#pragma once

#include <vector>

#include "frfbands/bootstrap.hpp"
#include "frfbands/types.hpp"

namespace frfbands {

/// Band-exceedance signal: x − upper above the band, x − lower below it,
/// zero inside. Nonzero somewhere exactly when band_contains is false.
Pir residual(const Pir& x, const BandEstimate& band);

/// DFT of a residual at the grid's bins. The clipping that produces the
/// residual is nonlinear, so energy can appear at frequencies where the
/// original signal had none; magnitudes are the headline output, complex
/// values are provided for completeness.
struct ResidualSpectrum {
    std::vector<double> freqs;
    std::vector<Complex> values;
    std::vector<double> magnitudes;
};

ResidualSpectrum residual_spectrum(const Pir& r, const FrequencyGrid& grid);

/// mean(A) − mean(B) in the complex domain. Linear, so it equals the
/// transform of the difference between the mean PIRs.
Frf mean_difference_spectrum(const FrfSet& set_a, const FrfSet& set_b);

struct LooResult {
    double coverage = 0.0;        ///< covered members / n
    std::vector<bool> contained;  ///< per-member held-out verdict
};

/// Leave-one-out coverage of the prediction band: each member is tested
/// against the band built from the other n−1. Fold i reseeds from
/// (plan.seed, i), so results do not depend on fold order.
LooResult loo_coverage(const FrfSet& set, double alpha, const ResamplePlan& plan,
                       double sample_rate, unsigned threads = 0);

} // namespace frfbands
