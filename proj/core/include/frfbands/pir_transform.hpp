#pragma once

#include "frfbands/types.hpp"

namespace frfbands {

/// Inverse of the gcd of the grid frequencies, in seconds. Every grid
/// frequency times this period is an integer, so the grid lands exactly on
/// DFT bins of one period.
double fundamental_period(const FrequencyGrid& grid);

/// Same, as an exact rational.
Rational fundamental_period_rational(const FrequencyGrid& grid);

/// Ten times the highest grid frequency (Hz).
double default_sample_rate(const FrequencyGrid& grid);

/// Builds the real periodic time series equivalent to an FRF:
///   x(t_j) = sum_k Re(H_k)·cos(2π F_k t_j) + Im(H_k)·sin(2π F_k t_j)
/// sampled at t_j = j / sample_rate over one fundamental period.
///
/// sample_rate must be commensurate (rate × period integral) and above twice
/// the highest grid frequency; otherwise the transform back would be inexact.
Pir pir_from_frf(const Frf& frf, double sample_rate);

/// Recovers the FRF from a PIR by evaluating the DFT at the grid's bins.
///
/// With the forward kernel exp(-i2πkj/N), a signal built by pir_from_frf
/// has bin value (N/2)·conj(H_k); this routine therefore returns
/// (2/N)·conj(X_k). Exact inverse of pir_from_frf up to rounding.
Frf frf_from_pir(const Pir& pir, std::shared_ptr<const FrequencyGrid> grid);

/// DFT of a PIR over all bins 0 .. N/2, normalized like frf_from_pir so the
/// bins that carry FRF components reproduce them and every other bin is
/// numerically zero. Diagnostic view of the reconstruction.
struct FullSpectrum {
    std::vector<double> freqs;    ///< bin frequencies, k / period
    std::vector<Complex> values;  ///< normalized complex response per bin
};

FullSpectrum full_spectrum(const Pir& pir);

/// PIRs of every member of a set at one sample rate.
std::vector<Pir> pirs_from_set(const FrfSet& set, double sample_rate);

} // namespace frfbands
