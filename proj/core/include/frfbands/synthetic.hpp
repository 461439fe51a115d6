#pragma once

#include <cstdint>
#include <vector>

#include "frfbands/types.hpp"

namespace frfbands {

/// How Gaussian perturbation is applied when sampling a population.
enum class NoiseMode {
    /// template + complex noise, independent N(0, σ²) per real/imag component
    complex_additive,
    /// noise added to the magnitude profile first, then minimal phase is
    /// imposed per sample
    magnitude_preminphase,
};

/// Noise-free low-pass template: magnitude 1 at grid frequencies up to the
/// cutoff, 0.01 above it (a true zero has no log-magnitude), with minimal
/// phase derived from the magnitude profile on a dense auxiliary grid. On
/// that dense grid the transition descends log-linearly from the cutoff to
/// the next grid frequency, which keeps the phase lag of the transition
/// moderate; a cutoff at or beyond the top of the grid yields an all-pass.
Frf lowpass_frf(double cutoff_hz, std::shared_ptr<const FrequencyGrid> grid);

/// n perturbed draws of a template; member i's noise comes from the
/// (seed, i) stream, so draws are independent and order-free.
std::vector<Frf> sample_members(const Frf& template_frf, double noise_sigma, std::uint32_t n,
                                std::uint64_t seed,
                                NoiseMode mode = NoiseMode::complex_additive);

/// Same, packaged as a set (n ≥ 2).
FrfSet sample_population(const Frf& template_frf, double noise_sigma, std::uint32_t n,
                         std::uint64_t seed, NoiseMode mode = NoiseMode::complex_additive);

/// Minimal phase of a log-magnitude half spectrum (bins 0 .. N/2 of an
/// even-length real spectrum), computed by the real-cepstrum method:
/// fold the cepstrum onto nonnegative quefrencies and take the imaginary
/// part of its transform. Returns the phase at each input bin.
std::vector<double> minimal_phase(const std::vector<double>& log_magnitude_half_spectrum);

} // namespace frfbands
