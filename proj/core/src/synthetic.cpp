#include "frfbands/synthetic.hpp"

#include <algorithm>
#include <cmath>

#include "frfbands/errors.hpp"
#include "frfbands/pir_transform.hpp"
#include "frfbands/rng.hpp"
#include "twiddles.hpp"

namespace frfbands {

namespace {

constexpr double kStopbandFloor = 0.01;
constexpr std::size_t kDenseFactor = 8; // dense bins per PIR bin

// Dense DFT layout matched to a grid: bin k is frequency k / (factor·T), so
// every grid frequency sits exactly on bin factor·(f·T).
struct DenseGrid {
    std::size_t n = 0;        // full (even) transform length
    double period = 0.0;      // T
    std::size_t factor = kDenseFactor;

    explicit DenseGrid(const FrequencyGrid& grid) {
        period = fundamental_period(grid);
        const double rate = default_sample_rate(grid);
        const auto pir_len = static_cast<std::size_t>(std::llround(rate * period));
        n = factor * pir_len;
    }
    double freq(std::size_t k) const {
        return static_cast<double>(k) / (static_cast<double>(factor) * period);
    }
    std::size_t bin_of(double f) const {
        return static_cast<std::size_t>(std::llround(f * static_cast<double>(factor) * period));
    }
};

std::vector<double> phase_at_bins(const std::vector<double>& log_mag_half,
                                  const std::vector<std::size_t>& wanted_bins);

} // namespace

std::vector<double> minimal_phase(const std::vector<double>& log_magnitude_half_spectrum) {
    std::vector<std::size_t> all(log_magnitude_half_spectrum.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    return phase_at_bins(log_magnitude_half_spectrum, all);
}

namespace {

std::vector<double> phase_at_bins(const std::vector<double>& log_mag_half,
                                  const std::vector<std::size_t>& wanted_bins) {
    if (log_mag_half.size() < 2) throw ValidationError("half spectrum too short");
    const std::size_t n = 2 * (log_mag_half.size() - 1); // even full length
    const std::size_t half = n / 2;
    const detail::Twiddles tw(n);

    // real even cepstrum: c[j] = (1/n)·(L0 + 2·Σ L_k cos(2πkj/n) + L_half·cos(πj))
    std::vector<double> cep(half + 1);
    for (std::size_t j = 0; j <= half; ++j) {
        double acc = log_mag_half[0];
        std::size_t r = 0;
        for (std::size_t k = 1; k < half; ++k) {
            r += j;
            if (r >= n) r -= n;
            acc += 2.0 * log_mag_half[k] * tw.cos_[r];
        }
        acc += log_mag_half[half] * (j % 2 == 0 ? 1.0 : -1.0);
        cep[j] = acc / static_cast<double>(n);
    }

    // fold onto nonnegative quefrencies: weights 1, 2, 2, ..., 2, 1
    // phase[k] = −Σ_j w_j·c[j]·sin(2πkj/n)  (j = 0 and n/2 terms vanish)
    std::vector<double> phase(wanted_bins.size());
    for (std::size_t w = 0; w < wanted_bins.size(); ++w) {
        const std::size_t k = wanted_bins[w];
        double acc = 0.0;
        std::size_t r = 0;
        for (std::size_t j = 1; j < half; ++j) {
            r += k;
            if (r >= n) r -= n;
            acc += 2.0 * cep[j] * tw.sin_[r];
        }
        phase[w] = -acc;
    }
    return phase;
}

std::vector<double> dense_log_magnitude_step(const DenseGrid& dense,
                                             const FrequencyGrid& grid, double cutoff) {
    const std::size_t half = dense.n / 2;
    std::vector<double> log_mag(half + 1, 0.0);
    // a cutoff at or beyond the top of the grid means no cutoff at all:
    // a flat profile, and with it zero minimal phase
    if (cutoff >= grid.max_freq()) return log_mag;

    // grid frequencies keep the exact pass/stop values; between the cutoff
    // and the next grid frequency the dense profile descends log-linearly,
    // which keeps the minimal-phase lag of the transition moderate
    double next = grid.max_freq();
    for (double f : grid.freqs()) {
        if (f > cutoff) {
            next = f;
            break;
        }
    }
    const double floor_log = std::log(kStopbandFloor);
    for (std::size_t k = 0; k <= half; ++k) {
        const double f = dense.freq(k);
        if (f <= cutoff) {
            log_mag[k] = 0.0;
        } else if (f >= next) {
            log_mag[k] = floor_log;
        } else {
            log_mag[k] = floor_log * (f - cutoff) / (next - cutoff);
        }
    }
    return log_mag;
}

// piecewise-linear interpolation of log-magnitude between grid points,
// constant extrapolation outside; used by the magnitude-noise mode
std::vector<double> dense_log_magnitude_interp(const DenseGrid& dense,
                                               const FrequencyGrid& grid,
                                               const std::vector<double>& mags) {
    const std::size_t half = dense.n / 2;
    std::vector<double> log_mag(half + 1);
    const auto& f = grid.freqs();
    for (std::size_t k = 0; k <= half; ++k) {
        const double x = dense.freq(k);
        double v;
        if (x <= f.front()) {
            v = mags.front();
        } else if (x >= f.back()) {
            v = mags.back();
        } else {
            const auto it = std::upper_bound(f.begin(), f.end(), x);
            const std::size_t i = static_cast<std::size_t>(it - f.begin());
            const double t = (x - f[i - 1]) / (f[i] - f[i - 1]);
            v = std::exp((1.0 - t) * std::log(mags[i - 1]) + t * std::log(mags[i]));
        }
        log_mag[k] = std::log(v);
    }
    return log_mag;
}

Frf frf_from_dense_profile(const std::shared_ptr<const FrequencyGrid>& grid,
                           const DenseGrid& dense,
                           const std::vector<double>& log_mag_half) {
    std::vector<std::size_t> bins(grid->size());
    for (std::size_t i = 0; i < grid->size(); ++i) bins[i] = dense.bin_of(grid->freq(i));
    const std::vector<double> phase = phase_at_bins(log_mag_half, bins);
    std::vector<Complex> values(grid->size());
    for (std::size_t i = 0; i < grid->size(); ++i) {
        const double mag = std::exp(log_mag_half[bins[i]]);
        values[i] = Complex(mag * std::cos(phase[i]), mag * std::sin(phase[i]));
    }
    return Frf(grid, std::move(values));
}

} // namespace

Frf lowpass_frf(double cutoff_hz, std::shared_ptr<const FrequencyGrid> grid) {
    if (!grid) throw ValidationError("lowpass_frf requires a grid");
    if (cutoff_hz <= 0) throw ValidationError("cutoff must be positive");
    const DenseGrid dense(*grid);
    return frf_from_dense_profile(grid, dense,
                                  dense_log_magnitude_step(dense, *grid, cutoff_hz));
}

std::vector<Frf> sample_members(const Frf& template_frf, double noise_sigma, std::uint32_t n,
                                std::uint64_t seed, NoiseMode mode) {
    if (n == 0) throw ValidationError("population needs at least one member");
    if (noise_sigma < 0) throw ValidationError("noise sigma must be nonnegative");
    std::vector<Frf> members;
    members.reserve(n);
    const auto grid = template_frf.grid_ptr();
    const std::size_t m = template_frf.size();

    if (mode == NoiseMode::complex_additive) {
        for (std::uint32_t i = 0; i < n; ++i) {
            Rng rng(seed, i);
            std::vector<Complex> values(m);
            for (std::size_t k = 0; k < m; ++k) {
                const double re = rng.next_gaussian() * noise_sigma;
                const double im = rng.next_gaussian() * noise_sigma;
                values[k] = template_frf.values()[k] + Complex(re, im);
            }
            members.emplace_back(grid, std::move(values));
        }
        return members;
    }

    // magnitude noise first, then minimal phase per sample
    const DenseGrid dense(*grid);
    for (std::uint32_t i = 0; i < n; ++i) {
        Rng rng(seed, i);
        std::vector<double> mags(m);
        for (std::size_t k = 0; k < m; ++k) {
            const double noisy =
                std::abs(template_frf.values()[k]) + rng.next_gaussian() * noise_sigma;
            mags[k] = std::max(noisy, 1e-3); // log-magnitude needs a positive value
        }
        members.push_back(frf_from_dense_profile(
            grid, dense, dense_log_magnitude_interp(dense, *grid, mags)));
    }
    return members;
}

FrfSet sample_population(const Frf& template_frf, double noise_sigma, std::uint32_t n,
                         std::uint64_t seed, NoiseMode mode) {
    return FrfSet(sample_members(template_frf, noise_sigma, n, seed, mode));
}

} // namespace frfbands
