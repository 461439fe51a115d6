#include "frfbands/pir_transform.hpp"

#include <cmath>
#include <sstream>

#include "frfbands/errors.hpp"
#include "twiddles.hpp"

namespace frfbands {

using detail::Twiddles;

namespace {

constexpr std::size_t kMaxSamples = 100'000'000;

std::size_t bin_of(double freq, double period, std::size_t n_samples) {
    const double b = freq * period;
    const double r = std::round(b);
    if (std::abs(b - r) > 1e-9 || r < 0.5) {
        std::ostringstream os;
        os << "frequency " << freq << " Hz is not on a DFT bin of period " << period << " s";
        throw ValidationError(os.str());
    }
    const auto bin = static_cast<std::size_t>(r);
    if (2 * bin > n_samples) {
        std::ostringstream os;
        os << "frequency " << freq << " Hz is above the Nyquist bin";
        throw ValidationError(os.str());
    }
    return bin;
}

} // namespace

Rational fundamental_period_rational(const FrequencyGrid& grid) {
    return grid.gcd().inverse();
}

double fundamental_period(const FrequencyGrid& grid) {
    return fundamental_period_rational(grid).value();
}

double default_sample_rate(const FrequencyGrid& grid) { return 10.0 * grid.max_freq(); }

Pir pir_from_frf(const Frf& frf, double sample_rate) {
    const FrequencyGrid& grid = frf.grid();
    const double period = fundamental_period(grid);
    if (sample_rate <= 2.0 * grid.max_freq()) {
        std::ostringstream os;
        os << "sample rate " << sample_rate << " Hz must exceed twice the highest frequency "
           << grid.max_freq() << " Hz";
        throw ValidationError(os.str());
    }
    const double count = sample_rate * period;
    const double rounded = std::round(count);
    if (std::abs(count - rounded) > 1e-9) {
        std::ostringstream os;
        os << "sample rate " << sample_rate << " Hz is not commensurate with period " << period
           << " s (rate × period must be an integer)";
        throw ValidationError(os.str());
    }
    if (rounded > static_cast<double>(kMaxSamples)) {
        std::ostringstream os;
        os << "period " << period << " s at " << sample_rate
           << " Hz needs more than " << kMaxSamples
           << " samples; pass an explicit coarser grid";
        throw ValidationError(os.str());
    }
    const auto n = static_cast<std::size_t>(rounded);

    // bin index per grid frequency: F_k · period, integral by grid construction
    std::vector<std::size_t> bins(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k) bins[k] = bin_of(grid.freq(k), period, n);

    const Twiddles tw(n);
    std::vector<double> x(n, 0.0);
    const auto& h = frf.values();
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const double re = h[k].real();
        const double im = h[k].imag();
        const std::size_t m = bins[k];
        std::size_t r = 0;
        for (std::size_t j = 0; j < n; ++j) {
            x[j] += re * tw.cos_[r] + im * tw.sin_[r];
            r += m;
            if (r >= n) r -= n;
        }
    }
    return Pir(std::move(x), sample_rate, period);
}

Frf frf_from_pir(const Pir& pir, std::shared_ptr<const FrequencyGrid> grid) {
    if (!grid) throw ValidationError("frf_from_pir requires a grid");
    const std::size_t n = pir.size();
    const Twiddles tw(n);
    const auto& x = pir.samples();
    std::vector<Complex> h(grid->size());
    for (std::size_t k = 0; k < grid->size(); ++k) {
        const std::size_t m = bin_of(grid->freq(k), pir.period(), n);
        double cr = 0.0, ci = 0.0;
        std::size_t r = 0;
        for (std::size_t j = 0; j < n; ++j) {
            cr += x[j] * tw.cos_[r];
            ci += x[j] * tw.sin_[r];
            r += m;
            if (r >= n) r -= n;
        }
        // X_m = cr - i·ci; H_k = (2/N)·conj(X_m)
        h[k] = Complex(2.0 * cr / static_cast<double>(n), 2.0 * ci / static_cast<double>(n));
    }
    return Frf(std::move(grid), std::move(h));
}

std::vector<Pir> pirs_from_set(const FrfSet& set, double sample_rate) {
    std::vector<Pir> pirs;
    pirs.reserve(set.size());
    for (const auto& frf : set.members()) pirs.push_back(pir_from_frf(frf, sample_rate));
    return pirs;
}

FullSpectrum full_spectrum(const Pir& pir) {
    const std::size_t n = pir.size();
    const Twiddles tw(n);
    const auto& x = pir.samples();
    FullSpectrum spec;
    const std::size_t n_bins = n / 2 + 1;
    spec.freqs.resize(n_bins);
    spec.values.resize(n_bins);
    for (std::size_t m = 0; m < n_bins; ++m) {
        double cr = 0.0, ci = 0.0;
        std::size_t r = 0;
        for (std::size_t j = 0; j < n; ++j) {
            cr += x[j] * tw.cos_[r];
            ci += x[j] * tw.sin_[r];
            r += m;
            if (r >= n) r -= n;
        }
        const bool half_weight = (m == 0) || (2 * m == n);
        const double scale = (half_weight ? 1.0 : 2.0) / static_cast<double>(n);
        spec.freqs[m] = static_cast<double>(m) / pir.period();
        spec.values[m] = Complex(scale * cr, scale * ci);
    }
    return spec;
}

} // namespace frfbands
