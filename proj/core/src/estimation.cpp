#include "frfbands/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "frfbands/errors.hpp"
#include "twiddles.hpp"

namespace frfbands {

namespace {

// Feedback taps giving maximal period 3^m − 1 (verified by period check in
// the test suite). Fibonacci form: new = Σ taps[i]·state[i] mod 3.
const std::vector<std::uint8_t>& default_taps(std::uint32_t stages) {
    static const std::vector<std::vector<std::uint8_t>> table = {
        {1, 1},                   // m = 2
        {0, 1, 2},                // m = 3
        {0, 0, 1, 1},             // m = 4
        {0, 0, 0, 1, 2},          // m = 5
        {0, 0, 0, 0, 1, 1},       // m = 6
        {0, 0, 0, 0, 1, 0, 2},    // m = 7
        {0, 0, 0, 0, 1, 0, 0, 1}, // m = 8
    };
    if (stages < 2 || stages > 8) {
        throw ValidationError("built-in PRTS taps cover 2..8 stages; pass explicit taps");
    }
    return table[stages - 2];
}

std::vector<std::uint8_t> initial_state(const PrtsConfig& config) {
    std::vector<std::uint8_t> state(config.stages, 0);
    std::uint32_t v = config.seed_state;
    for (std::uint32_t i = 0; i < config.stages && v != 0; ++i) {
        state[i] = static_cast<std::uint8_t>(v % 3);
        v /= 3;
    }
    bool nonzero = false;
    for (auto s : state) nonzero |= s != 0;
    if (!nonzero) throw ValidationError("PRTS seed state must be nonzero");
    return state;
}

} // namespace

std::size_t PrtsConfig::states_per_cycle() const {
    std::size_t p = 1;
    for (std::uint32_t i = 0; i < stages; ++i) p *= 3;
    return p - 1;
}

double PrtsConfig::cycle_duration() const {
    return static_cast<double>(states_per_cycle()) * dt;
}

TimeSeries::TimeSeries(std::vector<double> samples_, Rational sample_rate_)
    : samples(std::move(samples_)), sample_rate(sample_rate_) {
    if (sample_rate.num <= 0) throw ValidationError("sample rate must be positive");
    for (double v : samples) {
        if (!std::isfinite(v)) throw ValidationError("time series contains non-finite samples");
    }
}

std::vector<double> prts_velocity_cycle(const PrtsConfig& config) {
    if (config.stages < 2) throw ValidationError("PRTS needs at least 2 stages");
    if (config.dt <= 0) throw ValidationError("PRTS state duration must be positive");
    const auto& taps = config.taps.empty() ? default_taps(config.stages) : config.taps;
    if (taps.size() != config.stages) {
        throw ValidationError("PRTS taps length must equal stages");
    }
    std::vector<std::uint8_t> state = initial_state(config);
    const std::size_t period = config.states_per_cycle();
    std::vector<double> velocity(period);
    for (std::size_t t = 0; t < period; ++t) {
        const std::uint8_t sym = state[0];
        velocity[t] = sym == 0 ? 0.0 : (sym == 1 ? config.velocity : -config.velocity);
        std::uint32_t acc = 0;
        for (std::uint32_t i = 0; i < config.stages; ++i) acc += taps[i] * state[i];
        for (std::uint32_t i = config.stages - 1; i > 0; --i) state[i] = state[i - 1];
        state[0] = static_cast<std::uint8_t>(acc % 3);
    }
    return velocity;
}

TimeSeries generate_prts(const PrtsConfig& config, std::uint32_t cycles,
                         const Rational& sample_rate) {
    if (cycles < 2) {
        throw ValidationError("generate at least 2 PRTS cycles; the first is discarded "
                              "by the estimator");
    }
    std::vector<double> velocity = prts_velocity_cycle(config);
    const std::size_t period = velocity.size();

    // position at state boundaries; the balanced sequence returns to zero
    std::vector<double> boundary(period + 1, 0.0);
    for (std::size_t t = 0; t < period; ++t) {
        boundary[t + 1] = boundary[t] + velocity[t] * config.dt;
    }

    double scale = 1.0;
    if (config.amplitude_target) {
        const auto [lo, hi] = std::minmax_element(boundary.begin(), boundary.end());
        const double ptp = *hi - *lo;
        if (ptp <= 0) throw DegeneracyError("PRTS profile is flat; cannot rescale amplitude");
        scale = *config.amplitude_target / ptp;
    }

    const double rate = sample_rate.value();
    const double samples_per_cycle = static_cast<double>(period) * config.dt * rate;
    const double rounded = std::round(samples_per_cycle);
    if (std::abs(samples_per_cycle - rounded) > 1e-9) {
        std::ostringstream os;
        os << "cycle duration " << config.cycle_duration() << " s at " << rate
           << " Hz is not an integer number of samples";
        throw ValidationError(os.str());
    }
    const auto cycle_samples = static_cast<std::size_t>(rounded);
    const std::size_t total = cycle_samples * cycles;

    std::vector<double> samples(total);
    for (std::size_t j = 0; j < total; ++j) {
        const double t = std::fmod(static_cast<double>(j % cycle_samples) / rate,
                                   static_cast<double>(period) * config.dt);
        auto k = static_cast<std::size_t>(t / config.dt);
        if (k >= period) k = period - 1;
        // position is continuous at state boundaries, so a borderline k is harmless
        samples[j] = scale * (boundary[k] + velocity[k] * (t - static_cast<double>(k) * config.dt));
    }
    return TimeSeries(std::move(samples), sample_rate);
}

RawTransfer estimate_raw_transfer(const TimeSeries& stimulus, const TimeSeries& response,
                                  std::size_t cycle_length, bool discard_first) {
    if (stimulus.samples.size() != response.samples.size()) {
        throw ValidationError("stimulus and response must have the same length");
    }
    if (!(stimulus.sample_rate == response.sample_rate)) {
        throw ValidationError("stimulus and response must share a sample rate");
    }
    if (cycle_length == 0 || stimulus.samples.size() % cycle_length != 0) {
        throw ValidationError("series length must be an integer number of cycles");
    }
    std::size_t n_cycles = stimulus.samples.size() / cycle_length;
    std::size_t first = 0;
    if (discard_first) {
        if (n_cycles < 2) {
            throw ValidationError("discarding the first cycle needs at least 2 cycles");
        }
        first = 1;
    }

    const std::size_t n_bins = cycle_length / 2 + 1;
    std::vector<double> gyy(n_bins, 0.0);
    std::vector<Complex> gxy(n_bins, Complex(0.0, 0.0));
    const detail::Twiddles tw(cycle_length);

    for (std::size_t c = first; c < n_cycles; ++c) {
        const double* y = stimulus.samples.data() + c * cycle_length;
        const double* x = response.samples.data() + c * cycle_length;
        for (std::size_t m = 0; m < n_bins; ++m) {
            double yr = 0.0, yi = 0.0, xr = 0.0, xi = 0.0;
            std::size_t r = 0;
            for (std::size_t j = 0; j < cycle_length; ++j) {
                const double ct = tw.cos_[r];
                const double st = tw.sin_[r];
                yr += y[j] * ct;
                yi -= y[j] * st;
                xr += x[j] * ct;
                xi -= x[j] * st;
                r += m;
                if (r >= cycle_length) r -= cycle_length;
            }
            const Complex yc(yr, yi), xc(xr, xi);
            gyy[m] += std::norm(yc);
            gxy[m] += xc * std::conj(yc);
        }
    }

    const double peak = *std::max_element(gyy.begin(), gyy.end());
    if (peak <= 0) throw DegeneracyError("stimulus has no spectral power");
    const double threshold = 1e-6 * peak;

    RawTransfer raw;
    raw.cycle_samples = cycle_length;
    const Rational cycle_period =
        Rational(static_cast<std::int64_t>(cycle_length), 1) / stimulus.sample_rate;
    for (std::size_t m = 1; m < n_bins; ++m) {
        if (gyy[m] >= threshold) {
            raw.bins.push_back(m);
            const Rational f =
                Rational(static_cast<std::int64_t>(m), 1) / cycle_period;
            raw.freq_rationals.push_back(f);
            raw.freqs.push_back(f.value());
            raw.values.push_back(gxy[m] / gyy[m]);
        }
    }
    if (raw.bins.empty()) {
        throw DegeneracyError("no frequency exceeds the stimulus power threshold");
    }
    return raw;
}

Frf band_average(const RawTransfer& raw, const BandSpec& spec) {
    std::vector<Complex> values;
    values.reserve(spec.size());
    for (const auto& band : spec.bands()) {
        Complex sum(0.0, 0.0);
        for (std::size_t k : band) {
            if (k >= raw.values.size()) {
                throw ValidationError("band spec index out of range for this transfer");
            }
            sum += raw.values[k];
        }
        values.push_back(sum / static_cast<double>(band.size()));
    }
    auto grid = std::make_shared<const FrequencyGrid>(
        FrequencyGrid::from_rationals(spec.center_rationals()));
    return Frf(std::move(grid), std::move(values));
}

BandSpec default_band_spec(const RawTransfer& raw, const FrequencyGrid& target_grid) {
    const std::size_t n_raw = raw.freqs.size();
    const std::size_t n_target = target_grid.size();
    if (n_raw < n_target) {
        throw ValidationError("not enough excited frequencies to form every band");
    }
    if (target_grid.freqs().front() < raw.freqs.front() ||
        target_grid.max_freq() > raw.freqs.back()) {
        throw ValidationError("target grid lies outside the excited frequency range");
    }

    std::vector<std::vector<std::size_t>> bands;
    bands.reserve(n_target);
    std::size_t next = 0;
    for (std::size_t i = 0; i < n_target; ++i) {
        const double target = target_grid.freq(i);
        const std::size_t remaining = n_target - i - 1;
        const std::size_t limit = n_raw - remaining; // leave one per later band
        std::size_t count = 1;
        double sum = raw.freqs[next];
        while (next + count < limit) {
            const double cur_err = std::abs(sum / static_cast<double>(count) - target);
            const double ext = sum + raw.freqs[next + count];
            const double ext_err = std::abs(ext / static_cast<double>(count + 1) - target);
            if (ext_err < cur_err) {
                sum = ext;
                ++count;
            } else {
                break;
            }
        }
        std::vector<std::size_t> band(count);
        for (std::size_t k = 0; k < count; ++k) band[k] = next + k;
        bands.push_back(std::move(band));
        next += count;
    }
    return BandSpec(std::move(bands), raw.freq_rationals);
}

} // namespace frfbands
