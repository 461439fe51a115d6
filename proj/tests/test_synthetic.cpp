#include <doctest.h>

#include <cmath>
#include <memory>
#include <numbers>

#include "frfbands/synthetic.hpp"

using namespace frfbands;

namespace {

std::shared_ptr<const FrequencyGrid> paper_grid() {
    return std::make_shared<const FrequencyGrid>(FrequencyGrid::standard_posture_grid());
}

// Independent minimal-phase oracle: discrete periodic Hilbert transform as a
// direct convolution with the closed-form kernel −(2/N)·cot(πd/N) on odd
// lags (zero on even lags), applied to the evenly extended log magnitude.
std::vector<double> hilbert_phase_oracle(const std::vector<double>& log_mag_half) {
    const std::size_t half = log_mag_half.size() - 1;
    const std::size_t n = 2 * half;
    std::vector<double> full(n);
    for (std::size_t k = 0; k <= half; ++k) full[k] = log_mag_half[k];
    for (std::size_t k = half + 1; k < n; ++k) full[k] = log_mag_half[n - k];

    std::vector<double> kernel(n, 0.0);
    for (std::size_t d = 1; d < n; d += 2) {
        kernel[d] = -(2.0 / double(n)) / std::tan(std::numbers::pi * double(d) / double(n));
    }
    std::vector<double> phase(half + 1, 0.0);
    for (std::size_t k = 0; k <= half; ++k) {
        double acc = 0.0;
        for (std::size_t r = 0; r < n; ++r) {
            acc += full[r] * kernel[(k + n - r) % n];
        }
        phase[k] = acc;
    }
    return phase;
}

} // namespace

TEST_CASE("kernel convolution and cepstral folding agree") {
    // magnitude profile with structure: two steps and a bump
    const std::size_t half = 256;
    std::vector<double> log_mag(half + 1);
    for (std::size_t k = 0; k <= half; ++k) {
        const double f = double(k) / double(half);
        double m = 1.0;
        if (f > 0.2) m = 0.3;
        if (f > 0.6) m = 0.05;
        m += 0.02 * std::sin(7.0 * f);
        log_mag[k] = std::log(m);
    }
    const auto impl = minimal_phase(log_mag);
    const auto oracle = hilbert_phase_oracle(log_mag);
    REQUIRE(impl.size() == oracle.size());
    for (std::size_t k = 0; k <= half; ++k) {
        CHECK(std::abs(impl[k] - oracle[k]) < 0.05);
    }
}

TEST_CASE("flat magnitude has zero minimal phase") {
    std::vector<double> log_mag(129, std::log(1.0));
    for (double p : minimal_phase(log_mag)) CHECK(std::abs(p) < 1e-12);
}

TEST_CASE("all-pass template: unit magnitude, zero phase") {
    const Frf frf = lowpass_frf(5.0, paper_grid()); // cutoff above max(grid)
    for (const auto& v : frf.values()) {
        CHECK(std::abs(v) == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(std::abs(std::arg(v)) < 1e-9);
    }
}

TEST_CASE("low-pass template magnitudes: 1 up to the cutoff, floor above") {
    const auto grid = paper_grid();
    const Frf frf = lowpass_frf(0.4, grid);
    for (std::size_t k = 0; k < grid->size(); ++k) {
        const double mag = std::abs(frf.values()[k]);
        if (grid->freq(k) <= 0.4) {
            CHECK(mag == doctest::Approx(1.0).epsilon(1e-12));
        } else {
            CHECK(mag == doctest::Approx(0.01).epsilon(1e-12));
        }
    }
}

TEST_CASE("template phase matches the dense-grid Hilbert oracle at the grid") {
    const auto grid = paper_grid();
    const Frf frf = lowpass_frf(0.4, grid);

    // rebuild the dense profile exactly as the library defines it: pass band
    // to 0.4, log-linear descent to the next grid frequency (0.55), floor after
    const std::size_t pir_len = 440;
    const std::size_t dense_n = 8 * pir_len;
    const std::size_t half = dense_n / 2;
    const double period = 20.0;
    std::vector<double> log_mag(half + 1);
    for (std::size_t k = 0; k <= half; ++k) {
        const double f = double(k) / (8.0 * period);
        if (f <= 0.4) {
            log_mag[k] = 0.0;
        } else if (f >= 0.55) {
            log_mag[k] = std::log(0.01);
        } else {
            log_mag[k] = std::log(0.01) * (f - 0.4) / (0.55 - 0.4);
        }
    }
    const auto oracle = hilbert_phase_oracle(log_mag);
    for (std::size_t i = 0; i < grid->size(); ++i) {
        const auto bin = static_cast<std::size_t>(std::llround(grid->freq(i) * 8.0 * period));
        // std::arg wraps to (-pi, pi]; compare phases on the circle
        const double wrapped =
            std::remainder(std::arg(frf.values()[i]) - oracle[bin], 2.0 * std::numbers::pi);
        CHECK(std::abs(wrapped) < 0.05);
    }
}

TEST_CASE("zero noise reproduces the template") {
    const Frf tpl = lowpass_frf(0.75, paper_grid());
    const auto members = sample_members(tpl, 0.0, 4, 123);
    REQUIRE(members.size() == 4);
    for (const auto& m : members) {
        for (std::size_t k = 0; k < m.size(); ++k) {
            CHECK(m.values()[k] == tpl.values()[k]);
        }
    }
}

TEST_CASE("sampling is deterministic and member-independent") {
    const Frf tpl = lowpass_frf(0.4, paper_grid());
    const auto a = sample_members(tpl, 0.5, 6, 42);
    const auto b = sample_members(tpl, 0.5, 6, 42);
    const auto c = sample_members(tpl, 0.5, 6, 43);
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].values() == b[i].values());
    }
    CHECK(a[0].values() != c[0].values());
    // the first members of an n=2 draw equal the first members of an n=6 draw
    const auto d = sample_members(tpl, 0.5, 2, 42);
    CHECK(d[0].values() == a[0].values());
    CHECK(d[1].values() == a[1].values());
}

TEST_CASE("sample mean converges to the template") {
    const Frf tpl = lowpass_frf(0.4, paper_grid());
    const double sigma = 0.5;
    const std::uint32_t n = 10'000;
    const auto members = sample_members(tpl, sigma, n, 2026);
    std::vector<Complex> mean(tpl.size(), Complex(0, 0));
    for (const auto& m : members) {
        for (std::size_t k = 0; k < m.size(); ++k) mean[k] += m.values()[k];
    }
    const double bound = 3.0 * sigma / std::sqrt(double(n));
    for (std::size_t k = 0; k < tpl.size(); ++k) {
        mean[k] /= double(n);
        CHECK(std::abs(mean[k].real() - tpl.values()[k].real()) < bound);
        CHECK(std::abs(mean[k].imag() - tpl.values()[k].imag()) < bound);
    }
}

TEST_CASE("magnitude-noise mode produces finite minimal-phase members") {
    const Frf tpl = lowpass_frf(0.4, paper_grid());
    const auto members = sample_members(tpl, 0.5, 3, 9, NoiseMode::magnitude_preminphase);
    REQUIRE(members.size() == 3);
    CHECK(members[0].values() != members[1].values());
    for (const auto& m : members) {
        for (const auto& v : m.values()) {
            CHECK(std::isfinite(v.real()));
            CHECK(std::isfinite(v.imag()));
        }
    }
}

TEST_CASE("population sampling validates its arguments") {
    const Frf tpl = lowpass_frf(0.4, paper_grid());
    CHECK_THROWS_AS(sample_members(tpl, -0.1, 3, 1), ValidationError);
    CHECK_THROWS_AS(sample_members(tpl, 0.5, 0, 1), ValidationError);
    CHECK_THROWS_AS(lowpass_frf(-1.0, paper_grid()), ValidationError);
}
