#include "frfbands/types.hpp"

#include <cmath>
#include <set>
#include <sstream>

#include "frfbands/errors.hpp"

namespace frfbands {

namespace {

bool all_finite(const std::vector<double>& v) {
    for (double x : v)
        if (!std::isfinite(x)) return false;
    return true;
}

bool all_finite(const std::vector<Complex>& v) {
    for (const auto& z : v)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    return true;
}

} // namespace

Frf::Frf(std::shared_ptr<const FrequencyGrid> grid, std::vector<Complex> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
    if (!grid_) throw ValidationError("Frf requires a grid");
    if (values_.size() != grid_->size()) {
        std::ostringstream os;
        os << "Frf has " << values_.size() << " values on a grid of " << grid_->size()
           << " frequencies";
        throw ValidationError(os.str());
    }
    if (!all_finite(values_)) throw ValidationError("Frf contains non-finite values");
}

FrfSet::FrfSet(std::vector<Frf> members) : members_(std::move(members)) {
    if (members_.empty()) throw ValidationError("FrfSet requires at least 1 member");
    const FrequencyGrid& g = members_.front().grid();
    for (std::size_t i = 1; i < members_.size(); ++i) {
        if (members_[i].grid() != g) {
            throw ValidationError("FrfSet members are on different grids");
        }
    }
}

FrfSetDiagnostics validate_frf_set(const FrequencyGrid& grid,
                                   const std::vector<std::vector<Complex>>& members) {
    FrfSetDiagnostics diag;
    if (members.size() < 2) {
        diag.violations.push_back("fewer than 2 members (n = " +
                                  std::to_string(members.size()) + ")");
    }
    for (std::size_t i = 0; i < members.size(); ++i) {
        if (members[i].size() != grid.size()) {
            diag.violations.push_back("member " + std::to_string(i) + " has " +
                                      std::to_string(members[i].size()) +
                                      " values on a grid of " + std::to_string(grid.size()) +
                                      " frequencies");
        }
        for (const auto& z : members[i]) {
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
                diag.violations.push_back("member " + std::to_string(i) +
                                          " contains a non-finite value");
                break;
            }
        }
    }
    diag.ok = diag.violations.empty();
    return diag;
}

Pir::Pir(std::vector<double> samples, double sample_rate, double period)
    : samples_(std::move(samples)), sample_rate_(sample_rate), period_(period) {
    if (sample_rate_ <= 0 || period_ <= 0) {
        throw ValidationError("Pir requires positive sample rate and period");
    }
    const double expected = period_ * sample_rate_;
    if (std::abs(expected - std::round(expected)) > 1e-6 ||
        samples_.size() != static_cast<std::size_t>(std::llround(expected))) {
        throw ValidationError("Pir sample count must equal period × sample_rate");
    }
    if (!all_finite(samples_)) throw ValidationError("Pir contains non-finite samples");
}

const char* to_string(BandKind kind) {
    return kind == BandKind::confidence ? "confidence" : "prediction";
}

BandEstimate::BandEstimate(BandKind kind,
                           std::vector<double> avg,
                           std::vector<double> sigma,
                           double constant,
                           double alpha,
                           std::uint32_t replicates,
                           std::vector<double> histogram_values,
                           double sample_rate,
                           std::uint64_t degenerate_replicates)
    : kind_(kind),
      avg_(std::move(avg)),
      sigma_(std::move(sigma)),
      constant_(constant),
      alpha_(alpha),
      replicates_(replicates),
      histogram_values_(std::move(histogram_values)),
      sample_rate_(sample_rate),
      degenerate_replicates_(degenerate_replicates) {
    if (avg_.empty() || sigma_.size() != avg_.size()) {
        throw ValidationError("band avg/sigma length mismatch");
    }
    // constant == 0 only arises for degenerate data (all members identical);
    // the band then collapses onto the mean.
    if (!(constant_ >= 0) || !std::isfinite(constant_)) {
        throw ValidationError("band constant must be finite and >= 0");
    }
    if (!(alpha_ > 0 && alpha_ < 100)) throw ValidationError("alpha must be in (0, 100)");
    if (sample_rate_ <= 0) throw ValidationError("band sample rate must be positive");
    if (!all_finite(avg_) || !all_finite(sigma_)) {
        throw ValidationError("band avg/sigma must be finite");
    }
    lower_.resize(avg_.size());
    upper_.resize(avg_.size());
    for (std::size_t j = 0; j < avg_.size(); ++j) {
        if (sigma_[j] < 0) throw ValidationError("sigma must be nonnegative");
        lower_[j] = avg_[j] - constant_ * sigma_[j];
        upper_[j] = avg_[j] + constant_ * sigma_[j];
    }
    for (std::size_t k = 1; k < histogram_values_.size(); ++k) {
        if (histogram_values_[k] < histogram_values_[k - 1]) {
            throw ValidationError("histogram values must be sorted ascending");
        }
    }
}

BandSpec::BandSpec(std::vector<std::vector<std::size_t>> bands,
                   const std::vector<Rational>& raw_freqs)
    : bands_(std::move(bands)) {
    if (bands_.empty()) throw ValidationError("band spec must contain at least one band");
    std::set<std::size_t> seen;
    center_rationals_.reserve(bands_.size());
    center_freqs_.reserve(bands_.size());
    for (const auto& band : bands_) {
        if (band.empty()) throw ValidationError("empty band in band spec");
        Rational sum(0, 1);
        for (std::size_t k : band) {
            if (k >= raw_freqs.size()) {
                throw ValidationError("band index " + std::to_string(k) + " out of range");
            }
            if (!seen.insert(k).second) {
                throw ValidationError("band index " + std::to_string(k) +
                                      " appears in more than one band");
            }
            sum = sum + raw_freqs[k];
        }
        const Rational center = sum * Rational(1, static_cast<std::int64_t>(band.size()));
        center_rationals_.push_back(center);
        center_freqs_.push_back(center.value());
    }
}

} // namespace frfbands
