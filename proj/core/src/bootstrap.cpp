#include "frfbands/bootstrap.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <sstream>

#include "frfbands/errors.hpp"
#include "frfbands/parallel.hpp"
#include "frfbands/pir_transform.hpp"
#include "frfbands/rng.hpp"

namespace frfbands {

ResamplePlan::ResamplePlan(std::uint64_t seed_, std::uint32_t replicates_,
                           std::uint32_t sample_count_)
    : seed(seed_), replicates(replicates_), sample_count(sample_count_) {
    if (replicates < 100) {
        throw ValidationError("resample plan needs at least 100 replicates, got " +
                              std::to_string(replicates));
    }
    if (sample_count == 0) throw ValidationError("resample plan needs a nonzero sample count");
}

std::vector<std::uint32_t> ResamplePlan::indices(std::uint64_t replicate) const {
    Rng rng(seed, replicate);
    std::vector<std::uint32_t> idx(sample_count);
    for (auto& v : idx) v = static_cast<std::uint32_t>(rng.next_below(sample_count));
    return idx;
}

namespace {

void check_same_shape(const std::vector<Pir>& pirs) {
    if (pirs.empty()) throw ValidationError("empty PIR list");
    const std::size_t len = pirs.front().size();
    const double rate = pirs.front().sample_rate();
    for (const auto& p : pirs) {
        if (p.size() != len || p.sample_rate() != rate) {
            throw ValidationError("PIRs differ in length or sample rate");
        }
    }
}

double global_abs_max(const double* data, std::size_t count) {
    double m = 0.0;
    for (std::size_t i = 0; i < count; ++i) m = std::max(m, std::abs(data[i]));
    return m;
}

} // namespace

std::vector<double> pointwise_mean(const std::vector<Pir>& pirs) {
    check_same_shape(pirs);
    const std::size_t len = pirs.front().size();
    std::vector<double> mean(len, 0.0);
    for (const auto& p : pirs) {
        const auto& x = p.samples();
        for (std::size_t j = 0; j < len; ++j) mean[j] += x[j];
    }
    const double inv_n = 1.0 / static_cast<double>(pirs.size());
    for (auto& v : mean) v *= inv_n;
    return mean;
}

std::vector<double> pointwise_sigma(const std::vector<Pir>& pirs,
                                    const std::vector<double>& mean) {
    check_same_shape(pirs);
    if (pirs.size() < 2) throw DegeneracyError("sigma needs at least 2 PIRs");
    const std::size_t len = pirs.front().size();
    if (mean.size() != len) throw ValidationError("mean length mismatch");
    std::vector<double> var(len, 0.0);
    for (const auto& p : pirs) {
        const auto& x = p.samples();
        for (std::size_t j = 0; j < len; ++j) {
            const double d = x[j] - mean[j];
            var[j] += d * d;
        }
    }
    const double inv = 1.0 / static_cast<double>(pirs.size() - 1);
    for (auto& v : var) v = std::sqrt(v * inv);
    return var;
}

double max_standardized_deviation(const Pir& x, const std::vector<double>& mean,
                                  const std::vector<double>& sigma, double epsilon) {
    if (x.size() != mean.size() || x.size() != sigma.size()) {
        throw ValidationError("max_standardized_deviation: length mismatch");
    }
    if (epsilon < 0) throw ValidationError("epsilon must be nonnegative");
    const auto& xs = x.samples();
    double worst = 0.0;
    for (std::size_t j = 0; j < xs.size(); ++j) {
        const double num = std::abs(xs[j] - mean[j]);
        const double den = std::max(sigma[j], epsilon);
        double dev;
        if (den == 0.0) {
            dev = num == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
        } else {
            dev = num / den;
        }
        worst = std::max(worst, dev);
    }
    return worst;
}

namespace detail {

PirMatrix pack_pirs(const FrfSet& set, double sample_rate) {
    PirMatrix m;
    m.n = set.size();
    for (std::size_t i = 0; i < set.size(); ++i) {
        Pir p = pir_from_frf(set.member(i), sample_rate);
        if (i == 0) {
            m.len = p.size();
            m.sample_rate = p.sample_rate();
            m.period = p.period();
            m.data.reserve(m.n * m.len);
        }
        m.data.insert(m.data.end(), p.samples().begin(), p.samples().end());
    }
    return m;
}

double select_constant(const std::vector<double>& sorted_values, double alpha) {
    const std::size_t count = sorted_values.size();
    if (count == 0) throw DegeneracyError("no statistics collected");
    const double target = alpha / 100.0;
    // nudge guards against 0.8*10 -> 8.000000000000002-style ceil overshoot
    auto k = static_cast<std::size_t>(
        std::ceil(target * static_cast<double>(count) - 1e-9));
    k = std::clamp<std::size_t>(k, 1, count);
    return sorted_values[k - 1];
}

ConstantEstimate bootstrap_constant(const PirMatrix& pirs, BandKind kind, double alpha,
                                    const ResamplePlan& plan, unsigned threads,
                                    bool need_histogram) {
    if (pirs.n < 3) {
        throw DegeneracyError("band estimation needs at least 3 members, got " +
                              std::to_string(pirs.n));
    }
    if (!(alpha > 50.0 && alpha < 100.0)) {
        std::ostringstream os;
        os << "alpha must be in (50, 100), got " << alpha;
        throw ValidationError(os.str());
    }
    if (plan.sample_count != pirs.n) {
        throw ValidationError("resample plan sample count does not match the set size");
    }

    const std::size_t n = pirs.n;
    const std::size_t len = pirs.len;
    const std::size_t n_rep = plan.replicates;
    const double inv_n = 1.0 / static_cast<double>(n);
    const double inv_nm1 = 1.0 / static_cast<double>(n - 1);

    double eps = 1e-12 * global_abs_max(pirs.data.data(), pirs.data.size());
    if (eps <= 0.0) eps = std::numeric_limits<double>::min();

    // original mean, needed by the confidence statistic
    std::vector<double> mean0(len, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const double* row = pirs.row(i);
        for (std::size_t j = 0; j < len; ++j) mean0[j] += row[j];
    }
    for (auto& v : mean0) v *= inv_n;

    const bool prediction = kind == BandKind::prediction;
    const std::size_t per_rep = prediction ? n : 1;
    std::vector<double> stats(n_rep * per_rep);
    std::atomic<std::uint64_t> degenerate{0};

    parallel_chunks(0, n_rep, threads, [&](std::size_t b0, std::size_t b1) {
        std::vector<double> counts(n);
        std::vector<std::uint32_t> drawn;
        drawn.reserve(n);
        std::vector<double> mean_buf(len), sumsq_buf(len);
        double* __restrict mean = mean_buf.data();
        double* __restrict inv_sig = sumsq_buf.data(); // reused after the sweep
        const double* __restrict mean_orig = mean0.data();
        std::uint64_t local_degen = 0;

        for (std::size_t b = b0; b < b1; ++b) {
            // draws collapse to multiplicity weights: only ~63% of members
            // are distinct in a typical replicate, so the sweeps shrink
            Rng rng(plan.seed, b);
            std::fill(counts.begin(), counts.end(), 0.0);
            drawn.clear();
            for (std::size_t i = 0; i < n; ++i) {
                const auto v = static_cast<std::uint32_t>(rng.next_below(n));
                if (counts[v] == 0.0) drawn.push_back(v);
                counts[v] += 1.0;
            }

            std::fill_n(mean, len, 0.0);
            for (const std::uint32_t r : drawn) {
                const double w = counts[r];
                const double* __restrict row = pirs.row(r);
                for (std::size_t j = 0; j < len; ++j) mean[j] += w * row[j];
            }
            for (std::size_t j = 0; j < len; ++j) mean[j] *= inv_n;

            // two-pass variance: a replicate drawing one member n times
            // cancels to the ulp floor, which stays below the epsilon guard;
            // that keeps the guarded statistics identical between routes and
            // scale-equivariant
            std::fill_n(inv_sig, len, 0.0);
            for (const std::uint32_t r : drawn) {
                const double w = counts[r];
                const double* __restrict row = pirs.row(r);
                for (std::size_t j = 0; j < len; ++j) {
                    const double d = row[j] - mean[j];
                    inv_sig[j] += w * d * d;
                }
            }
            bool degen = false;
            for (std::size_t j = 0; j < len; ++j) {
                const double s = std::sqrt(inv_sig[j] * inv_nm1);
                if (s < eps) degen = true;
                inv_sig[j] = 1.0 / std::max(s, eps);
            }
            if (degen) ++local_degen;

            if (prediction) {
                for (std::size_t i = 0; i < n; ++i) {
                    const double* __restrict row = pirs.row(i);
                    double worst = 0.0;
                    for (std::size_t j = 0; j < len; ++j) {
                        const double dev = std::abs(row[j] - mean[j]) * inv_sig[j];
                        worst = std::max(worst, dev);
                    }
                    stats[b * n + i] = worst;
                }
            } else {
                double worst = 0.0;
                for (std::size_t j = 0; j < len; ++j) {
                    const double dev = std::abs(mean_orig[j] - mean[j]) * inv_sig[j];
                    worst = std::max(worst, dev);
                }
                stats[b] = worst;
            }
        }
        degenerate.fetch_add(local_degen, std::memory_order_relaxed);
    });

    ConstantEstimate est;
    if (need_histogram) {
        std::sort(stats.begin(), stats.end());
        est.constant = select_constant(stats, alpha);
        est.histogram_values = std::move(stats);
    } else {
        auto k = static_cast<std::size_t>(
            std::ceil(alpha / 100.0 * static_cast<double>(stats.size()) - 1e-9));
        k = std::clamp<std::size_t>(k, 1, stats.size());
        std::nth_element(stats.begin(), stats.begin() + (k - 1), stats.end());
        est.constant = stats[k - 1];
    }
    est.degenerate_replicates = degenerate.load();
    est.epsilon = eps;
    return est;
}

} // namespace detail

ConstantEstimate prediction_constant(const FrfSet& set, double alpha,
                                     const ResamplePlan& plan, double sample_rate,
                                     unsigned threads) {
    return detail::bootstrap_constant(detail::pack_pirs(set, sample_rate),
                                      BandKind::prediction, alpha, plan, threads);
}

ConstantEstimate confidence_constant(const FrfSet& set, double alpha,
                                     const ResamplePlan& plan, double sample_rate,
                                     unsigned threads) {
    return detail::bootstrap_constant(detail::pack_pirs(set, sample_rate),
                                      BandKind::confidence, alpha, plan, threads);
}

BandEstimate make_band(BandKind kind, std::vector<double> avg, std::vector<double> sigma,
                       double constant, double alpha, std::uint32_t replicates,
                       double sample_rate, std::vector<double> histogram_values,
                       std::uint64_t degenerate_replicates) {
    return BandEstimate(kind, std::move(avg), std::move(sigma), constant, alpha, replicates,
                        std::move(histogram_values), sample_rate, degenerate_replicates);
}

bool band_contains(const BandEstimate& band, const Pir& x) {
    if (band.size() != x.size()) {
        throw ValidationError("band and PIR have different lengths");
    }
    const auto& xs = x.samples();
    for (std::size_t j = 0; j < xs.size(); ++j) {
        if (xs[j] < band.lower()[j] || xs[j] > band.upper()[j]) return false;
    }
    return true;
}

namespace {

BandEstimate band_of(BandKind kind, const FrfSet& set, double alpha,
                     const ResamplePlan& plan, double sample_rate, unsigned threads) {
    const detail::PirMatrix pirs = detail::pack_pirs(set, sample_rate);
    ConstantEstimate est = detail::bootstrap_constant(pirs, kind, alpha, plan, threads);

    std::vector<double> mean(pirs.len, 0.0);
    for (std::size_t i = 0; i < pirs.n; ++i) {
        const double* row = pirs.row(i);
        for (std::size_t j = 0; j < pirs.len; ++j) mean[j] += row[j];
    }
    for (auto& v : mean) v /= static_cast<double>(pirs.n);

    std::vector<double> sigma(pirs.len, 0.0);
    for (std::size_t i = 0; i < pirs.n; ++i) {
        const double* row = pirs.row(i);
        for (std::size_t j = 0; j < pirs.len; ++j) {
            const double d = row[j] - mean[j];
            sigma[j] += d * d;
        }
    }
    for (auto& v : sigma) v = std::sqrt(v / static_cast<double>(pirs.n - 1));

    return BandEstimate(kind, std::move(mean), std::move(sigma), est.constant, alpha,
                        plan.replicates, std::move(est.histogram_values), pirs.sample_rate,
                        est.degenerate_replicates);
}

} // namespace

BandEstimate prediction_band(const FrfSet& set, double alpha, const ResamplePlan& plan,
                             double sample_rate, unsigned threads) {
    return band_of(BandKind::prediction, set, alpha, plan, sample_rate, threads);
}

BandEstimate confidence_band(const FrfSet& set, double alpha, const ResamplePlan& plan,
                             double sample_rate, unsigned threads) {
    return band_of(BandKind::confidence, set, alpha, plan, sample_rate, threads);
}

PairedTestResult paired_h0_test(const FrfSet& set_a, const FrfSet& set_b, double alpha,
                                const ResamplePlan& plan, double sample_rate,
                                unsigned threads) {
    if (set_a.size() != set_b.size()) {
        throw ValidationError("paired test needs equally sized sets");
    }
    if (set_a.grid() != set_b.grid()) {
        throw ValidationError("paired test needs sets on the same grid");
    }
    std::vector<Frf> diffs;
    diffs.reserve(set_a.size());
    for (std::size_t i = 0; i < set_a.size(); ++i) {
        std::vector<Complex> d(set_a.grid().size());
        for (std::size_t k = 0; k < d.size(); ++k) {
            d[k] = set_a.member(i).values()[k] - set_b.member(i).values()[k];
        }
        diffs.emplace_back(set_a.grid_ptr(), std::move(d));
    }
    FrfSet diff_set(diffs);
    BandEstimate band = confidence_band(diff_set, alpha, plan, sample_rate, threads);
    bool reject = false;
    for (std::size_t j = 0; j < band.size(); ++j) {
        if (band.lower()[j] > 0.0 || band.upper()[j] < 0.0) {
            reject = true;
            break;
        }
    }
    return PairedTestResult{reject, std::move(band), std::move(diffs)};
}

} // namespace frfbands
