#include "frfbands/analysis.hpp"

#include <cmath>

#include "frfbands/errors.hpp"
#include "frfbands/parallel.hpp"
#include "frfbands/pir_transform.hpp"
#include "frfbands/rng.hpp"

namespace frfbands {

Pir residual(const Pir& x, const BandEstimate& band) {
    if (x.size() != band.size()) throw ValidationError("residual: length mismatch");
    const auto& xs = x.samples();
    std::vector<double> r(xs.size(), 0.0);
    for (std::size_t j = 0; j < xs.size(); ++j) {
        if (xs[j] > band.upper()[j]) {
            r[j] = xs[j] - band.upper()[j];
        } else if (xs[j] < band.lower()[j]) {
            r[j] = xs[j] - band.lower()[j];
        }
    }
    return Pir(std::move(r), x.sample_rate(), x.period());
}

ResidualSpectrum residual_spectrum(const Pir& r, const FrequencyGrid& grid) {
    auto grid_ptr = std::make_shared<const FrequencyGrid>(grid);
    const Frf f = frf_from_pir(r, grid_ptr);
    ResidualSpectrum spec;
    spec.freqs = grid.freqs();
    spec.values = f.values();
    spec.magnitudes.reserve(spec.values.size());
    for (const auto& z : spec.values) spec.magnitudes.push_back(std::abs(z));
    return spec;
}

Frf mean_difference_spectrum(const FrfSet& set_a, const FrfSet& set_b) {
    if (set_a.grid() != set_b.grid()) {
        throw ValidationError("mean difference needs sets on the same grid");
    }
    const std::size_t m = set_a.grid().size();
    std::vector<Complex> diff(m, Complex(0.0, 0.0));
    for (const auto& frf : set_a.members()) {
        for (std::size_t k = 0; k < m; ++k) diff[k] += frf.values()[k];
    }
    for (auto& z : diff) z /= static_cast<double>(set_a.size());
    std::vector<Complex> mean_b(m, Complex(0.0, 0.0));
    for (const auto& frf : set_b.members()) {
        for (std::size_t k = 0; k < m; ++k) mean_b[k] += frf.values()[k];
    }
    for (std::size_t k = 0; k < m; ++k) diff[k] -= mean_b[k] / static_cast<double>(set_b.size());
    return Frf(set_a.grid_ptr(), std::move(diff));
}

LooResult loo_coverage(const FrfSet& set, double alpha, const ResamplePlan& plan,
                       double sample_rate, unsigned threads) {
    const std::size_t n = set.size();
    if (n < 4) throw DegeneracyError("leave-one-out needs at least 4 members");
    if (plan.sample_count != n) {
        throw ValidationError("resample plan sample count does not match the set size");
    }

    const detail::PirMatrix all = detail::pack_pirs(set, sample_rate);
    std::vector<char> contained(n, 0);

    // folds are embarrassingly parallel; each fold's bootstrap runs serial
    parallel_chunks(0, n, threads, [&](std::size_t i0, std::size_t i1) {
        for (std::size_t i = i0; i < i1; ++i) {
            detail::PirMatrix fold;
            fold.n = n - 1;
            fold.len = all.len;
            fold.sample_rate = all.sample_rate;
            fold.period = all.period;
            fold.data.reserve(fold.n * fold.len);
            for (std::size_t k = 0; k < n; ++k) {
                if (k == i) continue;
                fold.data.insert(fold.data.end(), all.row(k), all.row(k) + all.len);
            }

            const ResamplePlan fold_plan(derive_seed(plan.seed, i), plan.replicates,
                                         static_cast<std::uint32_t>(n - 1));
            const ConstantEstimate est = detail::bootstrap_constant(
                fold, BandKind::prediction, alpha, fold_plan, 1, /*need_histogram=*/false);

            std::vector<double> mean(fold.len, 0.0), sigma(fold.len, 0.0);
            for (std::size_t k = 0; k < fold.n; ++k) {
                const double* row = fold.row(k);
                for (std::size_t j = 0; j < fold.len; ++j) mean[j] += row[j];
            }
            for (auto& v : mean) v /= static_cast<double>(fold.n);
            for (std::size_t k = 0; k < fold.n; ++k) {
                const double* row = fold.row(k);
                for (std::size_t j = 0; j < fold.len; ++j) {
                    const double d = row[j] - mean[j];
                    sigma[j] += d * d;
                }
            }
            for (auto& v : sigma) v = std::sqrt(v / static_cast<double>(fold.n - 1));

            const double* held = all.row(i);
            bool inside = true;
            for (std::size_t j = 0; j < fold.len; ++j) {
                const double half_width = est.constant * sigma[j];
                if (held[j] < mean[j] - half_width || held[j] > mean[j] + half_width) {
                    inside = false;
                    break;
                }
            }
            contained[i] = inside ? 1 : 0;
        }
    });

    LooResult result;
    result.contained.assign(contained.begin(), contained.end());
    std::size_t covered = 0;
    for (char c : contained) covered += c;
    result.coverage = static_cast<double>(covered) / static_cast<double>(n);
    return result;
}

} // namespace frfbands
