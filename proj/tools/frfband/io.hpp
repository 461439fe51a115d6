#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "frfbands/analysis.hpp"
#include "frfbands/bootstrap.hpp"
#include "frfbands/estimation.hpp"
#include "frfbands/types.hpp"

namespace frfband_io {

using nlohmann::json;

/// Raw FRF file contents before set validation.
struct FrfFile {
    frfbands::FrequencyGrid grid;
    std::vector<std::vector<frfbands::Complex>> members;
};

/// Exact text form of a rational frequency: plain decimal when the
/// denominator divides a power of ten, "num/den" otherwise.
std::string frequency_text(const frfbands::Rational& f);

/// Accepts plain decimals and "num/den" fractions.
frfbands::Rational parse_frequency(const std::string& text);

// ---- FRF container formats -------------------------------------------------

/// Block CSV: a `freq,re,im` header, members separated by `# member k`
/// comment lines, frequencies carried in the file.
void write_frf_csv(const std::string& path, const frfbands::FrfSet& set);

/// Wide CSV: one `member,f1_re,f1_im,...` header and a row per member;
/// frequencies live outside the file (grid override or the standard grid).
void write_frf_csv_wide(const std::string& path, const frfbands::FrfSet& set);

/// JSON: {"phi": [...], "members": [[[re, im], ...], ...]}.
void write_frf_json(const std::string& path, const frfbands::FrfSet& set);

/// Reads any of the three formats (sniffed from the first line or a JSON
/// brace). `grid_override` replaces the file's frequencies and is required
/// for wide CSV unless the member length matches the standard 11-point grid.
FrfFile read_frf_file(const std::string& path,
                      const std::optional<frfbands::FrequencyGrid>& grid_override);

// ---- PIR and time-series formats -------------------------------------------

struct PirFile {
    double sample_rate = 0.0;
    double period = 0.0;
    std::vector<std::vector<double>> pirs;
};

void write_pir_json(const std::string& path, const std::vector<frfbands::Pir>& pirs);
PirFile read_pir_json(const std::string& path);

/// Single-column (or named-column) CSV with a header row; the sample rate
/// comes from `rate_text` or a sidecar `<path>.json` with {"sample_rate": ...}.
frfbands::TimeSeries read_time_series_csv(const std::string& path,
                                          const std::optional<std::string>& rate_text,
                                          const std::optional<std::string>& column);

/// {"bands": [[raw indices...], ...]} against the excited-frequency list.
frfbands::BandSpec read_band_spec_json(const std::string& path,
                                       const std::vector<frfbands::Rational>& raw_freqs);

// ---- result serialization ---------------------------------------------------

json band_to_json(const frfbands::BandEstimate& band, std::uint64_t seed,
                  const std::string& inputs_hash, bool include_histogram = true);

json loo_to_json(const frfbands::LooResult& result, double alpha, std::uint32_t replicates,
                 std::uint64_t seed, const std::string& inputs_hash);

json paired_to_json(const frfbands::PairedTestResult& result,
                    const frfbands::ResidualSpectrum& residual_spec,
                    const std::vector<double>& residual_samples,
                    const frfbands::Frf& mean_difference, std::uint64_t seed,
                    const std::string& inputs_hash);

/// FNV-1a over the file bytes, "fnv1a:<16 hex digits>"; stable provenance
/// fingerprint for result files.
std::string hash_file(const std::string& path);

void write_text(const std::string& path, const std::string& text);
std::string read_text(const std::string& path);

/// Serialize with a stable layout (2-space indent, sorted keys, shortest
/// round-trip numbers); identical inputs give identical bytes.
std::string dump_json(const json& j);

} // namespace frfband_io
