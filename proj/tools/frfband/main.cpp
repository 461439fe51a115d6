#include <cstdint>
#include <iostream>
#include <memory>
#include <optional>
#include <random>
#include <string>

#include <CLI11.hpp>

#include "frfband/io.hpp"
#include "frfband/svg.hpp"
#include "frfbands/analysis.hpp"
#include "frfbands/bootstrap.hpp"
#include "frfbands/errors.hpp"
#include "frfbands/estimation.hpp"
#include "frfbands/pir_transform.hpp"
#include "frfbands/synthetic.hpp"

namespace {

using namespace frfbands;
using frfband_io::json;

struct BandArgs {
    std::string input;
    std::string phi;
    double alpha = 95.0;
    std::uint32_t replicates = 10'000;
    std::optional<std::uint64_t> seed;
    double sample_rate = 0.0; // 0 = ten times the highest frequency
    std::string out;
    unsigned threads = 0;
    bool omit_histogram = false;
    std::string test_file; // prediction band: members to test for membership
};

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& seed) {
    if (seed) return *seed;
    // no seed given: pick one and report it in the output
    std::random_device rd;
    return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

std::optional<FrequencyGrid> parse_phi(const std::string& phi) {
    if (phi.empty()) return std::nullopt;
    return FrequencyGrid::from_decimal_text(phi);
}

FrfSet build_set(const std::string& path, const frfband_io::FrfFile& file,
                 bool allow_single) {
    auto diag = validate_frf_set(file.grid, file.members);
    if (allow_single && file.members.size() == 1) {
        diag = validate_frf_set(file.grid, {file.members[0], file.members[0]});
    }
    if (!diag.ok) {
        std::string msg = "invalid FRF set in '" + path + "':";
        for (const auto& v : diag.violations) msg += "\n  - " + v;
        throw ValidationError(msg);
    }
    auto grid = std::make_shared<const FrequencyGrid>(file.grid);
    std::vector<Frf> members;
    members.reserve(file.members.size());
    for (const auto& values : file.members) members.emplace_back(grid, values);
    return FrfSet(std::move(members));
}

FrfSet load_set(const std::string& path, const std::string& phi) {
    return build_set(path, frfband_io::read_frf_file(path, parse_phi(phi)), false);
}

/// Transform utilities accept single-member files; set statistics do not.
FrfSet load_set_allow_single(const std::string& path, const std::string& phi) {
    return build_set(path, frfband_io::read_frf_file(path, parse_phi(phi)), true);
}

void emit(const std::string& out, const std::string& text) {
    if (out.empty()) {
        std::cout << text;
    } else {
        frfband_io::write_text(out, text);
    }
}

double effective_rate(const FrfSet& set, double requested) {
    return requested > 0.0 ? requested : default_sample_rate(set.grid());
}

int run_band(BandKind kind, const BandArgs& args) {
    const FrfSet set = load_set(args.input, args.phi);
    const double rate = effective_rate(set, args.sample_rate);
    const std::uint64_t seed = resolve_seed(args.seed);
    const ResamplePlan plan(seed, args.replicates, static_cast<std::uint32_t>(set.size()));

    const BandEstimate band = kind == BandKind::prediction
                                  ? prediction_band(set, args.alpha, plan, rate, args.threads)
                                  : confidence_band(set, args.alpha, plan, rate, args.threads);

    json j = frfband_io::band_to_json(band, seed, frfband_io::hash_file(args.input),
                                      !args.omit_histogram);
    if (!args.test_file.empty()) {
        const FrfSet tests = load_set(args.test_file, args.phi);
        if (tests.grid() != set.grid()) {
            throw ValidationError("test FRFs are on a different grid");
        }
        json contains = json::array();
        for (const auto& frf : tests.members()) {
            contains.push_back(band_contains(band, pir_from_frf(frf, rate)));
        }
        j["contains"] = std::move(contains);
    }
    emit(args.out, frfband_io::dump_json(j));
    return 0;
}

int run_paired(const std::string& file_a, const std::string& file_b, const BandArgs& args) {
    const FrfSet set_a = load_set(file_a, args.phi);
    const FrfSet set_b = load_set(file_b, args.phi);
    const double rate = effective_rate(set_a, args.sample_rate);
    const std::uint64_t seed = resolve_seed(args.seed);
    const ResamplePlan plan(seed, args.replicates, static_cast<std::uint32_t>(set_a.size()));

    const PairedTestResult result = paired_h0_test(set_a, set_b, args.alpha, plan, rate,
                                                   args.threads);

    // residual of the zero function against the band: the part of H0 that
    // exits the confidence region
    const std::size_t len = result.band.size();
    const Pir zero(std::vector<double>(len, 0.0), result.band.sample_rate(),
                   static_cast<double>(len) / result.band.sample_rate());
    const Pir res = residual(zero, result.band);
    const ResidualSpectrum spec = residual_spectrum(res, set_a.grid());
    const Frf diff = mean_difference_spectrum(set_a, set_b);

    const std::string hash =
        frfband_io::hash_file(file_a) + "+" + frfband_io::hash_file(file_b);
    json j = frfband_io::paired_to_json(result, spec, res.samples(), diff, seed, hash);
    if (args.omit_histogram) j["band"].erase("histogram_values");
    emit(args.out, frfband_io::dump_json(j));
    return 0;
}

int run_pir(const std::string& input, const std::string& phi, double sample_rate,
            std::int64_t member, const std::string& out) {
    const FrfSet set = load_set_allow_single(input, phi);
    const double rate = sample_rate > 0.0 ? sample_rate : default_sample_rate(set.grid());
    std::vector<Pir> pirs;
    if (member >= 0) {
        if (static_cast<std::size_t>(member) >= set.size()) {
            throw ValidationError("member index out of range");
        }
        pirs.push_back(pir_from_frf(set.member(static_cast<std::size_t>(member)), rate));
    } else {
        pirs = pirs_from_set(set, rate);
    }
    if (out.empty()) throw ValidationError("pir: --out is required");
    frfband_io::write_pir_json(out, pirs);
    return 0;
}

int run_spectrum(const std::string& input, const std::string& out) {
    const frfband_io::PirFile file = frfband_io::read_pir_json(input);
    json j;
    j["members"] = json::array();
    bool first = true;
    for (const auto& samples : file.pirs) {
        const Pir pir(samples, file.sample_rate, file.period);
        const FullSpectrum spec = full_spectrum(pir);
        if (first) {
            j["freqs"] = spec.freqs;
            first = false;
        }
        json re = json::array(), im = json::array(), mag = json::array();
        for (const auto& v : spec.values) {
            re.push_back(v.real());
            im.push_back(v.imag());
            mag.push_back(std::abs(v));
        }
        j["members"].push_back(
            {{"re", std::move(re)}, {"im", std::move(im)}, {"magnitude", std::move(mag)}});
    }
    emit(out, frfband_io::dump_json(j));
    return 0;
}

int run_estimate(const std::string& stim_path, const std::string& resp_path,
                 std::size_t cycle_length, bool discard_first, const std::string& rate,
                 const std::string& column, const std::string& bands_file,
                 const std::string& phi, const std::string& out) {
    const auto rate_opt = rate.empty() ? std::nullopt : std::optional<std::string>(rate);
    const auto col_opt = column.empty() ? std::nullopt : std::optional<std::string>(column);
    const TimeSeries stim = frfband_io::read_time_series_csv(stim_path, rate_opt, col_opt);
    const TimeSeries resp = frfband_io::read_time_series_csv(resp_path, rate_opt, col_opt);

    const RawTransfer raw = estimate_raw_transfer(stim, resp, cycle_length, discard_first);
    BandSpec spec = bands_file.empty()
                        ? default_band_spec(raw, parse_phi(phi).value_or(
                                                     FrequencyGrid::standard_posture_grid()))
                        : frfband_io::read_band_spec_json(bands_file, raw.freq_rationals);
    const Frf frf = band_average(raw, spec);
    if (out.empty()) throw ValidationError("estimate: --out is required");
    frfband_io::write_frf_csv(out, FrfSet({frf}));
    return 0;
}

int run_synth(double cutoff, double sigma, std::uint32_t n,
              const std::optional<std::uint64_t>& seed_opt, const std::string& phi,
              const std::string& noise_mode, const std::string& format,
              const std::string& out) {
    const auto grid = std::make_shared<const FrequencyGrid>(
        parse_phi(phi).value_or(FrequencyGrid::standard_posture_grid()));
    const std::uint64_t seed = resolve_seed(seed_opt);
    const NoiseMode mode = noise_mode == "magnitude" ? NoiseMode::magnitude_preminphase
                                                     : NoiseMode::complex_additive;
    const Frf tpl = lowpass_frf(cutoff, grid);
    const FrfSet set = sample_population(tpl, sigma, n, seed, mode);
    if (out.empty()) throw ValidationError("synth: --out is required");
    if (format == "json") {
        frfband_io::write_frf_json(out, set);
    } else if (format == "wide") {
        frfband_io::write_frf_csv_wide(out, set);
    } else {
        frfband_io::write_frf_csv(out, set);
    }
    std::cerr << "seed " << seed << "\n";
    return 0;
}

int run_loo(const BandArgs& args) {
    const FrfSet set = load_set(args.input, args.phi);
    const double rate = effective_rate(set, args.sample_rate);
    const std::uint64_t seed = resolve_seed(args.seed);
    const ResamplePlan plan(seed, args.replicates, static_cast<std::uint32_t>(set.size()));
    const LooResult result = loo_coverage(set, args.alpha, plan, rate, args.threads);
    emit(args.out, frfband_io::dump_json(frfband_io::loo_to_json(
                       result, args.alpha, args.replicates, seed,
                       frfband_io::hash_file(args.input))));
    return 0;
}

BandEstimate band_from_json(const json& j) {
    std::vector<double> histogram;
    if (j.contains("histogram_values")) {
        histogram = j["histogram_values"].get<std::vector<double>>();
    }
    return BandEstimate(
        j.at("kind").get<std::string>() == "prediction" ? BandKind::prediction
                                                        : BandKind::confidence,
        j.at("avg").get<std::vector<double>>(), j.at("sigma").get<std::vector<double>>(),
        j.at("constant").get<double>(), j.at("alpha").get<double>(),
        j.at("B").get<std::uint32_t>(), std::move(histogram),
        j.at("sample_rate").get<double>(),
        j.value("degenerate_replicates", std::uint64_t{0}));
}

int run_plot(const std::string& input, const std::string& format, const std::string& frf_file,
             const std::string& phi, const std::string& out_prefix) {
    json j;
    try {
        j = json::parse(frfband_io::read_text(input));
    } catch (const json::exception& e) {
        throw ValidationError(std::string("bad result JSON: ") + e.what());
    }
    const json& band_json = j.contains("band") ? j["band"] : j;
    BandEstimate band = [&] {
        try {
            return band_from_json(band_json);
        } catch (const json::exception& e) {
            throw ValidationError(std::string("result JSON is not a band result: ") + e.what());
        }
    }();

    std::vector<std::vector<double>> overlays;
    if (!frf_file.empty()) {
        const FrfSet set = load_set_allow_single(frf_file, phi);
        for (const auto& pir : pirs_from_set(set, band.sample_rate())) {
            overlays.push_back(pir.samples());
        }
    }

    const std::string prefix = out_prefix.empty() ? "frfband_plot" : out_prefix;
    if (format == "csv") {
        frfband_io::write_text(prefix + "_band.csv", frfband_io::band_csv(band));
        if (!band.histogram_values().empty()) {
            frfband_io::write_text(prefix + "_chist.csv",
                                   frfband_io::histogram_csv(band.histogram_values()));
        }
    } else {
        frfband_io::write_text(prefix + "_band.svg", frfband_io::band_svg(band, overlays));
        if (!band.histogram_values().empty()) {
            frfband_io::write_text(prefix + "_chist.svg",
                                   frfband_io::histogram_svg(band.histogram_values(),
                                                             band.alpha(), band.constant()));
        }
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"bootstrap prediction and confidence bands for frequency response functions"};
    app.require_subcommand(1);

    const auto alpha_check = CLI::Validator(
        [](std::string& s) -> std::string {
            try {
                const double v = std::stod(s);
                if (!(v > 50.0 && v < 100.0)) return "alpha must be in (50, 100)";
            } catch (const std::exception&) {
                return "alpha must be a number";
            }
            return {};
        },
        "ALPHA in (50, 100)");

    int rc = 0;
    BandArgs band_args;
    std::string paired_b;

    auto add_band_options = [&](CLI::App* cmd, bool with_histogram = true) {
        cmd->add_option("--phi", band_args.phi,
                        "comma-separated decimal frequencies overriding the file grid");
        cmd->add_option("--alpha", band_args.alpha, "confidence level, percent")
            ->check(alpha_check)
            ->capture_default_str();
        cmd->add_option("-B,--replicates", band_args.replicates, "bootstrap replicates")
            ->capture_default_str();
        cmd->add_option("--seed", band_args.seed, "RNG seed (random and reported if omitted)");
        cmd->add_option("--sample-rate", band_args.sample_rate,
                        "PIR sample rate in Hz (default: 10 × highest frequency)");
        cmd->add_option("-o,--out", band_args.out, "output path (default: stdout)");
        cmd->add_option("--threads", band_args.threads, "worker thread cap (0 = hardware)");
        if (with_histogram) {
            cmd->add_flag("--omit-histogram", band_args.omit_histogram,
                          "drop histogram_values from the output");
        }
    };

    auto* conf = app.add_subcommand("confidence-band",
                                    "simultaneous confidence band for the mean PIR");
    conf->add_option("frf_file", band_args.input, "FRF set (CSV or JSON)")->required();
    add_band_options(conf);
    conf->callback([&] { rc = run_band(BandKind::confidence, band_args); });

    auto* pred = app.add_subcommand("prediction-band",
                                    "simultaneous prediction band for a new PIR");
    pred->add_option("frf_file", band_args.input, "FRF set (CSV or JSON)")->required();
    add_band_options(pred);
    pred->add_option("--test", band_args.test_file,
                     "FRF file whose members are tested for band membership");
    pred->callback([&] { rc = run_band(BandKind::prediction, band_args); });

    auto* paired = app.add_subcommand("paired-test",
                                      "H0 test on paired sets via the confidence band of "
                                      "their differences");
    paired->add_option("frf_file_a", band_args.input, "first FRF set")->required();
    paired->add_option("frf_file_b", paired_b, "second FRF set, matched by row")->required();
    add_band_options(paired);
    paired->callback([&] { rc = run_paired(band_args.input, paired_b, band_args); });

    std::string pir_phi, pir_out;
    double pir_rate = 0.0;
    std::int64_t pir_member = -1;
    std::string pir_input;
    auto* pir_cmd = app.add_subcommand("pir", "transform FRFs to pseudo-impulse responses");
    pir_cmd->add_option("frf_file", pir_input)->required();
    pir_cmd->add_option("--phi", pir_phi, "grid override");
    pir_cmd->add_option("--sample-rate", pir_rate, "Hz (default: 10 × highest frequency)");
    pir_cmd->add_option("--member", pir_member, "transform a single member");
    pir_cmd->add_option("-o,--out", pir_out, "output PIR JSON")->required();
    pir_cmd->callback([&] { rc = run_pir(pir_input, pir_phi, pir_rate, pir_member, pir_out); });

    std::string spec_input, spec_out;
    auto* spec_cmd = app.add_subcommand("spectrum", "full DFT of PIRs over all bins");
    spec_cmd->add_option("pir_file", spec_input)->required();
    spec_cmd->add_option("-o,--out", spec_out, "output path (default: stdout)");
    spec_cmd->callback([&] { rc = run_spectrum(spec_input, spec_out); });

    std::string est_stim, est_resp, est_rate, est_column, est_bands, est_phi, est_out;
    std::size_t est_cycle = 0;
    bool est_discard = true;
    auto* est_cmd = app.add_subcommand("estimate",
                                       "estimate an FRF from stimulus/response time series");
    est_cmd->add_option("stimulus_csv", est_stim)->required();
    est_cmd->add_option("response_csv", est_resp)->required();
    est_cmd->add_option("--cycle-length", est_cycle, "samples per stimulus cycle")->required();
    est_cmd->add_flag("--discard-first,!--keep-first", est_discard,
                      "discard the first cycle (transient)");
    est_cmd->add_option("--rate", est_rate, "sample rate as decimal text, e.g. 50");
    est_cmd->add_option("--column", est_column, "CSV column name or index");
    est_cmd->add_option("--bands", est_bands, "explicit band spec JSON");
    est_cmd->add_option("--phi", est_phi, "target grid for the default band layout");
    est_cmd->add_option("-o,--out", est_out, "output FRF CSV")->required();
    est_cmd->callback([&] {
        rc = run_estimate(est_stim, est_resp, est_cycle, est_discard, est_rate, est_column,
                          est_bands, est_phi, est_out);
    });

    double synth_cutoff = 0.4, synth_sigma = 0.5;
    std::uint32_t synth_n = 50;
    std::optional<std::uint64_t> synth_seed;
    std::string synth_phi, synth_mode = "complex", synth_format = "csv", synth_out;
    auto* synth_cmd = app.add_subcommand("synth",
                                         "synthetic low-pass FRF population with minimal phase");
    synth_cmd->add_option("--cutoff", synth_cutoff, "cutoff frequency, Hz")
        ->capture_default_str();
    synth_cmd->add_option("--sigma", synth_sigma, "Gaussian noise per component")
        ->capture_default_str();
    synth_cmd->add_option("--n", synth_n, "population size")->capture_default_str();
    synth_cmd->add_option("--seed", synth_seed, "RNG seed");
    synth_cmd->add_option("--phi", synth_phi, "grid (default: the standard 11 frequencies)");
    synth_cmd->add_option("--noise-mode", synth_mode, "complex | magnitude")
        ->check(CLI::IsMember({"complex", "magnitude"}))
        ->capture_default_str();
    synth_cmd->add_option("--format", synth_format, "csv | wide | json")
        ->check(CLI::IsMember({"csv", "wide", "json"}))
        ->capture_default_str();
    synth_cmd->add_option("-o,--out", synth_out, "output file")->required();
    synth_cmd->callback([&] {
        rc = run_synth(synth_cutoff, synth_sigma, synth_n, synth_seed, synth_phi, synth_mode,
                       synth_format, synth_out);
    });

    auto* loo_cmd = app.add_subcommand("loo",
                                       "leave-one-out coverage of the prediction band");
    loo_cmd->add_option("frf_file", band_args.input)->required();
    add_band_options(loo_cmd, false);
    loo_cmd->callback([&] { rc = run_loo(band_args); });

    std::string plot_input, plot_format = "svg", plot_frfs, plot_phi, plot_prefix;
    auto* plot_cmd = app.add_subcommand("plot", "figure data from a band result JSON");
    plot_cmd->add_option("result_json", plot_input)->required();
    plot_cmd->add_option("--format", plot_format, "svg | csv")
        ->check(CLI::IsMember({"svg", "csv"}))
        ->capture_default_str();
    plot_cmd->add_option("--frf", plot_frfs, "FRF file to overlay as PIR traces");
    plot_cmd->add_option("--phi", plot_phi, "grid override for --frf");
    plot_cmd->add_option("-o,--out", plot_prefix, "output file prefix");
    plot_cmd->callback([&] {
        rc = run_plot(plot_input, plot_format, plot_frfs, plot_phi, plot_prefix);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const frfbands::DegeneracyError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const frfbands::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return rc;
}
