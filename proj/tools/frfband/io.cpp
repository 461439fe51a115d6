#include "frfband/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>

#include "frfbands/errors.hpp"
#include "frfbands/pir_transform.hpp"

namespace frfband_io {

using frfbands::Complex;
using frfbands::FrequencyGrid;
using frfbands::Rational;
using frfbands::ValidationError;

namespace {

std::string shortest(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

double parse_double(const std::string& s, const char* ctx) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ValidationError(std::string("cannot parse number '") + s + "' in " + ctx);
    }
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(item);
    if (!line.empty() && line.back() == sep) out.push_back("");
    return out;
}

std::string trimmed(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

} // namespace

std::string frequency_text(const Rational& f) {
    // decimal when den = 2^a·5^b, fraction text otherwise
    std::int64_t den = f.den;
    int twos = 0, fives = 0;
    while (den % 2 == 0) {
        den /= 2;
        ++twos;
    }
    while (den % 5 == 0) {
        den /= 5;
        ++fives;
    }
    if (den != 1) return f.str(); // "num/den"
    const int digits = std::max(twos, fives);
    if (digits == 0) return std::to_string(f.num);
    // scale to num·10^digits / den; den divides 10^digits exactly
    __int128 scaled = f.num;
    for (int i = 0; i < digits; ++i) scaled *= 10;
    scaled /= f.den;
    std::string body = std::to_string(static_cast<long long>(scaled));
    while (body.size() <= static_cast<std::size_t>(digits)) body.insert(body.begin(), '0');
    body.insert(body.end() - digits, '.');
    return body;
}

Rational parse_frequency(const std::string& text) {
    const auto slash = text.find('/');
    if (slash == std::string::npos) return frfbands::parse_decimal(text);
    const std::string num = trimmed(text.substr(0, slash));
    const std::string den = trimmed(text.substr(slash + 1));
    try {
        return Rational(std::stoll(num), std::stoll(den));
    } catch (const std::exception&) {
        throw ValidationError("cannot parse frequency '" + text + "'");
    }
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot open '" + path + "' for writing");
    out << text;
    if (!out) throw ValidationError("failed writing '" + path + "'");
}

std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string dump_json(const json& j) { return j.dump(2) + "\n"; }

void write_frf_csv(const std::string& path, const frfbands::FrfSet& set) {
    std::ostringstream out;
    out << "freq,re,im\n";
    const auto& rationals = set.grid().rationals();
    for (std::size_t i = 0; i < set.size(); ++i) {
        out << "# member " << i << "\n";
        const auto& values = set.member(i).values();
        for (std::size_t k = 0; k < values.size(); ++k) {
            out << frequency_text(rationals[k]) << ',' << shortest(values[k].real()) << ','
                << shortest(values[k].imag()) << "\n";
        }
    }
    write_text(path, out.str());
}

void write_frf_csv_wide(const std::string& path, const frfbands::FrfSet& set) {
    std::ostringstream out;
    out << "member";
    for (std::size_t k = 1; k <= set.grid().size(); ++k) {
        out << ",f" << k << "_re,f" << k << "_im";
    }
    out << "\n";
    for (std::size_t i = 0; i < set.size(); ++i) {
        out << i;
        for (const auto& v : set.member(i).values()) {
            out << ',' << shortest(v.real()) << ',' << shortest(v.imag());
        }
        out << "\n";
    }
    write_text(path, out.str());
}

void write_frf_json(const std::string& path, const frfbands::FrfSet& set) {
    json j;
    j["phi"] = json::array();
    for (const auto& f : set.grid().rationals()) {
        if (f.den == 1 || frequency_text(f).find('/') == std::string::npos) {
            j["phi"].push_back(json::parse(frequency_text(f)));
        } else {
            j["phi"].push_back(frequency_text(f)); // fraction as string
        }
    }
    j["members"] = json::array();
    for (const auto& m : set.members()) {
        json member = json::array();
        for (const auto& v : m.values()) member.push_back({v.real(), v.imag()});
        j["members"].push_back(std::move(member));
    }
    write_text(path, dump_json(j));
}

namespace {

FrfFile read_frf_json_text(const std::string& text,
                           const std::optional<FrequencyGrid>& grid_override) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ValidationError(std::string("bad FRF JSON: ") + e.what());
    }
    if (!j.contains("members") || !j["members"].is_array()) {
        throw ValidationError("FRF JSON needs a 'members' array");
    }
    std::optional<FrequencyGrid> grid = grid_override;
    if (!grid) {
        if (!j.contains("phi") || !j["phi"].is_array() || j["phi"].empty()) {
            throw ValidationError("FRF JSON needs a nonempty 'phi' array");
        }
        std::vector<Rational> freqs;
        for (const auto& f : j["phi"]) {
            // numbers re-serialize to their shortest decimal text, which is
            // exactly what the user wrote for any decimal grid value
            freqs.push_back(parse_frequency(f.is_string() ? f.get<std::string>() : f.dump()));
        }
        grid = FrequencyGrid::from_rationals(std::move(freqs));
    }
    FrfFile file{*grid, {}};
    for (const auto& m : j["members"]) {
        std::vector<Complex> values;
        for (const auto& v : m) {
            if (!v.is_array() || v.size() != 2) {
                throw ValidationError("FRF JSON member values must be [re, im] pairs");
            }
            values.emplace_back(v[0].get<double>(), v[1].get<double>());
        }
        file.members.push_back(std::move(values));
    }
    return file;
}

FrfFile read_frf_csv_block(const std::vector<std::string>& lines,
                           const std::optional<FrequencyGrid>& grid_override) {
    std::vector<std::vector<Complex>> members;
    std::vector<std::string> freq_texts;
    std::vector<std::string> first_freq_texts;
    for (std::size_t li = 1; li < lines.size(); ++li) {
        const std::string line = trimmed(lines[li]);
        if (line.empty()) continue;
        if (line[0] == '#') {
            if (!members.empty() && members.back().empty()) continue;
            if (!members.empty() && first_freq_texts.empty()) {
                first_freq_texts = freq_texts;
            }
            if (!members.empty() && !freq_texts.empty() && !first_freq_texts.empty() &&
                freq_texts != first_freq_texts) {
                throw ValidationError("FRF CSV members disagree on frequencies");
            }
            members.emplace_back();
            freq_texts.clear();
            continue;
        }
        if (members.empty()) members.emplace_back();
        const auto fields = split(line, ',');
        if (fields.size() != 3) {
            throw ValidationError("FRF CSV rows need freq,re,im (line " +
                                  std::to_string(li + 1) + ")");
        }
        freq_texts.push_back(trimmed(fields[0]));
        members.back().emplace_back(parse_double(fields[1], "FRF CSV"),
                                    parse_double(fields[2], "FRF CSV"));
    }
    if (members.empty() || members.front().empty()) {
        throw ValidationError("FRF CSV contains no members");
    }
    if (!first_freq_texts.empty() && !freq_texts.empty() && freq_texts != first_freq_texts) {
        throw ValidationError("FRF CSV members disagree on frequencies");
    }
    if (first_freq_texts.empty()) first_freq_texts = freq_texts;

    std::optional<FrequencyGrid> grid = grid_override;
    if (!grid) {
        std::vector<Rational> freqs;
        for (const auto& t : first_freq_texts) freqs.push_back(parse_frequency(t));
        grid = FrequencyGrid::from_rationals(std::move(freqs));
    }
    return FrfFile{*grid, std::move(members)};
}

FrfFile read_frf_csv_wide(const std::vector<std::string>& lines,
                          const std::optional<FrequencyGrid>& grid_override) {
    const auto header = split(trimmed(lines[0]), ',');
    if (header.size() < 3 || (header.size() - 1) % 2 != 0) {
        throw ValidationError("wide FRF CSV header must be member,f1_re,f1_im,...");
    }
    const std::size_t m = (header.size() - 1) / 2;
    std::optional<FrequencyGrid> grid = grid_override;
    if (!grid) {
        if (m == 11) {
            grid = FrequencyGrid::standard_posture_grid();
        } else {
            throw ValidationError(
                "wide FRF CSV carries no frequencies; pass an explicit grid (--phi)");
        }
    }
    std::vector<std::vector<Complex>> members;
    for (std::size_t li = 1; li < lines.size(); ++li) {
        const std::string line = trimmed(lines[li]);
        if (line.empty() || line[0] == '#') continue;
        const auto fields = split(line, ',');
        if (fields.size() != header.size()) {
            throw ValidationError("wide FRF CSV row " + std::to_string(li + 1) +
                                  " has the wrong number of fields");
        }
        std::vector<Complex> values;
        values.reserve(m);
        for (std::size_t k = 0; k < m; ++k) {
            values.emplace_back(parse_double(fields[1 + 2 * k], "FRF CSV"),
                                parse_double(fields[2 + 2 * k], "FRF CSV"));
        }
        members.push_back(std::move(values));
    }
    if (members.empty()) throw ValidationError("wide FRF CSV contains no members");
    return FrfFile{*grid, std::move(members)};
}

} // namespace

FrfFile read_frf_file(const std::string& path,
                      const std::optional<FrequencyGrid>& grid_override) {
    const std::string text = read_text(path);
    const auto first_printable = text.find_first_not_of(" \t\r\n");
    if (first_printable == std::string::npos) {
        throw ValidationError("'" + path + "' is empty");
    }
    if (text[first_printable] == '{') return read_frf_json_text(text, grid_override);

    std::vector<std::string> lines = split(text, '\n');
    if (lines.empty()) throw ValidationError("'" + path + "' is empty");
    const std::string header = trimmed(lines[0]);
    if (header.rfind("freq", 0) == 0) return read_frf_csv_block(lines, grid_override);
    if (header.rfind("member", 0) == 0) return read_frf_csv_wide(lines, grid_override);
    throw ValidationError("unrecognized FRF file header: '" + header + "'");
}

void write_pir_json(const std::string& path, const std::vector<frfbands::Pir>& pirs) {
    if (pirs.empty()) throw ValidationError("no PIRs to write");
    json j;
    j["sample_rate"] = pirs.front().sample_rate();
    j["period"] = pirs.front().period();
    json time = json::array();
    for (std::size_t i = 0; i < pirs.front().size(); ++i) time.push_back(pirs.front().time_at(i));
    j["time"] = std::move(time);
    j["pirs"] = json::array();
    for (const auto& p : pirs) j["pirs"].push_back(p.samples());
    write_text(path, dump_json(j));
}

PirFile read_pir_json(const std::string& path) {
    json j;
    try {
        j = json::parse(read_text(path));
    } catch (const json::exception& e) {
        throw ValidationError(std::string("bad PIR JSON: ") + e.what());
    }
    PirFile file;
    try {
        file.sample_rate = j.at("sample_rate").get<double>();
        file.period = j.at("period").get<double>();
        for (const auto& p : j.at("pirs")) {
            file.pirs.push_back(p.get<std::vector<double>>());
        }
    } catch (const json::exception& e) {
        throw ValidationError(std::string("bad PIR JSON: ") + e.what());
    }
    if (file.pirs.empty()) throw ValidationError("PIR JSON contains no signals");
    return file;
}

frfbands::TimeSeries read_time_series_csv(const std::string& path,
                                          const std::optional<std::string>& rate_text,
                                          const std::optional<std::string>& column) {
    const std::vector<std::string> lines = split(read_text(path), '\n');
    if (lines.size() < 2) throw ValidationError("time series CSV needs a header and data");
    const auto header = split(trimmed(lines[0]), ',');
    std::size_t col = 0;
    if (column) {
        bool found = false;
        for (std::size_t i = 0; i < header.size(); ++i) {
            if (trimmed(header[i]) == *column) {
                col = i;
                found = true;
                break;
            }
        }
        if (!found) {
            try {
                col = static_cast<std::size_t>(std::stoul(*column));
            } catch (const std::exception&) {
                throw ValidationError("no column '" + *column + "' in " + path);
            }
            if (col >= header.size()) {
                throw ValidationError("column index " + *column + " out of range");
            }
        }
    }

    std::vector<double> samples;
    for (std::size_t li = 1; li < lines.size(); ++li) {
        const std::string line = trimmed(lines[li]);
        if (line.empty() || line[0] == '#') continue;
        const auto fields = split(line, ',');
        if (col >= fields.size()) {
            throw ValidationError("time series CSV row " + std::to_string(li + 1) +
                                  " is too short");
        }
        samples.push_back(parse_double(fields[col], "time series CSV"));
    }

    std::string rate = rate_text.value_or("");
    if (rate.empty()) {
        // sidecar: <path>.json with {"sample_rate": ...}
        std::ifstream sidecar(path + ".json");
        if (!sidecar) {
            throw ValidationError("no sample rate: pass --rate or provide " + path + ".json");
        }
        json j;
        try {
            sidecar >> j;
            const auto& r = j.at("sample_rate");
            rate = r.is_string() ? r.get<std::string>() : r.dump();
        } catch (const json::exception& e) {
            throw ValidationError(std::string("bad sidecar JSON: ") + e.what());
        }
    }
    return frfbands::TimeSeries(std::move(samples), parse_frequency(rate));
}

frfbands::BandSpec read_band_spec_json(const std::string& path,
                                       const std::vector<Rational>& raw_freqs) {
    json j;
    try {
        j = json::parse(read_text(path));
    } catch (const json::exception& e) {
        throw ValidationError(std::string("bad band spec JSON: ") + e.what());
    }
    if (!j.contains("bands") || !j["bands"].is_array()) {
        throw ValidationError("band spec JSON needs a 'bands' array of index arrays");
    }
    std::vector<std::vector<std::size_t>> bands;
    for (const auto& b : j["bands"]) {
        bands.push_back(b.get<std::vector<std::size_t>>());
    }
    return frfbands::BandSpec(std::move(bands), raw_freqs);
}

json band_to_json(const frfbands::BandEstimate& band, std::uint64_t seed,
                  const std::string& inputs_hash, bool include_histogram) {
    json j;
    j["kind"] = frfbands::to_string(band.kind());
    j["avg"] = band.avg();
    j["sigma"] = band.sigma();
    j["lower"] = band.lower();
    j["upper"] = band.upper();
    j["constant"] = band.constant();
    j["alpha"] = band.alpha();
    j["B"] = band.replicates();
    j["seed"] = seed;
    j["sample_rate"] = band.sample_rate();
    j["degenerate_replicates"] = band.degenerate_replicates();
    if (include_histogram) {
        j["histogram_values"] = band.histogram_values();
    }
    json time = json::array();
    for (std::size_t i = 0; i < band.size(); ++i) {
        time.push_back(static_cast<double>(i) / band.sample_rate());
    }
    j["time_axis"] = std::move(time);
    j["provenance"] = {{"inputs_hash", inputs_hash},
                       {"version", "0.1.0"},
                       {"alpha", band.alpha()},
                       {"B", band.replicates()},
                       {"seed", seed}};
    return j;
}

json loo_to_json(const frfbands::LooResult& result, double alpha, std::uint32_t replicates,
                 std::uint64_t seed, const std::string& inputs_hash) {
    json j;
    j["coverage"] = result.coverage;
    j["contained"] = result.contained;
    j["alpha"] = alpha;
    j["B"] = replicates;
    j["seed"] = seed;
    j["provenance"] = {{"inputs_hash", inputs_hash},
                       {"version", "0.1.0"},
                       {"alpha", alpha},
                       {"B", replicates},
                       {"seed", seed}};
    return j;
}

json paired_to_json(const frfbands::PairedTestResult& result,
                    const frfbands::ResidualSpectrum& residual_spec,
                    const std::vector<double>& residual_samples,
                    const frfbands::Frf& mean_difference, std::uint64_t seed,
                    const std::string& inputs_hash) {
    json j;
    j["reject"] = result.reject;
    j["band"] = band_to_json(result.band, seed, inputs_hash);
    j["residual"] = residual_samples;
    j["residual_spectrum"] = {{"freqs", residual_spec.freqs},
                              {"magnitudes", residual_spec.magnitudes}};
    json re = json::array(), im = json::array();
    for (const auto& v : residual_spec.values) {
        re.push_back(v.real());
        im.push_back(v.imag());
    }
    j["residual_spectrum"]["re"] = std::move(re);
    j["residual_spectrum"]["im"] = std::move(im);

    json diff_re = json::array(), diff_im = json::array();
    for (const auto& v : mean_difference.values()) {
        diff_re.push_back(v.real());
        diff_im.push_back(v.imag());
    }
    j["mean_difference"] = {{"freqs", mean_difference.grid().freqs()},
                            {"re", std::move(diff_re)},
                            {"im", std::move(diff_im)}};
    j["provenance"] = {{"inputs_hash", inputs_hash},
                       {"version", "0.1.0"},
                       {"alpha", result.band.alpha()},
                       {"B", result.band.replicates()},
                       {"seed", seed}};
    return j;
}

std::string hash_file(const std::string& path) {
    const std::string bytes = read_text(path);
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return std::string("fnv1a:") + buf;
}

} // namespace frfband_io
