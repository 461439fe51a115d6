#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "frfband/io.hpp"

// end-to-end checks of the installed command surface; everything runs the
// real binary through the shell

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct CliFixture {
    fs::path dir;
    CliFixture() {
        dir = fs::temp_directory_path() / ("frfband_cli_test_" + std::to_string(::getpid()));
        fs::create_directories(dir);
    }
    ~CliFixture() { fs::remove_all(dir); }

    std::string path(const std::string& name) const { return (dir / name).string(); }

    int run(const std::string& args) const {
        const std::string cmd = std::string(FRFBAND_CLI_PATH) + " " + args + " 2>" +
                                path("stderr.log");
        const int status = std::system(cmd.c_str());
        return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    }

    std::string slurp(const std::string& name) const {
        std::ifstream in(path(name), std::ios::binary);
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }

    json load_json(const std::string& name) const { return json::parse(slurp(name)); }
};

} // namespace

TEST_CASE("synth then prediction band, determinism across thread counts") {
    CliFixture fx;
    REQUIRE(fx.run("synth --cutoff 0.4 --sigma 0.5 --n 12 --seed 7 --out " + fx.path("set.csv")) == 0);

    const std::string base = "prediction-band " + fx.path("set.csv") +
                             " --alpha 95 -B 400 --seed 11 ";
    REQUIRE(fx.run(base + "--threads 1 --out " + fx.path("a.json")) == 0);
    REQUIRE(fx.run(base + "--threads 2 --out " + fx.path("b.json")) == 0);
    REQUIRE(fx.run(base + "--threads 1 --out " + fx.path("c.json")) == 0);
    CHECK(fx.slurp("a.json") == fx.slurp("b.json"));
    CHECK(fx.slurp("a.json") == fx.slurp("c.json"));

    const json j = fx.load_json("a.json");
    CHECK(j["kind"] == "prediction");
    CHECK(j["B"] == 400);
    CHECK(j["seed"] == 11);
    CHECK(j["avg"].size() == 440);
    CHECK(j["histogram_values"].size() == 12 * 400);
}

TEST_CASE("confidence band output schema and validation failures") {
    CliFixture fx;
    REQUIRE(fx.run("synth --cutoff 0.75 --sigma 0.5 --n 6 --seed 3 --out " + fx.path("set.csv")) == 0);

    SUBCASE("schema") {
        REQUIRE(fx.run("confidence-band " + fx.path("set.csv") +
                       " -B 300 --seed 5 --out " + fx.path("band.json")) == 0);
        const json j = fx.load_json("band.json");
        for (const char* key : {"kind", "avg", "sigma", "lower", "upper", "constant", "alpha",
                                "B", "seed", "histogram_values", "time_axis"}) {
            CHECK(j.contains(key));
        }
        CHECK(j["kind"] == "confidence");
        CHECK(j["provenance"]["inputs_hash"].get<std::string>().substr(0, 6) == "fnv1a:");
    }
    SUBCASE("alpha outside (50,100) is a usage error") {
        CHECK(fx.run("confidence-band " + fx.path("set.csv") + " --alpha 101") == 2);
    }
    SUBCASE("malformed input exits 3") {
        frfband_io::write_text(fx.path("garbage.csv"), "not,a,frf\n1,2,3\n");
        CHECK(fx.run("confidence-band " + fx.path("garbage.csv")) == 3);
    }
    SUBCASE("n below 3 exits 4") {
        REQUIRE(fx.run("synth --cutoff 0.4 --sigma 0.5 --n 2 --seed 1 --out " +
                       fx.path("two.csv")) == 0);
        CHECK(fx.run("confidence-band " + fx.path("two.csv") + " -B 200 --seed 1") == 4);
    }
    SUBCASE("missing subcommand is a usage error") {
        CHECK(fx.run("") == 2);
    }
}

TEST_CASE("prediction band membership query") {
    CliFixture fx;
    REQUIRE(fx.run("synth --cutoff 0.4 --sigma 0.5 --n 10 --seed 2 --out " + fx.path("set.csv")) == 0);
    // members of the set itself should mostly sit inside their own band;
    // test the first member explicitly via --test
    REQUIRE(fx.run("synth --cutoff 0.4 --sigma 0 --n 2 --seed 2 --out " + fx.path("tpl.csv")) == 0);
    REQUIRE(fx.run("prediction-band " + fx.path("set.csv") + " -B 300 --seed 9 --test " +
                   fx.path("tpl.csv") + " --out " + fx.path("band.json")) == 0);
    const json j = fx.load_json("band.json");
    REQUIRE(j.contains("contains"));
    CHECK(j["contains"].size() == 2);
    // the noise-free template is the population centre: inside the band
    CHECK(j["contains"][0] == true);
}

TEST_CASE("paired test on identical files does not reject") {
    CliFixture fx;
    REQUIRE(fx.run("synth --cutoff 0.4 --sigma 0.5 --n 8 --seed 4 --out " + fx.path("g.csv")) == 0);
    REQUIRE(fx.run("paired-test " + fx.path("g.csv") + " " + fx.path("g.csv") +
                   " -B 300 --seed 6 --out " + fx.path("t.json")) == 0);
    const json j = fx.load_json("t.json");
    CHECK(j["reject"] == false);
    CHECK(j.contains("band"));
    CHECK(j.contains("residual"));
    CHECK(j.contains("residual_spectrum"));
    CHECK(j.contains("mean_difference"));
    for (const auto& v : j["residual"]) CHECK(v.get<double>() == 0.0);
}

TEST_CASE("pir and spectrum commands reproduce the reconstruction data") {
    CliFixture fx;
    REQUIRE(fx.run("synth --cutoff 0.4 --sigma 0 --n 2 --seed 1 --out " + fx.path("tpl.csv")) == 0);
    REQUIRE(fx.run("pir " + fx.path("tpl.csv") + " --member 0 --out " + fx.path("pir.json")) == 0);
    const json pj = fx.load_json("pir.json");
    CHECK(pj["sample_rate"] == 22.0);
    CHECK(pj["period"] == 20.0);
    REQUIRE(pj["pirs"].size() == 1);
    CHECK(pj["pirs"][0].size() == 440);

    REQUIRE(fx.run("spectrum " + fx.path("pir.json") + " --out " + fx.path("spec.json")) == 0);
    const json sj = fx.load_json("spec.json");
    CHECK(sj["freqs"].size() == 221); // bins 0..220
    const auto mags = sj["members"][0]["magnitude"].get<std::vector<double>>();
    // magnitude at the 0.05 Hz bin (index 1) is the template's unit gain
    CHECK(mags[1] == doctest::Approx(1.0).epsilon(1e-9));
    // off-grid bins stay numerically silent
    CHECK(mags[2] < 1e-9);
}

TEST_CASE("estimate command runs the identity pipeline") {
    CliFixture fx;
    // build a PRTS stimulus as a time-series CSV with a sidecar rate
    // (stages 3 keeps the cycle short: 26 states · 0.25 s · 50 Hz = 325 samples)
    const std::size_t cycle = 325;
    {
        frfbands::PrtsConfig config;
        config.stages = 3;
        config.dt = 0.25;
        const frfbands::TimeSeries ts =
            frfbands::generate_prts(config, 3, frfbands::Rational(50, 1));
        std::ostringstream csv;
        csv << "tilt\n";
        for (double v : ts.samples) csv << v << "\n";
        frfband_io::write_text(fx.path("stim.csv"), csv.str());
        frfband_io::write_text(fx.path("stim.csv.json"), "{\"sample_rate\": \"50\"}\n");
    }
    // response = stimulus; target grid within the excited range
    REQUIRE(fx.run("estimate " + fx.path("stim.csv") + " " + fx.path("stim.csv") +
                   " --cycle-length " + std::to_string(cycle) +
                   " --phi 0.3,0.7,1.1,2.2 --out " + fx.path("frf.csv")) == 0);
    const auto file = frfband_io::read_frf_file(fx.path("frf.csv"), std::nullopt);
    REQUIRE(file.members.size() == 1);
    REQUIRE(file.members[0].size() == 4);
    for (const auto& v : file.members[0]) {
        CHECK(std::abs(v - frfbands::Complex(1.0, 0.0)) < 1e-9);
    }
}

TEST_CASE("loo command reports coverage") {
    CliFixture fx;
    REQUIRE(fx.run("synth --cutoff 0.4 --sigma 0.5 --n 8 --seed 12 --out " + fx.path("set.csv")) == 0);
    REQUIRE(fx.run("loo " + fx.path("set.csv") + " -B 200 --seed 3 --out " + fx.path("loo.json")) == 0);
    const json j = fx.load_json("loo.json");
    CHECK(j["coverage"].get<double>() >= 0.0);
    CHECK(j["coverage"].get<double>() <= 1.0);
    CHECK(j["contained"].size() == 8);
}

TEST_CASE("plot emits svg and csv figure data") {
    CliFixture fx;
    REQUIRE(fx.run("synth --cutoff 0.4 --sigma 0.5 --n 6 --seed 8 --out " + fx.path("set.csv")) == 0);
    REQUIRE(fx.run("confidence-band " + fx.path("set.csv") + " -B 300 --seed 2 --out " +
                   fx.path("band.json")) == 0);

    REQUIRE(fx.run("plot " + fx.path("band.json") + " --frf " + fx.path("set.csv") +
                   " --out " + fx.path("fig")) == 0);
    const std::string svg = fx.slurp("fig_band.svg");
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("polyline") != std::string::npos);
    CHECK(fx.slurp("fig_chist.svg").find("cumulative fraction") != std::string::npos);

    REQUIRE(fx.run("plot " + fx.path("band.json") + " --format csv --out " + fx.path("fig")) == 0);
    CHECK(fx.slurp("fig_band.csv").rfind("time,avg,lower,upper", 0) == 0);
    CHECK(fx.slurp("fig_chist.csv").rfind("value,cumulative_fraction", 0) == 0);
}

TEST_CASE("omitting the seed still reports one") {
    CliFixture fx;
    REQUIRE(fx.run("synth --cutoff 0.4 --sigma 0.5 --n 5 --seed 1 --out " + fx.path("s.csv")) == 0);
    REQUIRE(fx.run("confidence-band " + fx.path("s.csv") + " -B 200 --omit-histogram --out " +
                   fx.path("r.json")) == 0);
    const json j = fx.load_json("r.json");
    CHECK(j.contains("seed"));
    CHECK_FALSE(j.contains("histogram_values"));
}
