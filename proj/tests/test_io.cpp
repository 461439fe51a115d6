#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <memory>

#include "frfband/io.hpp"
#include "frfbands/synthetic.hpp"

using namespace frfbands;
namespace io = frfband_io;

namespace {

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        path = std::filesystem::temp_directory_path() /
               ("frfband_io_test_" + std::to_string(::getpid()));
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

FrfSet sample_set(std::uint32_t n = 4) {
    const auto grid = std::make_shared<const FrequencyGrid>(
        FrequencyGrid::standard_posture_grid());
    return sample_population(lowpass_frf(0.4, grid), 0.5, n, 7);
}

void check_sets_equal(const FrfSet& a, const io::FrfFile& b) {
    REQUIRE(b.members.size() == a.size());
    CHECK(b.grid == a.grid());
    for (std::size_t i = 0; i < a.size(); ++i) {
        REQUIRE(b.members[i].size() == a.member(i).size());
        for (std::size_t k = 0; k < b.members[i].size(); ++k) {
            // bit-exact: shortest round-trip formatting everywhere
            CHECK(b.members[i][k] == a.member(i).values()[k]);
        }
    }
}

} // namespace

TEST_CASE("frequency text round trip") {
    CHECK(io::frequency_text(Rational(1, 20)) == "0.05");
    CHECK(io::frequency_text(Rational(11, 5)) == "2.2");
    CHECK(io::frequency_text(Rational(22, 1)) == "22");
    CHECK(io::frequency_text(Rational(2, 121)) == "2/121"); // not a finite decimal
    CHECK(io::parse_frequency("0.05") == Rational(1, 20));
    CHECK(io::parse_frequency("2/121") == Rational(2, 121));
    for (const auto& f : {Rational(1, 20), Rational(27, 20), Rational(2, 121),
                          Rational(3, 7), Rational(441, 200)}) {
        CHECK(io::parse_frequency(io::frequency_text(f)) == f);
    }
}

TEST_CASE("block CSV round trip is the identity") {
    TempDir dir;
    const FrfSet set = sample_set();
    const std::string path = dir.file("set.csv");
    io::write_frf_csv(path, set);
    check_sets_equal(set, io::read_frf_file(path, std::nullopt));
}

TEST_CASE("wide CSV round trip with the standard grid") {
    TempDir dir;
    const FrfSet set = sample_set();
    const std::string path = dir.file("set_wide.csv");
    io::write_frf_csv_wide(path, set);
    // 11 columns -> standard grid applies without --phi
    check_sets_equal(set, io::read_frf_file(path, std::nullopt));
}

TEST_CASE("wide CSV without a resolvable grid is rejected") {
    TempDir dir;
    const auto grid =
        std::make_shared<const FrequencyGrid>(FrequencyGrid::from_decimal_text("0.5,1.5"));
    const FrfSet set = sample_population(lowpass_frf(0.6, grid), 0.1, 3, 1);
    const std::string path = dir.file("two_wide.csv");
    io::write_frf_csv_wide(path, set);
    CHECK_THROWS_AS(io::read_frf_file(path, std::nullopt), ValidationError);
    check_sets_equal(set, io::read_frf_file(path, FrequencyGrid::from_decimal_text("0.5,1.5")));
}

TEST_CASE("JSON round trip is the identity") {
    TempDir dir;
    const FrfSet set = sample_set();
    const std::string path = dir.file("set.json");
    io::write_frf_json(path, set);
    check_sets_equal(set, io::read_frf_file(path, std::nullopt));
}

TEST_CASE("non-decimal rational grids survive every format") {
    TempDir dir;
    const auto grid = std::make_shared<const FrequencyGrid>(
        FrequencyGrid::from_rationals({Rational(2, 121), Rational(6, 121), Rational(10, 121)}));
    std::vector<Frf> members;
    for (int i = 0; i < 3; ++i) {
        members.emplace_back(grid, std::vector<Complex>{Complex(1.5, -0.25), Complex(0, 1),
                                                        Complex(double(i), 0.125)});
    }
    const FrfSet set(members);

    const std::string csv = dir.file("odd.csv");
    io::write_frf_csv(csv, set);
    check_sets_equal(set, io::read_frf_file(csv, std::nullopt));

    const std::string js = dir.file("odd.json");
    io::write_frf_json(js, set);
    check_sets_equal(set, io::read_frf_file(js, std::nullopt));
}

TEST_CASE("grid override replaces the file grid") {
    TempDir dir;
    const FrfSet set = sample_set();
    const std::string path = dir.file("set.csv");
    io::write_frf_csv(path, set);
    const auto grid = FrequencyGrid::from_decimal_text(
        "0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9,1.0,1.1");
    const io::FrfFile file = io::read_frf_file(path, grid);
    CHECK(file.grid == grid);
}

TEST_CASE("malformed FRF files are rejected") {
    TempDir dir;
    const std::string path = dir.file("bad.csv");
    io::write_text(path, "freq,re,im\n0.05,1.0\n");
    CHECK_THROWS_AS(io::read_frf_file(path, std::nullopt), ValidationError);

    io::write_text(path, "nonsense\n1,2,3\n");
    CHECK_THROWS_AS(io::read_frf_file(path, std::nullopt), ValidationError);

    io::write_text(path, "{\"members\": \"oops\"}");
    CHECK_THROWS_AS(io::read_frf_file(path, std::nullopt), ValidationError);

    CHECK_THROWS_AS(io::read_frf_file(dir.file("missing.csv"), std::nullopt), ValidationError);
}

TEST_CASE("PIR JSON round trip") {
    TempDir dir;
    const std::string path = dir.file("pir.json");
    const Pir a(std::vector<double>{0.0, 1.0, 0.0, -1.0}, 2.0, 2.0);
    const Pir b(std::vector<double>{0.5, 0.5, 0.5, 0.5}, 2.0, 2.0);
    io::write_pir_json(path, {a, b});
    const io::PirFile file = io::read_pir_json(path);
    CHECK(file.sample_rate == 2.0);
    CHECK(file.period == 2.0);
    REQUIRE(file.pirs.size() == 2);
    CHECK(file.pirs[0] == a.samples());
    CHECK(file.pirs[1] == b.samples());
}

TEST_CASE("time series CSV with sidecar and explicit rate") {
    TempDir dir;
    const std::string path = dir.file("ts.csv");
    io::write_text(path, "tilt\n0.0\n0.5\n1.0\n");

    CHECK_THROWS_AS(io::read_time_series_csv(path, std::nullopt, std::nullopt),
                    ValidationError); // no rate anywhere

    const TimeSeries with_rate = io::read_time_series_csv(path, std::string("50"), std::nullopt);
    CHECK(with_rate.rate() == doctest::Approx(50.0));
    CHECK(with_rate.samples == std::vector<double>{0.0, 0.5, 1.0});

    io::write_text(path + ".json", "{\"sample_rate\": \"50\"}\n");
    const TimeSeries with_sidecar = io::read_time_series_csv(path, std::nullopt, std::nullopt);
    CHECK(with_sidecar.sample_rate == Rational(50, 1));

    // named column selection
    const std::string multi = dir.file("multi.csv");
    io::write_text(multi, "a,b\n1,10\n2,20\n");
    const TimeSeries col_b = io::read_time_series_csv(multi, std::string("50"),
                                                      std::string("b"));
    CHECK(col_b.samples == std::vector<double>{10.0, 20.0});
}

TEST_CASE("band result JSON carries the documented fields") {
    const BandEstimate band(BandKind::prediction, {1.0, 2.0}, {0.1, 0.2}, 2.5, 95.0, 1000,
                            {0.5, 1.0, 2.5}, 2.0, 3);
    const io::json j = io::band_to_json(band, 42, "fnv1a:0", true);
    CHECK(j["kind"] == "prediction");
    CHECK(j["avg"].size() == 2);
    CHECK(j["sigma"].size() == 2);
    CHECK(j["lower"][0].get<double>() == doctest::Approx(0.75));
    CHECK(j["upper"][1].get<double>() == doctest::Approx(2.5));
    CHECK(j["constant"] == 2.5);
    CHECK(j["alpha"] == 95.0);
    CHECK(j["B"] == 1000);
    CHECK(j["seed"] == 42);
    CHECK(j["histogram_values"].size() == 3);
    CHECK(j["time_axis"][1].get<double>() == doctest::Approx(0.5));
    CHECK(j["degenerate_replicates"] == 3);
    CHECK(j["provenance"]["version"] == "0.1.0");
}

TEST_CASE("file hash is stable and content-sensitive") {
    TempDir dir;
    const std::string a = dir.file("a");
    const std::string b = dir.file("b");
    io::write_text(a, "hello");
    io::write_text(b, "hello");
    CHECK(io::hash_file(a) == io::hash_file(b));
    io::write_text(b, "hello!");
    CHECK(io::hash_file(a) != io::hash_file(b));
    CHECK(io::hash_file(a).rfind("fnv1a:", 0) == 0);
}
