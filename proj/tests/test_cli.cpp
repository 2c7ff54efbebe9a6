#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"

#include "rydmoc/cli.hpp"
#include "rydmoc/config_io.hpp"
#include "rydmoc/manifest.hpp"
#include "rydmoc/sweep.hpp"
#include "rydmoc/table.hpp"
#include "test_support.hpp"

using namespace rydmoc;
using rydmoc::testing::kBaselineConfig;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args) {
  args.insert(args.begin(), "rydmoc");
  std::ostringstream out;
  std::ostringstream err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path scratch_dir() {
  const auto dir = std::filesystem::temp_directory_path() / "rydmoc_test_cli";
  std::filesystem::create_directories(dir);
  return dir;
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

TEST_CASE("bound at the diffraction limit") {
  const Run r = cli({"bound", "--lambda-mw", "7e-3", "--waist", "4.4564e-3"});
  CHECK(r.code == kExitOk);
  CHECK(r.err.empty());
  const CsvDocument doc = parse_csv(r.out);
  REQUIRE(doc.rows.size() == 1);
  CHECK(doc.header == std::vector<std::string>{"waist_mw_m", "eta_bound", "forbidden"});
  CHECK(parse_number(doc.rows[0][1]) == doctest::Approx(0.1875).epsilon(1e-3));
  CHECK(doc.rows[0][2] == "false");

  const Run below = cli({"bound", "--lambda-mw", "7e-3", "--waist", "1e-3"});
  CHECK(below.code == kExitOk);
  CHECK(parse_csv(below.out).rows[0][2] == "true");
}

TEST_CASE("bound curve from config") {
  const Run r = cli({"bound", "--config", kBaselineConfig, "--waist-min", "5e-3", "--waist-max",
                     "5e-2", "--points", "10", "--log"});
  CHECK(r.code == kExitOk);
  CHECK(parse_csv(r.out).rows.size() == 10);
}

TEST_CASE("efficiency matches the library") {
  const SystemConfig cfg = parse_config(kBaselineConfig).config;
  const ConversionResult lib = efficiency_closed_form(0.0, cfg.rabi_drive, build_rate_set(cfg));
  for (const char* method : {"closed_form", "numeric"}) {
    const Run r = cli({"efficiency", "--config", kBaselineConfig, "--method", method});
    REQUIRE(r.code == kExitOk);
    const CsvDocument doc = parse_csv(r.out);
    CHECK(doc.header[1] == "eta");
    CHECK(parse_number(doc.rows[0][1]) == doctest::Approx(lib.eta).epsilon(1e-12));
    CHECK(doc.header.back() == "method");
    CHECK(doc.rows[0].back() == method);
  }
}

TEST_CASE("symmetric detuning sweep produces an even column") {
  const Run r = cli({"sweep", "--config", kBaselineConfig, "--axis", "detuning", "--min", "-100e6",
                     "--max", "100e6", "--points", "101"});
  REQUIRE(r.code == kExitOk);
  const CsvDocument doc = parse_csv(r.out);
  REQUIRE(doc.rows.size() == 101);
  for (std::size_t i = 0; i < doc.rows.size(); ++i) {
    CHECK(doc.rows[i][1] == doc.rows[100 - i][1]);
    CHECK(parse_number(doc.rows[i][0]) == -parse_number(doc.rows[100 - i][0]));
  }
  CHECK(parse_number(doc.rows.back()[0]) == kTwoPi * 100e6);
}

TEST_CASE("JSON output carries the same numbers") {
  const Run csv = cli({"rates", "--config", kBaselineConfig});
  const Run json = cli({"rates", "--config", kBaselineConfig, "--format", "json"});
  REQUIRE(csv.code == kExitOk);
  REQUIRE(json.code == kExitOk);
  const CsvDocument doc = parse_csv(csv.out);
  const auto j = nlohmann::json::parse(json.out);
  for (std::size_t i = 0; i < doc.header.size(); ++i) {
    CHECK(j[0][doc.header[i]].get<double>() == parse_number(doc.rows[0][i]));
  }
}

TEST_CASE("exit codes") {
  CHECK(cli({"validate", "--config", kBaselineConfig}).code == kExitOk);
  CHECK(cli({"sweep", "--config", kBaselineConfig, "--axis", "detuning", "--min", "0", "--max", "1",
             "--bogus"})
            .code == kExitUsage);
  CHECK(cli({}).code == kExitUsage);
  CHECK(cli({"sweep", "--config", kBaselineConfig, "--axis", "colour", "--min", "0", "--max", "1"})
            .code == kExitUsage);

  nlohmann::json j = nlohmann::json::parse(read_file(kBaselineConfig));
  j["waist_mw_m"] = 7e-4;
  const auto bad = scratch_dir() / "narrow_waist.json";
  std::ofstream(bad) << j.dump();
  const Run v = cli({"validate", "--config", bad.string()});
  CHECK(v.code == kExitValidationFailure);
  CHECK(v.out.find("diffraction_limit,fail") != std::string::npos);
  const Run e = cli({"efficiency", "--config", bad.string()});
  CHECK(e.code == kExitValidationFailure);
  CHECK(e.err.find("diffraction_limit") != std::string::npos);

  j = nlohmann::json::parse(read_file(kBaselineConfig));
  j["waist_mw_m"] = -1.0;
  const auto neg = scratch_dir() / "negative_waist.json";
  std::ofstream(neg) << j.dump();
  const Run n = cli({"rates", "--config", neg.string()});
  CHECK(n.code == kExitValidationFailure);
  CHECK(n.err.find("waist_mw_m") != std::string::npos);
}

TEST_CASE("--out writes the table and a manifest") {
  const auto path = scratch_dir() / "sweep.csv";
  const Run r = cli({"sweep", "--config", kBaselineConfig, "--axis", "atom_number", "--min", "1e4",
                     "--max", "1e8", "--points", "9", "--log", "--out", path.string()});
  REQUIRE(r.code == kExitOk);
  CHECK(r.out.empty());
  CHECK(r.err.empty());
  CHECK(parse_csv(read_file(path)).rows.size() == 9);
  const auto m = nlohmann::json::parse(read_file(manifest_path_for(path)));
  CHECK(m["config_digest"] == config_digest(parse_config(kBaselineConfig).config));
  CHECK(m["tool_version"] == tool_version());
  CHECK(m["outputs"][0] == path.string());
  CHECK(m["command"].get<std::string>().find("sweep") != std::string::npos);
}

TEST_CASE("optimize reports the drive that matches the rates") {
  const SystemConfig cfg = parse_config(kBaselineConfig).config;
  const RateSet rates = build_rate_set(cfg);
  const Run r = cli({"optimize", "--config", kBaselineConfig, "--axis", "rabi_drive", "--min", "1e6",
                     "--max", "1e9", "--log"});
  REQUIRE(r.code == kExitOk);
  const CsvDocument doc = parse_csv(r.out);
  CHECK(doc.header[0] == "rabi_drive_rad_per_s");
  CHECK(parse_number(doc.rows[0][0]) ==
        doctest::Approx(optimal_operating_point(rates).rabi_drive).epsilon(1e-5));
}

TEST_CASE("spectrum and help") {
  const Run s = cli({"spectrum", "--config", kBaselineConfig, "--offset-min-hz", "-1e3",
                     "--offset-max-hz", "1e3", "--points", "11"});
  CHECK(s.code == kExitOk);
  const CsvDocument doc = parse_csv(s.out);
  CHECK(doc.rows.size() == 11);
  CHECK(doc.header[0] == "omega_rad_per_s");

  const Run h = cli({"--help"});
  CHECK(h.code == kExitOk);
  CHECK(h.out.find("sweep") != std::string::npos);
  const Run ver = cli({"--version"});
  CHECK(ver.code == kExitOk);
  CHECK(ver.out.find(tool_version()) != std::string::npos);
}
