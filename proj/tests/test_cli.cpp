#include <doctest.h>

#include <unistd.h>

#include <json.hpp>

#include "cli_support.hpp"

using namespace clitest;

namespace {
const char* kSmallRate = R"({"rate": {"m": 2000, "n_grid": [16, 64, 256]}})";
const char* kSmallCheck = R"({
  "check": {"power_gap_triples": 10000, "homogeneity_pairs": 10, "regularity_triples": 3, "regularity_size": 2000,
            "ks_n": 5000, "ks_alphas": [1.5], "stability_n": [2], "stability_m": 5000, "chi_n": 64, "chi_m": 5000}
})";
}  // namespace

TEST_CASE("sample output is reproducible") {
  const auto dir = scratch_dir("sample");
  fs::create_directories(dir / "a");
  fs::create_directories(dir / "b");
  const auto cfg = write_file(dir / "c.json", R"({"model": {"kind": "stable"}, "sample": {"count": 10}})");
  CHECK(run("sample --config " + cfg.string() + " --out " + (dir / "a").string() + " --seed 3") == 0);
  CHECK(run("sample --config " + cfg.string() + " --out " + (dir / "b").string() + " --seed 3 --threads 8") == 0);
  const auto text = slurp(dir / "a" / "samples.csv");
  CHECK(text == slurp(dir / "b" / "samples.csv"));
  CHECK(text.rfind("value\n", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 11);
  CHECK(slurp(dir / "a" / "resolved_config.json") == slurp(dir / "b" / "resolved_config.json"));
  fs::remove_all(dir);
}

TEST_CASE("missing output directory") {
  const auto dir = scratch_dir("missing");
  CHECK(run("sample --out " + (dir / "nowhere").string()) == 2);
  CHECK_FALSE(fs::exists(dir / "nowhere"));
  CHECK(fs::is_empty(dir));
  fs::remove_all(dir);
}

TEST_CASE("validation errors name the field") {
  const auto dir = scratch_dir("validate");
  const auto cfg = write_file(dir / "c.json", R"({"model": {"kind": "stable", "alpha": 2.5}})");
  CHECK(run("sample --config " + cfg.string() + " --out " + dir.string(), dir / "log") == 2);
  CHECK(slurp(dir / "log").find("model.alpha") != std::string::npos);

  const auto g = write_file(dir / "g.json", R"({"model": {"gamma": 0.45}})");
  CHECK(run("rate --config " + g.string() + " --out " + dir.string(), dir / "log") == 2);
  CHECK(slurp(dir / "log").find("gamma must exceed r - alpha") != std::string::npos);

  const auto typo = write_file(dir / "t.json", R"({"rate": {"mm": 5}})");
  CHECK(run("rate --config " + typo.string() + " --out " + dir.string(), dir / "log") == 2);
  CHECK(slurp(dir / "log").find("rate.mm") != std::string::npos);

  CHECK(run("rate --threads 0 --out " + dir.string()) == 2);
  CHECK(run("frobnicate") == 2);
  CHECK(run("--help") == 0);
  CHECK_FALSE(fs::exists(dir / "fit.json"));
  fs::remove_all(dir);
}

TEST_CASE("divergent configuration exits with a numeric failure") {
  const auto dir = scratch_dir("diverge");
  const auto cfg = write_file(dir / "c.json", R"({"model": {"gamma": 0.4, "c": 0.25},
      "rate": {"enforce_conditions": false, "m": 1000, "n_grid": [4, 8, 16]}})");
  CHECK(run("rate --config " + cfg.string() + " --out " + dir.string(), dir / "log") == 3);
  CHECK(slurp(dir / "log").find("diverges") != std::string::npos);
  CHECK_FALSE(fs::exists(dir / "curve.csv"));
  fs::remove_all(dir);
}

TEST_CASE("rate writes the curve and the fit") {
  const auto dir = scratch_dir("rate");
  const auto cfg = write_file(dir / "c.json", kSmallRate);
  const int code = run("rate --config " + cfg.string() + " --out " + dir.string());
  CHECK((code == 0 || code == 1));
  const auto curve = slurp(dir / "curve.csv");
  CHECK(curve.rfind("n,distance,mc_stderr,metric_tag\n", 0) == 0);
  CHECK(std::count(curve.begin(), curve.end(), '\n') == 7);
  const auto fit = nlohmann::json::parse(slurp(dir / "fit.json"));
  for (const char* key : {"slope", "intercept", "r_squared", "theoretical_slope", "pass"}) {
    CHECK(fit["curves"][0].contains(key));
  }
  CHECK(fit["pass"].get<bool>() == (code == 0));
  CHECK(fit["constant_C"].get<double>() > 0.0);
  fs::remove_all(dir);
}

TEST_CASE("control rate run keeps a flat slope") {
  const auto dir = scratch_dir("control");
  const auto cfg = write_file(dir / "c.json",
                              R"({"model": {"kind": "stable"}, "rate": {"m": 20000, "n_grid": [2, 8, 32, 128],
                                  "metrics": ["zeta_upper"]}})");
  CHECK(run("rate --config " + cfg.string() + " --out " + dir.string()) == 0);
  const auto fit = nlohmann::json::parse(slurp(dir / "fit.json"));
  CHECK(std::abs(fit["curves"][0]["slope"].get<double>()) <= 0.1);
  fs::remove_all(dir);
}

TEST_CASE("check report lists every check") {
  const auto dir = scratch_dir("check");
  const auto cfg = write_file(dir / "c.json", kSmallCheck);
  fs::create_directories(dir / "a");
  fs::create_directories(dir / "b");
  CHECK(run("check --config " + cfg.string() + " --out " + (dir / "a").string()) == 0);
  CHECK(run("check --config " + cfg.string() + " --out " + (dir / "b").string() + " --seed 77") == 0);
  const auto a = nlohmann::json::parse(slurp(dir / "a" / "check_report.json"));
  const auto b = nlohmann::json::parse(slurp(dir / "b" / "check_report.json"));
  CHECK(a["all_pass"].get<bool>());
  CHECK(a["checks"].size() == b["checks"].size());
  for (std::size_t i = 0; i < a["checks"].size(); ++i) {
    const auto& entry = a["checks"][i];
    CHECK(entry.contains("statistic"));
    CHECK(entry["name"] == b["checks"][i]["name"]);
    CHECK(entry["passed"] == b["checks"][i]["passed"]);
  }
  fs::remove_all(dir);
}
