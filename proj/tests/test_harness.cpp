#include <doctest.h>

#include <json.hpp>
#include <numbers>

#include "harness.hpp"

using namespace floqbound;
using json = nlohmann::ordered_json;

namespace {

ExperimentConfig small_rabi(int order, double t_max = 20.0, int samples = 50) {
  ExperimentConfig cfg = parse_config("{}");
  cfg.order = order;
  cfg.times.t_max = t_max;
  cfg.times.samples = samples;
  return cfg;
}

}  // namespace

TEST_CASE("parse_config defaults") {
  const ExperimentConfig cfg = parse_config("{}");
  CHECK(cfg.model == "rabi");
  CHECK(cfg.rabi.g == 1.0);
  CHECK(cfg.rabi.omega == 5.0);
  CHECK(cfg.rabi.omega0 == 5.0);
  CHECK(cfg.order == 2);
  CHECK(cfg.times.t_max == 100.0);
  CHECK(cfg.times.samples == 1000);
  CHECK(cfg.strobe.m_max == 150);
  CHECK(cfg.sweep.omega_min == 10.0);
  CHECK(cfg.sweep.omega_max == 320.0);
  CHECK(cfg.grid_points == 4096);
  CHECK(cfg.integrator.method == StepMethod::MagnusCf4);
  CHECK(cfg.integrator.richardson);
  CHECK_FALSE(cfg.strict_bounds);
  CHECK(cfg.output.format == "csv");
}

TEST_CASE("parse_config round trip") {
  const std::string text = R"({
    "model": "rabi",
    "rabi": {"g": 0.5, "omega": 8.0, "delta": 0.4},
    "order": 1,
    "times": {"t_max": 30.0, "samples": 64},
    "integrator": {"method": "exp2", "step": 0.001},
    "output": {"format": "json"},
    "strict_bounds": true
  })";
  const ExperimentConfig cfg = parse_config(text);
  CHECK(cfg.rabi.omega0 == doctest::Approx(8.4));
  CHECK(cfg.strict_bounds);
  CHECK(cfg.integrator.method == StepMethod::ExpMidpoint2);
  // serialize -> parse -> serialize is a fixed point
  const std::string s1 = serialize_config(cfg);
  const std::string s2 = serialize_config(parse_config(s1));
  CHECK(s1 == s2);
}

TEST_CASE("parse_config diagnostics carry key paths") {
  CHECK_THROWS_WITH_AS(parse_config(R"({"bogus": 1})"),
                       doctest::Contains("unknown key 'bogus'"), config_error);
  CHECK_THROWS_WITH_AS(parse_config(R"({"rabi": {"gg": 1}})"),
                       doctest::Contains("config.rabi"), config_error);
  CHECK_THROWS_AS(parse_config(R"({"rabi": {"omega0": 5.0, "delta": 0.1}})"), config_error);
  CHECK_THROWS_AS(parse_config(R"({"rabi": {"g": -1}})"), config_error);
  CHECK_THROWS_AS(parse_config(R"({"order": -2})"), config_error);
  CHECK_THROWS_AS(parse_config(R"({"times": {"list": [1.0], "t_max": 5}})"), config_error);
  CHECK_THROWS_AS(parse_config(R"({"times": {"samples": 1}})"), config_error);
  CHECK_THROWS_AS(parse_config(R"({"integrator": {"method": "rk4"}})"), config_error);
  CHECK_THROWS_AS(parse_config(R"({"output": {"format": "xml"}})"), config_error);
  CHECK_THROWS_AS(parse_config(R"({"model": "custom"})"), config_error);
  CHECK_THROWS_AS(parse_config("not json"), config_error);
  CHECK_THROWS_AS(parse_config(R"({"model": "rabi", "custom": {}})"), config_error);
}

TEST_CASE("custom model parsing") {
  const std::string good = R"({
    "model": "custom",
    "custom": {
      "dim": 2,
      "omega": 12.0,
      "harmonics": [
        {"n": 0, "matrix": [[[0.0, 0.0], [0.5, 0.0]], [[0.5, 0.0], [0.0, 0.0]]]},
        {"n": 1, "matrix": [[[0.0, 0.0], [0.3, 0.0]], [[0.0, 0.0], [0.0, 0.0]]]},
        {"n": -1, "matrix": [[[0.0, 0.0], [0.0, 0.0]], [[0.3, 0.0], [0.0, 0.0]]]}
      ]
    }
  })";
  const ExperimentConfig cfg = parse_config(good);
  REQUIRE(cfg.custom.has_value());
  CHECK(cfg.custom->omega_cap == 12.0);
  CHECK(cfg.custom->harmonics.size() == 3);
  const std::string s1 = serialize_config(cfg);
  CHECK(serialize_config(parse_config(s1)) == s1);

  // missing adjoint partner: not a Hermitian function of t
  const std::string bad = R"({
    "model": "custom",
    "custom": {
      "dim": 2,
      "omega": 12.0,
      "harmonics": [{"n": 1, "matrix": [[[0.0, 0.0], [0.3, 0.0]], [[0.0, 0.0], [0.0, 0.0]]]}]
    }
  })";
  CHECK_THROWS_WITH_AS(parse_config(bad), doctest::Contains("Hermitian"), config_error);
}

TEST_CASE("times grid") {
  TimesSpec times;
  times.t_max = 10.0;
  times.samples = 5;
  const auto g = times.grid();
  REQUIRE(g.size() == 5);
  CHECK(g.front() == 0.0);
  CHECK(g.back() == doctest::Approx(10.0));
  CHECK(g[1] == doctest::Approx(2.5));

  TimesSpec bad;
  bad.list = {2.0, 1.0};
  CHECK_THROWS_AS(bad.grid(), config_error);
}

TEST_CASE("ResultTable rendering") {
  ResultTable t;
  t.add_metadata("version", artifact_version());
  t.add_column("t", {0.0, 0.1});
  t.add_column("y", {1.0, 1.0 / 3.0});
  CHECK_THROWS_AS(t.add_column("bad", {1.0}), std::invalid_argument);

  const std::string csv = t.to_csv();
  CHECK(csv.find("# version = floqbound") == 0);
  CHECK(csv.find("t,y\n") != std::string::npos);
  // full double precision: 1/3 survives a text round trip
  CHECK(csv.find("0.33333333333333331") != std::string::npos);

  const json doc = json::parse(t.to_json());
  CHECK(doc["metadata"]["version"] == artifact_version());
  CHECK(doc["columns"]["y"][1].get<double>() == 1.0 / 3.0);

  CHECK(t.render("csv") == csv);
  CHECK_THROWS_AS(t.render("xml"), config_error);
}

TEST_CASE("cmd_compare: columns, domination, metadata") {
  const ExperimentConfig cfg = small_rabi(2);
  const ResultTable table = cmd_compare(cfg);

  for (const char* name : {"t", "dist_rwa", "dist_bs", "dist_3rd", "bound_rwa", "bound_bs",
                           "bound_3rd", "bound_generic_certified"}) {
    INFO(name);
    CHECK(table.column(name) != nullptr);
  }
  const auto& t = *table.column("t");
  for (const char* label : {"rwa", "bs", "3rd"}) {
    const auto& dist = *table.column(std::string("dist_") + label);
    const auto& bound = *table.column(std::string("bound_") + label);
    REQUIRE(dist.size() == t.size());
    CHECK(dist.front() < 1e-10);
    for (size_t i = 0; i < t.size(); ++i) CHECK(dist[i] <= bound[i]);
  }

  bool has_residual = false;
  for (const auto& [k, v] : table.metadata) {
    if (k == "integrator_residual") {
      has_residual = true;
      CHECK(std::stod(v) < 1e-6);
    }
  }
  CHECK(has_residual);
}

TEST_CASE("strict_bounds escalates out-of-region closed forms") {
  // g/omega = 3 > 2 sqrt 2: the third-order closed form is not certified
  ExperimentConfig cfg = small_rabi(2, 2.0, 10);
  cfg.rabi.g = 15.0;
  cfg.rabi.omega = 5.0;
  cfg.rabi.omega0 = 5.0;
  cfg.integrator.step = 1e-3;

  const ResultTable table = cmd_compare(cfg);
  CHECK(table.column("bound_3rd") == nullptr);
  bool omitted = false;
  for (const auto& [k, v] : table.metadata) {
    if (k == "bound_3rd_omitted") omitted = true;
  }
  CHECK(omitted);

  cfg.strict_bounds = true;
  CHECK_THROWS_AS(cmd_compare(cfg), validity_error);
}

TEST_CASE("cmd_strobe hits stroboscopic times") {
  ExperimentConfig cfg = small_rabi(2);
  cfg.strobe.m_max = 10;
  const ResultTable table = cmd_strobe(cfg);
  const auto& t = *table.column("t");
  const auto& m = *table.column("m");
  REQUIRE(t.size() == 10);
  const double period = std::numbers::pi / cfg.rabi.omega;
  for (size_t i = 0; i < t.size(); ++i) {
    CHECK(m[i] == doctest::Approx(i + 1.0));
    CHECK(t[i] == doctest::Approx((i + 1) * period));
  }
  // stroboscopically the oscillatory part cancels: tiny distances at low m
  const auto& d3 = *table.column("dist_3rd");
  CHECK(d3.front() < 1e-3);
}

TEST_CASE("cmd_sweep_omega produces slope fits") {
  ExperimentConfig cfg = small_rabi(1);
  cfg.sweep.points = 4;
  cfg.sweep.omega_min = 10.0;
  cfg.sweep.omega_max = 80.0;
  cfg.sweep.fixed_t = 20.0;
  const ResultTable table = cmd_sweep_omega(cfg);

  const auto& omega = *table.column("omega");
  REQUIRE(omega.size() == 4);
  CHECK(omega.front() == doctest::Approx(10.0));
  CHECK(omega.back() == doctest::Approx(80.0));
  CHECK(omega[1] == doctest::Approx(10.0 * std::cbrt(8.0)));

  CHECK(table.column("dist_fixed_rwa") != nullptr);
  CHECK(table.column("dist_period_bs") != nullptr);
  CHECK(table.column("bound_fixed_rwa") != nullptr);

  double slope_rwa = 0.0;
  bool found = false;
  for (const auto& [k, v] : table.metadata) {
    if (k == "slope_fixed_rwa") {
      slope_rwa = std::stod(v);
      found = true;
    }
  }
  REQUIRE(found);
  CHECK(slope_rwa < -0.7);  // first-order error decays at least ~1/omega

  ExperimentConfig low = cfg;
  low.sweep.omega_min = 0.5;  // below g: outside the high-frequency regime
  CHECK_THROWS_AS(cmd_sweep_omega(low), config_error);
}

TEST_CASE("figure commands") {
  const ExperimentConfig cfg = small_rabi(2, 10.0, 40);

  const ResultTable f1 = cmd_fig(cfg, 1);
  CHECK(f1.names == std::vector<std::string>{"t", "dist_rwa", "dist_bs"});

  const ResultTable f2 = cmd_fig(cfg, 2);
  const double period = std::numbers::pi / cfg.rabi.omega;
  CHECK(f2.column("t")->back() == doctest::Approx(10.0 * period));
  CHECK(f2.column("t")->size() == 500);

  const ResultTable f5 = cmd_fig(cfg, 5);
  CHECK(f5.column("m")->size() ==
        static_cast<size_t>(std::floor(cfg.times.t_max / period)));

  CHECK_THROWS_AS(cmd_fig(cfg, 0), config_error);
  CHECK_THROWS_AS(cmd_fig(cfg, 6), config_error);

  ExperimentConfig custom = cfg;
  custom.model = "custom";
  CHECK_THROWS_AS(cmd_fig(custom, 1), config_error);
}

TEST_CASE("derive output") {
  ExperimentConfig cfg = small_rabi(2);
  const json doc = json::parse(cmd_derive_json(cfg));
  CHECK(doc["model"] == "rabi");
  CHECK(doc["normalization"] == "omega");
  CHECK(doc["order"] == 2);
  REQUIRE(doc["h_eff_terms"].size() == 3);
  // omega-normalized first correction: -(g^2/8) Z
  const auto& m1 = doc["h_eff_terms"][1]["matrix"];
  CHECK(m1[0][0][0].get<double>() == doctest::Approx(-0.125).epsilon(1e-10));
  CHECK(m1[1][1][0].get<double>() == doctest::Approx(0.125).epsilon(1e-10));
  for (const auto& r : doc["condition_residuals"]) CHECK(r.get<double>() <= 1e-10);
  CHECK(doc["bound_ingredients"]["sup_actions_certified"].get<double>() > 0.0);
  CHECK(doc["generic_bound"]["certified"]["c0"].get<double>() >=
        doc["generic_bound"]["numeric"]["c0"].get<double>() - 1e-10);
}

TEST_CASE("dispatch and determinism") {
  const ExperimentConfig cfg = small_rabi(1, 5.0, 20);
  CHECK_THROWS_AS(run_table_command("nope", cfg), config_error);
  CHECK_THROWS_AS(run_table_command("fig9", cfg), config_error);

  const std::string a = run_table_command("compare", cfg).to_csv();
  const std::string b = run_table_command("compare", cfg).to_csv();
  CHECK(a == b);

  const std::string ja = run_table_command("fig1", cfg).to_json();
  const std::string jb = run_table_command("fig1", cfg).to_json();
  CHECK(ja == jb);
}
