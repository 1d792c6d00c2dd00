#include <doctest.h>

#include <cmath>
#include <cstring>
#include <filesystem>

#include "geomwave/errors.hpp"
#include "geomwave/experiments.hpp"
#include "geomwave/filterbank.hpp"
#include "geomwave/io.hpp"
#include "geomwave/signals.hpp"
#include "geomwave/verify.hpp"
#include "test_support.hpp"

using namespace geomwave;
using nlohmann::json;

namespace {

std::vector<std::pair<std::string, std::string>> all_presets() {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& tag : {"euclidean:2", "sphere2", "so3-quat"})
    for (const auto& name : preset_names(tag)) out.emplace_back(name, tag);
  return out;
}

bool bitwise_equal(const Vec& a, const Vec& b) {
  return a.size() == b.size() &&
         std::memcmp(a.data(), b.data(), sizeof(double) * static_cast<std::size_t>(a.size())) == 0;
}

std::string schema_message(const json& doc, bool pyramid) {
  try {
    if (pyramid)
      pyramid_from_json(doc);
    else
      samples_from_json(doc);
  } catch (const SchemaError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("preset derivatives are exact") {
  for (const auto& [name, tag] : all_presets()) {
    CAPTURE(name);
    CHECK(derivative_check(make_preset(name, tag, 1.3)) <= 1e-8);
  }
  CHECK_THROWS_AS(make_preset("wobble", "so3-quat"), InvalidArgument);
}

TEST_CASE("sampling a line") {
  SignalSpec line;
  line.preset = "identity";
  line.manifold = make_manifold("euclidean:1");
  line.domain = Boundary::interior;
  line.a = -1.0;
  line.b = 2.0;
  line.f = [](double x) { return Vec::Constant(1, x); };
  line.df = [](double) { return Vec::Constant(1, 1.0); };
  const auto s = sample_signal(line, 1);
  CHECK(s.first() == -2);
  CHECK(s.last() == 4);
  for (std::ptrdiff_t i = s.first(); i <= s.last(); ++i) {
    CHECK(s[i].p[0] == i / 2.0);
    CHECK(s[i].v[0] == 0.5);
  }
  const auto pyr = decompose_linear(sample_signal_linear(line, 6), build_bank(MaskProvider::cubic()), 4);
  for (const auto& d : pyr.details) CHECK(sup_norm(d) <= 1e-13);
}

TEST_CASE("sampling on the sphere") {
  const auto spec = make_preset("great-circle", "sphere2");
  const auto s = sample_signal(spec, 0);
  REQUIRE(s.size() == 1);
  CHECK((s[0].p - spec.f(0.0)).norm() <= 1e-15);
  CHECK((s[0].v - spec.df(0.0)).norm() <= 1e-14);
  CHECK(std::abs(s[0].p.dot(s[0].v)) <= 1e-12);

  const auto q = sample_signal(make_preset("rotation", "so3-quat"), 5);
  for (const auto& e : q.entries()) {
    CHECK(std::abs(e.p.norm() - 1.0) <= 1e-14);
    CHECK(std::abs(e.p.dot(e.v)) <= 1e-14);
  }
}

TEST_CASE("periodic presets must close up") {
  auto spec = make_preset("great-circle", "sphere2");
  auto f = spec.f;
  spec.f = [f](double t) { return Vec(f(0.9 * t)); };
  CHECK_THROWS_AS(sample_signal(spec, 3), InvalidArgument);
}

TEST_CASE("pyramid coarse levels are direct samples") {
  const auto spec = make_preset("wobble", "sphere2");
  const auto pyr = decompose_manifold(sample_signal(spec, 8), MaskProvider::cubic(),
                                      BasePointRule::midpoint, 4);
  const auto direct = sample_signal(spec, 4);
  for (std::ptrdiff_t i = 0; i <= direct.last(); ++i) {
    CHECK(pyr.coarse[i].p == direct[i].p);
    CHECK(pyr.coarse[i].v == direct[i].v);
  }
}

TEST_CASE("decay experiments") {
  const auto cubic = MaskProvider::cubic();
  const auto wobble = decay_experiment(make_preset("wobble", "sphere2"), cubic,
                                       BasePointRule::midpoint, 3, 8);
  CHECK(wobble.levels == std::vector<int>{3, 4, 5, 6, 7});
  CHECK(wobble.log2_ratios.size() == 4);
  CHECK(wobble.fit_first == 3);
  CHECK(wobble.fit_last == 7);
  REQUIRE(wobble.slope.has_value());
  CHECK(*wobble.slope < -1.7);
  CHECK(std::abs(wobble.log2_ratios[2] -
                 std::log2(wobble.sup_norms[3] / wobble.sup_norms[2])) == 0.0);

  const auto again = decay_experiment(make_preset("wobble", "sphere2"), cubic,
                                      BasePointRule::midpoint, 3, 8);
  CHECK(again.sup_norms == wobble.sup_norms);
  CHECK(*again.slope == *wobble.slope);

  // Periodic Euclidean data through both pipelines.
  const auto trig = make_preset("trig", "euclidean:2");
  const auto report = decay_experiment(trig, cubic, BasePointRule::midpoint, 3, 8);
  const auto lp = decompose_linear(sample_signal_linear(trig, 8), build_bank(cubic), 5);
  for (std::size_t k = 0; k < 5; ++k) CHECK(std::abs(report.sup_norms[k] - sup_norm(lp.details[k])) <= 1e-13);

  const auto poly = decay_experiment(make_preset("cubic", "euclidean:2"), cubic,
                                     BasePointRule::midpoint, 3, 8);
  CHECK(poly.exact_annihilation);
  CHECK_FALSE(poly.slope.has_value());
  for (double v : poly.sup_norms) CHECK(v <= 1e-12);
  CHECK(decay_csv(poly).find("fitted_slope,exact annihilation,") != std::string::npos);

  const auto quartic = decay_experiment(make_preset("quartic", "euclidean:1"), cubic,
                                        BasePointRule::midpoint, 3, 8);
  CHECK_FALSE(quartic.exact_annihilation);
  REQUIRE(quartic.slope.has_value());
  CHECK(*quartic.slope == doctest::Approx(-4.0).epsilon(0.01));

  const auto exp_ok = decay_experiment(make_preset("exp", "euclidean:1", 2.0),
                                       MaskProvider::exponential(2.0), BasePointRule::midpoint, 3, 8);
  CHECK(exp_ok.exact_annihilation);

  CHECK_THROWS_AS(decay_experiment(trig, cubic, BasePointRule::midpoint, 5, 5), InvalidArgument);
}

TEST_CASE("least squares") {
  const auto [slope, intercept] = least_squares_line({1, 2, 3, 4}, {3, 5, 7, 9});
  CHECK(slope == doctest::Approx(2.0));
  CHECK(intercept == doctest::Approx(1.0));
  CHECK_THROWS_AS(least_squares_line({1, 1}, {0, 1}), InvalidArgument);
}

TEST_CASE("decay CSV layout") {
  DecayReport r;
  r.levels = {3, 4};
  r.sup_norms = {0.5, 0.125};
  r.log2_ratios = {-2.0};
  r.slope = -2.0;
  r.fit_first = 3;
  r.fit_last = 4;
  r.constant_c = 32.0;
  CHECK(decay_csv(r) ==
        "level,sup_norm,log2_ratio\n3,0.5,-2\n4,0.125,\nfitted_slope,-2,\nfit_range,3:4,\n"
        "constant_c,32,\n");
}

TEST_CASE("sample and pyramid files round trip bitwise") {
  Rng rng(60);
  const auto spec = make_preset("rotation", "so3-quat");
  const auto fine = sample_signal(spec, 6);
  const auto back = samples_from_json(json::parse(samples_to_json(fine).dump()));
  CHECK(back.level() == 6);
  CHECK(back.is_periodic());
  CHECK(back.manifold().tag() == "so3-quat");
  for (std::ptrdiff_t i = 0; i <= fine.last(); ++i) {
    CHECK(bitwise_equal(back[i].p, fine[i].p));
    CHECK(bitwise_equal(back[i].v, fine[i].v));
  }

  const auto pyr = decompose_manifold(fine, MaskProvider::exponential(0.75),
                                      BasePointRule::left_point, 3);
  const auto path = std::filesystem::temp_directory_path() / "geomwave_pyramid_test.json";
  write_pyramid(path, pyr);
  const auto loaded = read_pyramid(path);
  std::filesystem::remove(path);
  CHECK(loaded.predictor == PredictorKind::exponential);
  CHECK(loaded.lambda == 0.75);
  CHECK(loaded.rule == BasePointRule::left_point);
  CHECK(loaded.coarse_level == 3);
  REQUIRE(loaded.details.size() == 3);
  for (std::size_t k = 0; k < 3; ++k) {
    REQUIRE(loaded.details[k].size() == pyr.details[k].size());
    for (std::size_t i = 0; i < pyr.details[k].size(); ++i) {
      CHECK(bitwise_equal(loaded.details[k][i].base, pyr.details[k][i].base));
      CHECK(bitwise_equal(loaded.details[k][i].u0, pyr.details[k][i].u0));
      CHECK(bitwise_equal(loaded.details[k][i].u1, pyr.details[k][i].u1));
    }
  }
  for (std::ptrdiff_t i = 0; i <= pyr.coarse.last(); ++i)
    CHECK(bitwise_equal(loaded.coarse[i].p, pyr.coarse[i].p));

  // Random values with full mantissas.
  std::uniform_real_distribution<double> u(-1e3, 1e3);
  auto lin = HermiteSequence::interior(3, -5, 5, 2);
  for (double& x : lin.raw()) x = u(rng) / 7.0;
  const auto m = from_linear(lin);
  const auto m2 = samples_from_json(json::parse(samples_to_json(m).dump()));
  CHECK(m2.first() == -5);
  CHECK_FALSE(m2.is_periodic());
  for (std::ptrdiff_t i = -5; i <= 5; ++i) CHECK(bitwise_equal(m2[i].v, m[i].v));
}

TEST_CASE("schema violations name their path") {
  const auto fine = sample_signal(make_preset("wobble", "sphere2"), 3);
  json doc = samples_to_json(fine);

  json bad = doc;
  bad["data"][4]["p"] = {0.9, 0.0, 0.0};
  CHECK(schema_message(bad, false).find("data[4].p") != std::string::npos);

  bad = doc;
  bad["data"][2]["v"] = bad["data"][2]["p"];
  CHECK(schema_message(bad, false).find("data[2].v") != std::string::npos);

  bad = doc;
  bad["schema"] = "geomwave/0";
  CHECK(schema_message(bad, false).find("schema") != std::string::npos);

  bad = doc;
  bad.erase("level");
  CHECK(schema_message(bad, false).find("level: missing field") != std::string::npos);

  bad = doc;
  bad["data"][1]["p"] = {1.0, 0.0};
  CHECK(schema_message(bad, false).find("data[1].p: expected 3 components") != std::string::npos);

  bad = doc;
  bad["manifold"] = "klein-bottle";
  CHECK(schema_message(bad, false).find("manifold") != std::string::npos);

  const auto pyr = decompose_manifold(sample_signal(make_preset("wobble", "sphere2"), 5),
                                      MaskProvider::cubic(), BasePointRule::midpoint, 2);
  json pdoc = pyramid_to_json(pyr);
  json pbad = pdoc;
  pbad["predictor"]["kind"] = "quintic";
  CHECK(schema_message(pbad, true).find("predictor.kind") != std::string::npos);
  pbad = pdoc;
  pbad["details"][1].erase(pbad["details"][1].begin());
  CHECK(schema_message(pbad, true).find("details[1]: expected 16 entries") != std::string::npos);
  pbad = pdoc;
  pbad["details"][0][1]["base"] = {0.0, 0.0, 2.0};
  CHECK(schema_message(pbad, true).find("details[0][1].base") != std::string::npos);
  CHECK_THROWS_AS(read_json_file("/nonexistent/geomwave.json"), SchemaError);
}

TEST_CASE("level ranges") {
  CHECK(parse_level_range("3:8") == std::pair{3, 8});
  CHECK_THROWS_AS(parse_level_range("3-8"), InvalidArgument);
  CHECK_THROWS_AS(parse_level_range("3:"), InvalidArgument);
}

TEST_CASE("verify config parsing") {
  const auto cfg = parse_verify_config(
      "# comment\n[suite]\nseed = 7\nperturb_mask = true\nperturbation = 1e-4\n"
      "antipodal_sphere = false # trailing\ncases = 10\nprobes=3\n");
  CHECK(cfg.seed == 7);
  CHECK(cfg.perturb_mask);
  CHECK(cfg.perturbation == 1e-4);
  CHECK_FALSE(cfg.antipodal_sphere);
  CHECK(cfg.cases == 10);
  CHECK(cfg.probes == 3);
  CHECK_THROWS_AS(parse_verify_config("colour = blue\n"), SchemaError);
  CHECK_THROWS_AS(parse_verify_config("seed = x\n"), SchemaError);
  CHECK_THROWS_AS(parse_verify_config("seed 3\n"), SchemaError);
}

TEST_CASE("verify suite") {
  VerifyConfig cfg;
  cfg.cases = 200;
  cfg.probes = 20;
  const auto clean = verify_suite(cfg);
  for (const auto& c : clean.checks) {
    CAPTURE(c.name);
    CAPTURE(c.note);
    CHECK(c.passed);
  }
  CHECK(clean.all_passed());
  CHECK(clean.checks.size() == 12);

  cfg.perturb_mask = true;
  const auto perturbed = verify_suite(cfg);
  CHECK_FALSE(perturbed.find("biorthogonality_operator")->passed);
  CHECK_FALSE(perturbed.find("biorthogonality_symbol")->passed);
  for (const auto& c : perturbed.checks)
    if (c.name.rfind("biorthogonality", 0) != 0) CHECK(c.passed);

  cfg.perturb_mask = false;
  cfg.antipodal_sphere = true;
  const auto antipodal = verify_suite(cfg);
  const auto* density = antipodal.find("antipodal_sphere_density");
  REQUIRE(density != nullptr);
  CHECK_FALSE(density->passed);
  CHECK(density->note.find("not dense enough") != std::string::npos);
  CHECK_FALSE(antipodal.all_passed());

  const json report = verify_report_to_json(antipodal);
  CHECK(report["passed"] == false);
  CHECK(report["checks"].size() == 13);
}
