// geomwave command line: sampling, decomposition, reconstruction, decay
// experiments and the verification suite.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "geomwave/errors.hpp"
#include "geomwave/experiments.hpp"
#include "geomwave/io.hpp"
#include "geomwave/manifold_transform.hpp"
#include "geomwave/signals.hpp"
#include "geomwave/verify.hpp"

namespace gw = geomwave;

namespace {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kSchema = 2,
  kDensity = 3,
  kVerification = 4,
};

gw::MaskProvider make_provider(const std::string& kind, double lambda) {
  if (kind == "cubic") return gw::MaskProvider::cubic();
  return gw::MaskProvider::exponential(lambda);
}

struct SampleArgs {
  std::string preset, manifold, out;
  int level = 0;
  double lambda = 1.0;
};

struct DecomposeArgs {
  std::string in, out, predictor = "cubic", rule = "midpoint";
  int levels = 1;
  double lambda = 1.0;
};

struct ReconstructArgs {
  std::string in, out, predictor, rule;
  double lambda = 0.0;
};

struct DecayArgs {
  std::string preset, manifold, out, predictor = "cubic", rule = "midpoint", levels = "3:8";
  double lambda = 1.0;
  int fit_levels = 5;
};

struct VerifyArgs {
  std::string config, out;
};

int run_sample(const SampleArgs& a) {
  const auto spec = gw::make_preset(a.preset, a.manifold, a.lambda);
  gw::write_samples(a.out, gw::sample_signal(spec, a.level));
  return kOk;
}

int run_decompose(const DecomposeArgs& a) {
  const auto samples = gw::read_samples(a.in);
  if (!samples.is_periodic())
    throw gw::InvalidArgument("decompose needs periodic samples; interior windows are "
                              "handled by the decay command");
  const auto provider = make_provider(a.predictor, a.lambda);
  const auto rule = gw::parse_base_point_rule(a.rule);
  gw::write_pyramid(a.out, gw::decompose_manifold(samples, provider, rule, a.levels));
  return kOk;
}

int run_reconstruct(const ReconstructArgs& a) {
  const auto pyr = gw::read_pyramid(a.in);
  const std::string kind =
      a.predictor.empty() ? (pyr.predictor == gw::PredictorKind::cubic ? "cubic" : "exp")
                          : a.predictor;
  const double lambda = a.lambda != 0.0 ? a.lambda : pyr.lambda;
  const auto rule = a.rule.empty() ? pyr.rule : gw::parse_base_point_rule(a.rule);
  gw::write_samples(a.out, gw::reconstruct_manifold(pyr, make_provider(kind, lambda), rule));
  return kOk;
}

int run_decay(const DecayArgs& a) {
  const auto [nmin, nmax] = gw::parse_level_range(a.levels);
  const auto spec = gw::make_preset(a.preset, a.manifold, a.lambda);
  const auto report = gw::decay_experiment(spec, make_provider(a.predictor, a.lambda),
                                           gw::parse_base_point_rule(a.rule), nmin, nmax,
                                           a.fit_levels);
  gw::write_decay_csv(a.out, report);
  return kOk;
}

int run_verify(const VerifyArgs& a) {
  gw::VerifyConfig cfg;
  if (!a.config.empty()) {
    std::ifstream in(a.config);
    if (!in) throw gw::SchemaError(a.config + ": cannot open config");
    std::ostringstream text;
    text << in.rdbuf();
    cfg = gw::parse_verify_config(text.str());
  }
  const auto report = gw::verify_suite(cfg);
  gw::write_verify_report(a.out, report);
  for (const auto& c : report.checks)
    std::cout << (c.passed ? "PASS " : "FAIL ") << c.name << " residual=" << c.residual
              << " threshold=" << c.threshold << (c.note.empty() ? "" : " (" + c.note + ")")
              << '\n';
  return report.all_passed() ? kOk : kVerification;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hermite multiscale transforms for manifold-valued data"};
  app.require_subcommand(1);

  SampleArgs sample;
  auto* s = app.add_subcommand("sample", "Sample a preset signal at one level");
  s->add_option("--preset", sample.preset)->required();
  s->add_option("--manifold", sample.manifold)->required();
  s->add_option("--level", sample.level)->required()->check(CLI::Range(0, 24));
  s->add_option("--lambda", sample.lambda, "Rate of the exp preset")->capture_default_str();
  s->add_option("--out", sample.out)->required();

  DecomposeArgs dec;
  auto* d = app.add_subcommand("decompose", "Decompose samples into a pyramid");
  d->add_option("--in", dec.in)->required();
  d->add_option("--levels", dec.levels)->required()->check(CLI::NonNegativeNumber);
  d->add_option("--predictor", dec.predictor)
      ->check(CLI::IsMember({"cubic", "exp"}))
      ->capture_default_str();
  d->add_option("--lambda", dec.lambda)->capture_default_str();
  d->add_option("--rule", dec.rule)
      ->check(CLI::IsMember({"midpoint", "leftpoint"}))
      ->capture_default_str();
  d->add_option("--out", dec.out)->required();

  ReconstructArgs rec;
  auto* r = app.add_subcommand("reconstruct", "Reconstruct samples from a pyramid");
  r->add_option("--in", rec.in)->required();
  r->add_option("--out", rec.out)->required();
  r->add_option("--predictor", rec.predictor, "Expected predictor; defaults to the file's")
      ->check(CLI::IsMember({"cubic", "exp"}));
  r->add_option("--lambda", rec.lambda, "Expected lambda; defaults to the file's");
  r->add_option("--rule", rec.rule, "Expected base point rule; defaults to the file's")
      ->check(CLI::IsMember({"midpoint", "leftpoint"}));

  DecayArgs decay;
  auto* y = app.add_subcommand("decay", "Detail decay experiment");
  y->add_option("--preset", decay.preset)->required();
  y->add_option("--manifold", decay.manifold)->required();
  y->add_option("--predictor", decay.predictor)
      ->check(CLI::IsMember({"cubic", "exp"}))
      ->capture_default_str();
  y->add_option("--lambda", decay.lambda)->capture_default_str();
  y->add_option("--rule", decay.rule)
      ->check(CLI::IsMember({"midpoint", "leftpoint"}))
      ->capture_default_str();
  y->add_option("--levels", decay.levels, "<min>:<max>")->capture_default_str();
  y->add_option("--fit-levels", decay.fit_levels)->capture_default_str();
  y->add_option("--out", decay.out)->required();

  VerifyArgs ver;
  auto* v = app.add_subcommand("verify", "Run the verification suite");
  v->add_option("--config", ver.config, "key = value configuration file");
  v->add_option("--out", ver.out)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*s) return run_sample(sample);
    if (*d) return run_decompose(dec);
    if (*r) return run_reconstruct(rec);
    if (*y) return run_decay(decay);
    if (*v) return run_verify(ver);
  } catch (const gw::SchemaError& e) {
    std::cerr << "schema error: " << e.what() << '\n';
    return kSchema;
  } catch (const gw::DensityError& e) {
    std::cerr << "density error: " << e.what() << '\n';
    return kDensity;
  } catch (const gw::MismatchError& e) {
    std::cerr << "mismatch: " << e.what() << '\n';
    return kVerification;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
