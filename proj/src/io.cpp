#include "geomwave/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "geomwave/errors.hpp"
#include "geomwave/verify.hpp"

namespace geomwave {

using nlohmann::json;

namespace {

json vec_to_json(const Vec& v) { return json(std::vector<double>(v.data(), v.data() + v.size())); }

const json& field(const json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object()) throw SchemaError(path + ": expected an object");
  const auto it = obj.find(key);
  if (it == obj.end())
    throw SchemaError((path.empty() ? key : path + "." + key) + ": missing field");
  return *it;
}

std::string join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

std::string at(const std::string& path, std::size_t i) {
  return path + "[" + std::to_string(i) + "]";
}

Vec vec_from_json(const json& node, std::size_t dim, const std::string& path) {
  if (!node.is_array()) throw SchemaError(path + ": expected an array of numbers");
  if (node.size() != dim)
    throw SchemaError(path + ": expected " + std::to_string(dim) + " components, got " +
                      std::to_string(node.size()));
  Vec v(static_cast<Eigen::Index>(dim));
  for (std::size_t k = 0; k < dim; ++k) {
    if (!node[k].is_number()) throw SchemaError(at(path, k) + ": expected a number");
    v[static_cast<Eigen::Index>(k)] = node[k].get<double>();
    if (!std::isfinite(v[static_cast<Eigen::Index>(k)]))
      throw SchemaError(at(path, k) + ": non-finite value");
  }
  return v;
}

std::string string_field(const json& obj, const std::string& key, const std::string& path) {
  const json& node = field(obj, key, path);
  if (!node.is_string()) throw SchemaError(join(path, key) + ": expected a string");
  return node.get<std::string>();
}

int int_field(const json& obj, const std::string& key, const std::string& path) {
  const json& node = field(obj, key, path);
  if (!node.is_number_integer()) throw SchemaError(join(path, key) + ": expected an integer");
  return node.get<int>();
}

void check_schema(const json& doc) {
  if (!doc.is_object()) throw SchemaError("document: expected a JSON object");
  const std::string schema = string_field(doc, "schema", "");
  if (schema != kSchema)
    throw SchemaError("schema: expected '" + std::string(kSchema) + "', got '" + schema + "'");
}

std::shared_ptr<const Manifold> manifold_field(const json& doc) {
  const std::string tag = string_field(doc, "manifold", "");
  try {
    return make_manifold(tag);
  } catch (const InvalidArgument& e) {
    throw SchemaError(std::string("manifold: ") + e.what());
  }
}

void check_point(const Manifold& m, const Vec& p, const std::string& path) {
  if (m.is_euclidean()) return;
  const double n = p.norm();
  if (std::abs(n - 1.0) > kInvariantTol)
    throw SchemaError(path + ": point is not on " + m.tag() + " (norm " + std::to_string(n) +
                      ")");
}

void check_tangent(const Manifold& m, const Vec& p, const Vec& v, const std::string& path) {
  if (m.is_euclidean()) return;
  if (std::abs(p.dot(v)) > kInvariantTol * (1.0 + v.norm()))
    throw SchemaError(path + ": vector is not tangent at its base point");
}

json entries_to_json(const std::vector<PointVector>& entries) {
  json data = json::array();
  for (const auto& e : entries) data.push_back({{"p", vec_to_json(e.p)}, {"v", vec_to_json(e.v)}});
  return data;
}

std::vector<PointVector> entries_from_json(const json& node, const Manifold& m,
                                           const std::string& path) {
  if (!node.is_array()) throw SchemaError(path + ": expected an array");
  std::vector<PointVector> entries;
  entries.reserve(node.size());
  for (std::size_t i = 0; i < node.size(); ++i) {
    const std::string ipath = at(path, i);
    PointVector e{vec_from_json(field(node[i], "p", ipath), m.ambient_dim(), ipath + ".p"),
                  vec_from_json(field(node[i], "v", ipath), m.ambient_dim(), ipath + ".v")};
    check_point(m, e.p, ipath + ".p");
    check_tangent(m, e.p, e.v, ipath + ".v");
    entries.push_back(std::move(e));
  }
  return entries;
}

}  // namespace

json samples_to_json(const ManifoldHermiteSeq& s) {
  json doc = {{"schema", kSchema},
              {"manifold", s.manifold().tag()},
              {"level", s.level()},
              {"boundary", s.is_periodic() ? "periodic" : "interior"}};
  if (!s.is_periodic()) doc["first"] = s.first();
  doc["data"] = entries_to_json(s.entries());
  return doc;
}

ManifoldHermiteSeq samples_from_json(const json& doc) {
  check_schema(doc);
  auto manifold = manifold_field(doc);
  const int level = int_field(doc, "level", "");
  if (level < 0) throw SchemaError("level: must be nonnegative");
  const std::string boundary = string_field(doc, "boundary", "");
  auto entries = entries_from_json(field(doc, "data", ""), *manifold, "data");
  if (entries.empty()) throw SchemaError("data: must not be empty");
  if (boundary == "periodic")
    return ManifoldHermiteSeq::unchecked(std::move(manifold), Boundary::periodic, 0,
                                         std::move(entries), level);
  if (boundary == "interior") {
    const std::ptrdiff_t first = doc.contains("first") ? int_field(doc, "first", "") : 0;
    return ManifoldHermiteSeq::unchecked(std::move(manifold), Boundary::interior, first,
                                         std::move(entries), level);
  }
  throw SchemaError("boundary: expected 'periodic' or 'interior', got '" + boundary + "'");
}

json pyramid_to_json(const ManifoldPyramid& pyr) {
  if (pyr.predictor == PredictorKind::custom)
    throw InvalidArgument("custom predictors cannot be serialized");
  json details = json::array();
  for (const auto& level : pyr.details) {
    json items = json::array();
    for (const auto& d : level)
      items.push_back(
          {{"base", vec_to_json(d.base)}, {"u0", vec_to_json(d.u0)}, {"u1", vec_to_json(d.u1)}});
    details.push_back(std::move(items));
  }
  return {{"schema", kSchema},
          {"manifold", pyr.coarse.manifold().tag()},
          {"predictor",
           {{"kind", pyr.predictor == PredictorKind::cubic ? "cubic" : "exp"},
            {"lambda", pyr.lambda}}},
          {"rule", to_string(pyr.rule)},
          {"coarse_level", pyr.coarse_level},
          {"coarse", entries_to_json(pyr.coarse.entries())},
          {"details", std::move(details)}};
}

ManifoldPyramid pyramid_from_json(const json& doc) {
  check_schema(doc);
  auto manifold = manifold_field(doc);
  const std::size_t dim = manifold->ambient_dim();
  ManifoldPyramid pyr;

  const json& predictor = field(doc, "predictor", "");
  const std::string kind = string_field(predictor, "kind", "predictor");
  const json& lambda = field(predictor, "lambda", "predictor");
  if (!lambda.is_number()) throw SchemaError("predictor.lambda: expected a number");
  pyr.lambda = lambda.get<double>();
  if (kind == "cubic") {
    pyr.predictor = PredictorKind::cubic;
  } else if (kind == "exp") {
    pyr.predictor = PredictorKind::exponential;
  } else {
    throw SchemaError("predictor.kind: expected 'cubic' or 'exp', got '" + kind + "'");
  }

  try {
    pyr.rule = parse_base_point_rule(string_field(doc, "rule", ""));
  } catch (const InvalidArgument& e) {
    throw SchemaError(std::string("rule: ") + e.what());
  }
  pyr.coarse_level = int_field(doc, "coarse_level", "");
  if (pyr.coarse_level < 0) throw SchemaError("coarse_level: must be nonnegative");

  auto coarse = entries_from_json(field(doc, "coarse", ""), *manifold, "coarse");
  if (coarse.empty()) throw SchemaError("coarse: must not be empty");
  const std::size_t coarse_size = coarse.size();
  pyr.coarse = ManifoldHermiteSeq::unchecked(manifold, Boundary::periodic, 0, std::move(coarse),
                                             pyr.coarse_level);

  const json& details = field(doc, "details", "");
  if (!details.is_array()) throw SchemaError("details: expected an array of levels");
  std::size_t expected = coarse_size;
  for (std::size_t k = 0; k < details.size(); ++k) {
    const std::string kpath = at("details", k);
    if (!details[k].is_array()) throw SchemaError(kpath + ": expected an array");
    if (details[k].size() != expected)
      throw SchemaError(kpath + ": expected " + std::to_string(expected) + " entries, got " +
                        std::to_string(details[k].size()));
    std::vector<TangentPair> level;
    level.reserve(expected);
    for (std::size_t i = 0; i < details[k].size(); ++i) {
      const std::string ipath = at(kpath, i);
      const json& item = details[k][i];
      TangentPair d{vec_from_json(field(item, "base", ipath), dim, ipath + ".base"),
                    vec_from_json(field(item, "u0", ipath), dim, ipath + ".u0"),
                    vec_from_json(field(item, "u1", ipath), dim, ipath + ".u1")};
      check_point(*manifold, d.base, ipath + ".base");
      check_tangent(*manifold, d.base, d.u0, ipath + ".u0");
      check_tangent(*manifold, d.base, d.u1, ipath + ".u1");
      level.push_back(std::move(d));
    }
    pyr.details.push_back(std::move(level));
    expected *= 2;
  }
  return pyr;
}

json verify_report_to_json(const VerifyReport& report) {
  json checks = json::array();
  for (const auto& c : report.checks) {
    json item = {{"name", c.name},
                 {"passed", c.passed},
                 {"residual", c.residual},
                 {"threshold", c.threshold}};
    if (!std::isfinite(c.residual)) item["residual"] = nullptr;
    if (!c.note.empty()) item["note"] = c.note;
    checks.push_back(std::move(item));
  }
  return {{"schema", kSchema},
          {"passed", report.all_passed()},
          {"seed", report.seed},
          {"checks", std::move(checks)}};
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError(path.string() + ": cannot open file");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw SchemaError(path.string() + ": invalid JSON: " + e.what());
  }
}

void write_json_file(const std::filesystem::path& path, const json& doc) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << doc.dump(1) << '\n';
  if (!out) throw Error("failed writing " + path.string());
}

void write_samples(const std::filesystem::path& path, const ManifoldHermiteSeq& samples) {
  write_json_file(path, samples_to_json(samples));
}

ManifoldHermiteSeq read_samples(const std::filesystem::path& path) {
  return samples_from_json(read_json_file(path));
}

void write_pyramid(const std::filesystem::path& path, const ManifoldPyramid& pyramid) {
  write_json_file(path, pyramid_to_json(pyramid));
}

ManifoldPyramid read_pyramid(const std::filesystem::path& path) {
  return pyramid_from_json(read_json_file(path));
}

std::string decay_csv(const DecayReport& r) {
  std::ostringstream out;
  out << std::setprecision(17);
  out << "level,sup_norm,log2_ratio\n";
  for (std::size_t k = 0; k < r.levels.size(); ++k) {
    out << r.levels[k] << ',' << r.sup_norms[k] << ',';
    if (k < r.log2_ratios.size()) out << r.log2_ratios[k];
    out << '\n';
  }
  out << "fitted_slope,";
  if (r.slope)
    out << *r.slope;
  else
    out << (r.exact_annihilation ? "exact annihilation" : "undefined");
  out << ",\n";
  out << "fit_range," << r.fit_first << ':' << r.fit_last << ",\n";
  out << "constant_c," << r.constant_c << ",\n";
  return out.str();
}

void write_decay_csv(const std::filesystem::path& path, const DecayReport& report) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << decay_csv(report);
}

void write_verify_report(const std::filesystem::path& path, const VerifyReport& report) {
  write_json_file(path, verify_report_to_json(report));
}

std::pair<int, int> parse_level_range(const std::string& text) {
  const auto colon = text.find(':');
  auto parse = [&](std::string_view s) {
    int v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty())
      throw InvalidArgument("bad level range '" + text + "', expected <min>:<max>");
    return v;
  };
  if (colon == std::string::npos)
    throw InvalidArgument("bad level range '" + text + "', expected <min>:<max>");
  const std::string_view view(text);
  return {parse(view.substr(0, colon)), parse(view.substr(colon + 1))};
}

}  // namespace geomwave
