#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "geomwave/errors.hpp"
#include "geomwave/experiments.hpp"
#include "geomwave/filterbank.hpp"
#include "geomwave/manifold_transform.hpp"
#include "geomwave/signals.hpp"
#include "geomwave/verify.hpp"

namespace py = pybind11;
namespace gw = geomwave;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

gw::MaskProvider provider(const std::string& kind, double lam) {
  if (kind == "cubic") return gw::MaskProvider::cubic();
  if (kind == "exp") return gw::MaskProvider::exponential(lam);
  throw gw::InvalidArgument("unknown predictor '" + kind + "' (expected cubic or exp)");
}

// (L, 2, m) array <-> periodic linear sequence; row 0 is the value, row 1 the derivative.
gw::HermiteSequence to_sequence(const Array& a, int level) {
  if (a.ndim() != 3 || a.shape(1) != 2)
    throw gw::InvalidArgument("expected an array of shape (L, 2, m)");
  const auto n = static_cast<std::size_t>(a.shape(0));
  const auto m = static_cast<std::size_t>(a.shape(2));
  auto s = gw::HermiteSequence::periodic(m, n, level);
  std::copy(a.data(), a.data() + a.size(), s.raw().begin());
  return s;
}

Array from_sequence(const gw::HermiteSequence& s) {
  Array a({static_cast<py::ssize_t>(s.size()), py::ssize_t{2}, static_cast<py::ssize_t>(s.dim())});
  std::copy(s.raw().begin(), s.raw().end(), a.mutable_data());
  return a;
}

gw::ManifoldHermiteSeq to_manifold_seq(const Array& a, const std::string& tag, int level) {
  if (a.ndim() != 3 || a.shape(1) != 2)
    throw gw::InvalidArgument("expected an array of shape (L, 2, d)");
  const auto manifold = gw::make_manifold(tag);
  const auto d = static_cast<Eigen::Index>(a.shape(2));
  if (static_cast<std::size_t>(d) != manifold->ambient_dim())
    throw gw::InvalidArgument("ambient dimension does not match " + tag);
  auto r = a.unchecked<3>();
  std::vector<gw::PointVector> entries;
  for (py::ssize_t i = 0; i < a.shape(0); ++i) {
    gw::Vec p(d), v(d);
    for (Eigen::Index k = 0; k < d; ++k) {
      p[k] = r(i, 0, k);
      v[k] = r(i, 1, k);
    }
    entries.push_back({p, v});
  }
  return gw::ManifoldHermiteSeq::periodic(manifold, std::move(entries), level);
}

Array from_manifold_seq(const gw::ManifoldHermiteSeq& c) {
  const auto d = static_cast<py::ssize_t>(c.manifold().ambient_dim());
  Array a({static_cast<py::ssize_t>(c.size()), py::ssize_t{2}, d});
  auto w = a.mutable_unchecked<3>();
  for (std::size_t i = 0; i < c.size(); ++i)
    for (py::ssize_t k = 0; k < d; ++k) {
      w(static_cast<py::ssize_t>(i), 0, k) = c.entries()[i].p[k];
      w(static_cast<py::ssize_t>(i), 1, k) = c.entries()[i].v[k];
    }
  return a;
}

Array from_details(const std::vector<gw::TangentPair>& details, py::ssize_t d) {
  Array a({static_cast<py::ssize_t>(details.size()), py::ssize_t{3}, d});
  auto w = a.mutable_unchecked<3>();
  for (std::size_t i = 0; i < details.size(); ++i)
    for (py::ssize_t k = 0; k < d; ++k) {
      const auto ii = static_cast<py::ssize_t>(i);
      w(ii, 0, k) = details[i].base[k];
      w(ii, 1, k) = details[i].u0[k];
      w(ii, 2, k) = details[i].u1[k];
    }
  return a;
}

std::vector<gw::TangentPair> to_details(const Array& a) {
  if (a.ndim() != 3 || a.shape(1) != 3)
    throw gw::InvalidArgument("expected detail arrays of shape (K, 3, d)");
  const auto d = static_cast<Eigen::Index>(a.shape(2));
  auto r = a.unchecked<3>();
  std::vector<gw::TangentPair> out;
  for (py::ssize_t i = 0; i < a.shape(0); ++i) {
    gw::TangentPair t{gw::Vec(d), gw::Vec(d), gw::Vec(d)};
    for (Eigen::Index k = 0; k < d; ++k) {
      t.base[k] = r(i, 0, k);
      t.u0[k] = r(i, 1, k);
      t.u1[k] = r(i, 2, k);
    }
    out.push_back(std::move(t));
  }
  return out;
}

py::dict residuals_dict(const gw::BiorthogonalityResiduals& r) {
  py::dict d;
  d["primal_identity"] = r.primal_identity;
  d["detail_identity"] = r.detail_identity;
  d["primal_of_detail"] = r.primal_of_detail;
  d["detail_of_primal"] = r.detail_of_primal;
  return d;
}

}  // namespace

PYBIND11_MODULE(_geomwave, m) {
  m.doc() = "Hermite multiwavelet transforms for vector and manifold-valued data.";

  auto base = py::register_exception<gw::Error>(m, "GeomwaveError");
  py::register_exception<gw::DensityError>(m, "DensityError", base);
  py::register_exception<gw::MismatchError>(m, "MismatchError", base);
  py::register_exception<gw::SchemaError>(m, "SchemaError", base);
  py::register_exception<gw::UndefinedRatioError>(m, "UndefinedRatioError", base);
  py::register_exception<gw::InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);

  m.def(
      "mask",
      [](const std::string& predictor, double lam, int level) {
        const gw::Mask mask = provider(predictor, lam).mask_at(level);
        py::dict out;
        for (int k = mask.lo(); k <= mask.hi(); ++k) {
          const auto b = mask[k];
          Eigen::Matrix2d block;
          block << b.a00, b.a01, b.a10, b.a11;
          out[py::int_(k)] = block;
        }
        return out;
      },
      py::arg("predictor") = "cubic", py::arg("lam") = 1.0, py::arg("level") = 0,
      "Predictor mask blocks {k: 2x2 array} at a level.");

  m.def(
      "symbol_residuals",
      [](const std::string& predictor, double lam, int level) {
        return residuals_dict(
            gw::symbol_biorthogonality_residuals(gw::build_bank(provider(predictor, lam)), level));
      },
      py::arg("predictor") = "cubic", py::arg("lam") = 1.0, py::arg("level") = 0);

  m.def(
      "subdivide",
      [](const Array& data, const std::string& predictor, double lam, int level) {
        const auto mask = provider(predictor, lam).mask_at(level);
        return from_sequence(gw::apply_subdivision(mask, to_sequence(data, level)));
      },
      py::arg("data"), py::arg("predictor") = "cubic", py::arg("lam") = 1.0,
      py::arg("level") = 0, "One linear subdivision step on periodic (L, 2, m) data.");

  m.def(
      "decompose",
      [](const Array& data, int levels, int level, const std::string& predictor, double lam) {
        const auto pyr = gw::decompose_linear(to_sequence(data, level),
                                              gw::build_bank(provider(predictor, lam)), levels);
        py::list details;
        for (const auto& d : pyr.details) details.append(from_sequence(d));
        return py::make_tuple(from_sequence(pyr.coarse), details);
      },
      py::arg("data"), py::arg("levels"), py::arg("level"), py::arg("predictor") = "cubic",
      py::arg("lam") = 1.0, "Linear decomposition; returns (coarse, [details coarse to fine]).");

  m.def(
      "reconstruct",
      [](const Array& coarse, const std::vector<Array>& details, int coarse_level,
         const std::string& predictor, double lam) {
        gw::MultiscalePyramid pyr;
        pyr.coarse = to_sequence(coarse, coarse_level);
        pyr.coarse_level = coarse_level;
        for (std::size_t k = 0; k < details.size(); ++k)
          pyr.details.push_back(to_sequence(details[k], coarse_level + static_cast<int>(k)));
        const auto p = provider(predictor, lam);
        pyr.predictor = p.kind();
        pyr.lambda = p.lambda();
        return from_sequence(gw::reconstruct_linear(pyr, gw::build_bank(p)));
      },
      py::arg("coarse"), py::arg("details"), py::arg("coarse_level"),
      py::arg("predictor") = "cubic", py::arg("lam") = 1.0);

  py::class_<gw::Manifold, std::shared_ptr<gw::Manifold>>(m, "Manifold")
      .def_property_readonly("tag", &gw::Manifold::tag)
      .def_property_readonly("ambient_dim", &gw::Manifold::ambient_dim)
      .def("exp", &gw::Manifold::exp, py::arg("p"), py::arg("v"))
      .def("log", &gw::Manifold::log, py::arg("p"), py::arg("q"))
      .def("transport", &gw::Manifold::transport, py::arg("p"), py::arg("v"), py::arg("q"))
      .def("midpoint", &gw::Manifold::midpoint, py::arg("p"), py::arg("q"))
      .def("dist", &gw::Manifold::dist, py::arg("p"), py::arg("q"));

  m.def(
      "manifold",
      [](const std::string& tag) {
        return std::const_pointer_cast<gw::Manifold>(gw::make_manifold(tag));
      },
      py::arg("tag"), "\"sphere2\", \"so3-quat\" or \"euclidean:<m>\".");

  m.def(
      "sample",
      [](const std::string& preset, const std::string& manifold, int level, double lam) {
        const auto spec = gw::make_preset(preset, manifold, lam);
        if (spec.domain != gw::Boundary::periodic)
          throw gw::InvalidArgument("preset '" + preset + "' is not periodic");
        return from_manifold_seq(gw::sample_signal(spec, level));
      },
      py::arg("preset"), py::arg("manifold"), py::arg("level"), py::arg("lam") = 1.0,
      "Periodic preset samples as an (L, 2, d) array.");

  m.def(
      "decompose_manifold",
      [](const Array& data, const std::string& manifold, int level, int levels,
         const std::string& predictor, double lam, const std::string& rule) {
        const auto pyr = gw::decompose_manifold(to_manifold_seq(data, manifold, level),
                                                provider(predictor, lam),
                                                gw::parse_base_point_rule(rule), levels);
        const auto d = static_cast<py::ssize_t>(pyr.coarse.manifold().ambient_dim());
        py::list details;
        for (const auto& row : pyr.details) details.append(from_details(row, d));
        return py::make_tuple(from_manifold_seq(pyr.coarse), details);
      },
      py::arg("data"), py::arg("manifold"), py::arg("level"), py::arg("levels"),
      py::arg("predictor") = "cubic", py::arg("lam") = 1.0, py::arg("rule") = "midpoint",
      "Returns (coarse (L, 2, d), [details (K, 3, d) as base, u0, u1]).");

  m.def(
      "reconstruct_manifold",
      [](const Array& coarse, const std::vector<Array>& details, const std::string& manifold,
         int coarse_level, const std::string& predictor, double lam, const std::string& rule) {
        const auto p = provider(predictor, lam);
        gw::ManifoldPyramid pyr;
        pyr.coarse = to_manifold_seq(coarse, manifold, coarse_level);
        pyr.coarse_level = coarse_level;
        pyr.predictor = p.kind();
        pyr.lambda = p.lambda();
        pyr.rule = gw::parse_base_point_rule(rule);
        for (const auto& d : details) pyr.details.push_back(to_details(d));
        return from_manifold_seq(gw::reconstruct_manifold(pyr, p, pyr.rule));
      },
      py::arg("coarse"), py::arg("details"), py::arg("manifold"), py::arg("coarse_level"),
      py::arg("predictor") = "cubic", py::arg("lam") = 1.0, py::arg("rule") = "midpoint");

  m.def(
      "decay",
      [](const std::string& preset, const std::string& manifold, int nmin, int nmax,
         const std::string& predictor, double lam, const std::string& rule) {
        const auto r = gw::decay_experiment(gw::make_preset(preset, manifold, lam),
                                            provider(predictor, lam),
                                            gw::parse_base_point_rule(rule), nmin, nmax);
        py::dict out;
        out["levels"] = r.levels;
        out["sup_norms"] = r.sup_norms;
        out["log2_ratios"] = r.log2_ratios;
        out["slope"] = r.slope ? py::object(py::float_(*r.slope)) : py::none();
        out["exact_annihilation"] = r.exact_annihilation;
        out["constant_c"] = r.constant_c;
        return out;
      },
      py::arg("preset"), py::arg("manifold"), py::arg("nmin") = 3, py::arg("nmax") = 8,
      py::arg("predictor") = "cubic", py::arg("lam") = 1.0, py::arg("rule") = "midpoint");

  m.def(
      "verify",
      [](std::uint64_t seed, int cases, int probes, bool perturb_mask) {
        gw::VerifyConfig cfg;
        cfg.seed = seed;
        cfg.cases = cases;
        cfg.probes = probes;
        cfg.perturb_mask = perturb_mask;
        const auto report = gw::verify_suite(cfg);
        py::dict out;
        for (const auto& c : report.checks) {
          py::dict entry;
          entry["residual"] = c.residual;
          entry["threshold"] = c.threshold;
          entry["passed"] = c.passed;
          entry["note"] = c.note;
          out[py::str(c.name)] = entry;
        }
        return out;
      },
      py::arg("seed") = 20240611, py::arg("cases") = 1000, py::arg("probes") = 100,
      py::arg("perturb_mask") = false);
}
