// SPDX-License-Identifier: Apache-2.0
// Python bindings. Arrays use numpy order: a field of shape {W, H} is an
// array of shape (H, W); multivector fields get a trailing axis of 8 blades.
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <algorithm>
#include <cstring>

#include "clifsig/acceptance.hpp"
#include "clifsig/analytic.hpp"
#include "clifsig/error.hpp"
#include "clifsig/io.hpp"

namespace py = pybind11;
using namespace clifsig;
namespace mp = clifsig::multipliers;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

std::vector<py::ssize_t> numpy_shape(const Shape& shape) {
  return {shape.rbegin(), shape.rend()};
}

ScalarField to_field(const Array& a) {
  if (a.ndim() < 1) throw Error("expected an array with at least one axis");
  Shape shape;
  for (py::ssize_t k = a.ndim() - 1; k >= 0; --k) shape.push_back(static_cast<std::size_t>(a.shape(k)));
  ScalarField f = ScalarField::zeros(shape);
  std::copy(a.data(), a.data() + a.size(), f.values.begin());
  return f;
}

py::array_t<double> to_array(const ScalarField& f) {
  py::array_t<double> out(numpy_shape(f.shape));
  std::copy(f.values.begin(), f.values.end(), out.mutable_data());
  return out;
}

py::array_t<double> to_array(const MultivectorField& g) {
  auto shape = numpy_shape(g.shape());
  shape.push_back(static_cast<py::ssize_t>(g.blade_count()));
  py::array_t<double> out(shape);
  std::copy(g.data().begin(), g.data().end(), out.mutable_data());
  return out;
}

py::array_t<double> to_array(const VectorField3& v) {
  auto shape = numpy_shape(v[0].shape);
  shape.insert(shape.begin(), 3);
  py::array_t<double> out(shape);
  for (std::size_t k = 0; k < 3; ++k) {
    std::copy(v[k].values.begin(), v[k].values.end(), out.mutable_data() + k * v[k].size());
  }
  return out;
}

mp::ParametricParams params_from(const py::dict& d) {
  mp::ParametricParams p;
  for (const auto& [key, value] : d) {
    const auto k = key.cast<std::string>();
    if (k == "s_rule") {
      p.s_rule = mp::sign_rule_from_string(value.cast<std::string>());
      continue;
    }
    const double x = value.cast<double>();
    if (k == "A") p.A = x;
    else if (k == "A1") p.A1 = x;
    else if (k == "A2") p.A2 = x;
    else if (k == "B1") p.B1 = x;
    else if (k == "B2") p.B2 = x;
    else if (k == "alpha1") p.alpha1 = x;
    else if (k == "alpha2") p.alpha2 = x;
    else if (k == "beta1") p.beta1 = x;
    else if (k == "beta2") p.beta2 = x;
    else throw Error("unknown parametric parameter '" + k + "'");
  }
  return p;
}

mp::MultiplierField make_multiplier(const std::string& name, const Shape& shape,
                                    std::optional<std::uint64_t> seed,
                                    std::optional<py::dict> params) {
  mp::MultiplierSpec spec;
  spec.name = name;
  spec.seed = seed;
  if (params) spec.params = params_from(*params);
  return mp::build(spec, spectral::FrequencyGrid(shape));
}

py::dict decomposition_dict(const analytic::AnalyticDecomposition& d) {
  py::dict out;
  out["multiplier"] = d.multiplier;
  out["kind"] = mp::to_string(d.kind);
  out["class"] = mp::to_string(d.symmetry);
  out["f"] = to_array(d.f);
  out["fH"] = to_array(d.fH);
  out["fA"] = to_array(d.fA);
  if (d.fH_re) out["fH_re"] = to_array(*d.fH_re);
  if (d.fH_im) out["fH_im"] = to_array(*d.fH_im);
  if (d.V) out["V"] = to_array(*d.V);
  if (d.W) out["W"] = to_array(*d.W);
  if (d.R) out["R"] = to_array(*d.R);
  if (d.theta) out["theta"] = to_array(*d.theta);
  if (d.vhat) out["vhat"] = to_array(*d.vhat);
  if (d.sigma) out["sigma"] = to_array(*d.sigma);
  if (d.kappa) out["kappa"] = to_array(*d.kappa);
  py::array_t<bool> invalid(numpy_shape(d.f.shape));
  std::transform(d.invalid.begin(), d.invalid.end(), invalid.mutable_data(),
                 [](std::uint8_t b) { return b != 0; });
  out["invalid"] = invalid;
  return out;
}

}  // namespace

PYBIND11_MODULE(_clifsig, m) {
  m.doc() = "G3 geometric-algebra analytic signals";
  py::register_exception<Error>(m, "ClifsigError", PyExc_ValueError);

  py::class_<mp::MultiplierField>(m, "Multiplier")
      .def_property_readonly("name", &mp::MultiplierField::name)
      .def_property_readonly("kind", [](const mp::MultiplierField& a) { return mp::to_string(a.kind()); })
      .def_property_readonly("symmetry_class",
                             [](const mp::MultiplierField& a) { return mp::to_string(mp::classify(a)); })
      .def_property_readonly("values", [](const mp::MultiplierField& a) { return to_array(a.values()); })
      .def_property_readonly("exceptional", [](const mp::MultiplierField& a) {
        py::array_t<bool> out(numpy_shape(a.grid().shape()));
        const auto& mask = a.exceptional_mask();
        std::transform(mask.begin(), mask.end(), out.mutable_data(),
                       [](std::uint8_t b) { return b != 0; });
        return out;
      });

  m.def(
      "multiplier",
      [](const std::string& name, const std::vector<std::size_t>& shape,
         std::optional<std::uint64_t> seed, std::optional<py::dict> params) {
        return make_multiplier(name, Shape(shape.rbegin(), shape.rend()), seed, params);
      },
      py::arg("name"), py::arg("shape"), py::arg("seed") = py::none(), py::arg("params") = py::none(),
      "Builds a multiplier on a grid given in numpy order, e.g. (rows, cols).");

  m.def("multiplier_names", &mp::known_multiplier_names);

  m.def(
      "extended_hilbert",
      [](const Array& f, const mp::MultiplierField& a) {
        return to_array(analytic::extended_hilbert(to_field(f), a));
      },
      py::arg("f"), py::arg("multiplier"));

  m.def(
      "analytic_signal",
      [](const Array& f, const mp::MultiplierField& a) {
        return to_array(analytic::analytic_signal(to_field(f), a));
      },
      py::arg("f"), py::arg("multiplier"));

  m.def(
      "decompose",
      [](const Array& f, const mp::MultiplierField& a) {
        return decomposition_dict(analytic::decompose(to_field(f), a));
      },
      py::arg("f"), py::arg("multiplier"));

  m.def(
      "classical_1d", [](const Array& f) { return decomposition_dict(analytic::classical_1d(to_field(f))); },
      py::arg("f"));

  m.def(
      "partial_transforms",
      [](const Array& f) {
        const auto p = analytic::partial_transforms(to_field(f));
        py::dict out;
        out["fH1"] = to_array(p.fH1);
        out["fH2"] = to_array(p.fH2);
        out["fHT"] = to_array(p.fHT);
        out["fR1"] = to_array(p.fR1);
        out["fR2"] = to_array(p.fR2);
        return out;
      },
      py::arg("f"));

  m.def(
      "reconstruct_from_orientation",
      [](const Array& vhat, const mp::MultiplierField& a) {
        if (vhat.ndim() < 2 || vhat.shape(0) != 3) throw Error("vhat must have shape (3, ...)");
        const std::size_t plane = static_cast<std::size_t>(vhat.size() / 3);
        Shape shape;
        for (py::ssize_t k = vhat.ndim() - 1; k >= 1; --k) shape.push_back(static_cast<std::size_t>(vhat.shape(k)));
        VectorField3 v{ScalarField::zeros(shape), ScalarField::zeros(shape), ScalarField::zeros(shape)};
        for (std::size_t k = 0; k < 3; ++k) {
          std::copy(vhat.data() + k * plane, vhat.data() + (k + 1) * plane, v[k].values.begin());
        }
        return to_array(analytic::reconstruct_from_orientation(v, a));
      },
      py::arg("vhat"), py::arg("multiplier"));

  m.def(
      "remove_exceptional",
      [](const Array& f, const mp::MultiplierField& a) {
        const auto s = analytic::remove_exceptional(to_field(f), a);
        return py::make_tuple(to_array(s.kept), to_array(s.removed));
      },
      py::arg("f"), py::arg("multiplier"));

  m.def(
      "load_image", [](const std::filesystem::path& p) { return to_array(io::load_image(p).to_field()); },
      py::arg("path"));

  m.def(
      "load_archive",
      [](const std::filesystem::path& p) {
        const io::FieldArchive ar = io::load_field(p);
        py::dict planes;
        for (const auto& name : ar.components) planes[py::str(name)] = to_array(ar.field(name));
        py::dict out;
        out["multiplier"] = ar.multiplier;
        out["class"] = ar.symmetry_class;
        out["seed"] = ar.seed ? py::cast(*ar.seed) : py::none();
        out["components"] = planes;
        return out;
      },
      py::arg("path"));

  m.def(
      "selftest",
      [](bool inject_fault) {
        acceptance::Options opt;
        opt.inject_hahn_sign_fault = inject_fault;
        py::list out;
        for (const auto& r : acceptance::run_all(opt)) {
          py::dict d;
          d["id"] = r.id;
          d["check"] = r.check;
          d["pass"] = r.pass;
          d["residual"] = r.residual;
          d["tolerance"] = r.tolerance;
          d["detail"] = r.detail;
          out.append(d);
        }
        return out;
      },
      py::arg("inject_fault") = false);
}
