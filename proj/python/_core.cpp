/* Copyright 2026 The mcbounds Authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mcbounds/combinatorics.hpp"
#include "mcbounds/commands.hpp"
#include "mcbounds/config.hpp"
#include "mcbounds/cumulants.hpp"
#include "mcbounds/errors.hpp"
#include "mcbounds/finite_chain.hpp"
#include "mcbounds/vgeom.hpp"
#include "mcbounds/wasserstein.hpp"

namespace py = pybind11;

namespace {

// Configs cross the boundary as JSON text; the Python side does the dumps.
mcb::Json parse(const std::string& text) {
  auto j = mcb::parse_config_text(text);
  mcb::validate_config(j);
  return j;
}

mcb::DriftCertificate drift(double lambda, double b, double d, int m, double eps,
                            std::optional<double> pi_V) {
  mcb::DriftCertificate c;
  c.lambda = lambda;
  c.b = b;
  c.d = d;
  c.m = m;
  c.eps = eps;
  c.pi_V = pi_V;
  return c;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Explicit moment and concentration bounds for Markov chains";

  py::register_exception<mcb::ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<mcb::InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);
  py::register_exception<mcb::CertificateError>(m, "CertificateError", PyExc_ValueError);
  py::register_exception<mcb::CertificationFailure>(m, "CertificationFailure", PyExc_RuntimeError);

  m.def("constants_json", [](const std::string& cfg) {
    return mcb::constants_report(parse(cfg)).dump();
  });
  m.def("bound_json", [](const std::string& cfg) {
    return mcb::bound_report(parse(cfg)).dump();
  });
  m.def("simulate_csv", [](const std::string& cfg) {
    return mcb::simulate_csv(parse(cfg));
  });
  m.def(
      "sweep_csv",
      [](const std::string& cfg, int workers) {
        auto j = parse(cfg);
        mcb::SweepOutcome out;
        {
          py::gil_scoped_release nogil;
          out = mcb::sweep_report(j, workers);
        }
        return py::make_tuple(out.csv, out.violated, out.errors);
      },
      py::arg("config"), py::arg("workers") = 0);

  m.def(
      "geometric_rate",
      [](double lambda, double b, double d, int m, double eps, std::optional<double> pi_V) {
        return mcb::to_json(mcb::geometric_rate(drift(lambda, b, d, m, eps, pi_V))).dump();
      },
      py::arg("lam"), py::arg("b"), py::arg("d"), py::arg("m"), py::arg("eps"),
      py::arg("pi_V") = py::none());
  m.def(
      "contraction_rate",
      [](double lambda, double b, double d, int m, double eps, double kappa_K, double pi_V) {
        mcb::WassCertificate c;
        c.lambda = lambda;
        c.b = b;
        c.d = d;
        c.m = m;
        c.eps = eps;
        c.kappa_K = kappa_K;
        return mcb::to_json(mcb::contraction_rate(c, pi_V)).dump();
      },
      py::arg("lam"), py::arg("b"), py::arg("d"), py::arg("m"), py::arg("eps"),
      py::arg("kappa_K") = 1.0, py::arg("pi_V"));

  // Exact big integers go out as decimal strings.
  m.def("b_coefficient", [](double gamma, int u, int q) {
    auto b = mcb::b_coefficient(gamma, u, q);
    std::optional<std::string> exact;
    if (b.exact) exact = b.exact->str();
    return py::make_tuple(exact, b.value.log_abs());
  });
  m.def("b_coefficient_upper_log", [](double gamma, int u, int q) {
    return mcb::b_coefficient_upper(gamma, u, q).log_abs();
  });
  m.def("gaussian_moment", [](int q) { return mcb::gaussian_moment(q).str(); });

  m.def("stationary", &mcb::finite_stationary, py::arg("Q"));
  m.def(
      "exact_sn_moments",
      [](const Eigen::MatrixXd& Q, const Eigen::VectorXd& V, const Eigen::VectorXd& g,
         long n, int max_power) {
        return mcb::exact_sn_moments(mcb::FiniteChain::make(Q, V, g), n, max_power);
      },
      py::arg("Q"), py::arg("V"), py::arg("g"), py::arg("n"), py::arg("max_power"));
}
