// Copyright 2026 The dmtmac Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "dmtmac/criteria.hpp"
#include "dmtmac/dmt.hpp"
#include "dmtmac/errors.hpp"
#include "dmtmac/fading.hpp"
#include "dmtmac/golden.hpp"

namespace py = pybind11;
using namespace dmtmac;

namespace {

UserSubset subset_from(const std::vector<int>& members) {
  std::uint32_t mask = 0;
  for (int u : members) {
    if (u < 1 || u > 20) throw DomainError("user index out of range");
    mask |= 1u << (u - 1);
  }
  if (mask == 0) throw DomainError("empty subset");
  return UserSubset(mask);
}

ChannelSpec make_spec(int users, int mt, int mr, int block_len, const std::string& cov, double a,
                      std::optional<int> rho) {
  if (rho) return ChannelSpec::with_rank(users, mt, mr, *rho);
  return ChannelSpec::make(users, mt, mr, correlation_preset(cov, block_len, a));
}

py::dict estimate_dict(const McEstimate& e) {
  py::dict d;
  d["p_hat"] = e.p_hat;
  d["events"] = e.events;
  d["trials"] = e.trials;
  d["ci95"] = e.ci95;
  d["ci_low"] = e.ci_low;
  d["ci_high"] = e.ci_high;
  return d;
}

py::dict witness_dict(const GoldenWitness& w) {
  py::dict d;
  d["e1"] = py::make_tuple(w.e1.a.to_string(), w.e1.b.to_string());
  d["e2"] = py::make_tuple(w.e2.a.to_string(), w.e2.b.to_string());
  d["abs2"] = w.abs2.to_string();
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Diversity-multiplexing tradeoff tools for selective-fading MIMO MAC";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<DomainError>(m, "DomainError", base.ptr());
  py::register_exception<UnsupportedError>(m, "UnsupportedError", base.ptr());
  py::register_exception<InfeasibleError>(m, "InfeasibleError", base.ptr());
  py::register_exception<ContractViolation>(m, "ContractViolation", base.ptr());

  py::class_<ChannelSpec>(m, "ChannelSpec")
      .def(py::init(&make_spec), py::arg("users"), py::arg("mt"), py::arg("mr"),
           py::arg("block_len") = 1, py::arg("cov") = "iid", py::arg("a") = 0.5,
           py::arg("rho") = py::none())
      .def_readonly("users", &ChannelSpec::users)
      .def_readonly("mt", &ChannelSpec::tx_per_user)
      .def_readonly("mr", &ChannelSpec::rx)
      .def_readonly("block_len", &ChannelSpec::block_len)
      .def_readonly("rho", &ChannelSpec::cov_rank)
      .def_readonly("covariance", &ChannelSpec::covariance);

  m.def("dmt_anchors", [](int min_dim, int max_dim, int rho) { return dmt_curve(min_dim, max_dim, rho).anchors; },
        py::arg("min_dim"), py::arg("max_dim"), py::arg("rho"));
  m.def("subset_anchors", [](const ChannelSpec& spec, const std::vector<int>& s) {
    return dmt_curve(spec, subset_from(s)).anchors;
  });
  m.def("eval_dmt", [](const std::vector<std::int64_t>& anchors, double r) { return eval_dmt({anchors}, r); });
  m.def("inverse_dmt", [](const std::vector<std::int64_t>& anchors, double d) { return inverse_dmt({anchors}, d); });

  m.def("dominant_set", [](const ChannelSpec& spec, const RateTuple& r) {
    const DominantReport rep = dominant_set(spec, r);
    py::list dominant;
    for (UserSubset s : rep.dominant) dominant.append(s.members());
    py::dict per;
    for (const auto& e : rep.per_subset) per[py::tuple(py::cast(e.subset.members()))] = e.exponent;
    py::dict d;
    d["dominant"] = dominant;
    d["optimal_d"] = rep.optimal_d;
    d["per_subset"] = per;
    return d;
  });
  m.def("rate_region_vertices", [](const ChannelSpec& spec, double d) { return rate_region_vertices_2user(spec, d); });
  m.def("region_labels", [](const ChannelSpec& spec, double step) {
    py::list out;
    for (const auto& p : classify_region_grid(spec, step)) out.append(py::make_tuple(p.r1, p.r2, p.label));
    return out;
  });

  m.def(
      "estimate_outage",
      [](const ChannelSpec& spec, const RateTuple& r, const std::vector<int>& s, double snr_db,
         std::uint64_t trials, std::uint64_t seed, unsigned threads, const std::string& event,
         double fixed_rate_nats) {
        McConfig cfg;
        cfg.trials = trials;
        cfg.seed = seed;
        cfg.threads = threads;
        cfg.fixed_rate_nats = fixed_rate_nats;
        const double snr = db_to_linear(snr_db);
        py::gil_scoped_release release;
        McEstimate e;
        if (event == "subset") e = estimate_outage(spec, r, subset_from(s), snr, cfg);
        else if (event == "jensen") e = estimate_jensen_outage(spec, r, subset_from(s), snr, cfg);
        else if (event == "total") e = estimate_total_outage(spec, r, snr, cfg);
        else throw DomainError("event must be subset, jensen or total");
        py::gil_scoped_acquire acquire;
        return estimate_dict(e);
      },
      py::arg("spec"), py::arg("rates"), py::arg("subset"), py::arg("snr_db"),
      py::arg("trials") = 10000, py::arg("seed") = 1, py::arg("threads") = 1,
      py::arg("event") = "subset", py::arg("fixed_rate_nats") = 0.0);

  m.def(
      "omega",
      [](int r1, int r2, const std::string& gamma) {
        const OmegaResult o = omega(r1, r2, parse_gaussian_rational(gamma));
        py::dict d;
        d["p"] = rational_to_string(o.value.p);
        d["q"] = rational_to_string(o.value.q);
        d["value"] = o.value_float;
        d["evaluated"] = o.evaluated;
        d["witness"] = witness_dict(o.witness);
        return d;
      },
      py::arg("rate_bits_1"), py::arg("rate_bits_2"), py::arg("gamma") = "i");

  m.def(
      "verify_nonvanishing",
      [](int rb, const std::string& gamma) {
        const NonvanishingVerdict v = verify_nonvanishing(rb, parse_gaussian_rational(gamma));
        py::dict d;
        d["pass"] = v.pass;
        d["evaluated"] = v.evaluated;
        d["witness"] = v.witness ? py::object(witness_dict(*v.witness)) : py::none();
        return d;
      },
      py::arg("rate_bits"), py::arg("gamma") = "i");

  m.def(
      "golden_lambda",
      [](int rb, const std::string& gamma) {
        return lambda_min(golden_codebooks(rb, rb, parse_gaussian_rational(gamma)), UserSubset::of({1, 2}),
                          golden_channel_spec())
            .value;
      },
      py::arg("rate_bits"), py::arg("gamma") = "i");
  m.def("lambda22_from_omega", [](int r1, int r2, const std::string& p, const std::string& q) {
    return lambda22_from_omega(r1, r2, RealQuad(parse_rational(p), parse_rational(q)));
  });

  m.def("lambda_min", [](const std::vector<std::vector<ComplexMatrix>>& books, const std::vector<int>& s,
                         const ChannelSpec& spec) {
    CodebookSet set;
    for (const auto& words : books) set.users.push_back({words, 0.0});
    return lambda_min(set, subset_from(s), spec).value;
  });

  m.def("classify_decay", [](const std::vector<double>& snr, const std::vector<double>& omega) {
    const DecayClass c = classify_decay(snr, omega);
    return py::make_tuple(c.label(), c.delta_hat);
  });
}
