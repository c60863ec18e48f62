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

// Command-line front end: tradeoff curves, region maps, Monte Carlo outage
// and error-event runs, code criteria and the Golden MAC determinant study.

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "dmtmac/criteria.hpp"
#include "dmtmac/dmt.hpp"
#include "dmtmac/errors.hpp"
#include "dmtmac/fading.hpp"
#include "dmtmac/golden.hpp"
#include "dmtmac/io.hpp"

namespace fs = std::filesystem;
using namespace dmtmac;

namespace {

struct GlobalOptions {
  std::uint64_t seed = 1;
  unsigned threads = 1;
  std::string format = "csv";
  std::string out;
};

struct SpecOptions {
  std::string file;
  int users = 1;
  int mt = 1;
  int mr = 1;
  int rho = 1;
  int block_len = 0;
  std::string cov = "iid";
  double cov_a = 0.5;
  std::string cov_file;

  void attach(CLI::App* app) {
    app->add_option("--spec", file, "JSON spec file (overrides the inline flags)");
    app->add_option("--users", users, "Number of users")->check(CLI::PositiveNumber);
    app->add_option("--mt", mt, "Transmit antennas per user")->check(CLI::PositiveNumber);
    app->add_option("--mr", mr, "Receive antennas")->check(CLI::PositiveNumber);
    app->add_option("--rho", rho, "Covariance rank for an i.i.d. block of length rho")
        ->check(CLI::PositiveNumber);
    app->add_option("--N", block_len, "Block length (uses --cov)")->check(CLI::PositiveNumber);
    app->add_option("--cov", cov, "Covariance preset: iid, flat, exponential");
    app->add_option("--cov-a", cov_a, "Exponential correlation coefficient");
    app->add_option("--cov-file", cov_file, "Covariance JSON file");
  }

  ChannelSpec resolve(Json& echo) const {
    ChannelSpec spec;
    if (!file.empty()) {
      spec = read_spec_file(file);
      echo["spec_file"] = file;
    } else if (!cov_file.empty()) {
      spec = ChannelSpec::make(users, mt, mr, read_covariance_file(cov_file));
      echo["cov"] = "file:" + cov_file;
    } else if (block_len > 0) {
      spec = ChannelSpec::make(users, mt, mr, correlation_preset(cov, block_len, cov_a));
      echo["cov"] = cov == "exponential" ? cov + "(a=" + format_number(cov_a) + ")" : cov;
    } else {
      spec = ChannelSpec::with_rank(users, mt, mr, rho);
      echo["cov"] = "iid";
    }
    const Json described = spec_to_json(spec);
    for (const auto& [k, v] : described.items()) echo[k] = v;
    return spec;
  }
};

std::vector<std::string> split(const std::string& text, char sep = ',') {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep))
    if (!item.empty()) out.push_back(item);
  return out;
}

double parse_double(const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw DomainError("not a number: \"" + s + "\"");
  }
  if (used != s.size()) throw DomainError("not a number: \"" + s + "\"");
  return v;
}

std::vector<double> parse_doubles(const std::string& text) {
  std::vector<double> out;
  for (const auto& s : split(text)) out.push_back(parse_double(s));
  return out;
}

std::vector<int> parse_ints(const std::string& text) {
  std::vector<int> out;
  for (const auto& s : split(text)) {
    const double v = parse_double(s);
    if (v != std::floor(v)) throw DomainError("not an integer: \"" + s + "\"");
    out.push_back(static_cast<int>(v));
  }
  return out;
}

UserSubset parse_subset(const std::string& text, int users) {
  if (text.empty() || text == "all") return UserSubset::all(users);
  std::uint32_t mask = 0;
  for (int u : parse_ints(text)) {
    if (u < 1 || u > users)
      throw DomainError("subset member " + std::to_string(u) + " is not a user in 1.." +
                        std::to_string(users));
    mask |= 1u << (u - 1);
  }
  if (mask == 0) throw DomainError("empty subset");
  return UserSubset(mask);
}

GaussianRational parse_gamma(const std::string& text) { return parse_gaussian_rational(text); }

RateTuple parse_rates(const std::string& text, int users) {
  RateTuple r = parse_doubles(text);
  if (static_cast<int>(r.size()) != users)
    throw DomainError("--rates needs " + std::to_string(users) + " values");
  return r;
}

Json rates_json(const RateTuple& r) {
  Json a = Json::array();
  for (double v : r) a.push_back(v);
  return a;
}

std::string subsets_string(const std::vector<UserSubset>& subsets) {
  std::string s;
  for (std::size_t k = 0; k < subsets.size(); ++k) s += (k ? " " : "") + subsets[k].to_string();
  return s;
}

std::string difference_string(const SymbolDifference& d) {
  return "(" + d.a.to_string() + ";" + d.b.to_string() + ")";
}

std::string pair_string(const CodewordPair& p) {
  return "(" + p.s1.to_string() + ";" + p.s2.to_string() + ")-(" + p.s1p.to_string() + ";" +
         p.s2p.to_string() + ")";
}

// ---- dmt ------------------------------------------------------------------

struct DmtOptions {
  SpecOptions spec;
  std::string subset;
  double step = 0.1;
  std::optional<double> r_max;
  std::string rates;
};

Report run_dmt(const DmtOptions& o) {
  Report rep;
  rep.config["command"] = "dmt";
  const ChannelSpec spec = o.spec.resolve(rep.config);
  const UserSubset s = parse_subset(o.subset, spec.users);
  const DmtCurve curve = dmt_curve(spec, s);
  const double top = o.r_max.value_or(curve.max_rate());
  if (!(o.step > 0.0)) throw DomainError("--step must be > 0");
  if (top > curve.max_rate() || top < 0.0)
    throw DomainError("r range [0, " + format_number(top) + "] exceeds m(S) = " +
                      std::to_string(curve.max_rate()) + " for S = " + s.to_string());
  rep.config["subset"] = s.to_string();
  rep.config["step"] = o.step;
  rep.config["r_max"] = top;

  Table anchors{"anchors", {"r", "d"}, {}};
  for (int r = 0; r <= curve.max_rate(); ++r) anchors.add({r, curve.anchors[r]});
  rep.tables.push_back(std::move(anchors));

  Table pts{"curve", {"r", "d"}, {}};
  const auto n = static_cast<long>(std::floor(top / o.step + 1e-9));
  for (long k = 0; k <= n; ++k) {
    const double r = k * o.step;
    pts.add({r, eval_dmt(curve, r)});
  }
  if (std::abs(n * o.step - top) > 1e-9) pts.add({top, eval_dmt(curve, top)});
  rep.tables.push_back(std::move(pts));

  if (!o.rates.empty()) {
    const RateTuple r = parse_rates(o.rates, spec.users);
    rep.config["rates"] = rates_json(r);
    const DominantReport d = dominant_set(spec, r);
    Table t{"dominant", {"subset", "rate", "exponent", "dominant"}, {}};
    for (const auto& e : d.per_subset) {
      const bool dom = std::find(d.dominant.begin(), d.dominant.end(), e.subset) != d.dominant.end();
      t.add({e.subset.to_string(), e.rate, e.exponent, dom});
    }
    rep.tables.push_back(std::move(t));
    rep.notes.push_back("optimal d = " + format_number(d.optimal_d) + ", dominant " +
                        subsets_string(d.dominant));
  }
  return rep;
}

// ---- regions --------------------------------------------------------------

struct RegionsOptions {
  SpecOptions spec;
  double step = 0.01;
};

Report run_regions(const RegionsOptions& o) {
  Report rep;
  rep.config["command"] = "regions";
  const ChannelSpec spec = o.spec.resolve(rep.config);
  if (spec.users != 2) throw DomainError("regions needs exactly 2 users");
  rep.config["step"] = o.step;
  const auto grid = classify_region_grid(spec, o.step);
  Table t{"regions", {"r1", "r2", "label"}, {}};
  std::map<std::string, std::size_t> counts;
  for (const auto& p : grid) {
    t.add({p.r1, p.r2, p.label});
    ++counts[p.label];
  }
  Table summary{"summary", {"label", "points", "fraction"}, {}};
  for (const auto& [label, n] : counts)
    summary.add({label, n, grid.empty() ? 0.0 : static_cast<double>(n) / grid.size()});
  rep.tables.push_back(std::move(summary));
  rep.tables.push_back(std::move(t));
  return rep;
}

// ---- rate-region ----------------------------------------------------------

struct RateRegionOptions {
  SpecOptions spec;
  std::string d_list = "0";
};

Report run_rate_region(const RateRegionOptions& o) {
  Report rep;
  rep.config["command"] = "rate-region";
  const ChannelSpec spec = o.spec.resolve(rep.config);
  const auto ds = parse_doubles(o.d_list);
  if (ds.empty()) throw DomainError("--d needs at least one value");
  rep.config["d"] = rates_json(ds);
  Table cons{"constraints", {"d", "subset", "bound"}, {}};
  Table verts{"vertices", {"d", "index", "r1", "r2"}, {}};
  for (double d : ds) {
    for (const auto& c : rate_region_constraints(spec, d)) cons.add({d, c.subset.to_string(), c.bound});
    if (spec.users == 2) {
      const auto v = rate_region_vertices_2user(spec, d);
      for (std::size_t k = 0; k < v.size(); ++k) verts.add({d, k, v[k].first, v[k].second});
    }
  }
  rep.tables.push_back(std::move(cons));
  if (spec.users == 2) rep.tables.push_back(std::move(verts));
  return rep;
}

// ---- outage-sim -----------------------------------------------------------

struct OutageOptions {
  SpecOptions spec;
  std::string rates;
  std::string event = "subset";
  std::string subset;
  std::string grid = "10:40:5";
  std::uint64_t trials = 10000;
  double fixed_rate = 0.0;
  std::string interval = "wald";
  bool check_jensen = false;
};

Report run_outage(const OutageOptions& o, const GlobalOptions& g) {
  Report rep;
  rep.config["command"] = "outage-sim";
  const ChannelSpec spec = o.spec.resolve(rep.config);
  const RateTuple r = o.rates.empty() ? RateTuple(spec.users, 0.0) : parse_rates(o.rates, spec.users);
  if (o.event != "subset" && o.event != "total" && o.event != "jensen")
    throw DomainError("--event must be subset, total or jensen");
  const UserSubset s = parse_subset(o.subset, spec.users);
  const auto grid = parse_snr_grid(o.grid);
  McConfig cfg;
  cfg.trials = o.trials;
  cfg.seed = g.seed;
  cfg.threads = g.threads;
  cfg.fixed_rate_nats = o.fixed_rate;
  if (o.interval == "cp") cfg.interval = IntervalKind::clopper_pearson;
  else if (o.interval != "wald") throw DomainError("--interval must be wald or cp");

  rep.config["rates"] = rates_json(r);
  rep.config["event"] = o.event;
  if (o.event != "total") rep.config["subset"] = s.to_string();
  rep.config["snr_db"] = o.grid;
  rep.config["trials"] = o.trials;
  rep.config["seed"] = g.seed;
  rep.config["fixed_rate_nats"] = o.fixed_rate;
  rep.config["interval"] = o.interval;

  Table t{"estimates", {"snr_db", "p_hat", "events", "trials", "ci95", "ci_low", "ci_high"}, {}};
  std::vector<std::pair<double, McEstimate>> points;
  Table jc{"jensen_check", {"snr_db", "samples", "violations", "max_excess"}, {}};
  for (double db : grid) {
    const double snr = db_to_linear(db);
    McEstimate e;
    if (o.event == "subset") e = estimate_outage(spec, r, s, snr, cfg);
    else if (o.event == "jensen") e = estimate_jensen_outage(spec, r, s, snr, cfg);
    else e = estimate_total_outage(spec, r, snr, cfg);
    t.add({db, e.p_hat, e.events, e.trials, e.ci95, e.ci_low, e.ci_high});
    points.emplace_back(db, e);
    if (o.check_jensen) {
      const JensenCheck c = check_jensen_dominance(spec, s, snr, cfg);
      jc.add({db, c.samples, c.violations, c.max_excess});
    }
  }
  rep.tables.push_back(std::move(t));
  if (o.check_jensen) rep.tables.push_back(std::move(jc));

  double predicted = 0.0;
  if (o.event == "total") predicted = optimal_dmt(spec, r);
  else predicted = eval_dmt(dmt_curve(spec, s), rate_sum(r, s));
  Table fit{"fit", {"exponent", "slope_stderr", "predicted"}, {}};
  if (grid.size() < 3) {
    rep.notes.push_back("warning: fewer than 3 SNR points, exponent omitted");
  } else {
    try {
      const SlopeFit f = fit_snr_exponent(points);
      fit.add({f.exponent, f.slope_stderr, predicted});
      rep.tables.push_back(std::move(fit));
    } catch (const InfeasibleError& e) {
      rep.notes.push_back(std::string("warning: exponent omitted: ") + e.what());
    }
  }
  return rep;
}

// ---- error-sim ------------------------------------------------------------

struct ErrorSimCliOptions {
  SpecOptions spec;
  std::string codebooks;
  bool qam4 = false;
  std::string rates;
  std::string grid = "40";
  std::uint64_t trials = 10000;
  std::uint64_t cap = 1u << 20;
};

Report run_error_sim(const ErrorSimCliOptions& o, const GlobalOptions& g) {
  Report rep;
  rep.config["command"] = "error-sim";
  const ChannelSpec spec = o.spec.resolve(rep.config);
  if (o.codebooks.empty() == !o.qam4) throw DomainError("give exactly one of --codebooks or --qam4");
  std::optional<CodebookSet> fixed;
  RateTuple r;
  if (!o.rates.empty()) r = parse_rates(o.rates, spec.users);
  if (o.qam4 && r.empty()) throw DomainError("--qam4 needs --rates");
  if (!o.codebooks.empty()) {
    fixed = read_codebook_file(o.codebooks);
    rep.config["codebooks"] = o.codebooks;
  } else {
    rep.config["codebooks"] = "qam4";
  }
  if (!r.empty()) rep.config["rates"] = rates_json(r);
  rep.config["snr_db"] = o.grid;
  rep.config["trials"] = o.trials;
  rep.config["seed"] = g.seed;

  McConfig cfg;
  cfg.trials = o.trials;
  cfg.seed = g.seed;
  cfg.threads = g.threads;
  ErrorSimOptions eo;
  eo.cap = o.cap;

  Table t{"error_events", {"snr_db", "event", "count", "frequency"}, {}};
  Table top{"most_frequent", {"snr_db", "subsets"}, {}};
  for (double db : parse_snr_grid(o.grid)) {
    const double snr = db_to_linear(db);
    CodebookSet set;
    if (fixed) {
      set = *fixed;
    } else {
      for (int u = 0; u < spec.users; ++u) set.users.push_back(rate_scaled_qam4(r[u], snr));
    }
    const ErrorEventCounts c = ml_error_event_sim(set, spec, snr, cfg, eo);
    for (std::size_t k = 0; k < c.subsets.size(); ++k)
      t.add({db, c.subsets[k].to_string(), c.counts[k], c.frequency(c.subsets[k])});
    t.add({db, "total", c.total_errors, c.total_frequency()});
    top.add({db, subsets_string(c.most_frequent())});
  }
  rep.tables.push_back(std::move(t));
  rep.tables.push_back(std::move(top));
  if (!r.empty()) {
    const DominantReport d = dominant_set(spec, r);
    rep.notes.push_back("predicted dominant outage set " + subsets_string(d.dominant) +
                        " with d = " + format_number(d.optimal_d));
  }
  return rep;
}

// ---- code-check -----------------------------------------------------------

struct CodeCheckOptions {
  SpecOptions spec;
  std::vector<std::string> codebooks;
  std::string generator;
  std::string sizes = "2,4,6,8";
  std::string rates;
  double eps = 0.05;
  std::string gamma = "i";
  std::string subset;
  std::optional<double> target;
  bool relaxed = false;
  double margin = kDefaultEpsMargin;
  std::uint64_t cap = 1'000'000'000;
  std::string witness_out;
};

Json witness_json(const LambdaResult& l) {
  Json w = Json::array();
  for (const auto& e : l.argmin) w.push_back(matrix_to_json(e));
  return w;
}

Report run_code_check(const CodeCheckOptions& o, const GlobalOptions& g) {
  Report rep;
  rep.config["command"] = "code-check";
  ChannelSpec spec;
  const bool golden = !o.generator.empty();
  if (golden) {
    if (o.generator != "golden") throw DomainError("unknown generator \"" + o.generator + "\"");
    spec = golden_channel_spec();
    const Json described = spec_to_json(spec);
    for (const auto& [k, v] : described.items()) rep.config[k] = v;
    rep.config["cov"] = "flat";
  } else {
    spec = o.spec.resolve(rep.config);
  }
  const UserSubset s = parse_subset(o.subset, spec.users);
  rep.config["subset"] = s.to_string();

  std::vector<std::pair<double, double>> series;
  std::vector<LambdaResult> results;
  RateTuple rates;
  LambdaOptions lo;
  lo.cap = o.cap;
  lo.threads = g.threads;
  Table t{"lambda", {"snr_db", "subset", "lambda"}, {}};

  if (golden) {
    rates = o.rates.empty() ? RateTuple{0.5, 0.5} : parse_rates(o.rates, 2);
    const GaussianRational gamma = parse_gamma(o.gamma);
    const auto sizes = parse_ints(o.sizes);
    if (sizes.empty()) throw DomainError("--sizes needs at least one R'");
    rep.config["generator"] = "golden";
    rep.config["sizes"] = o.sizes;
    rep.config["gamma"] = gamma.to_string();
    rep.config["eps"] = o.eps;
    if (s.size() == 2 && rates[0] != rates[1])
      throw UnsupportedError("golden generator with S = {1,2} needs equal rates");
    const double r_map = rates[s.members()[0] - 1];
    GoldenSearchOptions go;
    go.threads = g.threads;
    for (int rb : sizes) {
      const double snr = rate_bits_to_snr(rb, r_map, o.eps);
      double lam = 0.0;
      if (s.size() == 1) {
        const int u = s.members()[0];
        LambdaResult lr = lambda_min_from_differences({golden_difference_lists(rb, u, gamma)}, s, spec, lo);
        lam = lr.value;
        results.push_back(std::move(lr));
      } else {
        const OmegaResult om = omega(rb, rb, gamma, go);
        lam = lambda22_from_omega(rb, rb, om.value);
        LambdaResult lr;
        lr.subset = s;
        lr.value = lam;
        const Complex gf = gamma.to_complex();
        for (int u = 1; u <= 2; ++u) {
          const SymbolDifference& d = u == 1 ? om.witness.e1 : om.witness.e2;
          ComplexMatrix e(1, 2);
          const Complex x = lattice_to_complex(d.encoded());
          const Complex sx = lattice_to_complex(d.encoded().sigma());
          const double c = std::sqrt(2.0) * std::exp2(-0.5 * rb);
          e(0, 0) = c * (u == 1 ? x : gf * x);
          e(0, 1) = c * sx;
          lr.argmin.push_back(e);
        }
        results.push_back(std::move(lr));
      }
      series.emplace_back(snr, lam);
      t.add({10.0 * std::log10(snr), s.to_string(), lam});
    }
  } else {
    if (o.codebooks.empty()) throw DomainError("give --codebooks files or --generator golden");
    Json files = Json::array();
    for (const auto& f : o.codebooks) {
      CodebookSet set = read_codebook_file(f);
      files.push_back(f);
      if (!(set.snr > 0.0)) throw DomainError(f + ": codebook file needs \"snr_db\"");
      if (rates.empty())
        for (const auto& b : set.users) rates.push_back(b.rate);
      LambdaResult lr = lambda_min(set, s, spec, lo);
      series.emplace_back(set.snr, lr.value);
      t.add({10.0 * std::log10(set.snr), s.to_string(), lr.value});
      results.push_back(std::move(lr));
    }
    rep.config["codebooks"] = files;
    if (!o.rates.empty()) rates = parse_rates(o.rates, spec.users);
  }
  rep.tables.push_back(std::move(t));
  rep.config["rates"] = rates_json(rates);

  double target = rate_sum(rates, s);
  std::string target_kind = "r(S)";
  if (o.target) {
    target = *o.target;
    target_kind = "user";
  } else if (o.relaxed) {
    target = gamma_upper_bound(spec, rates, s);
    target_kind = "relaxed upper bound";
  }
  rep.config["target"] = target;
  rep.config["target_kind"] = target_kind;
  rep.config["eps_margin"] = o.margin;

  Table v{"verdict", {"subset", "decay", "target", "margin", "verdict", "label"}, {}};
  if (series.size() < 3) {
    rep.notes.push_back("warning: fewer than 3 SNR points, no verdict");
  } else {
    const CriterionVerdict cv = criterion_check(series, target, o.margin);
    if (cv.zero_lambda) {
      v.add({s.to_string(), nullptr, target, nullptr, "FAIL", "lambda=0"});
      const LambdaResult& w = results[*cv.zero_index];
      Table wt{"witness", {"snr_db", "member", "re", "im"}, {}};
      const auto members = s.members();
      for (std::size_t k = 0; k < w.argmin.size(); ++k) {
        const Json m = matrix_to_json(w.argmin[k]);
        wt.add({10.0 * std::log10(series[*cv.zero_index].first), members[k], m["re"].dump(), m["im"].dump()});
      }
      rep.tables.push_back(std::move(wt));
      if (!o.witness_out.empty()) {
        std::ofstream f(o.witness_out);
        f << Json{{"subset", s.to_string()}, {"differences", witness_json(w)}}.dump(2) << "\n";
      }
    } else {
      v.add({s.to_string(), cv.decay, cv.target, cv.margin, cv.pass ? "PASS" : "FAIL", cv.label});
    }
    rep.tables.push_back(std::move(v));
  }
  return rep;
}

// ---- golden-omega ---------------------------------------------------------

struct GoldenOmegaOptions {
  std::string sizes = "2,4,6";
  std::string gamma = "i";
  double r = 0.5;
  double eps = 0.05;
  std::uint64_t cap = 300'000'000;
  std::string export_dir;
};

Report run_golden_omega(const GoldenOmegaOptions& o, const GlobalOptions& g) {
  Report rep;
  rep.config["command"] = "golden-omega";
  const auto sizes = parse_ints(o.sizes);
  if (sizes.empty()) throw DomainError("--sizes must list at least one R'");
  const GaussianRational gamma = parse_gamma(o.gamma);
  rep.config["sizes"] = o.sizes;
  rep.config["gamma"] = gamma.to_string();
  rep.config["r"] = o.r;
  rep.config["eps"] = o.eps;
  rep.config["cap"] = o.cap;
  GoldenSearchOptions go;
  go.cap = o.cap;
  go.threads = g.threads;

  Table t{"omega",
          {"R1", "R2", "omega_p", "omega_q", "omega_float", "snr_db", "nonvanishing", "evaluated",
           "witness_e1", "witness_e2", "witness_codewords_1", "witness_codewords_2"},
          {}};
  std::vector<double> snr, values;
  std::optional<RealQuad> previous;
  bool nonincreasing = true;
  for (int rb : sizes) {
    const double s_lin = rate_bits_to_snr(rb, o.r, o.eps);
    const double s_db = 10.0 * std::log10(s_lin);
    try {
      const OmegaResult om = omega(rb, rb, gamma, go);
      const bool pass = om.value.sign() > 0;
      const GoldenWitness& w = om.witness;
      t.add({rb, rb, rational_to_string(om.value.p), rational_to_string(om.value.q), om.value_float,
             s_db, pass ? "PASS" : "FAIL", om.evaluated, difference_string(w.e1),
             difference_string(w.e2), pair_string(w.user1), pair_string(w.user2)});
      if (previous && om.value > *previous) nonincreasing = false;
      previous = om.value;
      if (pass) {
        snr.push_back(s_lin);
        values.push_back(om.value_float);
      }
    } catch (const InfeasibleError& e) {
      t.add({rb, rb, nullptr, nullptr, nullptr, s_db, std::string("refused: ") + e.what(), nullptr,
             nullptr, nullptr, nullptr, nullptr});
    }
    if (!o.export_dir.empty()) {
      fs::create_directories(o.export_dir);
      CodebookSet set = golden_codebooks(rb, rb, gamma);
      set.snr = s_lin;
      for (auto& b : set.users) b.rate = o.r;
      std::ofstream f(fs::path(o.export_dir) / ("golden_R" + std::to_string(rb) + ".json"));
      f << codebooks_to_json(set).dump() << "\n";
    }
  }
  rep.tables.push_back(std::move(t));
  rep.notes.push_back(std::string("omega nonincreasing over computed sizes: ") +
                      (nonincreasing ? "yes" : "no"));
  if (snr.size() >= 3) {
    const DecayClass c = classify_decay(snr, values);
    Table d{"decay", {"classification", "delta_hat", "poly_rss", "exp_rate", "exp_rss"}, {}};
    d.add({c.label(), c.delta_hat, c.poly_rss, c.exp_rate, c.exp_rss});
    rep.tables.push_back(std::move(d));
  } else {
    rep.notes.push_back("decay classification needs at least 3 sizes with omega > 0");
  }
  rep.notes.push_back(
      "caveat: the classification is empirical over finitely many sizes and does not determine "
      "the asymptotic decay of omega");
  return rep;
}

void emit(const Report& rep, const GlobalOptions& g) {
  const OutputFormat fmt = parse_format(g.format);
  if (g.out.empty()) {
    write_report(std::cout, rep, fmt);
    return;
  }
  std::ofstream f(g.out);
  if (!f) throw DomainError("cannot write " + g.out);
  write_report(f, rep, fmt);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Diversity-multiplexing tradeoff toolkit for selective-fading MIMO MAC"};
  app.require_subcommand(1);
  app.fallthrough();
  GlobalOptions g;
  app.add_option("--seed", g.seed, "RNG seed");
  app.add_option("--threads", g.threads, "Worker threads (0: all cores)");
  app.add_option("--format", g.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--out", g.out, "Output file (default stdout)");

  DmtOptions dmt;
  auto* c_dmt = app.add_subcommand("dmt", "Tradeoff curve of a user subset");
  dmt.spec.attach(c_dmt);
  c_dmt->add_option("--subset", dmt.subset, "Users, e.g. 1,2 (default all)");
  c_dmt->add_option("--step", dmt.step, "r resolution");
  c_dmt->add_option("--r-max", dmt.r_max, "Largest r (default m(S))");
  c_dmt->add_option("--rates", dmt.rates, "Rate tuple for the dominant-set report");

  RegionsOptions reg;
  auto* c_reg = app.add_subcommand("regions", "Dominant outage regions of a two-user MAC");
  reg.spec.attach(c_reg);
  c_reg->add_option("--step", reg.step, "Grid step");

  RateRegionOptions rr;
  auto* c_rr = app.add_subcommand("rate-region", "Multiplexing-rate region for target diversities");
  rr.spec.attach(c_rr);
  c_rr->add_option("--d", rr.d_list, "Comma-separated diversity targets");

  OutageOptions out;
  auto* c_out = app.add_subcommand("outage-sim", "Monte Carlo outage probabilities and exponent");
  out.spec.attach(c_out);
  c_out->add_option("--rates", out.rates, "Multiplexing rates r1,...,rU (default 0)");
  c_out->add_option("--event", out.event, "subset, total or jensen");
  c_out->add_option("--subset", out.subset, "Users, e.g. 1,2 (default all)");
  c_out->add_option("--snr-db", out.grid, "start:stop:step or a single value");
  c_out->add_option("--trials", out.trials, "Trials per SNR point")->check(CLI::PositiveNumber);
  c_out->add_option("--fixed-rate", out.fixed_rate, "Fixed per-user rate in nats");
  c_out->add_option("--interval", out.interval, "wald or cp");
  c_out->add_flag("--check-jensen", out.check_jensen, "Also compare per-draw mutual informations");

  ErrorSimCliOptions es;
  auto* c_es = app.add_subcommand("error-sim", "Joint ML decoding error events");
  es.spec.attach(c_es);
  c_es->add_option("--codebooks", es.codebooks, "Codebook JSON file");
  c_es->add_flag("--qam4", es.qam4, "Rate-scaled 4-point QAM blocks");
  c_es->add_option("--rates", es.rates, "Multiplexing rates");
  c_es->add_option("--snr-db", es.grid, "start:stop:step or a single value");
  c_es->add_option("--trials", es.trials, "Trials per SNR point")->check(CLI::PositiveNumber);
  c_es->add_option("--cap", es.cap, "Joint hypothesis cap");

  CodeCheckOptions cc;
  auto* c_cc = app.add_subcommand("code-check", "Lambda criterion over a family of codebooks");
  cc.spec.attach(c_cc);
  c_cc->add_option("--codebooks", cc.codebooks, "Codebook JSON files, one per SNR point");
  c_cc->add_option("--generator", cc.generator, "Built-in family: golden");
  c_cc->add_option("--sizes", cc.sizes, "Golden R' list");
  c_cc->add_option("--rates", cc.rates, "Multiplexing rates");
  c_cc->add_option("--eps", cc.eps, "Golden rate backoff eps");
  c_cc->add_option("--gamma", cc.gamma, "Golden twist");
  c_cc->add_option("--subset", cc.subset, "Users, e.g. 1,2 (default all)");
  c_cc->add_option("--target", cc.target, "Target exponent (default r(S))");
  c_cc->add_flag("--relaxed", cc.relaxed, "Use the relaxed target upper bound");
  c_cc->add_option("--margin", cc.margin, "Verdict margin");
  c_cc->add_option("--cap", cc.cap, "Difference tuple cap");
  c_cc->add_option("--witness-out", cc.witness_out, "Write the zero-Lambda witness here");

  GoldenOmegaOptions go;
  auto* c_go = app.add_subcommand("golden-omega", "Exact minimum determinants of the Golden MAC");
  c_go->add_option("--sizes", go.sizes, "R' list, e.g. 2,4,6");
  c_go->add_option("--gamma", go.gamma, "Twist: i, -i, rational or re,im");
  c_go->add_option("--r", go.r, "Rate for the SNR mapping");
  c_go->add_option("--eps", go.eps, "Rate backoff for the SNR mapping");
  c_go->add_option("--cap", go.cap, "Difference pair cap per size");
  c_go->add_option("--export-codebooks", go.export_dir, "Directory for scaled codebook JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    Report rep;
    if (*c_dmt) rep = run_dmt(dmt);
    else if (*c_reg) rep = run_regions(reg);
    else if (*c_rr) rep = run_rate_region(rr);
    else if (*c_out) rep = run_outage(out, g);
    else if (*c_es) rep = run_error_sim(es, g);
    else if (*c_cc) rep = run_code_check(cc, g);
    else rep = run_golden_omega(go, g);
    emit(rep, g);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
