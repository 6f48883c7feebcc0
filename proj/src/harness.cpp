#include "mulam/harness.hpp"

#include <chrono>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "mulam/extension.hpp"
#include "mulam/fit.hpp"
#include "mulam/json_io.hpp"
#include "mulam/midpoint.hpp"

namespace mulam {

namespace {

Json pair_witness(const Vec& a, const Vec& b) {
  Json w;
  w["a"] = vec_to_json(a);
  w["b"] = vec_to_json(b);
  return w;
}

CheckResult check_le(std::string name, double value, double tol, Json witness = nullptr,
                     Json info = nullptr) {
  CheckResult c;
  c.name = std::move(name);
  c.value = value;
  c.threshold = tol;
  c.cmp = "le";
  c.pass = value <= tol;
  c.witness = std::move(witness);
  c.info = std::move(info);
  return c;
}

CheckResult check_ge(std::string name, double value, double floor, Json witness = nullptr,
                     Json info = nullptr) {
  CheckResult c;
  c.name = std::move(name);
  c.value = value;
  c.threshold = floor;
  c.cmp = "ge";
  c.pass = value >= floor;
  c.witness = std::move(witness);
  c.info = std::move(info);
  return c;
}

CheckResult check_in(std::string name, double value, double lo, double hi,
                     Json witness = nullptr) {
  CheckResult c;
  c.name = std::move(name);
  c.value = value;
  c.threshold = Json::array({lo, hi});
  c.cmp = "in";
  c.pass = value >= lo && value <= hi;
  c.witness = std::move(witness);
  return c;
}

void push(RunReport& rep, CheckResult c) {
  rep.all_pass = rep.all_pass && c.pass;
  rep.checks.push_back(std::move(c));
}

Json extension_result_json(const ExtensionResult& res) {
  Json j;
  j["A"] = mat_to_json(res.a);
  j["u"] = vec_to_json(res.u);
  j["r"] = res.r;
  j["center"] = vec_to_json(res.center);
  Json d;
  d["radial_scaling"] = res.defects.radial_scaling;
  d["small_ball_additivity"] = res.defects.small_ball_additivity;
  d["homogeneity"] = res.defects.homogeneity;
  d["additivity"] = res.defects.additivity;
  d["agreement"] = res.defects.agreement;
  d["isometry"] = res.defects.isometry;
  d["invertibility_ok"] = res.defects.invertibility_ok;
  d["condition_estimate"] = res.defects.condition_estimate;
  j["defects"] = std::move(d);
  j["seed"] = res.defects.seed;
  Json counts;
  for (const auto& [k, v] : res.defects.sample_counts) counts[k] = v;
  j["sample_counts"] = std::move(counts);
  return j;
}

// Samples a pair whose whole segment stays inside the domain; nullopt when
// the proposal budget runs out.
std::optional<std::pair<Vec, Vec>> sample_contained_pair(const Domain& d, Rng& rng,
                                                         std::size_t budget) {
  // Same grid resolution midpoint_defect validates with, so an accepted pair
  // never trips its containment check.
  const int steps = 256;
  for (std::size_t trial = 0; trial < budget; ++trial) {
    Vec f = d.sample(rng);
    Vec g = d.sample(rng);
    bool inside = true;
    for (int j = 0; j <= steps && inside; ++j)
      inside = d.contains(segment_point(f, g, static_cast<double>(j) / steps));
    if (inside) return std::make_pair(f, g);
  }
  return std::nullopt;
}

void suite_isometry(const Fixture& f, const RunConfig& cfg, RunReport& rep) {
  double ax = check_norm_axioms(f.space, std::min<std::size_t>(cfg.samples, 2000),
                                derive_seed(cfg.seed, "axioms"));
  push(rep, check_le("norm_axioms", ax, cfg.tol_rel));

  std::vector<double> per;
  IsometryDefect iso =
      isometry_defect(f.map, f.domain, f.target_metric(), cfg.samples,
                      derive_seed(cfg.seed, "isometry"), cfg.csv.empty() ? nullptr : &per);
  Json info;
  info["pairs"] = iso.pairs;
  push(rep, check_le("isometry_defect", iso.max_defect, cfg.tol_abs,
                     pair_witness(iso.worst_a, iso.worst_b), info));
  for (std::size_t i = 0; i < per.size(); ++i)
    rep.csv_rows.emplace_back("isometry_defect", i, per[i]);
}

void suite_midpoint(const Fixture& f, const RunConfig& cfg, RunReport& rep) {
  Metric dm = f.target_metric();
  Rng rng(derive_seed(cfg.seed, "midpoint-pairs"));
  const std::size_t want = std::max<std::size_t>(16, cfg.samples / 10);

  double worst = 0.0;
  Json witness = nullptr;
  std::size_t got = 0;
  for (std::size_t i = 0; i < want; ++i) {
    auto pair = sample_contained_pair(f.domain, rng, 400);
    if (!pair) break;
    double defect = midpoint_defect(f.map, pair->first, pair->second, dm);
    if (!cfg.csv.empty()) rep.csv_rows.emplace_back("midpoint_defect", got, defect);
    if (defect > worst) {
      worst = defect;
      witness = pair_witness(pair->first, pair->second);
    }
    ++got;
  }
  Json info;
  info["pairs"] = got;
  push(rep, check_ge("midpoint_pairs_sampled", static_cast<double>(got), 1.0, nullptr, info));
  if (got > 0) push(rep, check_le("midpoint_defect", worst, cfg.tol_abs, witness, info));

  // Certified chains on a smaller batch: margin guard, then dyadic descent.
  Rng rng2(derive_seed(cfg.seed, "midpoint-cert"));
  std::size_t refusals = 0, certified = 0;
  double chain_worst = 0.0;
  std::string refusal_reason;
  for (std::size_t i = 0; i < 16; ++i) {
    auto pair = sample_contained_pair(f.domain, rng2, 400);
    if (!pair) break;
    MidpointCertificate cert = certify_midpoint(f.map, f.domain, pair->first, pair->second, dm);
    if (cert.certified) {
      ++certified;
      chain_worst = std::max(chain_worst, cert.max_chain_defect);
    } else {
      ++refusals;
      if (refusal_reason.empty()) refusal_reason = cert.refusal;
    }
  }
  Json cert_info;
  cert_info["certified"] = certified;
  cert_info["refusal_reason"] = refusal_reason;
  push(rep, check_le("certification_refusals", static_cast<double>(refusals), 0.0, nullptr,
                     cert_info));
  if (certified > 0) push(rep, check_le("chain_defect", chain_worst, cfg.tol_abs));
}

Vec extension_centre(const Fixture& f, const RunConfig& cfg) {
  if (f.star_center) return *f.star_center;
  Vec zero = Vec::zero(f.space.dim);
  if (f.domain.contains(zero)) return zero;
  Rng rng(derive_seed(cfg.seed, "fallback-centre"));
  return f.domain.sample(rng);
}

void suite_extension(const Fixture& f, const RunConfig& cfg, RunReport& rep) {
  const bool convex_body = f.domain.props().convex && !f.domain.props().open;

  ExtendOptions opts;
  opts.n_samples = cfg.samples;
  opts.seed = derive_seed(cfg.seed, "extend");
  opts.tol_abs = cfg.tol_abs;
  opts.force = cfg.force;

  ExtensionResult res;
  double star = 0.0;
  Json star_witness = nullptr;
  if (convex_body) {
    res = extend_convex(f.map, f.domain, cfg.samples, opts.seed);
  } else {
    Vec a0 = extension_centre(f, cfg);
    StarDefect sd = star_defect(f.domain, a0, opts.star_samples, derive_seed(opts.seed, "star"));
    star = sd.defect;
    if (sd.defect > 0.0) {
      star_witness = Json();
      star_witness["x"] = vec_to_json(*sd.witness_x);
      star_witness["t"] = sd.witness_t;
      star_witness["point"] = vec_to_json(*sd.witness_point);
    }
    res = extend_isometry(f.map, f.domain, a0, opts);
  }

  Json info = extension_result_json(res);
  push(rep, check_le("star_defect", star, 0.0, star_witness));
  push(rep, check_le("radial_scaling", res.defects.radial_scaling, cfg.tol_abs));
  push(rep, check_le("small_ball_additivity", res.defects.small_ball_additivity, cfg.tol_abs));
  push(rep, check_le("homogeneity", res.defects.homogeneity, cfg.tol_abs));
  push(rep, check_le("additivity", res.defects.additivity, cfg.tol_abs));
  Json aw = nullptr;
  if (res.defects.agreement_witness) aw = vec_to_json(*res.defects.agreement_witness);
  push(rep, check_le("agreement", res.defects.agreement, cfg.tol_abs, aw, info));
  push(rep, check_le("isometry", res.defects.isometry, cfg.tol_abs));
  push(rep, check_ge("invertibility_ok", res.defects.invertibility_ok ? 1.0 : 0.0, 1.0));
}

void suite_counterexamples(const Fixture& f, const RunConfig& cfg, RunReport& rep) {
  Metric dm = f.target_metric();
  if (f.name == "ex-two-balls") {
    IsometryDefect iso = isometry_defect(f.map, f.domain, dm, std::max<std::size_t>(cfg.samples, 1000),
                                         derive_seed(cfg.seed, "cx-iso"));
    push(rep, check_le("isometry_defect", iso.max_defect, cfg.tol_abs,
                       pair_witness(iso.worst_a, iso.worst_b)));

    StarDefect sd = star_defect(f.domain, Vec::zero(2), 400, derive_seed(cfg.seed, "cx-star"));
    Json sw = nullptr;
    if (sd.witness_x) {
      sw = Json();
      sw["x"] = vec_to_json(*sd.witness_x);
      sw["t"] = sd.witness_t;
      sw["point"] = vec_to_json(*sd.witness_point);
    }
    push(rep, check_ge("star_defect_positive", sd.defect, 0.5, sw));

    AffineFit fit = affine_fit(example_two_balls_fit_grid(), f.target_space);
    push(rep, check_ge("affine_fit_residual", fit.residual, kTwoBallsFitResidualFloor));

    ExtendOptions opts;
    opts.n_samples = cfg.samples;
    opts.seed = derive_seed(cfg.seed, "cx-extend");
    opts.force = true;
    ExtensionResult res = extend_isometry(f.map, f.domain, Vec::zero(2), opts);
    Json aw = nullptr;
    if (res.defects.agreement_witness) aw = vec_to_json(*res.defects.agreement_witness);
    push(rep, check_ge("forced_extension_agreement_gap", res.defects.agreement, 0.9, aw,
                       extension_result_json(res)));
    return;
  }

  if (f.name == "ex-star-closed") {
    IsometryDefect iso = isometry_defect(f.map, f.domain, dm, std::max<std::size_t>(cfg.samples, 1000),
                                         derive_seed(cfg.seed, "cx-iso"));
    push(rep, check_le("isometry_defect", iso.max_defect, cfg.tol_abs,
                       pair_witness(iso.worst_a, iso.worst_b)));

    StarDefect sd = star_defect(f.domain, Vec::zero(2), 400, derive_seed(cfg.seed, "cx-star"));
    push(rep, check_le("star_defect", sd.defect, 0.0));

    // The pipeline must refuse a safe radius at the origin: the star centre
    // of this set sits on its boundary.
    double refused = 0.0;
    std::string reason;
    try {
      auto centred = recentre(f.map, f.domain, Vec::zero(2), 0, cfg.seed, true);
      safe_radius(centred.first, ProbeConfig{}, cfg.tol_abs);
    } catch (const RefusalError& e) {
      refused = 1.0;
      reason = e.what();
    }
    Json rinfo;
    rinfo["reason"] = reason;
    push(rep, check_ge("safe_radius_refusal", refused, 1.0, nullptr, rinfo));

    // The midpoint gap at the origin: ||T(-e1) + T(e1) - 2 T(0)|| = sin 1.
    Vec e1{1.0, 0.0};
    double gap =
        f.target_space.norm_of(f.map(-e1) + f.map(e1) - 2.0 * f.map(Vec::zero(2)));
    push(rep, check_in("non_extendability_witness", gap, 0.8414, 0.8415));
    return;
  }

  throw FixtureError("counterexamples suite: fixture '" + f.name +
                     "' is not one of the counterexample fixtures (ex-two-balls, "
                     "ex-star-closed)");
}

}  // namespace

RunReport run_suite(const RunConfig& cfg) {
  auto start = std::chrono::steady_clock::now();
  RunReport rep;
  rep.config = cfg;

  if (!(cfg.tol_abs > 0.0) || !(cfg.tol_rel > 0.0))
    throw InvalidArgumentError("run_suite: tolerances must be positive");

  Fixture f = load_fixture(cfg.fixture);
  const bool is_counterexample = (f.name == "ex-two-balls" || f.name == "ex-star-closed");

  if (cfg.suite == "isometry") {
    suite_isometry(f, cfg, rep);
  } else if (cfg.suite == "midpoint") {
    suite_midpoint(f, cfg, rep);
  } else if (cfg.suite == "extension") {
    suite_extension(f, cfg, rep);
  } else if (cfg.suite == "counterexamples") {
    suite_counterexamples(f, cfg, rep);
  } else if (cfg.suite == "all") {
    suite_isometry(f, cfg, rep);
    if (is_counterexample) {
      // Midpoint certification and unforced extension refuse on these by
      // design; the counterexample checks assert that behavior instead.
      suite_counterexamples(f, cfg, rep);
    } else {
      suite_midpoint(f, cfg, rep);
      suite_extension(f, cfg, rep);
    }
  } else {
    throw InvalidArgumentError("run_suite: unknown suite '" + cfg.suite + "'");
  }

  rep.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                          start)
                    .count();
  return rep;
}

Json report_to_json(const RunReport& rep) {
  Json j;
  j["tool"] = "mulam";
  j["version"] = "0.1.0";
  Json c;
  c["fixture"] = rep.config.fixture;
  c["suite"] = rep.config.suite;
  c["tol_abs"] = rep.config.tol_abs;
  c["tol_rel"] = rep.config.tol_rel;
  c["samples"] = rep.config.samples;
  c["seed"] = rep.config.seed;
  c["force"] = rep.config.force;
  c["out"] = rep.config.out;
  c["csv"] = rep.config.csv;
  j["config"] = std::move(c);
  Json checks = Json::array();
  for (const auto& ch : rep.checks) {
    Json e;
    e["name"] = ch.name;
    e["value"] = ch.value;
    e["threshold"] = ch.threshold;
    e["cmp"] = ch.cmp;
    e["pass"] = ch.pass;
    e["witness"] = ch.witness;
    e["info"] = ch.info;
    checks.push_back(std::move(e));
  }
  j["checks"] = std::move(checks);
  j["verdict"] = rep.all_pass ? "pass" : "fail";
  return j;
}

int write_outputs(const RunReport& rep) {
  std::string text = report_to_json(rep).dump(2);
  text += "\n";
  if (rep.config.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(rep.config.out, std::ios::binary);
    if (!out) throw Error("cannot write report to " + rep.config.out);
    out << text;
  }
  if (!rep.config.csv.empty()) {
    std::ofstream csv(rep.config.csv, std::ios::binary);
    if (!csv) throw Error("cannot write CSV to " + rep.config.csv);
    csv << "check,sample,defect\n";
    csv.precision(17);
    for (const auto& [name, idx, val] : rep.csv_rows)
      csv << name << "," << idx << "," << val << "\n";
  }
  std::cerr << "suite '" << rep.config.suite << "' on fixture '" << rep.config.fixture << "': "
            << (rep.all_pass ? "pass" : "FAIL") << " (" << rep.checks.size() << " checks, "
            << rep.wall_ms << " ms)\n";
  return rep.all_pass ? 0 : 1;
}

int cli_main(int argc, const char* const* argv) {
  CLI::App app{"numerical verification harness for isometry extension on normed spaces"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string positional_fixture;

  auto add_common = [&cfg](CLI::App* sub, bool fixture_required) {
    sub->add_option("--fixture", cfg.fixture, "built-in fixture name or fixture JSON path")
        ->required(fixture_required);
    sub->add_option("--seed", cfg.seed, "RNG seed (default 0; never wall clock)");
    sub->add_option("--tol-abs", cfg.tol_abs, "absolute defect tolerance");
    sub->add_option("--tol-rel", cfg.tol_rel, "relative defect tolerance");
    sub->add_option("--samples", cfg.samples, "sample count per scan");
    sub->add_option("--out", cfg.out, "report JSON path (default stdout)");
    sub->add_option("--csv", cfg.csv, "per-sample defect CSV path");
    sub->add_flag("--force", cfg.force, "run through refused preconditions");
  };

  CLI::App* verify = app.add_subcommand("verify-isometry", "sampled isometry defect of a fixture");
  add_common(verify, true);
  CLI::App* midpoint = app.add_subcommand("midpoint", "midpoint preservation and dyadic chains");
  add_common(midpoint, true);
  CLI::App* extend = app.add_subcommand("extend", "full extension pipeline with defect report");
  add_common(extend, true);
  CLI::App* counter = app.add_subcommand("counterexample", "expected-behavior checks of a counterexample fixture");
  counter->add_option("name", positional_fixture, "counterexample fixture name");
  add_common(counter, false);
  CLI::App* report = app.add_subcommand("report", "run every applicable suite");
  add_common(report, true);
  CLI::App* list = app.add_subcommand("list-fixtures", "list built-in fixtures");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (list->parsed()) {
      for (const auto& name : builtin_fixture_names())
        std::cout << name << "  -  " << load_fixture(name).description << "\n";
      return 0;
    }
    if (verify->parsed()) cfg.suite = "isometry";
    if (midpoint->parsed()) cfg.suite = "midpoint";
    if (extend->parsed()) cfg.suite = "extension";
    if (counter->parsed()) {
      cfg.suite = "counterexamples";
      if (!positional_fixture.empty()) cfg.fixture = positional_fixture;
      if (cfg.fixture.empty())
        throw FixtureError("counterexample: missing fixture name");
    }
    if (report->parsed()) cfg.suite = "all";

    RunReport rep = run_suite(cfg);
    return write_outputs(rep);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "unexpected error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace mulam
