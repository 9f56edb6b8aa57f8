#pragma once

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "limits.hpp"
#include "recovery.hpp"
#include "serialize.hpp"
#include "svg.hpp"

namespace gs::cli {

/// Schema violation in a run configuration.
struct config_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

enum exit_code : int { ok = 0, config_failure = 1, precondition_failure = 2, resource_failure = 3, internal_failure = 4 };

struct RunOptions {
  std::filesystem::path out_dir = ".";
  unsigned threads = 1;
  std::optional<u64> seed_override;
};

inline const std::vector<std::string>& commands() {
  static const std::vector<std::string> c{"reps", "dft", "perturb", "bound", "denoise", "limit"};
  return c;
}

namespace detail {

inline void check_keys(const json& j, const std::set<std::string>& allowed, const std::string& where) {
  if (!j.is_object()) throw config_error(where + ": expected an object");
  for (const auto& [k, v] : j.items())
    if (!allowed.count(k)) throw config_error(where + ": unknown key '" + k + "'");
}

inline const json& need(const json& j, const std::string& key, const std::string& where) {
  if (!j.contains(key)) throw config_error(where + ": missing key '" + key + "'");
  return j.at(key);
}

template <class T>
T get(const json& j, const std::string& key, const std::string& where) {
  try {
    return need(j, key, where).get<T>();
  } catch (const json::exception& e) {
    throw config_error(where + "." + key + ": " + e.what());
  }
}

template <class T>
T get_or(const json& j, const std::string& key, T fallback, const std::string& where) {
  return j.contains(key) ? get<T>(j, key, where) : fallback;
}

/// Accepts a JSON number or a "p/q" string.
inline double rational(const json& v, const std::string& where) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    const auto slash = s.find('/');
    try {
      if (slash == std::string::npos) return std::stod(s);
      return std::stod(s.substr(0, slash)) / std::stod(s.substr(slash + 1));
    } catch (const std::exception&) {
    }
  }
  throw config_error(where + ": expected a number or a 'p/q' string");
}

inline std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline void write_text(const std::filesystem::path& p, const std::string& s) {
  std::ofstream os(p, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open " + p.string() + " for writing");
  os << s;
}

inline void write_json(const std::filesystem::path& p, const json& j) { write_text(p, j.dump(2) + "\n"); }

}  // namespace detail

inline Group parse_group(const json& j) {
  const std::string w = "group";
  const auto fam = detail::get<std::string>(j, "family", w);
  if (fam == "torus") {
    detail::check_keys(j, {"family", "d", "M", "N"}, w);
    return Group::torus(detail::get<int>(j, "d", w), detail::get<i64>(j, "M", w), detail::get<i64>(j, "N", w));
  }
  if (fam == "heisenberg") {
    detail::check_keys(j, {"family", "M", "N"}, w);
    return Group::heisenberg(detail::get<i64>(j, "M", w), detail::get<i64>(j, "N", w));
  }
  if (fam == "dihedral") {
    detail::check_keys(j, {"family", "n"}, w);
    return Group::dihedral(detail::get<i64>(j, "n", w));
  }
  throw config_error("group.family: unknown family '" + fam + "'");
}

inline Element parse_element(const Group& G, const json& j, const std::string& where) {
  if (!j.is_array()) throw config_error(where + ": expected an array of integers");
  Element e;
  try {
    e.c = j.get<std::vector<i64>>();
  } catch (const json::exception& ex) {
    throw config_error(where + ": " + ex.what());
  }
  if (!G.contains(e)) throw config_error(where + ": not an element of " + G.name());
  return e;
}

inline Subgroup parse_subgroup(const Group& G, const json& j) {
  const std::string w = "subgroup";
  const auto kind = detail::get<std::string>(j, "kind", w);
  if (kind == "torus_sublattice") {
    detail::check_keys(j, {"kind", "steps"}, w);
    return Subgroup::torus_sublattice(G, detail::get<std::vector<i64>>(j, "steps", w));
  }
  if (kind == "heisenberg_integer_points") {
    detail::check_keys(j, {"kind"}, w);
    return Subgroup::heisenberg_integer_points(G);
  }
  if (kind == "dihedral_rotations") {
    detail::check_keys(j, {"kind", "k"}, w);
    return Subgroup::dihedral_rotations(G, detail::get<i64>(j, "k", w));
  }
  if (kind == "generated") {
    detail::check_keys(j, {"kind", "generators"}, w);
    std::vector<Element> gens;
    for (const auto& g : detail::need(j, "generators", w)) gens.push_back(parse_element(G, g, w + ".generators"));
    return Subgroup::generated(G, gens);
  }
  if (kind == "whole") {
    detail::check_keys(j, {"kind"}, w);
    return Subgroup::whole(G);
  }
  if (kind == "trivial") {
    detail::check_keys(j, {"kind"}, w);
    return Subgroup::trivial(G);
  }
  throw config_error("subgroup.kind: unknown kind '" + kind + "'");
}

/// {"kind": "dirac"|"uniform"|"gaussian"|"table", ...}
inline NoiseLaw parse_noise(const Group& G, const json& j) {
  const std::string w = "noise";
  const auto kind = detail::get<std::string>(j, "kind", w);
  if (kind == "dirac") {
    detail::check_keys(j, {"kind", "element"}, w);
    return j.contains("element") ? NoiseLaw::dirac(G, parse_element(G, j.at("element"), w + ".element")) : NoiseLaw::dirac(G);
  }
  if (kind == "uniform") {
    detail::check_keys(j, {"kind", "set"}, w);
    if (!j.contains("set")) return NoiseLaw::uniform_on_group(G);
    std::vector<Element> set;
    for (const auto& e : j.at("set")) set.push_back(parse_element(G, e, w + ".set"));
    return NoiseLaw::uniform_on_set(G, set);
  }
  if (kind == "gaussian") {
    detail::check_keys(j, {"kind", "sigma", "radius"}, w);
    return NoiseLaw::discretized_gaussian(G, detail::get<double>(j, "sigma", w), detail::get<i64>(j, "radius", w));
  }
  if (kind == "table") {
    detail::check_keys(j, {"kind", "table"}, w);
    std::vector<std::pair<Element, double>> t;
    for (const auto& row : detail::need(j, "table", w)) {
      detail::check_keys(row, {"element", "p"}, w + ".table");
      t.emplace_back(parse_element(G, detail::need(row, "element", w + ".table"), w + ".table.element"),
                     detail::get<double>(row, "p", w + ".table"));
    }
    try {
      return NoiseLaw::custom_table(G, std::move(t));
    } catch (const std::invalid_argument& e) {
      throw config_error(std::string("noise.table: ") + e.what());
    }
  }
  throw config_error("noise.kind: unknown kind '" + kind + "'");
}

inline json noise_to_json(const NoiseLaw& law) {
  json t = json::array();
  for (size_t i = 0; i < law.support().size(); ++i) t.push_back({{"element", law.support()[i].c}, {"p", law.probabilities()[i]}});
  json j{{"kind", noise_kind_name(law.kind())}, {"support_size", law.support().size()}, {"table", t}};
  if (law.kind() == NoiseKind::discretized_gaussian) {
    j["sigma"] = law.sigma();
    j["radius"] = law.radius();
  }
  return j;
}

inline TestFunction parse_test_function(const json& j, const std::string& w) {
  detail::check_keys(j, {"kind", "radius"}, w);
  const auto kind = detail::get<std::string>(j, "kind", w);
  if (kind == "zero") return TestFunction::zero();
  const double r = detail::get<double>(j, "radius", w);
  if (kind == "triangle") return TestFunction::triangle(r);
  if (kind == "bump") return TestFunction::bump(r);
  throw config_error(w + ".kind: unknown test function '" + kind + "'");
}

inline ContinuumNoise parse_continuum_noise(const json& j, const std::string& w) {
  const auto kind = detail::get<std::string>(j, "kind", w);
  if (kind == "dirac") {
    detail::check_keys(j, {"kind", "point"}, w);
    return ContinuumNoise::dirac(detail::get<std::vector<double>>(j, "point", w));
  }
  if (kind == "uniform_box") {
    detail::check_keys(j, {"kind", "half_width"}, w);
    return ContinuumNoise::uniform_box(detail::get<double>(j, "half_width", w));
  }
  if (kind == "gaussian") {
    detail::check_keys(j, {"kind", "sigma"}, w);
    return ContinuumNoise::gaussian(detail::get<double>(j, "sigma", w));
  }
  throw config_error(w + ".kind: unknown continuum noise '" + kind + "'");
}

namespace detail {

struct Context {
  const json& cfg;
  const RunOptions& opt;
  json echo;

  u64 seed() const { return opt.seed_override ? *opt.seed_override : get_or<u64>(cfg, "seed", 0, "config"); }
  bool plot() const { return get_or<bool>(cfg, "plot", false, "config"); }
  std::filesystem::path out(const std::string& name) const {
    return opt.out_dir / (get_or<std::string>(cfg, "prefix", "", "config") + name);
  }
};

inline std::vector<size_t> parse_labels(const json& arr, const DualSpace& D) {
  std::vector<size_t> idx;
  for (const auto& l : arr) {
    try {
      idx.push_back(D.index_of(label_from_json(l)));
    } catch (const std::exception& e) {
      throw config_error(std::string("restrict_labels: ") + e.what());
    }
  }
  return idx;
}

struct BoundConfig {
  BoundKind kind = BoundKind::thm26;
  double eps = 0.9;
  double L = 4;
  double delta = 0.1;
};

inline BoundConfig parse_bound(const json& cfg) {
  BoundConfig b;
  if (!cfg.contains("bound")) return b;
  const json& j = cfg.at("bound");
  check_keys(j, {"kind", "eps", "L", "delta"}, "bound");
  const auto k = get_or<std::string>(j, "kind", "thm26", "bound");
  if (k == "abelian") {
    b.kind = BoundKind::abelian;
  } else if (k != "thm26") {
    throw config_error("bound.kind: expected 'thm26' or 'abelian'");
  }
  b.eps = get_or<double>(j, "eps", b.eps, "bound");
  b.L = get_or<double>(j, "L", b.L, "bound");
  b.delta = get_or<double>(j, "delta", b.delta, "bound");
  return b;
}

inline json bound_echo(const BoundConfig& b) {
  return {{"kind", b.kind == BoundKind::abelian ? "abelian" : "thm26"}, {"eps", b.eps}, {"L", b.L}, {"delta", b.delta}};
}

inline json run_reps(Context& ctx) {
  check_keys(ctx.cfg, {"command", "group", "prefix"}, "config");
  const Group G = parse_group(need(ctx.cfg, "group", "config"));
  const DualSpace D = DualSpace::enumerate(G);
  json labels = json::array();
  for (size_t p = 0; p < D.size(); ++p) labels.push_back({{"label", label_to_json(D[p].label())}, {"dim", D.dim(p)}});
  json out{{"group", group_to_json(G)},
           {"order", G.order()},
           {"label_count", D.size()},
           {"sum_squared_dims", D.sum_squared_dims()},
           {"sum_squared_dims_equals_order", D.sum_squared_dims() == G.order()},
           {"max_dim", D.max_dim()},
           {"labels", labels}};
  write_json(ctx.out("reps.json"), out);
  return out;
}

inline GroupFunction parse_function(const Group& G, const json& cfg) {
  const json& j = need(cfg, "function", "config");
  const std::string w = "function";
  const auto kind = get<std::string>(j, "kind", w);
  if (kind == "indicator") {
    check_keys(j, {"kind"}, w);
    return GroupFunction::indicator(parse_subgroup(G, need(cfg, "subgroup", "config")));
  }
  if (kind == "dirac") {
    check_keys(j, {"kind", "element"}, w);
    return GroupFunction::dirac(G, parse_element(G, need(j, "element", w), w + ".element"));
  }
  if (kind == "dense") {
    check_keys(j, {"kind", "values"}, w);
    std::vector<cd> v;
    for (const auto& z : need(j, "values", w)) {
      if (!z.is_array() || z.size() != 2) throw config_error("function.values: expected [re, im] pairs");
      v.emplace_back(z[0].get<double>(), z[1].get<double>());
    }
    if (v.size() != G.order()) throw config_error("function.values: length must equal |G|");
    return GroupFunction::from_dense(G, std::move(v));
  }
  if (kind == "sparse") {
    check_keys(j, {"kind", "terms"}, w);
    std::vector<std::pair<Element, cd>> t;
    for (const auto& row : need(j, "terms", w)) {
      check_keys(row, {"element", "value"}, "function.terms");
      const auto& z = need(row, "value", "function.terms");
      if (!z.is_array() || z.size() != 2) throw config_error("function.terms.value: expected [re, im]");
      t.emplace_back(parse_element(G, need(row, "element", "function.terms"), "function.terms.element"),
                     cd(z[0].get<double>(), z[1].get<double>()));
    }
    return GroupFunction::from_sparse(G, std::move(t));
  }
  throw config_error("function.kind: unknown kind '" + kind + "'");
}

inline json run_dft(Context& ctx) {
  check_keys(ctx.cfg, {"command", "group", "subgroup", "function", "prefix"}, "config");
  const Group G = parse_group(need(ctx.cfg, "group", "config"));
  const GroupFunction f = parse_function(G, ctx.cfg);
  auto D = std::make_shared<const DualSpace>(DualSpace::enumerate(G));
  const SpectralField F = dft(f, D, ctx.opt.threads);
  write_json(ctx.out("dft_field.json"), field_to_json(F));
  {
    std::ofstream os(ctx.out("dft_field.gspf"), std::ios::binary);
    write_fixture(os, F);
  }
  double l2 = 0;
  f.for_each([&](const Element&, cd w) { l2 += std::norm(w); });
  const double n = static_cast<double>(G.order());
  json out{{"group", group_to_json(G)},
           {"label_count", D->size()},
           {"function_l2_sq", l2},
           {"spectral_norm_sq", norm_sq(F)},
           {"plancherel_gap", std::abs(n * n * norm_sq(F) - l2)},
           {"field_json", ctx.out("dft_field.json").filename().string()},
           {"field_binary", ctx.out("dft_field.gspf").filename().string()}};
  if (ctx.cfg.contains("subgroup") && get<std::string>(ctx.cfg.at("function"), "kind", "function") == "indicator") {
    const Subgroup H = parse_subgroup(G, ctx.cfg.at("subgroup"));
    out["subgroup"] = H.describe();
    out["subgroup_order"] = H.order();
    out["subgroup_normal"] = is_normal(H);
    if (is_normal(H)) {
      out["closed_form_max_abs_diff"] = max_abs_diff(F, subgroup_spectrum_closed_form(H, D));
      out["annihilator_size"] = annihilator(H, *D).size();
    }
  }
  write_json(ctx.out("dft.json"), out);
  return out;
}

inline json run_perturb(Context& ctx) {
  check_keys(ctx.cfg, {"command", "group", "subgroup", "noise", "trials", "seed", "bound", "restrict_labels", "plot", "prefix"},
             "config");
  const Group G = parse_group(need(ctx.cfg, "group", "config"));
  auto D = std::make_shared<const DualSpace>(DualSpace::enumerate(G));
  const BoundConfig b = parse_bound(ctx.cfg);
  ExperimentSpec spec{parse_subgroup(G, need(ctx.cfg, "subgroup", "config")),
                      parse_noise(G, need(ctx.cfg, "noise", "config")),
                      get_or<u64>(ctx.cfg, "trials", 1000, "config"),
                      ctx.seed(),
                      b.eps,
                      b.L,
                      b.delta,
                      b.kind,
                      {}};
  if (ctx.cfg.contains("restrict_labels")) spec.restrict_labels = parse_labels(ctx.cfg.at("restrict_labels"), *D);
  const Summary s = monte_carlo(spec, D, ctx.opt.threads);

  std::string csv = "trial,err_sq,bound_rhs,exceeded,seed_lo,seed_hi\n";
  for (const auto& r : s.results)
    csv += std::to_string(r.trial) + "," + fmt(spec.bound == BoundKind::abelian ? r.linf : r.err_sq) + "," + fmt(s.bound.rhs) + "," +
           (r.exceeded ? "1" : "0") + "," + std::to_string(r.key & 0xffffffffu) + "," + std::to_string(r.key >> 32) + "\n";
  write_text(ctx.out("perturb_trials.csv"), csv);

  const VarianceReport vr = variance_report(spec.law, *D);
  json per_label = json::array();
  for (size_t p = 0; p < D->size(); ++p)
    per_label.push_back({{"label", label_to_json((*D)[p].label())}, {"mean_sq", s.per_label_mean[p]}});
  json restricted = json::array();
  for (size_t p : spec.restrict_labels) restricted.push_back(label_to_json((*D)[p].label()));
  const double H = static_cast<double>(spec.subgroup.order());
  json pre = json::object();
  if (spec.bound == BoundKind::thm26) {
    pre["L_gt_3"] = spec.L > 3;
    pre["H_ge_6L_over_L_minus_3"] = H >= 6 * spec.L / (spec.L - 3);
    pre["eps_gt_sqrt_12C2L_over_H"] = spec.eps > std::sqrt(12 * s.C * s.C * spec.L / H);
  } else {
    const auto in = abelian_inputs(spec.subgroup, spec.eps, s.C);
    double prod = 1;
    for (i64 st : in.steps) prod *= static_cast<double>(st);
    const double nr = std::pow(static_cast<double>(in.n), static_cast<double>(in.steps.size()));
    pre["H_gt_12"] = nr / prod > 12;
    pre["eps_gt_sqrt_72M_over_Nr"] = spec.eps > std::sqrt(72 * prod / nr);
  }
  json out{{"command", "perturb"},
           {"group", group_to_json(G)},
           {"group_order", G.order()},
           {"subgroup", spec.subgroup.describe()},
           {"subgroup_order", spec.subgroup.order()},
           {"noise", noise_to_json(spec.law)},
           {"trials", spec.trials},
           {"seed", spec.seed},
           {"bound", bound_echo(b)},
           {"restrict_labels", restricted},
           {"statistic", spec.bound == BoundKind::abelian ? "linf" : "err_sq"},
           {"C", s.C},
           {"C_definition", "entrywise: max over labels and entries of E|pi_lj(xi) - E pi_lj(xi)|^2"},
           {"C_attained_at", label_to_json((*D)[vr.label].label())},
           {"preconditions", pre},
           {"bound_rhs", s.bound.rhs},
           {"prob_floor", s.bound.prob_floor},
           {"exceed_count", s.exceed_count},
           {"exceed_freq", s.exceed_freq},
           {"err_sq_mean", s.mean},
           {"err_sq_median", s.median},
           {"err_sq_p95", s.p95},
           {"err_sq_max", s.max},
           {"linf_max", s.linf_max},
           {"per_label", per_label},
           {"trial_log", ctx.out("perturb_trials.csv").filename().string()}};
  out["thmA_err"] = s.thmA_err ? json(*s.thmA_err) : json(nullptr);
  write_json(ctx.out("perturb_summary.json"), out);
  if (ctx.plot()) {
    std::vector<double> v;
    for (const auto& r : s.results) v.push_back(r.err_sq);
    write_text(ctx.out("perturb_hist.svg"), svg::histogram(v, 40, "err^2 over trials", "err^2"));
  }
  return out;
}

inline json run_bound(Context& ctx) {
  check_keys(ctx.cfg, {"command", "group", "subgroup", "noise", "bound", "prefix"}, "config");
  const Group G = parse_group(need(ctx.cfg, "group", "config"));
  const DualSpace D = DualSpace::enumerate(G);
  const Subgroup H = parse_subgroup(G, need(ctx.cfg, "subgroup", "config"));
  const NoiseLaw law = parse_noise(G, need(ctx.cfg, "noise", "config"));
  const BoundConfig b = parse_bound(ctx.cfg);
  const VarianceReport vr = variance_report(law, D);
  json out{{"command", "bound"},
           {"group", group_to_json(G)},
           {"subgroup", H.describe()},
           {"subgroup_order", H.order()},
           {"noise", noise_to_json(law)},
           {"bound", bound_echo(b)},
           {"C", vr.C},
           {"C_attained_at", label_to_json(D[vr.label].label())},
           {"max_dim", D.max_dim()}};
  BoundResult r;
  if (b.kind == BoundKind::abelian) {
    r = bound_abelian(abelian_inputs(H, b.eps, vr.C));
  } else {
    r = bound_thm26({G.order(), H.order(), vr.C, D.max_dim(), b.eps, b.L});
  }
  out["rhs"] = r.rhs;
  out["prob_floor"] = r.prob_floor;
  if (H.order() >= 24 && b.delta > 0 && b.delta < 1) out["thmA_err"] = bound_thmA(b.delta, G.order(), H.order(), vr.C, D.max_dim());
  write_json(ctx.out("bound.json"), out);
  return out;
}

inline json run_denoise(Context& ctx) {
  check_keys(ctx.cfg, {"command", "group", "subgroup", "noise", "seed", "tau", "prefix"}, "config");
  const Group G = parse_group(need(ctx.cfg, "group", "config"));
  auto D = std::make_shared<const DualSpace>(DualSpace::enumerate(G));
  const Subgroup H = parse_subgroup(G, need(ctx.cfg, "subgroup", "config"));
  const NoiseLaw law = parse_noise(G, need(ctx.cfg, "noise", "config"));
  const double tau = get_or<double>(ctx.cfg, "tau", 1e-8, "config");
  PhiloxStream stream = PhiloxStream::for_trial(ctx.seed(), 0);
  const auto real = realize(H, law, stream);
  const DenoiseResult res = denoise(real, law, D, tau);
  const SpectralField truth = dft(GroupFunction::indicator(H), D, ctx.opt.threads);
  json labels = json::array();
  u64 recovered = 0;
  double worst = 0;
  for (size_t p = 0; p < D->size(); ++p) {
    json row{{"label", label_to_json((*D)[p].label())}, {"recoverable", static_cast<bool>(res.recoverable[p])}, {"sigma_min", res.sigma_min[p]}};
    if (res.recoverable[p]) {
      const double e = (res.estimate[p] - truth[p]).cwiseAbs().maxCoeff();
      row["max_abs_error"] = e;
      worst = std::max(worst, e);
      ++recovered;
    }
    labels.push_back(row);
  }
  json out{{"command", "denoise"},
           {"group", group_to_json(G)},
           {"subgroup", H.describe()},
           {"noise", noise_to_json(law)},
           {"seed", ctx.seed()},
           {"tau", tau},
           {"recoverable_count", recovered},
           {"masked_count", D->size() - recovered},
           {"max_abs_error", worst},
           {"labels", labels}};
  write_json(ctx.out("denoise.json"), out);
  write_json(ctx.out("denoise_estimate.json"), field_to_json(res.estimate));
  return out;
}

inline json run_limit(Context& ctx) {
  check_keys(ctx.cfg, {"command", "limit", "seed", "plot", "prefix"}, "config");
  const json& j = need(ctx.cfg, "limit", "config");
  const std::string w = "limit";
  const auto kind = get<std::string>(j, "kind", w);
  std::string csv = "m,N,c_m,discrete_re,discrete_im,continuum_re,continuum_im,gap\n";
  json out{{"command", "limit"}, {"kind", kind}};
  std::vector<svg::Series> series;
  if (kind == "euclidean") {
    check_keys(j, {"kind", "d", "r", "lambda", "Ns", "Ms"}, w);
    const int d = get<int>(j, "d", w), r = get<int>(j, "r", w);
    std::vector<double> lambda;
    for (const auto& v : need(j, "lambda", w)) lambda.push_back(rational(v, "limit.lambda"));
    const auto Ns = get<std::vector<i64>>(j, "Ns", w), Ms = get<std::vector<i64>>(j, "Ms", w);
    EuclideanSweep s;
    try {
      s = euclidean_sweep(d, r, lambda, Ns, Ms);
    } catch (const std::domain_error& e) {
      throw precondition_error(e.what());
    }
    json rungs = json::array();
    svg::Series sp{"printed prefactor", {}}, sm{"mass prefactor", {}};
    double x = 0;
    for (const auto& g : s.rungs) {
      csv += std::to_string(g.M) + "," + std::to_string(g.N) + ",0," + fmt(g.value.printed.real()) + "," + fmt(g.value.printed.imag()) +
             "," + fmt(g.reference) + ",0," + fmt(g.gap_printed) + "\n";
      rungs.push_back({{"M", g.M},
                       {"N", g.N},
                       {"raw", {g.value.raw.real(), g.value.raw.imag()}},
                       {"printed", {g.value.printed.real(), g.value.printed.imag()}},
                       {"mass", {g.value.mass.real(), g.value.mass.imag()}},
                       {"reference", g.reference},
                       {"gap_printed", g.gap_printed},
                       {"gap_mass", g.gap_mass}});
      sp.points.emplace_back(x, g.gap_printed);
      sm.points.emplace_back(x, g.gap_mass);
      x += 1;
    }
    series = {sp, sm};
    out["d"] = d;
    out["r"] = r;
    out["lambda"] = lambda;
    out["lattice_density"] = lattice_density(std::vector<i64>(r, 1));
    out["rungs"] = rungs;
    out["scale_ratio"] = s.scale_ratio;
    out["scaling_mismatch"] = s.scaling_mismatch;
  } else if (kind == "heisenberg") {
    check_keys(j, {"kind", "lambda", "alpha_beta", "k", "ms", "Ns", "phi", "psi", "perturbed"}, w);
    HeisenbergSweepSpec spec;
    if (j.contains("lambda")) spec.lambda = rational(j.at("lambda"), "limit.lambda");
    if (j.contains("alpha_beta")) {
      const auto& ab = j.at("alpha_beta");
      if (!ab.is_array() || ab.size() != 2) throw config_error("limit.alpha_beta: expected [alpha, beta]");
      spec.alpha_beta = std::array<double, 2>{rational(ab[0], "limit.alpha_beta"), rational(ab[1], "limit.alpha_beta")};
    }
    spec.k = get_or<i64>(j, "k", spec.k, w);
    spec.ms = get_or<std::vector<i64>>(j, "ms", spec.ms, w);
    spec.Ns = get_or<std::vector<i64>>(j, "Ns", spec.Ns, w);
    if (j.contains("phi")) spec.phi = parse_test_function(j.at("phi"), "limit.phi");
    if (j.contains("psi")) spec.psi = parse_test_function(j.at("psi"), "limit.psi");
    std::optional<std::pair<ContinuumNoise, u64>> perturbed;
    if (j.contains("perturbed")) {
      const json& pj = j.at("perturbed");
      check_keys(pj, {"noise"}, "limit.perturbed");
      perturbed.emplace(parse_continuum_noise(need(pj, "noise", "limit.perturbed"), "limit.perturbed.noise"), ctx.seed());
    }
    const auto rungs = heisenberg_sweep(spec, perturbed, ctx.opt.threads);
    json rj = json::array();
    std::map<i64, svg::Series> byN;
    for (const auto& g : rungs) {
      csv += std::to_string(g.m) + "," + std::to_string(g.N) + "," + std::to_string(g.c) + "," + fmt(g.discrete.real()) + "," +
             fmt(g.discrete.imag()) + "," + fmt(g.continuum.real()) + "," + fmt(g.continuum.imag()) + "," + fmt(g.gap) + "\n";
      json row{{"m", g.m}, {"N", g.N}, {"c_m", g.c}, {"gap", g.gap}, {"rel_gap", g.rel_gap}};
      if (g.residual) row["residual"] = {g.residual->real(), g.residual->imag()};
      rj.push_back(row);
      auto& se = byN[g.N];
      se.name = "N=" + std::to_string(g.N);
      se.points.emplace_back(std::log2(static_cast<double>(g.m)), g.gap);
    }
    for (auto& [N, se] : byN) series.push_back(se);
    out["lambda"] = spec.lambda;
    out["alpha_beta"] = spec.alpha_beta ? json(*spec.alpha_beta) : json(nullptr);
    out["k"] = spec.k;
    out["ms"] = spec.ms;
    out["Ns"] = spec.Ns;
    out["phi"] = {{"kind", spec.phi.name}, {"radius", spec.phi.radius}};
    out["psi"] = {{"kind", spec.psi.name}, {"radius", spec.psi.radius}};
    out["perturbed"] = perturbed.has_value();
    if (perturbed) out["seed"] = perturbed->second;
    out["rungs"] = rj;
  } else {
    throw config_error("limit.kind: expected 'euclidean' or 'heisenberg'");
  }
  out["sweep_csv"] = ctx.out("limit_sweep.csv").filename().string();
  write_text(ctx.out("limit_sweep.csv"), csv);
  write_json(ctx.out("limit_sweep.json"), out);
  if (ctx.plot()) write_text(ctx.out("limit_gaps.svg"), svg::lines(series, "convergence gap", "rung", "gap", true));
  return out;
}

}  // namespace detail

/**
 * Runs one command. Returns the exit code; on failure a JSON object
 * {"error": category, "message": text} is written to `err`.
 * Wall time goes to timing.json so the other artifacts stay byte-identical across runs.
 */
inline int run(const std::string& command, const json& config, const RunOptions& opt, std::ostream& err = std::cerr) {
  auto fail = [&](int code, const char* cat, const std::string& msg) {
    err << json{{"error", cat}, {"message", msg}, {"exit_code", code}}.dump() << "\n";
    return code;
  };
  const auto t0 = std::chrono::steady_clock::now();
  try {
    if (std::find(commands().begin(), commands().end(), command) == commands().end())
      throw config_error("unknown command '" + command + "'");
    if (!config.is_object()) throw config_error("config: expected a JSON object");
    if (config.contains("command") && config.at("command") != command)
      throw config_error("config.command does not match the command line");
    std::filesystem::create_directories(opt.out_dir);
    detail::Context ctx{config, opt, {}};
    if (command == "reps") detail::run_reps(ctx);
    if (command == "dft") detail::run_dft(ctx);
    if (command == "perturb") detail::run_perturb(ctx);
    if (command == "bound") detail::run_bound(ctx);
    if (command == "denoise") detail::run_denoise(ctx);
    if (command == "limit") detail::run_limit(ctx);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    detail::write_json(ctx.out("timing.json"), {{"command", command}, {"threads", opt.threads}, {"wall_seconds", secs}});
    return ok;
  } catch (const config_error& e) {
    return fail(config_failure, "config", e.what());
  } catch (const json::exception& e) {
    return fail(config_failure, "config", e.what());
  } catch (const precondition_error& e) {
    return fail(precondition_failure, "precondition", e.what());
  } catch (const resource_error& e) {
    return fail(resource_failure, "resource", e.what());
  } catch (const std::invalid_argument& e) {
    return fail(config_failure, "config", e.what());
  } catch (const std::domain_error& e) {
    return fail(precondition_failure, "precondition", e.what());
  } catch (const std::exception& e) {
    return fail(internal_failure, "internal", e.what());
  }
}

inline int run_file(const std::string& command, const std::filesystem::path& config_path, const RunOptions& opt,
                    std::ostream& err = std::cerr) {
  std::ifstream is(config_path);
  if (!is) {
    err << json{{"error", "config"}, {"message", "cannot read " + config_path.string()}, {"exit_code", 1}}.dump() << "\n";
    return config_failure;
  }
  json cfg;
  try {
    cfg = json::parse(is);
  } catch (const json::exception& e) {
    err << json{{"error", "config"}, {"message", e.what()}, {"exit_code", 1}}.dump() << "\n";
    return config_failure;
  }
  return run(command, cfg, opt, err);
}

}  // namespace gs::cli
