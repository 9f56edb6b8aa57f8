#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <numeric>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "noise.hpp"
#include "spectra.hpp"

namespace gs {

/// One i.i.d. draw xi_h per h in H (aligned with H.elements()); perturbed[i] = h_i * xi_i.
struct PerturbationRealization {
  Subgroup subgroup;
  std::vector<Element> xi;
  std::vector<Element> perturbed;
};

inline PerturbationRealization realize(const Subgroup& H, const NoiseLaw& law, PhiloxStream& stream) {
  if (!(H.parent() == law.group())) throw std::domain_error("realize: law and subgroup on different groups");
  const Group& G = H.parent();
  PerturbationRealization r{H, {}, {}};
  r.xi.reserve(H.order());
  r.perturbed.reserve(H.order());
  for (const auto& h : H.elements()) {
    const Element& x = law.sample(stream);
    r.xi.push_back(x);
    r.perturbed.push_back(G.mul_unchecked(h, x));
  }
  return r;
}

/// delta_{H_xi} as a multiset: weight 1 per pair, collisions accumulate.
inline GroupFunction realization_function(const PerturbationRealization& r) {
  std::vector<std::pair<Element, cd>> t;
  t.reserve(r.perturbed.size());
  for (const auto& p : r.perturbed) t.emplace_back(p, cd(1, 0));
  return GroupFunction::from_sparse(r.subgroup.parent(), std::move(t));
}

/**
 * Everything about (H, law) that does not depend on the realization: F(delta_H), E[pi(xi)],
 * and the target F(delta_H)(pi) E[pi(xi)]. The target is accumulated as
 * (1/|G|) sum_h sum_g p_g pi(h g), the same summation order the realization uses, so a
 * Dirac law reproduces it bit for bit.
 */
struct ErrorModel {
  std::shared_ptr<const DualSpace> dual;
  Subgroup subgroup;
  SpectralField delta_H;
  std::vector<Eigen::MatrixXcd> expectation;
  SpectralField target;
  VarianceReport variance;

  static ErrorModel build(const Subgroup& H, const NoiseLaw& law, std::shared_ptr<const DualSpace> D) {
    if (!(H.parent() == D->group()) || !(law.group() == D->group()))
      throw std::domain_error("error model: subgroup, law and dual on different groups");
    const Group& G = D->group();
    ErrorModel m{D, H, dft(GroupFunction::indicator(H), D), {}, SpectralField(D), variance_report(law, *D)};
    for (size_t p = 0; p < D->size(); ++p) m.expectation.push_back(expectation_matrix(law, (*D)[p]));
    const double inv = 1.0 / static_cast<double>(G.order());
    const bool factorized = sat_mul(H.order(), law.support().size()) <= 20'000'000;
    for (size_t p = 0; p < D->size(); ++p) {
      if (factorized) {
        for (const auto& h : H.elements())
          for (size_t i = 0; i < law.support().size(); ++i)
            accumulate((*D)[p], G.mul_unchecked(h, law.support()[i]), cd(law.probabilities()[i], 0), m.target[p]);
        m.target[p] *= inv;
      } else {
        m.target[p] = m.delta_H[p] * m.expectation[p];
      }
    }
    return m;
  }
};

struct TrialResult {
  u64 trial = 0;
  u64 key = 0;
  double err_sq = 0;
  double linf = 0;
  std::vector<double> per_label;  // sum_i ||(F(delta_{H_xi}) - F(delta_H) E) e_i||^2 per label
  bool exceeded = false;
};

/// err^2 = || F(delta_{H_xi}) - F(delta_H) E[xi(.)] ||^2 in L^2 of the dual, computed label by label.
inline TrialResult error_statistic(const PerturbationRealization& r, const ErrorModel& m,
                                   const std::vector<size_t>* restrict_to = nullptr) {
  const DualSpace& D = *m.dual;
  if (!(r.subgroup.parent() == D.group())) throw std::domain_error("error_statistic: realization and dual mismatch");
  const double inv = 1.0 / static_cast<double>(D.group().order());
  TrialResult t;
  t.per_label.resize(D.size());
  std::vector<char> use(D.size(), restrict_to ? 0 : 1);
  if (restrict_to)
    for (size_t p : *restrict_to) use.at(p) = 1;
  double s = 0;
  for (size_t p = 0; p < D.size(); ++p) {
    Eigen::MatrixXcd B = Eigen::MatrixXcd::Zero(D.dim(p), D.dim(p));
    for (const auto& x : r.perturbed) accumulate(D[p], x, cd(1, 0), B);
    B *= inv;
    B -= m.target[p];
    const double f2 = B.squaredNorm();
    t.per_label[p] = f2;
    t.linf = std::max(t.linf, B.cwiseAbs().maxCoeff());
    if (use[p]) s += static_cast<double>(D.dim(p)) * f2;
  }
  t.err_sq = s * inv;
  return t;
}

struct BoundResult {
  double rhs = 0;
  double prob_floor = 0;
};

struct Thm26Inputs {
  u64 order_G = 0;
  u64 order_H = 0;
  double C = 0;
  int max_dim = 1;
  double eps = 0;
  double L = 0;
};

/// Formula only: rhs = |H|^4/|G|^2 (eps + 4C^2/|H|) max d, floor = 1 - 12 C^2 L / (eps^2 |H|).
inline BoundResult thm26_formula(const Thm26Inputs& in) {
  const double G = static_cast<double>(in.order_G), H = static_cast<double>(in.order_H);
  return {std::pow(H, 4) / (G * G) * (in.eps + 4 * in.C * in.C / H) * in.max_dim,
          1.0 - 12 * in.C * in.C * in.L / (in.eps * in.eps * H)};
}

inline BoundResult bound_thm26(const Thm26Inputs& in) {
  const double H = static_cast<double>(in.order_H);
  if (!(in.L > 3)) throw precondition_error("bound_thm26: requires L > 3");
  if (!(H >= 6 * in.L / (in.L - 3))) throw precondition_error("bound_thm26: requires |H| >= 6L/(L-3)");
  if (!(in.eps > std::sqrt(12 * in.C * in.C * in.L / H)))
    throw precondition_error("bound_thm26: requires eps > sqrt(12 C^2 L / |H|)");
  return thm26_formula(in);
}

/// err = 4C (|H|^{7/2}/|G|^2)(sqrt(3/delta) + C/sqrt|H|) max d.
inline double bound_thmA(double delta, u64 order_G, u64 order_H, double C, int max_dim) {
  if (!(delta > 0 && delta < 1)) throw precondition_error("bound_thmA: requires delta in (0,1)");
  if (order_H < 24) throw precondition_error("bound_thmA: requires |H| >= 24");
  const double G = static_cast<double>(order_G), H = static_cast<double>(order_H);
  return 4 * C * (std::pow(H, 3.5) / (G * G)) * (std::sqrt(3 / delta) + C / std::sqrt(H)) * max_dim;
}

/**
 * Abelian torus (Z/n)^d with H = s_1 Z + ... + s_r Z (+ zeros): |H| = n^r / prod s,
 * |H*| = prod s * n^{d-r}. In ScaledTorus(d, M, N) terms n = MN and s_i = M N_i.
 */
struct AbelianInputs {
  i64 n = 1;
  int d = 1;
  std::vector<i64> steps;
  double eps = 0;
  double C = 0;
};

inline BoundResult abelian_formula(const AbelianInputs& in) {
  const int r = static_cast<int>(in.steps.size());
  double prod = 1;
  for (i64 s : in.steps) prod *= static_cast<double>(s);
  const double nr = std::pow(static_cast<double>(in.n), r);
  const double H = nr / prod;
  const double Hstar = prod * std::pow(static_cast<double>(in.n), in.d - r);
  return {std::sqrt(in.eps + 4 * in.C * in.C / H) / Hstar, 1.0 - 72 * prod / (in.eps * in.eps * nr)};
}

inline BoundResult bound_abelian(const AbelianInputs& in) {
  const int r = static_cast<int>(in.steps.size());
  double prod = 1;
  for (i64 s : in.steps) prod *= static_cast<double>(s);
  const double nr = std::pow(static_cast<double>(in.n), r);
  if (!(nr / prod > 12)) throw precondition_error("bound_abelian: requires N^r/(M_1...M_r) > 12");
  if (!(in.eps > std::sqrt(72 * prod / nr))) throw precondition_error("bound_abelian: requires eps > sqrt(72 M_1...M_r / N^r)");
  return abelian_formula(in);
}

inline AbelianInputs abelian_inputs(const Subgroup& H, double eps, double C) {
  if (H.kind() != SubgroupKind::torus_sublattice) throw std::domain_error("abelian bound needs a torus sublattice");
  AbelianInputs in{H.parent().modulus(), H.parent().rank(), {}, eps, C};
  for (i64 s : H.params()) in.steps.push_back(H.parent().M() * s);
  return in;
}

enum class BoundKind { thm26, abelian };

struct ExperimentSpec {
  Subgroup subgroup;
  NoiseLaw law;
  u64 trials = 1000;
  u64 seed = 0;
  double eps = 0.9;
  double L = 4;
  double delta = 0.1;
  BoundKind bound = BoundKind::thm26;
  std::vector<size_t> restrict_labels;
};

struct Summary {
  u64 trials = 0;
  double C = 0;
  BoundResult bound;
  std::optional<double> thmA_err;
  u64 exceed_count = 0;
  double exceed_freq = 0;
  double mean = 0;
  double median = 0;
  double p95 = 0;
  double max = 0;
  double linf_max = 0;
  std::vector<double> per_label_mean;
  std::vector<TrialResult> results;
};

inline double quantile_sorted(const std::vector<double>& v, double q) {
  if (v.empty()) return 0;
  const double pos = q * static_cast<double>(v.size() - 1);
  const size_t lo = static_cast<size_t>(std::floor(pos));
  const size_t hi = std::min(v.size() - 1, lo + 1);
  return v[lo] + (pos - static_cast<double>(lo)) * (v[hi] - v[lo]);
}

inline BoundResult experiment_bound(const ExperimentSpec& spec, const ErrorModel& m) {
  if (spec.bound == BoundKind::abelian) return bound_abelian(abelian_inputs(spec.subgroup, spec.eps, m.variance.C));
  return bound_thm26({m.dual->group().order(), spec.subgroup.order(), m.variance.C, m.dual->max_dim(), spec.eps, spec.L});
}

/**
 * Runs spec.trials independent realizations. Trial t draws from the Philox substream
 * keyed by (seed, t), so results do not depend on the number of worker threads.
 */
inline Summary monte_carlo(const ExperimentSpec& spec, std::shared_ptr<const DualSpace> D, unsigned threads = 1) {
  if (spec.trials == 0) throw std::invalid_argument("monte_carlo: trials must be positive");
  if (spec.trials > (u64{1} << 24)) throw resource_error("monte_carlo: trial count exceeds cap");
  const ErrorModel model = ErrorModel::build(spec.subgroup, spec.law, D);
  Summary s;
  s.trials = spec.trials;
  s.C = model.variance.C;
  s.bound = experiment_bound(spec, model);
  if (spec.subgroup.order() >= 24 && spec.delta > 0 && spec.delta < 1)
    s.thmA_err = bound_thmA(spec.delta, D->group().order(), spec.subgroup.order(), s.C, D->max_dim());
  s.results.resize(spec.trials);
  const std::vector<size_t>* A = spec.restrict_labels.empty() ? nullptr : &spec.restrict_labels;
  std::atomic<u64> next{0};
  auto worker = [&] {
    for (u64 t = next++; t < spec.trials; t = next++) {
      PhiloxStream stream = PhiloxStream::for_trial(spec.seed, t);
      const auto r = realize(spec.subgroup, spec.law, stream);
      TrialResult res = error_statistic(r, model, A);
      res.trial = t;
      res.key = stream.key();
      res.exceeded = spec.bound == BoundKind::abelian ? res.linf > s.bound.rhs : res.err_sq > s.bound.rhs;
      s.results[t] = std::move(res);
    }
  };
  threads = std::max(1u, threads);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  std::vector<double> errs;
  errs.reserve(spec.trials);
  s.per_label_mean.assign(D->size(), 0.0);
  for (const auto& r : s.results) {
    errs.push_back(r.err_sq);
    s.exceed_count += r.exceeded;
    s.mean += r.err_sq;
    s.linf_max = std::max(s.linf_max, r.linf);
    for (size_t p = 0; p < D->size(); ++p) s.per_label_mean[p] += r.per_label[p];
  }
  const double n = static_cast<double>(spec.trials);
  s.mean /= n;
  for (auto& v : s.per_label_mean) v /= n;
  s.exceed_freq = static_cast<double>(s.exceed_count) / n;
  std::sort(errs.begin(), errs.end());
  s.median = quantile_sorted(errs, 0.5);
  s.p95 = quantile_sorted(errs, 0.95);
  s.max = errs.back();
  return s;
}

/// Three-part split of H used for the variance argument.
struct OrbitPartition {
  std::array<std::vector<Element>, 3> parts;
  bool direct_construction = false;
  u64 orbit_order = 0;
};

/// For every part S and h in S, g^{-1} h is not in S (equivalent to the pairwise-disjoint condition).
inline bool partition_pair_property(const Subgroup& H, const Element& g, const std::array<std::vector<Element>, 3>& parts) {
  const Group& G = H.parent();
  const Element gi = G.inverse(g);
  for (const auto& part : parts) {
    std::vector<Element> sorted = part;
    std::sort(sorted.begin(), sorted.end());
    for (const auto& h : part)
      if (std::binary_search(sorted.begin(), sorted.end(), G.mul_unchecked(gi, h))) return false;
  }
  return true;
}

inline bool partition_is_cover(const Subgroup& H, const std::array<std::vector<Element>, 3>& parts) {
  std::vector<Element> all;
  for (const auto& p : parts) all.insert(all.end(), p.begin(), p.end());
  std::sort(all.begin(), all.end());
  return all == H.elements();
}

/**
 * Orbits of left multiplication by g are listed as h, gh, g^2 h, ... The direct
 * construction H_i = {g^{3k+i} h : 0 <= k <= floor(o/3)} (exponents mod o) is tried first;
 * if it is not a disjoint cover with the pair property, each orbit is colored by
 * position mod 3 (last position recolored when o = 1 mod 3) and color names are
 * permuted per orbit to balance part sizes.
 */
inline OrbitPartition orbit_partition(const Subgroup& H, const Element& g) {
  const Group& G = H.parent();
  if (g == G.identity()) throw precondition_error("orbit_partition: g must not be the identity");
  if (!H.contains(g)) throw precondition_error("orbit_partition: g must lie in H");
  const u64 o = G.element_order(g);
  std::vector<std::vector<Element>> orbits;
  std::vector<char> seen(H.order(), 0);
  const auto& els = H.elements();
  auto pos = [&](const Element& x) { return static_cast<size_t>(std::lower_bound(els.begin(), els.end(), x) - els.begin()); };
  for (size_t i = 0; i < els.size(); ++i) {
    if (seen[i]) continue;
    std::vector<Element> orb;
    Element x = els[i];
    for (u64 k = 0; k < o; ++k) {
      seen[pos(x)] = 1;
      orb.push_back(x);
      x = G.mul_unchecked(g, x);
    }
    orbits.push_back(std::move(orb));
  }
  OrbitPartition out;
  out.orbit_order = o;
  for (const auto& orb : orbits)
    for (int i = 0; i < 3; ++i)
      for (u64 k = 0; k <= o / 3; ++k) {
        const Element& e = orb[(3 * k + i) % o];
        if (std::find(out.parts[i].begin(), out.parts[i].end(), e) == out.parts[i].end()) out.parts[i].push_back(e);
      }
  if (partition_is_cover(H, out.parts) && partition_pair_property(H, g, out.parts)) {
    out.direct_construction = true;
    return out;
  }
  out.parts = {};
  for (const auto& orb : orbits) {
    std::vector<int> color(o);
    for (u64 k = 0; k < o; ++k) color[k] = static_cast<int>(k % 3);
    if (o % 3 == 1) color[o - 1] = 1;
    std::array<size_t, 3> cnt{};
    for (int c : color) ++cnt[c];
    std::array<int, 3> perm{0, 1, 2}, best = perm;
    size_t best_max = SIZE_MAX;
    do {
      size_t mx = 0;
      for (int c = 0; c < 3; ++c) mx = std::max(mx, out.parts[perm[c]].size() + cnt[c]);
      if (mx < best_max) {
        best_max = mx;
        best = perm;
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
    for (u64 k = 0; k < o; ++k) out.parts[best[color[k]]].push_back(orb[k]);
  }
  return out;
}

struct AutocorrelationReport {
  double lhs = 0;  // ||G^(rho)||_F^2
  double rhs = 0;  // (|H|/|G|) Tr gamma^(rho)
  double deviation = 0;
  bool support_in_H = true;
  bool pass = false;
};

/**
 * G(x) = pi_lj(xi_h) - E pi_lj(xi) at x = h in H, zero elsewhere;
 * gamma(g) = (1/|H|) sum_h G(h) conj(G(g^{-1} h)). Checks ||G^(rho)||_F^2 = (|H|/|G|) Tr gamma^(rho).
 */
inline AutocorrelationReport autocorrelation_check(const PerturbationRealization& r, const NoiseLaw& law,
                                                   const DualSpace& D, size_t pi_idx, int l, int j, size_t rho_idx,
                                                   double tol = 1e-10) {
  const Group& G = D.group();
  if (G.order() > (u64{1} << 12)) throw precondition_error("autocorrelation_check: |G| > 2^12");
  const Subgroup& H = r.subgroup;
  const Irrep& pi = D[pi_idx];
  const Irrep& rho = D[rho_idx];
  const cd Elj = expectation_matrix(law, pi)(l, j);
  std::vector<cd> Gf(G.order(), cd(0, 0));
  for (size_t i = 0; i < H.order(); ++i) Gf[G.index_of(H.elements()[i])] = pi.evaluate(r.xi[i])(l, j) - Elj;
  const double nG = static_cast<double>(G.order()), nH = static_cast<double>(H.order());

  Eigen::MatrixXcd Ghat = Eigen::MatrixXcd::Zero(rho.dim(), rho.dim());
  for (const auto& h : H.elements()) accumulate(rho, h, Gf[G.index_of(h)], Ghat);
  Ghat /= nG;

  AutocorrelationReport rep;
  Eigen::MatrixXcd ghat = Eigen::MatrixXcd::Zero(rho.dim(), rho.dim());
  for (u64 gi = 0; gi < G.order(); ++gi) {
    const Element g = G.at(gi);
    const Element ginv = G.inverse(g);
    cd gamma = 0;
    for (const auto& h : H.elements()) gamma += Gf[G.index_of(h)] * std::conj(Gf[G.index_of(G.mul_unchecked(ginv, h))]);
    gamma /= nH;
    if (gamma != cd(0, 0) && !H.contains(g)) rep.support_in_H = false;
    accumulate(rho, g, gamma, ghat);
  }
  ghat /= nG;
  rep.lhs = Ghat.squaredNorm();
  const cd tr = (nH / nG) * ghat.trace();
  rep.rhs = tr.real();
  rep.deviation = std::max(std::abs(rep.lhs - tr.real()), std::abs(tr.imag()));
  rep.pass = rep.deviation <= tol && rep.support_in_H;
  return rep;
}

struct DenoiseResult {
  SpectralField estimate;
  std::vector<bool> recoverable;
  std::vector<double> sigma_min;
};

/// F^(pi) = F(delta_{H_xi})(pi) E[pi(xi)]^{-1} where sigma_min(E) >= tau, masked otherwise.
inline DenoiseResult denoise(const PerturbationRealization& r, const NoiseLaw& law, std::shared_ptr<const DualSpace> D,
                             double tau = 1e-8) {
  const SpectralField obs = dft(realization_function(r), D);
  DenoiseResult out{SpectralField(D), std::vector<bool>(D->size(), false), std::vector<double>(D->size(), 0.0)};
  for (size_t p = 0; p < D->size(); ++p) {
    const Eigen::MatrixXcd E = expectation_matrix(law, (*D)[p]);
    const double smin = Eigen::JacobiSVD<Eigen::MatrixXcd>(E).singularValues().minCoeff();
    out.sigma_min[p] = smin;
    if (smin < tau) continue;
    out.recoverable[p] = true;
    out.estimate[p] = E.rows() == 1 ? Eigen::MatrixXcd(obs[p] / E(0, 0)) : Eigen::MatrixXcd(obs[p] * E.inverse());
  }
  return out;
}

}  // namespace gs
