#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "repr.hpp"
#include "rng.hpp"

namespace gs {

enum class NoiseKind { dirac, uniform_on_set, discretized_gaussian, custom_table };

inline std::string noise_kind_name(NoiseKind k) {
  switch (k) {
    case NoiseKind::dirac: return "dirac";
    case NoiseKind::uniform_on_set: return "uniform";
    case NoiseKind::discretized_gaussian: return "gaussian";
    case NoiseKind::custom_table: return "table";
  }
  return "?";
}

/// Finite-support probability law on a group.
class NoiseLaw {
 public:
  static NoiseLaw dirac(const Group& G, const Element& g) { return NoiseLaw(G, NoiseKind::dirac, {{g, 1.0}}); }
  static NoiseLaw dirac(const Group& G) { return dirac(G, G.identity()); }

  static NoiseLaw uniform_on_set(const Group& G, const std::vector<Element>& set) {
    if (set.empty()) throw std::invalid_argument("uniform_on_set: empty set");
    std::vector<std::pair<Element, double>> t;
    for (const auto& g : set) t.emplace_back(g, 1.0 / static_cast<double>(set.size()));
    return NoiseLaw(G, NoiseKind::uniform_on_set, std::move(t));
  }

  static NoiseLaw uniform_on_group(const Group& G) { return uniform_on_set(G, G.elements()); }

  /**
   * Independent per-coordinate weights exp(-(t/M)^2 / (2 sigma^2)) for integer offsets
   * |t| <= radius in units of 1/M. Dihedral laws perturb the rotation coordinate only.
   */
  static NoiseLaw discretized_gaussian(const Group& G, double sigma, i64 radius) {
    if (!(sigma > 0) || radius < 0) throw std::invalid_argument("discretized_gaussian: need sigma > 0, radius >= 0");
    const i64 n = G.modulus();
    const double scale = G.family() == Family::dihedral ? 1.0 : static_cast<double>(G.M());
    std::vector<double> w1;
    for (i64 t = -radius; t <= radius; ++t) {
      const double x = static_cast<double>(t) / scale;
      w1.push_back(std::exp(-x * x / (2 * sigma * sigma)));
    }
    const int coords = G.family() == Family::dihedral ? 1 : G.rank();
    std::map<Element, double> acc;
    std::vector<i64> idx(coords, 0);
    const i64 width = 2 * radius + 1;
    while (true) {
      Element e = G.identity();
      double w = 1;
      for (int i = 0; i < coords; ++i) {
        e.c[i] = mod(idx[i] - radius, n);
        w *= w1[idx[i]];
      }
      acc[e] += w;
      int k = coords - 1;
      while (k >= 0 && ++idx[k] == width) idx[k--] = 0;
      if (k < 0) break;
    }
    double total = 0;
    for (auto& [e, w] : acc) total += w;
    std::vector<std::pair<Element, double>> t;
    for (auto& [e, w] : acc) t.emplace_back(e, w / total);
    NoiseLaw law(G, NoiseKind::discretized_gaussian, std::move(t));
    law.sigma_ = sigma;
    law.radius_ = radius;
    return law;
  }

  static NoiseLaw custom_table(const Group& G, std::vector<std::pair<Element, double>> table) {
    return NoiseLaw(G, NoiseKind::custom_table, std::move(table));
  }

  const Group& group() const { return group_; }
  NoiseKind kind() const { return kind_; }
  const std::vector<Element>& support() const { return support_; }
  const std::vector<double>& probabilities() const { return prob_; }
  double sigma() const { return sigma_; }
  i64 radius() const { return radius_; }

  size_t sample_index(PhiloxStream& s) const {
    if (support_.size() == 1) return 0;
    const double u = s.next_double();
    const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    return std::min(static_cast<size_t>(it - cdf_.begin()), support_.size() - 1);
  }

  const Element& sample(PhiloxStream& s) const { return support_[sample_index(s)]; }

 private:
  NoiseLaw(const Group& G, NoiseKind k, std::vector<std::pair<Element, double>> table) : group_(G), kind_(k) {
    if (table.empty()) throw std::invalid_argument("noise law: empty support");
    std::sort(table.begin(), table.end());
    double total = 0;
    for (size_t i = 0; i < table.size(); ++i) {
      G.check(table[i].first);
      if (i && table[i].first == table[i - 1].first) throw std::invalid_argument("noise law: duplicate support element");
      if (!(table[i].second >= 0)) throw std::invalid_argument("noise law: negative probability");
      total += table[i].second;
    }
    if (std::abs(total - 1.0) > 1e-12) throw std::invalid_argument("noise law: probabilities do not sum to 1");
    double run = 0;
    for (auto& [g, p] : table) {
      support_.push_back(g);
      prob_.push_back(p);
      run += p;
      cdf_.push_back(run);
    }
    cdf_.back() = 1.0;
  }

  Group group_;
  NoiseKind kind_;
  std::vector<Element> support_;
  std::vector<double> prob_;
  std::vector<double> cdf_;
  double sigma_ = 0;
  i64 radius_ = 0;
};

/// E[pi(xi)] = sum_g p_g pi(g).
inline Eigen::MatrixXcd expectation_matrix(const NoiseLaw& law, const Irrep& pi) {
  if (!(law.group() == pi.group())) throw std::domain_error("expectation_matrix: law and irrep on different groups");
  Eigen::MatrixXcd E = Eigen::MatrixXcd::Zero(pi.dim(), pi.dim());
  for (size_t i = 0; i < law.support().size(); ++i) {
    const double p = law.probabilities()[i];
    pi.for_each_entry(law.support()[i], [&](int r, int c, i64 ph) { E(r, c) += p * pi.roots()[ph]; });
  }
  return E;
}

struct VarianceReport {
  double C = 0;
  size_t label = 0;
  int row = 0;
  int col = 0;
};

/// Entrywise max over labels and (l, j) of E|pi_lj(xi)|^2 - |E pi_lj(xi)|^2.
inline VarianceReport variance_report(const NoiseLaw& law, const DualSpace& D) {
  VarianceReport rep;
  for (size_t p = 0; p < D.size(); ++p) {
    const Irrep& pi = D[p];
    Eigen::MatrixXcd E = Eigen::MatrixXcd::Zero(pi.dim(), pi.dim());
    Eigen::MatrixXd S = Eigen::MatrixXd::Zero(pi.dim(), pi.dim());
    for (size_t i = 0; i < law.support().size(); ++i) {
      const double pr = law.probabilities()[i];
      pi.for_each_entry(law.support()[i], [&](int r, int c, i64 ph) {
        E(r, c) += pr * pi.roots()[ph];
        S(r, c) += pr;
      });
    }
    for (int r = 0; r < pi.dim(); ++r)
      for (int c = 0; c < pi.dim(); ++c) {
        const double v = std::max(0.0, S(r, c) - std::norm(E(r, c)));
        if (v > rep.C) rep = {v, p, r, c};
      }
  }
  return rep;
}

inline double variance_constant(const NoiseLaw& law, const DualSpace& D) { return variance_report(law, D).C; }

}  // namespace gs
