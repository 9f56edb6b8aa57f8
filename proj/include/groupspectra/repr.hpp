#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <functional>
#include <map>
#include <memory>
#include <numbers>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "group.hpp"

namespace gs {

using cd = std::complex<double>;

enum class DihedralKind { trivial, sign, alt_rot, alt_rot_sign, two_dim };

inline std::string dihedral_kind_name(DihedralKind k) {
  switch (k) {
    case DihedralKind::trivial: return "trivial";
    case DihedralKind::sign: return "sign";
    case DihedralKind::alt_rot: return "alt_rot";
    case DihedralKind::alt_rot_sign: return "alt_rot_sign";
    case DihedralKind::two_dim: return "two_dim";
  }
  return "?";
}

/**
 * Canonical irrep label.
 *
 * torus:      k = character coordinates in Z/(MN), value exp(-2 pi i <P,K>/(MN)).
 * heisenberg: m | MN, c in (Z/m)^x (c = 0 iff m = 1), a, b in Z/(MN/m).
 * dihedral:   dkind, plus index h in [1, (n-1)/2] for two_dim.
 */
struct Label {
  Family family = Family::torus;
  std::vector<i64> k;
  i64 m = 1;
  i64 c = 0;
  i64 a = 0;
  i64 b = 0;
  DihedralKind dkind = DihedralKind::trivial;
  i64 index = 0;

  bool operator==(const Label&) const = default;
  auto operator<=>(const Label&) const = default;

  std::string to_string() const {
    std::string s;
    switch (family) {
      case Family::torus:
        s = "chi(";
        for (size_t i = 0; i < k.size(); ++i) s += (i ? "," : "") + std::to_string(k[i]);
        return s + ")";
      case Family::heisenberg:
        return "pi(m=" + std::to_string(m) + ",c=" + std::to_string(c) + ",a=" + std::to_string(a) +
               ",b=" + std::to_string(b) + ")";
      case Family::dihedral:
        s = dihedral_kind_name(dkind);
        if (dkind == DihedralKind::two_dim) s += "(" + std::to_string(index) + ")";
        return s;
    }
    return s;
  }
};

/// exp(2 pi i r / den), exact at multiples of a quarter turn.
inline std::shared_ptr<const std::vector<cd>> root_table(i64 den) {
  auto t = std::make_shared<std::vector<cd>>(static_cast<size_t>(den));
  for (i64 r = 0; r < den; ++r) {
    if ((4 * r) % den == 0) {
      static const cd quarter[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
      (*t)[r] = quarter[(4 * r) / den];
    } else {
      const double th = 2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(den);
      (*t)[r] = cd(std::cos(th), std::sin(th));
    }
  }
  return t;
}

/**
 * Closed-form unitary irreducible representation. Every implemented matrix is monomial:
 * row i has a single nonzero entry, a root of unity, in column col(i).
 */
class Irrep {
 public:
  Irrep(const Group& G, Label label) : Irrep(G, std::move(label), nullptr) {}

  Irrep(const Group& G, Label label, std::shared_ptr<const std::vector<cd>> roots)
      : group_(G), label_(std::move(label)) {
    validate();
    den_ = G.family() == Family::dihedral ? 2 * G.modulus() : G.modulus();
    roots_ = roots && static_cast<i64>(roots->size()) == den_ ? std::move(roots) : root_table(den_);
  }

  const Group& group() const { return group_; }
  const Label& label() const { return label_; }
  int dim() const { return dim_; }
  i64 phase_denominator() const { return den_; }
  const std::vector<cd>& roots() const { return *roots_; }
  const std::shared_ptr<const std::vector<cd>>& roots_ptr() const { return roots_; }

  bool is_trivial() const {
    switch (label_.family) {
      case Family::torus:
        for (i64 v : label_.k)
          if (v) return false;
        return true;
      case Family::heisenberg: return label_.m == 1 && label_.a == 0 && label_.b == 0;
      case Family::dihedral: return label_.dkind == DihedralKind::trivial;
    }
    return false;
  }

  /// Calls f(row, col, phase_index) for each nonzero entry; the entry equals roots()[phase_index].
  template <class F>
  void for_each_entry(const Element& g, F&& f) const {
    const i64 n = group_.modulus();
    switch (label_.family) {
      case Family::torus: {
        i64 s = 0;
        for (size_t i = 0; i < label_.k.size(); ++i) s = (s + (g.c[i] * label_.k[i]) % n) % n;
        f(0, 0, mod(-s, n));
        return;
      }
      case Family::heisenberg: {
        const i64 m = label_.m, scale = n / m;
        const i64 X = g.c[0], Y = g.c[1], Z = g.c[2];
        const i64 base = (label_.a * X + label_.b * Y) % n;
        for (i64 j = 0; j < m; ++j) {
          const i64 central = (scale * ((label_.c * ((Y * j + Z) % m)) % m)) % n;
          f(static_cast<int>(j), static_cast<int>((j + X) % m), (base + central) % n);
        }
        return;
      }
      case Family::dihedral: {
        const i64 k = g.c[0], fl = g.c[1];
        switch (label_.dkind) {
          case DihedralKind::trivial: f(0, 0, 0); return;
          case DihedralKind::sign: f(0, 0, fl * n); return;
          case DihedralKind::alt_rot: f(0, 0, (k % 2) * n); return;
          case DihedralKind::alt_rot_sign: f(0, 0, ((k + fl) % 2) * n); return;
          case DihedralKind::two_dim: {
            const i64 p = (2 * label_.index * k) % (2 * n);
            f(0, static_cast<int>(fl), p);
            f(1, static_cast<int>(1 - fl), mod(-p, 2 * n));
            return;
          }
        }
        return;
      }
    }
  }

  Eigen::MatrixXcd evaluate(const Element& g) const {
    group_.check(g);
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim_, dim_);
    for_each_entry(g, [&](int r, int c, i64 p) { out(r, c) = (*roots_)[p]; });
    return out;
  }

  cd character(const Element& g) const {
    group_.check(g);
    cd s = 0;
    for_each_entry(g, [&](int r, int c, i64 p) {
      if (r == c) s += (*roots_)[p];
    });
    return s;
  }

 private:
  void validate() {
    if (label_.family != group_.family()) throw std::domain_error("irrep label family does not match group");
    const i64 n = group_.modulus();
    switch (label_.family) {
      case Family::torus:
        if (static_cast<int>(label_.k.size()) != group_.rank()) throw std::domain_error("torus label: wrong rank");
        for (i64 v : label_.k)
          if (v < 0 || v >= n) throw std::domain_error("torus label: coordinate out of range");
        dim_ = 1;
        return;
      case Family::heisenberg: {
        const i64 m = label_.m;
        if (m < 1 || n % m != 0) throw std::domain_error("heisenberg label: m must divide MN");
        if (m == 1 ? label_.c != 0 : (label_.c < 1 || label_.c >= m || std::gcd(label_.c, m) != 1))
          throw std::domain_error("heisenberg label: c must be a unit mod m");
        if (label_.a < 0 || label_.a >= n / m || label_.b < 0 || label_.b >= n / m)
          throw std::domain_error("heisenberg label: a, b must lie in Z/(MN/m)");
        dim_ = static_cast<int>(m);
        return;
      }
      case Family::dihedral:
        if (label_.dkind == DihedralKind::two_dim) {
          if (label_.index < 1 || 2 * label_.index >= n) throw std::domain_error("dihedral label: bad index");
          dim_ = 2;
        } else {
          if ((label_.dkind == DihedralKind::alt_rot || label_.dkind == DihedralKind::alt_rot_sign) && n % 2 != 0)
            throw std::domain_error("dihedral label: alternating characters need even n");
          dim_ = 1;
        }
        return;
    }
  }

  Group group_;
  Label label_;
  int dim_ = 1;
  i64 den_ = 1;
  std::shared_ptr<const std::vector<cd>> roots_;
};

inline std::vector<i64> divisors(i64 n) {
  std::vector<i64> d;
  for (i64 i = 1; i <= n; ++i)
    if (n % i == 0) d.push_back(i);
  return d;
}

/// The complete list of irreps of a group, certified by sum of d^2 = |G|.
class DualSpace {
 public:
  static DualSpace enumerate(const Group& G, u64 cap = default_enumeration_cap) {
    if (G.order() > cap) throw resource_error("enumerate_dual: " + G.name() + " exceeds enumeration cap");
    DualSpace D(G);
    const i64 n = G.modulus();
    const i64 den = G.family() == Family::dihedral ? 2 * n : n;
    auto roots = root_table(den);
    std::vector<Label> labels;
    switch (G.family()) {
      case Family::torus: {
        const u64 count = G.order();
        for (u64 i = 0; i < count; ++i) {
          Label l;
          l.family = Family::torus;
          l.k = G.at(i).c;
          labels.push_back(std::move(l));
        }
        break;
      }
      case Family::heisenberg:
        for (i64 m : divisors(n))
          for (i64 c = (m == 1 ? 0 : 1); c < std::max<i64>(m, 1); ++c) {
            if (m > 1 && std::gcd(c, m) != 1) continue;
            for (i64 a = 0; a < n / m; ++a)
              for (i64 b = 0; b < n / m; ++b) {
                Label l;
                l.family = Family::heisenberg;
                l.m = m;
                l.c = c;
                l.a = a;
                l.b = b;
                labels.push_back(l);
              }
          }
        break;
      case Family::dihedral: {
        auto one = [](DihedralKind k) {
          Label l;
          l.family = Family::dihedral;
          l.dkind = k;
          return l;
        };
        labels.push_back(one(DihedralKind::trivial));
        labels.push_back(one(DihedralKind::sign));
        if (n % 2 == 0) {
          labels.push_back(one(DihedralKind::alt_rot));
          labels.push_back(one(DihedralKind::alt_rot_sign));
        }
        for (i64 h = 1; 2 * h < n; ++h) {
          Label l = one(DihedralKind::two_dim);
          l.index = h;
          labels.push_back(l);
        }
        break;
      }
    }
    u64 total = 0;
    for (auto& l : labels) {
      D.irreps_.emplace_back(G, std::move(l), roots);
      const u64 d = static_cast<u64>(D.irreps_.back().dim());
      total += d * d;
      D.max_dim_ = std::max(D.max_dim_, D.irreps_.back().dim());
    }
    if (total != G.order())
      throw std::logic_error("enumerate_dual: sum of squared dimensions " + std::to_string(total) +
                             " != |G| = " + std::to_string(G.order()) + " for " + G.name());
    for (size_t i = 0; i < D.irreps_.size(); ++i) D.index_.emplace(D.irreps_[i].label(), i);
    return D;
  }

  const Group& group() const { return group_; }
  size_t size() const { return irreps_.size(); }
  const Irrep& operator[](size_t i) const { return irreps_[i]; }
  const std::vector<Irrep>& irreps() const { return irreps_; }
  int dim(size_t i) const { return irreps_[i].dim(); }
  int max_dim() const { return max_dim_; }

  u64 sum_squared_dims() const {
    u64 s = 0;
    for (const auto& p : irreps_) s += static_cast<u64>(p.dim()) * static_cast<u64>(p.dim());
    return s;
  }

  size_t index_of(const Label& l) const {
    auto it = index_.find(l);
    if (it == index_.end()) throw std::out_of_range("label " + l.to_string() + " not in dual of " + group_.name());
    return it->second;
  }

  bool contains(const Label& l) const { return index_.count(l) != 0; }

  size_t trivial_index() const {
    for (size_t i = 0; i < irreps_.size(); ++i)
      if (irreps_[i].is_trivial()) return i;
    throw std::logic_error("dual space has no trivial representation");
  }

 private:
  explicit DualSpace(const Group& G) : group_(G) {}

  Group group_;
  std::vector<Irrep> irreps_;
  std::map<Label, size_t> index_;
  int max_dim_ = 1;
};

inline DualSpace enumerate_dual(const Group& G) { return DualSpace::enumerate(G); }

inline Eigen::MatrixXcd evaluate(const Irrep& pi, const Element& g) { return pi.evaluate(g); }
inline cd character(const Irrep& pi, const Element& g) { return pi.character(g); }

struct OrthogonalityReport {
  double max_deviation = 0;
  double tolerance = 1e-10;
  u64 pairs_checked = 0;
  bool pass = false;
};

/**
 * Exhaustive Schur relations: sum_g pi_ij(g) conj(rho_rs(g)) = (|G|/d) delta for every pair
 * of labels and entries. One row per matrix entry (sum d^2 rows), then a single Gram product.
 */
inline OrthogonalityReport schur_orthogonality_check(const DualSpace& D, double tol = 1e-10) {
  const Group& G = D.group();
  if (G.order() > (u64{1} << 14)) throw precondition_error("schur_orthogonality_check: |G| > 2^14");
  const auto els = G.elements();
  const double order = static_cast<double>(G.order());
  std::vector<Eigen::Index> offset(D.size() + 1, 0);
  for (size_t p = 0; p < D.size(); ++p) offset[p + 1] = offset[p] + D.dim(p) * D.dim(p);
  const Eigen::Index rows = offset.back();
  Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(rows, static_cast<Eigen::Index>(els.size()));
  for (size_t p = 0; p < D.size(); ++p) {
    const Irrep& pi = D[p];
    const int d = pi.dim();
    for (size_t g = 0; g < els.size(); ++g)
      pi.for_each_entry(els[g], [&](int r, int c, i64 ph) { A(offset[p] + r * d + c, static_cast<Eigen::Index>(g)) = pi.roots()[ph]; });
  }
  std::vector<double> expect(static_cast<size_t>(rows));
  for (size_t p = 0; p < D.size(); ++p)
    for (Eigen::Index i = offset[p]; i < offset[p + 1]; ++i) expect[static_cast<size_t>(i)] = order / D.dim(p);
  Eigen::MatrixXcd Gram = Eigen::MatrixXcd::Zero(rows, rows);
  Gram.selfadjointView<Eigen::Lower>().rankUpdate(A);
  OrthogonalityReport rep;
  rep.tolerance = tol;
  for (Eigen::Index j = 0; j < rows; ++j)
    for (Eigen::Index i = j; i < rows; ++i) {
      const cd e = i == j ? cd(expect[static_cast<size_t>(i)], 0) : cd(0, 0);
      rep.max_deviation = std::max(rep.max_deviation, std::abs(Gram(i, j) - e));
    }
  rep.pairs_checked = D.size() * (D.size() + 1) / 2;
  rep.pass = rep.max_deviation <= tol;
  return rep;
}

inline OrthogonalityReport schur_orthogonality_check(const Group& G, double tol = 1e-10) {
  return schur_orthogonality_check(DualSpace::enumerate(G), tol);
}

/// (1/|G|) sum_g chi_pi(g) conj(chi_rho(g)) = delta, all label pairs.
inline OrthogonalityReport character_orthonormality_check(const DualSpace& D, double tol = 1e-10) {
  const Group& G = D.group();
  if (G.order() > (u64{1} << 14)) throw precondition_error("character_orthonormality_check: |G| > 2^14");
  const auto els = G.elements();
  const Eigen::Index L = static_cast<Eigen::Index>(D.size());
  Eigen::MatrixXcd X(L, static_cast<Eigen::Index>(els.size()));
  for (Eigen::Index i = 0; i < L; ++i)
    for (size_t g = 0; g < els.size(); ++g) X(i, static_cast<Eigen::Index>(g)) = D[i].character(els[g]);
  Eigen::MatrixXcd Gram = Eigen::MatrixXcd::Zero(L, L);
  Gram.selfadjointView<Eigen::Lower>().rankUpdate(X, 1.0 / static_cast<double>(G.order()));
  OrthogonalityReport rep;
  rep.tolerance = tol;
  for (Eigen::Index j = 0; j < L; ++j)
    for (Eigen::Index i = j; i < L; ++i) {
      rep.max_deviation = std::max(rep.max_deviation, std::abs(Gram(i, j) - (i == j ? cd(1, 0) : cd(0, 0))));
      ++rep.pairs_checked;
    }
  rep.pass = rep.max_deviation <= tol;
  return rep;
}

/// Indices of labels acting trivially on all of H (exact test, every h).
inline std::vector<size_t> annihilator(const Subgroup& H, const DualSpace& D, bool check_index = true) {
  if (!(H.parent() == D.group())) throw std::domain_error("annihilator: subgroup not in the dual's group");
  std::vector<size_t> out;
  for (size_t p = 0; p < D.size(); ++p) {
    const Irrep& pi = D[p];
    bool trivial = true;
    for (const auto& h : H.elements()) {
      pi.for_each_entry(h, [&](int r, int c, i64 ph) {
        if (r != c || std::abs(pi.roots()[ph] - cd(1, 0)) >= 1e-12) trivial = false;
      });
      if (!trivial) break;
    }
    if (trivial) out.push_back(p);
  }
  if (check_index && H.parent().order() <= (u64{1} << 20) && is_normal(H)) {
    u64 s = 0;
    for (size_t p : out) s += static_cast<u64>(D.dim(p)) * static_cast<u64>(D.dim(p));
    if (s * H.order() != H.parent().order())
      throw std::logic_error("annihilator: sum of d^2 over H-perp does not equal |G/H|");
  }
  return out;
}

/// An irrep of a subgroup H, given by an evaluator on elements of H.
struct SubgroupIrrep {
  std::string name;
  int dim = 1;
  std::function<Eigen::MatrixXcd(const Element&)> eval;

  cd character(const Element& h) const { return eval(h).trace(); }
};

/**
 * Irreps of a subgroup H, for the cases with an explicit construction: H = G, abelian G
 * (restrictions of characters), cyclic H, and integer points of HeisenbergMN(M, N) with
 * gcd(M, N) = 1 (isomorphic to HeisenbergMN(1, N)).
 */
inline std::vector<SubgroupIrrep> subgroup_dual(const Subgroup& H) {
  const Group& G = H.parent();
  std::vector<SubgroupIrrep> out;
  if (H.is_whole()) {
    auto D = std::make_shared<DualSpace>(DualSpace::enumerate(G));
    for (size_t i = 0; i < D->size(); ++i)
      out.push_back({(*D)[i].label().to_string(), (*D)[i].dim(), [D, i](const Element& h) { return (*D)[i].evaluate(h); }});
    return out;
  }
  if (G.abelian()) {
    auto D = std::make_shared<DualSpace>(DualSpace::enumerate(G));
    std::set<std::vector<i64>> seen;
    for (size_t i = 0; i < D->size(); ++i) {
      std::vector<i64> sig;
      for (const auto& h : H.elements()) (*D)[i].for_each_entry(h, [&](int, int, i64 p) { sig.push_back(p); });
      if (!seen.insert(sig).second) continue;
      out.push_back({"res " + (*D)[i].label().to_string(), 1, [D, i](const Element& h) { return (*D)[i].evaluate(h); }});
    }
    if (out.size() != H.order()) throw std::logic_error("subgroup_dual: restricted characters incomplete");
    return out;
  }
  if (H.generators().size() == 1 && G.element_order(H.generators()[0]) == H.order()) {
    const Element gen = H.generators()[0];
    const i64 t = static_cast<i64>(H.order());
    auto logs = std::make_shared<std::map<Element, i64>>();
    Element x = G.identity();
    for (i64 e = 0; e < t; ++e) {
      logs->emplace(x, e);
      x = G.mul(x, gen);
    }
    auto roots = root_table(t);
    for (i64 j = 0; j < t; ++j)
      out.push_back({"cyclic(" + std::to_string(j) + "/" + std::to_string(t) + ")", 1,
                     [logs, roots, j, t](const Element& h) {
                       Eigen::MatrixXcd m(1, 1);
                       m(0, 0) = (*roots)[(j * logs->at(h)) % t];
                       return m;
                     }});
    return out;
  }
  if (H.kind() == SubgroupKind::heisenberg_integer_points && std::gcd(G.M(), G.N()) == 1) {
    const i64 M = G.M(), N = G.N();
    const Group K = Group::heisenberg(1, N);
    auto D = std::make_shared<DualSpace>(DualSpace::enumerate(K));
    for (size_t i = 0; i < D->size(); ++i)
      out.push_back({"iso " + (*D)[i].label().to_string(), (*D)[i].dim(), [D, i, M, N](const Element& h) {
                       Element k{{h.c[0] / M, mod((h.c[1] / M) * M, N), h.c[2] / M}};
                       return (*D)[i].evaluate(k);
                     }});
    return out;
  }
  throw std::domain_error("subgroup_dual: no explicit irreps for " + H.describe() + " in " + G.name());
}

/// m(sigma, rho|_H) = (1/|H|) sum_h chi_rho(h) conj(chi_sigma(h)), required integral within 1e-8.
inline i64 restriction_multiplicity(const SubgroupIrrep& sigma, const Irrep& rho, const Subgroup& H) {
  cd s = 0;
  for (const auto& h : H.elements()) s += rho.character(h) * std::conj(sigma.character(h));
  s /= static_cast<double>(H.order());
  const double r = std::round(s.real());
  if (std::abs(s - cd(r, 0)) > 1e-8 || r < 0)
    throw numerical_error("restriction_multiplicity: non-integral character inner product for " + sigma.name);
  return static_cast<i64>(r);
}

struct CliffordReport {
  std::vector<i64> multiplicities;  // per subgroup irrep
  i64 common_multiplicity = 0;
  int common_dim = 0;
  bool dimension_sum_ok = false;
  bool pass = false;
};

/// For normal H: the components of rho|_H share one dimension and one multiplicity.
inline CliffordReport clifford_check(const Irrep& rho, const Subgroup& H, const std::vector<SubgroupIrrep>& sub) {
  CliffordReport rep;
  bool same = true;
  i64 total = 0;
  for (const auto& s : sub) {
    const i64 m = restriction_multiplicity(s, rho, H);
    rep.multiplicities.push_back(m);
    if (m == 0) continue;
    total += m * s.dim;
    if (rep.common_multiplicity == 0) {
      rep.common_multiplicity = m;
      rep.common_dim = s.dim;
    } else if (m != rep.common_multiplicity || s.dim != rep.common_dim) {
      same = false;
    }
  }
  rep.dimension_sum_ok = total == rho.dim();
  rep.pass = same && rep.dimension_sum_ok;
  return rep;
}

}  // namespace gs
