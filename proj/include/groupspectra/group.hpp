#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <deque>
#include <limits>
#include <memory>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "errors.hpp"

namespace gs {

using i64 = std::int64_t;
using u64 = std::uint64_t;

inline constexpr u64 default_enumeration_cap = u64{1} << 24;

inline i64 mod(i64 a, i64 n) {
  i64 r = a % n;
  return r < 0 ? r + n : r;
}

/// Saturating product; returns UINT64_MAX on overflow.
inline u64 sat_mul(u64 a, u64 b) {
  if (a != 0 && b > std::numeric_limits<u64>::max() / a) return std::numeric_limits<u64>::max();
  return a * b;
}

inline u64 sat_pow(u64 base, int e) {
  u64 r = 1;
  for (int i = 0; i < e; ++i) r = sat_mul(r, base);
  return r;
}

/// Group element in canonical residue form. For the scaled families a coordinate
/// k stands for the rational k/M modulo N; the scale lives on the group.
struct Element {
  std::vector<i64> c;

  bool operator==(const Element&) const = default;
  auto operator<=>(const Element&) const = default;
};

enum class Family { torus, heisenberg, dihedral };

inline std::string family_name(Family f) {
  switch (f) {
    case Family::torus: return "torus";
    case Family::heisenberg: return "heisenberg";
    case Family::dihedral: return "dihedral";
  }
  return "?";
}

/**
 * A concrete finite group: ScaledTorus(d, M, N), HeisenbergMN(M, N) or Dihedral(n).
 *
 * Torus and Heisenberg coordinates are residues modulo n = M*N. The Heisenberg law is
 * the polarized one, (X,Y,Z)(U,V,W) = (X+U, Y+V, Z+W+XV) mod n, i.e. the finite
 * Heisenberg group over Z/nZ with coordinates read at scale 1/M.
 * Dihedral elements are (k, f): rotation k mod n followed by f reflections.
 */
class Group {
 public:
  static Group torus(int d, i64 M, i64 N) {
    if (d < 1 || M < 1 || N < 1) throw std::invalid_argument("torus: need d, M, N >= 1");
    return Group(Family::torus, d, M, N, M * N);
  }

  static Group heisenberg(i64 M, i64 N) {
    if (M < 1 || N < 1) throw std::invalid_argument("heisenberg: need M, N >= 1");
    if (M * N > (i64{1} << 20)) throw resource_error("heisenberg: M*N too large");
    return Group(Family::heisenberg, 3, M, N, M * N);
  }

  static Group dihedral(i64 n) {
    if (n < 1) throw std::invalid_argument("dihedral: need n >= 1");
    return Group(Family::dihedral, 2, 1, n, n);
  }

  Family family() const { return family_; }
  int rank() const { return rank_; }
  i64 M() const { return M_; }
  i64 N() const { return N_; }
  /// Residue modulus of the rotation / coordinate part (MN, or n for dihedral).
  i64 modulus() const { return n_; }

  u64 order() const {
    switch (family_) {
      case Family::torus: return sat_pow(static_cast<u64>(n_), rank_);
      case Family::heisenberg: return sat_pow(static_cast<u64>(n_), 3);
      case Family::dihedral: return 2 * static_cast<u64>(n_);
    }
    return 0;
  }

  bool abelian() const {
    switch (family_) {
      case Family::torus: return true;
      case Family::heisenberg: return n_ == 1;
      case Family::dihedral: return n_ <= 2;
    }
    return false;
  }

  std::string name() const {
    switch (family_) {
      case Family::torus:
        return "ScaledTorus(" + std::to_string(rank_) + "," + std::to_string(M_) + "," + std::to_string(N_) + ")";
      case Family::heisenberg: return "HeisenbergMN(" + std::to_string(M_) + "," + std::to_string(N_) + ")";
      case Family::dihedral: return "Dihedral(" + std::to_string(n_) + ")";
    }
    return "?";
  }

  bool operator==(const Group& o) const {
    return family_ == o.family_ && rank_ == o.rank_ && M_ == o.M_ && N_ == o.N_;
  }

  Element identity() const { return Element{std::vector<i64>(rank_, 0)}; }

  bool contains(const Element& g) const {
    if (static_cast<int>(g.c.size()) != rank_) return false;
    for (int i = 0; i < rank_; ++i) {
      i64 bound = (family_ == Family::dihedral && i == 1) ? 2 : n_;
      if (g.c[i] < 0 || g.c[i] >= bound) return false;
    }
    return true;
  }

  void check(const Element& g) const {
    if (!contains(g)) throw std::domain_error("element is not a canonical element of " + name());
  }

  Element mul(const Element& g, const Element& h) const {
    check(g);
    check(h);
    return mul_unchecked(g, h);
  }

  Element mul_unchecked(const Element& g, const Element& h) const {
    Element r;
    r.c.resize(rank_);
    switch (family_) {
      case Family::torus:
        for (int i = 0; i < rank_; ++i) r.c[i] = (g.c[i] + h.c[i]) % n_;
        break;
      case Family::heisenberg:
        r.c[0] = (g.c[0] + h.c[0]) % n_;
        r.c[1] = (g.c[1] + h.c[1]) % n_;
        r.c[2] = (g.c[2] + h.c[2] + (g.c[0] * h.c[1]) % n_) % n_;
        break;
      case Family::dihedral:
        r.c[0] = g.c[1] ? mod(g.c[0] - h.c[0], n_) : (g.c[0] + h.c[0]) % n_;
        r.c[1] = g.c[1] ^ h.c[1];
        break;
    }
    return r;
  }

  Element inverse(const Element& g) const {
    check(g);
    Element r;
    r.c.resize(rank_);
    switch (family_) {
      case Family::torus:
        for (int i = 0; i < rank_; ++i) r.c[i] = mod(-g.c[i], n_);
        break;
      case Family::heisenberg:
        r.c[0] = mod(-g.c[0], n_);
        r.c[1] = mod(-g.c[1], n_);
        r.c[2] = mod(-g.c[2] + (g.c[0] * g.c[1]) % n_, n_);
        break;
      case Family::dihedral:
        r.c[0] = g.c[1] ? g.c[0] : mod(-g.c[0], n_);
        r.c[1] = g.c[1];
        break;
    }
    return r;
  }

  Element pow(const Element& g, u64 e) const {
    Element r = identity(), b = g;
    while (e) {
      if (e & 1) r = mul_unchecked(r, b);
      b = mul_unchecked(b, b);
      e >>= 1;
    }
    return r;
  }

  /// Least t >= 1 with g^t = id.
  u64 element_order(const Element& g) const {
    check(g);
    const Element id = identity();
    Element x = g;
    u64 t = 1;
    while (x != id) {
      x = mul_unchecked(x, g);
      if (++t > order()) throw std::logic_error("element_order: no finite order found");
    }
    return t;
  }

  /// Position of g in lexicographic enumeration order.
  u64 index_of(const Element& g) const {
    if (family_ == Family::dihedral) return static_cast<u64>(g.c[0]) * 2 + static_cast<u64>(g.c[1]);
    u64 idx = 0;
    for (int i = 0; i < rank_; ++i) idx = idx * static_cast<u64>(n_) + static_cast<u64>(g.c[i]);
    return idx;
  }

  Element at(u64 index) const {
    Element r;
    r.c.resize(rank_);
    if (family_ == Family::dihedral) {
      r.c[0] = static_cast<i64>(index / 2);
      r.c[1] = static_cast<i64>(index % 2);
      return r;
    }
    for (int i = rank_ - 1; i >= 0; --i) {
      r.c[i] = static_cast<i64>(index % static_cast<u64>(n_));
      index /= static_cast<u64>(n_);
    }
    return r;
  }

  /// Every element exactly once, in lexicographic order of canonical coordinates.
  std::vector<Element> elements(u64 cap = default_enumeration_cap) const {
    const u64 n = order();
    if (n > cap) throw resource_error(name() + ": order " + std::to_string(n) + " exceeds enumeration cap");
    std::vector<Element> out;
    out.reserve(n);
    for (u64 i = 0; i < n; ++i) out.push_back(at(i));
    return out;
  }

  std::vector<Element> generators() const {
    std::vector<Element> gens;
    if (family_ == Family::dihedral) {
      gens.push_back(Element{{n_ > 1 ? 1 : 0, 0}});
      gens.push_back(Element{{0, 1}});
      return gens;
    }
    for (int i = 0; i < rank_; ++i) {
      Element e = identity();
      e.c[i] = n_ > 1 ? 1 : 0;
      gens.push_back(e);
    }
    return gens;
  }

 private:
  Group(Family f, int rank, i64 M, i64 N, i64 n) : family_(f), rank_(rank), M_(M), N_(N), n_(n) {}

  Family family_;
  int rank_;
  i64 M_;
  i64 N_;
  i64 n_;
};

enum class SubgroupKind { torus_sublattice, heisenberg_integer_points, dihedral_rotations, generated };

/**
 * A subgroup of a FiniteGroup with its elements enumerated (sorted) at construction.
 *
 * TorusSublattice(N_1..N_r) on ScaledTorus(d, M, N): the first r coordinates range over
 * multiples of M*N_i (values in N_i Z), the remaining d-r coordinates are zero.
 */
class Subgroup {
 public:
  static Subgroup torus_sublattice(const Group& G, std::vector<i64> steps, u64 cap = default_enumeration_cap) {
    if (G.family() != Family::torus) throw std::domain_error("torus_sublattice: parent must be a torus");
    if (steps.empty() || static_cast<int>(steps.size()) > G.rank())
      throw std::invalid_argument("torus_sublattice: need 1 <= r <= d steps");
    for (i64 s : steps)
      if (s < 1 || G.N() % s != 0) throw std::invalid_argument("torus_sublattice: each N_i must divide N");
    u64 order = 1;
    for (i64 s : steps) order = sat_mul(order, static_cast<u64>(G.N() / s));
    if (order > cap) throw resource_error("torus_sublattice: order exceeds enumeration cap");
    Subgroup H(G, SubgroupKind::torus_sublattice);
    H.params_ = steps;
    const int r = static_cast<int>(steps.size());
    std::vector<Element> els;
    els.reserve(order);
    std::vector<i64> counter(r, 0);
    for (u64 i = 0; i < order; ++i) {
      Element e = G.identity();
      for (int k = 0; k < r; ++k) e.c[k] = counter[k] * G.M() * steps[k];
      els.push_back(std::move(e));
      for (int k = r - 1; k >= 0; --k) {
        if (++counter[k] < G.N() / steps[k]) break;
        counter[k] = 0;
      }
    }
    for (int k = 0; k < r; ++k) {
      Element g = G.identity();
      g.c[k] = mod(G.M() * steps[k], G.modulus());
      H.gens_.push_back(g);
    }
    H.set_elements(std::move(els));
    return H;
  }

  /// Points with all coordinates in Z, i.e. residues divisible by M. Order N^3.
  static Subgroup heisenberg_integer_points(const Group& G, u64 cap = default_enumeration_cap) {
    if (G.family() != Family::heisenberg) throw std::domain_error("heisenberg_integer_points: parent must be Heisenberg");
    const u64 order = sat_pow(static_cast<u64>(G.N()), 3);
    if (order > cap) throw resource_error("heisenberg_integer_points: order exceeds enumeration cap");
    Subgroup H(G, SubgroupKind::heisenberg_integer_points);
    std::vector<Element> els;
    els.reserve(order);
    const i64 N = G.N(), M = G.M();
    for (i64 x = 0; x < N; ++x)
      for (i64 y = 0; y < N; ++y)
        for (i64 z = 0; z < N; ++z) els.push_back(Element{{x * M, y * M, z * M}});
    for (int k = 0; k < 3; ++k) {
      Element g = G.identity();
      g.c[k] = mod(M, G.modulus());
      H.gens_.push_back(g);
    }
    H.set_elements(std::move(els));
    return H;
  }

  /// The cyclic rotation subgroup of order k (k | n).
  static Subgroup dihedral_rotations(const Group& G, i64 k) {
    if (G.family() != Family::dihedral) throw std::domain_error("dihedral_rotations: parent must be dihedral");
    if (k < 1 || G.modulus() % k != 0) throw std::invalid_argument("dihedral_rotations: k must divide n");
    Subgroup H(G, SubgroupKind::dihedral_rotations);
    H.params_ = {k};
    const i64 step = G.modulus() / k;
    std::vector<Element> els;
    for (i64 j = 0; j < k; ++j) els.push_back(Element{{j * step, 0}});
    H.gens_.push_back(Element{{step % G.modulus(), 0}});
    H.set_elements(std::move(els));
    return H;
  }

  /// Closure of a generating set under multiplication.
  static Subgroup generated(const Group& G, std::vector<Element> gens, u64 cap = default_enumeration_cap) {
    for (const auto& g : gens) G.check(g);
    Subgroup H(G, SubgroupKind::generated);
    std::set<Element> seen{G.identity()};
    std::deque<Element> queue{G.identity()};
    while (!queue.empty()) {
      Element x = std::move(queue.front());
      queue.pop_front();
      for (const auto& g : gens) {
        Element y = G.mul_unchecked(x, g);
        if (seen.insert(y).second) {
          if (seen.size() > cap) throw resource_error("generated: subgroup exceeds enumeration cap");
          queue.push_back(std::move(y));
        }
      }
    }
    H.gens_ = std::move(gens);
    H.set_elements(std::vector<Element>(seen.begin(), seen.end()));
    return H;
  }

  static Subgroup whole(const Group& G, u64 cap = default_enumeration_cap) {
    Subgroup H(G, SubgroupKind::generated);
    H.gens_ = G.generators();
    H.set_elements(G.elements(cap));
    return H;
  }

  static Subgroup trivial(const Group& G) { return generated(G, {}); }

  const Group& parent() const { return parent_; }
  SubgroupKind kind() const { return kind_; }
  const std::vector<i64>& params() const { return params_; }
  const std::vector<Element>& generators() const { return gens_; }
  u64 order() const { return elements_->size(); }
  const std::vector<Element>& elements() const { return *elements_; }

  bool contains(const Element& g) const { return std::binary_search(elements_->begin(), elements_->end(), g); }

  /// Closed-form cardinality of the descriptor (independent of enumeration).
  u64 closed_form_order() const {
    switch (kind_) {
      case SubgroupKind::torus_sublattice: {
        u64 o = 1;
        for (i64 s : params_) o = sat_mul(o, static_cast<u64>(parent_.N() / s));
        return o;
      }
      case SubgroupKind::heisenberg_integer_points: return sat_pow(static_cast<u64>(parent_.N()), 3);
      case SubgroupKind::dihedral_rotations: return static_cast<u64>(params_[0]);
      case SubgroupKind::generated: return order();
    }
    return 0;
  }

  bool is_whole() const { return order() == parent_.order(); }

  std::string describe() const {
    switch (kind_) {
      case SubgroupKind::torus_sublattice: {
        std::string s = "TorusSublattice(";
        for (size_t i = 0; i < params_.size(); ++i) s += (i ? "," : "") + std::to_string(params_[i]);
        return s + ")";
      }
      case SubgroupKind::heisenberg_integer_points: return "HeisenbergIntegerPoints";
      case SubgroupKind::dihedral_rotations: return "DihedralRotations(" + std::to_string(params_[0]) + ")";
      case SubgroupKind::generated: return "Generated(order " + std::to_string(order()) + ")";
    }
    return "?";
  }

 private:
  Subgroup(const Group& G, SubgroupKind k) : parent_(G), kind_(k) {}

  void set_elements(std::vector<Element> els) {
    std::sort(els.begin(), els.end());
    elements_ = std::make_shared<const std::vector<Element>>(std::move(els));
  }

  Group parent_;
  SubgroupKind kind_;
  std::vector<i64> params_;
  std::vector<Element> gens_;
  std::shared_ptr<const std::vector<Element>> elements_;
};

inline u64 element_order(const Group& G, const Element& g) { return G.element_order(g); }

/**
 * True iff gHg^{-1} = H for all g. Conjugates every h by every g when |G||H| is small,
 * otherwise by a generating set of G (which is equivalent for finite groups).
 */
inline bool is_normal(const Subgroup& H, u64 exhaustive_threshold = u64{1} << 22) {
  const Group& G = H.parent();
  std::vector<Element> conj =
      sat_mul(G.order(), H.order()) <= exhaustive_threshold ? G.elements() : G.generators();
  for (const auto& g : conj) {
    const Element gi = G.inverse(g);
    for (const auto& h : H.elements())
      if (!H.contains(G.mul_unchecked(G.mul_unchecked(g, h), gi))) return false;
  }
  return true;
}

/// Exhaustive closure check under mul and inverse.
inline bool is_closed(const Subgroup& H) {
  const Group& G = H.parent();
  for (const auto& a : H.elements()) {
    if (!H.contains(G.inverse(a))) return false;
    for (const auto& b : H.elements())
      if (!H.contains(G.mul_unchecked(a, b))) return false;
  }
  return true;
}

}  // namespace gs
