#pragma once

#include <Eigen/Dense>

#include <complex>
#include <memory>
#include <thread>
#include <utility>
#include <vector>

#include "repr.hpp"

namespace gs {

/// A complex function on a group: dense (enumeration order) or a sparse weighted multiset.
struct GroupFunction {
  Group group;
  bool sparse = false;
  std::vector<cd> dense;
  std::vector<std::pair<Element, cd>> terms;

  static GroupFunction zeros(const Group& G) { return {G, false, std::vector<cd>(G.order()), {}}; }

  static GroupFunction from_dense(const Group& G, std::vector<cd> values) {
    if (values.size() != G.order()) throw std::invalid_argument("from_dense: size does not match |G|");
    return {G, false, std::move(values), {}};
  }

  static GroupFunction from_sparse(const Group& G, std::vector<std::pair<Element, cd>> t) {
    for (const auto& [g, w] : t) G.check(g);
    return {G, true, {}, std::move(t)};
  }

  static GroupFunction dirac(const Group& G, const Element& g) { return from_sparse(G, {{g, cd(1, 0)}}); }

  static GroupFunction indicator(const Subgroup& H) {
    std::vector<std::pair<Element, cd>> t;
    t.reserve(H.order());
    for (const auto& h : H.elements()) t.emplace_back(h, cd(1, 0));
    return {H.parent(), true, {}, std::move(t)};
  }

  std::vector<cd> to_dense() const {
    if (!sparse) return dense;
    std::vector<cd> out(group.order());
    for (const auto& [g, w] : terms) out[group.index_of(g)] += w;
    return out;
  }

  /// Calls f(element, weight) over the support (every element for dense input).
  template <class F>
  void for_each(F&& f) const {
    if (sparse) {
      for (const auto& [g, w] : terms) f(g, w);
    } else {
      for (u64 i = 0; i < dense.size(); ++i)
        if (dense[i] != cd(0, 0)) f(group.at(i), dense[i]);
    }
  }
};

/// An element of L^2 of the dual: one d x d complex block per label.
class SpectralField {
 public:
  explicit SpectralField(std::shared_ptr<const DualSpace> D) : dual_(std::move(D)) {
    blocks_.reserve(dual_->size());
    for (size_t i = 0; i < dual_->size(); ++i) blocks_.push_back(Eigen::MatrixXcd::Zero(dual_->dim(i), dual_->dim(i)));
  }

  const DualSpace& dual() const { return *dual_; }
  const std::shared_ptr<const DualSpace>& dual_ptr() const { return dual_; }
  size_t size() const { return blocks_.size(); }
  Eigen::MatrixXcd& operator[](size_t i) { return blocks_[i]; }
  const Eigen::MatrixXcd& operator[](size_t i) const { return blocks_[i]; }
  const Eigen::MatrixXcd& at(const Label& l) const { return blocks_[dual_->index_of(l)]; }

  SpectralField operator-(const SpectralField& o) const {
    check_same(o);
    SpectralField r(dual_);
    for (size_t i = 0; i < size(); ++i) r.blocks_[i] = blocks_[i] - o.blocks_[i];
    return r;
  }

  void check_same(const SpectralField& o) const {
    if (dual_ != o.dual_ && !(dual_->group() == o.dual_->group()))
      throw std::domain_error("spectral fields live on different dual spaces");
    for (size_t i = 0; i < size(); ++i)
      if (blocks_[i].rows() != o.blocks_[i].rows() || blocks_[i].cols() != o.blocks_[i].cols())
        throw std::domain_error("spectral field block shape mismatch");
  }

 private:
  std::shared_ptr<const DualSpace> dual_;
  std::vector<Eigen::MatrixXcd> blocks_;
};

/// block += w * pi(g), O(d) via the monomial structure.
inline void accumulate(const Irrep& pi, const Element& g, cd w, Eigen::MatrixXcd& block) {
  const auto& roots = pi.roots();
  pi.for_each_entry(g, [&](int r, int c, i64 p) { block(r, c) += w * roots[p]; });
}

/**
 * F(f)(pi) = (1/|G|) sum_g f(g) pi(g). Sparse inputs cost |supp| * sum_pi d_pi.
 * Blocks are independent; `threads` > 1 splits labels across workers.
 */
inline SpectralField dft(const GroupFunction& f, std::shared_ptr<const DualSpace> D, unsigned threads = 1) {
  if (!(f.group == D->group())) throw std::domain_error("dft: function and dual on different groups");
  SpectralField F(D);
  std::vector<std::pair<Element, cd>> support;
  f.for_each([&](const Element& g, cd w) { support.emplace_back(g, w); });
  const double inv = 1.0 / static_cast<double>(D->group().order());
  auto work = [&](size_t lo, size_t hi) {
    for (size_t p = lo; p < hi; ++p) {
      for (const auto& [g, w] : support) accumulate((*D)[p], g, w, F[p]);
      F[p] *= inv;
    }
  };
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(D->size())));
  if (threads == 1) {
    work(0, D->size());
  } else {
    std::vector<std::thread> pool;
    const size_t chunk = (D->size() + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t)
      pool.emplace_back(work, std::min(D->size(), t * chunk), std::min(D->size(), (t + 1) * chunk));
    for (auto& th : pool) th.join();
  }
  return F;
}

inline SpectralField dft(const GroupFunction& f, const DualSpace& D) {
  return dft(f, std::make_shared<const DualSpace>(D));
}

/// f(h) = sum_pi d_pi Tr(pi(h^{-1}) F(pi)), the inverse of the forward normalization above.
inline GroupFunction idft(const SpectralField& F) {
  const DualSpace& D = F.dual();
  const Group& G = D.group();
  if (D.sum_squared_dims() != G.order()) throw std::domain_error("idft: incomplete dual space");
  std::vector<cd> out(G.order());
  for (u64 i = 0; i < G.order(); ++i) {
    const Element hinv = G.inverse(G.at(i));
    cd s = 0;
    for (size_t p = 0; p < D.size(); ++p) {
      const Irrep& pi = D[p];
      cd tr = 0;
      pi.for_each_entry(hinv, [&](int r, int c, i64 ph) { tr += pi.roots()[ph] * F[p](c, r); });
      s += static_cast<double>(pi.dim()) * tr;
    }
    out[i] = s;
  }
  return GroupFunction::from_dense(G, std::move(out));
}

/// <F, G> = (1/|G|) sum_pi d_pi Tr(F(pi) G(pi)^*).
inline cd inner_product_dual(const SpectralField& F, const SpectralField& Gf) {
  F.check_same(Gf);
  cd s = 0;
  for (size_t p = 0; p < F.size(); ++p)
    s += static_cast<double>(F.dual().dim(p)) * (F[p].array() * Gf[p].array().conjugate()).sum();
  return s / static_cast<double>(F.dual().group().order());
}

inline double norm_sq(const SpectralField& F) { return inner_product_dual(F, F).real(); }

/// (1/|G|) sum_{pi in A} d_pi ||F(pi)||_F^2 over label indices A.
inline double norm_restricted(const SpectralField& F, const std::vector<size_t>& A) {
  double s = 0;
  for (size_t p : A) {
    if (p >= F.size()) throw std::out_of_range("norm_restricted: unknown label index");
    s += static_cast<double>(F.dual().dim(p)) * F[p].squaredNorm();
  }
  return s / static_cast<double>(F.dual().group().order());
}

inline double norm_restricted(const SpectralField& F, const std::vector<Label>& A) {
  std::vector<size_t> idx;
  for (const auto& l : A) idx.push_back(F.dual().index_of(l));
  return norm_restricted(F, idx);
}

/// <f, g> = sum_x f(x) conj(g(x)).
inline cd inner_product_group(const GroupFunction& f, const GroupFunction& g) {
  const auto a = f.to_dense(), b = g.to_dense();
  cd s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * std::conj(b[i]);
  return s;
}

/// (phi * psi)(g) = sum_h phi(h) psi(h^{-1} g).
inline GroupFunction convolve(const GroupFunction& phi, const GroupFunction& psi) {
  if (!(phi.group == psi.group)) throw std::domain_error("convolve: functions on different groups");
  const Group& G = phi.group;
  std::vector<cd> out(G.order());
  std::vector<std::pair<Element, cd>> b;
  psi.for_each([&](const Element& k, cd w) { b.emplace_back(k, w); });
  phi.for_each([&](const Element& h, cd w) {
    for (const auto& [k, v] : b) out[G.index_of(G.mul_unchecked(h, k))] += w * v;
  });
  return GroupFunction::from_dense(G, std::move(out));
}

/// Closed form of F(delta_H) for normal H: (|H|/|G|) Id on H-perp, zero elsewhere.
inline SpectralField subgroup_spectrum_closed_form(const Subgroup& H, std::shared_ptr<const DualSpace> D) {
  if (!is_normal(H)) throw precondition_error("subgroup_spectrum_closed_form: H is not normal in G");
  SpectralField F(D);
  const double v = static_cast<double>(H.order()) / static_cast<double>(D->group().order());
  for (size_t p : annihilator(H, *D)) F[p] = v * Eigen::MatrixXcd::Identity(D->dim(p), D->dim(p));
  return F;
}

inline double max_abs_diff(const SpectralField& A, const SpectralField& B) {
  A.check_same(B);
  double m = 0;
  for (size_t p = 0; p < A.size(); ++p)
    if (A[p].size()) m = std::max(m, (A[p] - B[p]).cwiseAbs().maxCoeff());
  return m;
}

}  // namespace gs
