#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "noise.hpp"
#include "rng.hpp"
#include "spectra.hpp"

namespace gs {

/// e^{2 pi i x}
inline cd unit(double x) {
  const double th = 2.0 * std::numbers::pi * (x - std::floor(x));
  return {std::cos(th), std::sin(th)};
}

/// e^{2 pi i num/den} with the argument reduced exactly before exponentiation.
inline cd unit(i64 num, i64 den) {
  const i64 r = mod(num, den);
  if ((4 * r) % den == 0) {
    static const cd quarter[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    return quarter[(4 * r) / den];
  }
  const double th = 2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(den);
  return {std::cos(th), std::sin(th)};
}

/**
 * Reduce x mod N and snap to the grid point k/M whose cell k/M + [-1/(2M), 1/(2M)) contains it.
 * Returns the element of ScaledTorus(d, M, N) with residues k mod MN.
 */
inline Element discretize_noise(const std::vector<double>& x, i64 M, i64 N) {
  Element e;
  for (double v : x) {
    if (!std::isfinite(v)) throw std::invalid_argument("discretize_noise: non-finite sample");
    double r = std::fmod(v, static_cast<double>(N));
    if (r < 0) r += static_cast<double>(N);
    const i64 k = static_cast<i64>(std::floor(r * static_cast<double>(M) + 0.5));
    e.c.push_back(mod(k, M * N));
  }
  return e;
}

/// Snapped value as a real in [0, N).
inline std::vector<double> grid_value(const Element& e, i64 M) {
  std::vector<double> out;
  for (i64 k : e.c) out.push_back(static_cast<double>(k) / static_cast<double>(M));
  return out;
}

// ---------------------------------------------------------------------------------------
// Euclidean lattice Z^r in R^d

enum class Prefactor { printed, mass };

struct EuclideanValue {
  cd raw;      // F_{M,N}(delta_{H_N})(lambda)
  cd printed;  // M^{d-1} N^{d-r} raw
  cd mass;     // M^d N^{d-r} raw (unit mass at the trivial character)
};

/**
 * H_N = (Z/NZ)^r in T^d_{M,N} (integer points in the first r coordinates) evaluated at a
 * dual point lambda in ((1/N)Z/MZ)^d. lambda must lie on the grid.
 */
inline EuclideanValue euclidean_rescaled_dft(int d, int r, i64 M, i64 N, const std::vector<double>& lambda) {
  if (static_cast<int>(lambda.size()) != d || r < 1 || r > d) throw std::invalid_argument("euclidean_rescaled_dft: bad dimensions");
  const i64 n = M * N;
  std::vector<i64> K(d);
  for (int i = 0; i < d; ++i) {
    const double kk = lambda[i] * static_cast<double>(N);
    if (std::abs(kk - std::round(kk)) > 1e-9) throw std::domain_error("euclidean_rescaled_dft: lambda is off the (1/N)Z grid");
    K[i] = mod(static_cast<i64>(std::llround(kk)), n);
  }
  // Points P = M x, x in [0, N)^r; character exp(-2 pi i <P, K> / (MN)) = exp(-2 pi i <x, K> / N).
  // The sum factorizes over coordinates.
  cd raw = 1;
  for (int i = 0; i < r; ++i) {
    cd s = 0;
    for (i64 x = 0; x < N; ++x) s += unit(-(x * K[i]) % N, N);
    raw *= s;
  }
  raw /= std::pow(static_cast<double>(n), d);
  const double printed = std::pow(static_cast<double>(M), d - 1) * std::pow(static_cast<double>(N), d - r);
  const double mass = std::pow(static_cast<double>(M), d) * std::pow(static_cast<double>(N), d - r);
  return {raw, printed * raw, mass * raw};
}

/// Pointwise stand-in for the averaged transform of Z^r: 1 on the dual lattice, 0 elsewhere.
inline double euclidean_reference(int d, int r, const std::vector<double>& lambda) {
  for (int i = 0; i < d; ++i) {
    const double v = lambda[i];
    const bool on = i < r ? std::abs(v - std::round(v)) < 1e-12 : std::abs(v) < 1e-12;
    if (!on) return 0.0;
  }
  return 1.0;
}

struct EuclideanRung {
  i64 N = 0;
  i64 M = 0;
  EuclideanValue value;
  double reference = 0;
  double gap_printed = 0;
  double gap_mass = 0;
};

struct EuclideanSweep {
  std::vector<EuclideanRung> rungs;
  /// reference / |printed| where the reference is nonzero; 1 means no mismatch.
  std::vector<double> scale_ratio;
  bool scaling_mismatch = false;
};

/// Ladder over all (N, M) pairs, N-major.
inline EuclideanSweep euclidean_sweep(int d, int r, const std::vector<double>& lambda, const std::vector<i64>& Ns,
                                      const std::vector<i64>& Ms) {
  EuclideanSweep s;
  const double ref = euclidean_reference(d, r, lambda);
  for (i64 N : Ns)
    for (i64 M : Ms) {
      EuclideanRung g{N, M, euclidean_rescaled_dft(d, r, M, N, lambda), ref, 0, 0};
      g.gap_printed = std::abs(g.value.printed - cd(ref, 0));
      g.gap_mass = std::abs(g.value.mass - cd(ref, 0));
      if (ref != 0 && std::abs(g.value.printed) > 0) {
        const double ratio = ref / std::abs(g.value.printed);
        s.scale_ratio.push_back(ratio);
        if (std::abs(ratio - 1) > 1e-6) s.scaling_mismatch = true;
      }
      s.rungs.push_back(g);
    }
  return s;
}

// ---------------------------------------------------------------------------------------
// Heisenberg lattice Z^3 in the polarized Heisenberg group

/// Real, compactly supported test function on R with its nonsmooth points.
struct TestFunction {
  std::string name;
  double radius = 1;
  std::vector<double> kinks;
  std::function<double(double)> f;

  double operator()(double u) const { return std::abs(u) >= radius ? 0.0 : f(u); }

  static TestFunction triangle(double radius) {
    return {"triangle", radius, {-radius, 0.0, radius}, [radius](double u) { return 1.0 - std::abs(u) / radius; }};
  }

  static TestFunction bump(double radius) {
    return {"bump", radius, {-radius, radius}, [radius](double u) {
              const double t = u / radius;
              return std::exp(1.0 - 1.0 / (1.0 - t * t));
            }};
  }

  static TestFunction zero() { return {"zero", 1, {}, [](double) { return 0.0; }}; }

  /// Value of the m-periodization at u, the window being [-m/2, m/2).
  double periodized(double u, double m) const {
    const double r = u - m * std::floor((u + m / 2) / m);
    return (*this)(r);
  }
};

/// Romberg integration (trapezoid with Richardson extrapolation) to absolute tolerance.
inline cd integrate(const std::function<cd(double)>& g, double a, double b, double tol = 1e-8, int max_levels = 22) {
  if (b <= a) return 0;
  std::vector<cd> prev{(b - a) * (g(a) + g(b)) / 2.0};
  double h = b - a;
  for (int level = 1; level <= max_levels; ++level) {
    h /= 2;
    cd mid = 0;
    const long count = 1L << (level - 1);
    for (long i = 0; i < count; ++i) mid += g(a + (2 * i + 1) * h);
    std::vector<cd> cur{prev[0] / 2.0 + h * mid};
    double f4 = 1;
    for (int k = 1; k <= level; ++k) {
      f4 *= 4;
      cur.push_back(cur[k - 1] + (cur[k - 1] - prev[k - 1]) / (f4 - 1));
    }
    if (level >= 4 && std::abs(cur.back() - prev.back()) < tol) return cur.back();
    prev = std::move(cur);
  }
  throw numerical_error("integrate: Romberg did not reach the requested tolerance");
}

inline bool coprime(i64 a, i64 b) { return std::gcd(mod(a, b), b) == 1; }

/// Nearest integer to lambda*m, then offsets +1, -1, +2, -2, ... until gcd(c, k m^2) = 1.
inline i64 select_c(double lambda, i64 m, i64 k) {
  const i64 base = static_cast<i64>(std::llround(lambda * static_cast<double>(m)));
  const i64 q = k * m * m;
  for (i64 off = 0; off <= q; ++off)
    for (i64 sgn : {1, -1}) {
      const i64 c = base + sgn * off;
      if (c != 0 && coprime(c, q)) return c;
      if (off == 0) break;
    }
  throw std::logic_error("select_c: no coprime candidate");
}

/// A point of the Heisenberg group at scale 1/M: (X/M, Y/M, Z/M).
using ScaledPoint = std::array<i64, 3>;

/// Integer points (x, y, z) of Z^3 in B_N = [-N/2, N/2)^3, scaled by M.
inline std::vector<ScaledPoint> box_points(i64 N, i64 M) {
  std::vector<ScaledPoint> pts;
  const i64 lo = -(N / 2), hi = lo + N;
  for (i64 x = lo; x < hi; ++x)
    for (i64 y = lo; y < hi; ++y)
      for (i64 z = lo; z < hi; ++z) pts.push_back({x * M, y * M, z * M});
  return pts;
}

/// Product in the polarized law at scale 1/M: Z gets X*V/M, exact when either factor is integral.
inline ScaledPoint heis_mul(const ScaledPoint& p, const ScaledPoint& q, i64 M) {
  const i64 cross = p[0] * q[1];
  if (cross % M != 0) throw std::domain_error("heis_mul: product leaves the 1/M grid");
  return {p[0] + q[0], p[1] + q[1], p[2] + q[2] + cross / M};
}

inline ScaledPoint heis_inverse(const ScaledPoint& p, i64 M) {
  const i64 cross = p[0] * p[1];
  if (cross % M != 0) throw std::domain_error("heis_inverse: leaves the 1/M grid");
  return {-p[0], -p[1], -p[2] + cross / M};
}

/**
 * Samples of a function on the window grid j = t/(km), t in [-D/2, D/2), D = k m^2, stored at
 * index t + D/2.
 */
struct WindowGrid {
  i64 m = 1;
  i64 k = 1;
  i64 M() const { return k * m; }
  i64 size() const { return k * m * m; }
  i64 tmin() const { return -(size() / 2); }
  double at(i64 idx) const { return static_cast<double>(idx + tmin()) / static_cast<double>(M()); }

  std::vector<cd> sample(const TestFunction& f) const {
    if (f.radius > static_cast<double>(m) / 2) throw precondition_error("test function support exceeds the periodization window");
    std::vector<cd> v(size());
    for (i64 i = 0; i < size(); ++i) v[i] = f.periodized(at(i), static_cast<double>(m));
    return v;
  }
};

/// Parameters of pi_{a,b,c,m} on Gamma_{km,N}; a = a_num/N, b = b_num/N.
struct HeisenbergRepParams {
  i64 m = 2;
  i64 N = 4;
  i64 k = 1;
  i64 a_num = 0;
  i64 b_num = 0;
  i64 c = 1;
};

/**
 * (pi(q) phi)(j) = e(a qx + b qy) e(c (qy j + qz)/m) phi(j + qx), evaluated on the window
 * grid for q at scale 1/(km); returns <pi(q) phi, psi> without normalization.
 */
inline cd apply_pair(const HeisenbergRepParams& P, const WindowGrid& W, const ScaledPoint& q, const std::vector<cd>& phi,
                     const std::vector<cd>& psi_conj, const std::vector<i64>& psi_support) {
  const i64 M = W.M(), D = W.size();
  const i64 den = M * M * P.m;
  const cd outer = unit(P.a_num * q[0] + P.b_num * q[1], P.N * M);
  cd s = 0;
  for (i64 idx : psi_support) {
    const i64 t = idx + W.tmin();
    const i64 src = mod(idx + q[0], D);
    if (phi[src] == cd(0, 0)) continue;
    const i64 num = mod(P.c, den) * mod(q[1] * t + q[2] * M, den) % den;
    s += unit(num, den) * phi[src] * psi_conj[idx];
  }
  return outer * s;
}

inline std::vector<i64> support_indices(const std::vector<cd>& v) {
  std::vector<i64> idx;
  for (i64 i = 0; i < static_cast<i64>(v.size()); ++i)
    if (v[i] != cd(0, 0)) idx.push_back(i);
  return idx;
}

/// (1/(km N^3)) sum over points of <pi(q) phi, psi>: the ell^2 pairing of (km)^2 F_{km,N}.
inline cd pairing_over_points(const HeisenbergRepParams& P, const std::vector<ScaledPoint>& pts, const std::vector<cd>& phi,
                              const std::vector<cd>& psi) {
  const WindowGrid W{P.m, P.k};
  std::vector<cd> psic(psi.size());
  for (size_t i = 0; i < psi.size(); ++i) psic[i] = std::conj(psi[i]);
  const auto supp = support_indices(psi);
  cd s = 0;
  for (const auto& q : pts) s += apply_pair(P, W, q, phi, psic, supp);
  const double N3 = std::pow(static_cast<double>(P.N), 3);
  return s / (static_cast<double>(W.M()) * N3);
}

inline void check_pairing_pre(const HeisenbergRepParams& P) {
  if (P.m < 1 || P.k < 1 || P.N < 1) throw std::invalid_argument("heisenberg pairing: m, k, N must be positive");
  if (!coprime(P.c, P.k * P.m * P.m)) throw precondition_error("heisenberg pairing: requires gcd(c_m, k m^2) = 1");
}

/// <(km)^2 F_{km,N}(delta_{H_N})(pi_{a,b,c,m}) phi, psi> on ell^2((1/(km))Z/mZ).
inline cd heisenberg_weak_pairing(const HeisenbergRepParams& P, const TestFunction& phi, const TestFunction& psi) {
  check_pairing_pre(P);
  const WindowGrid W{P.m, P.k};
  return pairing_over_points(P, box_points(P.N, W.M()), W.sample(phi), W.sample(psi));
}

/**
 * (1/N^3) sum_{(x,y,z) in Z^3 cap B_N} e(ax + by) e(lambda z) int e(lambda y u) phi(u+x) conj(psi(u)) du,
 * integrated piecewise between kinks by Romberg.
 */
inline cd heisenberg_continuum_pairing(double lambda, i64 N, const TestFunction& phi, const TestFunction& psi,
                                       double a = 0, double b = 0, double tol = 1e-10) {
  if (lambda == 0) throw precondition_error("heisenberg_continuum_pairing: lambda must be non-zero");
  const i64 lo = -(N / 2), hi = lo + N;
  cd zsum = 0;
  for (i64 z = lo; z < hi; ++z) zsum += unit(lambda * static_cast<double>(z));
  cd total = 0;
  for (i64 x = lo; x < hi; ++x) {
    const double xs = static_cast<double>(x);
    const double left = std::max(-psi.radius, -xs - phi.radius), right = std::min(psi.radius, -xs + phi.radius);
    if (right <= left) continue;
    std::vector<double> br{left, right};
    for (double kk : psi.kinks) br.push_back(kk);
    for (double kk : phi.kinks) br.push_back(kk - xs);
    std::sort(br.begin(), br.end());
    for (i64 y = lo; y < hi; ++y) {
      const double ys = static_cast<double>(y);
      auto g = [&](double u) { return unit(lambda * ys * u) * phi(u + xs) * psi(u); };
      cd in = 0;
      for (size_t i = 0; i + 1 < br.size(); ++i) {
        const double s0 = std::max(left, br[i]), s1 = std::min(right, br[i + 1]);
        if (s1 > s0) in += integrate(g, s0, s1, tol);
      }
      total += unit(a * xs + b * ys) * in;
    }
  }
  return total * zsum / std::pow(static_cast<double>(N), 3);
}

/// (1/N^3) sum over Z^3 cap B_N of e(alpha x + beta y).
inline cd heisenberg_continuum_character(double alpha, double beta, i64 N) {
  const i64 lo = -(N / 2), hi = lo + N;
  cd sx = 0, sy = 0;
  for (i64 x = lo; x < hi; ++x) sx += unit(alpha * static_cast<double>(x));
  for (i64 y = lo; y < hi; ++y) sy += unit(beta * static_cast<double>(y));
  return sx * sy * static_cast<double>(N) / std::pow(static_cast<double>(N), 3);
}

/// Continuum noise on R^3 (or R^d) with independent coordinates.
struct ContinuumNoise {
  enum class Kind { dirac, uniform_box, gaussian } kind = Kind::dirac;
  std::vector<double> point;  // dirac location
  double scale = 0;           // half width (box) or sigma (gaussian)
  int dim = 3;

  static ContinuumNoise dirac(std::vector<double> p) { return {Kind::dirac, std::move(p), 0, 3}; }
  static ContinuumNoise uniform_box(double half_width, int dim = 3) { return {Kind::uniform_box, {}, half_width, dim}; }
  static ContinuumNoise gaussian(double sigma, int dim = 3) { return {Kind::gaussian, {}, sigma, dim}; }

  int dimension() const { return kind == Kind::dirac ? static_cast<int>(point.size()) : dim; }

  std::vector<double> sample(PhiloxStream& s) const {
    std::vector<double> x(dimension());
    for (int i = 0; i < dimension(); ++i) {
      switch (kind) {
        case Kind::dirac: x[i] = point[i]; break;
        case Kind::uniform_box: x[i] = scale * (2 * s.next_double() - 1); break;
        case Kind::gaussian: x[i] = scale * s.next_normal(); break;
      }
    }
    return x;
  }

  /// P(snap_M(xi_i) = t/M) for the coordinate i, as (t, p) pairs with p > 1e-16.
  std::vector<std::pair<i64, double>> snapped_pmf(int i, i64 M) const {
    std::vector<std::pair<i64, double>> out;
    const double Md = static_cast<double>(M);
    auto cell = [&](i64 t) { return std::pair<double, double>{(t - 0.5) / Md, (t + 0.5) / Md}; };
    switch (kind) {
      case Kind::dirac: out.emplace_back(static_cast<i64>(std::floor(point[i] * Md + 0.5)), 1.0); break;
      case Kind::uniform_box: {
        const i64 lo = static_cast<i64>(std::floor(-scale * Md + 0.5)), hi = static_cast<i64>(std::floor(scale * Md + 0.5));
        for (i64 t = lo; t <= hi; ++t) {
          const auto [c0, c1] = cell(t);
          const double len = std::max(0.0, std::min(c1, scale) - std::max(c0, -scale));
          if (len > 0) out.emplace_back(t, len / (2 * scale));
        }
        break;
      }
      case Kind::gaussian: {
        const i64 span = static_cast<i64>(std::ceil(9 * scale * Md)) + 1;
        for (i64 t = -span; t <= span; ++t) {
          const auto [c0, c1] = cell(t);
          const double p = 0.5 * (std::erfc(-c1 / (scale * std::numbers::sqrt2)) - std::erfc(-c0 / (scale * std::numbers::sqrt2)));
          if (p > 1e-16) out.emplace_back(t, p);
        }
        double tot = 0;
        for (auto& [t, p] : out) tot += p;
        for (auto& [t, p] : out) p /= tot;
        break;
      }
    }
    return out;
  }
};

/// E[pi(xi^{(km)})] phi for the snapped law, on the window grid.
inline std::vector<cd> expected_action(const HeisenbergRepParams& P, const ContinuumNoise& noise, const std::vector<cd>& phi) {
  const WindowGrid W{P.m, P.k};
  const i64 M = W.M(), D = W.size(), den = M * M * P.m;
  const auto px = noise.snapped_pmf(0, M), py = noise.snapped_pmf(1, M), pz = noise.snapped_pmf(2, M);
  if (px.size() * py.size() * pz.size() > 50'000'000) throw resource_error("expected_action: snapped support too large");
  std::vector<cd> out(D, cd(0, 0));
  for (const auto& [tx, wx] : px)
    for (const auto& [ty, wy] : py)
      for (const auto& [tz, wz] : pz) {
        const double w = wx * wy * wz;
        const cd outer = unit(P.a_num * tx + P.b_num * ty, P.N * M);
        for (i64 idx = 0; idx < D; ++idx) {
          const i64 src = mod(idx + tx, D);
          if (phi[src] == cd(0, 0)) continue;
          const i64 t = idx + W.tmin();
          const i64 num = mod(P.c, den) * mod(ty * t + tz * M, den) % den;
          out[idx] += w * outer * unit(num, den) * phi[src];
        }
      }
  return out;
}

struct HeisenbergRung {
  i64 m = 0;
  i64 N = 0;
  i64 c = 0;
  cd discrete;
  cd continuum;
  double gap = 0;
  double rel_gap = 0;
  std::optional<cd> residual;  // perturbed mode: pairing of (km)^2 (F(delta_{H_xi}) - F(delta_H) E) phi with psi
};

struct HeisenbergSweepSpec {
  double lambda = 1;
  std::optional<std::array<double, 2>> alpha_beta;
  std::vector<i64> ms{2, 4, 8, 16};
  std::vector<i64> Ns{4, 8};
  i64 k = 1;
  TestFunction phi = TestFunction::triangle(0.5);
  TestFunction psi = TestFunction::bump(0.5);
};

/// One rung; perturbed mode snaps one continuum draw per lattice point to the 1/(km) grid.
inline HeisenbergRung heisenberg_rung(const HeisenbergSweepSpec& spec, i64 m, i64 N,
                                      const std::optional<std::pair<ContinuumNoise, u64>>& perturbed, u64 rung_index) {
  HeisenbergRung r;
  r.m = m;
  r.N = N;
  HeisenbergRepParams P{m, N, spec.k, 0, 0, 0};
  if (spec.alpha_beta) {
    const auto [al, be] = *spec.alpha_beta;
    const i64 an = static_cast<i64>(std::llround(al * static_cast<double>(N)));
    const i64 bn = static_cast<i64>(std::llround(be * static_cast<double>(N)));
    cd s = 0;
    const i64 lo = -(N / 2), hi = lo + N;
    for (i64 x = lo; x < hi; ++x)
      for (i64 y = lo; y < hi; ++y) s += unit(an * x + bn * y, N);
    r.discrete = s * static_cast<double>(N) / std::pow(static_cast<double>(N), 3);
    r.continuum = heisenberg_continuum_character(al, be, N);
  } else {
    P.c = select_c(spec.lambda, m, spec.k);
    r.c = P.c;
    check_pairing_pre(P);
    const WindowGrid W{m, spec.k};
    const auto phi = W.sample(spec.phi), psi = W.sample(spec.psi);
    const auto base = box_points(N, W.M());
    if (perturbed) {
      const auto& [noise, seed] = *perturbed;
      PhiloxStream stream = PhiloxStream::for_trial(seed, rung_index);
      std::vector<ScaledPoint> moved;
      moved.reserve(base.size());
      for (const auto& p : base) {
        const auto x = noise.sample(stream);
        ScaledPoint xi{};
        for (int i = 0; i < 3; ++i) xi[i] = static_cast<i64>(std::floor(x[i] * static_cast<double>(W.M()) + 0.5));
        moved.push_back(heis_mul(p, xi, W.M()));
      }
      r.discrete = pairing_over_points(P, moved, phi, psi);
      r.residual = r.discrete - pairing_over_points(P, base, expected_action(P, noise, phi), psi);
    } else {
      r.discrete = pairing_over_points(P, base, phi, psi);
    }
    r.continuum = heisenberg_continuum_pairing(spec.lambda, N, spec.phi, spec.psi);
  }
  r.gap = std::abs(r.discrete - r.continuum);
  r.rel_gap = std::abs(r.continuum) > 0 ? r.gap / std::abs(r.continuum) : r.gap;
  return r;
}

/// Rungs ordered N-major over the (m, N) ladder; rungs are independent and may run concurrently.
inline std::vector<HeisenbergRung> heisenberg_sweep(const HeisenbergSweepSpec& spec,
                                                    const std::optional<std::pair<ContinuumNoise, u64>>& perturbed = std::nullopt,
                                                    unsigned threads = 1) {
  std::vector<std::pair<i64, i64>> ladder;
  for (i64 N : spec.Ns)
    for (i64 m : spec.ms) ladder.emplace_back(m, N);
  if (ladder.empty()) throw std::invalid_argument("heisenberg_sweep: empty ladder");
  std::vector<HeisenbergRung> out(ladder.size());
  std::atomic<size_t> next{0};
  auto work = [&] {
    for (size_t i = next++; i < ladder.size(); i = next++)
      out[i] = heisenberg_rung(spec, ladder[i].first, ladder[i].second, perturbed, i);
  };
  threads = std::max(1u, threads);
  if (threads == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  return out;
}

/// Lattice density of N_1 Z x ... x N_r Z.
inline double lattice_density(const std::vector<i64>& steps) {
  double p = 1;
  for (i64 s : steps) p *= static_cast<double>(s);
  return 1.0 / p;
}

}  // namespace gs
