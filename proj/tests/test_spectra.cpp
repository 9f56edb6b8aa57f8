#include <gtest/gtest.h>

#include <numbers>
#include <random>

#include "groupspectra/spectra.hpp"

using namespace gs;

namespace {

Element el(std::vector<i64> c) { return Element{std::move(c)}; }

std::vector<cd> random_values(u64 n, std::mt19937_64& rng) {
  std::normal_distribution<double> nd;
  std::vector<cd> v(n);
  for (auto& x : v) x = cd(nd(rng), nd(rng));
  return v;
}

std::shared_ptr<const DualSpace> dual(const Group& G) { return std::make_shared<const DualSpace>(DualSpace::enumerate(G)); }

double rel(cd a, cd b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

}  // namespace

TEST(Dft, DiracAtIdentity) {
  for (const Group& G : {Group::dihedral(4), Group::heisenberg(1, 3), Group::torus(2, 1, 3)}) {
    auto D = dual(G);
    const SpectralField F = dft(GroupFunction::dirac(G, G.identity()), D);
    for (size_t p = 0; p < D->size(); ++p)
      EXPECT_LT((F[p] - Eigen::MatrixXcd::Identity(D->dim(p), D->dim(p)) / double(G.order())).norm(), 1e-15);
    EXPECT_NEAR(norm_sq(F), 1.0 / double(G.order() * G.order()), 1e-16);
  }
}

TEST(Dft, ConstantFunctionHitsOnlyTrivial) {
  const Group G = Group::heisenberg(1, 4);
  auto D = dual(G);
  const SpectralField F = dft(GroupFunction::from_dense(G, std::vector<cd>(G.order(), 1.0)), D);
  for (size_t p = 0; p < D->size(); ++p) {
    if (p == D->trivial_index())
      EXPECT_NEAR(std::abs(F[p](0, 0) - cd(1, 0)), 0, 1e-13);
    else
      EXPECT_LT(F[p].norm(), 1e-13);
  }
}

TEST(Dft, SubgroupIndicatorOnZ12) {
  const Group G = Group::torus(1, 1, 12);
  auto D = dual(G);
  const Subgroup H = Subgroup::torus_sublattice(G, {3});
  const SpectralField F = dft(GroupFunction::indicator(H), D);
  for (size_t p = 0; p < D->size(); ++p) {
    const i64 k = (*D)[p].label().k[0];
    // Direct geometric sum over {0, 3, 6, 9}.
    cd s = 0;
    for (i64 x = 0; x < 12; x += 3) s += std::polar(1.0, -2 * std::numbers::pi * double(k * x) / 12);
    s /= 12.0;
    EXPECT_NEAR(std::abs(F[p](0, 0) - s), 0, 1e-15);
    EXPECT_NEAR(std::abs(F[p](0, 0)), k % 4 == 0 ? 1.0 / 3 : 0.0, 1e-15);
  }
}

TEST(Dft, DenseMatchesDefinition) {
  std::mt19937_64 rng(5);
  const Group G = Group::dihedral(5);
  auto D = dual(G);
  const auto v = random_values(G.order(), rng);
  const SpectralField F = dft(GroupFunction::from_dense(G, v), D);
  for (size_t p = 0; p < D->size(); ++p) {
    Eigen::MatrixXcd ref = Eigen::MatrixXcd::Zero(D->dim(p), D->dim(p));
    for (u64 i = 0; i < G.order(); ++i) ref += v[i] * (*D)[p].evaluate(G.at(i));
    ref /= double(G.order());
    EXPECT_LT((F[p] - ref).norm(), 1e-13);
  }
}

TEST(Dft, ThreadCountDoesNotChangeResult) {
  std::mt19937_64 rng(2);
  const Group G = Group::heisenberg(1, 6);
  auto D = dual(G);
  const auto f = GroupFunction::from_dense(G, random_values(G.order(), rng));
  const SpectralField a = dft(f, D, 1), b = dft(f, D, 4);
  EXPECT_EQ(max_abs_diff(a, b), 0.0);
}

TEST(Idft, RoundTripAndSpecialCases) {
  std::mt19937_64 rng(7);
  const Group G = Group::dihedral(3);
  auto D = dual(G);
  const auto v = random_values(G.order(), rng);
  const auto back = idft(dft(GroupFunction::from_dense(G, v), D)).to_dense();
  for (size_t i = 0; i < v.size(); ++i) EXPECT_LT(std::abs(back[i] - v[i]), 1e-10);

  const auto delta = idft(dft(GroupFunction::dirac(G, G.identity()), D)).to_dense();
  for (u64 i = 0; i < G.order(); ++i) EXPECT_NEAR(std::abs(delta[i] - cd(i == 0 ? 1 : 0, 0)), 0, 1e-14);

  SpectralField F(D);
  F[D->trivial_index()](0, 0) = cd(2.5, -1);
  for (const cd& x : idft(F).to_dense()) EXPECT_NEAR(std::abs(x - cd(2.5, -1)), 0, 1e-14);
}

TEST(Plancherel, RandomPairs) {
  std::mt19937_64 rng(11);
  for (const Group& G : {Group::dihedral(4), Group::heisenberg(2, 2), Group::torus(2, 1, 5)}) {
    auto D = dual(G);
    for (int t = 0; t < 10; ++t) {
      const auto f = GroupFunction::from_dense(G, random_values(G.order(), rng));
      const auto g = GroupFunction::from_dense(G, random_values(G.order(), rng));
      const SpectralField Ff = dft(f, D), Fg = dft(g, D);
      const double n = double(G.order());
      EXPECT_LT(rel(n * n * inner_product_dual(Ff, Fg), inner_product_group(f, g)), 1e-10);
      const cd self = inner_product_dual(Ff, Ff);
      EXPECT_GE(self.real(), 0);
      EXPECT_NEAR(self.imag(), 0, 1e-15);
    }
  }
}

TEST(Convolution, IdentityAndCircularOracle) {
  std::mt19937_64 rng(3);
  const Group T = Group::torus(1, 1, 9);
  const auto a = random_values(9, rng), b = random_values(9, rng);
  const auto phi = GroupFunction::from_dense(T, a), psi = GroupFunction::from_dense(T, b);
  const auto conv = convolve(phi, psi).to_dense();
  for (int x = 0; x < 9; ++x) {
    cd s = 0;
    for (int y = 0; y < 9; ++y) s += a[y] * b[((x - y) % 9 + 9) % 9];
    EXPECT_LT(std::abs(conv[x] - s), 1e-12);
  }
  const auto same = convolve(phi, GroupFunction::dirac(T, T.identity())).to_dense();
  for (int x = 0; x < 9; ++x) EXPECT_LT(std::abs(same[x] - a[x]), 1e-15);
}

TEST(Convolution, ProductRuleOnD3) {
  std::mt19937_64 rng(4);
  const Group G = Group::dihedral(3);
  auto D = dual(G);
  const auto phi = GroupFunction::from_dense(G, random_values(6, rng));
  const auto psi = GroupFunction::from_dense(G, random_values(6, rng));
  const SpectralField lhs = dft(convolve(phi, psi), D);
  const SpectralField A = dft(phi, D), B = dft(psi, D);
  for (size_t p = 0; p < D->size(); ++p) EXPECT_LT((lhs[p] - 6.0 * A[p] * B[p]).norm(), 1e-12);
}

TEST(ClosedForm, MatchesDirectDft) {
  const Group H22 = Group::heisenberg(2, 2);
  const Group D6 = Group::dihedral(6);
  const Group T = Group::torus(2, 2, 3);
  for (const Subgroup& H : {Subgroup::heisenberg_integer_points(H22), Subgroup::whole(H22), Subgroup::dihedral_rotations(D6, 3),
                            Subgroup::torus_sublattice(T, {3, 1})}) {
    auto D = dual(H.parent());
    EXPECT_LE(max_abs_diff(dft(GroupFunction::indicator(H), D), subgroup_spectrum_closed_form(H, D)), 1e-12) << H.describe();
  }
}

TEST(ClosedForm, TorusConstant) {
  // d = 2, r = 1, M = 2, N = 3, N_1 = 3: constant 1/(N^{d-r} M_1) with M_1 = M N_1 in coordinates of Z/6.
  const Group T = Group::torus(2, 2, 3);
  const Subgroup H = Subgroup::torus_sublattice(T, {3});
  auto D = dual(T);
  const SpectralField F = subgroup_spectrum_closed_form(H, D);
  EXPECT_EQ(H.order(), 1u);
  const double expected = 1.0 / (6.0 * 6.0);
  EXPECT_NEAR(F[D->trivial_index()](0, 0).real(), expected, 1e-15);
  const Subgroup H2 = Subgroup::torus_sublattice(T, {1});
  const SpectralField F2 = subgroup_spectrum_closed_form(H2, D);
  EXPECT_NEAR(F2[D->trivial_index()](0, 0).real(), 3.0 / 36.0, 1e-15);
}

TEST(ClosedForm, RejectsNonNormal) {
  const Group D3 = Group::dihedral(3);
  EXPECT_THROW(subgroup_spectrum_closed_form(Subgroup::generated(D3, {el({0, 1})}), dual(D3)), precondition_error);
}

TEST(NormRestricted, Cases) {
  const Group G = Group::heisenberg(2, 2);
  auto D = dual(G);
  const Subgroup H = Subgroup::heisenberg_integer_points(G);
  const SpectralField F = dft(GroupFunction::indicator(H), D);
  std::vector<size_t> all(D->size());
  for (size_t i = 0; i < all.size(); ++i) all[i] = i;
  EXPECT_NEAR(norm_restricted(F, all), norm_sq(F), 1e-18);
  EXPECT_EQ(norm_restricted(F, std::vector<size_t>{}), 0.0);
  const double n = double(G.order()), h = double(H.order());
  EXPECT_NEAR(norm_restricted(F, std::vector<size_t>{D->trivial_index()}), (1 / n) * (h / n) * (h / n), 1e-18);
}
