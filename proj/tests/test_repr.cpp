#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "groupspectra/repr.hpp"

using namespace gs;

namespace {

Element el(std::vector<i64> c) { return Element{std::move(c)}; }

Label heis(i64 m, i64 c, i64 a, i64 b) {
  Label l;
  l.family = Family::heisenberg;
  l.m = m;
  l.c = c;
  l.a = a;
  l.b = b;
  return l;
}

Label dih(DihedralKind k, i64 index = 0) {
  Label l;
  l.family = Family::dihedral;
  l.dkind = k;
  l.index = index;
  return l;
}

Label tor(std::vector<i64> k) {
  Label l;
  l.family = Family::torus;
  l.k = std::move(k);
  return l;
}

std::vector<Group> groups() {
  return {Group::torus(1, 1, 8), Group::torus(2, 1, 3), Group::heisenberg(1, 2), Group::heisenberg(1, 3),
          Group::heisenberg(2, 2), Group::heisenberg(1, 4), Group::heisenberg(1, 6), Group::dihedral(3),
          Group::dihedral(4), Group::dihedral(5), Group::dihedral(6)};
}

}  // namespace

TEST(Irrep, TrivialTorusCharacter) {
  const Group G = Group::torus(2, 1, 5);
  const Irrep pi(G, tor({0, 0}));
  for (const auto& g : G.elements()) EXPECT_EQ(pi.evaluate(g)(0, 0), cd(1, 0));
}

TEST(Irrep, IdentityMapsToIdentity) {
  for (const Group& G : groups()) {
    const DualSpace D = DualSpace::enumerate(G);
    for (size_t p = 0; p < D.size(); ++p)
      EXPECT_TRUE(D[p].evaluate(G.identity()).isApprox(Eigen::MatrixXcd::Identity(D.dim(p), D.dim(p))));
  }
}

TEST(Irrep, HeisenbergCentralElementActsByMinusOne) {
  const Group G = Group::heisenberg(1, 2);
  const Irrep pi(G, heis(2, 1, 0, 0));
  EXPECT_LT((pi.evaluate(el({0, 0, 1})) + Eigen::MatrixXcd::Identity(2, 2)).norm(), 1e-15);
}

TEST(Irrep, InvalidLabelsRejected) {
  const Group G = Group::heisenberg(1, 4);
  EXPECT_THROW(Irrep(G, heis(3, 1, 0, 0)), std::domain_error);
  EXPECT_THROW(Irrep(G, heis(4, 2, 0, 0)), std::domain_error);
  EXPECT_THROW(Irrep(Group::dihedral(4), dih(DihedralKind::two_dim, 2)), std::domain_error);
}

// pi(gh) = pi(g) pi(h) and pi(g) unitary, checked with dense matrices.
TEST(Irrep, HomomorphismAndUnitarity) {
  for (const Group& G : groups()) {
    const DualSpace D = DualSpace::enumerate(G);
    const auto els = G.elements();
    for (size_t p = 0; p < D.size(); ++p) {
      const int d = D.dim(p);
      for (size_t i = 0; i < els.size(); i += 3) {
        const Eigen::MatrixXcd A = D[p].evaluate(els[i]);
        ASSERT_LT((A * A.adjoint() - Eigen::MatrixXcd::Identity(d, d)).norm(), 1e-12);
        for (size_t j = 0; j < els.size(); j += 5) {
          const Eigen::MatrixXcd B = D[p].evaluate(els[j]);
          ASSERT_LT((D[p].evaluate(G.mul(els[i], els[j])) - A * B).norm(), 1e-12)
              << G.name() << " " << D[p].label().to_string();
        }
      }
    }
  }
}

TEST(DualSpace, Counts) {
  const DualSpace T = DualSpace::enumerate(Group::torus(1, 1, 4));
  EXPECT_EQ(T.size(), 4u);
  EXPECT_EQ(T.max_dim(), 1);

  const DualSpace H = DualSpace::enumerate(Group::heisenberg(1, 3));
  int one = 0, three = 0;
  for (size_t p = 0; p < H.size(); ++p) (H.dim(p) == 1 ? one : three)++;
  EXPECT_EQ(one, 9);
  EXPECT_EQ(three, 2);
  EXPECT_EQ(H.sum_squared_dims(), 27u);

  const DualSpace D3 = DualSpace::enumerate(Group::dihedral(3));
  EXPECT_EQ(D3.size(), 3u);
  EXPECT_EQ(D3.sum_squared_dims(), 6u);
  EXPECT_EQ(DualSpace::enumerate(Group::dihedral(4)).size(), 5u);

  EXPECT_EQ(DualSpace::enumerate(Group::heisenberg(2, 4)).size(), 92u);
}

TEST(DualSpace, SumOfSquaresEqualsOrder) {
  for (const Group& G : groups()) EXPECT_EQ(DualSpace::enumerate(G).sum_squared_dims(), G.order()) << G.name();
}

TEST(DualSpace, LabelsAreDistinctClasses) {
  // Distinct labels have distinct characters (so no irrep is listed twice).
  for (const Group& G : groups()) {
    const DualSpace D = DualSpace::enumerate(G);
    const auto els = G.elements();
    for (size_t p = 0; p < D.size(); ++p)
      for (size_t q = p + 1; q < D.size(); ++q) {
        double diff = 0;
        for (const auto& g : els) diff += std::abs(D[p].character(g) - D[q].character(g));
        EXPECT_GT(diff, 1e-6);
      }
  }
}

TEST(Character, Basics) {
  const Group D3 = Group::dihedral(3);
  const Irrep two(D3, dih(DihedralKind::two_dim, 1));
  EXPECT_NEAR(std::abs(two.character(el({1, 0})) - cd(-1, 0)), 0, 1e-14);
  EXPECT_NEAR(std::abs(two.character(el({1, 0})) - cd(2 * std::cos(2 * std::numbers::pi / 3), 0)), 0, 1e-14);
  EXPECT_NEAR(std::abs(two.character(el({0, 1}))), 0, 1e-14);
  for (const Group& G : groups()) {
    const DualSpace D = DualSpace::enumerate(G);
    for (size_t p = 0; p < D.size(); ++p) EXPECT_EQ(D[p].character(G.identity()), cd(D.dim(p), 0));
  }
  const Group T = Group::torus(1, 1, 8);
  const Irrep chi(T, tor({3}));
  for (i64 x = 0; x < 8; ++x)
    EXPECT_NEAR(std::abs(chi.character(el({x})) - std::polar(1.0, -2 * std::numbers::pi * 3 * x / 8)), 0, 1e-14);
}

// Classical D3 table, rows trivial / sign / two_dim on classes {e}, {r, r^2}, {reflections}.
TEST(Character, D3Table) {
  const Group G = Group::dihedral(3);
  const Irrep t(G, dih(DihedralKind::trivial)), s(G, dih(DihedralKind::sign)), v(G, dih(DihedralKind::two_dim, 1));
  const double table[3][3] = {{1, 1, 1}, {1, 1, -1}, {2, -1, 0}};
  const Element reps[3] = {el({0, 0}), el({1, 0}), el({0, 1})};
  const Irrep* irr[3] = {&t, &s, &v};
  for (int i = 0; i < 3; ++i)
    for (int c = 0; c < 3; ++c) EXPECT_NEAR(std::abs(irr[i]->character(reps[c]) - cd(table[i][c], 0)), 0, 1e-14);
  EXPECT_NEAR(std::abs(v.character(el({2, 1}))), 0, 1e-14);
}

TEST(Schur, TorusGeometricSum) {
  const Group G = Group::torus(1, 1, 8);
  const DualSpace D = DualSpace::enumerate(G);
  for (size_t p = 0; p < D.size(); ++p)
    for (size_t q = 0; q < D.size(); ++q) {
      cd s = 0;
      for (const auto& g : G.elements()) s += D[p].character(g) * std::conj(D[q].character(g));
      EXPECT_NEAR(std::abs(s - cd(p == q ? 8 : 0, 0)), 0, 1e-12);
    }
  EXPECT_TRUE(schur_orthogonality_check(D).pass);
}

// Independent dense evaluation for D4, compared with the library's accumulated check.
TEST(Schur, D4DenseOracle) {
  const Group G = Group::dihedral(4);
  const DualSpace D = DualSpace::enumerate(G);
  double worst = 0;
  for (size_t p = 0; p < D.size(); ++p)
    for (size_t q = 0; q < D.size(); ++q)
      for (int i = 0; i < D.dim(p); ++i)
        for (int j = 0; j < D.dim(p); ++j)
          for (int r = 0; r < D.dim(q); ++r)
            for (int s = 0; s < D.dim(q); ++s) {
              cd sum = 0;
              for (const auto& g : G.elements()) sum += D[p].evaluate(g)(i, j) * std::conj(D[q].evaluate(g)(r, s));
              const double expect = (p == q && i == r && j == s) ? 8.0 / D.dim(p) : 0.0;
              worst = std::max(worst, std::abs(sum - expect));
            }
  EXPECT_LT(worst, 1e-12);
  const auto rep = schur_orthogonality_check(D, 1e-12);
  EXPECT_TRUE(rep.pass);
  EXPECT_LT(rep.max_deviation, 1e-12);
}

TEST(Schur, SelfPairing) {
  const Group G = Group::heisenberg(1, 3);
  const Irrep pi(G, heis(3, 1, 0, 0));
  cd s = 0;
  for (const auto& g : G.elements()) s += std::norm(pi.evaluate(g)(0, 0));
  EXPECT_NEAR(s.real(), 27.0 / 3, 1e-12);
}

TEST(Schur, AllGroups) {
  for (const Group& G : groups()) {
    const DualSpace D = DualSpace::enumerate(G);
    EXPECT_TRUE(schur_orthogonality_check(D).pass) << G.name();
    EXPECT_TRUE(character_orthonormality_check(D).pass) << G.name();
  }
}

TEST(Annihilator, Examples) {
  const Group G = Group::torus(1, 1, 12);
  const DualSpace D = DualSpace::enumerate(G);
  const auto A = annihilator(Subgroup::torus_sublattice(G, {3}), D);
  std::vector<i64> ks;
  for (size_t p : A) ks.push_back(D[p].label().k[0]);
  EXPECT_EQ(ks, (std::vector<i64>{0, 4, 8}));

  const Group D4 = Group::dihedral(4);
  const DualSpace DD = DualSpace::enumerate(D4);
  const auto whole = annihilator(Subgroup::whole(D4), DD);
  ASSERT_EQ(whole.size(), 1u);
  EXPECT_EQ(whole[0], DD.trivial_index());
  EXPECT_EQ(annihilator(Subgroup::trivial(D4), DD).size(), DD.size());
}

TEST(Annihilator, HeisenbergIntegerPointsIndex) {
  const Group G = Group::heisenberg(2, 2);
  const DualSpace D = DualSpace::enumerate(G);
  const Subgroup H = Subgroup::heisenberg_integer_points(G);
  u64 s = 0;
  for (size_t p : annihilator(H, D)) s += static_cast<u64>(D.dim(p) * D.dim(p));
  EXPECT_EQ(s * H.order(), G.order());
}

TEST(Restriction, TrivialAndD3) {
  const Group D3 = Group::dihedral(3);
  const DualSpace D = DualSpace::enumerate(D3);
  const Subgroup C3 = Subgroup::dihedral_rotations(D3, 3);
  const auto sub = subgroup_dual(C3);
  ASSERT_EQ(sub.size(), 3u);
  const Irrep& triv = D[D.trivial_index()];
  EXPECT_EQ(restriction_multiplicity(sub[0], triv, C3), 1);  // sub[0] is the trivial character of C3
  const Irrep& two = D[D.index_of(dih(DihedralKind::two_dim, 1))];
  EXPECT_EQ(restriction_multiplicity(sub[0], two, C3), 0);
  EXPECT_EQ(restriction_multiplicity(sub[1], two, C3), 1);
  EXPECT_EQ(restriction_multiplicity(sub[2], two, C3), 1);
}

TEST(Restriction, CliffordForNormalSubgroups) {
  struct Case {
    Group G;
    Subgroup H;
  };
  const Group D6 = Group::dihedral(6), H13 = Group::heisenberg(1, 3), H23 = Group::heisenberg(2, 3);
  std::vector<Case> cases{{D6, Subgroup::dihedral_rotations(D6, 6)},
                          {D6, Subgroup::dihedral_rotations(D6, 3)},
                          {H13, Subgroup::generated(H13, {el({0, 0, 1})})},
                          {H23, Subgroup::heisenberg_integer_points(H23)}};
  for (const auto& c : cases) {
    ASSERT_TRUE(is_normal(c.H));
    const DualSpace D = DualSpace::enumerate(c.G);
    const auto sub = subgroup_dual(c.H);
    for (size_t p = 0; p < D.size(); ++p) {
      const auto rep = clifford_check(D[p], c.H, sub);
      EXPECT_TRUE(rep.pass) << c.G.name() << " " << c.H.describe() << " " << D[p].label().to_string();
    }
  }
}

TEST(Restriction, UnsupportedSubgroupIsDomainError) {
  const Group D4 = Group::dihedral(4);
  const Subgroup K = Subgroup::generated(D4, {el({2, 0}), el({0, 1})});
  EXPECT_THROW(subgroup_dual(K), std::domain_error);
}
