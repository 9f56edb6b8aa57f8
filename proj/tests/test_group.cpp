#include <gtest/gtest.h>

#include <set>

#include "groupspectra/group.hpp"

using namespace gs;

namespace {

Element el(std::vector<i64> c) { return Element{std::move(c)}; }

// Reference Heisenberg law written out independently of the library.
std::vector<i64> heis_ref(const std::vector<i64>& a, const std::vector<i64>& b, i64 n) {
  return {((a[0] + b[0]) % n + n) % n, ((a[1] + b[1]) % n + n) % n, ((a[2] + b[2] + a[0] * b[1]) % n + n) % n};
}

std::vector<Group> small_groups() {
  return {Group::torus(1, 1, 4), Group::torus(2, 2, 3), Group::heisenberg(1, 2), Group::heisenberg(1, 3),
          Group::heisenberg(2, 2), Group::dihedral(1), Group::dihedral(3), Group::dihedral(4), Group::dihedral(6)};
}

}  // namespace

TEST(Group, HeisenbergProductExample) {
  const Group G = Group::heisenberg(1, 3);
  EXPECT_EQ(G.mul(el({1, 1, 0}), el({0, 1, 0})), el({1, 2, 1}));
}

TEST(Group, TorusProductExample) {
  const Group G = Group::torus(1, 1, 4);
  EXPECT_EQ(G.mul(el({3}), el({2})), el({1}));
  EXPECT_EQ(G.inverse(el({3})), el({1}));
  EXPECT_EQ(G.element_order(el({2})), 2u);
}

TEST(Group, HeisenbergInverseAndOrder) {
  const Group G = Group::heisenberg(1, 3);
  EXPECT_EQ(G.inverse(el({1, 1, 0})), el({2, 2, 1}));
  EXPECT_EQ(G.element_order(el({1, 0, 0})), 3u);
}

TEST(Group, HeisenbergLawMatchesReference) {
  const Group G = Group::heisenberg(2, 3);
  const auto els = G.elements();
  for (size_t i = 0; i < els.size(); i += 7)
    for (size_t j = 0; j < els.size(); j += 11) EXPECT_EQ(G.mul(els[i], els[j]).c, heis_ref(els[i].c, els[j].c, 6));
}

TEST(Group, IdentityAndInverseEverywhere) {
  for (const Group& G : small_groups()) {
    const Element e = G.identity();
    for (const auto& g : G.elements()) {
      EXPECT_EQ(G.mul(g, e), g);
      EXPECT_EQ(G.mul(e, g), g);
      EXPECT_EQ(G.mul(g, G.inverse(g)), e) << G.name();
      EXPECT_EQ(G.mul(G.inverse(g), g), e) << G.name();
    }
    EXPECT_EQ(G.element_order(e), 1u);
  }
}

TEST(Group, Associativity) {
  for (const Group& G : small_groups()) {
    const auto els = G.elements();
    for (size_t a = 0; a < els.size(); a += 3)
      for (size_t b = 0; b < els.size(); b += 2)
        for (size_t c = 0; c < els.size(); c += 5)
          ASSERT_EQ(G.mul(G.mul(els[a], els[b]), els[c]), G.mul(els[a], G.mul(els[b], els[c]))) << G.name();
  }
}

TEST(Group, Enumeration) {
  EXPECT_EQ(Group::torus(1, 1, 4).elements(), (std::vector<Element>{el({0}), el({1}), el({2}), el({3})}));
  EXPECT_EQ(Group::heisenberg(1, 2).elements().size(), 8u);
  EXPECT_EQ(Group::dihedral(3).elements().size(), 6u);
  for (const Group& G : small_groups()) {
    const auto els = G.elements();
    ASSERT_EQ(els.size(), G.order());
    std::set<Element> uniq(els.begin(), els.end());
    EXPECT_EQ(uniq.size(), els.size());
    for (u64 i = 0; i < els.size(); ++i) {
      EXPECT_EQ(G.index_of(els[i]), i);
      EXPECT_EQ(G.at(i), els[i]);
    }
  }
}

TEST(Group, EnumerationCap) {
  EXPECT_THROW(Group::torus(2, 1, 64).elements(1000), resource_error);
  EXPECT_EQ(Group::torus(4, 8, 8).order(), u64{1} << 24);
}

TEST(Group, DihedralRelations) {
  const Group G = Group::dihedral(5);
  const Element r = el({1, 0}), s = el({0, 1});
  EXPECT_EQ(G.element_order(r), 5u);
  EXPECT_EQ(G.element_order(s), 2u);
  // s r s = r^{-1}
  EXPECT_EQ(G.mul(G.mul(s, r), s), G.inverse(r));
  EXPECT_FALSE(G.abelian());
  EXPECT_TRUE(Group::dihedral(2).abelian());
}

TEST(Group, PowMatchesRepeatedProduct) {
  const Group G = Group::heisenberg(2, 2);
  const Element g = el({1, 3, 2});
  Element acc = G.identity();
  for (u64 e = 0; e < 10; ++e) {
    EXPECT_EQ(G.pow(g, e), acc);
    acc = G.mul(acc, g);
  }
}

TEST(Group, CheckRejectsForeignElements) {
  const Group G = Group::torus(1, 1, 4);
  EXPECT_THROW(G.check(el({4})), std::domain_error);
  EXPECT_THROW(G.check(el({0, 0})), std::domain_error);
  EXPECT_THROW(Group::torus(0, 1, 1), std::invalid_argument);
}

TEST(Subgroup, Orders) {
  const Group T = Group::torus(2, 2, 6);
  const auto H = Subgroup::torus_sublattice(T, {3});
  EXPECT_EQ(H.order(), 2u);
  EXPECT_EQ(H.closed_form_order(), H.order());
  EXPECT_TRUE(is_closed(H));
  const Group Hg = Group::heisenberg(2, 4);
  const auto HN = Subgroup::heisenberg_integer_points(Hg);
  EXPECT_EQ(HN.order(), 64u);
  EXPECT_EQ(HN.closed_form_order(), 64u);
  EXPECT_TRUE(is_closed(HN));
  for (const auto& h : HN.elements())
    for (i64 v : h.c) EXPECT_EQ(v % 2, 0);
}

TEST(Subgroup, Normality) {
  EXPECT_TRUE(is_normal(Subgroup::heisenberg_integer_points(Group::heisenberg(2, 2))));
  const Group D3 = Group::dihedral(3);
  EXPECT_TRUE(is_normal(Subgroup::dihedral_rotations(D3, 3)));
  EXPECT_FALSE(is_normal(Subgroup::generated(D3, {el({0, 1})})));
  EXPECT_TRUE(is_normal(Subgroup::whole(D3)));
  EXPECT_TRUE(is_normal(Subgroup::trivial(D3)));
}

TEST(Subgroup, GeneratedClosure) {
  const Group G = Group::heisenberg(1, 3);
  const auto H = Subgroup::generated(G, {el({1, 0, 0}), el({0, 1, 0})});
  EXPECT_TRUE(H.is_whole());
  const auto Z = Subgroup::generated(G, {el({0, 0, 1})});
  EXPECT_EQ(Z.order(), 3u);
  EXPECT_TRUE(is_normal(Z));
}
