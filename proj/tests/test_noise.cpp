#include <gtest/gtest.h>

#include <cmath>
#include <map>

#include "groupspectra/noise.hpp"

using namespace gs;

namespace {

Element el(std::vector<i64> c) { return Element{std::move(c)}; }

}  // namespace

TEST(NoiseLaw, DiracAndSingletonTable) {
  const Group G = Group::heisenberg(1, 3);
  auto s = PhiloxStream::for_trial(1, 0);
  const auto d = NoiseLaw::dirac(G);
  const auto t = NoiseLaw::custom_table(G, {{el({1, 2, 0}), 1.0}});
  for (int i = 0; i < 100; ++i) {
    EXPECT_EQ(d.sample(s), G.identity());
    EXPECT_EQ(t.sample(s), el({1, 2, 0}));
  }
}

TEST(NoiseLaw, UniformFrequencies) {
  const Group G = Group::torus(1, 1, 8);
  const auto law = NoiseLaw::uniform_on_set(G, {el({0}), el({1}), el({5}), el({6})});
  auto s = PhiloxStream::for_trial(2024, 0);
  const int n = 100000;
  std::map<Element, int> counts;
  for (int i = 0; i < n; ++i) counts[law.sample(s)]++;
  ASSERT_EQ(counts.size(), 4u);
  const double sigma = std::sqrt(0.25 * 0.75 / n);
  for (const auto& [g, c] : counts) EXPECT_NEAR(double(c) / n, 0.25, 3 * sigma);
}

TEST(NoiseLaw, TableValidation) {
  const Group G = Group::torus(1, 1, 4);
  EXPECT_THROW(NoiseLaw::custom_table(G, {{el({0}), 0.5}, {el({1}), 0.4}}), std::invalid_argument);
  EXPECT_THROW(NoiseLaw::custom_table(G, {{el({0}), 1.5}, {el({1}), -0.5}}), std::invalid_argument);
  EXPECT_THROW(NoiseLaw::custom_table(G, {{el({0}), 0.5}, {el({0}), 0.5}}), std::invalid_argument);
  EXPECT_THROW(NoiseLaw::custom_table(G, {{el({7}), 1.0}}), std::domain_error);
}

TEST(NoiseLaw, GaussianIsSymmetricAndNormalized) {
  const Group G = Group::torus(1, 2, 8);
  const auto law = NoiseLaw::discretized_gaussian(G, 0.5, 3);
  double total = 0;
  std::map<i64, double> p;
  for (size_t i = 0; i < law.support().size(); ++i) {
    total += law.probabilities()[i];
    p[law.support()[i].c[0]] = law.probabilities()[i];
  }
  EXPECT_NEAR(total, 1.0, 1e-12);
  EXPECT_EQ(p.size(), 7u);
  for (i64 t = 1; t <= 3; ++t) EXPECT_NEAR(p[t], p[16 - t], 1e-15);
  // ratio of weights at offsets 1 and 0 in units of 1/M
  EXPECT_NEAR(p[1] / p[0], std::exp(-0.25 / (2 * 0.25)), 1e-12);
}

TEST(Expectation, Examples) {
  const Group H = Group::heisenberg(1, 3);
  const DualSpace D = DualSpace::enumerate(H);
  for (size_t p = 0; p < D.size(); ++p)
    EXPECT_LT((expectation_matrix(NoiseLaw::dirac(H), D[p]) - Eigen::MatrixXcd::Identity(D.dim(p), D.dim(p))).norm(), 1e-15);

  const Element g0 = el({2, 1, 1});
  for (size_t p = 0; p < D.size(); ++p) EXPECT_LT((expectation_matrix(NoiseLaw::dirac(H, g0), D[p]) - D[p].evaluate(g0)).norm(), 1e-15);

  const auto uni = NoiseLaw::uniform_on_group(H);
  for (size_t p = 0; p < D.size(); ++p)
    if (p != D.trivial_index()) EXPECT_LT(expectation_matrix(uni, D[p]).norm(), 1e-14);

  const Group T = Group::torus(1, 1, 4);
  Label k1;
  k1.family = Family::torus;
  k1.k = {1};
  const Irrep chi(T, k1);
  const cd e = expectation_matrix(NoiseLaw::uniform_on_set(T, {el({0}), el({1})}), chi)(0, 0);
  EXPECT_NEAR(std::abs(e - cd(0.5, -0.5)), 0, 1e-15);
}

TEST(Expectation, OperatorNormAtMostOne) {
  const Group G = Group::dihedral(7);
  const DualSpace D = DualSpace::enumerate(G);
  const auto law = NoiseLaw::discretized_gaussian(G, 1.2, 3);
  for (size_t p = 0; p < D.size(); ++p) {
    const Eigen::MatrixXcd E = expectation_matrix(law, D[p]);
    EXPECT_LE(Eigen::JacobiSVD<Eigen::MatrixXcd>(E).singularValues()(0), 1 + 1e-12);
  }
}

TEST(Expectation, EmpiricalMeanConverges) {
  const Group G = Group::heisenberg(1, 3);
  const DualSpace D = DualSpace::enumerate(G);
  const auto law = NoiseLaw::uniform_on_set(G, {el({0, 0, 0}), el({1, 0, 0}), el({0, 1, 2}), el({2, 2, 1})});
  const Irrep& pi = D[D.size() - 1];
  const Eigen::MatrixXcd E = expectation_matrix(law, pi);
  std::vector<double> errs;
  for (int n : {1000, 10000, 100000}) {
    auto s = PhiloxStream::for_trial(77, static_cast<u64>(n));
    Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(pi.dim(), pi.dim());
    for (int i = 0; i < n; ++i) acc += pi.evaluate(law.sample(s));
    errs.push_back((acc / double(n) - E).norm() * std::sqrt(double(n)));
  }
  // sqrt(n) * error stays bounded: each rung within a factor 3 of the first.
  for (double e : errs) EXPECT_LE(e, 3 * std::max(errs[0], 1.0));
}

TEST(Variance, Examples) {
  const Group H = Group::heisenberg(1, 3);
  const DualSpace D = DualSpace::enumerate(H);
  EXPECT_EQ(variance_constant(NoiseLaw::dirac(H), D), 0.0);

  const Group Z2 = Group::torus(1, 1, 2);
  EXPECT_NEAR(variance_constant(NoiseLaw::uniform_on_group(Z2), DualSpace::enumerate(Z2)), 1.0, 1e-15);

  // Uniform on all of G: every entry has variance 1/d, maximised by the 1-dim nontrivial characters.
  const auto rep = variance_report(NoiseLaw::uniform_on_group(H), D);
  EXPECT_NEAR(rep.C, 1.0, 1e-12);
  const Group D5 = Group::dihedral(5);
  const DualSpace DD = DualSpace::enumerate(D5);
  const auto law = NoiseLaw::uniform_on_group(D5);
  for (size_t p = 0; p < DD.size(); ++p) {
    if (p == DD.trivial_index()) continue;
    for (int r = 0; r < DD.dim(p); ++r)
      for (int c = 0; c < DD.dim(p); ++c) {
        double s = 0;
        for (const auto& g : D5.elements()) s += std::norm(DD[p].evaluate(g)(r, c));
        EXPECT_NEAR(s / 10.0, 1.0 / DD.dim(p), 1e-12);
      }
  }
  EXPECT_NEAR(variance_constant(law, DD), 1.0, 1e-12);
}
