#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "normderiv/norms.hpp"
#include "normderiv/sampling.hpp"
#include "oracles.hpp"

using namespace normderiv;

namespace {

Vector vec(std::initializer_list<double> v) {
  Vector out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double d : v) out[i++] = d;
  return out;
}

Matrix hexagon() {
  Matrix f(3, 2);
  f << 1, 0, 0.5, std::sqrt(3.0) / 2, -0.5, std::sqrt(3.0) / 2;
  return f;
}

}  // namespace

TEST(NormEval, BasicValues) {
  EXPECT_DOUBLE_EQ(norm_eval(NormedSpace::l1(3), vec({1, 1, 1})), 3);
  EXPECT_DOUBLE_EQ(norm_eval(NormedSpace::linf(2), vec({1, -1})), 1);
  EXPECT_DOUBLE_EQ(norm_eval(NormedSpace::l2(2), vec({3, 4})), 5);
  EXPECT_NEAR(norm_eval(NormedSpace::lp(2, 3), vec({1, 1})), std::cbrt(2.0), 1e-15);
  EXPECT_DOUBLE_EQ(norm_eval(NormedSpace::weighted_lp(2, vec({1, 4})), vec({0, 1})), 2);
  EXPECT_NEAR(norm_eval(NormedSpace::polyhedral(hexagon()), vec({0, 1})), std::sqrt(3.0) / 2, 1e-15);
}

TEST(NormEval, RejectsWrongDimension) {
  EXPECT_THROW(norm_eval(NormedSpace::l1(3), vec({1, 2})), dimension_error);
}

TEST(NormedSpace, ValidatesSpec) {
  EXPECT_THROW(NormedSpace::lp(2, 1.0), domain_error);
  EXPECT_THROW(NormedSpace::lp(2, INFINITY), domain_error);
  EXPECT_THROW(NormedSpace::weighted_lp(2, vec({1, -1})), domain_error);
  EXPECT_THROW(NormedSpace(0, L1Norm{}), domain_error);
  Matrix rank_deficient(2, 2);
  rank_deficient << 1, 1, 2, 2;
  EXPECT_THROW(NormedSpace::polyhedral(rank_deficient), domain_error);
}

TEST(NormedSpace, SmoothByConstruction) {
  EXPECT_TRUE(NormedSpace::lp(3, 1.5).smooth_by_construction());
  EXPECT_TRUE(NormedSpace::weighted_lp(2, vec({1, 2})).smooth_by_construction());
  EXPECT_FALSE(NormedSpace::l1(3).smooth_by_construction());
  EXPECT_FALSE(NormedSpace::polyhedral(hexagon()).smooth_by_construction());
  EXPECT_TRUE(NormedSpace::l1(1).smooth_by_construction());
}

TEST(NormedSpace, Labels) {
  EXPECT_EQ(NormedSpace::l1(3).label(), "l1/R3");
  EXPECT_EQ(NormedSpace::lp(3, 3).label(), "lp:3/R3");
  EXPECT_EQ(NormedSpace::polyhedral(hexagon()).label(), "poly[3x2]/R2");
}

TEST(ExactDplus, Examples) {
  const auto l1 = NormedSpace::l1(3);
  EXPECT_DOUBLE_EQ(exact_dplus(l1, vec({1, 0, 0}), vec({1, 1, 1})), 3);
  EXPECT_DOUBLE_EQ(exact_dplus(NormedSpace::linf(2), vec({1, 1}), vec({1, -1})), 1);
  // d/dt (|1+t|^3 + 1)^(1/3) at 0 = 2^(-2/3)
  const auto l3 = NormedSpace::lp(2, 3);
  EXPECT_NEAR(exact_dplus(l3, vec({1, 1}), vec({1, 0})), std::pow(2.0, -2.0 / 3), 1e-14);
  EXPECT_NEAR(exact_dplus(l3, vec({1, 1}), vec({1, 0})), oracle::one_sided_quotient(l3, vec({1, 1}), vec({1, 0}), true),
              1e-8);
}

TEST(ExactDminus, Examples) {
  const auto l1 = NormedSpace::l1(3);
  EXPECT_DOUBLE_EQ(exact_dminus(l1, vec({1, 0, 0}), vec({1, 1, 1})), -1);
  EXPECT_DOUBLE_EQ(exact_dminus(l1, vec({1, 0, 0}), vec({-1, 1, 0})), -2);
  const auto l3 = NormedSpace::lp(3, 3);
  Rng rng(Seed{9});
  for (int i = 0; i < 50; ++i) {
    const Vector x = rng.uniform_vector(3), y = rng.uniform_vector(3);
    EXPECT_NEAR(exact_dminus(l3, x, y), exact_dplus(l3, x, y), 1e-12);
  }
}

TEST(ExactDerivatives, AtZeroIsNormOfDirection) {
  const auto l1 = NormedSpace::l1(2);
  EXPECT_DOUBLE_EQ(exact_dplus(l1, Vector::Zero(2), vec({1, -2})), 3);
  EXPECT_DOUBLE_EQ(exact_dminus(l1, Vector::Zero(2), vec({1, -2})), -3);
}

TEST(ExactDerivatives, AgreeWithQuotientAndAreOrdered) {
  const std::vector<NormedSpace> spaces = {NormedSpace::l1(3), NormedSpace::linf(3), NormedSpace::lp(3, 1.5),
                                           NormedSpace::weighted_lp(2, vec({1, 4, 9})),
                                           NormedSpace::polyhedral(hexagon())};
  Rng rng(Seed{11});
  for (const auto& s : spaces) {
    for (int i = 0; i < 200; ++i) {
      const Vector x = rng.uniform_vector(s.dim()), y = rng.uniform_vector(s.dim());
      const double dp = exact_dplus(s, x, y), dm = exact_dminus(s, x, y);
      EXPECT_LE(dm, dp + 1e-12) << s.label();
      EXPECT_NEAR(dp, oracle::one_sided_quotient(s, x, y, true), 1e-6) << s.label();
      EXPECT_NEAR(dm, oracle::one_sided_quotient(s, x, y, false), 1e-6) << s.label();
    }
  }
}

TEST(PolyhedralCsv, ParsesAndRejects) {
  std::istringstream good("1,0\n\n0.5, 0.8660254037844386\n-0.5,0.8660254037844386\n");
  const Matrix m = parse_polyhedral_csv(good);
  EXPECT_EQ(m.rows(), 3);
  EXPECT_EQ(m.cols(), 2);
  std::istringstream ragged("1,0\n1\n");
  EXPECT_THROW(parse_polyhedral_csv(ragged), dimension_error);
  std::istringstream junk("1,x\n");
  EXPECT_THROW(parse_polyhedral_csv(junk), domain_error);
  std::istringstream empty("");
  EXPECT_THROW(parse_polyhedral_csv(empty), domain_error);
  EXPECT_THROW(read_polyhedral_csv("/nonexistent/file.csv"), domain_error);
}

TEST(Sampling, UnitVectorsAreNormalized) {
  const auto l2 = NormedSpace::l2(2);
  const auto a = sample_unit_vectors(2, 3, Seed{1}, l2);
  ASSERT_EQ(a.size(), 3u);
  for (const auto& v : a) EXPECT_NEAR(v.norm(), 1.0, 1e-12);
  const auto b = sample_unit_vectors(3, 1, Seed{7}, NormedSpace::l1(3));
  ASSERT_EQ(b.size(), 1u);
  EXPECT_NEAR(b[0].cwiseAbs().sum(), 1.0, 1e-12);
}

TEST(Sampling, Deterministic) {
  const auto s = NormedSpace::lp(4, 3);
  const auto a = sample_unit_vectors(4, 20, Seed{5}, s);
  const auto b = sample_unit_vectors(4, 20, Seed{5}, s);
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i], b[i]);
}

TEST(Sampling, ProbesCoverBasisPatternsAndKinks) {
  EXPECT_EQ(signed_basis(3).size(), 6u);
  EXPECT_EQ(sign_patterns(3).size(), 8u);
  EXPECT_EQ(sign_patterns(3).front(), Vector::Ones(3));
  const auto kinks = polyhedral_kinks(NormedSpace::polyhedral(hexagon()));
  EXPECT_FALSE(kinks.empty());
  EXPECT_GE(probe_vectors(NormedSpace::polyhedral(hexagon())).size(), 4u + 4u);
}
