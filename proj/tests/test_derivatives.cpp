#include <gtest/gtest.h>

#include <cmath>

#include "normderiv/derivatives.hpp"
#include "oracles.hpp"

using namespace normderiv;

namespace {

Vector vec(std::initializer_list<double> v) {
  Vector out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double d : v) out[i++] = d;
  return out;
}

std::vector<NormedSpace> test_spaces() {
  Matrix hex(3, 2);
  hex << 1, 0, 0.5, std::sqrt(3.0) / 2, -0.5, std::sqrt(3.0) / 2;
  return {NormedSpace::l1(3),      NormedSpace::l2(3),         NormedSpace::lp(3, 3),
          NormedSpace::linf(2),    NormedSpace::lp(3, 1.5),    NormedSpace::weighted_lp(2, vec({1, 4, 9})),
          NormedSpace::polyhedral(hex)};
}

}  // namespace

TEST(RhoPlus, Examples) {
  const auto l1 = NormedSpace::l1(3);
  const Vector x = vec({1, 0, 0});
  EXPECT_DOUBLE_EQ(rho_plus(l1, x, vec({1, 1, 1})).value, 3);
  EXPECT_DOUBLE_EQ(rho_plus(l1, x, vec({1, 1, 0})).value, 2);
  EXPECT_NEAR(rho_plus(NormedSpace::l2(2), vec({3, 4}), vec({4, -3})).value, 0, 1e-12);
  EXPECT_EQ(rho_plus(l1, x, vec({1, 1, 1})).method, Method::closed_form);
}

TEST(RhoMinus, Examples) {
  const auto l1 = NormedSpace::l1(3);
  const Vector x = vec({1, 0, 0});
  EXPECT_DOUBLE_EQ(rho_minus(l1, x, vec({1, 1, 1})).value, -1);
  EXPECT_DOUBLE_EQ(rho_minus(l1, x, vec({1, 1, 0})).value, 0);
  EXPECT_DOUBLE_EQ(rho_minus(l1, x, vec({-1, 1, 0})).value, -2);
  const Vector z = vec({2, -1, 3});
  EXPECT_DOUBLE_EQ(rho_minus(l1, z, z).value, 36);
}

TEST(Rho, Examples) {
  EXPECT_DOUBLE_EQ(rho(NormedSpace::l1(3), vec({1, 0, 0}), vec({1, 1, 1})), 1);
  EXPECT_DOUBLE_EQ(rho(NormedSpace::linf(2), vec({1, 1}), vec({1, -1})), 0);
  Rng rng(Seed{2});
  const auto l2 = NormedSpace::l2(4);
  for (int i = 0; i < 100; ++i) {
    const Vector x = rng.uniform_vector(4), y = rng.uniform_vector(4);
    EXPECT_NEAR(rho(l2, x, y), x.dot(y), 1e-12);
  }
}

TEST(RhoStar, Examples) {
  const auto l1 = NormedSpace::l1(3);
  EXPECT_DOUBLE_EQ(rho_star(l1, vec({1, 0, 0}), vec({1, 1, 1})), -3);
  EXPECT_DOUBLE_EQ(rho_star(l1, vec({1, 0, 0}), vec({1, 1, 0})), 0);
  EXPECT_DOUBLE_EQ(rho_star(l1, vec({1, 0, 0}), vec({-1, 1, 0})), 0);
  for (const auto& s : test_spaces()) {
    const Vector x = Vector::LinSpaced(s.dim(), 0.5, -1.5);
    const double n = norm_eval(s, x);
    EXPECT_NEAR(rho_star(s, x, x), n * n * n * n, 1e-12 * n * n * n * n) << s.label();
  }
}

TEST(Derivatives, ZeroFirstArgument) {
  const auto l1 = NormedSpace::l1(2);
  EXPECT_EQ(rho_plus(l1, Vector::Zero(2), vec({1, 2})).value, 0);
  EXPECT_EQ(rho_minus(l1, Vector::Zero(2), vec({1, 2})).value, 0);
  EXPECT_EQ(numeric_one_sided(l1, Vector::Zero(2), vec({1, 2}), Side::right).value, 0);
}

TEST(Derivatives, DimensionMismatchThrows) {
  EXPECT_THROW(rho_plus(NormedSpace::l1(3), vec({1, 0}), vec({1, 0, 0})), dimension_error);
}

TEST(NumericOneSided, ReproducesL1Example) {
  const auto r = numeric_one_sided(NormedSpace::l1(3), vec({1, 0, 0}), vec({1, 1, 1}), Side::right);
  EXPECT_NEAR(r.value, 3, 1e-6);
  EXPECT_EQ(r.method, Method::numeric_limit);
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(numeric_one_sided(NormedSpace::l1(3), vec({1, 0, 0}), vec({1, 1, 1}), Side::left).value, -1, 1e-6);
}

TEST(NumericOneSided, L3Example) {
  // |x|_3 = 2^(1/3), d/dt = 2^(-2/3), so rho = 2^(-1/3) on both sides
  const auto l3 = NormedSpace::lp(2, 3);
  const double expected = std::cbrt(2.0) * oracle::one_sided_quotient(l3, vec({1, 1}), vec({1, 0}), true);
  EXPECT_NEAR(expected, std::pow(2.0, -1.0 / 3), 1e-8);
  for (auto side : {Side::left, Side::right})
    EXPECT_NEAR(numeric_one_sided(l3, vec({1, 1}), vec({1, 0}), side).value, expected, 1e-6);
}

TEST(NumericOneSided, AgreesWithClosedForm) {
  const auto agree = Tolerance::numeric_agreement();
  Rng rng(Seed{21});
  for (const auto& s : test_spaces()) {
    for (int i = 0; i < 200; ++i) {
      const Vector x = rng.uniform_vector(s.dim()), y = rng.uniform_vector(s.dim());
      const double cp = rho_plus(s, x, y).value, cm = rho_minus(s, x, y).value;
      EXPECT_TRUE(approx_zero(numeric_one_sided(s, x, y, Side::right).value - cp, std::abs(cp), agree)) << s.label();
      EXPECT_TRUE(approx_zero(numeric_one_sided(s, x, y, Side::left).value - cm, std::abs(cm), agree)) << s.label();
    }
  }
}

TEST(ClosedForm, AgreesWithQuotientOracle) {
  Rng rng(Seed{22});
  for (const auto& s : test_spaces()) {
    for (int i = 0; i < 200; ++i) {
      const Vector x = rng.uniform_vector(s.dim()), y = rng.uniform_vector(s.dim());
      EXPECT_NEAR(rho_plus(s, x, y).value, oracle::rho_plus(s, x, y), 1e-6) << s.label();
      EXPECT_NEAR(rho_minus(s, x, y).value, oracle::rho_minus(s, x, y), 1e-6) << s.label();
    }
  }
}

TEST(SipSmooth, Examples) {
  EXPECT_NEAR(sip_smooth(NormedSpace::l2(2), vec({3, 4}), vec({4, -3})), 0, 1e-12);
  EXPECT_NEAR(sip_smooth(NormedSpace::lp(2, 3), vec({1, 1}), vec({1, 0})), std::pow(2.0, -1.0 / 3), 1e-14);
  EXPECT_THROW(sip_smooth(NormedSpace::l1(3), vec({1, 0, 0}), vec({0, 1, 0})), domain_error);
}

// Homogeneity, bound, quadratic expansion and translation identities.
class Identities : public ::testing::TestWithParam<int> {};

TEST_P(Identities, HoldOnRandomInputs) {
  const auto s = test_spaces()[static_cast<std::size_t>(GetParam())];
  Rng rng(Seed{100}.derive(static_cast<std::uint64_t>(GetParam())));
  for (int i = 0; i < 300; ++i) {
    const Vector x = rng.uniform_vector(s.dim()), y = rng.uniform_vector(s.dim());
    const double t = rng.uniform(-3, 3);
    const double nx = norm_eval(s, x), ny = norm_eval(s, y);
    const double rs = rho_star(s, x, y);
    const double scale4 = nx * nx * ny * ny;
    EXPECT_NEAR(rho_star(s, t * x, y), t * t * rs, 1e-9 * t * t * scale4 + 1e-15);
    EXPECT_NEAR(rho_star(s, x, t * y), t * t * rs, 1e-9 * t * t * scale4 + 1e-15);
    EXPECT_LE(std::abs(rs), scale4 * (1 + 1e-9));
    const double lhs = rho_star(s, x, t * x + y);
    const double rhs = t * t * nx * nx * nx * nx + 2 * t * nx * nx * rho(s, x, y) + rs;
    const double nz = norm_eval(s, t * x + y);
    EXPECT_NEAR(lhs, rhs, 1e-9 * nx * nx * (nz * nz + (std::abs(t) * nx + ny) * (std::abs(t) * nx + ny)));
    EXPECT_NEAR(rho_plus(s, x, t * x + y).value, t * nx * nx + rho_plus(s, x, y).value, 1e-9 * nx * (nz + std::abs(t) * nx + ny));
    EXPECT_LE(rho_minus(s, x, y).value, rho_plus(s, x, y).value + 1e-12);
    EXPECT_NEAR(rho_star(s, x, -y), rs, 1e-12 * scale4);
  }
}

INSTANTIATE_TEST_SUITE_P(AllNorms, Identities, ::testing::Range(0, 7));
