#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "singtraj/polycore/errors.hpp"
#include "singtraj/polycore/parse.hpp"
#include "singtraj/realroots/circle.hpp"
#include "singtraj/realroots/interval.hpp"
#include "singtraj/realroots/isolate.hpp"

using namespace singtraj;

namespace {

UPoly U(std::initializer_list<long> coeffs) {
  std::vector<Integer> c;
  for (long v : coeffs) c.emplace_back(v);
  return UPoly(std::move(c));
}

// (t - r) scaled to integers.
UPoly linear(const Rational& r) {
  Integer num = -r.get_num();
  Integer den = r.get_den();
  return UPoly(std::vector<Integer>{num, den});
}

bool brackets(const IsolatedRoot& root, double value) {
  const Rational v(value);
  const Rational slack(1, 1 << 20);
  return root.lo <= v + slack && v - slack <= root.hi;
}

}  // namespace

TEST(UPoly, ArithmeticAndEvaluation) {
  UPoly p = U({-1, 0, 1});  // t^2 - 1
  EXPECT_EQ(p.degree(), 2);
  EXPECT_EQ(p.evaluate(Rational(3)), Rational(8));
  EXPECT_EQ(p.sign_at(Rational(1, 2)), -1);
  EXPECT_EQ(p.derivative(), U({0, 2}));
  EXPECT_EQ(p * U({1, 1}), U({-1, -1, 1, 1}));
  EXPECT_EQ(p.compose(U({1, 1})), U({0, 2, 1}));
  EXPECT_EQ(U({4, 6}).primitive(), U({2, 3}));
  EXPECT_EQ(U({4, -6}).primitive(), U({-2, 3}));
  EXPECT_EQ(p.to_string(), "t^2 - 1");
  EXPECT_TRUE(UPoly().is_zero());
  EXPECT_EQ(UPoly().degree(), -1);
}

TEST(UPoly, GcdAndExactQuotient) {
  UPoly a = U({2, -3, 1});  // (t-1)(t-2)
  UPoly b = U({3, -4, 1});  // (t-1)(t-3)
  EXPECT_EQ(gcd(a, b), U({-1, 1}));
  EXPECT_EQ(exact_quotient(a, U({-1, 1})), U({-2, 1}));
  EXPECT_THROW(exact_quotient(a, U({1, 1})), std::domain_error);
  EXPECT_EQ(gcd(a, UPoly()), a.primitive());
}

TEST(UPoly, PseudoRemainderIdentity) {
  UPoly a = U({1, 2, 3, 4});
  UPoly b = U({5, 0, 2});
  UPoly r = pseudo_remainder(a, b);
  EXPECT_LT(r.degree(), b.degree());
  // lc(b)^2 * a - r is divisible by b.
  UPoly scaled = Integer(4) * a - r;
  EXPECT_NO_THROW(exact_quotient(scaled, b));
}

TEST(Squarefree, Decomposition) {
  UPoly p = U({-1, 1}).pow(2) * U({2, 1});
  auto f = squarefree(p);
  ASSERT_EQ(f.size(), 2U);
  std::sort(f.begin(), f.end(), [](const auto& a, const auto& b) { return a.multiplicity < b.multiplicity; });
  EXPECT_EQ(f[0].factor.primitive(), U({2, 1}));
  EXPECT_EQ(f[0].multiplicity, 1U);
  EXPECT_EQ(f[1].factor.primitive(), U({-1, 1}));
  EXPECT_EQ(f[1].multiplicity, 2U);
  EXPECT_EQ(squarefree_part(p), U({-2, 1, 1}));
}

TEST(Sturm, CountsRootsInHalfOpenIntervals) {
  SturmSequence s(U({-2, 0, 1}));
  EXPECT_EQ(s.count(Rational(0), Rational(2)), 1);
  EXPECT_EQ(s.count(Rational(-2), Rational(2)), 2);
  EXPECT_EQ(s.count(Rational(2), Rational(3)), 0);
  SturmSequence q(U({0, -1, 1}));  // roots 0 and 1
  EXPECT_EQ(q.count(Rational(0), Rational(1)), 1);  // (0, 1] holds only 1
  EXPECT_EQ(q.count(Rational(-1), Rational(0)), 1);
}

TEST(Isolate, CubeRootOfTwo) {
  auto roots = isolate(U({-2, 0, 0, 1}));
  ASSERT_EQ(roots.size(), 1U);
  IsolatedRoot r = refine(roots[0], Rational(1, 1 << 30));
  EXPECT_LE(r.hi - r.lo, Rational(1, 1 << 30));
  EXPECT_TRUE(brackets(r, std::cbrt(2.0)));
  EXPECT_EQ(compare(r, Rational(5, 4)), 1);
  EXPECT_EQ(compare(r, Rational(13, 10)), -1);
}

TEST(Isolate, ExactRationalRootsAndMultiplicities) {
  UPoly p = U({0, -1, 1}) * U({-1, 1});  // t (t-1)^2
  auto roots = isolate(p, Rational(-1), Rational(2));
  ASSERT_EQ(roots.size(), 2U);
  EXPECT_TRUE(brackets(roots[0], 0.0));
  EXPECT_TRUE(brackets(roots[1], 1.0));
  EXPECT_EQ(roots[0].multiplicity, 1U);
  EXPECT_EQ(roots[1].multiplicity, 2U);
  EXPECT_EQ(compare(roots[1], Rational(1)), 0);
  EXPECT_THROW(isolate(UPoly(), Rational(0), Rational(1)), std::domain_error);
}

TEST(Isolate, RootsOnClosedEndpoints) {
  auto roots = isolate(U({-1, 0, 1}), Rational(-1), Rational(1));
  ASSERT_EQ(roots.size(), 2U);
  EXPECT_EQ(compare(roots[0], Rational(-1)), 0);
  EXPECT_EQ(compare(roots[1], Rational(1)), 0);
}

TEST(Isolate, SignAtAlgebraicPoint) {
  auto roots = isolate(U({-2, 0, 1}));  // -sqrt2, sqrt2
  ASSERT_EQ(roots.size(), 2U);
  EXPECT_EQ(sign_at(U({-1, 1}), roots[1]), 1);
  EXPECT_EQ(sign_at(U({-2, 0, 1}) * U({1, 1}), roots[1]), 0);
  EXPECT_TRUE(vanishes_at(U({4, 0, -2, 0, -2, 0, 1}), roots[0]));  // (t^2 - 2)(t^4 - 2)
  EXPECT_FALSE(vanishes_at(U({-3, 0, 1}), roots[0]));
}

TEST(Isolate, RandomProductsOfKnownRoots) {
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> num(-40, 40);
  std::uniform_int_distribution<int> den(1, 9);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<Rational> rs;
    UPoly p = U({1});
    for (int k = 0; k < 5; ++k) {
      Rational r(num(rng), den(rng));
      r.canonicalize();
      if (std::find(rs.begin(), rs.end(), r) == rs.end()) rs.push_back(r);
      p = p * linear(r);
    }
    p = p * U({1, 0, 1});  // no real roots
    auto roots = isolate(p);
    ASSERT_EQ(roots.size(), rs.size());
    std::sort(rs.begin(), rs.end());
    for (std::size_t k = 0; k < rs.size(); ++k) EXPECT_EQ(compare(roots[k], rs[k]), 0);
  }
}

TEST(Interval, Arithmetic) {
  Interval a(Rational(-1), Rational(2));
  EXPECT_EQ(a.sqr(), Interval(Rational(0), Rational(4)));
  EXPECT_EQ(a * a, Interval(Rational(-2), Rational(4)));
  EXPECT_EQ(a + Interval(Rational(1)), Interval(Rational(0), Rational(3)));
  EXPECT_TRUE(a.contains_zero());
  EXPECT_EQ(Interval(Rational(1), Rational(2)).sign(), 1);
  EXPECT_EQ(Interval(Rational(1), Rational(2)) / Interval(Rational(2), Rational(4)),
            Interval(Rational(1, 4), Rational(1)));
  EXPECT_THROW(Interval(Rational(2), Rational(1)), std::invalid_argument);
  Interval r = round_outward(Interval(Rational(1, 3)), 10);
  EXPECT_TRUE(r.contains(Rational(1, 3)));
  EXPECT_LE(r.width(), Rational(1, 1024));
}

TEST(Interval, TranscendentalEnclosures) {
  Interval pi = pi_interval(80);
  EXPECT_LT(pi.lo(), Rational(Integer("314159265358979324"), Integer("100000000000000000")));
  EXPECT_GT(pi.hi(), Rational(Integer("314159265358979323"), Integer("100000000000000000")));
  Interval s = sin(Interval(Rational(1)), 60);
  EXPECT_LT(s.lo(), Rational(Integer("8414709848079"), Integer("10000000000000")));
  EXPECT_GT(s.hi(), Rational(Integer("8414709848078"), Integer("10000000000000")));
  Interval c = cos(Interval(Rational(-2), Rational(2)), 40);
  EXPECT_LE(c.lo(), Rational(Integer("-416146836547"), Integer("1000000000000")));
  EXPECT_GE(c.hi(), Rational(1));
  Interval r = sqrt(Interval(Rational(2)), 60);
  EXPECT_LE(Rational(r.lo() * r.lo()), Rational(2));
  EXPECT_GE(Rational(r.hi() * r.hi()), Rational(2));
  EXPECT_LT(r.width(), Rational(1, 1 << 30));
}

TEST(Interval, PolynomialEnclosureContainsValues) {
  VarSetPtr vars = VarSet::make({"x", "y"});
  Poly p = parse_poly("x^3 - 2*x*y + y^2", vars);
  std::vector<Interval> box{Interval(Rational(1, 2), Rational(1)), Interval(Rational(-1), Rational(0))};
  Interval e = evaluate(p, box);
  for (int i = 0; i <= 4; ++i) {
    for (int j = 0; j <= 4; ++j) {
      std::vector<Rational> pt{Rational(1, 2) + Rational(i, 8), Rational(-1) + Rational(j, 4)};
      EXPECT_TRUE(e.contains(p.evaluate(pt)));
    }
  }
}

class CircleTest : public ::testing::Test {
 protected:
  VarSetPtr vars = VarSet::make({"sin_t", "cos_t"});
  Poly P(const std::string& s) { return parse_poly(s, vars); }
  std::vector<double> angles(const std::vector<Poly>& sys) {
    std::vector<double> out;
    for (const auto& r : solve_circle_system(sys)) out.push_back(r.t_approx());
    return out;
  }
};

TEST_F(CircleTest, SineZero) {
  auto t = angles({P("sin_t")});
  ASSERT_EQ(t.size(), 2U);
  EXPECT_NEAR(t[0], 0.0, 1e-6);
  EXPECT_NEAR(t[1], std::numbers::pi, 1e-6);
}

TEST_F(CircleTest, TangentPointHasMultiplicityTwo) {
  auto roots = solve_circle_system(std::vector<Poly>{P("cos_t - 1")});
  ASSERT_EQ(roots.size(), 1U);
  EXPECT_EQ(roots[0].multiplicity, 2U);
  EXPECT_TRUE(roots[0].t_interval().contains(Rational(0)));
}

TEST_F(CircleTest, HalfSine) {
  auto t = angles({P("2*sin_t - 1")});
  ASSERT_EQ(t.size(), 2U);
  EXPECT_NEAR(t[0], std::numbers::pi / 6, 1e-6);
  EXPECT_NEAR(t[1], 5 * std::numbers::pi / 6, 1e-6);
}

TEST_F(CircleTest, SineEqualsCosine) {
  auto t = angles({P("sin_t - cos_t")});
  ASSERT_EQ(t.size(), 2U);
  EXPECT_NEAR(t[0], -3 * std::numbers::pi / 4, 1e-6);
  EXPECT_NEAR(t[1], std::numbers::pi / 4, 1e-6);
}

TEST_F(CircleTest, MixedTermsAgreeWithFloatingScan) {
  Poly f = P("8*sin_t^3 - 4*sin_t*cos_t + cos_t^2 - 1/3");
  auto roots = solve_circle_system(std::vector<Poly>{f});
  // Sign changes of the float function on a fine grid.
  int changes = 0;
  double prev = 0;
  const int n = 200000;
  for (int k = 0; k <= n; ++k) {
    double t = -std::numbers::pi + 2 * std::numbers::pi * k / n;
    double s = std::sin(t);
    double c = std::cos(t);
    double v = 8 * s * s * s - 4 * s * c + c * c - 1.0 / 3;
    if (k > 0 && (v > 0) != (prev > 0)) ++changes;
    prev = v;
  }
  EXPECT_EQ(static_cast<int>(roots.size()), changes);
  for (const auto& r : roots) {
    double t = r.t_approx();
    double v = 8 * std::pow(std::sin(t), 3) - 4 * std::sin(t) * std::cos(t) + std::pow(std::cos(t), 2) - 1.0 / 3;
    EXPECT_NEAR(v, 0.0, 1e-5);
  }
}

TEST_F(CircleTest, CommonRootsOfTwoEquations) {
  auto t = angles({P("sin_t*cos_t"), P("sin_t")});
  ASSERT_EQ(t.size(), 2U);
}

TEST_F(CircleTest, WholeCircleIsPositiveDimensional) {
  EXPECT_THROW(solve_circle_system(std::vector<Poly>{P("sin_t^2 + cos_t^2 - 1")}), PositiveDimensionalError);
  EXPECT_THROW(solve_circle_system(std::vector<Poly>{}), PositiveDimensionalError);
}

TEST_F(CircleTest, NoRealPoints) {
  EXPECT_TRUE(angles({P("sin_t + cos_t - 2")}).empty());
  EXPECT_TRUE(angles({P("3")}).empty());
}

TEST_F(CircleTest, RefinementNarrowsAngle) {
  auto roots = solve_circle_system(std::vector<Poly>{P("sin_t - cos_t")});
  CircleRoot r = refine(roots[1], Rational(Integer(1), Integer(1) << 60));
  EXPECT_LE(r.t_interval().width(), Rational(Integer(1), Integer(1) << 60));
  Interval quarter = pi_interval(90) * Interval(Rational(1, 4));
  EXPECT_TRUE(r.t_interval().overlaps(quarter));
}
