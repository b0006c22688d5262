#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "singtraj/polycore/errors.hpp"
#include "singtraj/robotmodel/kinematics.hpp"

using namespace singtraj;

namespace {

const char* kModelJson = R"({
  "name": "glide",
  "joint_vars": ["rho1", "rho2", "rho3"],
  "pose_vars": ["x", "y", "z"],
  "constraints": ["(x - rho1)^2 + y^2 + z^2 - l^2",
                  "x^2 + (y - rho2)^2 + z^2 - l^2",
                  "x^2 + y^2 + (z - rho3)^2 - l^2"],
  "parameters": {"l": 2},
  "joint_limits": [[0, 4], [0, 4], ["0", "4"]]
})";

std::vector<Rational> R3(long x, long y, long z) { return {Rational(x), Rational(y), Rational(z)}; }

}  // namespace

TEST(WorkingMode, ParseAndEnumerate) {
  EXPECT_EQ(WorkingMode::parse("+-+").signs, (std::vector<std::int8_t>{1, -1, 1}));
  EXPECT_EQ(WorkingMode::parse("(+,-,+)"), WorkingMode::parse("pmp"));
  EXPECT_EQ(WorkingMode::parse("--+").to_string(), "(-,-,+)");
  EXPECT_EQ(WorkingMode::parse("--+").label(), "mmp");
  EXPECT_THROW(WorkingMode::parse("+x+"), std::invalid_argument);
  EXPECT_THROW(WorkingMode::parse(""), std::invalid_argument);
  auto all = WorkingMode::all(3);
  ASSERT_EQ(all.size(), 8U);
  EXPECT_EQ(all.front().to_string(), "(+,+,+)");
  EXPECT_EQ(all.back().to_string(), "(-,-,-)");
  for (std::size_t i = 0; i < all.size(); ++i) {
    for (std::size_t j = i + 1; j < all.size(); ++j) EXPECT_NE(all[i], all[j]);
  }
}

TEST(Model, JsonMatchesBuiltin) {
  RobotModel a = RobotModel::from_json(kModelJson);
  RobotModel b = RobotModel::orthoglide();
  EXPECT_EQ(a.name(), "glide");
  ASSERT_EQ(a.legs(), 3U);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(a.constraints()[i].to_string(), b.constraints()[i].to_string());
  EXPECT_EQ(a.constraints()[0].to_string(), "rho1^2 - 2*rho1*x + x^2 + y^2 + z^2 - 4");
  EXPECT_EQ(a.limits()[2].hi, Rational(4));
  EXPECT_TRUE(a.limits()[0].admits(Rational(4)));
  EXPECT_FALSE(a.limits()[0].admits(Rational(0)));
}

TEST(Model, JsonErrors) {
  EXPECT_THROW(RobotModel::from_json("{"), std::invalid_argument);
  EXPECT_THROW(RobotModel::from_json("[]"), std::invalid_argument);
  EXPECT_THROW(RobotModel::from_json(R"({"joint_vars": ["r"], "pose_vars": ["x"], "constraints": ["r - x"]})"),
               std::invalid_argument);
  EXPECT_THROW(RobotModel::from_json(
                   R"({"joint_vars": ["r"], "pose_vars": ["x"], "constraints": ["r - "], "joint_limits": [[0, 1]]})"),
               ParseError);
  EXPECT_THROW(RobotModel::from_json(
                   R"({"joint_vars": ["r"], "pose_vars": ["x"], "constraints": ["x - 1"], "joint_limits": [[0, 1]]})"),
               StructuralError);
  EXPECT_THROW(RobotModel::from_json(
                   R"({"joint_vars": ["r"], "pose_vars": ["x"], "constraints": ["r - x"], "joint_limits": [[1, 0]]})"),
               StructuralError);
  EXPECT_THROW(RobotModel::load("/nonexistent/model.json"), std::runtime_error);
  EXPECT_THROW(RobotModel::orthoglide(Rational(0)), std::invalid_argument);
}

TEST(Jacobians, Determinants) {
  RobotModel m = RobotModel::orthoglide();
  Jacobians j = jacobians(m);
  ASSERT_EQ(j.a.size(), 3U);
  EXPECT_EQ(determinant(j.a).to_string(),
            "-8*rho1*rho2*rho3 + 8*rho1*rho2*z + 8*rho1*rho3*y + 8*rho2*rho3*x");
  EXPECT_EQ(determinant(j.b).to_string(),
            "8*rho1*rho2*rho3 - 8*rho1*rho2*z - 8*rho1*rho3*y - 8*rho2*rho3*x + 8*rho1*y*z + 8*rho2*x*z + "
            "8*rho3*x*y - 8*x*y*z");
}

TEST(JointLimits, PoseSurfaces) {
  auto mu = project_joint_limits(RobotModel::orthoglide());
  ASSERT_EQ(mu.size(), 6U);
  for (int i = 0; i < 3; ++i) EXPECT_EQ(mu[i].to_string(), "x^2 + y^2 + z^2 - 4");
  EXPECT_EQ(mu[3].to_string(), "x^2 + y^2 + z^2 - 8*x + 12");
  EXPECT_EQ(mu[4].to_string(), "x^2 + y^2 + z^2 - 8*y + 12");
  EXPECT_EQ(mu[5].to_string(), "x^2 + y^2 + z^2 - 8*z + 12");
}

TEST(Ikp, HomePose) {
  RobotModel m = RobotModel::orthoglide();
  auto pose = R3(0, 0, 0);
  auto sols = ikp(m, pose);
  ASSERT_EQ(sols.size(), 8U);
  int feasible = 0;
  for (const auto& s : sols) {
    if (!s.feasible) continue;
    ++feasible;
    EXPECT_EQ(s.mode.to_string(), "(+,+,+)");
    for (const auto& r : s.rho) EXPECT_EQ(compare(r, Rational(2)), 0);
  }
  EXPECT_EQ(feasible, 1);
  WorkspaceCount c = workspace_member(m, pose);
  EXPECT_EQ(c.total, 8);
  EXPECT_EQ(c.feasible, 1);
}

TEST(Ikp, UnreachablePose) {
  RobotModel m = RobotModel::orthoglide();
  auto pose = R3(3, 0, 0);
  EXPECT_TRUE(ikp(m, pose).empty());
  EXPECT_EQ(workspace_member(m, pose).total, 0);
}

TEST(Ikp, ReachBoundaryCollapsesBranches) {
  RobotModel m = RobotModel::orthoglide();
  // Legs 1 and 2 sit on their reach boundary: double roots.
  auto pose = R3(0, 0, 2);
  auto sols = ikp(m, pose);
  ASSERT_EQ(sols.size(), 2U);
  for (const auto& s : sols) {
    EXPECT_EQ(s.mode.signs[0], 1);
    EXPECT_EQ(s.mode.signs[1], 1);
  }
}

TEST(Ikp, SolutionsSatisfyConstraintsExactly) {
  RobotModel m = RobotModel::orthoglide();
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> num(-12, 12);
  int checked = 0;
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<Rational> pose{Rational(num(rng), 8), Rational(num(rng), 8), Rational(num(rng), 8)};
    for (auto& v : pose) v.canonicalize();
    for (const auto& s : ikp(m, pose)) {
      for (std::size_t leg = 0; leg < 3; ++leg) {
        // Leg polynomial specialized at the pose, as a polynomial in rho.
        const Rational& p = pose[leg];
        Rational r2 = pose[0] * pose[0] + pose[1] * pose[1] + pose[2] * pose[2] - 4;
        UPoly u = UPoly::from_rationals({r2, -2 * p, Rational(1)});
        EXPECT_TRUE(vanishes_at(u, s.rho[leg]));
        ++checked;
      }
      if (s.rho[0].polynomial.degree() == 2 && !s.rho[0].exact()) {
        EXPECT_EQ(s.mode.signs[0] > 0, compare(s.rho[0], pose[0]) > 0);
      }
    }
  }
  EXPECT_GT(checked, 100);
}

TEST(Dkp, CountsPoses) {
  RobotModel m = RobotModel::orthoglide();
  auto home = R3(2, 2, 2);
  EXPECT_EQ(dkp_count(m, home), 2);
  auto far = R3(10, 10, 10);
  EXPECT_EQ(dkp_count(m, far), 0);
}

TEST(Dkp, RoundTripThroughIkp) {
  RobotModel m = RobotModel::orthoglide();
  std::vector<Rational> pose{Rational(1, 4), Rational(-1, 2), Rational(1, 3)};
  for (const auto& s : ikp(m, pose)) {
    if (!s.feasible) continue;
    bool rational = true;
    std::vector<Rational> rho;
    for (const auto& r : s.rho) {
      rational = rational && r.exact();
      rho.push_back(r.lo);
    }
    if (rational) EXPECT_GE(dkp_count(m, rho), 1);
  }
  // Joints from an exact rational IKP: pose (0, 0, 0) gives rho = (2, 2, 2).
  auto home = R3(2, 2, 2);
  EXPECT_GE(dkp_count(m, home), 1);
}

TEST(JointEnclosure, ContainsIkpValues) {
  RobotModel m = RobotModel::orthoglide();
  std::mt19937 rng(9);
  std::uniform_int_distribution<int> num(-10, 10);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<Rational> pose{Rational(num(rng), 10), Rational(num(rng), 10), Rational(num(rng), 10)};
    for (auto& v : pose) v.canonicalize();
    std::vector<Interval> box;
    for (const auto& v : pose) box.emplace_back(v - Rational(1, 1000), v + Rational(1, 1000));
    auto sols = ikp(m, pose);
    for (const auto& s : sols) {
      for (std::size_t leg = 0; leg < 3; ++leg) {
        auto e = joint_enclosure(m, leg, s.mode.signs[leg], box, 64);
        ASSERT_TRUE(e.has_value());
        EXPECT_TRUE(e->overlaps(s.rho[leg].interval()));
        std::vector<double> p{to_double(pose[0]), to_double(pose[1]), to_double(pose[2])};
        auto approx = joint_value_approx(m, leg, s.mode.signs[leg], p);
        ASSERT_TRUE(approx.has_value());
        EXPECT_NEAR(*approx, refine(s.rho[leg], Rational(Integer(1), Integer(1) << 40)).approx(), 1e-9);
      }
    }
  }
}

TEST(JointEnclosure, AbsentOutsideReach) {
  RobotModel m = RobotModel::orthoglide();
  std::vector<Interval> box{Interval(Rational(0)), Interval(Rational(3)), Interval(Rational(0))};
  EXPECT_FALSE(joint_enclosure(m, 0, 1, box, 64).has_value());
  std::vector<double> p{0.0, 3.0, 0.0};
  EXPECT_FALSE(joint_value_approx(m, 0, 1, p).has_value());
}
