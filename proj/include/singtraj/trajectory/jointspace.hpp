#pragma once

#include <optional>
#include <ostream>
#include <vector>

#include "singtraj/polycore/groebner.hpp"
#include "singtraj/robotmodel/model.hpp"
#include "singtraj/trajectory/trajectory.hpp"

namespace singtraj {

/// Algebraized trajectory followed by the model constraints, over
/// pose | joints | sin_t, cos_t [| t].
std::vector<Poly> build_psi(const RobotModel& model, const Trajectory& tr);

struct JointSpaceImage {
  /// Generators over joints | sin_t, cos_t [| t].
  std::vector<Poly> generators;
  /// Per leg, index of the generator in that leg's joint alone (plus the
  /// trajectory variables); nullopt when none exists.
  std::vector<std::optional<std::size_t>> leg_generator;
  /// Product of the leg generators' joint degrees.
  int branch_count = 0;
  std::vector<std::string> joint_vars;
  std::vector<JointLimit> limits;
  bool has_time = false;

  const VarSetPtr& vars() const { return generators.front().vars(); }
};

/// Eliminates the pose variables from build_psi(model, tr).
JointSpaceImage project_to_jointspace(const RobotModel& model, const Trajectory& tr,
                                      const GroebnerOptions& options = {});

enum class Feasibility { kFeasible, kInfeasible, kUnknown };

struct JointSample {
  Rational t;
  /// One entry per leg; nullopt marks an unreachable branch.
  std::vector<std::optional<Interval>> rho;
  bool reachable = false;
  Feasibility feasibility = Feasibility::kInfeasible;
};

/// Branch `sign` of a leg generator a rho^2 + b rho + c (or linear) with
/// coefficients enclosed over the trajectory box. nullopt when the branch
/// certainly does not exist; `certain` is cleared when undecided.
std::optional<Interval> branch_enclosure(const JointSpaceImage& img, std::size_t leg, int sign,
                                         std::span<const Interval> box, unsigned bits, bool* certain);

/// Trajectory-variable box (sin_t, cos_t[, t]) at t, over img.vars().
std::vector<Interval> time_box(const JointSpaceImage& img, const Interval& t, unsigned bits);

/// Certified joint values on `mode` at every sample, each narrower than
/// `width` when the branch exists.
std::vector<JointSample> joint_path_eval(const JointSpaceImage& img, const WorkingMode& mode,
                                         std::span<const Rational> samples,
                                         const Rational& width = Rational(1, 1 << 30));

/// n uniform rational samples over the trajectory domain, endpoints inside.
std::vector<Rational> uniform_samples(const Trajectory& tr, std::size_t n);

struct ModeFeasibility {
  WorkingMode mode;
  std::size_t feasible_samples = 0;
  std::size_t unknown_samples = 0;
};

/// Feasibility of every working mode over the samples, modes in
/// WorkingMode::all order.
std::vector<ModeFeasibility> feasibility_analysis(const JointSpaceImage& img,
                                                  std::span<const Rational> samples);

/// The unique mode feasible at every sample, if any.
std::optional<WorkingMode> tracked_mode(const JointSpaceImage& img, std::span<const Rational> samples);

/// Header t,rho1,...,feasible; midpoints at `decimals` places.
void write_joint_csv(std::ostream& out, const JointSpaceImage& img, std::span<const JointSample> samples,
                     int decimals = 10);

}  // namespace singtraj
