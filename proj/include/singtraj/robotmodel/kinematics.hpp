#pragma once

#include <optional>
#include <span>
#include <vector>

#include "singtraj/polycore/groebner.hpp"
#include "singtraj/polycore/matrix.hpp"
#include "singtraj/realroots/interval.hpp"
#include "singtraj/realroots/isolate.hpp"
#include "singtraj/robotmodel/model.hpp"

namespace singtraj {

struct Jacobians {
  PolyMatrix a;  // dF_i/dX_j
  PolyMatrix b;  // dF_i/drho_j
};

Jacobians jacobians(const RobotModel& model);

struct SingularityLoci {
  Poly det_a;
  Poly det_b;
  Poly xi;   // pose-space projection of det(A) = 0
  Poly eps;  // joint-space projection of det(A) = 0
  std::vector<Poly> mu;  // joint-limit surfaces in pose space
};

/// Throws StructuralError when an elimination ideal is not principal.
SingularityLoci project_singularities(const RobotModel& model, const GroebnerOptions& options = {});

/// One pose-space surface per joint bound, lower bounds first:
/// [rho_1 = lo, ..., rho_n = lo, rho_1 = hi, ..., rho_n = hi].
std::vector<Poly> project_joint_limits(const RobotModel& model, const GroebnerOptions& options = {});

struct IkpSolution {
  WorkingMode mode;
  std::vector<IsolatedRoot> rho;
  bool feasible = false;
};

/// All real joint solutions at a rational pose, one per working mode. A leg
/// with a double root contributes a single '+' branch. Requires every leg
/// constraint to be quadratic in its own joint variable.
std::vector<IkpSolution> ikp(const RobotModel& model, std::span<const Rational> pose);

/// Number of distinct real poses with the given joints. Throws
/// PositiveDimensionalError when the specialized system is not
/// zero-dimensional.
int dkp_count(const RobotModel& model, std::span<const Rational> rho,
              const GroebnerOptions& options = {});

struct WorkspaceCount {
  int total = 0;
  int feasible = 0;
};

WorkspaceCount workspace_member(const RobotModel& model, std::span<const Rational> pose);

/// Enclosure of the joint value of `leg` on branch `sign` over a pose box;
/// nullopt when the branch certainly does not exist there. `certain` is
/// cleared when the box may straddle the leg's reach boundary.
std::optional<Interval> joint_enclosure(const RobotModel& model, std::size_t leg, int sign,
                                        std::span<const Interval> pose_box, unsigned bits,
                                        bool* certain = nullptr);

/// Floating-point joint value; nullopt outside the leg's reach.
std::optional<double> joint_value_approx(const RobotModel& model, std::size_t leg, int sign,
                                         std::span<const double> pose);

}  // namespace singtraj
