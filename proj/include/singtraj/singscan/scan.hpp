#pragma once

#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "singtraj/realroots/interval.hpp"
#include "singtraj/robotmodel/kinematics.hpp"
#include "singtraj/trajectory/jointspace.hpp"

namespace singtraj {

/// mu_t = xi(phi(t)) with the circle relation, over trajectory_vars(tr).
std::vector<Poly> restrict_xi(const SingularityLoci& loci, const RobotModel& model, const Trajectory& tr);

/// Certified roots of mu_t on the trajectory domain. Each box holds exactly
/// one root; boxes are disjoint and sorted.
struct TimeRoot {
  Interval t;
  unsigned multiplicity = 1;
  bool boundary = false;
  /// Returns a sub-box of t narrower than the given width holding the root.
  std::function<Interval(const Rational&)> refine;
};

/// Throws PositiveDimensionalError when mu_t vanishes identically.
std::vector<TimeRoot> time_roots(const std::vector<Poly>& mu_system, const Trajectory& tr,
                                 const Rational& width = Rational(1, 1 << 24));

enum class EventClass { kReal, kSpurious };

struct SingularEvent {
  Interval t;
  std::vector<Interval> pose;
  /// Tracked-mode joints; empty when the branch does not exist there.
  std::vector<Interval> rho;
  EventClass classification = EventClass::kSpurious;
  /// Mode whose det(A) vanishes at the event, when identified.
  std::optional<WorkingMode> singular_mode;
  /// False when refinement could not exclude the competing modes.
  bool certified = false;
  bool detA_sign_change = false;
  bool boundary = false;
  unsigned multiplicity = 1;
};

enum class Verdict { kSingularityFree, kSingular, kInfeasible };

std::string to_string(Verdict v);
std::string to_string(EventClass c);

struct CurveSample {
  Rational t;
  double mu = 0;
  std::optional<double> det_a;
  bool feasible = false;
};

struct ScanOptions {
  std::size_t samples = 512;
  /// Width of certified event boxes.
  Rational width = Rational(1, 1 << 24);
};

struct ScanReport {
  std::string trajectory;
  WorkingMode mode;
  std::vector<SingularEvent> events;
  Verdict verdict = Verdict::kSingularityFree;
  std::vector<CurveSample> curve;
  std::size_t feasible_samples = 0;

  std::size_t real_events() const;
};

/// Full verdict procedure on `mode`, with loci precomputed.
ScanReport scan(const RobotModel& model, const SingularityLoci& loci, const Trajectory& tr,
                const WorkingMode& mode, const ScanOptions& options = {});

/// Classifies one certified root of mu_t against `mode`.
SingularEvent classify(const RobotModel& model, const SingularityLoci& loci, const Trajectory& tr,
                       const WorkingMode& mode, const TimeRoot& root);

/// Sign of det(A) on `mode` at an exact time, or 0 when undecided.
int det_sign_at(const RobotModel& model, const SingularityLoci& loci, const Trajectory& tr,
                const WorkingMode& mode, const Rational& t);

struct TableRow {
  std::string label;
  std::vector<std::string> pose;
  std::vector<std::string> rho;
  std::string classification;
};

/// One row per event, S1, S2, ... in time order, each value cut to
/// `decimals` places from its certified box. A box whose ends render
/// differently prints as "lo..hi".
std::vector<TableRow> event_table(const ScanReport& report, int decimals,
                                  DecimalMode mode = DecimalMode::kTruncate);

void write_table(std::ostream& out, const RobotModel& model, const std::vector<TableRow>& rows);

/// Columns t,mu,detA,event; event rows carry the event label.
void write_curve_csv(std::ostream& out, const ScanReport& report);

/// Report JSON, schema 1. `timing` is written only when non-empty.
std::string report_json(const RobotModel& model, const ScanReport& report, int decimals,
                        const std::map<std::string, double>& timing = {});

}  // namespace singtraj
