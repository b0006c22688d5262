#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "singtraj/polycore/poly.hpp"

namespace singtraj {

/// Admissible joint range (lo, hi]: open below, closed above.
struct JointLimit {
  Rational lo;
  Rational hi;

  bool admits(const Rational& rho) const { return lo < rho && rho <= hi; }
};

/// IKP branch choice per leg: +1 selects the larger joint root, -1 the
/// smaller.
struct WorkingMode {
  std::vector<std::int8_t> signs;

  /// All 2^legs modes, (+,+,...,+) first, in binary order with + before -.
  static std::vector<WorkingMode> all(std::size_t legs);
  /// Parses "+++", "(+,-,+)" or "ppm".
  static WorkingMode parse(std::string_view text);

  /// "(+,-,+)".
  std::string to_string() const;
  /// "pmp", safe for file names.
  std::string label() const;

  friend bool operator==(const WorkingMode&, const WorkingMode&) = default;
  friend auto operator<=>(const WorkingMode&, const WorkingMode&) = default;
};

/// Translational parallel manipulator given by one constraint F_i(rho, X)
/// per leg. Variables are ordered joints first, then pose, as two blocks.
class RobotModel {
 public:
  RobotModel(std::string name, std::vector<std::string> joint_vars,
             std::vector<std::string> pose_vars,
             const std::vector<std::string>& constraint_texts,
             std::map<std::string, Rational> parameters,
             std::vector<JointLimit> limits);

  /// Built-in Orthoglide with leg length l and limits (0, 4].
  static RobotModel orthoglide(const Rational& leg_length = 2);

  /// Parses a JSON model description. Throws std::invalid_argument or
  /// ParseError on malformed input.
  static RobotModel from_json(std::string_view text);
  static RobotModel load(const std::string& path);
  /// "orthoglide" or a path to a JSON file.
  static RobotModel resolve(const std::string& name_or_path);

  const std::string& name() const { return name_; }
  const VarSetPtr& vars() const { return vars_; }
  const std::vector<std::string>& joint_vars() const { return joint_vars_; }
  const std::vector<std::string>& pose_vars() const { return pose_vars_; }
  const std::vector<Poly>& constraints() const { return constraints_; }
  const std::vector<std::string>& constraint_texts() const { return constraint_texts_; }
  const std::map<std::string, Rational>& parameters() const { return parameters_; }
  const std::vector<JointLimit>& limits() const { return limits_; }
  std::size_t legs() const { return constraints_.size(); }

  std::size_t joint_index(std::size_t leg) const { return leg; }
  std::size_t pose_index(std::size_t axis) const { return joint_vars_.size() + axis; }

 private:
  std::string name_;
  std::vector<std::string> joint_vars_;
  std::vector<std::string> pose_vars_;
  std::vector<std::string> constraint_texts_;
  std::map<std::string, Rational> parameters_;
  std::vector<JointLimit> limits_;
  VarSetPtr vars_;
  std::vector<Poly> constraints_;
};

}  // namespace singtraj
