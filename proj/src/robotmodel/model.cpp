#include "singtraj/robotmodel/model.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "singtraj/polycore/errors.hpp"
#include "singtraj/polycore/parse.hpp"

namespace singtraj {

std::vector<WorkingMode> WorkingMode::all(std::size_t legs) {
  std::vector<WorkingMode> out;
  const std::size_t n = std::size_t{1} << legs;
  out.reserve(n);
  for (std::size_t code = 0; code < n; ++code) {
    WorkingMode m;
    for (std::size_t leg = 0; leg < legs; ++leg) {
      bool minus = (code >> (legs - 1 - leg)) & 1U;
      m.signs.push_back(minus ? -1 : 1);
    }
    out.push_back(std::move(m));
  }
  return out;
}

WorkingMode WorkingMode::parse(std::string_view text) {
  WorkingMode m;
  for (char ch : text) {
    if (ch == '+' || ch == 'p') {
      m.signs.push_back(1);
    } else if (ch == '-' || ch == 'm') {
      m.signs.push_back(-1);
    } else if (ch != '(' && ch != ')' && ch != ',' && ch != ' ') {
      throw std::invalid_argument("bad working mode '" + std::string(text) + "'");
    }
  }
  if (m.signs.empty()) throw std::invalid_argument("empty working mode");
  return m;
}

std::string WorkingMode::to_string() const {
  std::string out = "(";
  for (std::size_t k = 0; k < signs.size(); ++k) {
    if (k > 0) out += ',';
    out += signs[k] > 0 ? '+' : '-';
  }
  return out + ")";
}

std::string WorkingMode::label() const {
  std::string out;
  for (auto s : signs) out += s > 0 ? 'p' : 'm';
  return out;
}

RobotModel::RobotModel(std::string name, std::vector<std::string> joint_vars,
                       std::vector<std::string> pose_vars,
                       const std::vector<std::string>& constraint_texts,
                       std::map<std::string, Rational> parameters, std::vector<JointLimit> limits)
    : name_(std::move(name)),
      joint_vars_(std::move(joint_vars)),
      pose_vars_(std::move(pose_vars)),
      constraint_texts_(constraint_texts),
      parameters_(std::move(parameters)),
      limits_(std::move(limits)) {
  if (joint_vars_.empty() || pose_vars_.empty()) throw StructuralError("model needs joint and pose variables");
  if (constraint_texts_.size() != joint_vars_.size()) {
    throw StructuralError("model needs one constraint per joint");
  }
  if (limits_.size() != joint_vars_.size()) throw StructuralError("model needs one limit per joint");
  for (const auto& lim : limits_) {
    if (!(lim.lo < lim.hi)) throw StructuralError("joint limit with lo >= hi");
  }
  std::vector<std::string> names = joint_vars_;
  names.insert(names.end(), pose_vars_.begin(), pose_vars_.end());
  for (const auto& [param, value] : parameters_) {
    for (const auto& n : names) {
      if (n == param) throw StructuralError("parameter " + param + " shadows a variable");
    }
  }
  vars_ = VarSet::make(names, {joint_vars_.size(), pose_vars_.size()});
  for (const auto& text : constraint_texts_) {
    Poly f = parse_poly(text, vars_, parameters_);
    bool has_joint = false;
    for (std::size_t j = 0; j < joint_vars_.size(); ++j) has_joint = has_joint || f.involves(j);
    if (!has_joint) throw StructuralError("constraint involves no joint variable: " + text);
    constraints_.push_back(std::move(f));
  }
}

RobotModel RobotModel::orthoglide(const Rational& leg_length) {
  if (leg_length <= 0) throw std::invalid_argument("leg length must be positive");
  return RobotModel("orthoglide", {"rho1", "rho2", "rho3"}, {"x", "y", "z"},
                    {"(x - rho1)^2 + y^2 + z^2 - l^2", "x^2 + (y - rho2)^2 + z^2 - l^2",
                     "x^2 + y^2 + (z - rho3)^2 - l^2"},
                    {{"l", leg_length}}, {{0, 4}, {0, 4}, {0, 4}});
}

namespace {

Rational json_rational(const nlohmann::json& v) {
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return Rational(Integer(v.dump()));
  throw std::invalid_argument("expected a rational as integer or string, got " + v.dump());
}

std::vector<std::string> json_names(const nlohmann::json& doc, const char* key) {
  if (!doc.contains(key) || !doc[key].is_array()) {
    throw std::invalid_argument(std::string("model is missing array '") + key + "'");
  }
  return doc[key].get<std::vector<std::string>>();
}

}  // namespace

RobotModel RobotModel::from_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("model is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw std::invalid_argument("model must be a JSON object");
  std::string name = doc.value("name", "model");
  auto joints = json_names(doc, "joint_vars");
  auto pose = json_names(doc, "pose_vars");
  auto constraints = json_names(doc, "constraints");
  std::map<std::string, Rational> params;
  if (doc.contains("parameters")) {
    for (const auto& [key, value] : doc["parameters"].items()) params[key] = json_rational(value);
  }
  std::vector<JointLimit> limits;
  if (!doc.contains("joint_limits") || !doc["joint_limits"].is_array()) {
    throw std::invalid_argument("model is missing array 'joint_limits'");
  }
  for (const auto& lim : doc["joint_limits"]) {
    if (!lim.is_array() || lim.size() != 2) throw std::invalid_argument("joint limit must be [lo, hi]");
    limits.push_back(JointLimit{json_rational(lim[0]), json_rational(lim[1])});
  }
  return RobotModel(std::move(name), std::move(joints), std::move(pose), constraints, std::move(params),
                    std::move(limits));
}

RobotModel RobotModel::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open model file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_json(buf.str());
}

RobotModel RobotModel::resolve(const std::string& name_or_path) {
  if (name_or_path == "orthoglide") return orthoglide();
  return load(name_or_path);
}

}  // namespace singtraj
