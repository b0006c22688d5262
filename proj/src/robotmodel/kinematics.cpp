#include "singtraj/robotmodel/kinematics.hpp"

#include <cmath>

#include "singtraj/polycore/errors.hpp"

namespace singtraj {

namespace {

// F_i = a*rho_i^2 + b(X)*rho_i + c(X) with a constant.
struct LegQuadratic {
  Rational a;
  Poly b;
  Poly c;
};

LegQuadratic leg_quadratic(const RobotModel& model, std::size_t leg) {
  const Poly& f = model.constraints()[leg];
  const std::size_t j = model.joint_index(leg);
  for (std::size_t other = 0; other < model.legs(); ++other) {
    if (other != leg && f.involves(model.joint_index(other))) {
      throw StructuralError("leg constraint couples several joints");
    }
  }
  auto coeffs = f.coefficients_in(j);
  if (coeffs.size() != 3 || !coeffs[2].is_constant()) {
    throw StructuralError("leg constraint must be quadratic in its joint with constant leading coefficient");
  }
  return LegQuadratic{coeffs[2].constant_term(), coeffs[1], coeffs[0]};
}

std::vector<Rational> full_point(const RobotModel& model, std::span<const Rational> pose) {
  if (pose.size() != model.pose_vars().size()) throw StructuralError("pose has wrong dimension");
  std::vector<Rational> point(model.vars()->size());
  for (std::size_t k = 0; k < pose.size(); ++k) point[model.pose_index(k)] = pose[k];
  return point;
}

Poly single_generator(std::vector<Poly> gens, const char* what) {
  if (gens.size() != 1) {
    throw StructuralError(std::string(what) + " is not a hypersurface (" + std::to_string(gens.size()) +
                          " generators)");
  }
  return std::move(gens.front());
}

bool admits(const JointLimit& lim, const IsolatedRoot& rho) {
  return compare(rho, lim.lo) > 0 && compare(rho, lim.hi) <= 0;
}

}  // namespace

Jacobians jacobians(const RobotModel& model) {
  Jacobians j;
  for (const auto& f : model.constraints()) {
    std::vector<Poly> row_a;
    std::vector<Poly> row_b;
    for (const auto& x : model.pose_vars()) row_a.push_back(f.diff(x));
    for (const auto& r : model.joint_vars()) row_b.push_back(f.diff(r));
    j.a.push_back(std::move(row_a));
    j.b.push_back(std::move(row_b));
  }
  return j;
}

SingularityLoci project_singularities(const RobotModel& model, const GroebnerOptions& options) {
  Jacobians j = jacobians(model);
  Poly det_a = determinant(j.a);
  Poly det_b = determinant(j.b);
  std::vector<Poly> gens = model.constraints();
  gens.push_back(det_a);
  Poly eps = single_generator(eliminate(gens, model.pose_vars(), options), "joint-space singularity locus");
  Poly xi = single_generator(eliminate(gens, model.joint_vars(), options), "pose-space singularity locus");
  return SingularityLoci{det_a, det_b, xi, eps, project_joint_limits(model, options)};
}

std::vector<Poly> project_joint_limits(const RobotModel& model, const GroebnerOptions& options) {
  std::vector<Poly> out;
  for (int upper = 0; upper < 2; ++upper) {
    for (std::size_t leg = 0; leg < model.legs(); ++leg) {
      const JointLimit& lim = model.limits()[leg];
      std::vector<Poly> gens = model.constraints();
      gens.push_back(Poly::variable(model.vars(), model.joint_vars()[leg]) -
                     Poly::constant(model.vars(), upper ? lim.hi : lim.lo));
      out.push_back(single_generator(eliminate(gens, model.joint_vars(), options), "joint-limit surface"));
    }
  }
  return out;
}

std::vector<IkpSolution> ikp(const RobotModel& model, std::span<const Rational> pose) {
  const auto point = full_point(model, pose);
  // Per leg: branch '+' then '-' when present.
  std::vector<std::vector<IsolatedRoot>> branches;
  for (std::size_t leg = 0; leg < model.legs(); ++leg) {
    LegQuadratic q = leg_quadratic(model, leg);
    UPoly u = UPoly::from_rationals({q.c.evaluate(point), q.b.evaluate(point), q.a});
    std::vector<IsolatedRoot> roots = isolate(u);
    if (roots.empty()) return {};
    std::vector<IsolatedRoot> ordered(roots.rbegin(), roots.rend());
    for (auto& r : ordered) r.multiplicity = 1;
    branches.push_back(std::move(ordered));
  }
  std::vector<IkpSolution> out;
  for (const auto& mode : WorkingMode::all(model.legs())) {
    IkpSolution sol{mode, {}, true};
    bool exists = true;
    for (std::size_t leg = 0; leg < model.legs() && exists; ++leg) {
      const std::size_t pick = mode.signs[leg] > 0 ? 0 : 1;
      if (pick >= branches[leg].size()) {
        exists = false;
        break;
      }
      sol.rho.push_back(branches[leg][pick]);
      sol.feasible = sol.feasible && admits(model.limits()[leg], branches[leg][pick]);
    }
    if (exists) out.push_back(std::move(sol));
  }
  return out;
}

int dkp_count(const RobotModel& model, std::span<const Rational> rho, const GroebnerOptions& options) {
  if (rho.size() != model.legs()) throw StructuralError("joint vector has wrong dimension");
  std::vector<std::string> names = model.pose_vars();
  const std::size_t n = names.size();
  names.push_back("sep_w");
  VarSetPtr vars = VarSet::make(names);
  std::vector<Poly> specialized;
  for (const auto& f : model.constraints()) {
    Poly g = f;
    for (std::size_t leg = 0; leg < model.legs(); ++leg) g = g.substitute(model.joint_index(leg), rho[leg]);
    specialized.push_back(embed(g, vars));
  }
  const MonomialOrder lex = MonomialOrder::lex(n + 1);
  auto in_w_only = [n](const Poly& p) {
    for (std::size_t v : p.variables_used()) {
      if (v != n) return false;
    }
    return true;
  };
  for (long k = 1; k <= 24; ++k) {
    // w = x_1 + k x_2 + k^2 x_3 + ...
    Poly w = Poly::variable(vars, "sep_w");
    Rational coef = 1;
    for (std::size_t i = 0; i < n; ++i) {
      w -= Poly::variable(vars, names[i]) * coef;
      coef *= k;
    }
    std::vector<Poly> gens = specialized;
    gens.push_back(w);
    GroebnerBasis gb = buchberger(gens, lex, options);
    if (gb.generators.size() == 1 && gb.generators.front().is_constant()) return 0;
    std::optional<Poly> h;
    for (const auto& g : gb.generators) {
      if (in_w_only(g)) h = g;
    }
    if (!h) throw PositiveDimensionalError("direct kinematics is not zero-dimensional at this joint vector");
    UPoly hs = squarefree_part(UPoly::from_poly(*h));
    std::vector<Poly> radical = gb.generators;
    radical.push_back(hs.to_poly(vars, "sep_w"));
    GroebnerBasis shape = buchberger(radical, lex, options);
    // Shape position: x_i - a_i(w) for each i, then one polynomial in w.
    bool ok = shape.generators.size() == n + 1;
    for (std::size_t i = 0; ok && i < n; ++i) {
      bool found = false;
      for (const auto& g : shape.generators) {
        const Term& lt = leading_term(g, lex);
        if (lt.mono[i] != 1 || lt.mono.total_degree() != 1) continue;
        found = true;
        for (const auto& t : g.terms()) {
          for (std::size_t v = 0; v < n; ++v) {
            if (v != i && t.mono[v] != 0) ok = false;
          }
          if (&t != &lt && t.mono[i] != 0) ok = false;
        }
      }
      ok = ok && found;
    }
    if (!ok) continue;
    for (const auto& g : shape.generators) {
      if (in_w_only(g)) return static_cast<int>(isolate(UPoly::from_poly(g)).size());
    }
  }
  throw PositiveDimensionalError("no separating linear form found for direct kinematics");
}

WorkspaceCount workspace_member(const RobotModel& model, std::span<const Rational> pose) {
  WorkspaceCount c;
  for (const auto& sol : ikp(model, pose)) {
    ++c.total;
    if (sol.feasible) ++c.feasible;
  }
  return c;
}

std::optional<Interval> joint_enclosure(const RobotModel& model, std::size_t leg, int sign,
                                        std::span<const Interval> pose_box, unsigned bits, bool* certain) {
  if (pose_box.size() != model.pose_vars().size()) throw StructuralError("pose box has wrong dimension");
  LegQuadratic q = leg_quadratic(model, leg);
  std::vector<Interval> box(model.vars()->size(), Interval(0));
  for (std::size_t k = 0; k < pose_box.size(); ++k) box[model.pose_index(k)] = pose_box[k];
  Interval b = round_outward(evaluate(q.b, box), bits);
  Interval c = round_outward(evaluate(q.c, box), bits);
  Interval disc = b.sqr() - Interval(4 * q.a) * c;
  if (certain) *certain = true;
  if (disc.hi() < 0) return std::nullopt;
  if (disc.lo() < 0) {
    if (certain) *certain = false;
    disc = Interval(0, disc.hi());
  }
  const int s = q.a > 0 ? sign : -sign;
  Interval root = sqrt(disc, bits);
  Interval num = s > 0 ? -b + root : -b - root;
  return round_outward(num * Interval(Rational(1) / (2 * q.a)), bits);
}

std::optional<double> joint_value_approx(const RobotModel& model, std::size_t leg, int sign,
                                         std::span<const double> pose) {
  LegQuadratic q = leg_quadratic(model, leg);
  std::vector<double> point(model.vars()->size(), 0.0);
  for (std::size_t k = 0; k < pose.size(); ++k) point[model.pose_index(k)] = pose[k];
  const double a = q.a.get_d();
  const double b = q.b.evaluate_approx(point);
  const double c = q.c.evaluate_approx(point);
  const double disc = b * b - 4 * a * c;
  if (disc < 0) return std::nullopt;
  const int s = a > 0 ? sign : -sign;
  return (-b + s * std::sqrt(disc)) / (2 * a);
}

}  // namespace singtraj
