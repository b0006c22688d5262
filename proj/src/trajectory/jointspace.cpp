#include "singtraj/trajectory/jointspace.hpp"

#include <algorithm>

#include "singtraj/polycore/errors.hpp"
#include "singtraj/util/parallel.hpp"

namespace singtraj {

namespace {

constexpr unsigned kMaxBits = 4096;

VarSetPtr psi_vars(const RobotModel& model, const Trajectory& tr) {
  VarSetPtr tv = trajectory_vars(tr);
  std::vector<std::string> names = model.pose_vars();
  names.insert(names.end(), model.joint_vars().begin(), model.joint_vars().end());
  names.insert(names.end(), tv->names().begin(), tv->names().end());
  std::vector<std::size_t> blocks{model.pose_vars().size(), model.joint_vars().size()};
  for (std::size_t b : tv->order().blocks()) blocks.push_back(b);
  return VarSet::make(names, blocks);
}

}  // namespace

std::vector<Poly> build_psi(const RobotModel& model, const Trajectory& tr) {
  VarSetPtr vars = psi_vars(model, tr);
  std::vector<Poly> out;
  for (const auto& f : algebraize(tr, model.pose_vars())) out.push_back(embed(f, vars));
  // Circle relation last.
  Poly circle = std::move(out.back());
  out.pop_back();
  for (const auto& f : model.constraints()) out.push_back(embed(f, vars));
  out.push_back(std::move(circle));
  return out;
}

JointSpaceImage project_to_jointspace(const RobotModel& model, const Trajectory& tr,
                                      const GroebnerOptions& options) {
  std::vector<Poly> psi = build_psi(model, tr);
  std::vector<Poly> upsilon = eliminate(psi, model.pose_vars(), options);
  VarSetPtr tv = trajectory_vars(tr);
  std::vector<std::string> names = model.joint_vars();
  names.insert(names.end(), tv->names().begin(), tv->names().end());
  std::vector<std::size_t> blocks{model.joint_vars().size()};
  for (std::size_t b : tv->order().blocks()) blocks.push_back(b);
  VarSetPtr vars = VarSet::make(names, blocks);

  JointSpaceImage img;
  img.joint_vars = model.joint_vars();
  img.limits = model.limits();
  img.has_time = tr.has_linear();
  for (const auto& g : upsilon) img.generators.push_back(embed(g, vars));
  if (img.generators.empty()) throw PositiveDimensionalError("joint-space image is empty");

  const std::size_t n = model.joint_vars().size();
  img.leg_generator.assign(n, std::nullopt);
  img.branch_count = 1;
  for (std::size_t leg = 0; leg < n; ++leg) {
    for (std::size_t k = 0; k < img.generators.size(); ++k) {
      const Poly& g = img.generators[k];
      bool alone = g.involves(leg);
      for (std::size_t j = 0; j < n && alone; ++j) {
        if (j != leg && g.involves(j)) alone = false;
      }
      if (!alone) continue;
      if (!img.leg_generator[leg] || g.degree(leg) < img.generators[*img.leg_generator[leg]].degree(leg)) {
        img.leg_generator[leg] = k;
      }
    }
    if (!img.leg_generator[leg]) {
      img.branch_count = 0;
      continue;
    }
    img.branch_count *= static_cast<int>(img.generators[*img.leg_generator[leg]].degree(leg));
  }
  return img;
}

std::vector<Interval> time_box(const JointSpaceImage& img, const Interval& t, unsigned bits) {
  const VarSetPtr& vars = img.vars();
  std::vector<Interval> box(vars->size(), Interval(0));
  box[vars->index(kSinVar)] = round_outward(sin(t, bits), bits);
  box[vars->index(kCosVar)] = round_outward(cos(t, bits), bits);
  if (img.has_time) box[vars->index(kTimeVar)] = t;
  return box;
}

std::optional<Interval> branch_enclosure(const JointSpaceImage& img, std::size_t leg, int sign,
                                         std::span<const Interval> box, unsigned bits, bool* certain) {
  if (certain) *certain = true;
  if (!img.leg_generator[leg]) throw StructuralError("no generator isolates joint " + img.joint_vars[leg]);
  const Poly& g = img.generators[*img.leg_generator[leg]];
  std::vector<Poly> coeffs = g.coefficients_in(leg);
  std::vector<Interval> ci;
  for (const auto& c : coeffs) ci.push_back(round_outward(evaluate(c, box), bits));
  if (coeffs.size() == 2) {
    if (sign < 0) return std::nullopt;
    if (ci[1].contains_zero()) throw StructuralError("leading coefficient of joint " + img.joint_vars[leg] + " may vanish");
    return round_outward(-ci[0] / ci[1], bits);
  }
  if (coeffs.size() != 3) throw StructuralError("joint " + img.joint_vars[leg] + " is not quadratic on the image");
  const Interval& a = ci[2];
  const Interval& b = ci[1];
  const Interval& c = ci[0];
  if (a.contains_zero()) throw StructuralError("leading coefficient of joint " + img.joint_vars[leg] + " may vanish");
  Interval disc = b.sqr() - Interval(4) * a * c;
  if (disc.hi() < 0) return std::nullopt;
  if (disc.lo() < 0) {
    if (certain) *certain = false;
    disc = Interval(0, disc.hi());
  }
  const int s = a.lo() > 0 ? sign : -sign;
  Interval root = sqrt(disc, bits);
  Interval num = s > 0 ? -b + root : -b - root;
  return round_outward(num / (Interval(2) * a), bits);
}

std::vector<JointSample> joint_path_eval(const JointSpaceImage& img, const WorkingMode& mode,
                                         std::span<const Rational> samples, const Rational& width) {
  if (mode.signs.size() != img.joint_vars.size()) throw StructuralError("working mode has wrong length");
  std::vector<JointSample> out;
  out.reserve(samples.size());
  for (const auto& t : samples) {
    unsigned bits = precision_bits(width) + 32;
    JointSample js;
    js.t = t;
    for (;;) {
      std::vector<Interval> box = time_box(img, Interval(t), bits);
      js.rho.assign(img.joint_vars.size(), std::nullopt);
      bool decided = true;
      bool reachable = true;
      bool narrow = true;
      for (std::size_t leg = 0; leg < img.joint_vars.size(); ++leg) {
        bool certain = true;
        js.rho[leg] = branch_enclosure(img, leg, mode.signs[leg], box, bits, &certain);
        if (!js.rho[leg]) {
          reachable = false;
          continue;
        }
        if (!certain) decided = false;
        if (js.rho[leg]->width() > width) narrow = false;
      }
      js.reachable = reachable && decided;
      if (!reachable) {
        js.feasibility = Feasibility::kInfeasible;
      } else {
        js.feasibility = decided ? Feasibility::kFeasible : Feasibility::kUnknown;
        for (std::size_t leg = 0; leg < img.joint_vars.size(); ++leg) {
          const Interval& r = *js.rho[leg];
          const JointLimit& lim = img.limits[leg];
          if (r.hi() <= lim.lo || r.lo() > lim.hi) {
            js.feasibility = Feasibility::kInfeasible;
            break;
          }
          if (!(lim.lo < r.lo() && r.hi() <= lim.hi)) js.feasibility = Feasibility::kUnknown;
        }
      }
      const bool done = js.feasibility != Feasibility::kUnknown && (!reachable || narrow);
      if (done || bits >= kMaxBits) break;
      bits *= 2;
    }
    out.push_back(std::move(js));
  }
  return out;
}

std::vector<Rational> uniform_samples(const Trajectory& tr, std::size_t n) {
  if (n < 2) throw std::invalid_argument("need at least two samples");
  // Dyadic points strictly inside the exact domain, then the endpoints'
  // nearest interior dyadics.
  const unsigned bits = 48;
  Interval lo = round_outward(tr.lo().enclosure(bits + 8), bits);
  Interval hi = round_outward(tr.hi().enclosure(bits + 8), bits);
  const Rational a = lo.hi();
  const Rational b = hi.lo();
  std::vector<Rational> out;
  out.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    Rational t = a + (b - a) * Rational(static_cast<long>(k), static_cast<long>(n - 1));
    out.push_back(round_outward(Interval(t), bits).lo());
  }
  out.front() = a;
  out.back() = b;
  return out;
}

std::vector<ModeFeasibility> feasibility_analysis(const JointSpaceImage& img,
                                                  std::span<const Rational> samples) {
  const auto modes = WorkingMode::all(img.joint_vars.size());
  std::vector<ModeFeasibility> out(modes.size());
  parallel_for(modes.size(), [&](std::size_t m) {
    ModeFeasibility mf{modes[m]};
    for (const auto& s : joint_path_eval(img, modes[m], samples, Rational(1, 1 << 20))) {
      if (s.feasibility == Feasibility::kFeasible) ++mf.feasible_samples;
      if (s.feasibility == Feasibility::kUnknown) ++mf.unknown_samples;
    }
    out[m] = std::move(mf);
  });
  return out;
}

std::optional<WorkingMode> tracked_mode(const JointSpaceImage& img, std::span<const Rational> samples) {
  std::optional<WorkingMode> found;
  for (const auto& mf : feasibility_analysis(img, samples)) {
    if (mf.feasible_samples != samples.size()) continue;
    if (found) return std::nullopt;
    found = mf.mode;
  }
  return found;
}

void write_joint_csv(std::ostream& out, const JointSpaceImage& img, std::span<const JointSample> samples,
                     int decimals) {
  out << "t";
  for (const auto& v : img.joint_vars) out << ',' << v;
  out << ",feasible\n";
  for (const auto& s : samples) {
    out << to_decimal(s.t, decimals, DecimalMode::kNearest);
    for (const auto& r : s.rho) {
      out << ',';
      if (r) out << to_decimal(r->mid(), decimals, DecimalMode::kNearest);
    }
    out << ',';
    switch (s.feasibility) {
      case Feasibility::kFeasible: out << 1; break;
      case Feasibility::kInfeasible: out << 0; break;
      case Feasibility::kUnknown: out << "?"; break;
    }
    out << '\n';
  }
}

}  // namespace singtraj
