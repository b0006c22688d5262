#include "singtraj/singscan/scan.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <memory>
#include <stdexcept>

#include "singtraj/polycore/errors.hpp"
#include "singtraj/realroots/circle.hpp"
#include "singtraj/realroots/isolate.hpp"

namespace singtraj {

namespace {

constexpr unsigned kMaxRefinements = 12;

Interval two_pi_times(long k, unsigned bits) {
  return Interval(Rational(2 * k)) * pi_interval(bits + 8);
}

// Whether an exact time value can be matched against a domain bound.
enum class Place { kInside, kOutside, kAtLo, kAtHi };

Place place(TimeRoot& r, const Trajectory& tr, const std::function<bool(const DomainBound&)>& equals) {
  for (unsigned iter = 0;; ++iter) {
    const unsigned bits = precision_bits(r.t.width()) + 16;
    const Interval lo = tr.lo().enclosure(bits);
    const Interval hi = tr.hi().enclosure(bits);
    if (r.t.hi() < lo.lo() || r.t.lo() > hi.hi()) return Place::kOutside;
    if (r.t.lo() > lo.hi() && r.t.hi() < hi.lo()) return Place::kInside;
    if (equals && equals(tr.lo())) return Place::kAtLo;
    if (equals && equals(tr.hi())) return Place::kAtHi;
    if (iter >= kMaxRefinements) return r.t.overlaps(lo) ? Place::kAtLo : Place::kAtHi;
    r.t = r.refine(r.t.width() / 65536);
  }
}

void finish_placement(TimeRoot r, Place p, const Trajectory& tr, std::vector<TimeRoot>& out) {
  if (p == Place::kOutside) return;
  if (p == Place::kAtLo || p == Place::kAtHi) {
    const DomainBound& b = p == Place::kAtLo ? tr.lo() : tr.hi();
    r.boundary = true;
    const unsigned bits = precision_bits(r.t.width()) + 4;
    r.t = round_outward(b.enclosure(bits + 8), bits);
    r.refine = [b](const Rational& w) {
      const unsigned bb = precision_bits(w) + 4;
      return round_outward(b.enclosure(bb + 8), bb);
    };
  }
  out.push_back(std::move(r));
}

// Roots of P(sin t, cos t) on (-pi, pi], shifted by 2 pi k into the domain.
std::vector<TimeRoot> trig_roots(const std::vector<Poly>& sys, const Trajectory& tr, const Rational& width) {
  std::vector<TimeRoot> out;
  const auto circle = solve_circle_system(sys, kSinVar, kCosVar, width);
  const double two_pi = 2 * 3.141592653589793;
  const long k_lo = static_cast<long>(std::floor((tr.lo().approx() - 4) / two_pi));
  const long k_hi = static_cast<long>(std::ceil((tr.hi().approx() + 4) / two_pi));
  for (const auto& cr : circle) {
    for (long k = k_lo; k <= k_hi; ++k) {
      auto refine = [cr, k](const Rational& w) {
        CircleRoot r = singtraj::refine(cr, w / 2);
        const unsigned bits = precision_bits(w) + 8 + static_cast<unsigned>(std::abs(k));
        return round_outward(r.t_interval() + two_pi_times(k, bits), bits);
      };
      TimeRoot r{refine(width), cr.multiplicity, false, refine};
      // Exact match when the bound is a multiple of pi/2.
      auto equals = [&cr, k](const DomainBound& b) {
        if (b.offset != 0) return false;
        Rational q = b.pi_coeff - 2 * k;
        if (q.get_den() > 2 || q <= -1 || q > 1) return false;
        int c = 0;
        int s = 0;
        if (q == 0) c = 1;
        if (q == 1) c = -1;
        if (q == Rational(1, 2)) s = 1;
        if (q == Rational(-1, 2)) s = -1;
        return compare(cr.cos_val, c) == 0 && compare(cr.sin_val, s) == 0;
      };
      Place p = place(r, tr, equals);
      finish_placement(std::move(r), p, tr, out);
    }
  }
  // A closed loop over whole periods meets its start again at the end.
  const Rational span = tr.hi().pi_coeff - tr.lo().pi_coeff;
  const bool periodic = tr.hi().offset == tr.lo().offset && span.get_den() == 1 && span.get_num() % 2 == 0;
  if (periodic) {
    std::erase_if(out, [&tr](const TimeRoot& r) {
      return r.boundary && r.t.overlaps(tr.lo().enclosure(precision_bits(r.t.width()) + 8)) &&
             !r.t.overlaps(tr.hi().enclosure(precision_bits(r.t.width()) + 8));
    });
  }
  return out;
}

std::pair<Rational, Rational> outer_domain(const Trajectory& tr) {
  const Interval lo = round_outward(tr.lo().enclosure(40), 32);
  const Interval hi = round_outward(tr.hi().enclosure(40), 32);
  return {lo.lo() - 1, hi.hi() + 1};
}

// Roots of P(t) when no coordinate is trigonometric.
std::vector<TimeRoot> polynomial_roots(const Poly& f, const Trajectory& tr, const Rational& width) {
  std::vector<TimeRoot> out;
  const auto [a, b] = outer_domain(tr);
  VarSetPtr single = VarSet::make({std::string(kTimeVar)});
  UPoly u = UPoly::from_poly(embed(f, single));
  for (const auto& root : isolate(u, a, b)) {
    auto refine_fn = [root](const Rational& w) { return singtraj::refine(root, w).interval(); };
    TimeRoot r{refine_fn(width), root.multiplicity, false, refine_fn};
    auto equals = [&root](const DomainBound& bound) {
      return bound.pi_coeff == 0 && root.exact() && root.lo == bound.offset;
    };
    Place p = place(r, tr, equals);
    finish_placement(std::move(r), p, tr, out);
  }
  return out;
}

// f(sin t, cos t, t) with interval arithmetic.
struct MixedFunction {
  Poly f;
  Poly fs;
  Poly fc;
  Poly ft;
  std::size_t si;
  std::size_t ci;
  std::size_t ti;

  explicit MixedFunction(const Poly& p)
      : f(p),
        fs(p.diff(kSinVar)),
        fc(p.diff(kCosVar)),
        ft(p.diff(kTimeVar)),
        si(p.vars()->index(kSinVar)),
        ci(p.vars()->index(kCosVar)),
        ti(p.vars()->index(kTimeVar)) {}

  std::vector<Interval> box(const Interval& t, unsigned bits) const {
    std::vector<Interval> b(f.vars()->size(), Interval(0));
    b[si] = round_outward(sin(t, bits), bits);
    b[ci] = round_outward(cos(t, bits), bits);
    b[ti] = t;
    return b;
  }

  Interval derivative(const Interval& t, unsigned bits) const {
    auto b = box(t, bits);
    return round_outward(evaluate(fs, b) * b[ci] - evaluate(fc, b) * b[si] + evaluate(ft, b), bits);
  }

  // Naive enclosure intersected with the mean-value form.
  Interval value(const Interval& t, unsigned bits) const {
    Interval naive = round_outward(evaluate(f, box(t, bits)), bits);
    if (t.width() == 0) return naive;
    const Rational m = t.mid();
    Interval centered = round_outward(evaluate(f, box(Interval(m), bits)), bits) +
                        derivative(t, bits) * (t - Interval(m));
    return Interval(std::max(naive.lo(), centered.lo()), std::min(naive.hi(), centered.hi()));
  }

  // Sign at an exact time: +-1, 0 for an exact zero, 2 when undecided.
  int sign_at(const Rational& t) const {
    for (unsigned bits = 64; bits <= 4096; bits *= 2) {
      Interval v = evaluate(f, box(Interval(t), bits));
      if (v.lo() == 0 && v.hi() == 0) return 0;
      if (!v.contains_zero()) return v.sign();
    }
    return 2;
  }
};

Interval bisect_root(const MixedFunction& fn, Rational a, Rational b, int sa, const Rational& width) {
  static const Rational kFractions[] = {Rational(1, 2), Rational(7, 16), Rational(9, 16), Rational(3, 8)};
  while (b - a > width) {
    bool moved = false;
    for (const auto& frac : kFractions) {
      Rational m = a + (b - a) * frac;
      int sm = fn.sign_at(m);
      if (sm == 2) continue;
      if (sm == 0) return Interval(m);
      if (sm == sa) {
        a = m;
      } else {
        b = m;
      }
      moved = true;
      break;
    }
    if (!moved) throw std::runtime_error("mu_t bisection stalled");
  }
  return Interval(a, b);
}

// Branch-and-bound isolation for trajectories mixing t with sin t, cos t.
std::vector<TimeRoot> mixed_roots(const Poly& f, const Trajectory& tr, const Rational& width) {
  auto fn = std::make_shared<const MixedFunction>(f);
  std::vector<TimeRoot> out;
  auto [a0, b0] = outer_domain(tr);
  const Rational min_width = Rational(1) / (Integer(1) << 60);
  std::vector<std::pair<Rational, Rational>> stack{{a0, b0}};
  std::vector<Rational> exact_zeros;
  while (!stack.empty()) {
    auto [a, b] = stack.back();
    stack.pop_back();
    const Interval t(a, b);
    const unsigned bits = precision_bits(t.width()) + 48;
    if (!fn->value(t, bits).contains_zero()) continue;
    if (!fn->derivative(t, bits).contains_zero()) {
      const int sa = fn->sign_at(a);
      const int sb = fn->sign_at(b);
      if (sa == 0) exact_zeros.push_back(a);
      if (sb == 0) exact_zeros.push_back(b);
      if (sa == 0 || sb == 0) continue;
      if (sa != 2 && sb != 2) {
        if (sa != sb) {
          auto refine_fn = [fn, a, b, sa](const Rational& w) { return bisect_root(*fn, a, b, sa, w); };
          out.push_back(TimeRoot{refine_fn(width), 1, false, refine_fn});
        }
        continue;
      }
    }
    if (b - a < min_width) throw std::runtime_error("mu_t root could not be isolated");
    const Rational m = (a + b) / 2;
    stack.emplace_back(m, b);
    stack.emplace_back(a, m);
  }
  std::sort(exact_zeros.begin(), exact_zeros.end());
  exact_zeros.erase(std::unique(exact_zeros.begin(), exact_zeros.end()), exact_zeros.end());
  for (const auto& z : exact_zeros) {
    auto refine_fn = [z](const Rational&) { return Interval(z); };
    out.push_back(TimeRoot{Interval(z), 1, false, refine_fn});
  }
  std::vector<TimeRoot> placed;
  for (auto& r : out) {
    const Rational exact = r.t.width() == 0 ? r.t.lo() : Rational(0);
    const bool is_exact = r.t.width() == 0;
    auto equals = [exact, is_exact](const DomainBound& bound) {
      return is_exact && bound.pi_coeff == 0 && bound.offset == exact;
    };
    Place p = place(r, tr, equals);
    finish_placement(std::move(r), p, tr, placed);
  }
  return placed;
}

std::vector<Interval> model_box(const RobotModel& model, std::span<const Interval> rho,
                                std::span<const Interval> pose) {
  std::vector<Interval> box(model.vars()->size(), Interval(0));
  for (std::size_t k = 0; k < rho.size(); ++k) box[model.joint_index(k)] = rho[k];
  for (std::size_t k = 0; k < pose.size(); ++k) box[model.pose_index(k)] = pose[k];
  return box;
}

struct ModeEnclosure {
  std::vector<Interval> rho;
  bool exists = false;
  bool certain = true;
  Interval det;
};

ModeEnclosure enclose_mode(const RobotModel& model, const SingularityLoci& loci, const WorkingMode& mode,
                           std::span<const Interval> pose, unsigned bits) {
  ModeEnclosure e;
  for (std::size_t leg = 0; leg < model.legs(); ++leg) {
    bool certain = true;
    auto r = joint_enclosure(model, leg, mode.signs[leg], pose, bits, &certain);
    if (!r) return e;
    e.certain = e.certain && certain;
    e.rho.push_back(*r);
  }
  e.exists = true;
  e.det = evaluate(loci.det_a, model_box(model, e.rho, pose));
  return e;
}

std::string render(const Interval& v, int decimals, DecimalMode mode) {
  std::string lo = to_decimal(v.lo(), decimals, mode);
  std::string hi = to_decimal(v.hi(), decimals, mode);
  return lo == hi ? lo : lo + ".." + hi;
}

}  // namespace

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::kSingularityFree: return "singularity-free";
    case Verdict::kSingular: return "singular";
    case Verdict::kInfeasible: return "infeasible";
  }
  return "unknown";
}

std::string to_string(EventClass c) { return c == EventClass::kReal ? "real-singularity" : "spurious-projection"; }

std::size_t ScanReport::real_events() const {
  return static_cast<std::size_t>(std::count_if(events.begin(), events.end(), [](const SingularEvent& e) {
    return e.classification == EventClass::kReal;
  }));
}

std::vector<Poly> restrict_xi(const SingularityLoci& loci, const RobotModel& model, const Trajectory& tr) {
  if (model.pose_vars().size() != tr.coords().size()) {
    throw StructuralError("trajectory dimension does not match the pose variables");
  }
  VarSetPtr tv = trajectory_vars(tr);
  std::map<std::string, Poly> images;
  for (const auto& j : model.joint_vars()) {
    if (loci.xi.involves(model.vars()->index(j))) throw StructuralError("pose-space locus involves joints");
  }
  for (std::size_t i = 0; i < model.pose_vars().size(); ++i) {
    images.emplace(model.pose_vars()[i], coordinate_poly(tr.coords()[i], tv));
  }
  for (const auto& j : model.joint_vars()) images.emplace(j, Poly(tv));
  Poly mu = compose(loci.xi, images, tv);
  if (!mu.is_zero()) mu = mu.primitive();
  Poly s = Poly::variable(tv, kSinVar);
  Poly c = Poly::variable(tv, kCosVar);
  return {mu, s * s + c * c - Poly::constant(tv, 1)};
}

std::vector<TimeRoot> time_roots(const std::vector<Poly>& mu_system, const Trajectory& tr, const Rational& width) {
  const Poly& mu = mu_system.front();
  if (mu.is_zero()) throw PositiveDimensionalError("trajectory lies on the singular surface");
  std::vector<TimeRoot> roots;
  if (mu.is_constant()) return roots;
  const auto& vars = mu.vars();
  const bool trig = mu.involves(vars->index(kSinVar)) || mu.involves(vars->index(kCosVar));
  const bool timed = vars->find(kTimeVar) && mu.involves(vars->index(kTimeVar));
  if (trig && timed) {
    roots = mixed_roots(mu, tr, width);
  } else if (timed) {
    roots = polynomial_roots(mu, tr, width);
  } else {
    std::vector<Poly> sys = mu_system;
    if (vars->find(kTimeVar)) {
      VarSetPtr tv = VarSet::make({std::string(kSinVar), std::string(kCosVar)});
      for (auto& p : sys) p = embed(p, tv);
    }
    roots = trig_roots(sys, tr, width);
  }
  std::sort(roots.begin(), roots.end(), [](const TimeRoot& a, const TimeRoot& b) { return a.t.lo() < b.t.lo(); });
  // Separate neighbours.
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t k = 0; k + 1 < roots.size(); ++k) {
      if (roots[k].t.overlaps(roots[k + 1].t)) {
        if (roots[k].t.width() == 0 && roots[k + 1].t.width() == 0) {
          throw std::runtime_error("duplicate root of mu_t");
        }
        roots[k].t = roots[k].refine(roots[k].t.width() / 16);
        roots[k + 1].t = roots[k + 1].refine(roots[k + 1].t.width() / 16);
        changed = true;
      }
    }
  }
  return roots;
}

int det_sign_at(const RobotModel& model, const SingularityLoci& loci, const Trajectory& tr,
                const WorkingMode& mode, const Rational& t) {
  for (unsigned bits = 64; bits <= 2048; bits *= 2) {
    std::vector<Interval> pose = tr.evaluate(Interval(t), bits);
    ModeEnclosure e = enclose_mode(model, loci, mode, pose, bits);
    if (!e.exists) return 0;
    if (!e.det.contains_zero()) return e.det.sign();
  }
  return 0;
}

SingularEvent classify(const RobotModel& model, const SingularityLoci& loci, const Trajectory& tr,
                       const WorkingMode& mode, const TimeRoot& root) {
  SingularEvent ev;
  ev.boundary = root.boundary;
  ev.multiplicity = root.multiplicity;
  Interval t = root.t;
  const auto modes = WorkingMode::all(model.legs());
  std::vector<ModeEnclosure> enc;
  for (unsigned iter = 0; iter <= kMaxRefinements; ++iter) {
    const unsigned bits = precision_bits(t.width()) + 40;
    std::vector<Interval> pose = tr.evaluate(t, bits);
    enc.clear();
    std::vector<std::size_t> open;
    for (std::size_t m = 0; m < modes.size(); ++m) {
      enc.push_back(enclose_mode(model, loci, modes[m], pose, bits));
      if (enc.back().exists && enc.back().det.contains_zero()) open.push_back(m);
    }
    ev.t = t;
    ev.pose = pose;
    const std::size_t tracked =
        static_cast<std::size_t>(std::find(modes.begin(), modes.end(), mode) - modes.begin());
    const bool tracked_open = std::find(open.begin(), open.end(), tracked) != open.end();
    const bool all_certain = std::all_of(enc.begin(), enc.end(), [](const ModeEnclosure& e) { return e.certain; });
    ev.rho = enc[tracked].exists ? enc[tracked].rho : std::vector<Interval>{};
    if (open.size() == 1 && all_certain) {
      // xi(phi(t)) = 0 forces det(A) = 0 on some real branch: the survivor.
      ev.singular_mode = modes[open.front()];
      ev.classification = tracked_open ? EventClass::kReal : EventClass::kSpurious;
      ev.certified = true;
      break;
    }
    if (open.empty() || (!tracked_open && enc[tracked].certain && iter >= 2)) {
      ev.classification = EventClass::kSpurious;
      ev.certified = true;
      if (!tracked_open && open.size() > 1) {
        // Keep refining a little to name the singular branch.
        if (iter < kMaxRefinements / 2) {
          t = root.refine(t.width() / 65536);
          continue;
        }
      }
      break;
    }
    if (iter == kMaxRefinements) {
      ev.classification = tracked_open ? EventClass::kReal : EventClass::kSpurious;
      ev.certified = !tracked_open;
      break;
    }
    t = root.refine(t.width() / 65536);
  }
  if (ev.classification == EventClass::kReal && !ev.boundary) {
    const int lo = det_sign_at(model, loci, tr, mode, ev.t.lo());
    const int hi = det_sign_at(model, loci, tr, mode, ev.t.hi());
    ev.detA_sign_change = lo * hi < 0;
  }
  return ev;
}

ScanReport scan(const RobotModel& model, const SingularityLoci& loci, const Trajectory& tr,
                const WorkingMode& mode, const ScanOptions& options) {
  ScanReport report;
  report.trajectory = tr.name();
  report.mode = mode;
  const std::vector<Poly> mu_system = restrict_xi(loci, model, tr);
  for (const auto& root : time_roots(mu_system, tr, options.width)) {
    report.events.push_back(classify(model, loci, tr, mode, root));
  }

  JointSpaceImage img = project_to_jointspace(model, tr);
  std::vector<Rational> samples = uniform_samples(tr, options.samples);
  for (const auto& ev : report.events) samples.push_back(ev.t.mid());
  std::sort(samples.begin(), samples.end());
  samples.erase(std::unique(samples.begin(), samples.end()), samples.end());
  const auto path = joint_path_eval(img, mode, samples, Rational(1, 1 << 20));

  const Poly& mu = mu_system.front();
  const auto& tv = mu.vars();
  const std::size_t si = tv->index(kSinVar);
  const std::size_t ci = tv->index(kCosVar);
  const auto ti = tv->find(kTimeVar);
  for (const auto& js : path) {
    CurveSample cs;
    cs.t = js.t;
    const double t = to_double(js.t);
    std::vector<double> point(tv->size(), 0.0);
    point[si] = std::sin(t);
    point[ci] = std::cos(t);
    if (ti) point[*ti] = t;
    cs.mu = mu.evaluate_approx(point);
    cs.feasible = js.feasibility == Feasibility::kFeasible;
    if (cs.feasible) ++report.feasible_samples;
    const std::vector<double> pose = tr.evaluate_approx(t);
    std::vector<double> full(model.vars()->size(), 0.0);
    bool exists = true;
    for (std::size_t leg = 0; leg < model.legs() && exists; ++leg) {
      auto r = joint_value_approx(model, leg, mode.signs[leg], pose);
      if (!r) exists = false;
      else full[model.joint_index(leg)] = *r;
    }
    for (std::size_t k = 0; k < pose.size(); ++k) full[model.pose_index(k)] = pose[k];
    if (exists) cs.det_a = loci.det_a.evaluate_approx(full);
    report.curve.push_back(cs);
  }

  if (report.real_events() > 0) {
    report.verdict = Verdict::kSingular;
  } else if (report.feasible_samples != path.size()) {
    report.verdict = Verdict::kInfeasible;
  } else {
    report.verdict = Verdict::kSingularityFree;
  }
  return report;
}

std::vector<TableRow> event_table(const ScanReport& report, int decimals, DecimalMode mode) {
  std::vector<TableRow> rows;
  for (std::size_t k = 0; k < report.events.size(); ++k) {
    const auto& ev = report.events[k];
    TableRow row;
    row.label = "S" + std::to_string(k + 1);
    for (const auto& p : ev.pose) row.pose.push_back(render(p, decimals, mode));
    for (const auto& r : ev.rho) row.rho.push_back(render(r, decimals, mode));
    row.classification = to_string(ev.classification);
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_table(std::ostream& out, const RobotModel& model, const std::vector<TableRow>& rows) {
  out << "event";
  for (const auto& v : model.pose_vars()) out << '\t' << v;
  for (const auto& v : model.joint_vars()) out << '\t' << v;
  out << "\tclass\n";
  for (const auto& row : rows) {
    out << row.label;
    for (const auto& p : row.pose) out << '\t' << p;
    for (std::size_t k = 0; k < model.joint_vars().size(); ++k) {
      out << '\t' << (k < row.rho.size() ? row.rho[k] : "-");
    }
    out << '\t' << row.classification << '\n';
  }
}

void write_curve_csv(std::ostream& out, const ScanReport& report) {
  out << "t,mu,detA,feasible,event\n";
  char buf[64];
  for (const auto& cs : report.curve) {
    out << to_decimal(cs.t, 8, DecimalMode::kNearest);
    std::snprintf(buf, sizeof buf, ",%.10g,", cs.mu);
    out << buf;
    if (cs.det_a) {
      std::snprintf(buf, sizeof buf, "%.10g", *cs.det_a);
      out << buf;
    }
    out << ',' << (cs.feasible ? 1 : 0) << ',';
    for (std::size_t k = 0; k < report.events.size(); ++k) {
      if (report.events[k].t.mid() == cs.t) out << 'S' << k + 1;
    }
    out << '\n';
  }
}

}  // namespace singtraj
