// Acceptance checks, one per criterion. Usage: singtraj_acceptance NN
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>

#include "singtraj/polycore/groebner.hpp"
#include "singtraj/polycore/parse.hpp"
#include "singtraj/singscan/scan.hpp"

using namespace singtraj;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass;
  std::string detail;
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

bool same_up_to_scalar(const Poly& a, const Poly& b) {
  return embed(a, b.vars()).primitive() == b.primitive();
}

const RobotModel& model() {
  static const RobotModel m = RobotModel::orthoglide();
  return m;
}

Outcome det_a() {
  auto start = Clock::now();
  Poly d = determinant(jacobians(model()).a);
  double secs = seconds_since(start);
  Poly expected = parse_poly("-8*rho1*rho2*rho3 + 8*rho1*rho2*z + 8*rho1*rho3*y + 8*rho2*rho3*x", model().vars());
  bool ok = d == expected && secs < 1;
  return {ok, "det(A) = " + d.to_string() + ", " + fmt("%.3f s", secs)};
}

Outcome eps() {
  auto start = Clock::now();
  std::vector<Poly> gens = model().constraints();
  gens.push_back(determinant(jacobians(model()).a));
  auto out = eliminate(gens, model().pose_vars());
  double secs = seconds_since(start);
  if (out.size() != 1) return {false, std::to_string(out.size()) + " generators"};
  Poly expected = parse_poly(
      "rho1^4*rho2^2 + rho1^2*rho2^4 + rho1^4*rho3^2 + 2*rho1^2*rho2^2*rho3^2 + rho2^4*rho3^2 + "
      "rho1^2*rho3^4 + rho2^2*rho3^4 - 16*rho1^2*rho2^2 - 16*rho1^2*rho3^2 - 16*rho2^2*rho3^2",
      out[0].vars());
  bool ok = same_up_to_scalar(out[0], expected) && secs < 60;
  return {ok, "eps = " + out[0].to_string() + ", " + fmt("%.1f s", secs)};
}

Outcome xi_degree() {
  auto start = Clock::now();
  SingularityLoci loci = project_singularities(model());
  double secs = seconds_since(start);
  unsigned deg = loci.xi.total_degree();
  bool ok = deg == 18 && secs < 600;
  return {ok, "deg(xi) = " + std::to_string(deg) + ", " + std::to_string(loci.xi.size()) + " terms, " +
                  fmt("%.1f s", secs)};
}

Outcome joint_limits() {
  auto start = Clock::now();
  auto mu = project_joint_limits(model());
  double secs = seconds_since(start);
  const char* expected[] = {"x^2 + y^2 + z^2 - 4", "x^2 + y^2 + z^2 - 8*x + 12", "x^2 + y^2 + z^2 - 8*y + 12",
                            "x^2 + y^2 + z^2 - 8*z + 12"};
  int found = 0;
  for (const char* e : expected) {
    Poly p = parse_poly(e, mu.front().vars());
    for (const auto& m : mu) {
      if (same_up_to_scalar(m, p)) {
        ++found;
        break;
      }
    }
  }
  bool ok = found == 4 && secs < 10;
  return {ok, std::to_string(found) + "/4 surfaces, " + fmt("%.2f s", secs)};
}

Outcome heart1_verdict() {
  auto start = Clock::now();
  SingularityLoci loci = project_singularities(model());
  Trajectory tr = *Trajectory::builtin("heart1");
  ScanReport r = scan(model(), loci, tr, WorkingMode::parse("+++"));
  double secs = seconds_since(start);
  std::ostringstream detail;
  bool ok = r.events.size() == 4 && secs < 300;
  const double paper_t[] = {-1.51, -0.97, 0.97, 1.51};
  detail << r.events.size() << " roots, t =";
  for (std::size_t i = 0; i < r.events.size(); ++i) {
    double t = to_double(r.events[i].t.mid());
    detail << ' ' << fmt("%.6f", t);
    if (i < 4 && std::abs(t - paper_t[i]) > 0.005) {
      ok = false;
      detail << " (off " << fmt("%+.4f", t - paper_t[i]) << ')';
    }
  }
  const char* table[4][8] = {{"S1", "-1.13", "0.35", "1.00", "0.55", "1.66", "2.60", "spurious-projection"},
                             {"S2", "-0.65", "0.80", "1.00", "0.88", "2.40", "2.71", "spurious-projection"},
                             {"S3", "0.65", "0.80", "1.00", "2.18", "2.40", "2.71", "real-singularity"},
                             {"S4", "1.13", "0.35", "1.00", "2.83", "1.66", "2.60", "real-singularity"}};
  auto rows = event_table(r, 2);
  int matching = 0;
  for (std::size_t i = 0; i < rows.size() && i < 4; ++i) {
    std::vector<std::string> got{rows[i].label};
    got.insert(got.end(), rows[i].pose.begin(), rows[i].pose.end());
    got.insert(got.end(), rows[i].rho.begin(), rows[i].rho.end());
    got.push_back(rows[i].classification);
    bool same = got.size() == 8;
    for (std::size_t k = 0; same && k < 8; ++k) same = got[k] == table[i][k];
    matching += same;
  }
  bool real_positive = r.real_events() == 2 && r.events.size() == 4 &&
                       r.events[2].classification == EventClass::kReal &&
                       r.events[3].classification == EventClass::kReal;
  ok = ok && real_positive && matching == 4 && r.verdict == Verdict::kSingular;
  detail << "; real " << r.real_events() << "; table rows matching " << matching << "/4; "
         << fmt("%.1f s", secs);
  return {ok, detail.str()};
}

Outcome heart2_helix_free() {
  auto start = Clock::now();
  SingularityLoci loci = project_singularities(model());
  std::ostringstream detail;
  bool ok = true;
  for (const char* name : {"heart2", "helix"}) {
    auto t0 = Clock::now();
    Trajectory tr = *Trajectory::builtin(name);
    ScanReport r = scan(model(), loci, tr, WorkingMode::parse("+++"));
    double secs = seconds_since(t0);
    ok = ok && r.events.empty() && r.verdict == Verdict::kSingularityFree && secs < 300;
    detail << name << ": " << r.events.size() << " roots, " << to_string(r.verdict) << ", " << fmt("%.1f s", secs)
           << "; ";
  }
  detail << "loci " << fmt("%.1f s", seconds_since(start));
  return {ok, detail.str()};
}

// Closed-form joint values, '+' branch, as functions of t.
using ClosedForm = std::function<double(int leg, double t)>;

double helix_closed(int leg, double t) {
  double s = std::sin(t);
  double c = std::cos(t);
  switch (leg) {
    case 0: return s + std::sqrt(400 * s * s - t * t + 1200) / 20;
    case 1: return c + std::sqrt(400 * c * c - t * t + 1200) / 20;
    default: return t / 20 + std::sqrt(3.0);
  }
}

double heart1_closed(int leg, double t) {
  double s = std::sin(t);
  double c = std::cos(t);
  switch (leg) {
    case 0:
      return 8.0 / 7 * std::pow(s, 3) +
             std::sqrt(1996 * std::pow(s, 6) - 400 * std::pow(s, 8) + 560 * std::pow(s, 6) * c -
                       100 * std::pow(s, 4) * c - 2009 * std::pow(s, 4) + 2190 * std::pow(c, 3) -
                       1379 * c * c - 1320 * c + 3988) /
                 35;
    case 1:
      return -4.0 / 7 * std::pow(c, 4) - 2.0 / 5 * std::pow(c, 3) - 1.0 / 7 * c * c + 43.0 / 35 * c + 2.0 / 7 +
             std::sqrt(64 * std::pow(c, 6) - 192 * std::pow(c, 4) + 192 * c * c + 83) / 7;
    default:
      return 1 + std::sqrt(3200 - 400 * std::pow(c, 8) - 560 * std::pow(c, 7) + 1204 * std::pow(c, 6) +
                           1580 * std::pow(c, 5) - 3221 * std::pow(c, 4) + 710 * std::pow(c, 3) +
                           3051 * c * c - 860 * c) /
                     35;
  }
}

double heart2_closed(int leg, double t) {
  double s = std::sin(t);
  double c = std::cos(t);
  switch (leg) {
    case 0:
      return 4.0 / 5 * std::pow(s, 3) +
             std::sqrt(76 * std::pow(s, 6) - 16 * std::pow(s, 8) + 16 * std::pow(s, 6) * c +
                       12 * std::pow(s, 4) * c - 85 * std::pow(s, 4) + 96 * std::pow(c, 3) - 66 * c * c -
                       60 * c + 321) /
                 10;
    case 1:
      return -2.0 / 5 * std::pow(c, 4) - 1.0 / 5 * std::pow(c, 3) - 1.0 / 10 * c * c + 4.0 / 5 * c + 1.0 / 5 +
             std::sqrt(16 * std::pow(c, 6) - 48 * std::pow(c, 4) + 48 * c * c + 59) / 5;
    default:
      return 1 + std::sqrt(332 - 16 * std::pow(c, 8) - 16 * std::pow(c, 7) + 52 * std::pow(c, 6) +
                           60 * std::pow(c, 5) - 145 * std::pow(c, 4) + 24 * std::pow(c, 3) + 132 * c * c -
                           32 * c) /
                     10;
  }
}

Outcome closed_forms() {
  const std::map<std::string, ClosedForm> forms{
      {"helix", helix_closed}, {"heart1", heart1_closed}, {"heart2", heart2_closed}};
  const Rational width(Integer(1), Integer("10000000000"));
  std::ostringstream detail;
  bool ok = true;
  for (const char* name : {"heart1", "heart2", "helix"}) {
    Trajectory tr = *Trajectory::builtin(name);
    JointSpaceImage img = project_to_jointspace(model(), tr);
    auto samples = uniform_samples(tr, 32);
    auto mode = tracked_mode(img, samples);
    if (!mode) {
      ok = false;
      detail << name << ": no tracked mode; ";
      continue;
    }
    auto values = joint_path_eval(img, *mode, samples, width);
    int agree = 0;
    double worst = 0;
    for (std::size_t k = 0; k < values.size(); ++k) {
      double t = to_double(samples[k]);
      bool all = true;
      for (int leg = 0; leg < 3; ++leg) {
        const auto& rho = values[k].rho[leg];
        if (!rho || rho->width() > width) {
          all = false;
          continue;
        }
        double closed = forms.at(name)(leg, t);
        double lo = to_double(rho->lo());
        double hi = to_double(rho->hi());
        double gap = closed < lo ? lo - closed : (closed > hi ? closed - hi : 0.0);
        worst = std::max(worst, gap);
        // Double evaluation of the closed form carries ~1e-14 error.
        all = all && gap <= 1e-12;
      }
      agree += all;
    }
    ok = ok && agree == 32;
    detail << name << " " << mode->to_string() << ": " << agree << "/32 (max gap " << fmt("%.1e", worst) << "); ";
  }
  return {ok, detail.str()};
}

Outcome branch_count() {
  std::ostringstream detail;
  bool ok = true;
  for (const char* name : {"heart1", "heart2", "helix"}) {
    Trajectory tr = *Trajectory::builtin(name);
    JointSpaceImage img = project_to_jointspace(model(), tr);
    // Interior points, offset from the uniform grid.
    auto grid = uniform_samples(tr, 17);
    std::vector<Rational> samples;
    for (std::size_t k = 0; k + 1 < grid.size(); ++k) samples.push_back((grid[k] + grid[k + 1]) / 2);
    std::vector<int> real(samples.size(), 0);
    std::vector<int> feasible(samples.size(), 0);
    for (const auto& mode : WorkingMode::all(3)) {
      auto values = joint_path_eval(img, mode, samples);
      for (std::size_t k = 0; k < values.size(); ++k) {
        real[k] += values[k].reachable;
        feasible[k] += values[k].feasibility == Feasibility::kFeasible;
      }
    }
    int good = 0;
    for (std::size_t k = 0; k < samples.size(); ++k) good += real[k] == 8 && feasible[k] == 1;
    ok = ok && good == 16 && img.branch_count == 8;
    detail << name << ": " << good << "/16 samples with 8 real, 1 feasible; ";
  }
  return {ok, detail.str()};
}

Poly random_poly(std::mt19937& rng, const VarSetPtr& vars, int terms, int max_exp) {
  std::uniform_int_distribution<int> coeff(-9, 9);
  std::uniform_int_distribution<int> expo(0, max_exp);
  std::vector<Term> out;
  for (int k = 0; k < terms; ++k) {
    Monomial m;
    for (std::size_t v = 0; v < vars->size(); ++v) m.set(v, static_cast<unsigned>(expo(rng)));
    out.push_back(Term{m, Rational(coeff(rng))});
  }
  return Poly::from_terms(vars, std::move(out));
}

// Descartes-rule bisection, independent of the Sturm machinery.
using QPoly = std::vector<Rational>;

QPoly affine(const QPoly& p, const Rational& a, const Rational& b) {
  // p(a + b x)
  QPoly out(p.size(), Rational(0));
  for (std::size_t i = p.size(); i-- > 0;) {
    // out = out * (a + b x) + p[i]
    QPoly next(p.size(), Rational(0));
    for (std::size_t k = 0; k < p.size(); ++k) {
      if (out[k] == 0) continue;
      next[k] += out[k] * a;
      if (k + 1 < p.size()) next[k + 1] += out[k] * b;
    }
    next[0] += p[i];
    out = std::move(next);
  }
  return out;
}

int descartes_01(const QPoly& p) {
  // Variations of (x + 1)^n p(1 / (x + 1)).
  QPoly rev(p.rbegin(), p.rend());
  QPoly q = affine(rev, Rational(1), Rational(1));
  int changes = 0;
  int last = 0;
  for (const auto& c : q) {
    int s = sgn(c);
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

Rational eval(const QPoly& p, const Rational& x) {
  Rational v = 0;
  for (std::size_t i = p.size(); i-- > 0;) v = v * x + p[i];
  return v;
}

int bisection_count(const QPoly& p, const Rational& lo, const Rational& hi, int depth) {
  QPoly local = affine(p, lo, hi - lo);
  int v = descartes_01(local);
  if (v <= 1 || depth > 200) return v;
  Rational mid = (lo + hi) / 2;
  int at_mid = eval(p, mid) == 0 ? 1 : 0;
  return bisection_count(p, lo, mid, depth + 1) + at_mid + bisection_count(p, mid, hi, depth + 1);
}

Outcome properties() {
  std::ostringstream detail;
  bool ok = true;

  // S-polynomials of computed bases.
  std::mt19937 rng(2024);
  VarSetPtr vars = VarSet::make({"x", "y", "z"});
  int bases = 0;
  int bad_pairs = 0;
  auto check_basis = [&](const std::vector<Poly>& g, const MonomialOrder& ord) {
    ++bases;
    for (std::size_t i = 0; i < g.size(); ++i) {
      for (std::size_t j = i + 1; j < g.size(); ++j) {
        if (!normal_form(s_polynomial(g[i], g[j], ord), g, ord).is_zero()) ++bad_pairs;
      }
    }
  };
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Poly> gens{random_poly(rng, vars, 3, 2), random_poly(rng, vars, 3, 2)};
    check_basis(buchberger(gens, vars->order()).generators, vars->order());
  }
  for (std::size_t leg = 0; leg < 3; ++leg) {
    std::vector<Poly> gens = model().constraints();
    gens.push_back(Poly::variable(model().vars(), model().joint_vars()[leg]) - Poly::constant(model().vars(), 4));
    check_basis(buchberger(gens, model().vars()->order()).generators, model().vars()->order());
  }
  ok = ok && bad_pairs == 0;
  detail << bases << " bases, " << bad_pairs << " S-pairs not reducing; ";

  // Sturm counts against Descartes bisection.
  std::uniform_int_distribution<int> coeff(-20, 20);
  std::uniform_int_distribution<int> degree(1, 9);
  int mismatches = 0;
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Integer> c;
    int d = degree(rng);
    for (int k = 0; k <= d; ++k) c.emplace_back(coeff(rng));
    if (c.back() == 0) c.back() = 1;
    UPoly p = squarefree_part(UPoly(c));
    if (p.degree() < 1) continue;
    Rational bound = root_bound(p);
    SturmSequence s(p);
    int sturm = s.count(-bound, bound);
    QPoly q;
    for (const auto& v : p.coeffs()) q.emplace_back(v);
    int oracle = bisection_count(q, -bound, bound, 0) + (eval(q, bound) == 0 ? 1 : 0);
    int isolated = static_cast<int>(isolate(p).size());
    if (sturm != oracle || isolated != oracle) ++mismatches;
  }
  ok = ok && mismatches == 0;
  detail << "200 random polynomials, " << mismatches << " count mismatches; ";

  // IKP closure at random reachable poses.
  std::uniform_int_distribution<int> num(-15, 15);
  int poses = 0;
  int residual_failures = 0;
  while (poses < 100) {
    std::vector<Rational> pose{Rational(num(rng), 10), Rational(num(rng), 10), Rational(num(rng), 10)};
    for (auto& v : pose) v.canonicalize();
    auto sols = ikp(model(), pose);
    if (sols.empty()) continue;
    ++poses;
    std::vector<Rational> point(model().vars()->size());
    for (std::size_t k = 0; k < 3; ++k) point[model().pose_index(k)] = pose[k];
    for (const auto& sol : sols) {
      for (std::size_t leg = 0; leg < 3; ++leg) {
        // The leg constraint at the pose, as a polynomial in its joint.
        Poly f = model().constraints()[leg];
        for (std::size_t k = 0; k < 3; ++k) f = f.substitute(model().pose_index(k), pose[k]);
        UPoly u = UPoly::from_poly(f);
        if (!vanishes_at(u, sol.rho[leg])) ++residual_failures;
      }
    }
  }
  ok = ok && residual_failures == 0;
  detail << poses << " poses, " << residual_failures << " nonzero residuals";
  return {ok, detail.str()};
}

Outcome workspace_probe() {
  std::vector<Rational> rho{Rational(2), Rational(2), Rational(2)};
  int dkp = dkp_count(model(), rho);
  std::vector<Rational> pose{Rational(0), Rational(0), Rational(0)};
  WorkspaceCount w = workspace_member(model(), pose);
  bool ok = dkp == 2 && w.feasible == 1 && w.total == 8;
  return {ok, "dkp(2,2,2) = " + std::to_string(dkp) + ", pose (0,0,0): " + std::to_string(w.total) +
                  " solutions, " + std::to_string(w.feasible) + " feasible"};
}

}  // namespace

int main(int argc, char** argv) {
  const std::map<std::string, std::pair<const char*, Outcome (*)()>> criteria{
      {"01", {"det_a", det_a}},
      {"02", {"eps", eps}},
      {"03", {"xi_degree", xi_degree}},
      {"04", {"joint_limits", joint_limits}},
      {"05", {"heart1_verdict", heart1_verdict}},
      {"06", {"heart2_helix_free", heart2_helix_free}},
      {"07", {"closed_forms", closed_forms}},
      {"08", {"branch_count", branch_count}},
      {"09", {"properties", properties}},
      {"10", {"workspace_probe", workspace_probe}},
  };
  if (argc != 2 || !criteria.contains(argv[1])) {
    std::fprintf(stderr, "usage: singtraj_acceptance 01..10\n");
    return 1;
  }
  const auto& [name, run] = criteria.at(argv[1]);
  Outcome out;
  try {
    out = run();
  } catch (const std::exception& e) {
    out = {false, std::string("error: ") + e.what()};
  }
  std::printf("criterion %s %s: %s (%s)\n", argv[1], name, out.pass ? "PASS" : "FAIL", out.detail.c_str());
  return out.pass ? 0 : 1;
}
