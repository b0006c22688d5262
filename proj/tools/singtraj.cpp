#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "singtraj/polycore/errors.hpp"
#include "singtraj/singscan/scan.hpp"

namespace fs = std::filesystem;
using namespace singtraj;

namespace {

struct Config {
  std::string model = "orthoglide";
  std::string trajectory;
  std::string mode;
  std::string out;
  std::string rounding = "truncate";
  int decimals = 2;
  std::size_t samples = 512;
  std::size_t max_basis = GroebnerOptions{}.max_basis;
  unsigned max_degree = GroebnerOptions{}.max_degree;
  bool timing = false;
  // workspace-probe
  std::string space = "pose";
  std::string lo = "-2";
  std::string hi = "2";
  std::size_t steps = 5;
};

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

GroebnerOptions ceilings(const Config& cfg) { return GroebnerOptions{cfg.max_basis, cfg.max_degree}; }

DecimalMode rounding(const Config& cfg) {
  return cfg.rounding == "nearest" ? DecimalMode::kNearest : DecimalMode::kTruncate;
}

void ensure_out(const Config& cfg) {
  if (!cfg.out.empty()) fs::create_directories(cfg.out);
}

std::ofstream open_out(const Config& cfg, const std::string& file) {
  fs::path p = fs::path(cfg.out) / file;
  std::ofstream f(p);
  if (!f) throw std::runtime_error("cannot write " + p.string());
  return f;
}

int cmd_model_info(const Config& cfg) {
  Stopwatch clock;
  RobotModel model = RobotModel::resolve(cfg.model);
  std::cout << "model " << model.name() << "\n";
  for (std::size_t i = 0; i < model.legs(); ++i) {
    std::cout << "F" << i + 1 << " = " << model.constraints()[i].to_string() << "\n";
  }
  SingularityLoci loci = project_singularities(model, ceilings(cfg));
  std::cout << "det(A) = " << loci.det_a.to_string() << "\n";
  std::cout << "det(B) = " << loci.det_b.to_string() << "\n";
  std::cout << "eps = " << loci.eps.to_string() << "\n";
  std::cout << "deg(eps) = " << loci.eps.total_degree() << "\n";
  std::cout << "deg(xi) = " << loci.xi.total_degree() << "\n";
  std::cout << "terms(xi) = " << loci.xi.size() << "\n";
  std::cout << "xi = " << loci.xi.to_string() << "\n";
  const std::size_t n = model.legs();
  for (std::size_t k = 0; k < loci.mu.size(); ++k) {
    const std::size_t leg = k % n;
    const Rational& bound = k < n ? model.limits()[leg].lo : model.limits()[leg].hi;
    std::cout << "mu[" << model.joint_vars()[leg] << " = " << to_string(bound) << "] = " << loci.mu[k].to_string()
              << "\n";
  }
  if (cfg.timing) std::cout << "time " << clock.seconds() << " s\n";
  return 0;
}

int cmd_project(const Config& cfg) {
  Stopwatch clock;
  RobotModel model = RobotModel::resolve(cfg.model);
  Trajectory tr = Trajectory::resolve(cfg.trajectory);
  JointSpaceImage img = project_to_jointspace(model, tr, ceilings(cfg));
  std::cout << "trajectory " << tr.name() << "\n";
  for (const auto& g : img.generators) std::cout << "upsilon: " << g.to_string() << "\n";
  std::cout << "branches " << img.branch_count << "\n";
  const std::vector<Rational> samples = uniform_samples(tr, cfg.samples);
  const auto modes = WorkingMode::all(model.legs());
  ensure_out(cfg);
  if (!cfg.out.empty()) {
    auto f = open_out(cfg, "upsilon.txt");
    for (const auto& g : img.generators) f << g.to_string() << "\n";
  }
  std::size_t fully = 0;
  for (const auto& mode : modes) {
    const auto path = joint_path_eval(img, mode, samples, Rational(1, 1 << 30));
    std::size_t feasible = 0;
    for (const auto& s : path) feasible += s.feasibility == Feasibility::kFeasible ? 1 : 0;
    if (feasible == path.size()) ++fully;
    std::cout << "mode " << mode.to_string() << " feasible " << feasible << "/" << path.size() << "\n";
    if (!cfg.out.empty()) {
      auto f = open_out(cfg, "mode_" + mode.label() + ".csv");
      write_joint_csv(f, img, path);
    }
  }
  std::cout << "fully feasible modes " << fully << "\n";
  if (cfg.timing) std::cout << "time " << clock.seconds() << " s\n";
  return 0;
}

int cmd_verify(const Config& cfg) {
  Stopwatch clock;
  RobotModel model = RobotModel::resolve(cfg.model);
  Trajectory tr = Trajectory::resolve(cfg.trajectory);
  WorkingMode mode;
  if (!cfg.mode.empty()) {
    mode = WorkingMode::parse(cfg.mode);
    if (mode.signs.size() != model.legs()) throw std::invalid_argument("--mode has the wrong number of legs");
  } else {
    JointSpaceImage img = project_to_jointspace(model, tr, ceilings(cfg));
    const std::vector<Rational> samples = uniform_samples(tr, cfg.samples);
    auto tracked = tracked_mode(img, samples);
    if (!tracked) {
      std::cout << "trajectory " << tr.name() << "\nno unique feasible working mode\nverdict infeasible\n";
      return 3;
    }
    mode = *tracked;
  }
  const double t_mode = clock.seconds();
  SingularityLoci loci = project_singularities(model, ceilings(cfg));
  const double t_loci = clock.seconds() - t_mode;
  ScanOptions opts;
  opts.samples = cfg.samples;
  // Boxes well inside one unit of the last printed place.
  Rational cap = 1;
  for (int d = 0; d < cfg.decimals + 3; ++d) cap /= 10;
  opts.width = std::min(opts.width, cap);
  ScanReport report = scan(model, loci, tr, mode, opts);
  const double t_total = clock.seconds();

  std::cout << "trajectory " << tr.name() << "\n";
  std::cout << "mode " << mode.to_string() << "\n";
  std::cout << "candidates " << report.events.size() << "\n";
  std::cout << "real " << report.real_events() << "\n";
  for (std::size_t k = 0; k < report.events.size(); ++k) {
    const auto& ev = report.events[k];
    std::cout << "S" << k + 1 << " t = " << to_decimal(ev.t.mid(), cfg.decimals, rounding(cfg)) << " "
              << to_string(ev.classification) << (ev.certified ? "" : " (uncertified)")
              << (ev.boundary ? " boundary" : "") << (ev.detA_sign_change ? " detA-sign-change" : "") << "\n";
  }
  const auto rows = event_table(report, cfg.decimals, rounding(cfg));
  if (!rows.empty()) write_table(std::cout, model, rows);
  std::cout << "feasible samples " << report.feasible_samples << "/" << report.curve.size() << "\n";
  std::cout << "verdict " << to_string(report.verdict) << "\n";
  if (cfg.timing) std::cout << "time loci " << t_loci << " s, total " << t_total << " s\n";

  if (!cfg.out.empty()) {
    ensure_out(cfg);
    std::map<std::string, double> timing;
    if (cfg.timing) timing = {{"loci_s", t_loci}, {"total_s", t_total}};
    open_out(cfg, "report.json") << report_json(model, report, cfg.decimals, timing);
    auto table = open_out(cfg, "events.tsv");
    write_table(table, model, rows);
    auto curve = open_out(cfg, "curve.csv");
    write_curve_csv(curve, report);
  }
  switch (report.verdict) {
    case Verdict::kSingularityFree: return 0;
    case Verdict::kSingular: return 2;
    case Verdict::kInfeasible: return 3;
  }
  return 1;
}

int cmd_workspace_probe(const Config& cfg) {
  RobotModel model = RobotModel::resolve(cfg.model);
  const Rational lo = parse_rational(cfg.lo);
  const Rational hi = parse_rational(cfg.hi);
  if (!(lo < hi)) throw std::invalid_argument("--lo must be below --hi");
  if (cfg.steps < 2) throw std::invalid_argument("--steps must be at least 2");
  const bool joint = cfg.space == "joint";
  const std::size_t dim = joint ? model.joint_vars().size() : model.pose_vars().size();
  std::ofstream file;
  if (!cfg.out.empty()) {
    fs::path p(cfg.out);
    if (p.has_parent_path()) fs::create_directories(p.parent_path());
    file.open(p);
    if (!file) throw std::runtime_error("cannot write " + cfg.out);
  }
  std::ostream& out = cfg.out.empty() ? std::cout : file;
  const auto& names = joint ? model.joint_vars() : model.pose_vars();
  for (const auto& n : names) out << n << ',';
  out << (joint ? "dkp\n" : "total,feasible\n");
  std::vector<std::size_t> idx(dim, 0);
  for (;;) {
    std::vector<Rational> point;
    for (std::size_t k = 0; k < dim; ++k) {
      point.push_back(lo + (hi - lo) * Rational(static_cast<long>(idx[k]), static_cast<long>(cfg.steps - 1)));
    }
    for (const auto& v : point) out << to_decimal(v, 6, DecimalMode::kNearest) << ',';
    if (joint) {
      out << dkp_count(model, point, ceilings(cfg)) << '\n';
    } else {
      WorkspaceCount c = workspace_member(model, point);
      out << c.total << ',' << c.feasible << '\n';
    }
    std::size_t k = dim;
    while (k > 0 && ++idx[k - 1] == cfg.steps) idx[--k] = 0;
    if (k == 0) break;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Certified singularity analysis of parallel-robot trajectories"};
  app.require_subcommand(1);
  Config cfg;

  auto add_common = [&cfg](CLI::App* sub) {
    sub->add_option("--model", cfg.model, "Built-in model name or JSON file")->capture_default_str();
    sub->add_option("--max-basis", cfg.max_basis, "Groebner basis size ceiling")->capture_default_str();
    sub->add_option("--max-degree", cfg.max_degree, "Groebner degree ceiling")->capture_default_str();
    sub->add_flag("--timing", cfg.timing, "Print and record wall-clock timings");
  };
  auto add_trajectory = [&cfg](CLI::App* sub) {
    sub->add_option("--trajectory", cfg.trajectory, "Built-in trajectory name or JSON file")->required();
    sub->add_option("--samples", cfg.samples, "Sample count over the domain")
        ->check(CLI::Range(std::size_t{2}, std::size_t{1} << 20))
        ->capture_default_str();
    sub->add_option("--out", cfg.out, "Output directory");
  };

  auto* info = app.add_subcommand("model-info", "Print constraints, Jacobian determinants and singular loci");
  add_common(info);

  auto* project = app.add_subcommand("project", "Map a trajectory into the joint space");
  add_common(project);
  add_trajectory(project);

  auto* verify = app.add_subcommand("verify", "Certify whether a trajectory is singularity-free");
  add_common(verify);
  add_trajectory(verify);
  verify->add_option("--mode", cfg.mode, "Working mode such as +++ (default: the unique feasible one)");
  verify->add_option("--decimals", cfg.decimals, "Decimal places in tables")
      ->check(CLI::Range(1, 30))
      ->capture_default_str();
  verify->add_option("--rounding", cfg.rounding, "Decimal cut: truncate or nearest")
      ->check(CLI::IsMember({"truncate", "nearest"}))
      ->capture_default_str();

  auto* probe = app.add_subcommand("workspace-probe", "IKP or DKP solution counts on a grid");
  add_common(probe);
  probe->add_option("--space", cfg.space, "pose (IKP counts) or joint (DKP counts)")
      ->check(CLI::IsMember({"pose", "joint"}))
      ->capture_default_str();
  probe->add_option("--lo", cfg.lo, "Grid lower bound per axis")->capture_default_str();
  probe->add_option("--hi", cfg.hi, "Grid upper bound per axis")->capture_default_str();
  probe->add_option("--steps", cfg.steps, "Grid points per axis")->capture_default_str();
  probe->add_option("--out", cfg.out, "CSV file (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*info) return cmd_model_info(cfg);
    if (*project) return cmd_project(cfg);
    if (*verify) return cmd_verify(cfg);
    if (*probe) return cmd_workspace_probe(cfg);
  } catch (const BlowUpError& e) {
    std::cerr << "singtraj: resource ceiling reached: " << e.what() << " (max-basis " << cfg.max_basis
              << ", max-degree " << cfg.max_degree << ")\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "singtraj: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
