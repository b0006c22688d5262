#include <json.hpp>

#include "singtraj/singscan/scan.hpp"

namespace singtraj {

namespace {

nlohmann::ordered_json interval_json(const Interval& v, int decimals) {
  return nlohmann::ordered_json{{"lo", to_string(v.lo())},
          {"hi", to_string(v.hi())},
          {"decimal", to_decimal(v.mid(), decimals, DecimalMode::kTruncate)}};
}

}  // namespace

std::string report_json(const RobotModel& model, const ScanReport& report, int decimals,
                        const std::map<std::string, double>& timing) {
  nlohmann::ordered_json doc;
  doc["schema"] = 1;
  doc["model"] = model.name();
  doc["trajectory"] = report.trajectory;
  doc["mode"] = report.mode.to_string();
  doc["verdict"] = to_string(report.verdict);
  doc["candidates"] = report.events.size();
  doc["real_events"] = report.real_events();
  doc["samples"] = report.curve.size();
  doc["feasible_samples"] = report.feasible_samples;
  auto events = nlohmann::ordered_json::array();
  for (std::size_t k = 0; k < report.events.size(); ++k) {
    const auto& ev = report.events[k];
    nlohmann::ordered_json e;
    e["label"] = "S" + std::to_string(k + 1);
    e["t"] = interval_json(ev.t, decimals);
    nlohmann::ordered_json pose;
    for (std::size_t i = 0; i < ev.pose.size(); ++i) pose[model.pose_vars()[i]] = interval_json(ev.pose[i], decimals);
    e["pose"] = pose;
    nlohmann::ordered_json rho = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < ev.rho.size(); ++i) rho[model.joint_vars()[i]] = interval_json(ev.rho[i], decimals);
    e["rho"] = rho;
    e["classification"] = to_string(ev.classification);
    e["certified"] = ev.certified;
    e["singular_mode"] = ev.singular_mode ? ev.singular_mode->to_string() : "";
    e["detA_sign_change"] = ev.detA_sign_change;
    e["boundary"] = ev.boundary;
    e["multiplicity"] = ev.multiplicity;
    events.push_back(std::move(e));
  }
  doc["events"] = std::move(events);
  if (!timing.empty()) doc["timing"] = timing;
  return doc.dump(2) + "\n";
}

}  // namespace singtraj
