#include "picentlab/report.hpp"

#include <sstream>

namespace picent {

bool VerificationReport::verdict() const {
  for (const auto& c : checks) {
    if (!c.passed) return false;
  }
  return true;
}

void VerificationReport::run_check(const std::string& name, const std::string& anchor,
                                   const std::function<bool(Json& witness)>& body) {
  CheckResult r{name, anchor, false, nullptr, 0};
  Stopwatch sw;
  try {
    r.passed = body(r.witness);
  } catch (const std::exception& e) {
    r.passed = false;
    r.witness = Json{{"error", e.what()}};
  }
  r.millis = sw.millis();
  checks.push_back(std::move(r));
}

void VerificationReport::add_label(std::string text, std::string justification) {
  labels.push_back(Label{std::move(text), std::move(justification), true});
}

Json VerificationReport::to_json(bool with_timing) const {
  Json out;
  out["command"] = command;
  out["params"] = params;
  out["version"] = std::string(kVersion);
  out["seed"] = seed ? Json(*seed) : Json(nullptr);
  Json cs = Json::array();
  for (const auto& c : checks) {
    Json j;
    j["name"] = c.name;
    j["anchor"] = c.anchor;
    j["status"] = c.passed ? "pass" : "fail";
    j["witness"] = c.witness;
    if (with_timing) j["millis"] = c.millis;
    cs.push_back(std::move(j));
  }
  out["checks"] = std::move(cs);
  out["verdict"] = verdict() ? "pass" : "fail";
  Json ls = Json::array();
  for (const auto& l : labels) {
    ls.push_back(Json{{"text", l.text},
                      {"justification", l.justification},
                      {"kind", std::string(kPaperJustified)},
                      {"holds", l.holds && verdict()}});
  }
  out["labels"] = std::move(ls);
  if (!data.is_null()) out["data"] = data;
  if (with_timing) out["timing"] = timing;
  return out;
}

std::string VerificationReport::to_text() const {
  std::ostringstream os;
  os << command << " " << params.dump() << "\n";
  for (const auto& c : checks) {
    os << "  [" << (c.passed ? "PASS" : "FAIL") << "] " << c.name << " (" << c.anchor << ", "
       << c.millis << " ms)";
    if (!c.witness.is_null()) os << " witness=" << c.witness.dump();
    os << "\n";
  }
  for (const auto& l : labels) {
    os << "  label (" << kPaperJustified << "): " << l.text
       << (l.holds && verdict() ? "" : " [not established]") << "\n";
  }
  os << "verdict: " << (verdict() ? "pass" : "fail") << "\n";
  return os.str();
}

}  // namespace picent
