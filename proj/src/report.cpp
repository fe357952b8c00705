#include "dbar/report.hpp"

#include <chrono>
#include <ctime>

namespace dbar {

namespace {

nlohmann::ordered_json complex_json(cplx z) {
  return nlohmann::ordered_json{{"re", z.real()}, {"im", z.imag()}};
}

// JSON has no infinity; report it as a string.
nlohmann::ordered_json number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  return v;
}

nlohmann::ordered_json named(const std::vector<std::pair<std::string, double>>& items) {
  auto out = nlohmann::ordered_json::object();
  for (const auto& [k, v] : items) out[k] = number(v);
  return out;
}

}  // namespace

nlohmann::ordered_json to_json(const SolveReport& r, const std::string& timestamp) {
  nlohmann::ordered_json j;
  j["schema"] = "dbar.solve_report/1";
  j["problem"] = to_string(r.problem);
  j["verdict"] = r.accepted ? "accepted" : "rejected";
  j["residual"] = number(r.residual);
  j["tau"] = r.tau;
  j["p"] = r.p;
  j["domain"] = r.domain;
  j["grid_size"] = r.grid_size;
  j["refined_grid_size"] = r.refined_grid_size ? nlohmann::ordered_json(*r.refined_grid_size)
                                               : nlohmann::ordered_json(nullptr);
  j["trace_method"] = r.trace_method;
  j["checks"] = named(r.checks);
  j["norms"] = named(r.norms);
  if (r.compatibility) {
    const auto& c = *r.compatibility;
    j["compatibility"] = {{"condition", c.condition},
                          {"integral", complex_json(c.integral)},
                          {"value", number(c.value)},
                          {"threshold", c.threshold},
                          {"satisfied", c.satisfied}};
  } else {
    j["compatibility"] = nullptr;
  }
  j["runtime_seconds"] = r.runtime_seconds;
  j["timestamp"] = timestamp;
  return j;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace dbar
