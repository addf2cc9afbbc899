#include <fmt/format.h>

#include <fstream>
#include <sstream>

#include "orion/error.hpp"
#include "orion/eval/runner.hpp"
#include "orion/model/json.hpp"

namespace orion::eval {

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::trunc | std::ios::binary);
  if (!out) throw Error(Errc::io_error, "cannot write " + path.string());
  out << content;
  if (!out) throw Error(Errc::io_error, "write failed for " + path.string());
}

}  // namespace

std::string entries_csv(const RunReport& report) {
  std::ostringstream out;
  out << "id,expected,predicted,correct,policy_created,enforced,policy_state,failure,violations";
  for (auto stage : model::kStages) out << ',' << model::to_string(stage) << "_ms";
  out << '\n';
  for (const auto& e : report.entries) {
    std::string rules;
    for (const auto& v : e.violations) rules += (rules.empty() ? "" : ";") + std::string(to_string(v.rule));
    out << csv_field(e.id) << ',' << model::to_string(e.expected) << ','
        << (e.predicted ? std::string(model::to_string(*e.predicted)) : "") << ',' << (e.correct() ? 1 : 0) << ','
        << (e.policy_created ? 1 : 0) << ',' << (e.enforced ? 1 : 0) << ',' << e.policy_state.value_or("") << ','
        << e.failure.value_or("") << ',' << rules;
    for (auto stage : model::kStages) {
      out << ',';
      if (auto v = e.timings.get(stage)) out << fmt::format("{:.3f}", *v);
    }
    out << '\n';
  }
  return out.str();
}

std::string summary_table(const RunReport& report) {
  std::string out;
  out += fmt::format("{:<16} {:>5} {:>12} {:>13} {:>14} {:>10}\n", "Adapter", "N", "Success (%)", "Accuracy (%)",
                     "Predicted (%)", "Enforced");
  out += fmt::format("{:<16} {:>5} {:>12.1f} {:>13.1f} {:>14.1f} {:>10}\n", report.adapter, report.entries.size(),
                     100.0 * report.success_rate(), 100.0 * report.classification_accuracy(),
                     100.0 * report.prediction_rate(), report.enforced());
  if (report.usage.is_object() && report.usage.contains("total_tokens")) {
    out += fmt::format("tokens: {} prompt, {} completion, {} total\n", report.usage.value("prompt_tokens", 0),
                       report.usage.value("completion_tokens", 0), report.usage.value("total_tokens", 0));
  }
  out += "\n";
  out += fmt::format("{:<30} {:>5} {:>12} {:>12}\n", "Stage", "n", "mean (ms)", "stddev (ms)");
  for (const auto& [stage, s] : report.stage_stats()) {
    out += fmt::format("{:<30} {:>5} {:>12.3f} {:>12.3f}\n", model::to_string(stage), s.n, s.mean, s.stddev);
  }
  std::map<std::string, std::size_t> causes;
  for (const auto& e : report.entries) {
    if (e.failure) ++causes[*e.failure];
  }
  if (!causes.empty()) {
    out += "\nFailures by cause\n";
    for (const auto& [cause, n] : causes) out += fmt::format("  {:<28} {}\n", cause, n);
  }
  if (report.truncated) {
    out += fmt::format("\nTRUNCATED: {} of {} entries processed\n", report.entries.size(), report.planned);
  }
  return out;
}

void emit_report(const RunReport& report, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(Errc::io_error, "cannot create " + dir.string() + ": " + ec.message());
  write_file(dir / "report.json", nlohmann::json(report).dump(2) + "\n");
  write_file(dir / "entries.csv", entries_csv(report));
  write_file(dir / "summary.txt", summary_table(report));
}

}  // namespace orion::eval
