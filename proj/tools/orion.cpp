#include <spdlog/spdlog.h>

#include <CLI11.hpp>
#include <atomic>
#include <csignal>
#include <cstdlib>
#include <iostream>
#include <thread>

#include "orion/deploy/deployment.hpp"
#include "orion/error.hpp"
#include "orion/eval/dataset.hpp"
#include "orion/eval/rules.hpp"
#include "orion/eval/runner.hpp"
#include "orion/gateway/deterministic_translator.hpp"
#include "orion/gateway/live_translator.hpp"
#include "orion/gateway/replay_translator.hpp"
#include "orion/gateway/service.hpp"

namespace {

std::atomic<bool> g_interrupted{false};

extern "C" void on_signal(int) { g_interrupted = true; }

struct AdapterOptions {
  std::string adapter = "deterministic";
  std::string transcript;
  std::string live_url;
  std::string live_model;
  std::string live_key_env = "ORION_LIVE_API_KEY";
};

void add_adapter_options(CLI::App* cmd, AdapterOptions& o) {
  cmd->add_option("--adapter", o.adapter, "Translator adapter")
      ->check(CLI::IsMember({"deterministic", "replay", "live"}));
  cmd->add_option("--transcript", o.transcript, "Recorded decisions for the replay adapter (JSONL)");
  cmd->add_option("--live-url", o.live_url, "Base URL of a chat-completions endpoint (http://host:port)");
  cmd->add_option("--live-model", o.live_model, "Model name for the live adapter");
  cmd->add_option("--live-key-env", o.live_key_env, "Environment variable holding the live API key");
}

std::shared_ptr<orion::gateway::Translator> make_translator(const AdapterOptions& o) {
  using namespace orion::gateway;
  if (o.adapter == "replay") {
    if (o.transcript.empty()) throw orion::Error(orion::Errc::invalid_argument, "--transcript is required for replay");
    return std::make_shared<ReplayTranslator>(std::filesystem::path(o.transcript));
  }
  if (o.adapter == "live") {
    LiveTranslatorConfig cfg;
    cfg.base_url = o.live_url;
    cfg.model = o.live_model;
    if (const char* key = std::getenv(o.live_key_env.c_str())) cfg.api_key = key;
    return std::make_shared<LiveTranslator>(cfg);
  }
  return std::make_shared<DeterministicTranslator>();
}

orion::deploy::DeploymentConfig deployment_config(const std::string& path) {
  if (path.empty()) return {};
  return orion::deploy::load_deployment_config(path);
}

int gen_dataset(std::uint64_t seed, const std::string& out) {
  auto entries = orion::eval::generate_dataset(seed);
  orion::eval::write_dataset(out, entries);
  std::cout << "wrote " << entries.size() << " entries to " << out << "\n";
  return 0;
}

int run(const std::string& dataset_path, const AdapterOptions& adapter, const std::string& report_dir,
        const std::string& config_path, const std::string& gateway_url) {
  auto dataset = orion::eval::load_dataset(dataset_path);
  std::unique_ptr<orion::deploy::Deployment> deployment;
  std::string url = gateway_url;
  if (url.empty()) {
    // No external gateway: every service runs in this process on ephemeral ports.
    auto cfg = deployment_config(config_path);
    cfg.ports = {};
    deployment = std::make_unique<orion::deploy::Deployment>(cfg);
    deployment->start(make_translator(adapter));
    url = deployment->endpoints().gateway;
  }
  orion::gateway::GatewayClient client(url);
  orion::eval::RunOptions opts;
  opts.stop = &g_interrupted;
  opts.progress = [&](std::size_t i, const orion::eval::EntryResult& r) {
    std::cerr << "[" << i + 1 << "/" << dataset.size() << "] " << r.id << (r.success() ? " ok" : " FAILED")
              << (r.failure ? " (" + *r.failure + ")" : "") << "\n";
  };
  auto report = orion::eval::run_suite(dataset, client, adapter.adapter, opts);
  if (deployment) deployment->stop();

  orion::eval::emit_report(report, report_dir);
  std::vector<orion::gateway::TranscriptEntry> transcript;
  for (const auto& e : report.entries) transcript.push_back(e.observed);
  orion::gateway::write_transcript(std::filesystem::path(report_dir) / "transcript.jsonl", transcript);
  std::cout << orion::eval::summary_table(report);
  return report.truncated ? 130 : 0;
}

int check_rules(const std::string& dataset_path, const std::string& transcript_path) {
  auto dataset = orion::eval::load_dataset(dataset_path);
  auto transcript = orion::gateway::load_transcript(transcript_path);
  std::size_t checked = 0;
  std::size_t flagged = 0;
  std::map<std::string, std::size_t> by_rule;
  for (const auto& entry : dataset) {
    auto it = transcript.find(entry.id);
    if (it == transcript.end()) continue;
    ++checked;
    orion::eval::Observation obs{it->second.tool_calls, it->second.refusal, it->second.clarification};
    auto violations = orion::eval::check_tool_use_rules(entry, obs);
    if (violations.empty()) continue;
    ++flagged;
    for (const auto& v : violations) {
      ++by_rule[std::string(orion::eval::to_string(v.rule))];
      std::cout << entry.id << " " << orion::eval::to_string(v.rule) << " " << (v.field.empty() ? "-" : v.field)
                << " " << v.detail << "\n";
    }
  }
  std::cout << checked << " entries checked, " << flagged << " with violations";
  for (const auto& [rule, n] : by_rule) std::cout << ", " << rule << "=" << n;
  std::cout << "\n";
  return flagged == 0 ? 0 : 1;
}

int demo(const std::string& config_path, const AdapterOptions& adapter) {
  orion::deploy::Deployment deployment(deployment_config(config_path.empty() ? "config/demo.json" : config_path));
  deployment.start(make_translator(adapter));
  std::cout << nlohmann::json(deployment.endpoints()).dump(2) << "\n" << std::flush;
  spdlog::info("all services up; Ctrl-C to stop");
  while (!g_interrupted) std::this_thread::sleep_for(std::chrono::milliseconds(100));
  deployment.stop();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ORION intent-to-RAN pipeline testbed"};
  app.require_subcommand(1);
  std::string log_level = "warn";
  app.add_option("--log-level", log_level, "trace, debug, info, warn, error or off");

  std::uint64_t seed = 1;
  std::string out;
  auto* gen = app.add_subcommand("gen-dataset", "Generate the 100-intent labelled dataset");
  gen->add_option("--seed", seed, "Generator seed")->required();
  gen->add_option("--out", out, "Output JSONL file")->required();

  std::string dataset;
  std::string report_dir;
  std::string config_path;
  std::string gateway_url;
  AdapterOptions adapter;
  auto* run_cmd = app.add_subcommand("run", "Drive a dataset through the pipeline and write a report");
  run_cmd->add_option("--dataset", dataset, "Dataset JSONL file")->required()->check(CLI::ExistingFile);
  run_cmd->add_option("--report", report_dir, "Report directory")->required();
  run_cmd->add_option("--config", config_path, "Deployment config for the in-process services");
  run_cmd->add_option("--gateway", gateway_url, "Use a running gateway instead of starting services");
  add_adapter_options(run_cmd, adapter);

  std::string transcript;
  auto* check = app.add_subcommand("check-rules", "Score recorded tool calls against the tool-use rules");
  check->add_option("--dataset", dataset, "Dataset JSONL file")->required()->check(CLI::ExistingFile);
  check->add_option("--transcript", transcript, "Transcript JSONL file")->required()->check(CLI::ExistingFile);

  bool up = false;
  auto* demo_cmd = app.add_subcommand("demo", "Launch every service with a bundled config");
  demo_cmd->add_flag("--up", up, "Start the services and keep them running")->required();
  demo_cmd->add_option("--config", config_path, "Deployment config (default config/demo.json)");
  add_adapter_options(demo_cmd, adapter);

  CLI11_PARSE(app, argc, argv);
  spdlog::set_level(spdlog::level::from_str(log_level));
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);

  try {
    if (*gen) return gen_dataset(seed, out);
    if (*run_cmd) return run(dataset, adapter, report_dir, config_path, gateway_url);
    if (*check) return check_rules(dataset, transcript);
    if (*demo_cmd) {
      if (log_level == "warn") spdlog::set_level(spdlog::level::info);
      return demo(config_path, adapter);
    }
  } catch (const orion::Error& e) {
    std::cerr << "orion: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "orion: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
