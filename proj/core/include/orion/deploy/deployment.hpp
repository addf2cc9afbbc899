#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "orion/gateway/translator.hpp"
#include "orion/rapp/composer.hpp"
#include "orion/xapp/enforcer.hpp"

namespace orion::booking {
class BookingService;
}
namespace orion::a1 {
class MediatorService;
}
namespace orion::xapp {
class XappService;
}
namespace orion::node {
class E2NodeSim;
}
namespace orion::gateway {
class GatewayService;
}

namespace orion::deploy {

struct Ports {
  std::uint16_t gateway = 0;
  std::uint16_t booking = 0;
  std::uint16_t tools = 0;
  std::uint16_t mediator = 0;
  std::uint16_t xapp = 0;
  std::uint16_t e2 = 0;
  std::uint16_t rapp = 0;
  std::uint16_t node_http_base = 0;  // node i serves on base + i; 0 = ephemeral
};

struct DeploymentConfig {
  std::string host = "127.0.0.1";
  Ports ports;
  std::size_t booking_threshold = 10;
  std::optional<std::uint64_t> booking_id_seed = 7;
  rapp::ComposerConfig composer;
  std::vector<model::CellConfig> nodes;  // empty = one default cell
  xapp::EnforcerConfig enforcer;
  std::optional<std::filesystem::path> mediator_journal;
  int clarification_bound = 2;
  bool auto_activate = true;
  std::chrono::milliseconds enforcement_wait{5000};
  std::chrono::milliseconds node_setup_wait{5000};
};

// Strict: unknown keys and type mismatches raise Error(invalid_config).
DeploymentConfig parse_deployment_config(const nlohmann::json& j);
DeploymentConfig load_deployment_config(const std::filesystem::path& path);

struct Endpoints {
  std::string gateway;
  std::string booking;
  std::string tools;
  std::string mediator;
  std::string xapp;
  std::string rapp;
  std::string e2;  // host:port of the E2 termination
  std::vector<std::string> node_ledgers;
};

void to_json(nlohmann::json& j, const Endpoints& e);

// Every service of the pipeline, in one process: booking mock, tool server,
// mediator, xApp with simulated nodes, rApp composer and the intent gateway.
class Deployment {
 public:
  explicit Deployment(DeploymentConfig config = {});
  ~Deployment();
  Deployment(const Deployment&) = delete;
  Deployment& operator=(const Deployment&) = delete;

  // Starts services in dependency order; on failure stops whatever started
  // and rethrows.
  void start(std::shared_ptr<gateway::Translator> translator);
  void stop();

  Endpoints endpoints() const;
  booking::BookingService& booking();
  a1::MediatorService& mediator();
  xapp::XappService& xapp();
  node::E2NodeSim& node(std::size_t index);
  std::size_t node_count() const noexcept;
  gateway::GatewayService& gateway();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace orion::deploy
