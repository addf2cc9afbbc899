#include "orion/deploy/deployment.hpp"

#include <spdlog/spdlog.h>

#include <fstream>

#include "orion/a1/service.hpp"
#include "orion/booking/service.hpp"
#include "orion/error.hpp"
#include "orion/gateway/service.hpp"
#include "orion/model/json.hpp"
#include "orion/model/rules.hpp"
#include "orion/node/node_sim.hpp"
#include "orion/rapp/service.hpp"
#include "orion/tools/server.hpp"
#include "orion/xapp/service.hpp"
#include "util/json_read.hpp"

namespace orion::deploy {

using nlohmann::json;

namespace {

using namespace jsonio;

std::uint16_t port_of(const json& j, const char* key) {
  if (const auto* v = find_non_null(j, key)) return int_in<std::uint16_t>(*v, key, 0, 65535);
  return 0;
}

std::chrono::milliseconds ms_of(const json& j, const char* key, std::chrono::milliseconds fallback) {
  if (const auto* v = find_non_null(j, key)) return std::chrono::milliseconds(int_in<std::int64_t>(*v, key, 0, 3'600'000));
  return fallback;
}

void parse_into(const json& j, DeploymentConfig& c) {
  require_object(j, "deployment config");
  reject_unknown(j, {"host", "ports", "booking", "composer", "nodes", "enforcer", "mediator", "gateway"},
                 "deployment config");
  if (auto host = opt_string(j, "host")) c.host = *host;
  if (const auto* p = find_non_null(j, "ports")) {
    require_object(*p, "ports");
    reject_unknown(*p, {"gateway", "booking", "tools", "mediator", "xapp", "e2", "rapp", "node_http_base"}, "ports");
    c.ports = {port_of(*p, "gateway"), port_of(*p, "booking"), port_of(*p, "tools"),
               port_of(*p, "mediator"), port_of(*p, "xapp"),    port_of(*p, "e2"),
               port_of(*p, "rapp"),    port_of(*p, "node_http_base")};
  }
  if (const auto* b = find_non_null(j, "booking")) {
    require_object(*b, "booking");
    reject_unknown(*b, {"threshold", "id_seed"}, "booking");
    if (const auto* t = find_non_null(*b, "threshold")) c.booking_threshold = int_in<std::size_t>(*t, "threshold", 1, 1'000'000);
    if (auto it = b->find("id_seed"); it != b->end()) {
      c.booking_id_seed = it->is_null() ? std::nullopt : std::optional<std::uint64_t>(int_in<std::uint64_t>(*it, "id_seed", 0, INT64_MAX));
    }
  }
  if (const auto* r = find_non_null(j, "composer")) {
    require_object(*r, "composer");
    reject_unknown(*r, {"ric_id", "mcc", "mnc", "nci", "sst_profile", "id_seed", "fixed_policy_id", "fixed_sd"}, "composer");
    auto& k = c.composer;
    if (auto v = opt_string(*r, "ric_id")) k.ric_id = *v;
    if (auto v = opt_string(*r, "mcc")) k.plmn_mcc = *v;
    if (auto v = opt_string(*r, "mnc")) k.plmn_mnc = *v;
    if (const auto* v = find_non_null(*r, "nci")) k.nci = int_in<std::uint32_t>(*v, "nci", 0, UINT32_MAX);
    if (auto v = opt_string(*r, "sst_profile")) {
      auto profile = model::parse_sst_profile(*v);
      if (!profile) bad("unknown sst_profile '" + *v + "'");
      k.sst_profile = *profile;
    }
    if (const auto* v = find_non_null(*r, "id_seed")) k.id_seed = int_in<std::uint64_t>(*v, "id_seed", 0, INT64_MAX);
    k.fixed_policy_id = opt_string(*r, "fixed_policy_id");
    k.fixed_sd = opt_string(*r, "fixed_sd");
  }
  if (const auto* n = find_non_null(j, "nodes")) {
    if (!n->is_array()) bad("nodes must be an array");
    c.nodes.clear();
    for (const auto& cell : *n) c.nodes.push_back(model::parse_as<model::CellConfig>(cell));
  }
  if (const auto* e = find_non_null(j, "enforcer")) {
    require_object(*e, "enforcer");
    reject_unknown(*e, {"control_timeout_ms", "default_min_pct", "default_max_pct", "capacity_override_bps"}, "enforcer");
    c.enforcer.control_timeout = ms_of(*e, "control_timeout_ms", c.enforcer.control_timeout);
    if (const auto* v = find_non_null(*e, "default_min_pct")) c.enforcer.default_min_pct = int_in<int>(*v, "default_min_pct", 0, 100);
    if (const auto* v = find_non_null(*e, "default_max_pct")) c.enforcer.default_max_pct = int_in<int>(*v, "default_max_pct", 0, 100);
    if (const auto* v = find_non_null(*e, "capacity_override_bps")) {
      c.enforcer.capacity_override_bps = int_in<std::int64_t>(*v, "capacity_override_bps", 1, INT64_MAX);
    }
  }
  if (const auto* m = find_non_null(j, "mediator")) {
    require_object(*m, "mediator");
    reject_unknown(*m, {"journal"}, "mediator");
    if (auto v = opt_string(*m, "journal")) c.mediator_journal = *v;
  }
  if (const auto* g = find_non_null(j, "gateway")) {
    require_object(*g, "gateway");
    reject_unknown(*g, {"clarification_bound", "auto_activate", "enforcement_wait_ms", "node_setup_wait_ms"}, "gateway");
    if (const auto* v = find_non_null(*g, "clarification_bound")) c.clarification_bound = int_in<int>(*v, "clarification_bound", 0, 100);
    if (const auto* v = find_non_null(*g, "auto_activate")) c.auto_activate = as_bool(*v, "auto_activate");
    c.enforcement_wait = ms_of(*g, "enforcement_wait_ms", c.enforcement_wait);
    c.node_setup_wait = ms_of(*g, "node_setup_wait_ms", c.node_setup_wait);
  }
}

}  // namespace

DeploymentConfig parse_deployment_config(const json& j) {
  DeploymentConfig c;
  try {
    parse_into(j, c);
  } catch (const Error& e) {
    throw Error(Errc::invalid_config, e.detail());
  }
  return c;
}

DeploymentConfig load_deployment_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::io_error, "cannot read config " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw Error(Errc::invalid_config, path.string() + ": " + e.what());
  }
  return parse_deployment_config(j);
}

void to_json(json& j, const Endpoints& e) {
  j = json{{"gateway", e.gateway}, {"booking", e.booking}, {"tools", e.tools},   {"mediator", e.mediator},
           {"xapp", e.xapp},       {"rapp", e.rapp},       {"e2", e.e2},         {"node_ledgers", e.node_ledgers}};
}

struct Deployment::Impl {
  DeploymentConfig config;
  std::unique_ptr<booking::BookingService> booking;
  std::unique_ptr<tools::ToolServer> tools;
  std::unique_ptr<a1::MediatorService> mediator;
  std::unique_ptr<xapp::XappService> xapp;
  std::vector<std::unique_ptr<node::E2NodeSim>> nodes;
  std::unique_ptr<rapp::RappService> rapp;
  std::unique_ptr<gateway::GatewayService> gateway;

  void stop() {
    // Reverse dependency order.
    if (gateway) gateway->stop();
    if (rapp) rapp->stop();
    for (auto& n : nodes) n->stop();
    if (xapp) xapp->stop();
    if (mediator) mediator->stop();
    if (tools) tools->stop();
    if (booking) booking->stop();
  }
};

Deployment::Deployment(DeploymentConfig config) : impl_(std::make_unique<Impl>()) {
  impl_->config = std::move(config);
  if (impl_->config.nodes.empty()) impl_->config.nodes.push_back(node::default_cell());
}

Deployment::~Deployment() { stop(); }

void Deployment::start(std::shared_ptr<gateway::Translator> translator) {
  auto& s = *impl_;
  const auto& c = s.config;
  try {
    s.booking = std::make_unique<booking::BookingService>(
        booking::BookingServiceConfig{c.host, c.ports.booking, c.booking_threshold, c.booking_id_seed});
    s.booking->start();

    s.tools = std::make_unique<tools::ToolServer>(tools::ToolServerConfig{c.host, c.ports.tools, s.booking->url()});
    s.tools->start();

    a1::MediatorServiceConfig mc;
    mc.host = c.host;
    mc.port = c.ports.mediator;
    mc.journal = c.mediator_journal;
    s.mediator = std::make_unique<a1::MediatorService>(mc);
    s.mediator->start();

    xapp::XappConfig xc;
    xc.http_host = c.host;
    xc.http_port = c.ports.xapp;
    xc.e2_host = c.host;
    xc.e2_port = c.ports.e2;
    xc.mediator_url = s.mediator->url();
    xc.enforcer = c.enforcer;
    s.xapp = std::make_unique<xapp::XappService>(xc);
    s.xapp->start();

    for (std::size_t i = 0; i < c.nodes.size(); ++i) {
      node::NodeSimConfig nc;
      nc.cell = c.nodes[i];
      nc.e2_host = c.host;
      nc.e2_port = s.xapp->e2_port();
      nc.http_host = c.host;
      nc.http_port = c.ports.node_http_base ? static_cast<std::uint16_t>(c.ports.node_http_base + i) : 0;
      auto sim = std::make_unique<node::E2NodeSim>(nc);
      sim->start();
      s.nodes.push_back(std::move(sim));
    }
    if (!s.xapp->wait_for_nodes(s.nodes.size(), c.node_setup_wait)) {
      throw Error(Errc::timeout, "E2 nodes did not complete setup in time");
    }

    rapp::RappServiceConfig rc;
    rc.host = c.host;
    rc.port = c.ports.rapp;
    rc.mediator_url = s.mediator->url();
    rc.composer = c.composer;
    s.rapp = std::make_unique<rapp::RappService>(rc);
    s.rapp->start();

    gateway::GatewayServiceConfig gc;
    gc.host = c.host;
    gc.port = c.ports.gateway;
    gc.gateway.tool_url = s.tools->url();
    gc.gateway.rapp_url = s.rapp->url();
    gc.gateway.mediator_url = s.mediator->url();
    gc.gateway.booking_url = s.booking->url();
    gc.gateway.clarification_bound = c.clarification_bound;
    gc.gateway.auto_activate = c.auto_activate;
    gc.gateway.enforcement_wait = c.enforcement_wait;
    s.gateway = std::make_unique<gateway::GatewayService>(gc, std::move(translator));
    s.gateway->start();
  } catch (...) {
    s.stop();
    throw;
  }
}

void Deployment::stop() { impl_->stop(); }

Endpoints Deployment::endpoints() const {
  const auto& s = *impl_;
  Endpoints e;
  if (s.gateway) e.gateway = s.gateway->url();
  if (s.booking) e.booking = s.booking->url();
  if (s.tools) e.tools = s.tools->url();
  if (s.mediator) e.mediator = s.mediator->url();
  if (s.xapp) {
    e.xapp = s.xapp->url();
    e.e2 = s.config.host + ":" + std::to_string(s.xapp->e2_port());
  }
  if (s.rapp) e.rapp = s.rapp->url();
  for (const auto& n : s.nodes) e.node_ledgers.push_back("http://" + s.config.host + ":" + std::to_string(n->http_port()) + "/ledger");
  return e;
}

namespace {
template <typename T>
T& started(const std::unique_ptr<T>& p, const char* what) {
  if (!p) throw Error(Errc::not_ready, std::string(what) + " is not running");
  return *p;
}
}  // namespace

booking::BookingService& Deployment::booking() { return started(impl_->booking, "booking service"); }
a1::MediatorService& Deployment::mediator() { return started(impl_->mediator, "mediator"); }
xapp::XappService& Deployment::xapp() { return started(impl_->xapp, "xApp"); }
node::E2NodeSim& Deployment::node(std::size_t index) {
  if (index >= impl_->nodes.size()) throw Error(Errc::not_found, "no node " + std::to_string(index));
  return *impl_->nodes[index];
}
std::size_t Deployment::node_count() const noexcept { return impl_->nodes.size(); }
gateway::GatewayService& Deployment::gateway() { return started(impl_->gateway, "gateway"); }

}  // namespace orion::deploy
