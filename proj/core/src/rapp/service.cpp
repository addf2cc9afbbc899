#include "orion/rapp/service.hpp"

#include <spdlog/spdlog.h>

#include <map>
#include <mutex>

#include "net/http.hpp"
#include "orion/a1/service.hpp"
#include "orion/model/json.hpp"

namespace orion::rapp {

using nlohmann::json;

struct RappService::Impl {
  RappServiceConfig config;
  Composer composer;
  mutable std::mutex mu;
  std::map<std::string, model::A1Policy> generated;
  net::ServerThread http;
  std::uint16_t port = 0;

  explicit Impl(RappServiceConfig cfg) : config(std::move(cfg)), composer(config.composer) {}
};

RappService::RappService(RappServiceConfig config) : impl_(std::make_unique<Impl>(std::move(config))) {
  auto& srv = impl_->http.server();
  srv.Post("/generate-policy", net::guarded([this](const httplib::Request& req, httplib::Response& res) {
             auto ci = model::parse_as<ClassifiedIntent>(net::parse_body(req));
             net::reply_json(res, 201, json(generate_and_push(ci)));
           }));
  srv.Get(R"(/policies/([^/]+))", net::guarded([this](const httplib::Request& req, httplib::Response& res) {
            auto p = policy(req.matches[1]);
            if (!p) throw Error(Errc::not_found, "no generated policy " + std::string(req.matches[1]));
            net::reply_json(res, 200, json(*p));
          }));
}

RappService::~RappService() { stop(); }

std::uint16_t RappService::start() {
  impl_->port = impl_->http.start(impl_->config.host, impl_->config.port);
  spdlog::info("rapp listening on {}", url());
  return impl_->port;
}

void RappService::stop() { impl_->http.stop(); }
std::uint16_t RappService::port() const noexcept { return impl_->port; }
std::string RappService::url() const { return "http://" + impl_->config.host + ":" + std::to_string(impl_->port); }

model::A1Policy RappService::generate_and_push(const ClassifiedIntent& ci) {
  auto policy = impl_->composer.generate_policy(ci);
  if (!impl_->config.mediator_url.empty()) a1::MediatorClient(impl_->config.mediator_url).put_policy(policy);
  std::lock_guard lock(impl_->mu);
  impl_->generated.insert_or_assign(policy.policy_id, policy);
  return policy;
}

std::optional<model::A1Policy> RappService::policy(const std::string& policy_id) const {
  std::lock_guard lock(impl_->mu);
  auto it = impl_->generated.find(policy_id);
  if (it == impl_->generated.end()) return std::nullopt;
  return it->second;
}

RappClient::RappClient(std::string base_url, std::chrono::milliseconds timeout)
    : base_url_(std::move(base_url)), timeout_(timeout) {}

model::A1Policy RappClient::generate_policy(const ClassifiedIntent& ci) const {
  json body = ci;
  auto reply = net::request_json(net::parse_url(base_url_), "POST", "/generate-policy", &body, "rapp",
                                 {timeout_, timeout_});
  return model::parse_as<model::A1Policy>(reply);
}

}  // namespace orion::rapp
