#include "orion/a1/service.hpp"

#include <spdlog/spdlog.h>

#include "net/http.hpp"
#include "orion/model/json.hpp"
#include "util/json_read.hpp"

namespace orion::a1 {

using nlohmann::json;

namespace {

constexpr const char* kPolicyPath = R"(/a1/policytypes/(\d+)/policies/([^/]+))";
constexpr const char* kStatusTopic = "status";

std::string policy_path(int policytype_id, const std::string& policy_id) {
  return "/a1/policytypes/" + std::to_string(policytype_id) + "/policies/" + policy_id;
}

int ptid_of(const httplib::Request& req) {
  try {
    return std::stoi(req.matches[1]);
  } catch (const std::exception&) {
    throw Error(Errc::schema_violation, "policy type id out of range");
  }
}

}  // namespace

struct MediatorService::Impl {
  MediatorServiceConfig config;
  net::EventHub events;
  Mediator mediator;
  net::ServerThread http;
  std::uint16_t port = 0;

  explicit Impl(MediatorServiceConfig cfg)
      : config(std::move(cfg)),
        mediator(
            [timeout = config.push_timeout](const std::string& url, const json& message) {
              auto target = net::parse_url(url);
              net::request_json(target, "POST", target.path, &message, "xApp callback", {timeout, timeout});
            },
            config.journal) {
    mediator.set_listener([this](const PolicyStatus& s) { events.publish(kStatusTopic, json(s)); });
    routes();
  }

  void routes() {
    auto& srv = http.server();
    srv.Put(kPolicyPath, net::guarded([this](const httplib::Request& req, httplib::Response& res) {
              auto policy = model::parse_as<model::A1Policy>(net::parse_body(req));
              if (policy.policytype_id != ptid_of(req) || policy.policy_id != req.matches[2]) {
                throw Error(Errc::schema_violation, "policy ids in body and path differ");
              }
              net::reply_json(res, 201, json(mediator.put_policy(policy)));
            }));
    srv.Delete(kPolicyPath, net::guarded([this](const httplib::Request& req, httplib::Response& res) {
                 net::reply_json(res, 200, json(mediator.delete_policy(req.matches[2], ptid_of(req))));
               }));
    srv.Get(kPolicyPath, net::guarded([this](const httplib::Request& req, httplib::Response& res) {
              auto policy = mediator.policy(req.matches[2], ptid_of(req));
              if (!policy) throw Error(Errc::unknown_policy, "no policy " + std::string(req.matches[2]));
              net::reply_json(res, 200, json(*policy));
            }));
    srv.Get(std::string(kPolicyPath) + "/status",
            net::guarded([this](const httplib::Request& req, httplib::Response& res) {
              net::reply_json(res, 200, json(mediator.status(req.matches[2], ptid_of(req))));
            }));
    srv.Get("/a1/policies", net::guarded([this](const httplib::Request&, httplib::Response& res) {
              net::reply_json(res, 200, json(mediator.statuses()));
            }));
    srv.Post("/a1/subscriptions", net::guarded([this](const httplib::Request& req, httplib::Response& res) {
               auto body = net::parse_body(req);
               jsonio::require_object(body, "subscription");
               jsonio::reject_unknown(body, {"callback_url", "policytype_id"}, "subscription");
               Subscription sub;
               sub.callback_url = jsonio::as_string(jsonio::require(body, "callback_url"), "callback_url");
               net::parse_url(sub.callback_url);
               sub.policytype_id =
                   jsonio::int_in<int>(jsonio::require(body, "policytype_id"), "policytype_id", 0, 1 << 30);
               mediator.subscribe(sub);
               net::reply_json(res, 201, json{{"callback_url", sub.callback_url}, {"policytype_id", sub.policytype_id}});
             }));
    srv.Post("/a1/status", net::guarded([this](const httplib::Request& req, httplib::Response& res) {
               auto report = net::parse_body(req).get<PolicyStatus>();
               net::reply_json(res, 200, json(mediator.report_status(report)));
             }));
    events.mount(srv, "/stream", [](const httplib::Request&) { return std::string(kStatusTopic); });
  }
};

MediatorService::MediatorService(MediatorServiceConfig config) : impl_(std::make_unique<Impl>(std::move(config))) {}

MediatorService::~MediatorService() { stop(); }

std::uint16_t MediatorService::start() {
  impl_->port = impl_->http.start(impl_->config.host, impl_->config.port);
  spdlog::info("a1 mediator listening on {}", url());
  return impl_->port;
}

void MediatorService::stop() {
  impl_->events.close();
  impl_->http.stop();
}

std::uint16_t MediatorService::port() const noexcept { return impl_->port; }
std::string MediatorService::url() const { return "http://" + impl_->config.host + ":" + std::to_string(impl_->port); }
Mediator& MediatorService::mediator() noexcept { return impl_->mediator; }

MediatorClient::MediatorClient(std::string base_url, std::chrono::milliseconds timeout)
    : base_url_(std::move(base_url)), timeout_(timeout) {}

namespace {

json call(const std::string& base, std::chrono::milliseconds timeout, const std::string& method,
          const std::string& path, const json* body) {
  try {
    return net::request_json(net::parse_url(base), method, path, body, "a1 mediator", {timeout, timeout});
  } catch (const Error& e) {
    if (e.code() == Errc::transport_error) throw Error(Errc::mediator_unavailable, e.detail());
    throw;
  }
}

}  // namespace

PolicyStatus MediatorClient::put_policy(const model::A1Policy& policy) const {
  json body = policy;
  return call(base_url_, timeout_, "PUT", policy_path(policy.policytype_id, policy.policy_id), &body)
      .get<PolicyStatus>();
}

PolicyStatus MediatorClient::delete_policy(const std::string& policy_id, int policytype_id) const {
  return call(base_url_, timeout_, "DELETE", policy_path(policytype_id, policy_id), nullptr).get<PolicyStatus>();
}

PolicyStatus MediatorClient::status(const std::string& policy_id, int policytype_id) const {
  return call(base_url_, timeout_, "GET", policy_path(policytype_id, policy_id) + "/status", nullptr)
      .get<PolicyStatus>();
}

PolicyStatus MediatorClient::report_status(const PolicyStatus& report) const {
  json body = report;
  return call(base_url_, timeout_, "POST", "/a1/status", &body).get<PolicyStatus>();
}

void MediatorClient::subscribe(const Subscription& sub) const {
  json body{{"callback_url", sub.callback_url}, {"policytype_id", sub.policytype_id}};
  call(base_url_, timeout_, "POST", "/a1/subscriptions", &body);
}

}  // namespace orion::a1
