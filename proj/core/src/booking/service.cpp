#include "orion/booking/service.hpp"

#include <spdlog/spdlog.h>

#include "net/http.hpp"
#include "orion/model/json.hpp"

namespace orion::booking {

using nlohmann::json;

struct BookingService::Impl {
  BookingServiceConfig config;
  BookingStore store;
  net::ServerThread http;
  std::uint16_t port = 0;

  explicit Impl(BookingServiceConfig cfg)
      : config(std::move(cfg)), store(config.threshold, random_id_generator(config.id_seed)) {
    auto& srv = http.server();
    srv.Post("/sessions", net::guarded([this](const httplib::Request& req, httplib::Response& res) {
               auto requirements = model::parse_as<model::SliceRequirements>(net::parse_body(req));
               try {
                 net::reply_json(res, 201, json(store.create_session(requirements)));
               } catch (const Error& e) {
                 if (e.code() != Errc::admission_refused) throw;
                 net::reply_json(res, 429, json{{"status", 429}, {"code", "TOO_MANY_REQUESTS"}});
               }
             }));
    srv.Delete(R"(/sessions/([^/]+))", net::guarded([this](const httplib::Request& req, httplib::Response& res) {
                 net::reply_json(res, 200, json(store.release_session(req.matches[1])));
               }));
    srv.Get("/sessions", net::guarded([this](const httplib::Request&, httplib::Response& res) {
              net::reply_json(res, 200, json(store.list_sessions()));
            }));
    srv.Get(R"(/sessions/([^/]+))", net::guarded([this](const httplib::Request& req, httplib::Response& res) {
              auto booking = store.find(req.matches[1]);
              if (!booking) throw Error(Errc::not_found, "no session " + std::string(req.matches[1]));
              net::reply_json(res, 200, json(*booking));
            }));
  }
};

BookingService::BookingService(BookingServiceConfig config) : impl_(std::make_unique<Impl>(std::move(config))) {}
BookingService::~BookingService() { stop(); }

std::uint16_t BookingService::start() {
  impl_->port = impl_->http.start(impl_->config.host, impl_->config.port);
  spdlog::info("slice booking listening on {} (threshold {})", url(), impl_->config.threshold);
  return impl_->port;
}

void BookingService::stop() { impl_->http.stop(); }
std::uint16_t BookingService::port() const noexcept { return impl_->port; }
std::string BookingService::url() const {
  return "http://" + impl_->config.host + ":" + std::to_string(impl_->port);
}
BookingStore& BookingService::store() noexcept { return impl_->store; }

BookingClient::BookingClient(std::string base_url, std::chrono::milliseconds timeout)
    : base_url_(std::move(base_url)), timeout_(timeout) {}

model::SessionBooking BookingClient::release_session(const std::string& session_id) const {
  auto reply = net::request_json(net::parse_url(base_url_), "DELETE", "/sessions/" + session_id, nullptr,
                                 "slice booking", {timeout_, timeout_});
  return model::parse_as<model::SessionBooking>(reply);
}

std::vector<model::SessionBooking> BookingClient::list_sessions() const {
  auto reply = net::request_json(net::parse_url(base_url_), "GET", "/sessions", nullptr, "slice booking",
                                 {timeout_, timeout_});
  std::vector<model::SessionBooking> out;
  for (const auto& b : reply) out.push_back(model::parse_as<model::SessionBooking>(b));
  return out;
}

}  // namespace orion::booking
