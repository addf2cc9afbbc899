#pragma once

// Internal HTTP plumbing shared by the service implementations.

#include <httplib.h>

#include <atomic>
#include <chrono>
#include <condition_variable>
#include <deque>
#include <functional>
#include <list>
#include <map>
#include <memory>
#include <mutex>
#include <nlohmann/json.hpp>
#include <string>
#include <thread>

#include "orion/error.hpp"

namespace orion::net {

using nlohmann::json;

struct Url {
  std::string scheme = "http";
  std::string host;
  std::uint16_t port = 80;
  std::string path = "/";

  std::string origin() const { return scheme + "://" + host + ":" + std::to_string(port); }
};

// Accepts "http://host:port[/path]"; throws Error(invalid_config) otherwise.
Url parse_url(std::string_view text);

int http_status_for(Errc code) noexcept;

void reply_json(httplib::Response& res, int status, const json& body);
void reply_error(httplib::Response& res, const Error& err);

// Parses the request body as JSON; throws Error(schema_violation).
json parse_body(const httplib::Request& req);

// Wraps a handler so Error and JSON exceptions become error replies.
httplib::Server::Handler guarded(std::function<void(const httplib::Request&, httplib::Response&)> fn);

// httplib::Server running on its own thread.
class ServerThread {
 public:
  ServerThread();
  ~ServerThread();
  ServerThread(const ServerThread&) = delete;
  ServerThread& operator=(const ServerThread&) = delete;

  httplib::Server& server() noexcept { return server_; }
  // Binds (port 0 = ephemeral) and starts serving; returns the bound port.
  std::uint16_t start(const std::string& host, std::uint16_t port);
  void stop();
  bool running() const noexcept { return thread_.joinable(); }

 private:
  httplib::Server server_;
  std::thread thread_;
};

// Topic-based fan-out of JSON events to server-sent-event subscribers.
class EventHub {
 public:
  explicit EventHub(std::chrono::milliseconds keepalive = std::chrono::milliseconds(250))
      : keepalive_(keepalive) {}

  void publish(const std::string& topic, const json& event);
  // Streams events published on `topic` after subscription into the sink.
  // Returns when the client goes away or the hub closes.
  void serve(const std::string& topic, httplib::DataSink& sink);
  // Installs a GET route streaming `topic_of(req)`.
  void mount(httplib::Server& server, const std::string& pattern,
             std::function<std::string(const httplib::Request&)> topic_of);
  void close();
  std::size_t subscriber_count(const std::string& topic) const;

 private:
  struct Subscriber {
    std::string topic;
    std::deque<std::string> queue;
  };

  mutable std::mutex mu_;
  std::condition_variable cv_;
  std::list<std::shared_ptr<Subscriber>> subscribers_;
  bool closed_ = false;
  std::chrono::milliseconds keepalive_;
};

struct ClientOptions {
  std::chrono::milliseconds connect_timeout{2000};
  std::chrono::milliseconds read_timeout{10000};
};

std::unique_ptr<httplib::Client> make_client(const Url& url, const ClientOptions& opts = {});

// Maps an error reply ({"error": name, "detail": ...}) or a transport failure
// to Error. `what` names the downstream service for messages.
Error error_from_result(const httplib::Result& res, std::string_view what);

// Sends a request with an optional JSON body and returns the parsed JSON reply
// on 2xx. Any other outcome throws error_from_result(...).
json request_json(const Url& base, const std::string& method, const std::string& path, const json* body,
                  std::string_view what, const ClientOptions& opts = {});

// Consumes a server-sent event stream, invoking on_event for each data line.
// Returns when on_event returns false, `stop` becomes true, or the stream ends.
// Throws Error(transport_error) when the connection fails.
void read_event_stream(const Url& url, const std::atomic<bool>& stop,
                       const std::function<bool(const json&)>& on_event);

}  // namespace orion::net
