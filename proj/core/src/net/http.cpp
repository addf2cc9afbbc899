#include "net/http.hpp"

#include <charconv>

namespace orion::net {

Url parse_url(std::string_view text) {
  Url url;
  auto scheme_end = text.find("://");
  if (scheme_end == std::string_view::npos) throw Error(Errc::invalid_config, "URL without scheme: " + std::string(text));
  url.scheme = std::string(text.substr(0, scheme_end));
  if (url.scheme != "http") throw Error(Errc::invalid_config, "only http:// URLs are supported: " + std::string(text));
  auto rest = text.substr(scheme_end + 3);
  auto slash = rest.find('/');
  auto authority = rest.substr(0, slash);
  url.path = slash == std::string_view::npos ? "/" : std::string(rest.substr(slash));
  auto colon = authority.rfind(':');
  if (colon == std::string_view::npos) {
    url.host = std::string(authority);
    url.port = 80;
  } else {
    url.host = std::string(authority.substr(0, colon));
    auto port_text = authority.substr(colon + 1);
    unsigned port = 0;
    auto [p, ec] = std::from_chars(port_text.data(), port_text.data() + port_text.size(), port);
    if (ec != std::errc() || p != port_text.data() + port_text.size() || port > 65535) {
      throw Error(Errc::invalid_config, "bad port in URL: " + std::string(text));
    }
    url.port = static_cast<std::uint16_t>(port);
  }
  if (url.host.empty()) throw Error(Errc::invalid_config, "URL without host: " + std::string(text));
  return url;
}

int http_status_for(Errc code) noexcept {
  switch (code) {
    case Errc::admission_refused: return 429;
    case Errc::not_found:
    case Errc::unknown_intent:
    case Errc::unknown_policy:
    case Errc::unknown_tool: return 404;
    case Errc::duplicate_policy_id:
    case Errc::already_released:
    case Errc::illegal_transition:
    case Errc::illegal_status_transition:
    case Errc::no_pending_clarification:
    case Errc::conflict:
    case Errc::not_ready: return 409;
    case Errc::schema_violation:
    case Errc::invalid_argument:
    case Errc::validation_failed:
    case Errc::missing_throughput:
    case Errc::invalid_intent:
    case Errc::translation_failed: return 422;
    case Errc::transport_error:
    case Errc::downstream_error:
    case Errc::mediator_unavailable:
    case Errc::services_unavailable: return 502;
    case Errc::timeout: return 504;
    default: return 500;
  }
}

void reply_json(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void reply_error(httplib::Response& res, const Error& err) {
  int status = http_status_for(err.code());
  // Schema problems on raw request bodies are plain bad requests.
  if (err.code() == Errc::schema_violation) status = 400;
  reply_json(res, status, json{{"error", to_string(err.code())}, {"detail", err.detail()}});
}

json parse_body(const httplib::Request& req) {
  try {
    return json::parse(req.body);
  } catch (const json::exception& e) {
    throw Error(Errc::schema_violation, std::string("body is not valid JSON: ") + e.what());
  }
}

httplib::Server::Handler guarded(std::function<void(const httplib::Request&, httplib::Response&)> fn) {
  return [fn = std::move(fn)](const httplib::Request& req, httplib::Response& res) {
    try {
      fn(req, res);
    } catch (const Error& e) {
      reply_error(res, e);
    } catch (const json::exception& e) {
      reply_error(res, Error(Errc::schema_violation, e.what()));
    }
  };
}

ServerThread::ServerThread() {
  server_.set_keep_alive_timeout(1);
  server_.new_task_queue = [] { return new httplib::ThreadPool(16); };
}

ServerThread::~ServerThread() { stop(); }

std::uint16_t ServerThread::start(const std::string& host, std::uint16_t port) {
  int bound = 0;
  if (port == 0) {
    bound = server_.bind_to_any_port(host);
  } else {
    bound = server_.bind_to_port(host, port) ? port : -1;
  }
  if (bound <= 0) throw Error(Errc::io_error, "cannot bind " + host + ":" + std::to_string(port));
  thread_ = std::thread([this] { server_.listen_after_bind(); });
  server_.wait_until_ready();
  return static_cast<std::uint16_t>(bound);
}

void ServerThread::stop() {
  if (!thread_.joinable()) return;
  server_.stop();
  thread_.join();
}

void EventHub::publish(const std::string& topic, const json& event) {
  auto line = "data: " + event.dump() + "\n\n";
  {
    std::lock_guard lock(mu_);
    if (closed_) return;
    for (auto& sub : subscribers_) {
      if (sub->topic == topic) sub->queue.push_back(line);
    }
  }
  cv_.notify_all();
}

void EventHub::serve(const std::string& topic, httplib::DataSink& sink) {
  auto sub = std::make_shared<Subscriber>();
  sub->topic = topic;
  {
    std::lock_guard lock(mu_);
    if (closed_) return;
    subscribers_.push_back(sub);
  }
  // Flush headers so clients know the subscription is live.
  static constexpr std::string_view kHello = ": subscribed\n\n";
  bool alive = sink.write(kHello.data(), kHello.size());
  std::unique_lock lock(mu_);
  while (alive && !closed_) {
    if (sub->queue.empty()) {
      cv_.wait_for(lock, keepalive_);
      if (closed_) break;
      if (sub->queue.empty()) {
        lock.unlock();
        static constexpr std::string_view kPing = ": keepalive\n\n";
        alive = sink.is_writable() && sink.write(kPing.data(), kPing.size());
        lock.lock();
        continue;
      }
    }
    auto line = std::move(sub->queue.front());
    sub->queue.pop_front();
    lock.unlock();
    alive = sink.write(line.data(), line.size());
    lock.lock();
  }
  subscribers_.remove(sub);
}

void EventHub::mount(httplib::Server& server, const std::string& pattern,
                     std::function<std::string(const httplib::Request&)> topic_of) {
  server.Get(pattern, [this, topic_of = std::move(topic_of)](const httplib::Request& req, httplib::Response& res) {
    auto topic = topic_of(req);
    res.set_header("Cache-Control", "no-cache");
    res.set_chunked_content_provider("text/event-stream", [this, topic](std::size_t, httplib::DataSink& sink) {
      serve(topic, sink);
      sink.done();
      return true;
    });
  });
}

void EventHub::close() {
  {
    std::lock_guard lock(mu_);
    closed_ = true;
  }
  cv_.notify_all();
}

std::size_t EventHub::subscriber_count(const std::string& topic) const {
  std::lock_guard lock(mu_);
  std::size_t n = 0;
  for (const auto& s : subscribers_) n += s->topic == topic ? 1 : 0;
  return n;
}

std::unique_ptr<httplib::Client> make_client(const Url& url, const ClientOptions& opts) {
  auto cli = std::make_unique<httplib::Client>(url.host, url.port);
  cli->set_connection_timeout(opts.connect_timeout);
  cli->set_read_timeout(opts.read_timeout);
  cli->set_write_timeout(opts.read_timeout);
  return cli;
}

Error error_from_result(const httplib::Result& res, std::string_view what) {
  if (!res) {
    return Error(Errc::transport_error, std::string(what) + " unreachable: " + httplib::to_string(res.error()));
  }
  try {
    auto body = json::parse(res->body);
    if (body.is_object() && body.contains("error") && body["error"].is_string()) {
      auto code = errc_from_string(body["error"].get<std::string>()).value_or(Errc::downstream_error);
      return Error(code, body.value("detail", std::string()));
    }
  } catch (const json::exception&) {
  }
  if (res->status == 429) return Error(Errc::admission_refused, std::string(what) + " returned 429");
  return Error(Errc::downstream_error, std::string(what) + " returned HTTP " + std::to_string(res->status));
}

json request_json(const Url& base, const std::string& method, const std::string& path, const json* body,
                  std::string_view what, const ClientOptions& opts) {
  auto cli = make_client(base, opts);
  httplib::Result res{nullptr, httplib::Error::Unknown};
  std::string payload = body ? body->dump() : std::string();
  if (method == "GET") {
    res = cli->Get(path);
  } else if (method == "POST") {
    res = cli->Post(path, payload, "application/json");
  } else if (method == "PUT") {
    res = cli->Put(path, payload, "application/json");
  } else if (method == "DELETE") {
    res = cli->Delete(path);
  } else {
    throw Error(Errc::invalid_argument, "unsupported method " + method);
  }
  if (!res || res->status < 200 || res->status >= 300) throw error_from_result(res, what);
  if (res->body.empty()) return nullptr;
  try {
    return json::parse(res->body);
  } catch (const json::exception& e) {
    throw Error(Errc::downstream_error, std::string(what) + " sent invalid JSON: " + e.what());
  }
}

void read_event_stream(const Url& url, const std::atomic<bool>& stop,
                       const std::function<bool(const json&)>& on_event) {
  httplib::Client cli(url.host, url.port);
  cli.set_connection_timeout(std::chrono::seconds(2));
  cli.set_read_timeout(std::chrono::seconds(30));
  std::string pending;
  bool keep_going = true;
  auto res = cli.Get(url.path, [&](const char* data, std::size_t len) {
    if (stop) return false;
    pending.append(data, len);
    std::size_t pos;
    while ((pos = pending.find("\n\n")) != std::string::npos) {
      auto block = pending.substr(0, pos);
      pending.erase(0, pos + 2);
      std::size_t start = 0;
      while (start < block.size()) {
        auto end = block.find('\n', start);
        auto line = block.substr(start, end == std::string::npos ? std::string::npos : end - start);
        start = end == std::string::npos ? block.size() : end + 1;
        if (line.rfind("data:", 0) != 0) continue;
        auto payload = line.substr(5);
        if (!payload.empty() && payload.front() == ' ') payload.erase(0, 1);
        json event;
        try {
          event = json::parse(payload);
        } catch (const json::exception&) {
          continue;
        }
        if (!on_event(event)) {
          keep_going = false;
          return false;
        }
      }
    }
    return !stop.load();
  });
  if (!res && keep_going && !stop && res.error() != httplib::Error::Canceled) {
    throw Error(Errc::transport_error, "event stream " + url.path + ": " + httplib::to_string(res.error()));
  }
}

}  // namespace orion::net
