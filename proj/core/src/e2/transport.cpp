#include "orion/e2/transport.hpp"

#include <array>
#include <atomic>
#include <boost/asio.hpp>

#include "orion/e2/codec.hpp"
#include "orion/error.hpp"

namespace orion::e2 {

namespace asio = boost::asio;
using asio::ip::tcp;

struct FramedConnection::Impl {
  asio::io_context ctx;
  tcp::socket socket{ctx};
  std::vector<std::uint8_t> buffer;
  std::atomic<bool> open{true};

  // Runs the context until `done` or the deadline. Returns false on timeout
  // after cancelling outstanding operations.
  bool run_until(const bool& done, std::optional<std::chrono::milliseconds> timeout) {
    ctx.restart();
    if (timeout) {
      auto deadline = std::chrono::steady_clock::now() + *timeout;
      while (!done && ctx.run_one_until(deadline) > 0) {
      }
    } else {
      while (!done && ctx.run_one() > 0) {
      }
    }
    if (done) return true;
    boost::system::error_code ignored;
    socket.cancel(ignored);
    ctx.restart();
    while (!done && ctx.run_one() > 0) {
    }
    return false;
  }

  std::optional<std::vector<std::uint8_t>> extract_frame() {
    if (buffer.size() < 4) return std::nullopt;
    std::uint32_t len = 0;
    for (int i = 0; i < 4; ++i) len = (len << 8) | buffer[i];
    if (len > kMaxFrameSize) {
      close();
      throw Error(Errc::frame_too_large, "incoming frame of " + std::to_string(len) + " bytes");
    }
    if (buffer.size() < 4 + static_cast<std::size_t>(len)) return std::nullopt;
    std::vector<std::uint8_t> payload(buffer.begin() + 4, buffer.begin() + 4 + len);
    buffer.erase(buffer.begin(), buffer.begin() + 4 + len);
    return payload;
  }

  void read_some(std::optional<std::chrono::milliseconds> timeout) {
    std::array<std::uint8_t, 4096> chunk{};
    bool done = false;
    boost::system::error_code ec;
    std::size_t n = 0;
    socket.async_read_some(asio::buffer(chunk), [&](const boost::system::error_code& e, std::size_t got) {
      ec = e;
      n = got;
      done = true;
    });
    bool completed = run_until(done, timeout);
    buffer.insert(buffer.end(), chunk.begin(), chunk.begin() + static_cast<std::ptrdiff_t>(n));
    if (!completed && n == 0) throw Error(Errc::timeout, "no complete frame before deadline");
    if (ec && ec != asio::error::operation_aborted) {
      open = false;
      throw Error(Errc::connection_lost, ec.message());
    }
  }

  void write_all(std::span<const std::uint8_t> bytes) {
    if (!open) throw Error(Errc::connection_lost, "connection closed");
    boost::system::error_code ec;
    asio::write(socket, asio::buffer(bytes.data(), bytes.size()), ec);
    if (ec) {
      open = false;
      throw Error(Errc::connection_lost, ec.message());
    }
  }

  void close() {
    open = false;
    boost::system::error_code ignored;
    socket.shutdown(tcp::socket::shutdown_both, ignored);
    socket.close(ignored);
  }
};

FramedConnection::FramedConnection(std::unique_ptr<Impl> impl) : impl_(std::move(impl)) {}
FramedConnection::~FramedConnection() { impl_->close(); }

std::unique_ptr<FramedConnection> FramedConnection::connect(const std::string& host, std::uint16_t port,
                                                            std::chrono::milliseconds timeout) {
  auto impl = std::make_unique<Impl>();
  boost::system::error_code ec;
  auto address = asio::ip::make_address(host == "localhost" ? "127.0.0.1" : host, ec);
  if (ec) throw Error(Errc::connection_lost, "bad address " + host);
  bool done = false;
  impl->socket.async_connect(tcp::endpoint(address, port), [&](const boost::system::error_code& e) {
    ec = e;
    done = true;
  });
  if (!impl->run_until(done, timeout)) throw Error(Errc::timeout, "connect to " + host);
  if (ec) throw Error(Errc::connection_lost, "connect to " + host + ": " + ec.message());
  impl->socket.set_option(tcp::no_delay(true));
  return std::unique_ptr<FramedConnection>(new FramedConnection(std::move(impl)));
}

void FramedConnection::send(const ControlPdu& pdu) {
  auto payload = encode(pdu);
  send_payload(payload);
}

void FramedConnection::send_payload(std::span<const std::uint8_t> payload) { impl_->write_all(frame(payload)); }

void FramedConnection::write_raw(std::span<const std::uint8_t> bytes) { impl_->write_all(bytes); }

std::vector<std::uint8_t> FramedConnection::receive_payload(std::optional<std::chrono::milliseconds> timeout) {
  auto deadline = timeout ? std::optional(std::chrono::steady_clock::now() + *timeout) : std::nullopt;
  for (;;) {
    if (auto f = impl_->extract_frame()) return std::move(*f);
    if (!impl_->open) throw Error(Errc::connection_lost, "connection closed");
    std::optional<std::chrono::milliseconds> left;
    if (deadline) {
      auto now = std::chrono::steady_clock::now();
      if (now >= *deadline) throw Error(Errc::timeout, "no complete frame before deadline");
      left = std::chrono::duration_cast<std::chrono::milliseconds>(*deadline - now) + std::chrono::milliseconds(1);
    }
    impl_->read_some(left);
  }
}

ControlPdu FramedConnection::receive(std::optional<std::chrono::milliseconds> timeout) {
  auto payload = receive_payload(timeout);
  return decode(payload);
}

void FramedConnection::close() { impl_->close(); }
bool FramedConnection::is_open() const { return impl_->open; }

std::string FramedConnection::peer() const {
  boost::system::error_code ec;
  auto ep = impl_->socket.remote_endpoint(ec);
  if (ec) return "?";
  return ep.address().to_string() + ":" + std::to_string(ep.port());
}

struct FrameListener::Impl {
  asio::io_context ctx;
  tcp::acceptor acceptor{ctx};
};

FrameListener::FrameListener(const std::string& host, std::uint16_t port) : impl_(std::make_unique<Impl>()) {
  auto address = asio::ip::make_address(host == "localhost" ? "127.0.0.1" : host);
  tcp::endpoint ep(address, port);
  impl_->acceptor.open(ep.protocol());
  impl_->acceptor.set_option(tcp::acceptor::reuse_address(true));
  impl_->acceptor.bind(ep);
  impl_->acceptor.listen();
}

FrameListener::~FrameListener() { close(); }

std::uint16_t FrameListener::port() const { return impl_->acceptor.local_endpoint().port(); }

std::unique_ptr<FramedConnection> FrameListener::accept(std::chrono::milliseconds timeout) {
  auto conn = std::make_unique<FramedConnection::Impl>();
  bool done = false;
  boost::system::error_code ec;
  impl_->acceptor.async_accept(conn->socket, [&](const boost::system::error_code& e) {
    ec = e;
    done = true;
  });
  impl_->ctx.restart();
  auto deadline = std::chrono::steady_clock::now() + timeout;
  while (!done && impl_->ctx.run_one_until(deadline) > 0) {
  }
  if (!done) {
    boost::system::error_code ignored;
    impl_->acceptor.cancel(ignored);
    impl_->ctx.restart();
    while (!done && impl_->ctx.run_one() > 0) {
    }
  }
  if (ec || !conn->socket.is_open()) return nullptr;
  conn->socket.set_option(tcp::no_delay(true));
  return std::unique_ptr<FramedConnection>(new FramedConnection(std::move(conn)));
}

void FrameListener::close() {
  boost::system::error_code ignored;
  impl_->acceptor.close(ignored);
}

}  // namespace orion::e2
