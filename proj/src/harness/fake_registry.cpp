#include "disco/harness/fake_registry.hpp"

#include <httplib.h>

#include <arpa/inet.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

#include <thread>

#include "disco/uddi_server.hpp"

namespace disco::harness {

namespace {

// Binds an ephemeral loopback port and closes it again, so connecting to it
// is refused. The port could in principle be reused by another process, but
// not within a test's lifetime.
int allocate_closed_port() {
  int fd = ::socket(AF_INET, SOCK_STREAM, 0);
  if (fd < 0) throw Error("socket() failed");
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
  addr.sin_port = 0;
  if (::bind(fd, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) != 0) {
    ::close(fd);
    throw Error("bind() failed");
  }
  socklen_t len = sizeof(addr);
  if (::getsockname(fd, reinterpret_cast<sockaddr*>(&addr), &len) != 0) {
    ::close(fd);
    throw Error("getsockname() failed");
  }
  int port = ntohs(addr.sin_port);
  ::close(fd);
  return port;
}

}  // namespace

struct FakeRegistry::Impl {
  Impl(std::string operator_id, std::optional<uint64_t> key_seed)
      : store(std::move(operator_id), key_seed) {}

  RegistryStore store;
  httplib::Server server;
  std::thread listener;
  std::atomic<uint64_t> calls{0};
  std::atomic<int64_t> delay_ms{0};
  std::atomic<int64_t> timeout_hold_ms{2000};
  std::atomic<FailureMode> mode{FailureMode::none};
  int port = 0;
  bool listening = false;
};

FakeRegistry::FakeRegistry(std::string operator_id, std::optional<uint64_t> key_seed)
    : impl_(std::make_unique<Impl>(std::move(operator_id), key_seed)) {
  impl_->server.Post("/uddi", [this](const httplib::Request& req, httplib::Response& res) {
    impl_->calls.fetch_add(1);
    switch (impl_->mode.load()) {
      case FailureMode::garbage:
        res.set_content("<<<this is not xml>>>", "text/xml");
        return;
      case FailureMode::timeout:
        std::this_thread::sleep_for(Millis{impl_->timeout_hold_ms.load()});
        break;
      case FailureMode::none:
        std::this_thread::sleep_for(Millis{impl_->delay_ms.load()});
        break;
      case FailureMode::refuse:
        break;  // unreachable: no listener in refuse mode
    }
    res.set_content(uddi::handle_request(impl_->store, req.body), "text/xml");
  });
}

FakeRegistry::~FakeRegistry() { stop(); }

void FakeRegistry::set_delay(Millis delay) { impl_->delay_ms = delay.count(); }

void FakeRegistry::set_failure_mode(FailureMode mode) { impl_->mode = mode; }

void FakeRegistry::set_timeout_hold(Millis hold) { impl_->timeout_hold_ms = hold.count(); }

std::string FakeRegistry::start() {
  if (impl_->mode.load() == FailureMode::refuse) {
    if (impl_->port == 0) impl_->port = allocate_closed_port();
    return endpoint();
  }
  if (!impl_->listening) {
    impl_->port = impl_->server.bind_to_any_port("127.0.0.1");
    if (impl_->port <= 0) throw Error("fake registry failed to bind a port");
    impl_->listening = true;
    impl_->listener = std::thread([this] { impl_->server.listen_after_bind(); });
    impl_->server.wait_until_ready();
  }
  return endpoint();
}

void FakeRegistry::stop() {
  impl_->server.stop();
  if (impl_->listener.joinable()) impl_->listener.join();
  impl_->listening = false;
}

std::string FakeRegistry::endpoint() const {
  return "http://127.0.0.1:" + std::to_string(impl_->port);
}

RegistryStore& FakeRegistry::store() { return impl_->store; }

uint64_t FakeRegistry::calls() const { return impl_->calls.load(); }

void FakeRegistry::reset_calls() { impl_->calls = 0; }

}  // namespace disco::harness
