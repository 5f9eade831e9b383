#include "disco/uddi_server.hpp"

#include <httplib.h>

#include <atomic>
#include <stdexcept>
#include <thread>
#include <variant>

namespace disco::uddi {

namespace {

ServiceRecord to_record(const ServiceEntry& s, const std::string& business_name) {
  ServiceRecord r;
  r.business_key = s.business_key;
  r.service_key = s.service_key;
  r.name = s.name;
  r.lang = s.lang;
  r.business_name = business_name;
  r.category = s.category;
  return r;
}

std::string dispatch(RegistryStore& store, const Request& req) {
  const std::string& op = store.operator_id();

  if (const auto* fb = std::get_if<FindBusinessRequest>(&req)) {
    BusinessListResponse resp;
    resp.operator_id = op;
    auto found = store.find_businesses(fb->name);
    if (found.size() > kMaxListEntries) {
      found.resize(kMaxListEntries);
      resp.truncated = true;
    }
    for (const auto& [biz, svcs] : found) {
      BusinessInfo info;
      info.business_key = biz.business_key;
      info.name = biz.name;
      info.lang = biz.lang;
      for (const ServiceEntry& s : svcs)
        info.services.push_back(ServiceInfo{s.business_key, s.service_key, s.name, s.lang});
      resp.businesses.push_back(std::move(info));
    }
    return encode_business_list(resp);
  }

  if (const auto* fs = std::get_if<FindServiceRequest>(&req)) {
    ServiceListResponse resp;
    resp.operator_id = op;
    auto found = store.find_services(fs->name, fs->category);
    if (found.size() > kMaxListEntries) {
      found.resize(kMaxListEntries);
      resp.truncated = true;
    }
    for (const ServiceEntry& s : found) {
      auto biz = store.get_business(s.business_key);
      resp.services.push_back(to_record(s, biz ? biz->name : ""));
    }
    return encode_service_list(resp);
  }

  if (const auto* sb = std::get_if<SaveBusinessRequest>(&req)) {
    std::string key = store.save_business(sb->name, sb->lang);
    BusinessDetailResponse resp;
    resp.operator_id = op;
    resp.business_key = key;
    resp.name = sb->name;
    resp.lang = sb->lang;
    return encode_business_detail(resp);
  }

  if (const auto* ss = std::get_if<SaveServiceRequest>(&req)) {
    std::string key;
    if (ss->service_key) {
      key = *ss->service_key;
      store.update_service(key, ss->name);
    } else {
      key = store.save_service(ss->business_key, ss->name, ss->lang, ss->category);
    }
    auto svc = store.get_service(key);
    if (!svc) throw NotFoundError("unknown service key: " + key);
    auto biz = store.get_business(svc->business_key);
    ServiceDetailResponse resp;
    resp.operator_id = op;
    resp.service = to_record(*svc, biz ? biz->name : "");
    return encode_service_detail(resp);
  }

  if (const auto* db = std::get_if<DeleteBusinessRequest>(&req)) {
    store.delete_business(db->business_key);
    return encode_success(SuccessReport{}, op);
  }

  const auto& ds = std::get<DeleteServiceRequest>(req);
  store.delete_service(ds.service_key);
  return encode_success(SuccessReport{}, op);
}

}  // namespace

std::string handle_request(RegistryStore& store, std::string_view body) {
  const std::string& op = store.operator_id();
  try {
    return dispatch(store, decode_request(body));
  } catch (const NotFoundError& e) {
    return encode_disposition({ErrCode::invalid_key_passed, e.what()}, op);
  } catch (const ValidationError& e) {
    std::string what = e.what();
    ErrCode code = what.find("name") != std::string::npos ? ErrCode::name_too_short
                                                          : ErrCode::fatal_error;
    return encode_disposition({code, what}, op);
  } catch (const std::exception& e) {
    return encode_disposition({ErrCode::fatal_error, e.what()}, op);
  }
}

struct RegistryServer::Impl {
  explicit Impl(RegistryStore& store) : store(store) {}

  RegistryStore& store;
  httplib::Server server;
  std::thread listener;
  int port = 0;
  std::atomic<bool> running{false};
};

RegistryServer::RegistryServer(RegistryStore& store) : impl_(std::make_unique<Impl>(store)) {
  impl_->server.Post("/uddi", [this](const httplib::Request& req, httplib::Response& res) {
    res.set_content(handle_request(impl_->store, req.body), "text/xml");
  });
}

RegistryServer::~RegistryServer() { stop(); }

int RegistryServer::start(int port) {
  if (impl_->running.exchange(true)) return impl_->port;
  if (port == 0) {
    impl_->port = impl_->server.bind_to_any_port("127.0.0.1");
  } else {
    if (!impl_->server.bind_to_port("127.0.0.1", port))
      throw Error("failed to bind port " + std::to_string(port));
    impl_->port = port;
  }
  if (impl_->port <= 0) throw Error("failed to bind a port");
  impl_->listener = std::thread([this] { impl_->server.listen_after_bind(); });
  impl_->server.wait_until_ready();
  return impl_->port;
}

void RegistryServer::stop() {
  if (!impl_->running.exchange(false)) return;
  impl_->server.stop();
  if (impl_->listener.joinable()) impl_->listener.join();
}

int RegistryServer::port() const { return impl_->port; }

std::string RegistryServer::endpoint() const {
  return "http://127.0.0.1:" + std::to_string(impl_->port);
}

}  // namespace disco::uddi
