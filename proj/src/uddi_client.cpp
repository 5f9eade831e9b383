#include "disco/uddi_client.hpp"

#include <httplib.h>

#include <algorithm>
#include <variant>

namespace disco::uddi {

namespace {

struct ParsedEndpoint {
  std::string host;
  int port = 80;
};

std::optional<ParsedEndpoint> parse_endpoint(const std::string& endpoint) {
  std::string rest = endpoint;
  if (rest.rfind("http://", 0) == 0) rest = rest.substr(7);
  while (!rest.empty() && rest.back() == '/') rest.pop_back();
  size_t colon = rest.rfind(':');
  if (colon == std::string::npos || colon == 0) return std::nullopt;
  ParsedEndpoint out;
  out.host = rest.substr(0, colon);
  try {
    out.port = std::stoi(rest.substr(colon + 1));
  } catch (...) {
    return std::nullopt;
  }
  if (out.port <= 0 || out.port > 65535) return std::nullopt;
  return out;
}

CallResult<std::string> post_uddi(const std::string& endpoint, const std::string& body,
                                  Millis deadline) {
  auto parsed = parse_endpoint(endpoint);
  if (!parsed)
    return {std::nullopt, CallError::transport, "bad endpoint '" + endpoint + "'"};

  Millis budget = std::max<Millis>(deadline, Millis{1});
  auto usec = std::chrono::duration_cast<std::chrono::microseconds>(budget);
  httplib::Client cli(parsed->host, parsed->port);
  cli.set_connection_timeout(0, usec.count());
  cli.set_read_timeout(0, usec.count());
  cli.set_write_timeout(0, usec.count());

  httplib::Result res = cli.Post("/uddi", body, "text/xml");
  if (!res) {
    switch (res.error()) {
      case httplib::Error::ConnectionTimeout:
      case httplib::Error::Read:
      case httplib::Error::Write:
        return {std::nullopt, CallError::timeout, httplib::to_string(res.error())};
      default:
        return {std::nullopt, CallError::transport, httplib::to_string(res.error())};
    }
  }
  if (res->status != 200)
    return {std::nullopt, CallError::protocol, "http status " + std::to_string(res->status)};
  return {std::move(res->body), CallError::none, ""};
}

template <typename T>
CallResult<T> exchange(const std::string& endpoint, const std::string& body,
                       Millis deadline) {
  CallResult<std::string> raw = post_uddi(endpoint, body, deadline);
  if (!raw.ok()) return {std::nullopt, raw.error, std::move(raw.detail)};
  try {
    Response resp = decode_response(*raw.value);
    if (auto* v = std::get_if<T>(&resp)) return {std::move(*v), CallError::none, ""};
    if (auto* rep = std::get_if<DispositionReport>(&resp))
      return {std::nullopt, CallError::protocol,
              std::string(err_code_name(rep->code)) + ": " + rep->message};
    return {std::nullopt, CallError::protocol, "unexpected response type"};
  } catch (const std::exception& e) {
    return {std::nullopt, CallError::protocol, e.what()};
  }
}

}  // namespace

std::string_view call_error_name(CallError e) {
  switch (e) {
    case CallError::none: return "ok";
    case CallError::timeout: return "timeout";
    case CallError::transport: return "transport_error";
    case CallError::protocol: return "protocol_error";
  }
  return "unknown";
}

CallResult<BusinessListResponse> remote_find_business(const std::string& endpoint,
                                                      const FindBusinessRequest& req,
                                                      Millis deadline) {
  return exchange<BusinessListResponse>(endpoint, encode_find_business(req), deadline);
}

CallResult<ServiceListResponse> remote_find_service(const std::string& endpoint,
                                                    const FindServiceRequest& req,
                                                    Millis deadline) {
  return exchange<ServiceListResponse>(endpoint, encode_find_service(req), deadline);
}

CallResult<BusinessDetailResponse> remote_save_business(const std::string& endpoint,
                                                        const SaveBusinessRequest& req,
                                                        Millis deadline) {
  return exchange<BusinessDetailResponse>(endpoint, encode_save_business(req), deadline);
}

CallResult<ServiceDetailResponse> remote_save_service(const std::string& endpoint,
                                                      const SaveServiceRequest& req,
                                                      Millis deadline) {
  return exchange<ServiceDetailResponse>(endpoint, encode_save_service(req), deadline);
}

CallResult<SuccessReport> remote_delete_business(const std::string& endpoint,
                                                 const DeleteBusinessRequest& req,
                                                 Millis deadline) {
  return exchange<SuccessReport>(endpoint, encode_delete_business(req), deadline);
}

CallResult<SuccessReport> remote_delete_service(const std::string& endpoint,
                                                const DeleteServiceRequest& req,
                                                Millis deadline) {
  return exchange<SuccessReport>(endpoint, encode_delete_service(req), deadline);
}

}  // namespace disco::uddi
