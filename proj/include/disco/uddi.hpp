#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "disco/errors.hpp"
#include "disco/xml.hpp"

// UDDI-v2-style wire messages. The inquiry vocabulary (find_business /
// businessList) is fixed element-for-element; the publisher vocabulary
// (save_*, delete_*) and the service-level inquiry (find_service /
// serviceList) follow the same naming conventions. One XML document per
// request and per response; the reference transport binding is HTTP POST to
// /uddi with content type text/xml.
namespace disco::uddi {

inline constexpr std::string_view kNamespace = "urn:uddi-org:api_v2";
inline constexpr std::string_view kGeneric = "2.0";
inline constexpr size_t kMaxListEntries = 100;  // beyond this, truncated="true"

// Root element is well-formed XML but not a message in our namespace, or is
// a message we do not speak.
struct ProtocolError : Error {
  using Error::Error;
};

struct FindBusinessRequest {
  std::string generic{kGeneric};
  std::string name;
  std::vector<std::string> qualifiers;

  friend bool operator==(const FindBusinessRequest&, const FindBusinessRequest&) = default;
};

struct FindServiceRequest {
  std::string generic{kGeneric};
  std::string name;
  std::vector<std::string> qualifiers;
  std::optional<std::string> category;

  friend bool operator==(const FindServiceRequest&, const FindServiceRequest&) = default;
};

struct ServiceInfo {
  std::string business_key;
  std::string service_key;
  std::string name;
  std::string lang{"en"};

  friend bool operator==(const ServiceInfo&, const ServiceInfo&) = default;
};

struct BusinessInfo {
  std::string business_key;
  std::string name;
  std::string lang{"en"};
  std::vector<ServiceInfo> services;

  friend bool operator==(const BusinessInfo&, const BusinessInfo&) = default;
};

struct BusinessListResponse {
  std::string generic{kGeneric};
  std::string operator_id;
  bool truncated = false;
  std::vector<BusinessInfo> businesses;

  friend bool operator==(const BusinessListResponse&, const BusinessListResponse&) = default;
};

// serviceList entries carry the owning business name and the category so the
// broker can score and classify without a second round trip.
struct ServiceRecord {
  std::string business_key;
  std::string service_key;
  std::string name;
  std::string lang{"en"};
  std::string business_name;
  std::string category{"uncategorized"};

  friend bool operator==(const ServiceRecord&, const ServiceRecord&) = default;
};

struct ServiceListResponse {
  std::string generic{kGeneric};
  std::string operator_id;
  bool truncated = false;
  std::vector<ServiceRecord> services;

  friend bool operator==(const ServiceListResponse&, const ServiceListResponse&) = default;
};

struct SaveBusinessRequest {
  std::string generic{kGeneric};
  std::string name;
  std::string lang{"en"};

  friend bool operator==(const SaveBusinessRequest&, const SaveBusinessRequest&) = default;
};

struct BusinessDetailResponse {
  std::string generic{kGeneric};
  std::string operator_id;
  std::string business_key;
  std::string name;
  std::string lang{"en"};

  friend bool operator==(const BusinessDetailResponse&, const BusinessDetailResponse&) = default;
};

// Without service_key this creates a service; with it, it updates the named
// service (save-with-key semantics).
struct SaveServiceRequest {
  std::string generic{kGeneric};
  std::string business_key;
  std::optional<std::string> service_key;
  std::string name;
  std::string lang{"en"};
  std::string category{"uncategorized"};

  friend bool operator==(const SaveServiceRequest&, const SaveServiceRequest&) = default;
};

struct ServiceDetailResponse {
  std::string generic{kGeneric};
  std::string operator_id;
  ServiceRecord service;

  friend bool operator==(const ServiceDetailResponse&, const ServiceDetailResponse&) = default;
};

struct DeleteBusinessRequest {
  std::string generic{kGeneric};
  std::string business_key;

  friend bool operator==(const DeleteBusinessRequest&, const DeleteBusinessRequest&) = default;
};

struct DeleteServiceRequest {
  std::string generic{kGeneric};
  std::string service_key;

  friend bool operator==(const DeleteServiceRequest&, const DeleteServiceRequest&) = default;
};

enum class ErrCode { invalid_key_passed, fatal_error, name_too_short };

std::string_view err_code_name(ErrCode c);
int err_code_errno(ErrCode c);

// Error channel: dispositionReport with a non-zero errno.
struct DispositionReport {
  ErrCode code = ErrCode::fatal_error;
  std::string message;

  friend bool operator==(const DispositionReport&, const DispositionReport&) = default;
};

// dispositionReport with errno="0": acknowledgment for delete operations.
struct SuccessReport {
  std::string message{"ok"};

  friend bool operator==(const SuccessReport&, const SuccessReport&) = default;
};

using Request = std::variant<FindBusinessRequest, FindServiceRequest, SaveBusinessRequest,
                             SaveServiceRequest, DeleteBusinessRequest, DeleteServiceRequest>;
using Response = std::variant<BusinessListResponse, ServiceListResponse,
                              BusinessDetailResponse, ServiceDetailResponse, SuccessReport,
                              DispositionReport>;

// Encoders. Throw ValidationError when the message violates its invariants
// (e.g. empty name).
std::string encode_find_business(const FindBusinessRequest& req);
std::string encode_find_service(const FindServiceRequest& req);
std::string encode_save_business(const SaveBusinessRequest& req);
std::string encode_save_service(const SaveServiceRequest& req);
std::string encode_delete_business(const DeleteBusinessRequest& req);
std::string encode_delete_service(const DeleteServiceRequest& req);
std::string encode_business_list(const BusinessListResponse& resp);
std::string encode_service_list(const ServiceListResponse& resp);
std::string encode_business_detail(const BusinessDetailResponse& resp);
std::string encode_service_detail(const ServiceDetailResponse& resp);
std::string encode_disposition(const DispositionReport& report, std::string_view operator_id);
std::string encode_success(const SuccessReport& report, std::string_view operator_id);

// Decoders. Throw xml::ParseError on malformed XML, ProtocolError on a wrong
// namespace or unknown root, ValidationError on missing required fields.
FindBusinessRequest decode_find_business(std::string_view bytes);
BusinessListResponse decode_business_list(std::string_view bytes);
Request decode_request(std::string_view bytes);
Response decode_response(std::string_view bytes);

std::string root_name(std::string_view bytes);  // parses, returns root element name

}  // namespace disco::uddi
