#pragma once

#include <optional>
#include <string>

#include "disco/clock.hpp"
#include "disco/uddi.hpp"

namespace disco::uddi {

// Distinct failure kinds so callers can count what went wrong per registry.
enum class CallError { none, timeout, transport, protocol };

std::string_view call_error_name(CallError e);

template <typename T>
struct CallResult {
  std::optional<T> value;
  CallError error = CallError::none;
  std::string detail;

  bool ok() const { return value.has_value(); }
};

// Blocking request/response against one registry endpoint ("host:port" or
// "http://host:port"). Returns by the deadline or with a timeout error; a
// dispositionReport answer to an inquiry surfaces as a protocol error.
CallResult<BusinessListResponse> remote_find_business(const std::string& endpoint,
                                                      const FindBusinessRequest& req,
                                                      Millis deadline);
CallResult<ServiceListResponse> remote_find_service(const std::string& endpoint,
                                                    const FindServiceRequest& req,
                                                    Millis deadline);
CallResult<BusinessDetailResponse> remote_save_business(const std::string& endpoint,
                                                        const SaveBusinessRequest& req,
                                                        Millis deadline);
CallResult<ServiceDetailResponse> remote_save_service(const std::string& endpoint,
                                                      const SaveServiceRequest& req,
                                                      Millis deadline);
CallResult<SuccessReport> remote_delete_business(const std::string& endpoint,
                                                 const DeleteBusinessRequest& req,
                                                 Millis deadline);
CallResult<SuccessReport> remote_delete_service(const std::string& endpoint,
                                                const DeleteServiceRequest& req,
                                                Millis deadline);

}  // namespace disco::uddi
