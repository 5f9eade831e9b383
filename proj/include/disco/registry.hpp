#pragma once

#include <map>
#include <optional>
#include <set>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "disco/errors.hpp"
#include "disco/keys.hpp"

namespace disco {

struct BusinessEntity {
  std::string business_key;
  std::string name;
  std::string lang{"en"};
  std::set<std::string> services;  // service keys owned by this business

  friend bool operator==(const BusinessEntity&, const BusinessEntity&) = default;
};

struct ServiceEntry {
  std::string service_key;
  std::string business_key;
  std::string name;
  std::string lang{"en"};
  std::string category{"uncategorized"};

  friend bool operator==(const ServiceEntry&, const ServiceEntry&) = default;
};

using BusinessWithServices = std::pair<BusinessEntity, std::vector<ServiceEntry>>;

// In-memory store of businesses and services. All operations are atomic;
// many concurrent readers, exclusive writers. Name matching is
// case-insensitive substring; ranking and fuzzy logic live in the broker,
// not here. Keys are UUID-v4-format strings and are never reused within one
// store lifetime.
class RegistryStore {
 public:
  explicit RegistryStore(std::string operator_id = "disco.local",
                         std::optional<uint64_t> key_seed = std::nullopt);

  // Publisher operations. Throw ValidationError / NotFoundError.
  std::string save_business(std::string_view name, std::string_view lang = "en");
  std::string save_service(const std::string& business_key, std::string_view name,
                           std::string_view lang = "en",
                           std::string_view category = "uncategorized");
  void update_service(const std::string& service_key,
                      const std::optional<std::string>& new_name);
  void delete_service(const std::string& service_key);
  void delete_business(const std::string& business_key);  // cascades

  // Inquiry. Empty query matches everything. Results ordered by
  // (name ascending, key ascending); nested service lists likewise.
  std::vector<BusinessWithServices> find_businesses(std::string_view name_query) const;
  std::vector<ServiceEntry> find_services(
      std::string_view name_query,
      const std::optional<std::string>& category = std::nullopt) const;

  std::optional<BusinessEntity> get_business(const std::string& key) const;
  std::optional<ServiceEntry> get_service(const std::string& key) const;

  // Fixture seam: insert entities with caller-chosen keys. Validates the
  // same invariants as the save path.
  void insert_business(const BusinessEntity& b);
  void insert_service(const ServiceEntry& s);

  std::vector<BusinessEntity> all_businesses() const;
  std::vector<ServiceEntry> all_services() const;

  const std::string& operator_id() const { return operator_id_; }
  size_t business_count() const;
  size_t service_count() const;

 private:
  std::string fresh_key_locked();

  std::string operator_id_;
  mutable std::shared_mutex mu_;
  std::map<std::string, BusinessEntity> businesses_;
  std::map<std::string, ServiceEntry> services_;
  std::unordered_set<std::string> issued_keys_;
  KeyGenerator keygen_;
};

// Case-insensitive (ASCII) substring test used for registry-local matching.
bool contains_ci(std::string_view haystack, std::string_view needle);
bool equals_ci(std::string_view a, std::string_view b);

}  // namespace disco
