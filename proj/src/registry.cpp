#include "disco/registry.hpp"

#include <algorithm>
#include <cctype>
#include <mutex>

namespace disco {

namespace {

char upper_ascii(char c) {
  return static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
}

}  // namespace

bool contains_ci(std::string_view haystack, std::string_view needle) {
  if (needle.empty()) return true;
  if (needle.size() > haystack.size()) return false;
  auto it = std::search(haystack.begin(), haystack.end(), needle.begin(), needle.end(),
                        [](char a, char b) { return upper_ascii(a) == upper_ascii(b); });
  return it != haystack.end();
}

bool equals_ci(std::string_view a, std::string_view b) {
  return a.size() == b.size() && contains_ci(a, b);
}

RegistryStore::RegistryStore(std::string operator_id, std::optional<uint64_t> key_seed)
    : operator_id_(std::move(operator_id)), keygen_(key_seed) {}

std::string RegistryStore::fresh_key_locked() {
  std::string k = keygen_.next();
  while (issued_keys_.count(k) != 0) k = keygen_.next();
  issued_keys_.insert(k);
  return k;
}

std::string RegistryStore::save_business(std::string_view name, std::string_view lang) {
  if (name.empty()) throw ValidationError("business name must be non-empty");
  std::unique_lock lock(mu_);
  std::string key = fresh_key_locked();
  BusinessEntity b;
  b.business_key = key;
  b.name = std::string(name);
  b.lang = lang.empty() ? "en" : std::string(lang);
  businesses_.emplace(key, std::move(b));
  return key;
}

std::string RegistryStore::save_service(const std::string& business_key,
                                        std::string_view name, std::string_view lang,
                                        std::string_view category) {
  if (name.empty()) throw ValidationError("service name must be non-empty");
  std::unique_lock lock(mu_);
  auto it = businesses_.find(business_key);
  if (it == businesses_.end())
    throw NotFoundError("unknown business key: " + business_key);
  std::string key = fresh_key_locked();
  ServiceEntry s;
  s.service_key = key;
  s.business_key = business_key;
  s.name = std::string(name);
  s.lang = lang.empty() ? "en" : std::string(lang);
  s.category = category.empty() ? "uncategorized" : std::string(category);
  services_.emplace(key, std::move(s));
  it->second.services.insert(key);
  return key;
}

void RegistryStore::update_service(const std::string& service_key,
                                   const std::optional<std::string>& new_name) {
  std::unique_lock lock(mu_);
  auto it = services_.find(service_key);
  if (it == services_.end()) throw NotFoundError("unknown service key: " + service_key);
  if (new_name) {
    if (new_name->empty()) throw ValidationError("service name must be non-empty");
    it->second.name = *new_name;
  }
}

void RegistryStore::delete_service(const std::string& service_key) {
  std::unique_lock lock(mu_);
  auto it = services_.find(service_key);
  if (it == services_.end()) throw NotFoundError("unknown service key: " + service_key);
  auto owner = businesses_.find(it->second.business_key);
  if (owner != businesses_.end()) owner->second.services.erase(service_key);
  services_.erase(it);
}

void RegistryStore::delete_business(const std::string& business_key) {
  std::unique_lock lock(mu_);
  auto it = businesses_.find(business_key);
  if (it == businesses_.end())
    throw NotFoundError("unknown business key: " + business_key);
  for (const auto& skey : it->second.services) services_.erase(skey);
  businesses_.erase(it);
}

std::vector<BusinessWithServices> RegistryStore::find_businesses(
    std::string_view name_query) const {
  std::shared_lock lock(mu_);
  std::vector<BusinessWithServices> out;
  for (const auto& [key, biz] : businesses_) {
    if (!contains_ci(biz.name, name_query)) continue;
    std::vector<ServiceEntry> svcs;
    svcs.reserve(biz.services.size());
    for (const auto& skey : biz.services) {
      auto sit = services_.find(skey);
      if (sit != services_.end()) svcs.push_back(sit->second);
    }
    std::sort(svcs.begin(), svcs.end(), [](const ServiceEntry& a, const ServiceEntry& b) {
      return std::tie(a.name, a.service_key) < std::tie(b.name, b.service_key);
    });
    out.emplace_back(biz, std::move(svcs));
  }
  std::sort(out.begin(), out.end(),
            [](const BusinessWithServices& a, const BusinessWithServices& b) {
              return std::tie(a.first.name, a.first.business_key) <
                     std::tie(b.first.name, b.first.business_key);
            });
  return out;
}

std::vector<ServiceEntry> RegistryStore::find_services(
    std::string_view name_query, const std::optional<std::string>& category) const {
  std::shared_lock lock(mu_);
  std::vector<ServiceEntry> out;
  for (const auto& [key, svc] : services_) {
    if (!contains_ci(svc.name, name_query)) continue;
    if (category && !equals_ci(svc.category, *category)) continue;
    out.push_back(svc);
  }
  std::sort(out.begin(), out.end(), [](const ServiceEntry& a, const ServiceEntry& b) {
    return std::tie(a.name, a.service_key) < std::tie(b.name, b.service_key);
  });
  return out;
}

std::optional<BusinessEntity> RegistryStore::get_business(const std::string& key) const {
  std::shared_lock lock(mu_);
  auto it = businesses_.find(key);
  if (it == businesses_.end()) return std::nullopt;
  return it->second;
}

std::optional<ServiceEntry> RegistryStore::get_service(const std::string& key) const {
  std::shared_lock lock(mu_);
  auto it = services_.find(key);
  if (it == services_.end()) return std::nullopt;
  return it->second;
}

void RegistryStore::insert_business(const BusinessEntity& b) {
  if (b.name.empty()) throw ValidationError("business name must be non-empty");
  if (b.business_key.empty()) throw ValidationError("business key must be non-empty");
  std::unique_lock lock(mu_);
  if (issued_keys_.count(b.business_key) != 0)
    throw ValidationError("key already issued in this store: " + b.business_key);
  BusinessEntity copy = b;
  copy.services.clear();  // memberships are derived from inserted services
  issued_keys_.insert(copy.business_key);
  businesses_.emplace(copy.business_key, std::move(copy));
}

void RegistryStore::insert_service(const ServiceEntry& s) {
  if (s.name.empty()) throw ValidationError("service name must be non-empty");
  if (s.service_key.empty()) throw ValidationError("service key must be non-empty");
  if (s.category.empty()) throw ValidationError("service category must be non-empty");
  std::unique_lock lock(mu_);
  auto it = businesses_.find(s.business_key);
  if (it == businesses_.end())
    throw NotFoundError("unknown business key: " + s.business_key);
  if (issued_keys_.count(s.service_key) != 0)
    throw ValidationError("key already issued in this store: " + s.service_key);
  issued_keys_.insert(s.service_key);
  services_.emplace(s.service_key, s);
  it->second.services.insert(s.service_key);
}

std::vector<BusinessEntity> RegistryStore::all_businesses() const {
  std::shared_lock lock(mu_);
  std::vector<BusinessEntity> out;
  out.reserve(businesses_.size());
  for (const auto& [k, b] : businesses_) out.push_back(b);
  return out;
}

std::vector<ServiceEntry> RegistryStore::all_services() const {
  std::shared_lock lock(mu_);
  std::vector<ServiceEntry> out;
  out.reserve(services_.size());
  for (const auto& [k, s] : services_) out.push_back(s);
  return out;
}

size_t RegistryStore::business_count() const {
  std::shared_lock lock(mu_);
  return businesses_.size();
}

size_t RegistryStore::service_count() const {
  std::shared_lock lock(mu_);
  return services_.size();
}

}  // namespace disco
