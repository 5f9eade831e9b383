#include <doctest.h>

#include <algorithm>
#include <cctype>
#include <random>
#include <set>
#include <thread>

#include "disco/harness/corpus.hpp"
#include "disco/registry.hpp"

using namespace disco;

namespace {

// Case-folding oracle: uppercase both sides, plain substring search.
bool oracle_match(const std::string& hay, const std::string& needle) {
  auto upper = [](std::string s) {
    for (char& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    return s;
  };
  return upper(hay).find(upper(needle)) != std::string::npos;
}

// Full referential-integrity audit of a store.
void audit(const RegistryStore& store) {
  auto businesses = store.all_businesses();
  auto services = store.all_services();
  std::set<std::string> business_keys;
  for (const auto& b : businesses) business_keys.insert(b.business_key);
  for (const auto& s : services) {
    REQUIRE_MESSAGE(business_keys.count(s.business_key) == 1,
                    "dangling service " << s.service_key);
    auto owner = store.get_business(s.business_key);
    REQUIRE(owner.has_value());
    CHECK(owner->services.count(s.service_key) == 1);
  }
  for (const auto& b : businesses) {
    for (const auto& sk : b.services) CHECK(store.get_service(sk).has_value());
  }
}

}  // namespace

TEST_CASE("save_business issues fresh retrievable keys") {
  RegistryStore store;
  std::string key = store.save_business("Microsoft DRMS Dev", "en");
  CHECK(KeyGenerator::looks_like_key(key));
  auto biz = store.get_business(key);
  REQUIRE(biz.has_value());
  CHECK(biz->name == "Microsoft DRMS Dev");

  CHECK_THROWS_AS(store.save_business("", "en"), ValidationError);

  std::string key2 = store.save_business("Microsoft DRMS Dev", "en");
  CHECK(key2 != key);
  CHECK(store.get_business(key2).has_value());
  CHECK(store.get_business(key).has_value());
}

TEST_CASE("save_service links services under their business") {
  RegistryStore store;
  std::string biz = store.save_business("Microsoft DRMS Dev");
  std::string svc = store.save_service(biz, "Certification", "en", "uncategorized");
  CHECK(KeyGenerator::looks_like_key(svc));

  CHECK_THROWS_AS(store.save_service("not-a-key", "X", "en", "c"), NotFoundError);
  CHECK_THROWS_AS(store.save_service(biz, "", "en", "c"), ValidationError);

  store.save_service(biz, "Machine Activation");
  store.save_service(biz, "Server Enrollment");
  auto found = store.find_businesses("Microsoft");
  REQUIRE(found.size() == 1);
  CHECK(found[0].second.size() == 3);
}

TEST_CASE("update, delete and cascade behave per contract") {
  RegistryStore store;
  std::string biz = store.save_business("Acme");
  std::string svc = store.save_service(biz, "Old Name");

  store.update_service(svc, "New Name");
  CHECK(store.get_service(svc)->name == "New Name");
  CHECK_THROWS_AS(store.update_service("nope", "x"), NotFoundError);
  CHECK_THROWS_AS(store.update_service(svc, std::optional<std::string>{""}),
                  ValidationError);

  // update with no new name is a no-op
  store.update_service(svc, std::nullopt);
  CHECK(store.get_service(svc)->name == "New Name");

  store.delete_service(svc);
  CHECK_FALSE(store.get_service(svc).has_value());
  CHECK_THROWS_AS(store.delete_service(svc), NotFoundError);

  std::string svc2 = store.save_service(biz, "Survivor");
  store.delete_business(biz);
  CHECK(store.find_services("Survivor").empty());
  CHECK_FALSE(store.get_service(svc2).has_value());
  CHECK_THROWS_AS(store.delete_business(biz), NotFoundError);
  audit(store);
}

TEST_CASE("find_businesses over the demo corpus") {
  RegistryStore store("ms.com");
  harness::seed_demo_corpus(store);

  auto found = store.find_businesses("Microsoft");
  REQUIRE(found.size() == 1);
  CHECK(found[0].first.name == "Microsoft DRMS Dev");
  REQUIRE(found[0].second.size() == 3);
  // deterministic order: name ascending
  CHECK(found[0].second[0].name == "Certification");
  CHECK(found[0].second[1].name == "Machine Activation");
  CHECK(found[0].second[2].name == "Server Enrollment");

  CHECK(store.find_businesses("zzz-no-such").empty());

  auto lower = store.find_businesses("microsoft");
  REQUIRE(lower.size() == 1);
  CHECK(lower[0].first.business_key == found[0].first.business_key);
}

TEST_CASE("find_services filters by name substring and category") {
  RegistryStore store;
  harness::seed_demo_corpus(store);

  auto hits = store.find_services("Activation");
  REQUIRE(hits.size() == 1);
  CHECK(hits[0].name == "Machine Activation");

  CHECK(store.find_services("Activation", std::optional<std::string>("uncategorized")).size() == 1);
  CHECK(store.find_services("Activation", std::optional<std::string>("images")).empty());
}

TEST_CASE("defaulted fields: empty category becomes uncategorized") {
  RegistryStore store;
  std::string biz = store.save_business("Acme");
  std::string svc = store.save_service(biz, "Thing", "en", "");
  CHECK(store.get_service(svc)->category == "uncategorized");
}

TEST_CASE("find equals brute-force scan on a generated corpus") {
  std::mt19937 rng(4242);
  RegistryStore store;
  static const char* words[] = {"Alpha", "beta", "GAMMA", "delta", "Epsilon",
                                "zeta",  "Eta",  "theta", "Iota",  "kappa"};
  std::uniform_int_distribution<int> w(0, 9);
  for (int i = 0; i < 60; ++i) {
    std::string name = std::string(words[w(rng)]) + " " + words[w(rng)];
    std::string biz = store.save_business(name);
    for (int j = 0, n = w(rng) % 3; j < n; ++j)
      store.save_service(biz, std::string(words[w(rng)]) + " svc");
  }

  static const char* queries[] = {"alpha", "BETA", "ta",  "Epsilon", "x",
                                  "a",     "",     "zz",  "GAMMA s", "kappa"};
  for (const char* q : queries) {
    auto got = store.find_businesses(q);
    std::vector<std::string> got_keys;
    for (const auto& [b, svcs] : got) got_keys.push_back(b.business_key);

    std::vector<std::string> want_keys;
    for (const auto& b : store.all_businesses())
      if (oracle_match(b.name, q)) want_keys.push_back(b.business_key);
    // order: name then key — mirror it for comparison
    std::sort(want_keys.begin(), want_keys.end(), [&](const auto& a, const auto& b) {
      auto ba = store.get_business(a), bb = store.get_business(b);
      return std::tie(ba->name, ba->business_key) < std::tie(bb->name, bb->business_key);
    });
    CHECK(got_keys == want_keys);
  }
}

TEST_CASE("random operation sequences preserve referential integrity and key freshness") {
  std::mt19937 rng(99);
  RegistryStore store;
  std::vector<std::string> business_keys, service_keys;
  std::set<std::string> ever_issued;

  auto remember = [&](const std::string& key) {
    CHECK(ever_issued.insert(key).second);  // keys never reused
    return key;
  };

  std::uniform_int_distribution<int> op(0, 9);
  for (int i = 0; i < 2000; ++i) {
    switch (op(rng)) {
      case 0:
      case 1:
      case 2:
        business_keys.push_back(remember(store.save_business("B" + std::to_string(i))));
        break;
      case 3:
      case 4:
      case 5:
        if (!business_keys.empty()) {
          auto& biz = business_keys[rng() % business_keys.size()];
          if (store.get_business(biz))
            service_keys.push_back(remember(store.save_service(biz, "S" + std::to_string(i))));
        }
        break;
      case 6:
        if (!service_keys.empty()) {
          auto& key = service_keys[rng() % service_keys.size()];
          if (store.get_service(key)) store.update_service(key, "U" + std::to_string(i));
        }
        break;
      case 7:
        if (!service_keys.empty()) {
          auto& key = service_keys[rng() % service_keys.size()];
          if (store.get_service(key)) store.delete_service(key);
        }
        break;
      case 8:
        if (!business_keys.empty()) {
          auto& key = business_keys[rng() % business_keys.size()];
          if (store.get_business(key)) store.delete_business(key);
        }
        break;
      default:
        store.find_businesses("B1");
    }
  }
  audit(store);
}

TEST_CASE("concurrent mixed operations keep the store consistent") {
  RegistryStore store;
  std::vector<std::string> roots;
  for (int i = 0; i < 8; ++i) roots.push_back(store.save_business("Root " + std::to_string(i)));

  std::vector<std::thread> threads;
  std::atomic<int> errors{0};
  for (int t = 0; t < 8; ++t) {
    threads.emplace_back([&, t] {
      std::mt19937 rng(t);
      for (int i = 0; i < 200; ++i) {
        try {
          switch (rng() % 4) {
            case 0: store.save_service(roots[rng() % roots.size()], "svc"); break;
            case 1: store.find_businesses("Root"); break;
            case 2: store.find_services("svc"); break;
            default: {
              auto all = store.all_services();
              if (!all.empty()) {
                try {
                  store.delete_service(all[rng() % all.size()].service_key);
                } catch (const NotFoundError&) {
                  // lost the race to another deleter — fine
                }
              }
            }
          }
        } catch (...) {
          errors.fetch_add(1);
        }
      }
    });
  }
  for (auto& t : threads) t.join();
  CHECK(errors.load() == 0);
  audit(store);
}
