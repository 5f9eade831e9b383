#include <doctest.h>

#include <algorithm>
#include <memory>
#include <set>

#include "disco/agent.hpp"
#include "disco/harness/corpus.hpp"
#include "disco/harness/fake_registry.hpp"

using namespace disco;
using namespace disco::agent;

namespace {

RemoteService remote(const std::string& key, const std::string& endpoint,
                     const std::string& name = "svc") {
  RemoteService s;
  s.ref.service_key = key;
  s.ref.business_key = "bk";
  s.ref.service_name = name;
  s.ref.business_name = "biz";
  s.ref.endpoint = endpoint;
  return s;
}

std::multiset<std::string> key_set(const std::vector<RemoteService>& v) {
  std::multiset<std::string> out;
  for (const auto& s : v) out.insert(s.ref.service_key + "@" + s.ref.endpoint);
  return out;
}

matcher::CanonicalQuery demo_query() { return matcher::normalize("Microsoft"); }

}  // namespace

TEST_CASE("config validation") {
  AgentConfig cfg;
  CHECK_THROWS_AS(cfg.validate(), ValidationError);  // no registries
  cfg.registries = {"http://a:1", "http://a:1"};
  CHECK_THROWS_AS(cfg.validate(), ValidationError);  // duplicates
  cfg.registries = {"http://a:1", "http://b:2"};
  cfg.per_registry_deadline = Millis{500};
  cfg.overall_deadline = Millis{100};
  CHECK_THROWS_AS(cfg.validate(), ValidationError);  // per > overall
  cfg.overall_deadline = Millis{1000};
  CHECK_NOTHROW(cfg.validate());
}

TEST_CASE("merge keeps cross-endpoint duplicates but drops same-endpoint ones") {
  // [[A,B],[B',C]] where B and B' share a key but come from distinct endpoints
  std::vector<RegistryBatch> batches{
      {"http://r1:1", {remote("A", "http://r1:1"), remote("B", "http://r1:1")}},
      {"http://r2:2", {remote("B", "http://r2:2"), remote("C", "http://r2:2")}}};
  auto merged = merge(batches);
  REQUIRE(merged.size() == 4);
  CHECK(merged[0].ref.service_key == "A");
  CHECK(merged[1].ref.service_key == "B");
  CHECK(merged[2].ref.service_key == "B");
  CHECK(merged[3].ref.service_key == "C");

  // the same list twice from one endpoint collapses to one copy
  std::vector<RegistryBatch> dup{
      {"http://r1:1",
       {remote("A", "http://r1:1"), remote("A", "http://r1:1"), remote("B", "http://r1:1")}}};
  CHECK(merge(dup).size() == 2);

  // deterministic for a fixed input order
  CHECK(key_set(merge(batches)) == key_set(merge(batches)));
}

TEST_CASE("fan-out latency tracks the slowest registry, not the sum") {
  std::vector<std::unique_ptr<harness::FakeRegistry>> cluster;
  AgentConfig cfg;
  int delays[] = {100, 150, 200};
  for (int d : delays) {
    auto reg = std::make_unique<harness::FakeRegistry>("r" + std::to_string(d));
    harness::seed_demo_corpus(reg->store());
    reg->set_delay(Millis{d});
    cfg.registries.push_back(reg->start());
    cluster.push_back(std::move(reg));
  }
  cfg.per_registry_deadline = Millis{3000};
  cfg.overall_deadline = Millis{6000};

  auto result = fan_out(cfg, demo_query());
  CHECK(result.elapsed.count() >= 200);
  CHECK(result.elapsed.count() < 450);  // far below the 450 ms serial sum
  CHECK(result.merged.size() == 9);     // 3 services from each of 3 registries
  CHECK(result.ok_count() == 3);
}

TEST_CASE("serial fan-out latency is roughly the sum of delays") {
  std::vector<std::unique_ptr<harness::FakeRegistry>> cluster;
  AgentConfig cfg;
  for (int i = 0; i < 3; ++i) {
    auto reg = std::make_unique<harness::FakeRegistry>("r" + std::to_string(i));
    harness::seed_demo_corpus(reg->store());
    reg->set_delay(Millis{100});
    cfg.registries.push_back(reg->start());
    cluster.push_back(std::move(reg));
  }
  cfg.per_registry_deadline = Millis{3000};
  cfg.overall_deadline = Millis{10000};

  auto serial = serial_fan_out(cfg, demo_query());
  CHECK(serial.elapsed.count() >= 300);
  CHECK(serial.elapsed.count() < 700);

  // identical merged sets in both modes on a failure-free fixture
  auto concurrent = fan_out(cfg, demo_query());
  CHECK(key_set(serial.merged) == key_set(concurrent.merged));

  // degenerate single-registry case: both modes take about one delay
  AgentConfig one;
  one.registries = {cfg.registries[0]};
  one.per_registry_deadline = Millis{3000};
  one.overall_deadline = Millis{10000};
  auto serial_one = serial_fan_out(one, demo_query());
  auto fan_one = fan_out(one, demo_query());
  CHECK(serial_one.elapsed.count() < 300);
  CHECK(fan_one.elapsed.count() < 300);
  CHECK(key_set(serial_one.merged) == key_set(fan_one.merged));
}

TEST_CASE("partial failure returns the live registries' results with a total status map") {
  harness::FakeRegistry live("live");
  harness::seed_demo_corpus(live.store());
  harness::FakeRegistry down("down");
  down.set_failure_mode(harness::FailureMode::refuse);

  AgentConfig cfg;
  cfg.registries = {down.start(), live.start()};
  cfg.per_registry_deadline = Millis{2000};
  cfg.overall_deadline = Millis{5000};

  auto result = fan_out(cfg, demo_query());
  CHECK(result.merged.size() == 3);
  for (const auto& s : result.merged) CHECK(s.ref.endpoint == cfg.registries[1]);

  REQUIRE(result.per_registry.size() == 2);
  CHECK(result.per_registry[0].first == cfg.registries[0]);
  CHECK(result.per_registry[0].second.kind == StatusKind::transport_error);
  CHECK(result.per_registry[1].second.kind == StatusKind::ok);
  CHECK(result.per_registry[1].second.count == 3);
}

TEST_CASE("garbage responses count as protocol errors") {
  harness::FakeRegistry garbage("garbage");
  garbage.set_failure_mode(harness::FailureMode::garbage);
  harness::FakeRegistry live("live");
  harness::seed_demo_corpus(live.store());

  AgentConfig cfg;
  cfg.registries = {garbage.start(), live.start()};
  cfg.per_registry_deadline = Millis{2000};
  cfg.overall_deadline = Millis{5000};

  auto result = fan_out(cfg, demo_query());
  CHECK(result.per_registry[0].second.kind == StatusKind::protocol_error);
  CHECK(result.merged.size() == 3);
}

TEST_CASE("all registries failing raises an error carrying the statuses") {
  harness::FakeRegistry down1("d1"), down2("d2");
  down1.set_failure_mode(harness::FailureMode::refuse);
  down2.set_failure_mode(harness::FailureMode::refuse);

  AgentConfig cfg;
  cfg.registries = {down1.start(), down2.start()};
  cfg.per_registry_deadline = Millis{500};
  cfg.overall_deadline = Millis{2000};

  try {
    fan_out(cfg, demo_query());
    FAIL("expected AllRegistriesFailed");
  } catch (const AllRegistriesFailed& e) {
    REQUIRE(e.statuses.size() == 2);
    CHECK(e.statuses[0].second.kind == StatusKind::transport_error);
    CHECK(e.statuses[1].second.kind == StatusKind::transport_error);
  }
}

TEST_CASE("deadlines cap fan-out even against a hanging registry") {
  harness::FakeRegistry hang("hang");
  harness::seed_demo_corpus(hang.store());
  hang.set_failure_mode(harness::FailureMode::timeout);
  hang.set_timeout_hold(Millis{3000});
  harness::FakeRegistry live("live");
  harness::seed_demo_corpus(live.store());

  AgentConfig cfg;
  cfg.registries = {hang.start(), live.start()};
  cfg.per_registry_deadline = Millis{300};
  cfg.overall_deadline = Millis{600};

  auto t0 = std::chrono::steady_clock::now();
  auto result = fan_out(cfg, demo_query());
  auto walltime = std::chrono::duration_cast<Millis>(std::chrono::steady_clock::now() - t0);

  CHECK(result.per_registry[0].second.kind == StatusKind::timeout);
  CHECK(result.per_registry[1].second.kind == StatusKind::ok);
  CHECK(result.merged.size() == 3);
  CHECK(result.elapsed.count() <= 600 + 100);  // overall deadline + grace
  CHECK(walltime.count() <= 600 + 200);

  hang.stop();  // waits out the sleeping handler
}
