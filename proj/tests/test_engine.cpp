#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "disco/bench.hpp"
#include "disco/engine.hpp"
#include "disco/harness/corpus.hpp"
#include "disco/harness/fake_registry.hpp"
#include "disco/uddi_client.hpp"

using namespace disco;

namespace {

EngineConfig engine_config(const std::vector<std::string>& registries,
                           Millis ttl = Millis{300000}) {
  EngineConfig cfg;
  cfg.agent.registries = registries;
  cfg.agent.per_registry_deadline = Millis{2000};
  cfg.agent.overall_deadline = Millis{5000};
  cfg.ttl = ttl;
  return cfg;
}

std::set<std::string> result_keys(const DiscoveryResult& r) {
  std::set<std::string> out;
  for (const auto& c : r.candidates) out.insert(c.ref.service_key);
  return out;
}

}  // namespace

TEST_CASE("discover: web on cold cache, cache on repeat, zero registry calls") {
  harness::FakeRegistry reg("ms.com");
  harness::seed_demo_corpus(reg.store());
  LogicalClock clock;
  Engine engine(engine_config({reg.start()}), clock);

  DiscoveryResult first = engine.discover("Microsoft");
  CHECK_FALSE(first.from_cache);
  CHECK(first.candidates.size() == 3);
  for (const auto& c : first.candidates) CHECK(c.origin == Origin::web);
  CHECK(engine.fan_out_count() == 1);
  uint64_t calls_after_first = reg.calls();
  CHECK(calls_after_first > 0);

  clock.advance(Millis{1000});  // within TTL
  DiscoveryResult second = engine.discover("Microsoft");
  CHECK(second.from_cache);
  for (const auto& c : second.candidates) CHECK(c.origin == Origin::cache);
  CHECK(result_keys(second) == result_keys(first));
  CHECK(reg.calls() == calls_after_first);  // zero additional registry requests
  CHECK(engine.fan_out_count() == 1);
}

TEST_CASE("discover: TTL expiry refetches and reflects a registry-side rename") {
  harness::FakeRegistry reg("ms.com");
  harness::seed_demo_corpus(reg.store());
  LogicalClock clock;
  Engine engine(engine_config({reg.start()}, Millis{60000}), clock);

  engine.discover("Microsoft");
  CHECK(engine.fan_out_count() == 1);

  // Rename on the registry through the publisher wire message.
  uddi::SaveServiceRequest rename;
  rename.business_key = harness::DemoCorpus::kBusinessKey;
  rename.service_key = harness::DemoCorpus::kCertificationKey;
  rename.name = "Certification v2";
  auto renamed = uddi::remote_save_service(reg.endpoint(), rename, Millis{2000});
  REQUIRE(renamed.ok());

  // Still within TTL: the cache answers with the old name and no fan-out.
  clock.advance(Millis{1000});
  DiscoveryResult cached = engine.discover("Microsoft");
  CHECK(cached.from_cache);
  bool saw_old = false;
  for (const auto& c : cached.candidates)
    if (c.ref.service_name == "Certification") saw_old = true;
  CHECK(saw_old);
  CHECK(engine.fan_out_count() == 1);

  // Past TTL: exactly one more fan-out, new name visible.
  clock.advance(Millis{60001});
  DiscoveryResult refreshed = engine.discover("Microsoft");
  CHECK_FALSE(refreshed.from_cache);
  CHECK(engine.fan_out_count() == 2);
  bool saw_new = false;
  for (const auto& c : refreshed.candidates)
    if (c.ref.service_name == "Certification v2") saw_new = true;
  CHECK(saw_new);
}

TEST_CASE("discover: no service found on an empty corpus") {
  harness::FakeRegistry reg("empty");
  LogicalClock clock;
  Engine engine(engine_config({reg.start()}), clock);

  DiscoveryResult r = engine.discover("zzz");
  CHECK(r.candidates.empty());
  CHECK(matcher::render_response(r.candidates, matcher::OutputFormat::table) ==
        "no service found\n");
}

TEST_CASE("discover: empty query is rejected") {
  harness::FakeRegistry reg("ms.com");
  LogicalClock clock;
  Engine engine(engine_config({reg.start()}), clock);
  CHECK_THROWS_AS(engine.discover("  ---  "), EmptyQueryError);
}

TEST_CASE("discover: all registries failing on a cold cache raises the error") {
  harness::FakeRegistry down("down");
  down.set_failure_mode(harness::FailureMode::refuse);
  LogicalClock clock;
  EngineConfig cfg = engine_config({down.start()});
  cfg.agent.per_registry_deadline = Millis{300};
  cfg.agent.overall_deadline = Millis{1000};
  Engine engine(cfg, clock);

  CHECK_THROWS_AS(engine.discover("Microsoft"), agent::AllRegistriesFailed);
}

TEST_CASE("discover: constraints filter before write-back, lookup re-applies them") {
  harness::FakeRegistry reg("ms.com");
  harness::seed_demo_corpus(reg.store());
  LogicalClock clock;
  Engine engine(engine_config({reg.start()}), clock);

  DiscoveryResult r = engine.discover("Microsoft where service_name~Activation");
  REQUIRE(r.candidates.size() == 1);
  CHECK(r.candidates[0].ref.service_name == "Machine Activation");

  // Only the survivor was written back.
  CHECK(engine.cache().size() == 1);

  // A repeat under a different constraint can't be served by violating
  // entries: the cached entry fails the new constraint, engine goes to web.
  DiscoveryResult other = engine.discover("Microsoft where service_name~Enrollment");
  REQUIRE(other.candidates.size() == 1);
  CHECK(other.candidates[0].ref.service_name == "Server Enrollment");
  CHECK_FALSE(other.from_cache);
}

TEST_CASE("discover: synonyms reach the wire and carry the penalty") {
  harness::FakeRegistry reg("cars");
  std::string biz = reg.store().save_business("Wheels Inc");
  reg.store().save_service(biz, "Automobile Rental");

  char synonyms_path[] = "/tmp/disco_syn_XXXXXX";
  {
    int fd = mkstemp(synonyms_path);
    REQUIRE(fd >= 0);
    FILE* f = fdopen(fd, "w");
    std::fputs("# demo synonyms\ncar,automobile\n", f);
    std::fclose(f);
  }

  LogicalClock clock;
  EngineConfig cfg = engine_config({reg.start()});
  cfg.synonyms_path = synonyms_path;
  Engine engine(cfg, clock);

  DiscoveryResult r = engine.discover("car");
  REQUIRE(r.candidates.size() == 1);
  CHECK(r.candidates[0].ref.service_name == "Automobile Rental");
  CHECK(r.candidates[0].score == doctest::Approx(0.9));

  // Repeat resolves from the cache with the same result.
  DiscoveryResult again = engine.discover("car");
  CHECK(again.from_cache);
  CHECK(result_keys(again) == result_keys(r));

  std::remove(synonyms_path);
}

TEST_CASE("publish: created entities are immediately discoverable") {
  harness::FakeRegistry reg("pub");
  LogicalClock clock;
  Engine engine(engine_config({reg.start()}), clock);

  PublishResult pub = engine.publish(
      reg.endpoint(), "Acme Search",
      {{"Web Crawler", "crawlers"}, {"Rank Service", "ranking"}});
  CHECK(KeyGenerator::looks_like_key(pub.business_key));
  REQUIRE(pub.service_keys.size() == 2);

  DiscoveryResult r = engine.discover("crawler");
  REQUIRE(r.candidates.size() == 1);
  CHECK(r.candidates[0].ref.service_key == pub.service_keys[0]);
  CHECK(r.candidates[0].category == "crawlers");

  // Duplicate publish: both copies live under distinct keys.
  PublishResult dup = engine.publish(reg.endpoint(), "Acme Search", {{"Web Crawler", "crawlers"}});
  CHECK(dup.business_key != pub.business_key);
  DiscoveryResult both = engine.discover("crawler", {.bypass_cache = true});
  CHECK(both.candidates.size() == 2);
}

TEST_CASE("publish: a dead endpoint surfaces a transport error and caches nothing") {
  harness::FakeRegistry down("down");
  down.set_failure_mode(harness::FailureMode::refuse);
  harness::FakeRegistry live("live");
  LogicalClock clock;
  Engine engine(engine_config({live.start()}), clock);

  CHECK_THROWS_AS(engine.publish(down.start(), "Acme", {{"Thing", "c"}}), Error);
  CHECK(engine.cache().size() == 0);
}

TEST_CASE("discover: mixed freshness serves fresh entries without a fan-out") {
  harness::FakeRegistry reg("mix");
  std::string biz = reg.store().save_business("Depot");
  reg.store().save_service(biz, "Paper Shredder");
  reg.store().save_service(biz, "Paper Press");

  LogicalClock clock;
  Engine engine(engine_config({reg.start()}, Millis{10000}), clock);

  // Warm both; then age one below via a targeted put with a shorter TTL.
  engine.discover("paper");
  CHECK(engine.fan_out_count() == 1);
  auto entries = engine.cache().all_entries();
  REQUIRE(entries.size() == 2);
  engine.cache().put(entries[0].ref, entries[0].category, clock.now(), Millis{100});

  clock.advance(Millis{5000});  // first entry stale, second fresh
  DiscoveryResult r = engine.discover("paper");
  CHECK(r.from_cache);
  CHECK(r.candidates.size() == 1);
  CHECK(engine.fan_out_count() == 1);  // no refresh while fresh hits exist

  // Once nothing fresh remains, the engine refreshes from the web.
  clock.advance(Millis{6000});
  DiscoveryResult refreshed = engine.discover("paper");
  CHECK_FALSE(refreshed.from_cache);
  CHECK(refreshed.candidates.size() == 2);
  CHECK(engine.fan_out_count() == 2);
}

TEST_CASE("engine cache snapshot round trip") {
  harness::FakeRegistry reg("snap");
  harness::seed_demo_corpus(reg.store());
  char snapshot_path[] = "/tmp/disco_snap_XXXXXX";
  {
    int fd = mkstemp(snapshot_path);
    REQUIRE(fd >= 0);
    close(fd);
  }

  LogicalClock clock;
  EngineConfig cfg = engine_config({reg.start()});
  cfg.cache_snapshot_path = snapshot_path;
  {
    Engine engine(cfg, clock);
    engine.discover("Microsoft");
    CHECK(engine.cache().size() == 3);
    engine.save_cache_snapshot();
  }
  {
    Engine restored(cfg, clock);
    CHECK(restored.cache().size() == 3);
    DiscoveryResult r = restored.discover("Microsoft");
    CHECK(r.from_cache);
    CHECK(r.candidates.size() == 3);
  }
  std::remove(snapshot_path);
}

TEST_CASE("bench_precision measures labeled corpora through the engine") {
  harness::FakeRegistry reg("bench");
  auto fixture = harness::seed_exact_match_fixture(reg.store(), 20, 5, 7);

  LogicalClock clock;
  Engine engine(engine_config({reg.start()}), clock);

  auto report = bench::bench_precision(engine, fixture.labels);
  REQUIRE(report.rows.size() == 5);
  for (const auto& row : report.rows) {
    CHECK(row.retrieved == 1);
    CHECK(row.precision == 1.0);
  }
  CHECK(report.mean_precision == 1.0);

  std::ostringstream csv;
  bench::write_precision_csv(report, csv);
  // header + 5 rows + mean
  CHECK(std::count(csv.str().begin(), csv.str().end(), '\n') == 7);
}

TEST_CASE("labeled corpus files parse and reject malformed lines") {
  std::istringstream good("# comment\nalpha query | k1,k2\nbeta | k3\n");
  auto corpus = bench::parse_labeled_corpus(good);
  REQUIRE(corpus.size() == 2);
  CHECK(corpus[0].query == "alpha query");
  CHECK(corpus[0].relevant_keys == std::set<std::string>{"k1", "k2"});
  CHECK(corpus[1].relevant_keys == std::set<std::string>{"k3"});

  std::istringstream bad("query without separator\n");
  CHECK_THROWS_AS(bench::parse_labeled_corpus(bad), ConfigError);
}

TEST_CASE("config: file, env and validation") {
  EngineConfig cfg;
  cfg.apply(parse_config_text("registries=http://a:1,http://b:2\n"
                              "ttl_ms=1234\n"
                              "match_threshold=0.25\n"
                              "per_registry_deadline_ms=100\n"
                              "overall_deadline_ms=500\n"
                              "format=records\n"
                              "# comment\n"));
  CHECK(cfg.agent.registries == std::vector<std::string>{"http://a:1", "http://b:2"});
  CHECK(cfg.ttl == Millis{1234});
  CHECK(cfg.match_threshold == 0.25);
  CHECK(cfg.format == matcher::OutputFormat::records);
  CHECK_NOTHROW(cfg.validate());

  setenv("DISCO_TTL_MS", "9999", 1);
  cfg.apply_env();
  CHECK(cfg.ttl == Millis{9999});
  unsetenv("DISCO_TTL_MS");

  CHECK_THROWS_AS(cfg.apply(parse_config_text("nonsense_key=1\n")), ConfigError);
  CHECK_THROWS_AS(cfg.apply(parse_config_text("ttl_ms=abc\n")), ConfigError);

  EngineConfig bad;
  bad.match_threshold = 1.5;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  EngineConfig missing_syn;
  missing_syn.synonyms_path = "/no/such/file";
  CHECK_THROWS_AS(missing_syn.validate(), ConfigError);
}
