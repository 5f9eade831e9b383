// disco — dynamic web service discovery broker.
//
// A one-shot CLI over the discovery engine: publish services to a registry,
// discover services through the cache/fan-out pipeline, inspect the local
// cache, run the latency and precision benches, or serve a registry.

#include <CLI11.hpp>

#include <csignal>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "disco/bench.hpp"
#include "disco/engine.hpp"
#include "disco/harness/corpus.hpp"
#include "disco/harness/latency_bench.hpp"
#include "disco/uddi_server.hpp"

namespace {

using namespace disco;

struct GlobalOpts {
  std::string config_path;
  std::vector<std::string> registries;
  std::string format;
  std::string cache_snapshot;
};

EngineConfig resolve_config(const GlobalOpts& g) {
  EngineConfig cfg;
  if (!g.config_path.empty()) cfg.apply_file(g.config_path);
  cfg.apply_env();
  if (!g.registries.empty()) cfg.agent.registries = g.registries;
  if (!g.cache_snapshot.empty()) cfg.cache_snapshot_path = g.cache_snapshot;
  if (!g.format.empty()) {
    auto f = matcher::parse_output_format(g.format);
    if (!f) throw ConfigError("--format expects table or records");
    cfg.format = *f;
  }
  cfg.validate();
  return cfg;
}

void require_registries(const EngineConfig& cfg) {
  if (cfg.agent.registries.empty())
    throw ConfigError("no registries configured (use --registry, registries= or "
                      "registries_file= in the config, or DISCO_REGISTRIES)");
}

int cmd_discover(const GlobalOpts& g, const std::string& query, bool no_cache) {
  EngineConfig cfg = resolve_config(g);
  require_registries(cfg);
  SystemClock clock;
  Engine engine(cfg, clock);

  DiscoverOptions opts;
  opts.bypass_cache = no_cache;
  DiscoveryResult result = engine.discover(query, opts);
  engine.save_cache_snapshot();

  std::cout << matcher::render_response(result.candidates, cfg.format);
  std::ostream& meta = cfg.format == matcher::OutputFormat::records ? std::cerr : std::cout;
  meta << "-- " << result.candidates.size() << " result(s) in "
       << result.metrics.discovery_time.count() / 1000.0 << " ms, origin="
       << (result.from_cache ? "cache" : "web") << "\n";
  for (const auto& [endpoint, status] : result.per_registry) {
    meta << "-- registry " << endpoint << ": " << agent::status_kind_name(status.kind);
    if (status.kind == agent::StatusKind::ok) meta << "(" << status.count << ")";
    if (!status.detail.empty()) meta << " " << status.detail;
    meta << "\n";
  }
  return 0;
}

int cmd_publish(const GlobalOpts& g, const std::string& registry,
                const std::string& business, const std::vector<std::string>& services) {
  EngineConfig cfg = resolve_config(g);
  SystemClock clock;
  Engine engine(cfg, clock);

  std::vector<PublishedService> parsed;
  for (const std::string& s : services) {
    size_t colon = s.rfind(':');
    PublishedService svc;
    if (colon == std::string::npos || colon == 0 || colon + 1 == s.size()) {
      svc.name = s;
    } else {
      svc.name = s.substr(0, colon);
      svc.category = s.substr(colon + 1);
    }
    parsed.push_back(std::move(svc));
  }

  PublishResult result = engine.publish(registry, business, parsed);
  std::cout << "businessKey " << result.business_key << "\n";
  for (size_t i = 0; i < result.service_keys.size(); ++i)
    std::cout << "serviceKey " << result.service_keys[i] << " (" << parsed[i].name << ")\n";
  return 0;
}

void print_stats(const CacheStats& s) {
  std::cout << "entries " << s.total << " (fresh " << s.fresh << ", stale " << s.stale
            << ")\n";
  for (const auto& [cat, n] : s.per_category)
    std::cout << "  category " << cat << ": " << n << "\n";
  std::cout << "lookups " << s.lookups << " hits " << s.hits << " misses " << s.misses
            << " puts " << s.puts << " evictions " << s.evictions << "\n";
}

int cmd_cache(const GlobalOpts& g, const std::string& subcommand, const std::string& out_path) {
  EngineConfig cfg = resolve_config(g);
  SystemClock clock;
  Engine engine(cfg, clock);

  if (subcommand == "stats") {
    print_stats(engine.cache().stats(clock.now()));
    return 0;
  }
  if (subcommand == "sweep") {
    size_t evicted = engine.cache().evict_expired(clock.now());
    engine.save_cache_snapshot();
    std::cout << "evicted " << evicted << "\n";
    return 0;
  }
  if (subcommand == "dump") {
    if (out_path.empty()) {
      engine.cache().export_snapshot(std::cout);
    } else {
      std::ofstream out(out_path, std::ios::trunc);
      if (!out) throw ConfigError("cannot write " + out_path);
      engine.cache().export_snapshot(out);
    }
    return 0;
  }
  throw ConfigError("unknown cache subcommand '" + subcommand + "'");
}

int cmd_bench_latency(const std::vector<size_t>& sizes, const std::vector<std::string>& modes,
                      int registries, int delay_ms, size_t runs, const std::string& out_path) {
  harness::LatencyBenchConfig cfg;
  if (!sizes.empty()) cfg.sizes = sizes;
  if (!modes.empty()) cfg.modes = modes;
  cfg.registries = registries;
  cfg.delay = Millis{delay_ms};
  cfg.runs = runs;

  harness::LatencyReport report = harness::bench_latency(cfg);
  if (out_path.empty()) {
    harness::write_latency_csv(report, std::cout);
  } else {
    std::ofstream out(out_path, std::ios::trunc);
    if (!out) throw ConfigError("cannot write " + out_path);
    harness::write_latency_csv(report, out);
    std::cout << "wrote " << out_path << "\n";
  }
  return 0;
}

int cmd_bench_precision(const GlobalOpts& g, const std::string& corpus_path,
                        const std::string& out_path) {
  EngineConfig cfg = resolve_config(g);
  require_registries(cfg);
  SystemClock clock;
  Engine engine(cfg, clock);

  auto corpus = bench::load_labeled_corpus(corpus_path);
  bench::PrecisionReport report = bench::bench_precision(engine, corpus);
  if (out_path.empty()) {
    bench::write_precision_csv(report, std::cout);
  } else {
    std::ofstream out(out_path, std::ios::trunc);
    if (!out) throw ConfigError("cannot write " + out_path);
    bench::write_precision_csv(report, out);
    std::cout << "wrote " << out_path << ", mean precision " << report.mean_precision << "\n";
  }
  return 0;
}

int cmd_serve(int port, const std::string& operator_id, bool seed_demo) {
  RegistryStore store(operator_id);
  if (seed_demo) harness::seed_demo_corpus(store);
  uddi::RegistryServer server(store);
  int bound = server.start(port);
  std::cout << "registry '" << operator_id << "' listening on http://127.0.0.1:" << bound
            << "/uddi (" << store.business_count() << " businesses, "
            << store.service_count() << " services)\n";
  std::cout << "press Ctrl-C to stop\n";

  static volatile std::sig_atomic_t stop_flag = 0;
  std::signal(SIGINT, [](int) { stop_flag = 1; });
  std::signal(SIGTERM, [](int) { stop_flag = 1; });
  while (stop_flag == 0) std::this_thread::sleep_for(std::chrono::milliseconds(100));
  server.stop();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dynamic web service discovery broker"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOpts global;
  app.add_option("--config", global.config_path, "key=value config file");
  app.add_option("--registry", global.registries, "registry endpoint (repeatable)");
  app.add_option("--format", global.format, "output format: table|records");
  app.add_option("--cache-snapshot", global.cache_snapshot,
                 "cache snapshot file kept across invocations");

  auto* discover = app.add_subcommand("discover", "run a discovery query");
  std::string query;
  bool no_cache = false;
  discover->add_option("query", query, "query text, optionally with trailing 'where' clauses")
      ->required();
  discover->add_flag("--no-cache", no_cache, "skip the cache read, go straight to the web");

  auto* publish = app.add_subcommand("publish", "publish a business and its services");
  std::string pub_registry, pub_business;
  std::vector<std::string> pub_services;
  publish->add_option("--registry", pub_registry, "target registry endpoint")->required();
  publish->add_option("--business", pub_business, "business display name")->required();
  publish->add_option("--service", pub_services, "service NAME[:CATEGORY] (repeatable)")
      ->required();

  auto* cache = app.add_subcommand("cache", "inspect the local cache");
  std::string cache_sub, cache_out;
  cache->add_option("subcommand", cache_sub, "stats|sweep|dump")->required();
  cache->add_option("--out", cache_out, "write dump to a file instead of stdout");

  auto* bench = app.add_subcommand("bench", "benchmarks");
  bench->require_subcommand(1);
  auto* bench_latency = bench->add_subcommand("latency", "discovery latency by mode");
  std::vector<size_t> bl_sizes{10, 100, 1000};
  std::vector<std::string> bl_modes{"serial", "concurrent", "cached"};
  int bl_registries = 4, bl_delay = 100;
  size_t bl_runs = 20;
  std::string bl_out;
  bench_latency->add_option("--sizes", bl_sizes, "corpus sizes")->delimiter(',');
  bench_latency->add_option("--modes", bl_modes, "serial,concurrent,cached")->delimiter(',');
  bench_latency->add_option("--registries", bl_registries, "number of fake registries");
  bench_latency->add_option("--delay-ms", bl_delay, "injected delay per request");
  bench_latency->add_option("--runs", bl_runs, "runs per cell");
  bench_latency->add_option("--out", bl_out, "CSV output file");

  auto* bench_precision = bench->add_subcommand("precision", "precision over a labeled corpus");
  std::string bp_corpus, bp_out;
  bench_precision->add_option("--corpus", bp_corpus, "labeled corpus file")->required();
  bench_precision->add_option("--out", bp_out, "CSV output file");

  auto* serve = app.add_subcommand("serve", "run a registry server");
  int serve_port = 0;
  std::string serve_operator = "disco.local";
  bool serve_seed = false;
  serve->add_option("--port", serve_port, "port to bind (0 = ephemeral)");
  serve->add_option("--operator", serve_operator, "operator id stamped into responses");
  serve->add_flag("--seed-demo", serve_seed, "preload the demo corpus");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*discover) return cmd_discover(global, query, no_cache);
    if (*publish) return cmd_publish(global, pub_registry, pub_business, pub_services);
    if (*cache) return cmd_cache(global, cache_sub, cache_out);
    if (*bench_latency)
      return cmd_bench_latency(bl_sizes, bl_modes, bl_registries, bl_delay, bl_runs, bl_out);
    if (*bench_precision) return cmd_bench_precision(global, bp_corpus, bp_out);
    if (*serve) return cmd_serve(serve_port, serve_operator, serve_seed);
  } catch (const EmptyQueryError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const agent::AllRegistriesFailed& e) {
    std::cerr << "error: all registries failed\n";
    for (const auto& [endpoint, status] : e.statuses)
      std::cerr << "  " << endpoint << ": " << agent::status_kind_name(status.kind)
                << (status.detail.empty() ? "" : " " + status.detail) << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
