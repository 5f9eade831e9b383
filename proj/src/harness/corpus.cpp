#include "disco/harness/corpus.hpp"

#include <algorithm>
#include <cstdio>
#include <random>

#include "disco/matcher.hpp"

namespace disco::harness {

const std::string DemoCorpus::kBusinessKey = "c13cc7b2-642d-41d0-b2dd-7bb531a18997";
const std::string DemoCorpus::kCertificationKey = "6166f8b2-436d-4001-9f68-f37ff8b47ea3";
const std::string DemoCorpus::kMachineActivationKey = "7ae6c133-4471-4deb-93a5-1158aaa826b8";
const std::string DemoCorpus::kServerEnrollmentKey = "52616482-653c-45f3-ae08-e4d4ca8b66c2";
const std::string DemoCorpus::kOperator = "ms.com";

void seed_demo_corpus(RegistryStore& store) {
  BusinessEntity biz;
  biz.business_key = DemoCorpus::kBusinessKey;
  biz.name = "Microsoft DRMS Dev";
  biz.lang = "en";
  store.insert_business(biz);

  auto add = [&](const std::string& key, const std::string& name) {
    ServiceEntry s;
    s.service_key = key;
    s.business_key = DemoCorpus::kBusinessKey;
    s.name = name;
    s.lang = "en";
    s.category = "uncategorized";
    store.insert_service(s);
  };
  add(DemoCorpus::kCertificationKey, "Certification");
  add(DemoCorpus::kMachineActivationKey, "Machine Activation");
  add(DemoCorpus::kServerEnrollmentKey, "Server Enrollment");
}

std::string fixture_key(uint32_t group, uint32_t index) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%08x-0000-4000-8000-%012x", group, index);
  return buf;
}

void seed_bench_corpus(RegistryStore& store, size_t count, uint32_t key_group) {
  BusinessEntity holder;
  holder.business_key = fixture_key(key_group, 0xffffff);
  holder.name = "Bench Corpus Holdings";
  store.insert_business(holder);

  static const char* categories[] = {"alpha", "beta", "gamma", "delta"};
  for (size_t i = 0; i < count; ++i) {
    char name[64];
    if (i < BenchCorpus::kMatchingServices) {
      std::snprintf(name, sizeof(name), "Svc %05zu %s", i, BenchCorpus::kQueryToken);
    } else {
      std::snprintf(name, sizeof(name), "Svc %05zu filler", i);
    }
    ServiceEntry s;
    s.service_key = fixture_key(key_group, static_cast<uint32_t>(i));
    s.business_key = holder.business_key;
    s.name = name;
    s.category = categories[i % 4];
    store.insert_service(s);
  }
}

namespace {

// Generates pairwise well-separated two-word service names: no name's token
// scores at or above `margin` against any other name or the holder business
// name, so a query for one exact name can only ever match that name.
std::vector<std::string> separated_names(size_t count, const std::string& business_name,
                                         uint32_t seed, double margin) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> letter(0, 25);
  auto make_word = [&] {
    std::string w;
    for (int i = 0; i < 10; ++i) w.push_back(static_cast<char>('a' + letter(rng)));
    return w;
  };

  std::vector<std::string> names;
  std::vector<std::vector<std::string>> token_sets;
  while (names.size() < count) {
    std::string candidate = make_word() + " " + make_word();
    std::vector<std::string> tokens = matcher::tokenize(candidate);
    bool ok = true;
    for (const std::string& t : tokens)
      if (matcher::fuzzy_score(t, business_name) >= margin) ok = false;
    for (size_t j = 0; ok && j < names.size(); ++j) {
      for (const std::string& t : tokens)
        if (matcher::fuzzy_score(t, names[j]) >= margin) ok = false;
      for (const std::string& t : token_sets[j])
        if (matcher::fuzzy_score(t, candidate) >= margin) ok = false;
    }
    if (!ok) continue;
    names.push_back(candidate);
    token_sets.push_back(std::move(tokens));
  }
  return names;
}

BusinessEntity seed_holder(RegistryStore& store, uint32_t key_group) {
  BusinessEntity holder;
  holder.business_key = fixture_key(key_group, 0xffffff);
  holder.name = "Fixture Holdings";
  store.insert_business(holder);
  return holder;
}

}  // namespace

PrecisionFixture seed_exact_match_fixture(RegistryStore& store, size_t service_count,
                                          size_t query_count, uint32_t key_group) {
  BusinessEntity holder = seed_holder(store, key_group);
  PrecisionFixture fixture;
  fixture.all_names = separated_names(service_count, holder.name, 0x5eed0 + key_group, 0.45);

  for (size_t i = 0; i < service_count; ++i) {
    ServiceEntry s;
    s.service_key = fixture_key(key_group, static_cast<uint32_t>(i));
    s.business_key = holder.business_key;
    s.name = fixture.all_names[i];
    store.insert_service(s);
  }
  for (size_t i = 0; i < query_count && i < service_count; ++i) {
    bench::LabeledQuery lq;
    lq.query = fixture.all_names[i];
    lq.relevant_keys = {fixture_key(key_group, static_cast<uint32_t>(i))};
    fixture.labels.push_back(std::move(lq));
  }
  return fixture;
}

PrecisionFixture seed_inseparable_distractor_fixture(RegistryStore& store,
                                                     size_t service_count,
                                                     size_t query_count,
                                                     uint32_t key_group) {
  BusinessEntity holder = seed_holder(store, key_group);
  PrecisionFixture fixture;
  const size_t pairs = service_count / 2;
  fixture.all_names = separated_names(pairs, holder.name, 0xd15ed + key_group, 0.45);

  for (size_t i = 0; i < pairs; ++i) {
    for (uint32_t copy = 0; copy < 2; ++copy) {
      ServiceEntry s;
      s.service_key = fixture_key(key_group, static_cast<uint32_t>(2 * i) + copy);
      s.business_key = holder.business_key;
      s.name = fixture.all_names[i];  // same name, distinct key
      store.insert_service(s);
    }
  }
  for (size_t i = 0; i < query_count && i < pairs; ++i) {
    bench::LabeledQuery lq;
    lq.query = fixture.all_names[i];
    lq.relevant_keys = {fixture_key(key_group, static_cast<uint32_t>(2 * i))};
    fixture.labels.push_back(std::move(lq));
  }
  return fixture;
}

}  // namespace disco::harness
