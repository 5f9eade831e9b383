#include "disco/config.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace disco {

namespace {

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

int64_t parse_int(const std::string& key, const std::string& value) {
  try {
    size_t idx = 0;
    int64_t v = std::stoll(value, &idx);
    if (idx != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (...) {
    throw ConfigError("config key '" + key + "' expects an integer, got '" + value + "'");
  }
}

double parse_double(const std::string& key, const std::string& value) {
  try {
    size_t idx = 0;
    double v = std::stod(value, &idx);
    if (idx != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (...) {
    throw ConfigError("config key '" + key + "' expects a number, got '" + value + "'");
  }
}

bool readable(const std::string& path) { return std::ifstream(path).good(); }

const char* kKnownKeys[] = {"registries",        "registries_file",
                            "synonyms_file",     "cache_snapshot",
                            "ttl_ms",            "match_threshold",
                            "per_registry_deadline_ms", "overall_deadline_ms",
                            "format"};

}  // namespace

std::map<std::string, std::string> parse_config_text(const std::string& text) {
  std::map<std::string, std::string> out;
  std::istringstream in(text);
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    size_t eq = t.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(lineno) + " is not key=value: " + t);
    out[trim(t.substr(0, eq))] = trim(t.substr(eq + 1));
  }
  return out;
}

void EngineConfig::apply(const std::map<std::string, std::string>& kv) {
  for (const auto& [key, value] : kv) {
    if (key == "registries") {
      agent.registries = split_commas(value);
    } else if (key == "registries_file") {
      agent.registries = agent::load_registry_list(value);
    } else if (key == "synonyms_file") {
      synonyms_path = value;
    } else if (key == "cache_snapshot") {
      cache_snapshot_path = value;
    } else if (key == "ttl_ms") {
      ttl = Millis{parse_int(key, value)};
    } else if (key == "match_threshold") {
      match_threshold = parse_double(key, value);
    } else if (key == "per_registry_deadline_ms") {
      agent.per_registry_deadline = Millis{parse_int(key, value)};
    } else if (key == "overall_deadline_ms") {
      agent.overall_deadline = Millis{parse_int(key, value)};
    } else if (key == "format") {
      auto f = matcher::parse_output_format(value);
      if (!f) throw ConfigError("config key 'format' expects table or records, got '" + value + "'");
      format = *f;
    } else {
      throw ConfigError("unknown config key '" + key + "'");
    }
  }
}

void EngineConfig::apply_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  apply(parse_config_text(buf.str()));
}

void EngineConfig::apply_env() {
  std::map<std::string, std::string> kv;
  for (const char* key : kKnownKeys) {
    std::string env_name = "DISCO_";
    for (const char* p = key; *p != '\0'; ++p)
      env_name.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(*p))));
    if (const char* v = std::getenv(env_name.c_str())) kv[key] = v;
  }
  apply(kv);
}

void EngineConfig::validate() const {
  if (match_threshold < 0.0 || match_threshold > 1.0)
    throw ConfigError("match_threshold must be in [0,1]");
  if (ttl <= Millis{0}) throw ConfigError("ttl_ms must be positive");
  if (agent.per_registry_deadline <= Millis{0} || agent.overall_deadline <= Millis{0})
    throw ConfigError("deadlines must be positive");
  if (agent.per_registry_deadline > agent.overall_deadline)
    throw ConfigError("per_registry_deadline_ms exceeds overall_deadline_ms");
  if (!synonyms_path.empty() && !readable(synonyms_path))
    throw ConfigError("synonyms file is not readable: " + synonyms_path);
}

}  // namespace disco
