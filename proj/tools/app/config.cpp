#include "config.hpp"

#include "goldshift/errors.hpp"
#include "goldshift/numeric.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace goldshift::app {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::uint64_t parse_u64(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    if (!v.empty() && v[0] == '-') throw InputError("");
    const auto x = std::stoull(v, &used, 0);
    if (used != v.size()) throw InputError("");
    return x;
  } catch (const std::exception&) {
    throw InputError("config: " + key + " expects a non-negative integer, got '" + v + "'");
  }
}

int parse_int(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const int x = std::stoi(v, &used);
    if (used != v.size()) throw InputError("");
    return x;
  } catch (const std::exception&) {
    throw InputError("config: " + key + " expects an integer, got '" + v + "'");
  }
}

double parse_double(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const double x = std::stod(v, &used);
    if (used != v.size()) throw InputError("");
    return x;
  } catch (const std::exception&) {
    throw InputError("config: " + key + " expects a number, got '" + v + "'");
  }
}

}  // namespace

void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value) {
  if (key == "profile") cfg.profile = value;
  else if (key == "lambda1") cfg.lambda1 = value;
  else if (key == "levels") cfg.levels = parse_int(key, value);
  else if (key == "precision") cfg.precision = static_cast<unsigned>(parse_u64(key, value));
  else if (key == "seed") cfg.seed = parse_u64(key, value);
  else if (key == "samples") cfg.samples = parse_u64(key, value);
  else if (key == "eps") cfg.eps = parse_double(key, value);
  else if (key == "depth") cfg.depth = parse_int(key, value);
  else if (key == "j") cfg.j = parse_int(key, value);
  else if (key == "t") cfg.t = parse_int(key, value);
  else if (key == "cylinder") cfg.cylinder = value;
  else if (key == "max_shifts") cfg.max_shifts = parse_u64(key, value);
  else if (key == "threads") cfg.threads = static_cast<unsigned>(parse_u64(key, value));
  else if (key == "spec") cfg.spec = value;
  else if (key == "out") cfg.out = value;
  else if (key == "timestamp") cfg.timestamp = value == "true" || value == "1" || value == "yes";
  else throw InputError("config: unknown key '" + key + "'");
}

void apply_config_file(RunConfig& cfg, const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read config file " + path.string());
  std::string line;
  int no = 0;
  while (std::getline(in, line)) {
    ++no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw InputError(path.string() + ":" + std::to_string(no) + ": expected key = value");
    apply_setting(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
}

void apply_seed_environment(RunConfig& cfg) {
  if (const char* env = std::getenv("GOLDSHIFT_SEED"); env && *env) {
    cfg.seed = parse_u64("GOLDSHIFT_SEED", env);
    cfg.seed_source = "env:GOLDSHIFT_SEED";
  }
}

void validate(const RunConfig& cfg) {
  if (cfg.profile != "full" && cfg.profile != "desk") throw InputError("profile must be full or desk");
  if (cfg.levels < 0) throw InputError("levels must be >= 0");
  if (!(cfg.eps > 0)) throw InputError("eps must be positive");
  if (cfg.precision < 64) throw InputError("precision must be at least 64 bits");
  if (cfg.depth < 1) throw InputError("depth must be >= 1");
  if (cfg.threads == 0) throw InputError("threads must be >= 1");
  if (cfg.j < 0 || cfg.t < 0) throw InputError("j and t must be >= 0");
  if (cfg.cylinder.empty() || cfg.cylinder.size() % 2 == 0) throw InputError("cylinder must have odd length");
}

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("sha256 failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned i = 0; i < len; ++i) {
    out.push_back(hex[md[i] >> 4]);
    out.push_back(hex[md[i] & 15]);
  }
  return out;
}

std::string canonical_config(const RunConfig& cfg) {
  std::map<std::string, std::string> kv{
      {"profile", cfg.profile},
      {"lambda1", cfg.lambda1},
      {"levels", std::to_string(cfg.levels)},
      {"precision", std::to_string(cfg.precision)},
      {"samples", std::to_string(cfg.samples)},
      {"eps", to_decimal(cfg.eps)},
      {"depth", std::to_string(cfg.depth)},
      {"j", std::to_string(cfg.j)},
      {"t", std::to_string(cfg.t)},
      {"cylinder", cfg.cylinder},
      {"max_shifts", std::to_string(cfg.max_shifts)},
  };
  if (cfg.spec) {
    std::ifstream in(*cfg.spec, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    kv["spec_sha256"] = sha256_hex(ss.str());
  }
  std::string s;
  for (const auto& [k, v] : kv) s += k + "=" + v + "\n";
  return s;
}

std::string config_hash(const RunConfig& cfg) { return sha256_hex(canonical_config(cfg)); }

}  // namespace goldshift::app
