#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>

namespace goldshift::app {

struct RunConfig {
  std::string profile = "full";
  std::string lambda1 = "1.5";
  int levels = 1;
  unsigned precision = 256;
  std::uint64_t seed = 1;
  std::string seed_source = "config";
  std::uint64_t samples = 0;  // 0: command default
  double eps = 0.05;
  int depth = 6;
  int j = 1;
  int t = 0;
  std::string cylinder = "132";  // B = [b]_{-1}^{1}
  std::uint64_t max_shifts = 64;
  unsigned threads = 1;
  std::optional<std::filesystem::path> spec;
  std::optional<std::filesystem::path> out;
  bool timestamp = false;
};

// key = value lines, '#' comments. Unknown keys are input errors.
void apply_config_file(RunConfig& cfg, const std::filesystem::path& path);
void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value);

// Replaces the seed when GOLDSHIFT_SEED is set.
void apply_seed_environment(RunConfig& cfg);

void validate(const RunConfig& cfg);

// Canonical text of every setting that can change report content. Threads,
// output paths and the timestamp switch are left out; the spec file enters
// through its content hash.
std::string canonical_config(const RunConfig& cfg);
std::string sha256_hex(const std::string& data);
std::string config_hash(const RunConfig& cfg);

}  // namespace goldshift::app
