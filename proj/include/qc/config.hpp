#pragma once
// Run configuration: flat key=value files, deterministic hashing for artifact
// stamping, and a flat-file result cache keyed by (operation, config hash).
#include "qc/reduce.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace qc {

struct RunConfig {
  std::string cache_dir = ".qc-cache";  // env QUARTIC_CACHE overrides
  int threads = 0;                      // 0 = runtime default
  double height_bound = 1e4;
  std::vector<std::uint64_t> prime_list = {2, 3, 5, 7, 11, 13};
  double box_constant = 24.0;      // seminvariant window constant (calibrated)
  int neighborhood_radius = 8;     // reduction move search radius
  std::uint64_t rng_seed = 20260824;
  std::string output_format = "csv";  // csv | json | jsonl
};

// Parse a flat key=value file ('#' starts a comment; blank lines ignored).
// Unknown keys and malformed values throw std::invalid_argument.
RunConfig config_from_file(const std::string& path);

// Apply one "key=value" assignment (used for flag overrides of a file).
void config_set(RunConfig& cfg, const std::string& assignment);

// Environment overrides nothing except cache_dir (QUARTIC_CACHE).
void config_apply_env(RunConfig& cfg);

// Throws std::invalid_argument on out-of-range fields.
void config_validate(const RunConfig& cfg);

// Canonical serialization (sorted keys, fixed number formatting); two configs
// serialize identically iff they hash identically.
std::string config_serialize(const RunConfig& cfg);

// 64-bit FNV-1a of the canonical serialization, as 16 lowercase hex digits.
std::string config_hash(const RunConfig& cfg);

// Enumeration options implied by the configuration.
EnumOptions enum_options(const RunConfig& cfg);

// --- flat-file cache -----------------------------------------------------

std::string cache_path(const RunConfig& cfg, const std::string& operation);
std::optional<std::string> cache_load(const RunConfig& cfg,
                                      const std::string& operation);
// Creates cache_dir if needed; write is atomic (temp file + rename).
void cache_store(const RunConfig& cfg, const std::string& operation,
                 const std::string& text);

}  // namespace qc
