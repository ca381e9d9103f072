#include "qc/config.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace qc {
namespace {

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

long parse_long(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    long x = std::stol(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw std::invalid_argument("config: bad integer for " + key + ": " + v);
  }
}

double parse_double(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    double x = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw std::invalid_argument("config: bad number for " + key + ": " + v);
  }
}

std::vector<std::uint64_t> parse_primes(const std::string& v) {
  std::vector<std::uint64_t> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    long p = parse_long("prime_list", item);
    if (p < 2) throw std::invalid_argument("config: prime_list entry < 2");
    out.push_back(static_cast<std::uint64_t>(p));
  }
  if (out.empty()) throw std::invalid_argument("config: empty prime_list");
  return out;
}

}  // namespace

void config_set(RunConfig& cfg, const std::string& assignment) {
  std::size_t eq = assignment.find('=');
  if (eq == std::string::npos)
    throw std::invalid_argument("config: expected key=value, got: " +
                                assignment);
  std::string key = trim(assignment.substr(0, eq));
  std::string val = trim(assignment.substr(eq + 1));
  if (key == "cache_dir") {
    cfg.cache_dir = val;
  } else if (key == "threads") {
    cfg.threads = static_cast<int>(parse_long(key, val));
  } else if (key == "height_bound") {
    cfg.height_bound = parse_double(key, val);
  } else if (key == "prime_list") {
    cfg.prime_list = parse_primes(val);
  } else if (key == "box_constant") {
    cfg.box_constant = parse_double(key, val);
  } else if (key == "neighborhood_radius") {
    cfg.neighborhood_radius = static_cast<int>(parse_long(key, val));
  } else if (key == "rng_seed") {
    cfg.rng_seed = static_cast<std::uint64_t>(parse_long(key, val));
  } else if (key == "output_format") {
    cfg.output_format = val;
  } else {
    throw std::invalid_argument("config: unknown key: " + key);
  }
}

RunConfig config_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("config: cannot open " + path);
  RunConfig cfg;
  std::string line;
  while (std::getline(in, line)) {
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    config_set(cfg, line);
  }
  config_validate(cfg);
  return cfg;
}

void config_apply_env(RunConfig& cfg) {
  if (const char* dir = std::getenv("QUARTIC_CACHE"); dir && *dir)
    cfg.cache_dir = dir;
}

void config_validate(const RunConfig& cfg) {
  if (cfg.threads < 0) throw std::invalid_argument("config: threads < 0");
  if (!(cfg.height_bound > 0))
    throw std::invalid_argument("config: height_bound must be positive");
  if (!(cfg.box_constant > 0))
    throw std::invalid_argument("config: box_constant must be positive");
  if (cfg.neighborhood_radius < 1)
    throw std::invalid_argument("config: neighborhood_radius < 1");
  if (cfg.output_format != "csv" && cfg.output_format != "json" &&
      cfg.output_format != "jsonl")
    throw std::invalid_argument("config: output_format must be csv, json or "
                                "jsonl");
  if (cfg.prime_list.empty())
    throw std::invalid_argument("config: empty prime_list");
}

std::string config_serialize(const RunConfig& cfg) {
  // keys in fixed sorted order; cache_dir is deliberately excluded so that
  // moving the cache does not invalidate it
  std::ostringstream os;
  os << "box_constant=" << fmt_double(cfg.box_constant) << '\n'
     << "height_bound=" << fmt_double(cfg.height_bound) << '\n'
     << "neighborhood_radius=" << cfg.neighborhood_radius << '\n'
     << "output_format=" << cfg.output_format << '\n'
     << "prime_list=";
  for (std::size_t i = 0; i < cfg.prime_list.size(); ++i)
    os << (i ? "," : "") << cfg.prime_list[i];
  os << '\n'
     << "rng_seed=" << cfg.rng_seed << '\n'
     << "threads=" << cfg.threads << '\n';
  return os.str();
}

std::string config_hash(const RunConfig& cfg) {
  std::uint64_t h = 1469598103934665603ULL;  // FNV-1a 64-bit
  for (unsigned char c : config_serialize(cfg)) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", (unsigned long long)h);
  return buf;
}

EnumOptions enum_options(const RunConfig& cfg) {
  EnumOptions opt;
  opt.ch = cfg.box_constant;
  opt.radius = cfg.neighborhood_radius;
  opt.parallel = cfg.threads != 1;
  return opt;
}

std::string cache_path(const RunConfig& cfg, const std::string& operation) {
  return cfg.cache_dir + "/" + operation + "-" + config_hash(cfg) + ".out";
}

std::optional<std::string> cache_load(const RunConfig& cfg,
                                      const std::string& operation) {
  std::ifstream in(cache_path(cfg, operation), std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void cache_store(const RunConfig& cfg, const std::string& operation,
                 const std::string& text) {
  std::filesystem::create_directories(cfg.cache_dir);
  std::string path = cache_path(cfg, operation);
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << text;
    if (!out) throw std::runtime_error("cache: write failed: " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace qc
