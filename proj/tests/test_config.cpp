#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qc/config.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>

using namespace qc;
namespace fs = std::filesystem;

namespace {

fs::path scratch() {
  fs::path d = fs::temp_directory_path() / "qc-config-test";
  fs::create_directories(d);
  return d;
}

}  // namespace

TEST_CASE("file parsing: comments, blanks, overrides, unknown keys") {
  fs::path f = scratch() / "run.conf";
  {
    std::ofstream out(f);
    out << "# sample run\n"
        << "height_bound = 1e5\n"
        << "\n"
        << "prime_list = 2, 3, 7   # trailing comment\n"
        << "output_format=jsonl\n"
        << "threads=2\n";
  }
  RunConfig cfg = config_from_file(f.string());
  CHECK(cfg.height_bound == 1e5);
  CHECK(cfg.prime_list == std::vector<std::uint64_t>{2, 3, 7});
  CHECK(cfg.output_format == "jsonl");
  CHECK(cfg.threads == 2);
  // untouched keys keep defaults
  CHECK(cfg.neighborhood_radius == 8);

  config_set(cfg, "threads=5");  // flag-style override wins
  CHECK(cfg.threads == 5);

  CHECK_THROWS_AS(config_set(cfg, "no_such_key=1"), std::invalid_argument);
  CHECK_THROWS_AS(config_set(cfg, "threads=abc"), std::invalid_argument);
  CHECK_THROWS_AS(config_set(cfg, "just-a-token"), std::invalid_argument);
}

TEST_CASE("validation rejects out-of-range fields") {
  RunConfig cfg;
  config_validate(cfg);  // defaults are valid
  cfg.output_format = "xml";
  CHECK_THROWS_AS(config_validate(cfg), std::invalid_argument);
  cfg.output_format = "csv";
  cfg.height_bound = 0;
  CHECK_THROWS_AS(config_validate(cfg), std::invalid_argument);
  cfg.height_bound = 100;
  cfg.threads = -1;
  CHECK_THROWS_AS(config_validate(cfg), std::invalid_argument);
}

TEST_CASE("environment overrides cache_dir and nothing else") {
  RunConfig cfg;
  cfg.height_bound = 777;
  setenv("QUARTIC_CACHE", "/tmp/qc-env-cache", 1);
  config_apply_env(cfg);
  CHECK(cfg.cache_dir == "/tmp/qc-env-cache");
  CHECK(cfg.height_bound == 777);
  unsetenv("QUARTIC_CACHE");
}

TEST_CASE("hash is stable, key-order independent, and field sensitive") {
  RunConfig a, b;
  CHECK(config_hash(a) == config_hash(b));
  CHECK(config_hash(a).size() == 16);
  // cache location does not invalidate cached results
  b.cache_dir = "/elsewhere";
  CHECK(config_hash(a) == config_hash(b));
  b.rng_seed += 1;
  CHECK(config_hash(a) != config_hash(b));
  b = a;
  b.prime_list = {2, 3};
  CHECK(config_hash(a) != config_hash(b));
  // serialization round-trips through the parser to the same hash
  fs::path f = scratch() / "roundtrip.conf";
  {
    std::ofstream out(f);
    out << "cache_dir=x\n" << config_serialize(a);
  }
  CHECK(config_hash(config_from_file(f.string())) == config_hash(a));
}

TEST_CASE("cache store/load round-trip keyed by operation and hash") {
  RunConfig cfg;
  cfg.cache_dir = (scratch() / "cache").string();
  fs::remove_all(cfg.cache_dir);
  CHECK(!cache_load(cfg, "count").has_value());
  cache_store(cfg, "count", "payload-1\n");
  auto got = cache_load(cfg, "count");
  REQUIRE(got.has_value());
  CHECK(*got == "payload-1\n");
  // other operations and other configs miss
  CHECK(!cache_load(cfg, "selmer").has_value());
  RunConfig other = cfg;
  other.height_bound *= 2;
  CHECK(!cache_load(other, "count").has_value());
  // path embeds the hash
  CHECK(cache_path(cfg, "count").find(config_hash(cfg)) != std::string::npos);
}

TEST_CASE("enumeration options follow the configuration") {
  RunConfig cfg;
  cfg.box_constant = 48;
  cfg.neighborhood_radius = 11;
  cfg.threads = 1;
  EnumOptions opt = enum_options(cfg);
  CHECK(opt.ch == 48);
  CHECK(opt.radius == 11);
  CHECK(!opt.parallel);
  cfg.threads = 0;
  CHECK(enum_options(cfg).parallel);
}
