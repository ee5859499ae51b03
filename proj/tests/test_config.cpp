#include <gtest/gtest.h>

#include <fstream>

#include "harmonic/config.hpp"
#include "harmonic/harness.hpp"

using namespace harmonic;

TEST(Config, EveryIdentityHasATolerance) {
  const Config c = default_config();
  for (const auto& i : identity_list()) EXPECT_NO_THROW(c.tolerance(i.name)) << i.name;
  EXPECT_NO_THROW(c.tolerance("axioms"));
  EXPECT_NO_THROW(c.tolerance("iwasawa"));
}

TEST(Config, TomlOverridesDefaults) {
  const Config c = config_from_toml(R"(
[grids]
interpolation = "linear"
[grids.sl2]
k = 32
[grids.sl2.n]
count = 128
[tolerances]
sl-plancherel = 1e-5
[seeds]
seed = 7
[run]
sl3 = true
)");
  EXPECT_EQ(c.grids.interpolation, InterpolationOrder::Linear);
  EXPECT_EQ(c.grids.sl2_k, 32);
  EXPECT_EQ(c.grids.sl2_n.count, 128);
  EXPECT_EQ(c.grids.sl2_n.lo, -10.0);
  EXPECT_EQ(c.tolerance("sl-plancherel"), 1e-5);
  EXPECT_EQ(c.seed, 7u);
  EXPECT_TRUE(c.sl3);
}

TEST(Config, UnknownKeysAreErrors) {
  EXPECT_THROW(config_from_toml("[grid]\nrule = \"trapezoid\"\n"), std::invalid_argument);
  EXPECT_THROW(config_from_toml("[tolerances]\nno-such-check = 1e-3\n"), std::invalid_argument);
  EXPECT_THROW(config_from_toml("[grids.sl2.n]\nlo = 5\nhi = 1\n"), std::invalid_argument);
  EXPECT_THROW(config_from_toml("[seeds\n"), std::invalid_argument);
}

TEST(Config, JsonRoundTripKeepsFingerprint) {
  Config c = default_config();
  c.seed = 99;
  c.grids.sl3_n.count = 15;
  const Config back = config_from_json(c.to_json());
  EXPECT_EQ(back.fingerprint(), c.fingerprint());
  EXPECT_NE(default_config().fingerprint(), c.fingerprint());
}

TEST(Config, ShippedDefaultFileMatchesBuiltIns) {
  const Config c = load_config(HARMONIC_SOURCE_DIR "/config/default.toml");
  EXPECT_EQ(c.fingerprint(), default_config().fingerprint());
}

TEST(Config, Fnv1aKnownValues) {
  // Published FNV-1a 64-bit test vectors.
  EXPECT_EQ(fnv1a_hex(""), "cbf29ce484222325");
  EXPECT_EQ(fnv1a_hex("a"), "af63dc4c8601ec8c");
  EXPECT_EQ(fnv1a_hex("foobar"), "85944171f73967e8");
}
