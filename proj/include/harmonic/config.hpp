#pragma once

// Run configuration: grids, tolerances, band limits and seeds. Loaded from
// TOML (or JSON) and merged over built-in defaults; unknown keys are errors.

#include <cstdint>
#include <map>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "harmonic/fullgroup.hpp"
#include "harmonic/interpolation.hpp"

namespace harmonic {

struct GridConfig {
  QuadratureRule rule = QuadratureRule::Trapezoid;
  InterpolationOrder interpolation = InterpolationOrder::Cubic;

  AxisRange n_m2{-10.0, 10.0, 256};
  AxisRange n_m3{-5.5, 5.5, 64};

  AxisRange an_n{-10.0, 10.0, 256};
  AxisRange an_a{-6.0, 6.0, 128};

  AxisRange sl2_n{-10.0, 10.0, 256};
  AxisRange sl2_a{-6.0, 6.0, 128};
  int sl2_k = 64;  // angles

  AxisRange sl3_n{-5.0, 5.0, 13};
  AxisRange sl3_a{-3.0, 3.0, 13};
  int sl3_k = 1;   // SO(3) quadrature band

  AxisRange scale{-6.0, 6.0, 128};

  AxisRange glplus_n{-8.0, 8.0, 64};
  AxisRange glplus_a{-4.0, 4.0, 32};
  int glplus_k = 16;
  AxisRange glplus_u{-6.0, 6.0, 64};

  int so2_angles = 64;  // K-only transforms
  int so3_band = 8;     // K-only SO(3) grid band
};

struct Config {
  GridConfig grids;
  std::map<std::string, double> tolerances;
  int band_so2 = 16;
  int band_so3 = 8;
  std::uint64_t seed = 20240917;
  int axiom_trials = 1000;
  int iwasawa_trials = 1000;
  int inversion_points = 50;
  int extension_samples = 100;
  int upsilon_samples = 100;
  bool strict = false;
  bool sl3 = false;

  double tolerance(std::string_view identity) const;
  nlohmann::json to_json() const;
  // FNV-1a of the canonical JSON dump.
  std::string fingerprint() const;

  SLChart sl2_chart() const;
  SLChart sl3_chart() const;
  SLChart glplus_chart() const;
};

Config default_config();
std::map<std::string, double> default_tolerances();

// Overlays `j` (same layout as to_json) on the defaults.
Config config_from_json(const nlohmann::json& j);
Config config_from_toml(std::string_view text);
// .json files parse as JSON, everything else as TOML.
Config load_config(const std::string& path);

std::string fnv1a_hex(std::string_view bytes);

}  // namespace harmonic
