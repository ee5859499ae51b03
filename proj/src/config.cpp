#include "harmonic/config.hpp"

#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#define TOML_ENABLE_FORMATTERS 1
#include <toml.hpp>

namespace harmonic {

namespace {

nlohmann::json range_json(const AxisRange& r) { return {{"lo", r.lo}, {"hi", r.hi}, {"count", r.count}}; }

void reject_unknown(const nlohmann::json& j, std::initializer_list<const char*> known, const std::string& where) {
  if (!j.is_object()) throw std::invalid_argument("config: " + where + " must be a table");
  const std::set<std::string> allowed(known.begin(), known.end());
  for (const auto& [key, value] : j.items()) {
    if (!allowed.contains(key)) throw std::invalid_argument("config: unknown key " + where + "." + key);
  }
}

void read_range(const nlohmann::json& j, const char* key, AxisRange& r, const std::string& where) {
  if (!j.contains(key)) return;
  const auto& v = j.at(key);
  reject_unknown(v, {"lo", "hi", "count"}, where + "." + key);
  r.lo = v.value("lo", r.lo);
  r.hi = v.value("hi", r.hi);
  r.count = v.value("count", r.count);
  if (!(r.hi > r.lo) || r.count < 2) {
    throw std::invalid_argument("config: " + where + "." + key + " needs lo < hi and count >= 2");
  }
}

template <typename T>
void read_value(const nlohmann::json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

}  // namespace

std::map<std::string, double> default_tolerances() {
  return {
      {"iwasawa", 1e-12},
      {"axioms", 1e-12},
      {"n-plancherel", 1e-6},
      {"an-plancherel", 1e-4},
      {"extension-pointwise", 1e-3},
      {"extension-spectral", 1e-3},
      {"k-plancherel", 1e-10},
      {"k-plancherel-so3", 1e-8},
      {"k-inversion", 1e-10},
      {"k-inversion-so3", 1e-8},
      {"sl-plancherel", 1e-3},
      {"sl-plancherel-n3", 1e-2},
      {"sl-inversion", 1e-3},
      {"sl-inversion-n3", 1e-2},
      {"sl-identity-point", 1e-3},
      {"sl-identity-point-n3", 1e-2},
      {"sl-separable", 1e-6},
      {"convolution-at-identity", 1e-3},
      {"order-consistency", 1e-6},
      {"haar-orders", 1e-6},
      {"involution-norm", 1e-4},
      {"upsilon-invariance", 1e-3},
      {"scale-parseval", 1e-8},
      {"glplus-plancherel", 1e-3},
      {"gl-factor-two", 1e-12},
  };
}

Config default_config() {
  Config c;
  c.tolerances = default_tolerances();
  return c;
}

double Config::tolerance(std::string_view identity) const {
  const auto it = tolerances.find(std::string(identity));
  if (it == tolerances.end()) throw std::invalid_argument("no tolerance configured for " + std::string(identity));
  return it->second;
}

nlohmann::json Config::to_json() const {
  nlohmann::json j;
  const GridConfig& g = grids;
  j["grids"] = {
      {"rule", std::string(to_string(g.rule))},
      {"interpolation", std::string(to_string(g.interpolation))},
      {"nilpotent", {{"m2", range_json(g.n_m2)}, {"m3", range_json(g.n_m3)}}},
      {"solvable", {{"n", range_json(g.an_n)}, {"a", range_json(g.an_a)}}},
      {"sl2", {{"n", range_json(g.sl2_n)}, {"a", range_json(g.sl2_a)}, {"k", g.sl2_k}}},
      {"sl3", {{"n", range_json(g.sl3_n)}, {"a", range_json(g.sl3_a)}, {"k_band", g.sl3_k}}},
      {"scale", {{"u", range_json(g.scale)}}},
      {"glplus", {{"n", range_json(g.glplus_n)}, {"a", range_json(g.glplus_a)}, {"k", g.glplus_k}, {"u", range_json(g.glplus_u)}}},
      {"compact", {{"so2_angles", g.so2_angles}, {"so3_band", g.so3_band}}},
  };
  j["tolerances"] = tolerances;
  j["bandlimits"] = {{"so2", band_so2}, {"so3", band_so3}};
  j["seeds"] = {{"seed", seed},
                {"axiom_trials", axiom_trials},
                {"iwasawa_trials", iwasawa_trials},
                {"inversion_points", inversion_points},
                {"extension_samples", extension_samples},
                {"upsilon_samples", upsilon_samples}};
  j["run"] = {{"strict", strict}, {"sl3", sl3}};
  return j;
}

std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const unsigned char ch : bytes) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string Config::fingerprint() const { return fnv1a_hex(to_json().dump()); }

SLChart Config::sl2_chart() const {
  return make_sl_chart(2, grids.sl2_n, grids.sl2_a, grids.sl2_k, band_so2, grids.rule);
}

SLChart Config::sl3_chart() const {
  return make_sl_chart(3, grids.sl3_n, grids.sl3_a, grids.sl3_k, grids.sl3_k, grids.rule);
}

SLChart Config::glplus_chart() const {
  return make_glplus_chart(2, grids.glplus_n, grids.glplus_a, grids.glplus_k, std::min(band_so2, grids.glplus_k / 2 - 1),
                           grids.glplus_u, grids.rule);
}

Config config_from_json(const nlohmann::json& j) {
  Config c = default_config();
  reject_unknown(j, {"grids", "tolerances", "bandlimits", "seeds", "run"}, "config");
  try {
    if (j.contains("grids")) {
      const auto& g = j.at("grids");
      reject_unknown(g, {"rule", "interpolation", "nilpotent", "solvable", "sl2", "sl3", "scale", "glplus", "compact"}, "grids");
      GridConfig& d = c.grids;
      if (g.contains("rule")) d.rule = parse_quadrature_rule(g.at("rule").get<std::string>());
      if (g.contains("interpolation")) d.interpolation = parse_interpolation_order(g.at("interpolation").get<std::string>());
      if (g.contains("nilpotent")) {
        const auto& s = g.at("nilpotent");
        reject_unknown(s, {"m2", "m3"}, "grids.nilpotent");
        read_range(s, "m2", d.n_m2, "grids.nilpotent");
        read_range(s, "m3", d.n_m3, "grids.nilpotent");
      }
      if (g.contains("solvable")) {
        const auto& s = g.at("solvable");
        reject_unknown(s, {"n", "a"}, "grids.solvable");
        read_range(s, "n", d.an_n, "grids.solvable");
        read_range(s, "a", d.an_a, "grids.solvable");
      }
      if (g.contains("sl2")) {
        const auto& s = g.at("sl2");
        reject_unknown(s, {"n", "a", "k"}, "grids.sl2");
        read_range(s, "n", d.sl2_n, "grids.sl2");
        read_range(s, "a", d.sl2_a, "grids.sl2");
        read_value(s, "k", d.sl2_k);
      }
      if (g.contains("sl3")) {
        const auto& s = g.at("sl3");
        reject_unknown(s, {"n", "a", "k_band"}, "grids.sl3");
        read_range(s, "n", d.sl3_n, "grids.sl3");
        read_range(s, "a", d.sl3_a, "grids.sl3");
        read_value(s, "k_band", d.sl3_k);
      }
      if (g.contains("scale")) {
        reject_unknown(g.at("scale"), {"u"}, "grids.scale");
        read_range(g.at("scale"), "u", d.scale, "grids.scale");
      }
      if (g.contains("glplus")) {
        const auto& s = g.at("glplus");
        reject_unknown(s, {"n", "a", "k", "u"}, "grids.glplus");
        read_range(s, "n", d.glplus_n, "grids.glplus");
        read_range(s, "a", d.glplus_a, "grids.glplus");
        read_value(s, "k", d.glplus_k);
        read_range(s, "u", d.glplus_u, "grids.glplus");
      }
      if (g.contains("compact")) {
        const auto& s = g.at("compact");
        reject_unknown(s, {"so2_angles", "so3_band"}, "grids.compact");
        read_value(s, "so2_angles", d.so2_angles);
        read_value(s, "so3_band", d.so3_band);
      }
    }
    if (j.contains("tolerances")) {
      const auto& t = j.at("tolerances");
      if (!t.is_object()) throw std::invalid_argument("config: tolerances must be a table");
      for (const auto& [key, value] : t.items()) {
        if (!c.tolerances.contains(key)) throw std::invalid_argument("config: unknown tolerance " + key);
        const double v = value.get<double>();
        if (!(v > 0.0)) throw std::invalid_argument("config: tolerance " + key + " must be positive");
        c.tolerances[key] = v;
      }
    }
    if (j.contains("bandlimits")) {
      const auto& b = j.at("bandlimits");
      reject_unknown(b, {"so2", "so3"}, "bandlimits");
      read_value(b, "so2", c.band_so2);
      read_value(b, "so3", c.band_so3);
      if (c.band_so2 < 0 || c.band_so3 < 0) throw std::invalid_argument("config: band limits must be >= 0");
    }
    if (j.contains("seeds")) {
      const auto& s = j.at("seeds");
      reject_unknown(s, {"seed", "axiom_trials", "iwasawa_trials", "inversion_points", "extension_samples", "upsilon_samples"},
                     "seeds");
      read_value(s, "seed", c.seed);
      read_value(s, "axiom_trials", c.axiom_trials);
      read_value(s, "iwasawa_trials", c.iwasawa_trials);
      read_value(s, "inversion_points", c.inversion_points);
      read_value(s, "extension_samples", c.extension_samples);
      read_value(s, "upsilon_samples", c.upsilon_samples);
    }
    if (j.contains("run")) {
      const auto& r = j.at("run");
      reject_unknown(r, {"strict", "sl3"}, "run");
      read_value(r, "strict", c.strict);
      read_value(r, "sl3", c.sl3);
    }
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("config: ") + e.what());
  }
  return c;
}

Config config_from_toml(std::string_view text) {
  toml::table table;
  try {
    table = toml::parse(text);
  } catch (const toml::parse_error& e) {
    std::ostringstream msg;
    msg << "config: " << e.description() << " at " << e.source().begin;
    throw std::invalid_argument(msg.str());
  }
  std::ostringstream json;
  json << toml::json_formatter{table};
  return config_from_json(nlohmann::json::parse(json.str()));
}

Config load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("config: cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  if (path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0) {
    try {
      return config_from_json(nlohmann::json::parse(buf.str()));
    } catch (const nlohmann::json::parse_error& e) {
      throw std::invalid_argument(std::string("config: ") + e.what());
    }
  }
  return config_from_toml(buf.str());
}

}  // namespace harmonic
