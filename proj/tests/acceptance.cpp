// Acceptance run: one line per criterion, exit status 0 only if all pass.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <omp.h>

#include "harmonic/harness.hpp"

using namespace harmonic;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Criterion {
  bool pass = true;
  std::ostringstream notes;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      notes << " [FAIL " << what << "]";
    }
  }
};

// Every report produced during the run, serialized, for the determinism rerun.
std::vector<std::pair<std::function<std::string()>, std::string>> replay;

PlancherelReport identity(Criterion& c, const std::string& name, CheckRequest req, const Config& config, double bound) {
  const PlancherelReport r = check_identity(name, req, config);
  const std::string tag = name + "(" + r.group + ",n=" + std::to_string(r.n) + "," + req.function + ")";
  c.notes << " " << tag << "=" << r.rel_error;
  // The configured tolerance must be at least as strict as the criterion's.
  c.require(r.tolerance <= bound, tag + " tolerance");
  c.require(r.pass && r.rel_error <= bound, tag);
  replay.emplace_back([name, req, &config] { return check_identity(name, req, config).to_json().dump(); }, r.to_json().dump());
  return r;
}

AxiomReport axioms(Criterion& c, const std::string& law, int n, const Config& config, bool expect_pass) {
  const AxiomReport r = check_axioms(law, n, config);
  c.require(r.pass() == expect_pass, law + " n=" + std::to_string(n));
  replay.emplace_back([law, n, &config] { return check_axioms(law, n, config).to_json().dump(); }, r.to_json().dump());
  return r;
}

void print(int id, const Criterion& c, double secs, const std::string& budget) {
  std::printf("criterion %d: %s (%.1f s, budget %s)%s\n", id, c.pass ? "PASS" : "FAIL", secs, budget.c_str(),
              c.notes.str().c_str());
  std::fflush(stdout);
}

}  // namespace

int main() {
  Config config = default_config();
  config.sl3 = true;
  bool all = true;
  const auto suite_start = Clock::now();

  {  // 1. Iwasawa reconstruction, 1000 SL(2) and 1000 SL(3).
    Criterion c;
    const auto t0 = Clock::now();
    for (int n : {2, 3}) {
      const AxiomReport r = axioms(c, "iwasawa", n, config, true);
      c.require(r.trials == 1000 && r.tolerance <= 1e-12, "iwasawa setup");
      for (const auto& a : r.results) c.notes << " n=" << n << " " << a.axiom << "=" << a.max_residual;
    }
    const double s = seconds_since(t0);
    c.require(s <= 5.0, "runtime");
    print(1, c, s, "5 s");
    all = all && c.pass;
  }

  {  // 2. Group axioms and the naive-law counterexample.
    Criterion c;
    const auto t0 = Clock::now();
    for (int m : {2, 3, 4}) axioms(c, "n-group", m, config, true);
    for (int n : {2, 3}) axioms(c, "s-group", n, config, true);
    for (int n : {2, 3}) axioms(c, "h-group", n, config, true);
    for (int n : {1, 2, 3}) axioms(c, "glminus-transported", n, config, true);
    axioms(c, "glminus-naive", 1, config, true);
    for (int n : {2, 3}) {
      const AxiomReport r = axioms(c, "glminus-naive", n, config, false);
      for (const auto& a : r.results) {
        if (a.axiom != "associativity") continue;
        const bool certified = !a.pass && a.witness.value("certified", false) &&
                               matrix_from_json(a.witness["inputs"][0]) == naive_law_witness(n) &&
                               a.witness["discrepancy"].get<double>() >= 1.0 &&
                               recheck_witness("glminus-naive", n, a) == a.witness["residual"].get<double>();
        c.require(certified, "certified witness n=" + std::to_string(n));
        c.notes << " naive n=" << n << " discrepancy=" << a.witness["discrepancy"].get<double>();
      }
    }
    c.require(config.axiom_trials == 1000 && config.tolerance("axioms") <= 1e-12, "axiom setup");
    print(2, c, seconds_since(t0), "-");
    all = all && c.pass;
  }

  {  // 3. N Plancherel.
    Criterion c;
    const auto t0 = Clock::now();
    c.require(config.grids.n_m2.count == 256 && config.grids.n_m3.count == 64, "grid sizes");
    for (const char* fn : {"gaussian", "bump"}) {
      for (int m : {2, 3}) identity(c, "n-plancherel", {"N", m, fn}, config, 1e-6);
    }
    const double s = seconds_since(t0);
    c.require(s <= 30.0, "runtime");
    print(3, c, s, "30 s");
    all = all && c.pass;
  }

  {  // 4. AN Plancherel and the extension convolution checks.
    Criterion c;
    const auto t0 = Clock::now();
    identity(c, "an-plancherel", {"AN", 2, "gaussian"}, config, 1e-4);
    identity(c, "extension-pointwise", {"AN", 2, "gaussian"}, config, 1e-3);
    identity(c, "extension-spectral", {"AN", 2, "gaussian"}, config, 1e-3);
    print(4, c, seconds_since(t0), "-");
    all = all && c.pass;
  }

  {  // 5. Peter-Weyl.
    Criterion c;
    const auto t0 = Clock::now();
    c.require(config.band_so2 == 16 && config.band_so3 == 8, "band limits");
    identity(c, "k-plancherel", {"SO2", 2, "gaussian"}, config, 1e-10);
    identity(c, "k-inversion", {"SO2", 2, "gaussian"}, config, 1e-10);
    identity(c, "k-plancherel", {"SO3", 3, "gaussian"}, config, 1e-8);
    identity(c, "k-inversion", {"SO3", 3, "gaussian"}, config, 1e-8);
    const double s = seconds_since(t0);
    c.require(s <= 60.0, "runtime");
    print(5, c, s, "60 s");
    all = all && c.pass;
  }

  {  // 6. SL(2).
    Criterion c;
    const auto t0 = Clock::now();
    c.require(config.inversion_points == 50, "inversion points");
    identity(c, "sl-plancherel", {"SL", 2, "gaussian"}, config, 1e-3);
    identity(c, "sl-inversion", {"SL", 2, "gaussian"}, config, 1e-3);
    identity(c, "convolution-at-identity", {"SL", 2, "gaussian"}, config, 1e-3);
    identity(c, "order-consistency", {"SL", 2, "gaussian"}, config, 1e-6);
    const double s = seconds_since(t0);
    c.require(s <= 300.0, "runtime");
    print(6, c, s, "300 s");
    all = all && c.pass;
  }

  {  // 7. GL+ and GL.
    Criterion c;
    const auto t0 = Clock::now();
    identity(c, "glplus-plancherel", {"GLplus", 2, "gaussian"}, config, 1e-3);
    identity(c, "gl-factor-two", {"GL", 2, "gaussian"}, config, 1e-12);
    identity(c, "scale-parseval", {"scale", 1, "gaussian"}, config, 1e-8);
    print(7, c, seconds_since(t0), "-");
    all = all && c.pass;
  }

  {  // 8. SL(3) behind the flag, determinism, total runtime.
    Criterion c;
    const auto t0 = Clock::now();
    Config off = config;
    off.sl3 = false;
    bool gated = false;
    try {
      check_identity("sl-plancherel", {"SL", 3, "gaussian"}, off);
    } catch (const std::invalid_argument&) {
      gated = true;
    }
    c.require(gated, "sl3 flag gate");
    identity(c, "sl-plancherel", {"SL", 3, "gaussian"}, config, 1e-2);
    identity(c, "sl-inversion", {"SL", 3, "gaussian"}, config, 1e-2);
    identity(c, "sl-identity-point", {"SL", 3, "gaussian"}, config, 1e-2);

    const double total = seconds_since(suite_start);
    c.notes << " suite=" << total << "s";
    c.require(total <= 600.0, "total runtime");

    // Replay every report of the run with a different thread count and
    // compare the JSON byte for byte.
    const int threads = omp_get_max_threads();
    omp_set_num_threads(threads > 1 ? 1 : 4);
    std::size_t mismatches = 0;
    for (const auto& [rerun, dump] : replay) {
      if (rerun() != dump) ++mismatches;
    }
    omp_set_num_threads(threads);
    c.notes << " replayed=" << replay.size() << " mismatches=" << mismatches;
    c.require(mismatches == 0, "determinism");
    print(8, c, seconds_since(t0), "600 s total");
    all = all && c.pass;
  }

  std::printf("acceptance: %s\n", all ? "PASS" : "FAIL");
  return all ? 0 : 1;
}
