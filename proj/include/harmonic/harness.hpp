#pragma once

// Identity checks and axiom suites behind the CLI and the acceptance binary.
// Every report carries the config fingerprint and seed; rerunning with the
// same pair reproduces the JSON byte for byte.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "harmonic/config.hpp"

namespace harmonic {

// ---------------------------------------------------------------------------
// Closed-form chart test functions: f(a n k) = φ(x) ψ(t) χ(k) [h(u)].

struct SeparableFunction {
  int n = 2;
  bool scale = false;
  TestFunctionKind x_kind = TestFunctionKind::Gaussian;  // Gaussian or Bump
  double x_width = 1.0;
  double t_width = 0.5;
  double u_width = 1.0;
  // 0: χ ≡ 1; 1: cos θ (SO(2)) or D¹₀₀ = cos β (SO(3));
  // 2: 1 + ½e^{2iθ} (SO(2)) or 1 + ½D¹₁₀ (SO(3)).
  int k_variant = 0;

  cplx operator()(const ChartPoint& p) const;
  std::string describe() const;
};

// The standard n = 2 set: Gaussian × Gaussian × {1, cos θ, 1 + ½e^{2iθ}}.
std::vector<SeparableFunction> standard_separable_set(int n, TestFunctionKind x_kind = TestFunctionKind::Gaussian);

SampledFunction sample(const SeparableFunction& f, const SLChart& chart);
// The same function as a function of matrices, through the ank chart.
GFunction as_g_function(const SeparableFunction& f, const SLChart& chart);

// exp(-c(‖g‖² - n))·(1 + ½e^{2iθ}) in the ank chart (n = 2): its support is
// closed under g ↦ g⁻¹, so involution keeps it inside the chart box.
GFunction inversion_profile(double c);

// ---------------------------------------------------------------------------
// Reports

enum class ReportKind {
  Identity,  // rel_error = |lhs - rhs| / max(|lhs|, 1e-30)
  Deviation  // rel_error is a sup-norm deviation; lhs/rhs are the compared magnitudes
};

struct PlancherelReport {
  std::string identity;
  std::string group;
  int n = 0;
  std::string function;
  ReportKind kind = ReportKind::Identity;
  double lhs = 0.0;
  double rhs = 0.0;
  double rel_error = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  double interpolation_error_estimate = 0.0;
  std::size_t clipped = 0;
  std::string fingerprint;
  std::uint64_t seed = 0;
  nlohmann::json details = nlohmann::json::object();

  nlohmann::json to_json() const;
};

double relative_error(double lhs, double rhs);

struct IdentityInfo {
  std::string name;
  std::string description;
  std::string default_group;
  std::vector<int> sizes;  // n values it accepts
};

const std::vector<IdentityInfo>& identity_list();

struct CheckRequest {
  std::string group;  // empty: the identity's default
  int n = 0;          // 0: the identity's first size
  std::string function = "gaussian";
};

PlancherelReport check_identity(std::string_view identity, const CheckRequest& request, const Config& config);

// Plancherel identity for a group name: N, AN, SO2, SO3, SL, GLplus, GL, scale.
std::string plancherel_identity_for(std::string_view group);

// ---------------------------------------------------------------------------
// Axiom suites

struct AxiomResult {
  std::string axiom;
  bool pass = true;
  double max_residual = 0.0;
  int trials = 0;
  // Inputs of the worst (or first failing) trial, enough to recompute it.
  nlohmann::json witness = nlohmann::json::object();
};

struct AxiomReport {
  std::string law;
  int n = 0;
  int trials = 0;
  std::uint64_t seed = 0;
  double tolerance = 0.0;
  std::string fingerprint;
  std::vector<AxiomResult> results;

  bool pass() const;
  nlohmann::json to_json() const;
};

struct LawInfo {
  std::string name;
  std::string description;
  std::vector<int> sizes;
};

const std::vector<LawInfo>& law_list();

AxiomReport check_axioms(std::string_view law, int n, const Config& config);

// Recomputes a witness's residual from its stored inputs alone.
double recheck_witness(std::string_view law, int n, const AxiomResult& result);

// The fixed associativity counterexample for the naive GL- law: A = B = C
// = the permutation swapping the first two basis vectors (n >= 2).
Matrix naive_law_witness(int n);

}  // namespace harmonic
