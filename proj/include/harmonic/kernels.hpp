#pragma once

// Data-parallel inner loops. Each kernel has a plain-loop serial reference in
// `kernels::reference` that the tests and benchmarks compare against.

#include <span>

#include "harmonic/types.hpp"

namespace harmonic::kernels {

// Views `in` as a row-major (outer, M.cols(), inner) tensor and writes
// out[o, k, i] = Σ_j M(k, j) · in[o, j, i] into a (outer, M.rows(), inner)
// tensor.
void apply_along_axis(const CMatrix& m, std::span<const cplx> in, std::span<cplx> out,
                      std::size_t outer, std::size_t inner,
                      Execution exec = Execution::Parallel);

// Same contraction with a real weight row: out[o, i] = Σ_j w_j · in[o, j, i].
void contract_axis(std::span<const double> weights, std::span<const cplx> in,
                   std::span<cplx> out, std::size_t outer, std::size_t inner,
                   Execution exec = Execution::Parallel);

namespace reference {

void apply_along_axis(const CMatrix& m, std::span<const cplx> in, std::span<cplx> out,
                      std::size_t outer, std::size_t inner);

void contract_axis(std::span<const double> weights, std::span<const cplx> in,
                   std::span<cplx> out, std::size_t outer, std::size_t inner);

}  // namespace reference

int max_threads();

}  // namespace harmonic::kernels
