#include "harmonic/kernels.hpp"

#include <algorithm>
#include <stdexcept>

#include <omp.h>

namespace harmonic::kernels {

namespace {

using RowMat = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Index = Eigen::Index;

void check_sizes(std::size_t in_size, std::size_t out_size, std::size_t outer, std::size_t inner,
                 std::size_t cols, std::size_t rows) {
  if (in_size != outer * cols * inner || out_size != outer * rows * inner) {
    throw std::invalid_argument("apply_along_axis: tensor sizes do not match the operator");
  }
}

}  // namespace

int max_threads() { return omp_get_max_threads(); }

void apply_along_axis(const CMatrix& m, std::span<const cplx> in, std::span<cplx> out,
                      std::size_t outer, std::size_t inner, Execution exec) {
  if (exec == Execution::Serial) {
    reference::apply_along_axis(m, in, out, outer, inner);
    return;
  }
  const auto cols = static_cast<std::size_t>(m.cols());
  const auto rows = static_cast<std::size_t>(m.rows());
  check_sizes(in.size(), out.size(), outer, inner, cols, rows);

  if (inner == 1) {
    // One large GEMM, split into fixed-size row blocks so the summation
    // order never depends on the thread count.
    Eigen::Map<const RowMat> a(in.data(), static_cast<Index>(outer), static_cast<Index>(cols));
    Eigen::Map<RowMat> b(out.data(), static_cast<Index>(outer), static_cast<Index>(rows));
    const CMatrix mt = m.transpose();
    constexpr std::size_t per_block = 64;
    const auto blocks = static_cast<std::ptrdiff_t>((outer + per_block - 1) / per_block);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t blk = 0; blk < blocks; ++blk) {
      const std::size_t r0 = static_cast<std::size_t>(blk) * per_block;
      if (r0 >= outer) continue;
      const std::size_t nr = std::min(per_block, outer - r0);
      b.middleRows(static_cast<Index>(r0), static_cast<Index>(nr)).noalias() =
          a.middleRows(static_cast<Index>(r0), static_cast<Index>(nr)) * mt;
    }
    return;
  }

  const auto n_outer = static_cast<std::ptrdiff_t>(outer);
#pragma omp parallel for schedule(static) if (n_outer > 1)
  for (std::ptrdiff_t o = 0; o < n_outer; ++o) {
    const auto uo = static_cast<std::size_t>(o);
    Eigen::Map<const RowMat> a(in.data() + uo * cols * inner, static_cast<Index>(cols),
                               static_cast<Index>(inner));
    Eigen::Map<RowMat> b(out.data() + uo * rows * inner, static_cast<Index>(rows),
                         static_cast<Index>(inner));
    b.noalias() = m * a;
  }
}

void contract_axis(std::span<const double> weights, std::span<const cplx> in,
                   std::span<cplx> out, std::size_t outer, std::size_t inner, Execution exec) {
  CMatrix row(1, static_cast<Index>(weights.size()));
  for (std::size_t j = 0; j < weights.size(); ++j) row(0, static_cast<Index>(j)) = weights[j];
  if (exec == Execution::Serial) {
    reference::contract_axis(weights, in, out, outer, inner);
    return;
  }
  apply_along_axis(row, in, out, outer, inner, exec);
}

namespace reference {

void apply_along_axis(const CMatrix& m, std::span<const cplx> in, std::span<cplx> out,
                      std::size_t outer, std::size_t inner) {
  const auto cols = static_cast<std::size_t>(m.cols());
  const auto rows = static_cast<std::size_t>(m.rows());
  check_sizes(in.size(), out.size(), outer, inner, cols, rows);
  for (std::size_t o = 0; o < outer; ++o) {
    const cplx* src = in.data() + o * cols * inner;
    cplx* dst = out.data() + o * rows * inner;
    for (std::size_t k = 0; k < rows; ++k) {
      for (std::size_t i = 0; i < inner; ++i) {
        cplx acc{0.0, 0.0};
        for (std::size_t j = 0; j < cols; ++j) {
          acc += m(static_cast<Index>(k), static_cast<Index>(j)) * src[j * inner + i];
        }
        dst[k * inner + i] = acc;
      }
    }
  }
}

void contract_axis(std::span<const double> weights, std::span<const cplx> in,
                   std::span<cplx> out, std::size_t outer, std::size_t inner) {
  const std::size_t cols = weights.size();
  check_sizes(in.size(), out.size(), outer, inner, cols, 1);
  for (std::size_t o = 0; o < outer; ++o) {
    const cplx* src = in.data() + o * cols * inner;
    for (std::size_t i = 0; i < inner; ++i) {
      cplx acc{0.0, 0.0};
      for (std::size_t j = 0; j < cols; ++j) acc += weights[j] * src[j * inner + i];
      out[o * inner + i] = acc;
    }
  }
}

}  // namespace reference

}  // namespace harmonic::kernels
