#pragma once

#include <cstddef>
#include <span>
#include <vector>

// Dense judge x beverage kernels behind the scoring module. Matrices are
// row-major (one row per judge) with NaN marking an empty cell.
//
// Two builds of every kernel exist with identical signatures: `omp` is what
// the library calls, `serial` is the plain reference the tests and the
// benchmark compare it against. Results must agree bit-for-bit, so the
// parallel versions only split work across rows, columns or pairs and never
// reassociate a sum.

namespace dba::kernels {

enum class NormMethod { min_max, z_score };
enum class CorrMethod { spearman, kendall };

struct Shape {
  std::size_t rows = 0;
  std::size_t cols = 0;
};

// Midranks (1-based, ties averaged) of `values`.
std::vector<double> midranks(std::span<const double> values);

// Pearson correlation of midranks; NaN when either side is constant.
double spearman(std::span<const double> x, std::span<const double> y);

// Kendall tau-b; NaN when either side is constant.
double kendall_tau_b(std::span<const double> x, std::span<const double> y);

#define DBA_KERNEL_DECLS                                                                    \
  /* Per-row rescale. Degenerate rows (fewer than two distinct values, or for z-score a    \
     zero deviation) throw DegenerateRowError unless lenient, which maps them to 0.5.      \
     Rows with no filled cells are left empty. */                                          \
  void normalize_rows(Shape s, std::span<const double> in, std::span<double> out,          \
                      NormMethod method, bool lenient);                                    \
  /* Mean over filled cells of each column; NaN for empty columns. */                      \
  void column_means(Shape s, std::span<const double> in, std::span<double> means,          \
                    std::span<std::size_t> counts);                                        \
  /* Sample standard deviation and max-min range per column; NaN below two cells. */       \
  void column_spread(Shape s, std::span<const double> in, std::span<double> sd,            \
                     std::span<double> range, std::span<std::size_t> counts);              \
  /* Mean and sample standard deviation per row; NaN below two cells. */                   \
  void row_stats(Shape s, std::span<const double> in, std::span<double> mean,              \
                 std::span<double> sd, std::span<std::size_t> counts);                     \
  /* Symmetric rows x rows correlation over commonly filled columns; NaN where fewer       \
     than min_common columns are shared or the correlation is undefined. */                \
  void correlation_matrix(Shape s, std::span<const double> in, std::span<double> out,      \
                          CorrMethod method, std::size_t min_common);

namespace omp {
DBA_KERNEL_DECLS
}

namespace serial {
DBA_KERNEL_DECLS
}

#undef DBA_KERNEL_DECLS

}  // namespace dba::kernels
