#pragma once

#include <cstddef>

#include "dba/scoring_kernels.hpp"

// Per-row / per-column bodies shared by both kernel builds so the arithmetic
// is identical; only the loop distribution differs.
namespace dba::kernels::detail {

// false when the row is degenerate and lenient is off.
bool normalize_row(std::size_t cols, const double* in, double* out, NormMethod method,
                   bool lenient);
void column_mean(Shape s, const double* in, std::size_t c, double& mean, std::size_t& count);
void column_spread(Shape s, const double* in, std::size_t c, double& sd, double& range,
                   std::size_t& count);
void row_stat(std::size_t cols, const double* in, double& mean, double& sd, std::size_t& count);
// Diagonal entries are 1 when the row has at least min_common cells.
double pair_correlation(Shape s, const double* in, std::size_t a, std::size_t b,
                        CorrMethod method, std::size_t min_common);
[[noreturn]] void throw_degenerate(std::size_t row);

}  // namespace dba::kernels::detail
