#include <atomic>
#include <cstddef>
#include <limits>

#include "dba/scoring_kernels.hpp"
#include "scoring_kernels_detail.hpp"

namespace dba::kernels::omp {

namespace {
using Index = std::ptrdiff_t;
Index as_index(std::size_t n) { return static_cast<Index>(n); }
}  // namespace

void normalize_rows(Shape s, std::span<const double> in, std::span<double> out,
                    NormMethod method, bool lenient) {
  // Lowest degenerate row index, reported after the parallel region.
  std::size_t first_bad = std::numeric_limits<std::size_t>::max();
#pragma omp parallel for reduction(min : first_bad)
  for (Index r = 0; r < as_index(s.rows); ++r) {
    const auto row = static_cast<std::size_t>(r);
    if (!detail::normalize_row(s.cols, in.data() + row * s.cols, out.data() + row * s.cols,
                               method, lenient))
      first_bad = std::min(first_bad, row);
  }
  if (first_bad != std::numeric_limits<std::size_t>::max()) detail::throw_degenerate(first_bad);
}

void column_means(Shape s, std::span<const double> in, std::span<double> means,
                  std::span<std::size_t> counts) {
#pragma omp parallel for
  for (Index c = 0; c < as_index(s.cols); ++c)
    detail::column_mean(s, in.data(), static_cast<std::size_t>(c), means[c], counts[c]);
}

void column_spread(Shape s, std::span<const double> in, std::span<double> sd,
                   std::span<double> range, std::span<std::size_t> counts) {
#pragma omp parallel for
  for (Index c = 0; c < as_index(s.cols); ++c)
    detail::column_spread(s, in.data(), static_cast<std::size_t>(c), sd[c], range[c], counts[c]);
}

void row_stats(Shape s, std::span<const double> in, std::span<double> mean, std::span<double> sd,
               std::span<std::size_t> counts) {
#pragma omp parallel for
  for (Index r = 0; r < as_index(s.rows); ++r) {
    const auto row = static_cast<std::size_t>(r);
    detail::row_stat(s.cols, in.data() + row * s.cols, mean[r], sd[r], counts[r]);
  }
}

void correlation_matrix(Shape s, std::span<const double> in, std::span<double> out,
                        CorrMethod method, std::size_t min_common) {
  // Upper triangle flattened so every pair is one iteration.
  const std::size_t n = s.rows;
  const std::size_t pairs = n * (n + 1) / 2;
#pragma omp parallel for schedule(dynamic)
  for (Index p = 0; p < as_index(pairs); ++p) {
    std::size_t k = static_cast<std::size_t>(p);
    std::size_t a = 0;
    while (k >= n - a) {
      k -= n - a;
      ++a;
    }
    const std::size_t b = a + k;
    const double v = detail::pair_correlation(s, in.data(), a, b, method, min_common);
    out[a * n + b] = v;
    out[b * n + a] = v;
  }
}

}  // namespace dba::kernels::omp
