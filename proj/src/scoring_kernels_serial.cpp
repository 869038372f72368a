#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "dba/error.hpp"
#include "dba/scoring_kernels.hpp"
#include "scoring_kernels_detail.hpp"

namespace dba::kernels {

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
}

std::vector<double> midranks(std::span<const double> values) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
    const double mid = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = mid;
    i = j + 1;
  }
  return ranks;
}

double spearman(std::span<const double> x, std::span<const double> y) {
  const auto rx = midranks(x);
  const auto ry = midranks(y);
  const double n = static_cast<double>(rx.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    mx += rx[i];
    my += ry[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) return kNaN;
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

double kendall_tau_b(std::span<const double> x, std::span<const double> y) {
  long long concordant = 0, discordant = 0, ties_x = 0, ties_y = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = i + 1; j < x.size(); ++j) {
      const double dx = x[i] - x[j];
      const double dy = y[i] - y[j];
      if (dx == 0.0 && dy == 0.0) continue;
      if (dx == 0.0) {
        ++ties_x;
      } else if (dy == 0.0) {
        ++ties_y;
      } else if ((dx > 0) == (dy > 0)) {
        ++concordant;
      } else {
        ++discordant;
      }
    }
  }
  const double n1 = static_cast<double>(concordant + discordant + ties_x);
  const double n2 = static_cast<double>(concordant + discordant + ties_y);
  if (n1 == 0.0 || n2 == 0.0) return kNaN;
  return static_cast<double>(concordant - discordant) / std::sqrt(n1 * n2);
}

namespace detail {

bool normalize_row(std::size_t cols, const double* in, double* out, NormMethod method,
                   bool lenient) {
  std::size_t count = 0;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  double sum = 0.0;
  for (std::size_t c = 0; c < cols; ++c) {
    const double v = in[c];
    out[c] = kNaN;
    if (std::isnan(v)) continue;
    ++count;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
    sum += v;
  }
  if (count == 0) return true;

  if (method == NormMethod::min_max) {
    if (hi == lo) {
      if (!lenient) return false;
      for (std::size_t c = 0; c < cols; ++c)
        if (!std::isnan(in[c])) out[c] = 0.5;
      return true;
    }
    const double span = hi - lo;
    for (std::size_t c = 0; c < cols; ++c)
      if (!std::isnan(in[c])) out[c] = (in[c] - lo) / span;
    return true;
  }

  const double mean = sum / static_cast<double>(count);
  double ss = 0.0;
  for (std::size_t c = 0; c < cols; ++c)
    if (!std::isnan(in[c])) ss += (in[c] - mean) * (in[c] - mean);
  const double sd = count > 1 ? std::sqrt(ss / static_cast<double>(count - 1)) : 0.0;
  if (sd == 0.0) {
    if (!lenient) return false;
    for (std::size_t c = 0; c < cols; ++c)
      if (!std::isnan(in[c])) out[c] = 0.5;
    return true;
  }
  for (std::size_t c = 0; c < cols; ++c)
    if (!std::isnan(in[c])) out[c] = (in[c] - mean) / sd;
  return true;
}

void column_mean(Shape s, const double* in, std::size_t c, double& mean, std::size_t& count) {
  double sum = 0.0;
  std::size_t n = 0;
  for (std::size_t r = 0; r < s.rows; ++r) {
    const double v = in[r * s.cols + c];
    if (std::isnan(v)) continue;
    sum += v;
    ++n;
  }
  count = n;
  mean = n ? sum / static_cast<double>(n) : kNaN;
}

void column_spread(Shape s, const double* in, std::size_t c, double& sd, double& range,
                   std::size_t& count) {
  double sum = 0.0, lo = std::numeric_limits<double>::infinity(), hi = -lo;
  std::size_t n = 0;
  for (std::size_t r = 0; r < s.rows; ++r) {
    const double v = in[r * s.cols + c];
    if (std::isnan(v)) continue;
    sum += v;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
    ++n;
  }
  count = n;
  if (n < 2) {
    sd = kNaN;
    range = n == 1 ? 0.0 : kNaN;
    return;
  }
  const double mean = sum / static_cast<double>(n);
  double ss = 0.0;
  for (std::size_t r = 0; r < s.rows; ++r) {
    const double v = in[r * s.cols + c];
    if (!std::isnan(v)) ss += (v - mean) * (v - mean);
  }
  sd = std::sqrt(ss / static_cast<double>(n - 1));
  range = hi - lo;
}

void row_stat(std::size_t cols, const double* in, double& mean, double& sd, std::size_t& count) {
  double sum = 0.0;
  std::size_t n = 0;
  for (std::size_t c = 0; c < cols; ++c) {
    if (std::isnan(in[c])) continue;
    sum += in[c];
    ++n;
  }
  count = n;
  if (n < 2) {
    mean = n ? sum : kNaN;
    sd = kNaN;
    return;
  }
  mean = sum / static_cast<double>(n);
  double ss = 0.0;
  for (std::size_t c = 0; c < cols; ++c)
    if (!std::isnan(in[c])) ss += (in[c] - mean) * (in[c] - mean);
  sd = std::sqrt(ss / static_cast<double>(n - 1));
}

double pair_correlation(Shape s, const double* in, std::size_t a, std::size_t b,
                        CorrMethod method, std::size_t min_common) {
  if (a == b) {
    std::size_t n = 0;
    for (std::size_t c = 0; c < s.cols; ++c) n += !std::isnan(in[a * s.cols + c]);
    return n >= min_common ? 1.0 : kNaN;
  }
  std::vector<double> x, y;
  for (std::size_t c = 0; c < s.cols; ++c) {
    const double va = in[a * s.cols + c];
    const double vb = in[b * s.cols + c];
    if (std::isnan(va) || std::isnan(vb)) continue;
    x.push_back(va);
    y.push_back(vb);
  }
  if (x.size() < min_common) return kNaN;
  return method == CorrMethod::spearman ? spearman(x, y) : kendall_tau_b(x, y);
}

[[noreturn]] void throw_degenerate(std::size_t row) {
  throw DegenerateRowError("judge row " + std::to_string(row) +
                           " has fewer than two distinct scores");
}

}  // namespace detail

namespace serial {

void normalize_rows(Shape s, std::span<const double> in, std::span<double> out,
                    NormMethod method, bool lenient) {
  for (std::size_t r = 0; r < s.rows; ++r) {
    if (!detail::normalize_row(s.cols, in.data() + r * s.cols, out.data() + r * s.cols, method,
                               lenient))
      detail::throw_degenerate(r);
  }
}

void column_means(Shape s, std::span<const double> in, std::span<double> means,
                  std::span<std::size_t> counts) {
  for (std::size_t c = 0; c < s.cols; ++c) detail::column_mean(s, in.data(), c, means[c], counts[c]);
}

void column_spread(Shape s, std::span<const double> in, std::span<double> sd,
                   std::span<double> range, std::span<std::size_t> counts) {
  for (std::size_t c = 0; c < s.cols; ++c)
    detail::column_spread(s, in.data(), c, sd[c], range[c], counts[c]);
}

void row_stats(Shape s, std::span<const double> in, std::span<double> mean, std::span<double> sd,
               std::span<std::size_t> counts) {
  for (std::size_t r = 0; r < s.rows; ++r)
    detail::row_stat(s.cols, in.data() + r * s.cols, mean[r], sd[r], counts[r]);
}

void correlation_matrix(Shape s, std::span<const double> in, std::span<double> out,
                        CorrMethod method, std::size_t min_common) {
  for (std::size_t a = 0; a < s.rows; ++a) {
    for (std::size_t b = a; b < s.rows; ++b) {
      const double v = detail::pair_correlation(s, in.data(), a, b, method, min_common);
      out[a * s.rows + b] = v;
      out[b * s.rows + a] = v;
    }
  }
}

}  // namespace serial
}  // namespace dba::kernels
