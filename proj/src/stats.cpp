#include "acka/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <boost/math/distributions/chi_squared.hpp>

#include "acka/errors.hpp"

namespace acka {

double chi_square_p_value(double statistic, int dof) {
  if (dof <= 0) return 1.0;
  const boost::math::chi_squared dist(static_cast<double>(dof));
  return boost::math::cdf(boost::math::complement(dist, std::max(statistic, 0.0)));
}

ChiSquareResult chi_square_uniform(const std::vector<long>& counts) {
  const long total = std::accumulate(counts.begin(), counts.end(), 0L);
  if (counts.size() < 2 || total == 0) return {0.0, 0, 1.0};
  const double expected = static_cast<double>(total) / static_cast<double>(counts.size());
  double stat = 0.0;
  for (long c : counts) {
    const double d = static_cast<double>(c) - expected;
    stat += d * d / expected;
  }
  const int dof = static_cast<int>(counts.size()) - 1;
  return {stat, dof, chi_square_p_value(stat, dof)};
}

ChiSquareResult chi_square_homogeneity(const std::vector<std::vector<long>>& table) {
  const std::size_t rows = table.size();
  if (rows < 2) return {0.0, 0, 1.0};
  const std::size_t cols = table.front().size();
  for (const auto& row : table)
    if (row.size() != cols) throw ShapeError("homogeneity: ragged table");

  std::vector<long> row_totals(rows, 0), col_totals(cols, 0);
  long total = 0;
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      row_totals[r] += table[r][c];
      col_totals[c] += table[r][c];
      total += table[r][c];
    }
  }
  if (total == 0) return {0.0, 0, 1.0};

  double stat = 0.0;
  std::size_t occupied_cols = 0;
  for (std::size_t c = 0; c < cols; ++c) {
    if (col_totals[c] == 0) continue;
    ++occupied_cols;
    for (std::size_t r = 0; r < rows; ++r) {
      const double expected = static_cast<double>(row_totals[r]) *
                              static_cast<double>(col_totals[c]) / static_cast<double>(total);
      if (expected <= 0.0) continue;
      const double d = static_cast<double>(table[r][c]) - expected;
      stat += d * d / expected;
    }
  }
  if (occupied_cols < 2) return {0.0, 0, 1.0};
  const int dof = static_cast<int>((rows - 1) * (occupied_cols - 1));
  return {stat, dof, chi_square_p_value(stat, dof)};
}

double mutual_information_bits(const std::vector<std::vector<long>>& joint_counts) {
  const std::size_t rows = joint_counts.size();
  if (rows == 0) return 0.0;
  const std::size_t cols = joint_counts.front().size();

  std::vector<double> row_p(rows, 0.0), col_p(cols, 0.0);
  double total = 0.0;
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) total += static_cast<double>(joint_counts[r][c]);
  if (total <= 0.0) return 0.0;

  long nonzero_joint = 0, nonzero_rows = 0, nonzero_cols = 0;
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) {
      const double p = static_cast<double>(joint_counts[r][c]) / total;
      row_p[r] += p;
      col_p[c] += p;
      if (p > 0.0) ++nonzero_joint;
    }
  for (double p : row_p)
    if (p > 0.0) ++nonzero_rows;
  for (double p : col_p)
    if (p > 0.0) ++nonzero_cols;

  double mi = 0.0;
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      const double p = static_cast<double>(joint_counts[r][c]) / total;
      if (p <= 0.0) continue;
      mi += p * std::log2(p / (row_p[r] * col_p[c]));
    }
  }
  // Miller-Madow correction of the plug-in estimate.
  const double bias = static_cast<double>(nonzero_joint - nonzero_rows - nonzero_cols + 1) /
                      (2.0 * total * std::log(2.0));
  return std::max(0.0, mi - bias);
}

double total_variation(const std::vector<long>& a, const std::vector<long>& b) {
  if (a.size() != b.size()) throw ShapeError("total variation: size mismatch");
  const double ta = static_cast<double>(std::accumulate(a.begin(), a.end(), 0L));
  const double tb = static_cast<double>(std::accumulate(b.begin(), b.end(), 0L));
  if (ta <= 0.0 || tb <= 0.0) return 0.0;
  double tv = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    tv += std::abs(static_cast<double>(a[i]) / ta - static_cast<double>(b[i]) / tb);
  return 0.5 * tv;
}

double binomial_sigma(long n, double p) {
  return std::sqrt(static_cast<double>(n) * p * (1.0 - p));
}

}  // namespace acka
