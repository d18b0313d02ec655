#pragma once

#include <vector>

namespace acka {

struct ChiSquareResult {
  double statistic = 0.0;
  int dof = 0;
  double p_value = 1.0;
};

/// Upper-tail p-value of the chi-square distribution.
double chi_square_p_value(double statistic, int dof);

/// Goodness of fit against the uniform distribution over the cells.
ChiSquareResult chi_square_uniform(const std::vector<long>& counts);

/// Homogeneity test across groups (rows) over shared cells (columns).
/// Columns with zero pooled count are dropped from the degrees of freedom.
ChiSquareResult chi_square_homogeneity(const std::vector<std::vector<long>>& table);

/// Plug-in mutual information (bits) between row and column of a joint count
/// table, with the Miller-Madow bias correction, clamped at zero.
double mutual_information_bits(const std::vector<std::vector<long>>& joint_counts);

/// Total variation distance between two empirical distributions given as counts.
double total_variation(const std::vector<long>& a, const std::vector<long>& b);

/// Standard deviation of a Binomial(n, p) count.
double binomial_sigma(long n, double p);

}  // namespace acka
