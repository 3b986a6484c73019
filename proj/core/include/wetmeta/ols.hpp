#pragma once

#include <Eigen/Dense>

#include <string>
#include <vector>

#include "wetmeta/design.hpp"

namespace wetmeta {

/// A fitted least-squares model with the usual inference statistics.
struct RegressionFit {
  std::vector<std::string> column_labels;
  Eigen::VectorXd coefficients;  // intercept first
  Eigen::VectorXd std_errors;
  Eigen::VectorXd t_values;
  Eigen::VectorXd p_values;  // two-sided
  double r2 = 0.0;
  double adj_r2 = 0.0;
  double f_stat = 0.0;     // NaN when the model has no regressors
  double f_p_value = 0.0;
  int df_residual = 0;     // n - k - 1
  double sigma2 = 0.0;     // residual variance, SSR / df_residual
  Eigen::VectorXd residuals;
  Eigen::Index n = 0;

  Eigen::Index k() const { return coefficients.size() - 1; }
};

/// Column-pivoted QR fit. Throws InsufficientObservations when n <= k + 1
/// and RankDeficient (naming the dependent columns and their supports) when
/// a pivot falls below 1e-10 times the largest pivot.
RegressionFit fit_ols(const DesignMatrix& design);

/// 1 - (1 - r2) (n - 1) / (n - k - 1).
double adjusted_r_squared(double r2, int n, int k);

/// (r2 / k) / ((1 - r2) / (n - k - 1)).
double f_statistic(double r2, int n, int k);

/// P(|T_df| >= |t|) via the regularized incomplete beta function.
double t_p_value_two_sided(double t, int df);

/// Upper tail of the F(df1, df2) distribution.
double f_p_value(double f, int df1, int df2);

/// "***", "**", "*" for the 1, 5 and 10% levels; empty otherwise.
std::string significance_stars(double p);

/// I_x(a, b), evaluated by continued fraction with the symmetry switch at
/// x = (a + 1) / (a + b + 2); absolute accuracy well below 1e-10.
double regularized_incomplete_beta(double a, double b, double x);

}  // namespace wetmeta
