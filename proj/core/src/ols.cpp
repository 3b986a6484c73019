#include "wetmeta/ols.hpp"

#include <fmt/format.h>

#include <cmath>
#include <limits>

#include "wetmeta/errors.hpp"

namespace wetmeta {

namespace {

constexpr double kRankTolerance = 1e-10;  // relative to the largest pivot

// Continued-fraction kernel for the incomplete beta function (modified
// Lentz), converged to 1e-12 with a 300-iteration cap.
double beta_continued_fraction(double a, double b, double x) {
  constexpr int kMaxIterations = 300;
  constexpr double kEps = 1e-12;
  constexpr double kTiny = 1e-300;

  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < kTiny) {
    d = kTiny;
  }
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIterations; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) {
      d = kTiny;
    }
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) {
      c = kTiny;
    }
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) {
      d = kTiny;
    }
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) {
      c = kTiny;
    }
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < kEps) {
      break;
    }
  }
  return h;
}

// Names the columns pivoted out by the QR factorization plus the pivot
// columns that span them, so a duplicate-column design reports both labels.
[[noreturn]] void throw_rank_deficient(const Eigen::ColPivHouseholderQR<Eigen::MatrixXd>& qr,
                                       const std::vector<std::string>& labels) {
  const Eigen::Index p = qr.cols();
  const Eigen::Index rank = qr.rank();
  const auto permutation = qr.colsPermutation().indices();
  const Eigen::MatrixXd r_matrix =
      qr.matrixR().topLeftCorner(p, p).triangularView<Eigen::Upper>();

  std::vector<bool> involved(static_cast<std::size_t>(p), false);
  for (Eigen::Index j = rank; j < p; ++j) {
    involved[static_cast<std::size_t>(permutation(j))] = true;
    if (rank == 0) {
      continue;
    }
    // Express the rejected column in the pivot basis: solve R z = Q^T x_j.
    const Eigen::VectorXd rhs = r_matrix.col(j).head(rank);
    const Eigen::VectorXd coeffs = r_matrix.topLeftCorner(rank, rank)
                                       .triangularView<Eigen::Upper>()
                                       .solve(rhs);
    const double scale = coeffs.cwiseAbs().maxCoeff();
    for (Eigen::Index i = 0; i < rank; ++i) {
      if (std::abs(coeffs(i)) > 1e-8 * std::max(1.0, scale)) {
        involved[static_cast<std::size_t>(permutation(i))] = true;
      }
    }
  }
  std::vector<std::string> names;
  for (std::size_t i = 0; i < involved.size(); ++i) {
    if (involved[i]) {
      names.push_back(labels[i]);
    }
  }
  throw RankDeficient(std::move(names));
}

}  // namespace

double regularized_incomplete_beta(double a, double b, double x) {
  if (!(a > 0.0) || !(b > 0.0)) {
    throw InvalidDf(fmt::format("incomplete beta parameters must be positive (a={}, b={})", a, b));
  }
  if (std::isnan(x)) {
    return std::numeric_limits<double>::quiet_NaN();
  }
  if (x <= 0.0) {
    return 0.0;
  }
  if (x >= 1.0) {
    return 1.0;
  }
  const double ln_front = a * std::log(x) + b * std::log1p(-x) + std::lgamma(a + b) -
                          std::lgamma(a) - std::lgamma(b);
  const double front = std::exp(ln_front);
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return front * beta_continued_fraction(a, b, x) / a;
  }
  return 1.0 - front * beta_continued_fraction(b, a, 1.0 - x) / b;
}

double t_p_value_two_sided(double t, int df) {
  if (df < 1) {
    throw InvalidDf(fmt::format("t distribution needs df >= 1, got {}", df));
  }
  if (std::isnan(t)) {
    return std::numeric_limits<double>::quiet_NaN();
  }
  if (t == 0.0) {
    return 1.0;
  }
  if (std::isinf(t)) {
    return 0.0;
  }
  const double x = df / (df + t * t);
  return regularized_incomplete_beta(0.5 * df, 0.5, x);
}

double f_p_value(double f, int df1, int df2) {
  if (df1 < 1 || df2 < 1) {
    throw InvalidDf(fmt::format("F distribution needs df >= 1, got ({}, {})", df1, df2));
  }
  if (std::isnan(f)) {
    return std::numeric_limits<double>::quiet_NaN();
  }
  if (f <= 0.0) {
    return 1.0;
  }
  if (std::isinf(f)) {
    return 0.0;
  }
  const double x = df2 / (df2 + df1 * f);
  return regularized_incomplete_beta(0.5 * df2, 0.5 * df1, x);
}

double adjusted_r_squared(double r2, int n, int k) {
  if (k < 0 || n <= k + 1) {
    throw InvalidDf(fmt::format("adjusted R^2 needs n > k + 1, got n={}, k={}", n, k));
  }
  if (!(r2 >= 0.0) || !(r2 <= 1.0)) {
    throw InvalidDf(fmt::format("R^2 must lie in [0, 1], got {}", r2));
  }
  return 1.0 - (1.0 - r2) * (n - 1) / static_cast<double>(n - k - 1);
}

double f_statistic(double r2, int n, int k) {
  if (k < 1 || n <= k + 1) {
    throw InvalidDf(fmt::format("F statistic needs k >= 1 and n > k + 1, got n={}, k={}", n, k));
  }
  if (!(r2 >= 0.0) || !(r2 < 1.0)) {
    throw InvalidDf(fmt::format("R^2 must lie in [0, 1), got {}", r2));
  }
  return (r2 / k) / ((1.0 - r2) / (n - k - 1));
}

std::string significance_stars(double p) {
  if (p < 0.01) {
    return "***";
  }
  if (p < 0.05) {
    return "**";
  }
  if (p < 0.10) {
    return "*";
  }
  return "";
}

RegressionFit fit_ols(const DesignMatrix& design) {
  const Eigen::Index n = design.n();
  const Eigen::Index p = design.X.cols();
  if (n <= p) {
    throw InsufficientObservations(static_cast<std::size_t>(n),
                                   static_cast<std::size_t>(p - 1));
  }

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design.X);
  qr.setThreshold(kRankTolerance);
  if (qr.rank() < p) {
    throw_rank_deficient(qr, design.column_labels);
  }

  RegressionFit fit;
  fit.column_labels = design.column_labels;
  fit.n = n;
  fit.coefficients = qr.solve(design.y);
  fit.residuals = design.y - design.X * fit.coefficients;
  fit.df_residual = static_cast<int>(n - p);

  const double ssr = fit.residuals.squaredNorm();
  const double mean_y = design.y.mean();
  const double sst = (design.y.array() - mean_y).matrix().squaredNorm();
  if (sst > 0.0) {
    fit.r2 = 1.0 - ssr / sst;
  } else {
    // Constant response: an exact fit counts as 1, anything else as 0.
    fit.r2 = ssr <= 1e-12 * std::max(1.0, design.y.squaredNorm()) ? 1.0 : 0.0;
  }
  fit.adj_r2 = 1.0 - (1.0 - fit.r2) * static_cast<double>(n - 1) / fit.df_residual;
  fit.sigma2 = ssr / fit.df_residual;

  // (X^T X)^{-1} from the factorization: X P = Q R.
  const Eigen::MatrixXd r_inverse = qr.matrixR()
                                        .topLeftCorner(p, p)
                                        .triangularView<Eigen::Upper>()
                                        .solve(Eigen::MatrixXd::Identity(p, p));
  const Eigen::MatrixXd pivoted_cov = r_inverse * r_inverse.transpose();
  const auto& permutation = qr.colsPermutation();
  const Eigen::MatrixXd xtx_inverse = permutation * pivoted_cov * permutation.transpose();

  fit.std_errors = (fit.sigma2 * xtx_inverse.diagonal()).cwiseMax(0.0).cwiseSqrt();
  fit.t_values.resize(p);
  fit.p_values.resize(p);
  for (Eigen::Index i = 0; i < p; ++i) {
    fit.t_values(i) = fit.coefficients(i) / fit.std_errors(i);
    fit.p_values(i) = t_p_value_two_sided(fit.t_values(i), fit.df_residual);
  }

  if (p > 1) {
    const double ssm = sst - ssr;
    fit.f_stat = ssr > 0.0 ? (ssm / static_cast<double>(p - 1)) / (ssr / fit.df_residual)
                           : std::numeric_limits<double>::infinity();
    fit.f_p_value = f_p_value(fit.f_stat, static_cast<int>(p - 1), fit.df_residual);
  } else {
    fit.f_stat = std::numeric_limits<double>::quiet_NaN();
    fit.f_p_value = std::numeric_limits<double>::quiet_NaN();
  }
  return fit;
}

}  // namespace wetmeta
