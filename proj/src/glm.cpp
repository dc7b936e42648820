#include <Eigen/Dense>
#include <cmath>
#include <cstdio>
#include <limits>

#include "ffd/discovery.hpp"
#include "ffd/errors.hpp"

namespace ffd {
namespace {

constexpr double kMuEpsilon = std::numeric_limits<double>::epsilon();

double inverse_logit(double eta) {
  const double mu = 1.0 / (1.0 + std::exp(-eta));
  return std::clamp(mu, kMuEpsilon, 1.0 - kMuEpsilon);
}

double binomial_deviance(const Eigen::VectorXd& y, const Eigen::VectorXd& mu) {
  double dev = 0.0;
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    dev -= 2.0 * (y[i] > 0.5 ? std::log(mu[i]) : std::log(1.0 - mu[i]));
  }
  return dev;
}

// Columns that are linear combinations of the columns before them.
std::vector<Eigen::Index> dependent_columns(const Eigen::MatrixXd& x) {
  std::vector<Eigen::Index> out;
  Eigen::Index rank = 0;
  for (Eigen::Index j = 1; j <= x.cols(); ++j) {
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(x.leftCols(j));
    qr.setThreshold(1e-10);
    const Eigen::Index r = qr.rank();
    if (r == rank) out.push_back(j - 1);
    rank = r;
  }
  return out;
}

Eigen::MatrixXd design_matrix(const std::vector<BitColumn>& features, std::size_t n) {
  Eigen::MatrixXd x(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(features.size() + 1));
  x.col(0).setOnes();
  for (std::size_t j = 0; j < features.size(); ++j) {
    const BitColumn& f = features[j];
    if (f.values.size() != n) {
      throw LengthMismatch("feature '" + f.name + "' has " + std::to_string(f.values.size()) +
                           " rows, expected " + std::to_string(n));
    }
    for (std::size_t i = 0; i < n; ++i) {
      x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j + 1)) = f.values[i] ? 1.0 : 0.0;
    }
  }
  return x;
}

}  // namespace

GlmReport logistic_glm(const std::vector<BitColumn>& features,
                       std::span<const std::uint8_t> outcome) {
  if (features.empty()) throw EmptyInput("logistic GLM needs at least one feature");
  const std::size_t n = outcome.size();
  if (n == 0) throw EmptyInput("logistic GLM of zero rows");
  const auto p = static_cast<Eigen::Index>(features.size() + 1);

  std::vector<std::string> names{"(Intercept)"};
  for (const BitColumn& f : features) names.push_back(f.name);
  const Eigen::MatrixXd x = design_matrix(features, n);
  Eigen::VectorXd y(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    if (outcome[i] > 1) throw ContractError("outcome must contain only 0/1");
    y[static_cast<Eigen::Index>(i)] = outcome[i];
  }
  if (const auto bad = dependent_columns(x); !bad.empty()) {
    std::string list;
    for (auto j : bad) list += (list.empty() ? "" : ", ") + names[static_cast<std::size_t>(j)];
    throw SingularDesign("columns collinear with earlier columns: " + list);
  }

  // Same start as the usual binomial initialisation: mu = (y + 0.5) / 2.
  Eigen::VectorXd mu = (y.array() + 0.5) / 2.0;
  Eigen::VectorXd eta = (mu.array() / (1.0 - mu.array())).log();
  Eigen::VectorXd beta = Eigen::VectorXd::Zero(p);
  Eigen::MatrixXd info(p, p);
  double deviance = binomial_deviance(y, mu);

  GlmReport report;
  for (int iter = 1; iter <= kGlmMaxIterations; ++iter) {
    const Eigen::VectorXd w = mu.array() * (1.0 - mu.array());
    const Eigen::VectorXd z = eta.array() + (y - mu).array() / w.array();
    info = x.transpose() * w.asDiagonal() * x;
    const Eigen::VectorXd rhs = x.transpose() * (w.array() * z.array()).matrix();
    Eigen::LDLT<Eigen::MatrixXd> ldlt(info);
    if (ldlt.info() != Eigen::Success) throw SingularDesign("weighted normal system");
    beta = ldlt.solve(rhs);
    eta = x * beta;
    for (Eigen::Index i = 0; i < eta.size(); ++i) mu[i] = inverse_logit(eta[i]);
    const double next = binomial_deviance(y, mu);
    report.iterations = iter;
    const bool done = std::abs(next - deviance) / (std::abs(next) + 0.1) < kGlmTolerance;
    deviance = next;
    if (done) {
      report.converged = true;
      break;
    }
  }
  report.deviance = deviance;

  // Wald statistics from the information matrix of the final IRLS step.
  const Eigen::MatrixXd cov = info.ldlt().solve(Eigen::MatrixXd::Identity(p, p));
  for (Eigen::Index j = 0; j < p; ++j) {
    GlmCoefficient c;
    c.name = names[static_cast<std::size_t>(j)];
    c.estimate = beta[j];
    c.std_error = std::sqrt(std::max(cov(j, j), 0.0));
    c.z_value = c.std_error > 0.0 ? c.estimate / c.std_error : 0.0;
    c.p_value = std::clamp(std::erfc(std::abs(c.z_value) / std::sqrt(2.0)), 0.0, 1.0);
    if (std::abs(c.estimate) > kSeparationBound) report.separation_flag = true;
    report.coefficients.push_back(std::move(c));
  }
  return report;
}

std::vector<std::size_t> collinear_features(const std::vector<BitColumn>& features) {
  if (features.empty()) return {};
  std::vector<std::size_t> out;
  for (Eigen::Index j : dependent_columns(design_matrix(features, features[0].values.size()))) {
    if (j > 0) out.push_back(static_cast<std::size_t>(j - 1));
  }
  return out;
}

std::string format_glm_report(const GlmReport& report) {
  std::size_t width = 11;
  for (const auto& c : report.coefficients) width = std::max(width, c.name.size());
  std::string out;
  char buf[256];
  std::snprintf(buf, sizeof buf, "%-*s %12s %12s %9s %9s\n", static_cast<int>(width), "",
                "Estimate", "Std. Error", "z value", "Pr(>|z|)");
  out += buf;
  for (const auto& c : report.coefficients) {
    std::snprintf(buf, sizeof buf, "%-*s %12.5f %12.5f %9.3f %9.4f\n", static_cast<int>(width),
                  c.name.c_str(), c.estimate, c.std_error, c.z_value, c.p_value);
    out += buf;
  }
  std::snprintf(buf, sizeof buf, "deviance %.5f, %d iterations%s%s\n", report.deviance,
                report.iterations, report.converged ? "" : ", not converged",
                report.separation_flag ? ", separation suspected (|estimate| > 15)" : "");
  out += buf;
  return out;
}

}  // namespace ffd
