#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "ffd/discovery.hpp"
#include "ffd/errors.hpp"

namespace ffd {

LinearFit linear_fit(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) {
    throw LengthMismatch("x has " + std::to_string(x.size()) + " values, y " +
                         std::to_string(y.size()));
  }
  if (x.size() < 2) throw DegenerateInput("linear fit needs at least 2 points");
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  if (sxx == 0.0) throw DegenerateInput("x is constant");
  LinearFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.pearson_r = syy == 0.0 ? 0.0 : std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
  return fit;
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

// Wichura's AS241 (PPND16), accurate to about 1e-16.
double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) throw OutOfRange("normal quantile needs p in (0, 1)");
  auto poly = [](const double* c, double r) {
    double v = c[7];
    for (int i = 6; i >= 0; --i) v = v * r + c[i];
    return v;
  };
  static constexpr double a[8] = {
      3.3871328727963666080e0,  1.3314166789178437745e+2, 1.9715909503065514427e+3,
      1.3731693765509461125e+4, 4.5921953931549871457e+4, 6.7265770927008700853e+4,
      3.3430575583588128105e+4, 2.5090809287301226727e+3};
  static constexpr double b[8] = {
      1.0,                      4.2313330701600911252e+1, 6.8718700749205790830e+2,
      5.3941960214247511077e+3, 2.1213794301586595867e+4, 3.9307895800092710610e+4,
      2.8729085735721942674e+4, 5.2264952788528545610e+3};
  static constexpr double c[8] = {
      1.42343711074968357734e0, 4.63033784615654529590e0, 5.76949722146069140550e0,
      3.64784832476320460504e0, 1.27045825245236838258e0, 2.41780725177450611770e-1,
      2.27238449892691845833e-2, 7.74545014278341407640e-4};
  static constexpr double d[8] = {
      1.0,                       2.05319162663775882187e0,  1.67638483018380384940e0,
      6.89767334985100004550e-1, 1.48103976427480074590e-1, 1.51986665636164571966e-2,
      5.47593808499534494600e-4, 1.05075007164441684324e-9};
  static constexpr double e[8] = {
      6.65790464350110377720e0,  5.46378491116411436990e0,  1.78482653991729133580e0,
      2.96560571828504891230e-1, 2.65321895265761230930e-2, 1.24266094738807843860e-3,
      2.71155556874348757815e-5, 2.01033439929228813265e-7};
  static constexpr double f[8] = {
      1.0,                       5.99832206555887937690e-1, 1.36929880922735805310e-1,
      1.48753612908506148525e-2, 7.86869131145613259100e-4, 1.84631831751005468180e-5,
      1.42151175831644588870e-7, 2.04426310338993978564e-15};

  const double q = p - 0.5;
  if (std::abs(q) <= 0.425) {
    const double r = 0.180625 - q * q;
    return q * poly(a, r) / poly(b, r);
  }
  double r = std::sqrt(-std::log(q < 0.0 ? p : 1.0 - p));
  double v;
  if (r <= 5.0) {
    r -= 1.6;
    v = poly(c, r) / poly(d, r);
  } else {
    r -= 5.0;
    v = poly(e, r) / poly(f, r);
  }
  return q < 0.0 ? -v : v;
}

QQData qq_points(std::span<const double> sample) {
  if (sample.size() < 2) throw EmptyInput("Q-Q data needs at least 2 values");
  std::vector<double> sorted(sample.begin(), sample.end());
  for (double v : sorted) {
    if (!std::isfinite(v)) throw DegenerateInput("Q-Q sample holds a non-finite value");
  }
  std::sort(sorted.begin(), sorted.end());
  QQData out;
  out.pairs.reserve(sorted.size());
  const double n = static_cast<double>(sorted.size());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double p = (static_cast<double>(i + 1) - 0.5) / n;
    out.pairs.emplace_back(normal_quantile(p), sorted[i]);
  }
  return out;
}

double bayes_posterior(double p_b_given_a, double p_a, double p_b) {
  auto in_unit = [](double v) { return v >= 0.0 && v <= 1.0; };
  if (!in_unit(p_b_given_a) || !in_unit(p_a) || !in_unit(p_b)) {
    throw InvalidProbability("inputs must lie in [0, 1]");
  }
  if (p_b <= 0.0) throw InvalidProbability("P(B) must be positive");
  const double joint = p_b_given_a * p_a;
  // Allow rounding noise at the boundary joint == P(B).
  if (joint > p_b * (1.0 + 1e-12)) {
    throw InvalidProbability("P(B|A)P(A) exceeds P(B); the posterior would exceed 1");
  }
  return std::min(joint / p_b, 1.0);
}

ScatterTable scatter_export(std::span<const Value> x, std::span<const Value> y,
                            std::optional<std::span<const Value>> group) {
  if (x.size() != y.size() || (group && group->size() != x.size())) {
    throw LengthMismatch("scatter columns differ in length");
  }
  ScatterTable table;
  if (group) table.group_name = "group";
  for (std::size_t i = 0; i < x.size(); ++i) {
    const auto xv = as_number(x[i]);
    const auto yv = as_number(y[i]);
    if (!xv || !yv || (group && is_missing((*group)[i]))) {
      ++table.dropped;
      continue;
    }
    table.rows.push_back({*xv, *yv, group ? (*group)[i] : Value{}});
  }
  return table;
}

namespace {
std::string value_cell(const Value& v) {
  if (const auto d = as_number(v)) return format_number(*d);
  if (const auto* t = as_text(v)) return csv_escape(*t);
  return "";
}
}  // namespace

std::string scatter_csv(const ScatterTable& table) {
  std::string out = csv_escape(table.x_name) + "," + csv_escape(table.y_name);
  if (table.group_name) out += "," + csv_escape(*table.group_name);
  out += '\n';
  for (const ScatterRow& r : table.rows) {
    out += format_number(r.x) + "," + format_number(r.y);
    if (table.group_name) out += "," + value_cell(r.group);
    out += '\n';
  }
  return out;
}

std::string qq_csv(const QQData& qq) {
  std::string out = "theoretical_quantile,sample_value\n";
  for (const auto& [t, s] : qq.pairs) out += format_number(t) + "," + format_number(s) + "\n";
  return out;
}

}  // namespace ffd
