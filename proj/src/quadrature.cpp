#include "vnd/quadrature.hpp"

#include <cmath>
#include <sstream>

#include "vnd/errors.hpp"

namespace vnd {

namespace {

constexpr double kGregory[3] = {3.0 / 8.0, 7.0 / 6.0, 23.0 / 24.0};

// Gregory weights (in units of h) for m nodes, m >= 6.
std::vector<double> gregory_weights(std::size_t m) {
  std::vector<double> w(m, 1.0);
  for (std::size_t k = 0; k < 3; ++k) {
    w[k] = kGregory[k];
    w[m - 1 - k] = kGregory[k];
  }
  return w;
}

// Gregory rule on nodes 0, stride, 2 stride, ..., up to node `last`.
double gregory(const QuadratureGrid& g, const std::vector<double>& f, std::size_t stride,
               std::size_t last) {
  std::size_t m = last / stride + 1;
  std::vector<double> w = gregory_weights(m);
  double h = g.step() * static_cast<double>(stride);
  std::vector<double> terms(m);
  for (std::size_t k = 0; k < m; ++k) {
    double t = g.nodes[k * stride];
    terms[k] = w[k] * h * std::pow(t, g.alpha) * f[k * stride];
  }
  return pairwise_sum(terms);
}

double pairwise_range(const double* v, std::size_t n) {
  if (n <= 8) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += v[i];
    return s;
  }
  std::size_t half = n / 2;
  return pairwise_range(v, half) + pairwise_range(v + half, n - half);
}

double upper_tail_from(const QuadratureGrid& g, const std::vector<double>& f, std::size_t i1,
                       std::size_t i2) {
  // g(t) ~ C/t + D/t^2 through (t1, f1), (t2, f2).
  double t1 = g.nodes[i1], t2 = g.nodes[i2];
  double a = f[i1] * t1, b = f[i2] * t2;  // C + D/t
  double d = (a - b) / (1.0 / t1 - 1.0 / t2);
  double c = a - d / t1;
  double T = g.nodes.back();
  double al = g.alpha;
  return c * std::pow(T, al - 1.0) / (1.0 - al) + d * std::pow(T, al - 2.0) / (2.0 - al);
}

double lower_tail_from(const QuadratureGrid& g, const std::vector<double>& f, std::size_t i1,
                       std::size_t i2) {
  double t1 = g.nodes[i1], t2 = g.nodes[i2];
  double g1 = (f[i2] - f[i1]) / (t2 - t1);
  double g0 = f[i1] - g1 * t1;
  double t0 = g.nodes.front();
  double al = g.alpha;
  return g0 * std::pow(t0, al) / al + g1 * std::pow(t0, al + 1.0) / (al + 1.0);
}

}  // namespace

double QuadratureGrid::step() const {
  return std::log(t_max / t_min) / static_cast<double>(nodes.size() - 1);
}

double pairwise_sum(const std::vector<double>& v) { return pairwise_range(v.data(), v.size()); }

QuadratureGrid build_grid(double alpha, double t_min, double t_max, int n_points) {
  if (!(alpha >= 0.0 && alpha < 1.0)) {
    std::ostringstream os;
    os << "build_grid: alpha = " << alpha << " outside [0,1)";
    throw InvalidInput(os.str());
  }
  if (!(t_min > 0.0) || !(t_max > t_min) || !std::isfinite(t_max))
    throw InvalidInput("build_grid: need 0 < t_min < t_max < inf");
  if (n_points < 16) throw InvalidInput("build_grid: need at least 16 nodes");
  QuadratureGrid g;
  g.alpha = alpha;
  g.t_min = t_min;
  g.t_max = t_max;
  const std::size_t n = static_cast<std::size_t>(n_points);
  double lo = std::log(t_min), hi = std::log(t_max);
  double h = (hi - lo) / static_cast<double>(n - 1);
  std::vector<double> w = gregory_weights(n);
  g.nodes.resize(n);
  g.weights.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    double u = (k + 1 == n) ? hi : lo + h * static_cast<double>(k);
    g.nodes[k] = std::exp(u);
    g.weights[k] = w[k] * h * std::pow(g.nodes[k], alpha);
  }
  g.nodes.front() = t_min;
  g.nodes.back() = t_max;
  return g;
}

QuadratureGrid build_grid(double alpha, const GridOptions& opts) {
  return build_grid(alpha, opts.t_min, opts.t_max, opts.n_points);
}

double upper_tail_model(const QuadratureGrid& grid, const std::vector<double>& values) {
  std::size_t n = grid.size();
  return upper_tail_from(grid, values, n - 2, n - 1);
}

double lower_tail_model(const QuadratureGrid& grid, const std::vector<double>& values) {
  return lower_tail_from(grid, values, 0, 1);
}

QuadratureResult integrate(const QuadratureGrid& grid, const std::vector<double>& values,
                           bool lower_tail, bool upper_tail) {
  if (values.size() != grid.size()) throw InvalidInput("integrate: value count does not match grid");
  const std::size_t n = grid.size();
  QuadratureResult r;
  std::vector<double> terms(n);
  for (std::size_t k = 0; k < n; ++k) terms[k] = grid.weights[k] * values[k];
  r.interior = pairwise_sum(terms);

  std::size_t last = (n - 1) % 2 == 0 ? n - 1 : n - 2;
  double fine = gregory(grid, values, 1, last);
  double coarse = gregory(grid, values, 2, last);
  r.error_estimate = std::abs(fine - coarse) / 15.0;

  if (lower_tail) {
    if (grid.alpha <= 0.0) throw InvalidInput("integrate: lower tail needs alpha > 0");
    r.lower_tail = lower_tail_from(grid, values, 0, 1);
    r.error_estimate += std::abs(r.lower_tail - lower_tail_from(grid, values, 0, 2));
  }
  if (upper_tail) {
    r.upper_tail = upper_tail_from(grid, values, n - 2, n - 1);
    r.error_estimate += std::abs(r.upper_tail - upper_tail_from(grid, values, n - 3, n - 1));
  }
  r.value = r.interior + r.lower_tail + r.upper_tail;
  return r;
}

QuadratureResult self_test_integral(double lambda, const QuadratureGrid& grid) {
  std::vector<double> f(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) f[k] = lambda / (grid.nodes[k] + lambda);
  return integrate(grid, f);
}

}  // namespace vnd
