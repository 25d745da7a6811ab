#pragma once

#include <vector>

namespace vnd {

// Log-uniform nodes on [t_min, t_max] with weights for
// int_{t_min}^{t_max} g(t) t^{alpha-1} dt.  In u = log t the rule is the
// trapezoid rule with Gregory end corrections (exact for cubics).
struct QuadratureGrid {
  double alpha = 0.0;
  double t_min = 0.0;
  double t_max = 0.0;
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t size() const { return nodes.size(); }
  double step() const;
};

struct GridOptions {
  double t_min = 1e-6;
  double t_max = 1e6;
  int n_points = 2048;
};

struct QuadratureResult {
  double value = 0.0;
  double interior = 0.0;
  double lower_tail = 0.0;
  double upper_tail = 0.0;
  double error_estimate = 0.0;
};

QuadratureGrid build_grid(double alpha, double t_min, double t_max, int n_points);
QuadratureGrid build_grid(double alpha, const GridOptions& opts);

double pairwise_sum(const std::vector<double>& v);

// Interior integral plus the tails [0, t_min] (model g0 + g1 t, needs
// alpha > 0) and [t_max, inf) (model C/t + D/t^2).  error_estimate combines
// a Richardson estimate with the spread of the tail models.
QuadratureResult integrate(const QuadratureGrid& grid, const std::vector<double>& values,
                           bool lower_tail = true, bool upper_tail = true);

// Tail integrals used by integrate(), exposed for the Kosaki evaluator.
double upper_tail_model(const QuadratureGrid& grid, const std::vector<double>& values);
double lower_tail_model(const QuadratureGrid& grid, const std::vector<double>& values);

// int_0^inf lambda/(t+lambda) t^{alpha-1} dt on the grid, to be compared
// with pi/sin(pi alpha) lambda^alpha.
QuadratureResult self_test_integral(double lambda, const QuadratureGrid& grid);

}  // namespace vnd
