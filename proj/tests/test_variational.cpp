#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>

#include "support.hpp"
#include "vnd/errors.hpp"
#include "vnd/variational.hpp"

using namespace vnd;

namespace {

// inf_x J(x) for commuting p, q: x = diag(u) with u_i = min(1, S a_i / (t p_i)),
// a_i = sqrt(p_i q_i) and S = sum_j a_j (1 - u_j), found by bisection.
double diagonal_oracle(const std::vector<double>& p, const std::vector<double>& q, double t) {
  std::vector<double> a(p.size());
  double total = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) total += a[i] = std::sqrt(p[i] * q[i]);
  auto u_of = [&](double s, std::size_t i) { return p[i] > 0.0 ? std::min(1.0, s * a[i] / (t * p[i])) : 0.0; };
  auto excess = [&](double s) {
    double rhs = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) rhs += a[i] * (1.0 - u_of(s, i));
    return s - rhs;
  };
  double lo = 0.0, hi = total;
  for (int k = 0; k < 200; ++k) {
    double mid = 0.5 * (lo + hi);
    (excess(mid) > 0.0 ? hi : lo) = mid;
  }
  double s = 0.5 * (lo + hi), j = s * s / t;
  for (std::size_t i = 0; i < p.size(); ++i) j += p[i] * u_of(s, i) * u_of(s, i);
  return j;
}

double phi_from_values(const QuadratureGrid& grid, const std::vector<double>& g, double s) {
  double alpha = (1.0 - s) / s;
  double c = std::sin(std::numbers::pi * alpha) / std::numbers::pi;
  return s / (s - 1.0) * std::log(c * integrate(grid, g).value);
}

State from_list(const std::vector<double>& p) {
  RealVector v(static_cast<Index>(p.size()));
  for (std::size_t i = 0; i < p.size(); ++i) v(static_cast<Index>(i)) = p[i];
  return State(HermitianMatrix::diagonal(v));
}

}  // namespace

TEST_CASE("kosaki minimizer attains the closed form value") {
  Rng rng(21);
  State rho = random_mixed_state(3, rng), sigma = random_mixed_state(3, rng);
  for (double t : {1e-3, 0.5, 1.0, 40.0}) {
    KosakiNode n = kosaki_per_t_minimizer(rho, sigma, t);
    CHECK(kosaki_objective(rho, sigma, n.x, t) == doctest::Approx(n.value).epsilon(1e-12));
    for (int k = 0; k < 5; ++k) {
      ComplexMatrix dx = 1e-3 * ginibre(3, 3, rng);
      CHECK(kosaki_objective(rho, sigma, n.x + dx, t) >= n.value - 1e-14);
    }
  }
}

TEST_CASE("kosaki entropy matches umegaki with a bracket") {
  for (int seed = 0; seed < 10; ++seed) {
    Rng rng(static_cast<std::uint64_t>(300 + seed));
    Index d = 2 + seed % 3;
    State rho = random_mixed_state(d, rng), sigma = random_mixed_state(d, rng);
    DivergenceResult k = kosaki_entropy(rho, sigma);
    double u = relative_entropy(rho, sigma).value;
    CHECK(std::abs(k.value - u) <= 1e-4);
    CHECK(k.lower <= u + 1e-9);
    CHECK(k.upper >= u - 1e-9);
  }
}

TEST_CASE("kosaki entropy lowers the cutoff for small eigenvalues") {
  State rho = vt::diag_state({0.5, 0.5}), sigma = vt::diag_state({1.0 - 1e-7, 1e-7});
  DivergenceResult k = kosaki_entropy(rho, sigma);
  CHECK(k.diagnostics.at("t_min_used") < 1e-6);
  CHECK(k.value == doctest::Approx(relative_entropy(rho, sigma).value).epsilon(1e-6));
}

TEST_CASE("per-t minimizer matches the diagonal oracle") {
  std::vector<double> p = {0.9, 0.1}, q = {0.1, 0.9};
  State rho = from_list(p), sigma = from_list(q);
  for (double t : {1e-4, 1e-2, 0.3, 1.0, 7.0, 1e3}) {
    PhiNode n = phi_per_t_minimizer(rho, sigma, t);
    double oracle = diagonal_oracle(p, q, t);
    CHECK(n.value == doctest::Approx(oracle).epsilon(1e-8));
    CHECK(n.dual_lower <= oracle * (1.0 + 1e-9));
    CHECK(phi_objective(rho, sigma, n.x, t) == doctest::Approx(n.value).epsilon(1e-8));
  }
}

TEST_CASE("generalized fidelity of diagonal pairs against frozen oracle values") {
  struct Case {
    std::vector<double> p, q;
    double expected[3];
  };
  const Case cases[] = {{{0.9, 0.1}, {0.1, 0.9}, {1.3325340174, 1.6559600186, 1.8354775182}},
                        {{0.5, 0.5}, {0.6, 0.4}, {0.0146886914, 0.0233906319, 0.0334757371}}};
  const double orders[] = {0.6, 0.75, 0.9};
  for (const auto& c : cases) {
    std::vector<DivergenceResult> r =
        generalized_fidelity(from_list(c.p), from_list(c.q), std::vector<double>(orders, orders + 3));
    for (int k = 0; k < 3; ++k) {
      CHECK(std::abs(r[k].value - c.expected[k]) <= 1e-8);
      CHECK(r[k].diagnostics.at("dual_upper") >= r[k].value - 1e-12);
      CHECK(r[k].diagnostics.at("dual_upper") - r[k].value <= 1e-6);
    }
  }
}

TEST_CASE("generalized fidelity integrates the oracle path") {
  std::vector<double> p = {0.2, 0.3, 0.5}, q = {0.6, 0.3, 0.1};
  GridOptions opts;
  opts.n_points = 512;
  double s = 0.75;
  QuadratureGrid grid = build_grid((1.0 - s) / s, opts);
  std::vector<double> g;
  for (double t : grid.nodes) g.push_back(diagonal_oracle(p, q, t));
  DivergenceResult r = generalized_fidelity(from_list(p), from_list(q), s, opts);
  CHECK(r.value == doctest::Approx(phi_from_values(grid, g, s)).epsilon(1e-8));
}

TEST_CASE("generalized fidelity vanishes on equal states") {
  Rng rng(4);
  State rho = random_mixed_state(3, rng);
  DivergenceResult r = generalized_fidelity(rho, rho, 0.75);
  CHECK(std::abs(r.value) <= 1e-8);
}

TEST_CASE("scaling the reference state shifts by its log") {
  Rng rng(6);
  State rho = random_mixed_state(2, rng), sigma = random_mixed_state(2, rng);
  State sigma2(HermitianMatrix::symmetrized(2.0 * sigma.density()));
  double a = generalized_fidelity(rho, sigma, 0.75).value;
  double b = generalized_fidelity(rho, sigma2, 0.75).value;
  CHECK(b == doctest::Approx(a - std::log(2.0)).epsilon(1e-6));
}

TEST_CASE("pure state per-t value") {
  Rng rng(9);
  ComplexVector phi = random_pure_vector(3, rng);
  State rho = State::from_vector(phi), sigma = random_mixed_state(3, rng);
  for (double t : {0.05, 1.0, 20.0}) {
    ComplexMatrix resolvent = (sigma.density() + t * ComplexMatrix::Identity(3, 3)).inverse();
    double expected = (phi.adjoint() * sigma.density() * resolvent * phi)(0, 0).real();
    CHECK(phi_per_t_minimizer(rho, sigma, t).value == doctest::Approx(expected).epsilon(1e-8));
  }
}

TEST_CASE("order is clamped into the open interval") {
  CHECK(clamp_order(0.5001) == doctest::Approx(0.501));
  CHECK(clamp_order(0.9999) == doctest::Approx(0.999));
  CHECK_THROWS_AS(clamp_order(0.3), InvalidInput);
  CHECK_THROWS_AS(clamp_order(1.0), InvalidInput);
  CHECK(clamp_order(0.7) == doctest::Approx(0.7));
}

TEST_CASE("property: bracketing on random pairs") {
  PhiSolverOptions solver;
  solver.certify = false;
  for (int seed = 0; seed < 6; ++seed) {
    Rng rng(static_cast<std::uint64_t>(500 + seed));
    Index d = 2 + seed % 2;
    State rho = random_mixed_state(d, rng), sigma = random_mixed_state(d, rng);
    std::vector<double> orders = {0.6, 0.75, 0.9};
    std::vector<DivergenceResult> r = generalized_fidelity(rho, sigma, orders, GridOptions{}, solver);
    for (std::size_t k = 0; k < orders.size(); ++k) {
      double f = r[k].diagnostics.at("fidelity");
      CHECK(r[k].value <= r[k].upper);
      CHECK(r[k].value >= -std::log(f * f) - 0.05);
      CHECK(r[k].diagnostics.at("sandwiched_renyi") <= r[k].upper + 1e-9);
    }
  }
}
