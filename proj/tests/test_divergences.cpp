#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>

#include "support.hpp"
#include "vnd/divergences.hpp"
#include "vnd/errors.hpp"

using namespace vnd;

TEST_CASE("relative entropy of diagonal states") {
  State rho = vt::diag_state({0.5, 0.5}), sigma = vt::diag_state({0.25, 0.75});
  double expected = 0.5 * std::log(2.0) + 0.5 * std::log(2.0 / 3.0);
  CHECK(relative_entropy(rho, sigma).value == doctest::Approx(expected).epsilon(1e-13));
  CHECK(relative_entropy(vt::diag_state({0.5, 0.5}), vt::diag_state({1.0 / 3.0, 2.0 / 3.0})).value ==
        doctest::Approx(0.058891517828191797).epsilon(1e-12));
}

TEST_CASE("relative entropy against the maximally mixed state") {
  State rho = vt::diag_state({0.75, 0.25});
  double entropy = -(0.75 * std::log(0.75) + 0.25 * std::log(0.25));
  CHECK(relative_entropy(rho, State::maximally_mixed(2)).value == doctest::Approx(std::log(2.0) - entropy));
  CHECK(relative_entropy(vt::diag_state({0.5, 0.5}), vt::diag_state({2.0 / 3.0, 1.0 / 3.0})).value ==
        doctest::Approx(0.5 * std::log(9.0 / 8.0)));
}

TEST_CASE("support leak gives infinite relative entropy") {
  State rho = vt::diag_state({0.5, 0.5}), sigma = vt::diag_state({1.0, 0.0});
  CHECK(relative_entropy(rho, sigma).infinite());
  CHECK(relative_entropy(sigma, rho).value == doctest::Approx(std::log(2.0)));
  CHECK(sandwiched_renyi(rho, sigma, 1.5).infinite());
  CHECK(sandwiched_renyi(rho, sigma, 0.75).value == doctest::Approx(0.75 / (0.75 - 1.0) * std::log(0.5)));
}

TEST_CASE("fidelity of a pure state with the maximally mixed qubit") {
  ComplexVector v(2);
  v << 1, 0;
  CHECK(fidelity(State::from_vector(v), State::maximally_mixed(2)).value == doctest::Approx(std::sqrt(0.5)));
  CHECK(fidelity(State::maximally_mixed(3), State::maximally_mixed(3)).value == doctest::Approx(1.0));
  CHECK(fidelity(vt::diag_state({1.0, 0.0}), vt::diag_state({0.0, 1.0})).value == doctest::Approx(0.0));
}

TEST_CASE("sandwiched renyi of a bell state against its pinching") {
  State bell = State::from_vector(vt::bell(2));
  State pinched = vt::diag_state({0.5, 0.0, 0.0, 0.5});
  for (double s : {0.6, 0.75, 0.9, 1.5, 2.0})
    CHECK(sandwiched_renyi(bell, pinched, s).value == doctest::Approx(std::log(2.0)).epsilon(1e-10));
}

TEST_CASE("sandwiched renyi near one half approaches minus log fidelity squared") {
  Rng rng(11);
  State rho = random_mixed_state(3, rng), sigma = random_mixed_state(3, rng);
  double f = fidelity(rho, sigma).value;
  CHECK(sandwiched_renyi(rho, sigma, 0.5000001).value == doctest::Approx(-std::log(f * f)).epsilon(1e-5));
  CHECK(sandwiched_renyi(rho, sigma, 0.99999).value ==
        doctest::Approx(relative_entropy(rho, sigma).value).epsilon(1e-3));
}

TEST_CASE("sandwiched renyi rejects orders below one half") {
  CHECK_THROWS_AS(sandwiched_renyi(State::maximally_mixed(2), State::maximally_mixed(2), 0.3), InvalidInput);
  CHECK_THROWS_AS(sandwiched_renyi(State::maximally_mixed(2), State::maximally_mixed(2), 1.0), InvalidInput);
}

TEST_CASE("relative modular operator recovers minus the relative entropy") {
  Rng rng(5);
  State psi = random_mixed_state(3, rng), zeta = random_mixed_state(3, rng);
  RelativeModularOperator delta = relative_modular_operator(psi, zeta);
  ComplexMatrix x = matrix_power(zeta.hermitian(), 0.5).matrix();
  CHECK(delta.log_expectation(x) == doctest::Approx(-relative_entropy(zeta, psi).value).epsilon(1e-10));
  ComplexMatrix y = ginibre(3, 3, rng);
  ComplexMatrix expected = psi.density() * y * matrix_power(zeta.hermitian(), -1.0).matrix();
  CHECK((delta.apply(y) - expected).norm() < 1e-10);
  Eigen::Map<const ComplexVector> vy(y.data(), y.size());
  ComplexVector sy = delta.superoperator() * vy;
  CHECK((Eigen::Map<const ComplexMatrix>(sy.data(), 3, 3) - expected).norm() < 1e-10);
}

TEST_CASE("lp norm oracle matches the sandwiched renyi divergence") {
  Rng rng(8);
  State zeta = random_mixed_state(3, rng), psi = random_mixed_state(3, rng);
  for (double s : {0.6, 0.75}) {
    double norm = lp_norm_oracle(zeta, psi, 2.0 * s);
    CHECK(std::log(norm) / (s - 1.0) == doctest::Approx(sandwiched_renyi(zeta, psi, s).value).epsilon(1e-12));
  }
  CHECK_THROWS_AS(lp_norm_oracle(zeta, vt::diag_state({1.0, 0.0, 0.0}), 1.5), Unsupported);
}

TEST_CASE("property: monotonicity and ordering on random pairs") {
  for (int seed = 0; seed < 30; ++seed) {
    Rng rng(static_cast<std::uint64_t>(100 + seed));
    Index d = 2 + seed % 3;
    State rho = random_mixed_state(d, rng), sigma = random_mixed_state(d, rng);
    double s_rel = relative_entropy(rho, sigma).value;
    double prev = -kInf;
    for (double s : {0.51, 0.6, 0.75, 0.9, 0.99}) {
      double ds = sandwiched_renyi(rho, sigma, s).value;
      CHECK(ds >= prev - 1e-12);
      CHECK(ds <= s_rel + 1e-12);
      prev = ds;
    }
    CHECK(sandwiched_renyi(rho, sigma, 1.5).value >= s_rel - 1e-12);
    double f = fidelity(rho, sigma).value;
    CHECK(f <= 1.0 + 1e-12);
    CHECK(-std::log(f * f) <= s_rel + 1e-12);
    CHECK(relative_entropy(rho, rho).value == doctest::Approx(0.0).epsilon(1e-12));
  }
}
