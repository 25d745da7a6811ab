#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"
#include "vnd/errors.hpp"
#include "vnd/inclusions.hpp"

using namespace vnd;

namespace {

ComplexVector product00(Index n) {
  ComplexVector psi = ComplexVector::Zero(n * n);
  psi(0) = 1.0;
  return psi;
}

}  // namespace

TEST_CASE("named groups have the expected orders") {
  CHECK(named_group("trivial", 3).size() == 1);
  CHECK(named_group("Z2_pauli", 2).size() == 2);
  CHECK(named_group("Zn_clock", 3).size() == 3);
  CHECK(named_group("pauli_group", 2).size() == 4);
  CHECK(named_group("pauli_group", 3).size() == 9);
  CHECK_THROWS_AS(named_group("Z2_pauli", 3), InvalidInput);
  CHECK_THROWS_AS(named_group("SU2", 2), InvalidInput);
}

TEST_CASE("orbifold scenario structure") {
  InclusionScenario scn = build_orbifold_inclusion(2, "Z2_pauli", vt::bell(2));
  CHECK(scn.M.dim() == 4);
  CHECK(scn.N.dim() == 2);
  CHECK(scn.M_prime.dim() == 4);
  CHECK(scn.N_prime.dim() == 8);
  CHECK(scn.N_prime.contains(scn.M_prime));
  CHECK(std::abs(scn.index.index - 2.0) <= 1e-9);
  CHECK(scn.log_index() == doctest::Approx(std::log(2.0)));
}

TEST_CASE("index equals the group order") {
  CHECK(std::abs(build_orbifold_inclusion(3, "Zn_clock", vt::bell(3)).index.index - 3.0) <= 1e-9);
  CHECK(std::abs(build_orbifold_inclusion(2, "pauli_group", vt::bell(2)).index.index - 4.0) <= 1e-9);
  CHECK(std::abs(build_orbifold_inclusion(2, "trivial", vt::bell(2)).index.index - 1.0) <= 1e-12);
}

TEST_CASE("ambient index of the doubled inclusion matches the site index for n = 2") {
  InclusionScenario scn = build_orbifold_inclusion(2, "Z2_pauli", vt::bell(2));
  CHECK(std::abs(pimsner_popa_index(scn.E).index - scn.index.index) <= 1e-9);
}

TEST_CASE("certainty relation on the bell state") {
  InclusionScenario scn = build_orbifold_inclusion(2, "Z2_pauli", vt::bell(2));
  CertaintyResult c = certainty_relation(scn);
  CHECK(c.s_M == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(c.s_N_prime == doctest::Approx(std::log(2.0)).epsilon(1e-12));
  CHECK(std::abs(c.deviation()) <= 1e-9);
}

TEST_CASE("certainty relation on the product state") {
  InclusionScenario scn = build_orbifold_inclusion(2, "Z2_pauli", product00(2));
  CertaintyResult c = certainty_relation(scn);
  CHECK(c.s_M == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(c.s_N_prime == doctest::Approx(std::log(2.0)).epsilon(1e-12));
}

TEST_CASE("fidelity bound is saturated by the product state") {
  InclusionScenario scn = build_orbifold_inclusion(2, "Z2_pauli", product00(2));
  FidelityCertaintyResult f = fidelity_certainty(scn);
  CHECK(f.f_M == doctest::Approx(1.0));
  CHECK(f.f_N_prime == doctest::Approx(std::sqrt(0.5)));
  CHECK(std::abs(f.product - f.bound) <= 1e-9);
}

TEST_CASE("phi index bound on the bell state") {
  InclusionScenario scn = build_orbifold_inclusion(2, "Z2_pauli", vt::bell(2));
  PhiIndexBound b = phi_index_bound(scn, 0.75);
  CHECK(b.lower <= b.log_index + 1e-6);
  CHECK(b.upper >= b.lower);
}

TEST_CASE("bell orbifold experiment saturates at log of the group order") {
  std::vector<BellOrbifoldRow> rows = bell_orbifold_experiment(2, "Z2_pauli", {0.6, 0.9});
  REQUIRE(rows.size() == 2);
  for (const auto& r : rows) {
    CHECK(std::abs(r.sandwiched_renyi - std::log(2.0)) <= 1e-9);
    CHECK(std::abs(r.fidelity - std::sqrt(0.5)) <= 1e-9);
    CHECK(r.phi_hat >= std::log(2.0) - 0.05);
    CHECK(r.phi_hat <= std::log(2.0) + 1e-6);
  }
  BellOrbifoldOptions product;
  product.product_state = true;
  for (const auto& r : bell_orbifold_experiment(2, "Z2_pauli", {0.75}, product)) {
    CHECK(std::abs(r.sandwiched_renyi) <= 1e-9);
    CHECK(std::abs(r.fidelity - 1.0) <= 1e-9);
  }
}

TEST_CASE("bad scenario input") {
  CHECK_THROWS_AS(build_orbifold_inclusion(2, "Z2_pauli", ComplexVector::Zero(4)), InvalidInput);
  CHECK_THROWS_AS(build_orbifold_inclusion(2, "Z2_pauli", ComplexVector::Ones(3)), InvalidInput);
}

TEST_CASE("property: certainty relations on random pure states") {
  for (const auto& [n, group] : std::vector<std::pair<Index, std::string>>{{2, "Z2_pauli"}, {3, "Zn_clock"}}) {
    InclusionScenario scn = build_orbifold_inclusion(n, group, vt::bell(n));
    for (int seed = 0; seed < 10; ++seed) {
      Rng rng(static_cast<std::uint64_t>(seed));
      scn.psi = random_pure_vector(n * n, rng);
      CHECK(std::abs(certainty_relation(scn).deviation()) <= 1e-6);
      CHECK(renyi_certainty(scn, 0.75).deviation() <= 1e-9);
      FidelityCertaintyResult f = fidelity_certainty(scn);
      CHECK(f.product >= f.bound - 1e-9);
    }
  }
}
