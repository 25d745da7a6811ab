#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>

#include "support.hpp"
#include "vnd/channels.hpp"
#include "vnd/errors.hpp"

using namespace vnd;

namespace {

ComplexMatrix partial_trace_second(const ComplexMatrix& m, Index da, Index db) {
  ComplexMatrix out = ComplexMatrix::Zero(da, da);
  for (Index i = 0; i < da; ++i)
    for (Index j = 0; j < da; ++j)
      for (Index k = 0; k < db; ++k) out(i, j) += m(i * db + k, j * db + k);
  return out;
}

MatrixAlgebra left_factor(Index n) { return MatrixAlgebra::tensor(MatrixAlgebra::full(n), MatrixAlgebra::scalars(n)); }

}  // namespace

TEST_CASE("kraus validation") {
  CHECK_THROWS_AS(Channel({0.5 * ComplexMatrix::Identity(2, 2)}), InvalidInput);
  Channel sub({0.5 * ComplexMatrix::Identity(2, 2)}, false);
  CHECK(sub.trace_defect() == doctest::Approx(0.75));
}

TEST_CASE("pinching and depolarizing act as expected") {
  ComplexMatrix rho(2, 2);
  rho << 0.7, cplx(0.1, 0.2), cplx(0.1, -0.2), 0.3;
  ComplexMatrix p = Channel::pinching(2).schrodinger(rho);
  CHECK(std::abs(p(0, 1)) < 1e-15);
  CHECK(p(0, 0).real() == doctest::Approx(0.7));
  ComplexMatrix dep = Channel::completely_depolarizing(2).schrodinger(rho);
  CHECK((dep - 0.5 * ComplexMatrix::Identity(2, 2)).norm() < 1e-14);
  CHECK((Channel::identity(2).schrodinger(rho) - rho).norm() < 1e-15);
}

TEST_CASE("heisenberg map is the trace dual") {
  Channel ch = random_channel(2, 3, 2, 17);
  Rng rng(17);
  State rho = random_mixed_state(2, rng);
  ComplexMatrix m = ginibre(3, 3, rng);
  cplx lhs = trace_product(ch.schrodinger(rho.density()), m);
  cplx rhs = trace_product(rho.density(), ch.heisenberg(m));
  CHECK(std::abs(lhs - rhs) < 1e-12);
  CHECK(ch.trace_defect() < 1e-12);
}

TEST_CASE("choi matrix of a random channel is positive with the right trace") {
  Channel ch = random_channel(3, 2, 3, 5);
  ComplexMatrix c = ch.choi();
  CHECK(c.rows() == 6);
  CHECK(eig_hermitian(HermitianMatrix::symmetrized(c)).min() > -1e-12);
  CHECK(c.trace().real() == doctest::Approx(3.0));
}

TEST_CASE("channel from a heisenberg map reproduces it") {
  Channel ref = random_channel(2, 2, 3, 23);
  Channel rebuilt = Channel::from_heisenberg([&ref](const ComplexMatrix& m) { return ref.heisenberg(m); }, 2);
  Rng rng(23);
  ComplexMatrix m = ginibre(2, 2, rng);
  CHECK((rebuilt.heisenberg(m) - ref.heisenberg(m)).norm() < 1e-12);
}

TEST_CASE("composition applies the first channel first") {
  Channel a = random_channel(2, 3, 2, 1), b = random_channel(3, 2, 2, 2);
  Rng rng(3);
  State rho = random_mixed_state(2, rng);
  ComplexMatrix direct = b.schrodinger(a.schrodinger(rho.density()));
  CHECK((compose(b, a).schrodinger(rho.density()) - direct).norm() < 1e-12);
}

TEST_CASE("trace conditional expectation onto a tensor factor is the normalized partial trace") {
  ConditionalExpectation e = trace_conditional_expectation(MatrixAlgebra::full(4), left_factor(2));
  Rng rng(12);
  ComplexMatrix m = ginibre(4, 4, rng);
  ComplexMatrix expected = kron(partial_trace_second(m, 2, 2) / 2.0, ComplexMatrix::Identity(2, 2));
  CHECK((e.apply(m) - expected).norm() < 1e-12);
  CHECK(e.bimodule_defect < 1e-12);
  CHECK(e.idempotency_defect < 1e-12);
}

TEST_CASE("restricting a bell state to one factor gives the maximally mixed state") {
  ConditionalExpectation e = trace_conditional_expectation(MatrixAlgebra::full(4), left_factor(2));
  State r = restrict_state(State::from_vector(vt::bell(2)), e);
  CHECK((r.density() - 0.25 * ComplexMatrix::Identity(4, 4)).norm() < 1e-12);
}

TEST_CASE("a map that does not land in the subalgebra is rejected") {
  CHECK_THROWS_AS(make_conditional_expectation(Channel::identity(2), MatrixAlgebra::full(2), MatrixAlgebra::diagonal(2)),
                  InvalidInput);
  CHECK_THROWS_AS(trace_conditional_expectation(MatrixAlgebra::diagonal(2), MatrixAlgebra::full(2)), NotSubalgebra);
}

TEST_CASE("index of pinchings, traces and the identity") {
  for (Index n : {2, 3, 4}) {
    ConditionalExpectation pin = trace_conditional_expectation(MatrixAlgebra::full(n), MatrixAlgebra::diagonal(n));
    CHECK(std::abs(pimsner_popa_index(pin).index - static_cast<double>(n)) <= 1e-9);
    ConditionalExpectation tr = trace_conditional_expectation(MatrixAlgebra::full(n), MatrixAlgebra::scalars(n));
    CHECK(std::abs(pimsner_popa_index(tr).index - static_cast<double>(n * n)) <= 1e-6);
  }
  ConditionalExpectation id = trace_conditional_expectation(MatrixAlgebra::full(3), MatrixAlgebra::full(3));
  IndexResult r = pimsner_popa_index(id);
  CHECK(r.index == doctest::Approx(1.0));
  CHECK(r.bisection_steps == 0);
}

TEST_CASE("index certificate and sampler") {
  ConditionalExpectation pin = trace_conditional_expectation(MatrixAlgebra::full(3), MatrixAlgebra::diagonal(3));
  IndexResult r = pimsner_popa_index(pin);
  CHECK(r.min_eig_at_index >= -1e-12);
  CHECK(r.min_eig_below < 0.0);
  CHECK(r.sampler_min_residual >= -1e-10);
  CHECK(r.finite);
}

TEST_CASE("group average over the clock group is the pinching") {
  std::vector<ComplexMatrix> rep;
  ComplexMatrix z = ComplexMatrix::Zero(3, 3);
  for (Index j = 0; j < 3; ++j) z(j, j) = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(j) / 3.0);
  rep = {ComplexMatrix::Identity(3, 3), z, z * z};
  ConditionalExpectation g = group_average_expectation(rep, MatrixAlgebra::full(3));
  ConditionalExpectation pin = trace_conditional_expectation(MatrixAlgebra::full(3), MatrixAlgebra::diagonal(3));
  Rng rng(31);
  ComplexMatrix m = ginibre(3, 3, rng);
  CHECK((g.apply(m) - pin.apply(m)).norm() < 1e-12);
  CHECK(g.subalgebra.dim() == 3);
  CHECK(pimsner_popa_index(g).index == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("group average rejects non-groups") {
  ComplexMatrix id = ComplexMatrix::Identity(2, 2);
  CHECK_THROWS_AS(group_average_expectation({id, vt::pauli_x(), vt::pauli_z()}, MatrixAlgebra::full(2)), NotAGroup);
  CHECK_THROWS_AS(group_average_expectation({id, 2.0 * vt::pauli_x()}, MatrixAlgebra::full(2)), NotAGroup);
  CHECK_THROWS_AS(group_average_expectation({}, MatrixAlgebra::full(2)), NotAGroup);
  ComplexMatrix ix = cplx(0, 1) * vt::pauli_x();
  CHECK_NOTHROW(group_average_expectation({id, ix}, MatrixAlgebra::full(2)));
}

TEST_CASE("divergence spec parsing") {
  CHECK(DivergenceSpec::parse("relative_entropy").kind == DivergenceKind::RelativeEntropy);
  DivergenceSpec r = DivergenceSpec::parse("sandwiched_renyi:0.6");
  CHECK(r.kind == DivergenceKind::SandwichedRenyi);
  CHECK(r.s == doctest::Approx(0.6));
  CHECK(DivergenceSpec::parse("fidelity").increasing());
  CHECK_FALSE(DivergenceSpec::parse("generalized_fidelity:0.75").hard());
  CHECK_THROWS_AS(DivergenceSpec::parse("trace_distance"), InvalidInput);
  CHECK_THROWS_AS(DivergenceSpec::parse("sandwiched_renyi:abc"), InvalidInput);
}

TEST_CASE("dpi harness with identity channels gives equalities") {
  DpiOptions opts;
  opts.samples = 12;
  opts.identity_only = true;
  for (const char* name : {"relative_entropy", "fidelity", "sandwiched_renyi:0.6"}) {
    DpiReport rep = dpi_harness(DivergenceSpec::parse(name), opts);
    CHECK(rep.rows.size() == 12);
    for (const auto& row : rep.rows) CHECK(std::abs(row.post - row.pre) <= 1e-12);
  }
}

TEST_CASE("property: data processing on random channels") {
  DpiOptions opts;
  opts.samples = 40;
  opts.seed = 99;
  for (const char* name : {"relative_entropy", "fidelity", "sandwiched_renyi:0.6", "sandwiched_renyi:0.9",
                           "sandwiched_renyi:2"}) {
    DpiReport rep = dpi_harness(DivergenceSpec::parse(name), opts);
    CHECK(rep.hard_violations == 0);
    CHECK(rep.max_violation <= 1e-9);
  }
}
