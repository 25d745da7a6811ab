#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "vnd/algebra.hpp"
#include "vnd/divergences.hpp"
#include "vnd/quadrature.hpp"

namespace vnd {

// Completely positive map given by Kraus operators K (out x in):
// Schrodinger picture rho -> sum K rho K*, Heisenberg picture m -> sum K* m K.
class Channel {
 public:
  Channel() = default;
  explicit Channel(std::vector<ComplexMatrix> kraus, bool require_trace_preserving = true);

  static Channel identity(Index d);
  static Channel pinching(Index d);
  // rho -> Tr(rho) 1/d.
  static Channel completely_depolarizing(Index d);
  // Heisenberg map given as a function on M_d; Kraus operators from the Choi matrix.
  static Channel from_heisenberg(const std::function<ComplexMatrix(const ComplexMatrix&)>& map, Index d);

  Index in_dim() const { return in_dim_; }
  Index out_dim() const { return out_dim_; }
  const std::vector<ComplexMatrix>& kraus() const { return kraus_; }
  // ||sum K*K - 1||_max
  double trace_defect() const { return trace_defect_; }

  ComplexMatrix schrodinger(const ComplexMatrix& rho) const;
  ComplexMatrix heisenberg(const ComplexMatrix& m) const;
  // sum_ij |i><j| (x) T(|i><j|) for the Schrodinger map.
  ComplexMatrix choi() const;

 private:
  Index in_dim_ = 0;
  Index out_dim_ = 0;
  std::vector<ComplexMatrix> kraus_;
  double trace_defect_ = 0.0;
};

// Haar isometry C^in -> C^out (x) C^kraus_count cut into Kraus blocks.
Channel random_channel(Index in_dim, Index out_dim, Index kraus_count, std::uint64_t seed);

State apply_schrodinger(const Channel& channel, const State& state);
// second after first.
Channel compose(const Channel& second, const Channel& first);

// Unital CP projection of `source` onto `subalgebra`.
struct ConditionalExpectation {
  Channel base;
  MatrixAlgebra source;
  MatrixAlgebra subalgebra;
  double bimodule_defect = 0.0;
  double idempotency_defect = 0.0;
  double range_defect = 0.0;

  ComplexMatrix apply(const ComplexMatrix& m) const { return base.heisenberg(m); }
};

// Validates the range (1e-8), the bimodule property (1e-8) and idempotency (1e-10).
ConditionalExpectation make_conditional_expectation(Channel base, MatrixAlgebra source,
                                                    MatrixAlgebra subalgebra);

// Hilbert-Schmidt projection from `from` onto its subalgebra `to`.
ConditionalExpectation trace_conditional_expectation(const MatrixAlgebra& from, const MatrixAlgebra& to);

// E(m) = |G|^{-1} sum_g U_g m U_g*.  The representation has to be closed
// under products and inverses up to phases.
ConditionalExpectation group_average_expectation(const std::vector<ComplexMatrix>& rep,
                                                 const MatrixAlgebra& ambient);

// Density of the restriction of the state through E (Schrodinger dual).
State restrict_state(const State& state, const ConditionalExpectation& e);

struct IndexResult {
  double index = 0.0;
  bool finite = true;
  double min_eig_at_index = 0.0;   // of Choi(lambda E - id)
  double min_eig_below = 0.0;      // at lambda (1 - 1e-6)
  double sampler_min_residual = 0.0;
  int bisection_steps = 0;
  // The index is computed as the complete-positivity constant and assumed
  // equal to the positivity constant; the sampler only probes positivity.
  bool cp_constant_assumed = true;
  std::vector<std::pair<double, double>> history;
};

// Smallest lambda in [1, d^2] with lambda E - id completely positive on M_d.
IndexResult pimsner_popa_index(const ConditionalExpectation& e, std::uint64_t sampler_seed = 2024,
                               int sampler_count = 100);

enum class DivergenceKind { RelativeEntropy, SandwichedRenyi, Fidelity, GeneralizedFidelity };

struct DivergenceSpec {
  DivergenceKind kind = DivergenceKind::RelativeEntropy;
  double s = 0.0;

  // "relative_entropy", "sandwiched_renyi:0.6", "fidelity", "generalized_fidelity:0.75"
  static DivergenceSpec parse(const std::string& text);
  std::string name() const;
  bool hard() const { return kind != DivergenceKind::GeneralizedFidelity; }
  // Fidelity grows under channels, the others shrink.
  bool increasing() const { return kind == DivergenceKind::Fidelity; }
};

double evaluate_divergence(const DivergenceSpec& spec, const State& rho, const State& sigma,
                           const GridOptions& grid = {});

struct DpiOptions {
  int samples = 200;
  std::uint64_t seed = 1;
  bool identity_only = false;
  double hard_tol = 1e-9;
  double soft_tol = 0.05;
  GridOptions grid;
};

struct DpiRow {
  int sample = 0;
  Index in_dim = 0;
  Index out_dim = 0;
  double pre = 0.0;
  double post = 0.0;
  double violation = 0.0;  // amount by which the monotonicity fails (<= 0 if it holds)
};

struct DpiReport {
  DivergenceSpec spec;
  std::vector<DpiRow> rows;
  int hard_violations = 0;
  int soft_violations = 0;
  double max_violation = -kInf;

  bool passed() const { return hard_violations == 0; }
};

// Random qubit/qutrit pairs pushed through random channels; sample i uses
// seed + i.
DpiReport dpi_harness(const DivergenceSpec& spec, const DpiOptions& opts);

}  // namespace vnd
