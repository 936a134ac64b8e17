#pragma once

#include <string>
#include <utility>
#include <vector>

#include "wignerlab/rng.hpp"
#include "wignerlab/state.hpp"

namespace wignerlab {

// Named measurement basis kinds understood by scenarios and the DSL.
//   computational  product z basis on the targets, outcomes are digit strings
//   spin           single dim-2 target, eigenbasis of cos(t)Z + sin(t)X;
//                  |up_t> = cos(t/2)|0> + sin(t/2)|1>, outcomes "0"/"1"
//   bell           two dim-2 targets, outcomes PhiPlus/PhiMinus/PsiPlus/PsiMinus
//   ghz            m >= 2 dim-2 targets, rank-1 projectors onto
//                  (|0...0> +- |1...1>)/sqrt(2) labeled PhiPlus/PhiMinus plus a
//                  complementary Rest outcome; extends the Bell observable to a
//                  record that has spread over additional degrees of freedom
struct BasisSpec {
  enum class Kind { Computational, Spin, Bell, Ghz };

  Kind kind = Kind::Computational;
  double angle = 0.0;  // Spin only

  static BasisSpec computational() { return {Kind::Computational, 0.0}; }
  static BasisSpec spin(double angle) { return {Kind::Spin, angle}; }
  static BasisSpec bell() { return {Kind::Bell, 0.0}; }
  static BasisSpec ghz() { return {Kind::Ghz, 0.0}; }

  bool operator==(const BasisSpec&) const = default;
};

std::string to_string(const BasisSpec& spec);

// One outcome's projector over the target-group space. Structured forms keep
// large computational and ghz bases cheap; Dense carries an explicit matrix.
struct ProjectorOutcome {
  enum class Form { BasisKet, Kets, Complement, Dense };

  std::string label;
  Form form = Form::Dense;
  std::size_t index = 0;  // BasisKet: |index><index|
  Matrix kets;            // Kets: orthonormal columns spanning the outcome space
  Matrix dense;           // Dense: explicit projector matrix
};

// Complete set of orthogonal projectors over a target subsystem group.
class MeasurementBasis {
 public:
  // Custom basis from explicit projector matrices. Validates idempotence,
  // mutual orthogonality and completeness within kNormEpsilon.
  // Errors: BasisMismatch.
  static MeasurementBasis from_projectors(
      std::vector<std::string> targets,
      std::vector<std::pair<std::string, Matrix>> projectors);

  const std::vector<std::string>& targets() const { return targets_; }
  const std::vector<ProjectorOutcome>& outcomes() const { return outcomes_; }
  std::size_t group_dim() const { return group_dim_; }
  std::size_t outcome_index(const std::string& label) const;  // throws UnknownTarget
  bool has_outcome(const std::string& label) const;

  // True when every outcome is a single computational basis ket.
  bool computational_like() const;

  // Explicit projector matrix for one outcome, materialized on demand.
  Matrix dense_projector(std::size_t outcome) const;

 private:
  friend MeasurementBasis make_basis(const Register& reg,
                                     const std::vector<std::string>& targets,
                                     const BasisSpec& spec);

  std::vector<std::string> targets_;
  std::vector<ProjectorOutcome> outcomes_;
  std::size_t group_dim_ = 0;
};

// Builds a named basis for the given targets of the register.
// Errors: UnknownTarget, BasisMismatch (arity or dims unsuitable for the kind).
MeasurementBasis make_basis(const Register& reg, const std::vector<std::string>& targets,
                            const BasisSpec& spec);

using OutcomeDistribution = std::vector<std::pair<std::string, double>>;

// Born probabilities p_i = <psi|P_i|psi>, clamped to [0, 1].
// Errors: UnknownTarget.
OutcomeDistribution born_distribution(const PureState& state, const MeasurementBasis& basis);

// Collapsed state P_i|psi> / ||P_i|psi>|| for a chosen outcome.
// Errors: ZeroVector when the outcome has no support on the state.
PureState project_outcome(const PureState& state, const MeasurementBasis& basis,
                          std::size_t outcome);

// Samples one outcome by CDF inversion over born_distribution and returns the
// collapsed state. Deterministic given the stream.
std::pair<std::string, PureState> sample_outcome(const PureState& state,
                                                 const MeasurementBasis& basis,
                                                 RandomStream& rng);

// Index of the outcome drawn for uniform u in [0,1): CDF inversion with a
// fallback to the last outcome of nonzero probability.
std::size_t outcome_index_for_draw(const OutcomeDistribution& dist, double u);

}  // namespace wignerlab
