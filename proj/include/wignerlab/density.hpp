#pragma once

#include <string>
#include <vector>

#include "wignerlab/basis.hpp"
#include "wignerlab/state.hpp"

namespace wignerlab {

// How a density operator came to be. The distinction carries interpretive
// weight: a ProperFromEnsemble operator stands for ignorance over an actual
// pure state, an ImproperFromTrace operator is the restriction of a larger
// entangled state and licenses no such reading, even when the matrices agree.
// The tag is set at construction and never mutated; matrix-level operations
// must not silently merge provenances.
enum class ProvenanceKind { Pure, ProperFromEnsemble, ImproperFromTrace };

struct Provenance {
  ProvenanceKind kind = ProvenanceKind::Pure;
  std::string detail;                          // free-form parent description
  std::vector<std::string> discarded_labels;   // ImproperFromTrace only

  static Provenance pure() { return {ProvenanceKind::Pure, "", {}}; }
  static Provenance proper(std::string detail) {
    return {ProvenanceKind::ProperFromEnsemble, std::move(detail), {}};
  }
  static Provenance improper(std::string parent, std::vector<std::string> discarded) {
    return {ProvenanceKind::ImproperFromTrace, std::move(parent), std::move(discarded)};
  }

  bool operator==(const Provenance&) const = default;
};

const char* to_string(ProvenanceKind kind);

// Hermitian, positive-semidefinite, unit-trace matrix over a register.
class DensityOperator {
 public:
  // Validates Hermiticity and unit trace within kNormEpsilon, and
  // positive-semidefiniteness (eigenvalues >= -kNormEpsilon) up to a
  // dimension where the eigensolve stays cheap.
  // Errors: LengthMismatch, NotHermitian, ProbabilitySumInvalid.
  static DensityOperator from_matrix(const Register& reg, const Matrix& matrix,
                                     Provenance provenance);

  const Register& reg() const { return reg_; }
  const Matrix& matrix() const { return m_; }
  const Provenance& provenance() const { return prov_; }
  std::size_t dim() const { return static_cast<std::size_t>(m_.rows()); }

  double purity() const;  // Tr(rho^2)

 private:
  Register reg_;
  Matrix m_;
  Provenance prov_;
};

// Probability-weighted pure states on a shared register.
class Ensemble {
 public:
  struct Entry {
    double probability;
    PureState state;
    std::string tag;  // branch identifier (record assignments), may be empty
  };

  // Errors: ProbabilitySumInvalid (weights negative or not summing to 1
  // within kNormEpsilon), RegisterMismatch.
  static Ensemble from_entries(std::vector<Entry> entries);

  const std::vector<Entry>& entries() const { return entries_; }
  const Register& reg() const { return entries_.front().state.reg(); }

 private:
  std::vector<Entry> entries_;
};

// |psi><psi| with provenance Pure.
DensityOperator density_from_pure(const PureState& state);

// rho = sum_k p_k |psi_k><psi_k| with provenance ProperFromEnsemble.
DensityOperator proper_mixture_from_ensemble(const Ensemble& ensemble);

// Reduced operator on the kept labels (register order), provenance
// ImproperFromTrace. Errors: UnknownTarget, NothingDiscarded, NothingKept.
DensityOperator partial_trace(const PureState& source, const std::vector<std::string>& discard);
DensityOperator partial_trace(const DensityOperator& source,
                              const std::vector<std::string>& discard);

// p_i = Tr(P_i rho), clamped to [0, 1].
OutcomeDistribution born_distribution(const DensityOperator& rho, const MeasurementBasis& basis);

}  // namespace wignerlab
