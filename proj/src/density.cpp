#include "wignerlab/density.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "wignerlab/errors.hpp"

namespace wignerlab {

namespace {

// Above this the construction-time PSD eigensolve would dominate; the
// operations in this library that build large operators (partial traces of
// big pure states) are PSD by construction.
constexpr std::size_t kPsdCheckMaxDim = 256;

std::vector<std::string> kept_labels(const Register& reg, const std::vector<std::string>& discard) {
  for (const auto& label : discard) reg.index_of(label);  // validates
  if (discard.empty()) {
    raise(ErrorCode::NothingDiscarded, "partial trace needs a nonempty discard set");
  }
  std::vector<std::string> kept;
  for (const auto& sub : reg.subsystems()) {
    if (std::find(discard.begin(), discard.end(), sub.label) == discard.end()) {
      kept.push_back(sub.label);
    }
  }
  if (kept.empty()) {
    raise(ErrorCode::NothingKept, "partial trace would discard every subsystem");
  }
  return kept;
}

}  // namespace

const char* to_string(ProvenanceKind kind) {
  switch (kind) {
    case ProvenanceKind::Pure: return "pure";
    case ProvenanceKind::ProperFromEnsemble: return "proper_from_ensemble";
    case ProvenanceKind::ImproperFromTrace: return "improper_from_trace";
  }
  return "pure";
}

DensityOperator DensityOperator::from_matrix(const Register& reg, const Matrix& matrix,
                                             Provenance provenance) {
  if (matrix.rows() != matrix.cols() ||
      static_cast<std::size_t>(matrix.rows()) != reg.total_dim()) {
    raise(ErrorCode::LengthMismatch, "density matrix does not match register dimension");
  }
  if ((matrix - matrix.adjoint()).cwiseAbs().maxCoeff() > kNormEpsilon) {
    raise(ErrorCode::NotHermitian, "density matrix is not Hermitian");
  }
  const double trace = matrix.trace().real();
  if (std::abs(trace - 1.0) > kNormEpsilon) {
    raise(ErrorCode::ProbabilitySumInvalid,
          "density matrix has trace " + std::to_string(trace));
  }
  if (reg.total_dim() <= kPsdCheckMaxDim) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(matrix, Eigen::EigenvaluesOnly);
    if (solver.eigenvalues().minCoeff() < -kNormEpsilon) {
      raise(ErrorCode::ProbabilitySumInvalid,
            "density matrix has a negative eigenvalue: " +
                std::to_string(solver.eigenvalues().minCoeff()));
    }
  }
  DensityOperator rho;
  rho.reg_ = reg;
  rho.m_ = matrix;
  rho.prov_ = std::move(provenance);
  return rho;
}

double DensityOperator::purity() const { return (m_ * m_).trace().real(); }

Ensemble Ensemble::from_entries(std::vector<Entry> entries) {
  if (entries.empty()) {
    raise(ErrorCode::ProbabilitySumInvalid, "ensemble needs at least one entry");
  }
  double sum = 0.0;
  for (const auto& entry : entries) {
    if (entry.probability < 0.0) {
      raise(ErrorCode::ProbabilitySumInvalid, "ensemble probability is negative");
    }
    if (entry.state.reg() != entries.front().state.reg()) {
      raise(ErrorCode::RegisterMismatch, "ensemble states live on different registers");
    }
    sum += entry.probability;
  }
  if (std::abs(sum - 1.0) > kNormEpsilon) {
    raise(ErrorCode::ProbabilitySumInvalid,
          "ensemble probabilities sum to " + std::to_string(sum));
  }
  Ensemble ensemble;
  ensemble.entries_ = std::move(entries);
  return ensemble;
}

DensityOperator density_from_pure(const PureState& state) {
  return DensityOperator::from_matrix(state.reg(), state.amps() * state.amps().adjoint(),
                                      Provenance::pure());
}

DensityOperator proper_mixture_from_ensemble(const Ensemble& ensemble) {
  const Register& reg = ensemble.reg();
  const auto dim = static_cast<Eigen::Index>(reg.total_dim());
  Matrix rho = Matrix::Zero(dim, dim);
  for (const auto& entry : ensemble.entries()) {
    rho += entry.probability * (entry.state.amps() * entry.state.amps().adjoint());
  }
  return DensityOperator::from_matrix(
      reg, rho, Provenance::proper(std::to_string(ensemble.entries().size()) + "-entry ensemble"));
}

DensityOperator partial_trace(const PureState& source, const std::vector<std::string>& discard) {
  const std::vector<std::string> kept = kept_labels(source.reg(), discard);
  const IndexSplit split = IndexSplit::make(source.reg(), kept);
  const Vector& amps = source.amps();

  const auto kd = static_cast<Eigen::Index>(split.target_dim);
  Matrix rho = Matrix::Zero(kd, kd);
  for (std::size_t e = 0; e < split.env_dim; ++e) {
    Vector slice(kd);
    for (std::size_t t = 0; t < split.target_dim; ++t) {
      slice[static_cast<Eigen::Index>(t)] =
          amps[static_cast<Eigen::Index>(split.target_offset[t] + split.env_offset[e])];
    }
    rho += slice * slice.adjoint();
  }
  return DensityOperator::from_matrix(
      source.reg().keep(kept), rho,
      Provenance::improper("pure state on full register", discard));
}

DensityOperator partial_trace(const DensityOperator& source,
                              const std::vector<std::string>& discard) {
  const std::vector<std::string> kept = kept_labels(source.reg(), discard);
  const IndexSplit split = IndexSplit::make(source.reg(), kept);
  const Matrix& m = source.matrix();

  const auto kd = static_cast<Eigen::Index>(split.target_dim);
  Matrix rho = Matrix::Zero(kd, kd);
  for (std::size_t i = 0; i < split.target_dim; ++i) {
    for (std::size_t j = 0; j < split.target_dim; ++j) {
      Complex sum = 0.0;
      for (std::size_t e = 0; e < split.env_dim; ++e) {
        sum += m(static_cast<Eigen::Index>(split.target_offset[i] + split.env_offset[e]),
                 static_cast<Eigen::Index>(split.target_offset[j] + split.env_offset[e]));
      }
      rho(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = sum;
    }
  }
  return DensityOperator::from_matrix(
      source.reg().keep(kept), rho,
      Provenance::improper(std::string(to_string(source.provenance().kind)) + " operator",
                           discard));
}

OutcomeDistribution born_distribution(const DensityOperator& rho, const MeasurementBasis& basis) {
  const IndexSplit split = IndexSplit::make(rho.reg(), basis.targets());
  const Matrix& m = rho.matrix();

  // Reduced operator on the target group; Tr((P ⊗ I) rho) = Tr(P rho_targets).
  const auto td = static_cast<Eigen::Index>(split.target_dim);
  Matrix reduced = Matrix::Zero(td, td);
  for (std::size_t i = 0; i < split.target_dim; ++i) {
    for (std::size_t j = 0; j < split.target_dim; ++j) {
      Complex sum = 0.0;
      for (std::size_t e = 0; e < split.env_dim; ++e) {
        sum += m(static_cast<Eigen::Index>(split.target_offset[i] + split.env_offset[e]),
                 static_cast<Eigen::Index>(split.target_offset[j] + split.env_offset[e]));
      }
      reduced(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = sum;
    }
  }

  std::vector<double> probabilities(basis.outcomes().size(), 0.0);
  std::size_t complement = basis.outcomes().size();
  for (std::size_t o = 0; o < basis.outcomes().size(); ++o) {
    const ProjectorOutcome& outcome = basis.outcomes()[o];
    switch (outcome.form) {
      case ProjectorOutcome::Form::BasisKet:
        probabilities[o] = reduced(static_cast<Eigen::Index>(outcome.index),
                                   static_cast<Eigen::Index>(outcome.index))
                               .real();
        break;
      case ProjectorOutcome::Form::Kets:
        probabilities[o] = (outcome.kets.adjoint() * reduced * outcome.kets).trace().real();
        break;
      case ProjectorOutcome::Form::Complement:
        complement = o;
        break;
      case ProjectorOutcome::Form::Dense:
        probabilities[o] = (outcome.dense * reduced).trace().real();
        break;
    }
  }
  if (complement < basis.outcomes().size()) {
    double accounted = 0.0;
    for (std::size_t o = 0; o < probabilities.size(); ++o) {
      if (o != complement) accounted += probabilities[o];
    }
    probabilities[complement] = reduced.trace().real() - accounted;
  }

  OutcomeDistribution dist;
  dist.reserve(probabilities.size());
  for (std::size_t o = 0; o < probabilities.size(); ++o) {
    dist.emplace_back(basis.outcomes()[o].label, std::clamp(probabilities[o], 0.0, 1.0));
  }
  return dist;
}

}  // namespace wignerlab
