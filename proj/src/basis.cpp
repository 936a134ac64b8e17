#include "wignerlab/basis.hpp"

#include <algorithm>
#include <cmath>

#include "wignerlab/dsl_format.hpp"
#include "wignerlab/errors.hpp"

namespace wignerlab {

namespace {

std::string digit_label(const std::vector<std::size_t>& dims, std::size_t flat) {
  // Digits concatenated when unambiguous, comma-separated otherwise.
  const bool wide = std::any_of(dims.begin(), dims.end(), [](std::size_t d) { return d > 10; });
  std::vector<std::size_t> digits(dims.size());
  for (std::size_t k = dims.size(); k-- > 0;) {
    digits[k] = flat % dims[k];
    flat /= dims[k];
  }
  std::string label;
  for (std::size_t k = 0; k < digits.size(); ++k) {
    if (wide && k > 0) label += ',';
    label += std::to_string(digits[k]);
  }
  return label;
}

ProjectorOutcome basis_ket_outcome(std::string label, std::size_t index) {
  ProjectorOutcome outcome;
  outcome.label = std::move(label);
  outcome.form = ProjectorOutcome::Form::BasisKet;
  outcome.index = index;
  return outcome;
}

ProjectorOutcome kets_outcome(std::string label, Matrix kets) {
  ProjectorOutcome outcome;
  outcome.label = std::move(label);
  outcome.form = ProjectorOutcome::Form::Kets;
  outcome.kets = std::move(kets);
  return outcome;
}

// Applies one outcome's projector to a target-group column in place.
void project_column(const std::vector<ProjectorOutcome>& outcomes, std::size_t which,
                    Vector& column) {
  const ProjectorOutcome& outcome = outcomes[which];
  switch (outcome.form) {
    case ProjectorOutcome::Form::BasisKet: {
      const Complex kept = column[static_cast<Eigen::Index>(outcome.index)];
      column.setZero();
      column[static_cast<Eigen::Index>(outcome.index)] = kept;
      break;
    }
    case ProjectorOutcome::Form::Kets:
      column = outcome.kets * (outcome.kets.adjoint() * column).eval();
      break;
    case ProjectorOutcome::Form::Complement: {
      // Subtract every other outcome's projection.
      for (std::size_t other = 0; other < outcomes.size(); ++other) {
        if (other == which) continue;
        Vector copy = column;
        project_column(outcomes, other, copy);
        column -= copy;
      }
      break;
    }
    case ProjectorOutcome::Form::Dense:
      column = outcome.dense * column;
      break;
  }
}

}  // namespace

std::string to_string(const BasisSpec& spec) {
  switch (spec.kind) {
    case BasisSpec::Kind::Computational: return "computational";
    case BasisSpec::Kind::Bell: return "bell";
    case BasisSpec::Kind::Ghz: return "ghz";
    case BasisSpec::Kind::Spin: return "spin:" + format_shortest(spec.angle);
  }
  return "computational";
}

MeasurementBasis MeasurementBasis::from_projectors(
    std::vector<std::string> targets, std::vector<std::pair<std::string, Matrix>> projectors) {
  if (projectors.empty()) raise(ErrorCode::BasisMismatch, "basis needs at least one outcome");
  const Eigen::Index dim = projectors.front().second.rows();
  Matrix sum = Matrix::Zero(dim, dim);
  for (std::size_t i = 0; i < projectors.size(); ++i) {
    const Matrix& p = projectors[i].second;
    if (p.rows() != dim || p.cols() != dim) {
      raise(ErrorCode::BasisMismatch, "projector dimensions disagree");
    }
    if ((p * p - p).cwiseAbs().maxCoeff() > kNormEpsilon) {
      raise(ErrorCode::BasisMismatch, "projector '" + projectors[i].first + "' is not idempotent");
    }
    for (std::size_t j = i + 1; j < projectors.size(); ++j) {
      if ((p * projectors[j].second).cwiseAbs().maxCoeff() > kNormEpsilon) {
        raise(ErrorCode::BasisMismatch, "projectors '" + projectors[i].first + "' and '" +
                                            projectors[j].first + "' are not orthogonal");
      }
    }
    sum += p;
  }
  if ((sum - Matrix::Identity(dim, dim)).cwiseAbs().maxCoeff() > kNormEpsilon) {
    raise(ErrorCode::BasisMismatch, "projectors do not sum to the identity");
  }
  MeasurementBasis basis;
  basis.targets_ = std::move(targets);
  basis.group_dim_ = static_cast<std::size_t>(dim);
  for (auto& [label, matrix] : projectors) {
    ProjectorOutcome outcome;
    outcome.label = std::move(label);
    outcome.form = ProjectorOutcome::Form::Dense;
    outcome.dense = std::move(matrix);
    basis.outcomes_.push_back(std::move(outcome));
  }
  return basis;
}

std::size_t MeasurementBasis::outcome_index(const std::string& label) const {
  for (std::size_t i = 0; i < outcomes_.size(); ++i) {
    if (outcomes_[i].label == label) return i;
  }
  raise(ErrorCode::UnknownTarget, "basis has no outcome '" + label + "'");
}

bool MeasurementBasis::has_outcome(const std::string& label) const {
  return std::any_of(outcomes_.begin(), outcomes_.end(),
                     [&](const ProjectorOutcome& o) { return o.label == label; });
}

bool MeasurementBasis::computational_like() const {
  return std::all_of(outcomes_.begin(), outcomes_.end(), [](const ProjectorOutcome& o) {
    return o.form == ProjectorOutcome::Form::BasisKet;
  });
}

Matrix MeasurementBasis::dense_projector(std::size_t outcome) const {
  const auto gd = static_cast<Eigen::Index>(group_dim_);
  const ProjectorOutcome& o = outcomes_[outcome];
  switch (o.form) {
    case ProjectorOutcome::Form::BasisKet: {
      Matrix p = Matrix::Zero(gd, gd);
      p(static_cast<Eigen::Index>(o.index), static_cast<Eigen::Index>(o.index)) = 1.0;
      return p;
    }
    case ProjectorOutcome::Form::Kets:
      return o.kets * o.kets.adjoint();
    case ProjectorOutcome::Form::Complement: {
      Matrix p = Matrix::Identity(gd, gd);
      for (std::size_t other = 0; other < outcomes_.size(); ++other) {
        if (other != outcome) p -= dense_projector(other);
      }
      return p;
    }
    case ProjectorOutcome::Form::Dense:
      return o.dense;
  }
  return Matrix::Zero(gd, gd);
}

MeasurementBasis make_basis(const Register& reg, const std::vector<std::string>& targets,
                            const BasisSpec& spec) {
  std::vector<std::size_t> dims;
  for (const auto& label : targets) dims.push_back(reg.dim(reg.index_of(label)));
  std::size_t group_dim = 1;
  for (auto d : dims) group_dim *= d;
  const auto gd = static_cast<Eigen::Index>(group_dim);

  MeasurementBasis basis;
  basis.targets_ = targets;
  basis.group_dim_ = group_dim;

  switch (spec.kind) {
    case BasisSpec::Kind::Computational: {
      if (targets.empty()) raise(ErrorCode::BasisMismatch, "computational basis needs targets");
      for (std::size_t t = 0; t < group_dim; ++t) {
        basis.outcomes_.push_back(basis_ket_outcome(digit_label(dims, t), t));
      }
      break;
    }
    case BasisSpec::Kind::Spin: {
      if (dims.size() != 1 || dims[0] != 2) {
        raise(ErrorCode::BasisMismatch, "spin basis needs one dim-2 target");
      }
      const double half = spec.angle / 2.0;
      Matrix up(2, 1), down(2, 1);
      up << std::cos(half), std::sin(half);
      down << -std::sin(half), std::cos(half);
      basis.outcomes_.push_back(kets_outcome("0", std::move(up)));
      basis.outcomes_.push_back(kets_outcome("1", std::move(down)));
      break;
    }
    case BasisSpec::Kind::Bell: {
      if (dims.size() != 2 || dims[0] != 2 || dims[1] != 2) {
        raise(ErrorCode::BasisMismatch, "bell basis needs two dim-2 targets");
      }
      const double s = 1.0 / std::sqrt(2.0);
      Matrix phi_plus(4, 1), phi_minus(4, 1), psi_plus(4, 1), psi_minus(4, 1);
      phi_plus << s, 0, 0, s;
      phi_minus << s, 0, 0, -s;
      psi_plus << 0, s, s, 0;
      psi_minus << 0, s, -s, 0;
      basis.outcomes_.push_back(kets_outcome("PhiPlus", std::move(phi_plus)));
      basis.outcomes_.push_back(kets_outcome("PhiMinus", std::move(phi_minus)));
      basis.outcomes_.push_back(kets_outcome("PsiPlus", std::move(psi_plus)));
      basis.outcomes_.push_back(kets_outcome("PsiMinus", std::move(psi_minus)));
      break;
    }
    case BasisSpec::Kind::Ghz: {
      if (dims.size() < 2 ||
          std::any_of(dims.begin(), dims.end(), [](std::size_t d) { return d != 2; })) {
        raise(ErrorCode::BasisMismatch, "ghz basis needs two or more dim-2 targets");
      }
      const double s = 1.0 / std::sqrt(2.0);
      Matrix plus = Matrix::Zero(gd, 1), minus = Matrix::Zero(gd, 1);
      plus(0, 0) = s;
      plus(gd - 1, 0) = s;
      minus(0, 0) = s;
      minus(gd - 1, 0) = -s;
      basis.outcomes_.push_back(kets_outcome("PhiPlus", std::move(plus)));
      basis.outcomes_.push_back(kets_outcome("PhiMinus", std::move(minus)));
      ProjectorOutcome rest;
      rest.label = "Rest";
      rest.form = ProjectorOutcome::Form::Complement;
      basis.outcomes_.push_back(std::move(rest));
      break;
    }
  }
  return basis;
}

OutcomeDistribution born_distribution(const PureState& state, const MeasurementBasis& basis) {
  const IndexSplit split = IndexSplit::make(state.reg(), basis.targets());
  const Vector& amps = state.amps();

  std::vector<double> probabilities(basis.outcomes().size(), 0.0);
  std::size_t complement = basis.outcomes().size();
  double accounted = 0.0;

  Vector column(static_cast<Eigen::Index>(split.target_dim));
  for (std::size_t e = 0; e < split.env_dim; ++e) {
    for (std::size_t t = 0; t < split.target_dim; ++t) {
      column[static_cast<Eigen::Index>(t)] =
          amps[static_cast<Eigen::Index>(split.target_offset[t] + split.env_offset[e])];
    }
    for (std::size_t o = 0; o < basis.outcomes().size(); ++o) {
      const ProjectorOutcome& outcome = basis.outcomes()[o];
      switch (outcome.form) {
        case ProjectorOutcome::Form::BasisKet:
          probabilities[o] += std::norm(column[static_cast<Eigen::Index>(outcome.index)]);
          break;
        case ProjectorOutcome::Form::Kets:
          probabilities[o] += (outcome.kets.adjoint() * column).squaredNorm();
          break;
        case ProjectorOutcome::Form::Complement:
          complement = o;
          break;
        case ProjectorOutcome::Form::Dense:
          probabilities[o] += (column.adjoint() * outcome.dense * column).value().real();
          break;
      }
    }
  }
  for (std::size_t o = 0; o < probabilities.size(); ++o) {
    if (o != complement) accounted += probabilities[o];
  }
  if (complement < basis.outcomes().size()) {
    probabilities[complement] = 1.0 - accounted;
  }

  OutcomeDistribution dist;
  dist.reserve(probabilities.size());
  for (std::size_t o = 0; o < probabilities.size(); ++o) {
    dist.emplace_back(basis.outcomes()[o].label, std::clamp(probabilities[o], 0.0, 1.0));
  }
  return dist;
}

PureState project_outcome(const PureState& state, const MeasurementBasis& basis,
                          std::size_t outcome) {
  const IndexSplit split = IndexSplit::make(state.reg(), basis.targets());
  const Vector& amps = state.amps();
  Vector out = Vector::Zero(amps.size());
  Vector column(static_cast<Eigen::Index>(split.target_dim));
  for (std::size_t e = 0; e < split.env_dim; ++e) {
    for (std::size_t t = 0; t < split.target_dim; ++t) {
      column[static_cast<Eigen::Index>(t)] =
          amps[static_cast<Eigen::Index>(split.target_offset[t] + split.env_offset[e])];
    }
    project_column(basis.outcomes(), outcome, column);
    for (std::size_t t = 0; t < split.target_dim; ++t) {
      out[static_cast<Eigen::Index>(split.target_offset[t] + split.env_offset[e])] =
          column[static_cast<Eigen::Index>(t)];
    }
  }
  return from_amplitudes(state.reg(), out);
}

std::size_t outcome_index_for_draw(const OutcomeDistribution& dist, double u) {
  double cum = 0.0;
  std::size_t last_nonzero = 0;
  bool any_nonzero = false;
  for (std::size_t i = 0; i < dist.size(); ++i) {
    if (dist[i].second > 0.0) {
      last_nonzero = i;
      any_nonzero = true;
    }
    cum += dist[i].second;
    if (u < cum) return i;
  }
  return any_nonzero ? last_nonzero : dist.size() - 1;
}

std::pair<std::string, PureState> sample_outcome(const PureState& state,
                                                 const MeasurementBasis& basis,
                                                 RandomStream& rng) {
  const OutcomeDistribution dist = born_distribution(state, basis);
  const std::size_t pick = outcome_index_for_draw(dist, rng.next_double());
  return {dist[pick].first, project_outcome(state, basis, pick)};
}

}  // namespace wignerlab
