#include "wignerlab/mixtures.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

#include "wignerlab/errors.hpp"

namespace wignerlab {

namespace {

// Lexicographic order on (real, imag) entries, used only to pick a canonical
// operand order so trace_distance(a, b) and trace_distance(b, a) run the
// identical float computation.
bool matrix_before(const Matrix& a, const Matrix& b) {
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      const Complex x = a(i, j), y = b(i, j);
      if (x.real() != y.real()) return x.real() < y.real();
      if (x.imag() != y.imag()) return x.imag() < y.imag();
    }
  }
  return false;
}

}  // namespace

double trace_distance(const DensityOperator& a, const DensityOperator& b) {
  if (a.reg() != b.reg()) {
    raise(ErrorCode::RegisterMismatch, "trace distance needs operators on the same register");
  }
  const bool swap = matrix_before(b.matrix(), a.matrix());
  const Matrix diff = swap ? Matrix(b.matrix() - a.matrix()) : Matrix(a.matrix() - b.matrix());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(diff, Eigen::EigenvaluesOnly);
  return 0.5 * solver.eigenvalues().cwiseAbs().sum();
}

std::vector<Eigenspace> spectral_decomposition(const Operator& observable) {
  if (!observable.is_hermitian()) {
    raise(ErrorCode::NotHermitian, "observable is not tagged Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(observable.matrix());
  const auto& values = solver.eigenvalues();
  const auto& vectors = solver.eigenvectors();

  std::vector<Eigenspace> spaces;
  Eigen::Index start = 0;
  while (start < values.size()) {
    Eigen::Index end = start + 1;
    while (end < values.size() && values[end] - values[end - 1] < kEigenvalueGap) ++end;
    Eigenspace space;
    space.value = values.segment(start, end - start).mean();
    space.vectors = vectors.middleCols(start, end - start);
    spaces.push_back(std::move(space));
    start = end;
  }
  return spaces;
}

namespace {

std::optional<double> definite_from_weights(const std::vector<Eigenspace>& spaces,
                                            const std::vector<double>& weights) {
  for (std::size_t i = 0; i < spaces.size(); ++i) {
    if (weights[i] >= 1.0 - kNormEpsilon) return spaces[i].value;
  }
  return std::nullopt;
}

}  // namespace

std::optional<double> definite_value(const PureState& state, const Operator& observable) {
  if (observable.dim() != state.dim()) {
    raise(ErrorCode::RegisterMismatch, "observable does not act on the state's register");
  }
  const auto spaces = spectral_decomposition(observable);
  std::vector<double> weights;
  weights.reserve(spaces.size());
  for (const auto& space : spaces) {
    weights.push_back((space.vectors.adjoint() * state.amps()).squaredNorm());
  }
  return definite_from_weights(spaces, weights);
}

std::optional<double> definite_value(const DensityOperator& rho, const Operator& observable) {
  if (observable.dim() != rho.dim()) {
    raise(ErrorCode::RegisterMismatch, "observable does not act on the operator's register");
  }
  const auto spaces = spectral_decomposition(observable);
  std::vector<double> weights;
  weights.reserve(spaces.size());
  for (const auto& space : spaces) {
    weights.push_back((space.vectors.adjoint() * rho.matrix() * space.vectors).trace().real());
  }
  return definite_from_weights(spaces, weights);
}

double interference_witness(const DensityOperator& rho, const MeasurementBasis& basis) {
  const IndexSplit split = IndexSplit::make(rho.reg(), basis.targets());
  if (split.env_dim != 1) {
    raise(ErrorCode::RegisterMismatch, "witness basis must span the operator's register");
  }
  const Matrix& m = rho.matrix();
  const auto dim = static_cast<Eigen::Index>(rho.dim());

  // Reorder rho into the basis's target index convention once.
  Matrix reordered(dim, dim);
  for (std::size_t i = 0; i < split.target_dim; ++i) {
    for (std::size_t j = 0; j < split.target_dim; ++j) {
      reordered(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          m(static_cast<Eigen::Index>(split.target_offset[i]),
            static_cast<Eigen::Index>(split.target_offset[j]));
    }
  }

  // Fast path: computational outcomes partition the indices, so blocks are
  // index masks and no matrix products are needed.
  double witness = 0.0;
  if (basis.computational_like()) {
    std::vector<std::size_t> owner(static_cast<std::size_t>(dim), 0);
    for (std::size_t o = 0; o < basis.outcomes().size(); ++o) {
      owner[basis.outcomes()[o].index] = o;
    }
    for (Eigen::Index i = 0; i < dim; ++i) {
      for (Eigen::Index j = 0; j < dim; ++j) {
        if (owner[static_cast<std::size_t>(i)] != owner[static_cast<std::size_t>(j)]) {
          witness = std::max(witness, std::abs(reordered(i, j)));
        }
      }
    }
    return witness;
  }

  for (std::size_t i = 0; i < basis.outcomes().size(); ++i) {
    const Matrix left = basis.dense_projector(i) * reordered;
    for (std::size_t j = 0; j < basis.outcomes().size(); ++j) {
      if (i == j) continue;
      witness =
          std::max(witness, (left * basis.dense_projector(j)).cwiseAbs().maxCoeff());
    }
  }
  return witness;
}

Operator total_spin_squared(const Register& reg) {
  for (const auto& sub : reg.subsystems()) {
    if (sub.dim != 2) {
      raise(ErrorCode::BasisMismatch, "total_spin_squared needs an all-qubit register");
    }
  }
  const std::size_t n = reg.count();
  const auto dim = static_cast<Eigen::Index>(reg.total_dim());

  Matrix sigma_x(2, 2), sigma_y(2, 2), sigma_z(2, 2);
  sigma_x << 0, 1, 1, 0;
  sigma_y << 0, Complex(0, -1), Complex(0, 1), 0;
  sigma_z << 1, 0, 0, -1;

  auto embed = [&](const Matrix& single, std::size_t site) {
    Matrix full = Matrix::Identity(1, 1);
    for (std::size_t k = 0; k < n; ++k) {
      const Matrix& factor = (k == site) ? single : Matrix(Matrix::Identity(2, 2));
      Matrix next(full.rows() * 2, full.cols() * 2);
      for (Eigen::Index i = 0; i < full.rows(); ++i) {
        for (Eigen::Index j = 0; j < full.cols(); ++j) {
          next.block(i * 2, j * 2, 2, 2) = full(i, j) * factor;
        }
      }
      full = std::move(next);
    }
    return full;
  };

  Matrix total = Matrix::Zero(dim, dim);
  for (const Matrix* sigma : {&sigma_x, &sigma_y, &sigma_z}) {
    Matrix component = Matrix::Zero(dim, dim);
    for (std::size_t site = 0; site < n; ++site) {
      component += 0.5 * embed(*sigma, site);
    }
    total += component * component;
  }
  return Operator::hermitian(total);
}

double spin_from_eigenvalue(double lambda) {
  return 0.5 * (std::sqrt(1.0 + 4.0 * lambda) - 1.0);
}

}  // namespace wignerlab
