#include "wignerlab/operators.hpp"

#include <cmath>

#include "wignerlab/errors.hpp"

namespace wignerlab {

namespace {

void require_square(const Matrix& m) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    raise(ErrorCode::LengthMismatch, "operator matrix must be square and nonempty");
  }
}

}  // namespace

Operator Operator::unitary(const Matrix& m) {
  require_square(m);
  const Matrix gram = m.adjoint() * m;
  const double defect =
      (gram - Matrix::Identity(m.rows(), m.cols())).cwiseAbs().maxCoeff();
  if (defect > kNormEpsilon) {
    raise(ErrorCode::NotUnitary, "matrix fails U^dagger U = I (defect " + std::to_string(defect) + ")");
  }
  return Operator(m, OperatorTag::Unitary);
}

Operator Operator::hermitian(const Matrix& m) {
  require_square(m);
  const double defect = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (defect > kNormEpsilon) {
    raise(ErrorCode::NotHermitian, "matrix fails M = M^dagger (defect " + std::to_string(defect) + ")");
  }
  return Operator(m, OperatorTag::Hermitian);
}

Operator Operator::general(const Matrix& m) {
  require_square(m);
  return Operator(m, OperatorTag::General);
}

bool is_named_unitary(const std::string& name) {
  return name == "IDENT" || name == "HADAMARD" || name == "FLIP" || name == "CORRELATE";
}

Operator named_unitary(const std::string& name, const std::vector<std::size_t>& dims) {
  if (name == "IDENT") {
    if (dims.size() != 1) raise(ErrorCode::BasisMismatch, "IDENT takes one target");
    const auto d = static_cast<Eigen::Index>(dims[0]);
    return Operator::unitary(Matrix::Identity(d, d));
  }
  if (name == "HADAMARD") {
    if (dims.size() != 1 || dims[0] != 2) {
      raise(ErrorCode::BasisMismatch, "HADAMARD takes one dim-2 target");
    }
    Matrix m(2, 2);
    const double s = 1.0 / std::sqrt(2.0);
    m << s, s, s, -s;
    return Operator::unitary(m);
  }
  if (name == "FLIP") {
    if (dims.size() != 1) raise(ErrorCode::BasisMismatch, "FLIP takes one target");
    const std::size_t d = dims[0];
    Matrix m = Matrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    for (std::size_t b = 0; b < d; ++b) {
      m(static_cast<Eigen::Index>((b + 1) % d), static_cast<Eigen::Index>(b)) = 1.0;
    }
    return Operator::unitary(m);
  }
  if (name == "CORRELATE") {
    if (dims.size() != 2 || dims[0] != dims[1]) {
      raise(ErrorCode::BasisMismatch, "CORRELATE takes two equal-dim targets");
    }
    const std::size_t d = dims[0];
    const std::size_t n = d * d;
    Matrix m = Matrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t a = 0; a < d; ++a) {
      for (std::size_t b = 0; b < d; ++b) {
        const std::size_t from = a * d + b;
        const std::size_t to = a * d + (a + b) % d;
        m(static_cast<Eigen::Index>(to), static_cast<Eigen::Index>(from)) = 1.0;
      }
    }
    return Operator::unitary(m);
  }
  raise(ErrorCode::UnknownTarget, "unknown built-in unitary '" + name + "'");
}

PureState apply_unitary(const PureState& state, const Operator& u,
                        const std::vector<std::string>& targets) {
  if (!u.is_unitary()) {
    raise(ErrorCode::NotUnitary, "operator is not tagged unitary");
  }
  const IndexSplit split = IndexSplit::make(state.reg(), targets);
  if (u.dim() != split.target_dim) {
    raise(ErrorCode::LengthMismatch,
          "operator dimension " + std::to_string(u.dim()) + " does not match target dimension " +
              std::to_string(split.target_dim));
  }

  const Vector& in = state.amps();
  Vector out(in.size());
  Vector column(static_cast<Eigen::Index>(split.target_dim));
  for (std::size_t e = 0; e < split.env_dim; ++e) {
    for (std::size_t t = 0; t < split.target_dim; ++t) {
      column[static_cast<Eigen::Index>(t)] =
          in[static_cast<Eigen::Index>(split.target_offset[t] + split.env_offset[e])];
    }
    const Vector transformed = u.matrix() * column;
    for (std::size_t t = 0; t < split.target_dim; ++t) {
      out[static_cast<Eigen::Index>(split.target_offset[t] + split.env_offset[e])] =
          transformed[static_cast<Eigen::Index>(t)];
    }
  }
  return from_amplitudes(state.reg(), out);
}

}  // namespace wignerlab
