#pragma once

#include <Eigen/Dense>
#include <complex>

#include "wignerlab/register.hpp"

namespace wignerlab {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

// Normalized state vector over a register. Immutable after construction.
class PureState {
 public:
  const Register& reg() const { return reg_; }
  const Vector& amps() const { return amps_; }
  std::size_t dim() const { return static_cast<std::size_t>(amps_.size()); }
  Complex amp(std::size_t i) const { return amps_[static_cast<Eigen::Index>(i)]; }

  // True when from_amplitudes had to rescale by more than kNormEpsilon.
  bool was_renormalized() const { return renormalized_; }

  double norm() const { return amps_.norm(); }

 private:
  friend PureState from_amplitudes(const Register& reg, const Vector& amps);

  Register reg_;
  Vector amps_;
  bool renormalized_ = false;
};

// Errors: ZeroVector, LengthMismatch.
PureState from_amplitudes(const Register& reg, const Vector& amps);

// Convenience: single computational basis ket |index> on the register.
PureState basis_state(const Register& reg, std::size_t index);

// State on the concatenated register, amplitudes the row-major outer product.
// Errors: LabelClash, TooLarge.
PureState tensor_product(const PureState& a, const PureState& b);

// Largest |amplitude difference| between two states on equal registers.
double max_amp_difference(const PureState& a, const PureState& b);

}  // namespace wignerlab
