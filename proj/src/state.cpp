#include "wignerlab/state.hpp"

#include <cmath>

#include "wignerlab/errors.hpp"

namespace wignerlab {

PureState from_amplitudes(const Register& reg, const Vector& amps) {
  if (static_cast<std::size_t>(amps.size()) != reg.total_dim()) {
    raise(ErrorCode::LengthMismatch,
          "amplitude vector has length " + std::to_string(amps.size()) +
              ", register dimension is " + std::to_string(reg.total_dim()));
  }
  const double norm = amps.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    raise(ErrorCode::ZeroVector, "amplitude vector has zero (or non-finite) norm");
  }
  PureState state;
  state.reg_ = reg;
  state.amps_ = amps / norm;
  state.renormalized_ = std::abs(norm - 1.0) > kNormEpsilon;
  return state;
}

PureState basis_state(const Register& reg, std::size_t index) {
  Vector amps = Vector::Zero(static_cast<Eigen::Index>(reg.total_dim()));
  amps[static_cast<Eigen::Index>(index)] = 1.0;
  return from_amplitudes(reg, amps);
}

PureState tensor_product(const PureState& a, const PureState& b) {
  for (const auto& sub : b.reg().subsystems()) {
    if (a.reg().contains(sub.label)) {
      raise(ErrorCode::LabelClash, "label '" + sub.label + "' present in both operands");
    }
  }
  std::vector<Subsystem> joined = a.reg().subsystems();
  joined.insert(joined.end(), b.reg().subsystems().begin(), b.reg().subsystems().end());
  Register reg = make_register(joined);

  const auto na = a.amps().size();
  const auto nb = b.amps().size();
  Vector amps(na * nb);
  for (Eigen::Index i = 0; i < na; ++i) {
    amps.segment(i * nb, nb) = a.amps()[i] * b.amps();
  }
  return from_amplitudes(reg, amps);
}

double max_amp_difference(const PureState& a, const PureState& b) {
  if (a.reg() != b.reg()) {
    raise(ErrorCode::RegisterMismatch, "states live on different registers");
  }
  return (a.amps() - b.amps()).cwiseAbs().maxCoeff();
}

}  // namespace wignerlab
