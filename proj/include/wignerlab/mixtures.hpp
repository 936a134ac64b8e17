#pragma once

#include <optional>

#include "wignerlab/density.hpp"
#include "wignerlab/operators.hpp"

namespace wignerlab {

// Eigenvalues closer than this are treated as one degenerate eigenspace.
// The observables this project cares about have exact small-integer spectra.
inline constexpr double kEigenvalueGap = 1e-8;

// (1/2) sum |eigenvalues(a - b)|. Symmetric by construction (operands are
// put in a canonical order before subtracting), zero iff equal within
// kNormEpsilon, and bounded by [0, 1] for unit-trace operators.
// Errors: RegisterMismatch.
double trace_distance(const DensityOperator& a, const DensityOperator& b);

// One eigenspace of a Hermitian observable: grouped eigenvalue and the
// orthonormal eigenvectors spanning it.
struct Eigenspace {
  double value;
  Matrix vectors;  // columns
};

// Eigenspaces of a Hermitian-tagged operator, grouped with kEigenvalueGap.
// Errors: NotHermitian.
std::vector<Eigenspace> spectral_decomposition(const Operator& observable);

// Definite(value) iff the state is supported in a single eigenspace of the
// observable within kNormEpsilon; std::nullopt ("Undefined") otherwise.
// The observable must act on the state's full register.
// Errors: NotHermitian, RegisterMismatch.
std::optional<double> definite_value(const PureState& state, const Operator& observable);
std::optional<double> definite_value(const DensityOperator& rho, const Operator& observable);

// Largest inter-outcome coherence magnitude: max over ordered pairs i != j
// of the largest |entry| of P_i rho P_j. Zero for any proper mixture built
// from the basis's own outcomes; nonzero entries witness coherence between
// outcome branches. The basis must span rho's register.
// Errors: RegisterMismatch, UnknownTarget.
double interference_witness(const DensityOperator& rho, const MeasurementBasis& basis);

// Total spin squared (S_x^2 + S_y^2 + S_z^2, hbar = 1) for an all-qubit
// register; eigenvalues s(s+1). Errors: BasisMismatch for non-qubit dims.
Operator total_spin_squared(const Register& reg);

// Value s solving lambda = s(s+1), for reporting spin sectors.
double spin_from_eigenvalue(double lambda);

}  // namespace wignerlab
