#pragma once

#include <string>
#include <vector>

#include "wignerlab/state.hpp"

namespace wignerlab {

enum class OperatorTag { General, Unitary, Hermitian };

// Square matrix acting on one or more subsystems. The tag records which
// structural property was verified at construction time.
class Operator {
 public:
  // Errors: NotUnitary / NotHermitian when the tagged property fails
  // within kNormEpsilon, LengthMismatch for non-square input.
  static Operator unitary(const Matrix& m);
  static Operator hermitian(const Matrix& m);
  static Operator general(const Matrix& m);

  const Matrix& matrix() const { return m_; }
  std::size_t dim() const { return static_cast<std::size_t>(m_.rows()); }
  OperatorTag tag() const { return tag_; }
  bool is_unitary() const { return tag_ == OperatorTag::Unitary; }
  bool is_hermitian() const { return tag_ == OperatorTag::Hermitian; }

 private:
  Operator(Matrix m, OperatorTag tag) : m_(std::move(m)), tag_(tag) {}

  Matrix m_;
  OperatorTag tag_;
};

// Built-in named unitaries addressable from scenarios and the DSL:
//   IDENT      identity on one subsystem
//   HADAMARD   2-dim Hadamard
//   FLIP       cyclic increment |b> -> |b+1 mod d| (Pauli X on qubits)
//   CORRELATE  two equal-dim subsystems, |a,b> -> |a, a+b mod d> (CNOT on qubits)
// `dims` lists the target subsystem dimensions in order.
// Errors: UnknownTarget for unknown names, BasisMismatch for bad arity/dims.
Operator named_unitary(const std::string& name, const std::vector<std::size_t>& dims);

bool is_named_unitary(const std::string& name);

// Applies U on the listed target subsystems (identity elsewhere). Target
// order matters: the first listed target is the slowest-varying index of U.
// Errors: NotUnitary, UnknownTarget, LengthMismatch.
PureState apply_unitary(const PureState& state, const Operator& u,
                        const std::vector<std::string>& targets);

}  // namespace wignerlab
