// Brute-force reference implementations used to cross-check the library.
// These deliberately avoid the library's IndexSplit/stride machinery and
// Eigen's eigensolvers: indices are decomposed digit by digit, projectors are
// embedded as explicit dense matrices, and eigenvalues come from a hand-rolled
// cyclic Jacobi iteration on the real symmetric embedding.
#pragma once

#include <cassert>
#include <cmath>
#include <complex>
#include <vector>

#include "wignerlab/basis.hpp"
#include "wignerlab/density.hpp"
#include "wignerlab/state.hpp"

namespace oracle {

using wignerlab::Complex;
using wignerlab::Matrix;
using wignerlab::Register;
using wignerlab::Vector;

// Digits of a flat joint index in register order (first subsystem slowest).
inline std::vector<std::size_t> digits_of(const Register& reg, std::size_t flat) {
  std::vector<std::size_t> digits(reg.count());
  for (std::size_t k = reg.count(); k-- > 0;) {
    digits[k] = flat % reg.dim(k);
    flat /= reg.dim(k);
  }
  return digits;
}

// Embeds a target-group operator into the full register: entry (i, j) is
// P(t_i, t_j) when the non-target digits of i and j agree, else zero.
inline Matrix embed_on_targets(const Register& reg, const std::vector<std::string>& targets,
                               const Matrix& group_op) {
  std::vector<std::size_t> target_pos;
  for (const auto& label : targets) target_pos.push_back(reg.index_of(label));

  const std::size_t dim = reg.total_dim();
  Matrix full = Matrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (std::size_t i = 0; i < dim; ++i) {
    const auto di = digits_of(reg, i);
    for (std::size_t j = 0; j < dim; ++j) {
      const auto dj = digits_of(reg, j);
      bool env_equal = true;
      for (std::size_t k = 0; k < reg.count(); ++k) {
        bool is_target = false;
        for (auto p : target_pos) is_target = is_target || p == k;
        if (!is_target && di[k] != dj[k]) {
          env_equal = false;
          break;
        }
      }
      if (!env_equal) continue;
      std::size_t ti = 0, tj = 0;
      for (auto p : target_pos) {
        ti = ti * reg.dim(p) + di[p];
        tj = tj * reg.dim(p) + dj[p];
      }
      full(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          group_op(static_cast<Eigen::Index>(ti), static_cast<Eigen::Index>(tj));
    }
  }
  return full;
}

// Born probabilities via explicit embedded projectors and naive quadratic
// contraction psi^dagger P psi.
inline std::vector<double> born(const wignerlab::PureState& state,
                                const wignerlab::MeasurementBasis& basis) {
  std::vector<double> probabilities;
  for (std::size_t o = 0; o < basis.outcomes().size(); ++o) {
    const Matrix full =
        embed_on_targets(state.reg(), basis.targets(), basis.dense_projector(o));
    Complex p = 0.0;
    for (std::size_t i = 0; i < state.dim(); ++i) {
      for (std::size_t j = 0; j < state.dim(); ++j) {
        p += std::conj(state.amp(i)) *
             full(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) * state.amp(j);
      }
    }
    probabilities.push_back(p.real());
  }
  return probabilities;
}

// Reduced matrix on `kept` (register order) by direct digit comparison.
inline Matrix partial_trace(const wignerlab::PureState& state,
                            const std::vector<std::string>& kept) {
  const Register& reg = state.reg();
  std::vector<std::size_t> kept_pos;
  for (const auto& sub : reg.subsystems()) {
    for (const auto& label : kept) {
      if (sub.label == label) kept_pos.push_back(reg.index_of(label));
    }
  }
  std::size_t kept_dim = 1;
  for (auto p : kept_pos) kept_dim *= reg.dim(p);

  Matrix rho = Matrix::Zero(static_cast<Eigen::Index>(kept_dim),
                            static_cast<Eigen::Index>(kept_dim));
  for (std::size_t i = 0; i < state.dim(); ++i) {
    const auto di = digits_of(reg, i);
    for (std::size_t j = 0; j < state.dim(); ++j) {
      const auto dj = digits_of(reg, j);
      bool env_equal = true;
      for (std::size_t k = 0; k < reg.count(); ++k) {
        bool is_kept = false;
        for (auto p : kept_pos) is_kept = is_kept || p == k;
        if (!is_kept && di[k] != dj[k]) {
          env_equal = false;
          break;
        }
      }
      if (!env_equal) continue;
      std::size_t a = 0, b = 0;
      for (auto p : kept_pos) {
        a = a * reg.dim(p) + di[p];
        b = b * reg.dim(p) + dj[p];
      }
      rho(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) +=
          state.amp(i) * std::conj(state.amp(j));
    }
  }
  return rho;
}

// Eigenvalues of a complex Hermitian matrix by cyclic Jacobi on the real
// symmetric embedding [[Re, -Im], [Im, Re]]; each eigenvalue appears twice.
inline std::vector<double> hermitian_eigenvalues(const Matrix& h) {
  const std::size_t n = static_cast<std::size_t>(h.rows());
  const std::size_t m = 2 * n;
  std::vector<std::vector<double>> a(m, std::vector<double>(m, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const Complex v = h(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      a[i][j] = v.real();
      a[i][j + n] = -v.imag();
      a[i + n][j] = v.imag();
      a[i + n][j + n] = v.real();
    }
  }

  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < m; ++p) {
      for (std::size_t q = p + 1; q < m; ++q) off += a[p][q] * a[p][q];
    }
    if (off < 1e-26) break;
    for (std::size_t p = 0; p < m; ++p) {
      for (std::size_t q = p + 1; q < m; ++q) {
        if (std::abs(a[p][q]) < 1e-300) continue;
        const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < m; ++k) {
          const double akp = a[k][p], akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < m; ++k) {
          const double apk = a[p][k], aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
      }
    }
  }

  std::vector<double> eigenvalues;
  for (std::size_t i = 0; i < m; ++i) eigenvalues.push_back(a[i][i]);
  return eigenvalues;
}

// (1/2) tr |A - B| via the Jacobi route; the embedding doubles every
// eigenvalue, hence the factor 1/4 over the 2n values.
inline double trace_distance(const Matrix& a, const Matrix& b) {
  const Matrix diff = a - b;
  double sum = 0.0;
  for (double v : hermitian_eigenvalues(diff)) sum += std::abs(v);
  return 0.25 * sum;
}

}  // namespace oracle
