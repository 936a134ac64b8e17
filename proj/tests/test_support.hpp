#pragma once

#include <cassert>

#include "wignerlab/rng.hpp"
#include "wignerlab/state.hpp"

namespace testsupport {

using wignerlab::Complex;
using wignerlab::Matrix;
using wignerlab::RandomStream;
using wignerlab::Vector;

inline double uniform(RandomStream& rng, double lo, double hi) {
  return lo + (hi - lo) * rng.next_double();
}

inline Vector random_amplitudes(RandomStream& rng, std::size_t dim) {
  Vector amps(static_cast<Eigen::Index>(dim));
  for (std::size_t i = 0; i < dim; ++i) {
    amps[static_cast<Eigen::Index>(i)] = Complex(uniform(rng, -1, 1), uniform(rng, -1, 1));
  }
  if (amps.norm() == 0.0) amps[0] = 1.0;
  return amps;
}

inline Matrix random_unitary(RandomStream& rng, std::size_t dim) {
  Matrix m(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      m(i, j) = Complex(uniform(rng, -1, 1), uniform(rng, -1, 1));
    }
  }
  Eigen::HouseholderQR<Matrix> qr(m);
  Matrix q = qr.householderQ();
  return q;
}

// Upper critical values of chi-squared at p = 0.001.
inline double chi_squared_critical(std::size_t dof) {
  switch (dof) {
    case 1: return 10.828;
    case 2: return 13.816;
    case 3: return 16.266;
    case 4: return 18.467;
    case 5: return 20.515;
    case 6: return 22.458;
    case 7: return 24.322;
  }
  assert(false && "add the critical value for this dof");
  return 0.0;
}

}  // namespace testsupport
