#pragma once

#include <complex>
#include <string>

namespace wignerlab {

// 17 significant digits; uniquely identifies the double on reparse.
// Exponents are normalized to the compact form used by the file format
// ("1e-9", not "1e-09").
std::string format_amplitude(double value);

// Shortest decimal that reparses to the same double (used for tolerances
// and basis angles, where the canonical files favor compact spellings).
std::string format_shortest(double value);

// Canonical complex literal: bare real when imag == 0, "(re+imi)" otherwise.
std::string format_complex(const std::complex<double>& value);

}  // namespace wignerlab
