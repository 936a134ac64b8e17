#pragma once

#include <string>

#include "wignerlab/consistency.hpp"

namespace wignerlab {

// Machine-readable report. Key order is fixed and floats carry 17
// significant digits, so identical inputs produce byte-identical output.
std::string report_to_json(const ConsistencyReport& report);

// Human-readable rendering of the same data.
std::string report_to_text(const ConsistencyReport& report);

}  // namespace wignerlab
