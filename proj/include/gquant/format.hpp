#pragma once

#include <string>

#include "gquant/linalg.hpp"

namespace gquant {

// "a+bi" with `digits` significant digits; pure reals and pure imaginaries
// drop the zero part, and values within 1e-12 of an integer print as one.
std::string format_complex(cd z, int digits = 12);
std::string format_real(double x, int digits = 12);
// Compact scientific notation for residuals, e.g. "3.2e-15".
std::string format_residual(double x);

}  // namespace gquant
