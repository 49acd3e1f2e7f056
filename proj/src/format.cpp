#include "gquant/format.hpp"

#include <cmath>
#include <cstdio>

namespace gquant {

std::string format_real(double x, int digits) {
  if (std::abs(x) < 1e-12) return "0";
  const double r = std::round(x);
  if (std::abs(x - r) < 1e-12) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.0f", r);
    return buf;
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

std::string format_complex(cd z, int digits) {
  const double re = z.real(), im = z.imag();
  if (std::abs(im) < 1e-12) return format_real(re, digits);
  std::string ims;
  if (std::abs(std::abs(im) - 1.0) < 1e-12)
    ims = "";
  else
    ims = format_real(std::abs(im), digits);
  if (std::abs(re) < 1e-12) return (im < 0 ? "-" : "") + ims + "i";
  return format_real(re, digits) + (im < 0 ? "-" : "+") + ims + "i";
}

std::string format_residual(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", x);
  return buf;
}

}  // namespace gquant
