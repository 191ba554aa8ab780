#pragma once

#include <string>
#include <string_view>

#include "bskernel/special_functions.hpp"

namespace bskernel {

// Textual complex numbers: "a", "bi", "a+bi", "a-bi" with C-locale decimal
// reals (exponents allowed). A bare "i" means 1i. Throws InputError on
// anything else.
cdouble parse_complex(std::string_view text);

// Always "a+bi" / "a-bi" with 17 significant digits, so
// parse_complex(format_complex(z)) == z bit for bit (signed zeros included).
std::string format_complex(cdouble z);

// Shortest 17-significant-digit rendering of a real, C locale.
std::string format_real(double x);

}  // namespace bskernel
