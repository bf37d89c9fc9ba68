#pragma once

#include <string>

namespace genhilbert {

// Locale-independent decimal text with 17 significant digits ("inf"/"nan" for
// non-finite values).
std::string format_double(double x);

}  // namespace genhilbert
