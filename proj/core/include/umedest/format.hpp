#pragma once

#include <string>

namespace umedest {

// %.6g — six significant digits, the CSV table format.
std::string fmt_g6(double v);

// %.6f — six decimal places, used for single-record outputs.
std::string fmt_f6(double v);

}  // namespace umedest
