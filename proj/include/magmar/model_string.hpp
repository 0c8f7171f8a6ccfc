// The compact model naming convention: MAGMAR(<p>,<q>)-<ar_codes>[-<mag_codes>]
// with one copula code (n, t, g, i) per AR and MAG slot. The MAG part is
// omitted exactly when q = 0.
#pragma once

#include "magmar/model.hpp"

#include <string>

namespace magmar {

// Parses a model string into a skeleton: families fixed, parameters set to
// neutral in-domain defaults, left free for fitting. Throws
// std::invalid_argument with the offending position on grammar violations.
MagmarSpec parse_model_string(const std::string& text);

// Canonical string form; parse_model_string(format_model_string(s)) has the
// same family structure as s.
std::string format_model_string(const MagmarSpec& spec);

} // namespace magmar
