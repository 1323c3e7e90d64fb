#pragma once

#include <string>

#include "freeclt/measure.hpp"

namespace freeclt {

/// Parses a measure expression:
///   measure := "semicircle"
///            | "arcsine(" num "," num ")"
///            | "meixner(" num "," num "," num ")"
///            | "atoms(" pair { "," pair } ")" [ ":std" ]
///   pair    := "(" num "," num ")"            position, weight
/// Whitespace is ignored everywhere; numbers are decimal with optional sign
/// and exponent; ":std" standardizes the atomic measure. Violations raise
/// ParseError carrying the byte offset of the offending character.
Measure parse_measure(const std::string& spec);

} // namespace freeclt
