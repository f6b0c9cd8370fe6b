#pragma once

#include <cstdint>
#include <string>

namespace gamcal {

// Shortest-round-trip style formatting: 17 significant digits reproduce the
// exact double on parse, and the text is identical across runs.
std::string format_double(double x);

// strtod wrapper that rejects trailing garbage.
double parse_double(const std::string& text, bool* ok);

// FNV-1a 64-bit over a byte string, rendered as 16 lowercase hex digits.
std::string fnv1a64_hex(const std::string& bytes);

}  // namespace gamcal
