#pragma once

#include <string>

#include "rankgap/numeric.hpp"

namespace rankgap {

// Parses the shared matrix literal format: a JSON array of rows of
// integers, e.g. [[0,1],[-1,-1]], or whitespace/semicolon text such as
// "0 1; -1 -1". A flat JSON array reads as a single row (so "[-1]" is the
// 1x1 matrix). Throws ParseError on malformed or non-square input.
IntMat parse_matrix(const std::string& text);

// Single-line JSON-style rendering, e.g. "[[0,1],[-1,-1]]".
std::string format_matrix(const IntMat& a);

}  // namespace rankgap
