#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>

namespace fairassign {

// All probabilities, LP coefficients and comparison vectors are exact
// rationals. The lexicographic orders and the zero tests in the rule
// algorithms are equality tests, so no floating point is used outside of
// display formatting.
using Rat = mpq_class;

// Parses "p", "-p/q" or "p/q" (not necessarily in lowest terms).
// Returns nullopt on malformed input or zero denominator.
std::optional<Rat> rat_from_string(const std::string& text);

// Canonical "p/q", or just "p" when the denominator is 1.
std::string rat_to_string(const Rat& value);

// Display-only decimal string, rounded half-even to `places` digits.
std::string rat_to_decimal(const Rat& value, int places = 6);

}  // namespace fairassign
