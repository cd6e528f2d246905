#pragma once

#include <gmpxx.h>

#include <string>

namespace pcsn {

/// Exact rational. All costs, penalties, potentials and dual values in this
/// library are Rat; nothing is ever rounded.
using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

/// Parses "-12", "3.25" or "7/2". Throws DomainError on malformed input or
/// zero denominator.
Rat parse_rat(const std::string& text);

/// Exact decimal string when the reduced denominator is of the form 2^a*5^b
/// ("3.25"), otherwise the reduced fraction ("1/3"). parse_rat accepts both,
/// so serialization round-trips losslessly.
std::string rat_to_string(const Rat& value);

/// Always "num/den" (den omitted when 1); used for the sidecar fields.
std::string rat_to_fraction(const Rat& value);

} // namespace pcsn
