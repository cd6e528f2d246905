#pragma once

#include "pcsn/instance.hpp"

#include <string>

namespace pcsn {

/// JSON instance format:
///   {"vertices": n,
///    "edges": [[u, v, "cost"], ...],
///    "demands": [[s, t], ...],
///    "penalty": {"kind": "additive"|"capped"|"table", "values": [...],
///                "cap": "B" (capped only)},
///    "root": r (optional),
///    "points": [[x, y], ...] (optional, geometric instances)}
/// Costs and penalties are decimal strings of rationals ("p/q" when the
/// denominator is not 2^a*5^b). Serialization is canonical: loading a file
/// and saving it again is byte-identical.
Instance parse_instance_json(const std::string& text);
Instance load_instance(const std::string& path);
std::string instance_to_json(const Instance& inst);
void save_instance(const Instance& inst, const std::string& path);

} // namespace pcsn
