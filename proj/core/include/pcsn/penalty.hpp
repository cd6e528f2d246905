#pragma once

#include "pcsn/rational.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace pcsn {

/// Demand subsets are bitmasks over demand ids. Subset-valued operations
/// require a ground set of at most kMaxMaskGround demands; instances may be
/// larger (e.g. gadget exports), they just cannot be fed to the solvers.
using DemandMask = std::uint64_t;
inline constexpr int kMaxMaskGround = 63;

inline DemandMask full_mask(int ground) {
  return ground == 0 ? 0 : (~DemandMask{0} >> (64 - ground));
}

/// Monotone nonnegative submodular penalty over demands, value-oracle style.
/// Three base kinds (additive, capped-additive, explicit table) plus two
/// derived views that solvers construct on the fly:
///   restricted(U): D -> pi(D | U)   (stays submodular, pi'(empty) may be > 0)
///   scaled(c):     D -> c * pi(D)
class PenaltyFn {
public:
  enum class Kind { Additive, CappedAdditive, Table };

  static PenaltyFn additive(std::vector<Rat> per_demand);
  static PenaltyFn capped_additive(std::vector<Rat> per_demand, Rat cap);
  /// values has 2^ground entries indexed by bitmask. If values[0] > 0 the
  /// whole table is shifted down and the offset recorded (normalization).
  static PenaltyFn table(int ground, std::vector<Rat> values);

  PenaltyFn restricted(DemandMask forced_union) const;
  PenaltyFn scaled(const Rat& factor) const;

  int ground_size() const { return ground_; }
  Kind kind() const { return kind_; }
  const std::vector<Rat>& per_demand() const { return values_; }
  const Rat& cap() const { return cap_; }
  const Rat& normalization_offset() const { return offset_; }
  DemandMask forced_union() const { return forced_; }
  const Rat& scale_factor() const { return scale_; }

  /// pi(D) for D given as a bitmask. Requires ground_size() <= kMaxMaskGround.
  Rat eval(DemandMask demand_set) const;

  /// pi(D) for an explicit id list; works for any ground size when additive
  /// or capped-additive.
  Rat eval_ids(const std::vector<int>& demand_ids) const;

  /// Drops a demand from the ground set (used when stripping s == t demands
  /// at load). keep[i] tells whether old id i survives; ids are compacted.
  PenaltyFn project(const std::vector<bool>& keep) const;

  bool is_additive() const { return kind_ == Kind::Additive; }

private:
  Kind kind_ = Kind::Additive;
  int ground_ = 0;
  std::vector<Rat> values_; // per-demand (additive/capped) or 2^k table
  Rat cap_ = 0;
  Rat offset_ = 0;          // subtracted from an explicit table at load
  DemandMask forced_ = 0;   // restricted view
  Rat scale_ = 1;           // scaled view

  Rat base_eval(DemandMask mask) const;
};

/// One violated axiom instance found by check_penalty_axioms.
struct AxiomViolation {
  std::string axiom; // "monotonicity" or "submodularity" or "nonnegative"
  DemandMask a = 0;
  DemandMask b = 0;
};

struct AxiomReport {
  std::vector<AxiomViolation> violations;
  bool exhaustive = false;
  bool ok() const { return violations.empty(); }
};

/// Exhaustive over all (A, B) pairs when ground <= 12, otherwise checks
/// sample_count seeded random pairs. Reports every violated pair (capped at
/// 256 entries to keep reports readable).
AxiomReport check_penalty_axioms(const PenaltyFn& pi, int sample_count = 4096,
                                 std::uint64_t seed = 1);

} // namespace pcsn
