#include "pcsn/penalty.hpp"

#include "pcsn/errors.hpp"
#include "pcsn/prng.hpp"

#include <bit>

namespace pcsn {

PenaltyFn PenaltyFn::additive(std::vector<Rat> per_demand) {
  for (const Rat& p : per_demand)
    if (p < 0) throw DomainError("negative penalty");
  PenaltyFn f;
  f.kind_ = Kind::Additive;
  f.ground_ = static_cast<int>(per_demand.size());
  f.values_ = std::move(per_demand);
  return f;
}

PenaltyFn PenaltyFn::capped_additive(std::vector<Rat> per_demand, Rat cap) {
  for (const Rat& p : per_demand)
    if (p < 0) throw DomainError("negative penalty");
  if (cap < 0) throw DomainError("negative cap");
  PenaltyFn f;
  f.kind_ = Kind::CappedAdditive;
  f.ground_ = static_cast<int>(per_demand.size());
  f.values_ = std::move(per_demand);
  f.cap_ = std::move(cap);
  return f;
}

PenaltyFn PenaltyFn::table(int ground, std::vector<Rat> values) {
  if (ground < 0 || ground > 20)
    throw CapacityError("explicit penalty tables support at most 20 demands");
  if (values.size() != (std::size_t{1} << ground))
    throw DomainError("penalty table must have 2^ground entries");
  PenaltyFn f;
  f.kind_ = Kind::Table;
  f.ground_ = ground;
  f.offset_ = values[0];
  if (f.offset_ != 0)
    for (Rat& v : values) v -= f.offset_;
  for (const Rat& v : values)
    if (v < 0) throw DomainError("penalty table negative after normalization");
  f.values_ = std::move(values);
  return f;
}

PenaltyFn PenaltyFn::restricted(DemandMask forced_union) const {
  if (ground_ > kMaxMaskGround)
    throw CapacityError("restricted view needs a mask-sized ground set");
  PenaltyFn f = *this;
  f.forced_ |= forced_union & full_mask(ground_);
  return f;
}

PenaltyFn PenaltyFn::scaled(const Rat& factor) const {
  if (factor <= 0) throw DomainError("scale factor must be positive");
  PenaltyFn f = *this;
  f.scale_ *= factor;
  return f;
}

Rat PenaltyFn::base_eval(DemandMask mask) const {
  switch (kind_) {
  case Kind::Table:
    return values_[mask];
  case Kind::Additive:
  case Kind::CappedAdditive: {
    Rat sum = 0;
    DemandMask m = mask;
    while (m) {
      int i = std::countr_zero(m);
      sum += values_[i];
      m &= m - 1;
    }
    if (kind_ == Kind::CappedAdditive && sum > cap_) return cap_;
    return sum;
  }
  }
  throw DomainError("unreachable penalty kind");
}

Rat PenaltyFn::eval(DemandMask demand_set) const {
  if (ground_ > kMaxMaskGround)
    throw CapacityError("ground set too large for mask evaluation");
  if (demand_set & ~full_mask(ground_))
    throw DomainError("demand id outside ground set");
  return scale_ * base_eval(demand_set | forced_);
}

Rat PenaltyFn::eval_ids(const std::vector<int>& demand_ids) const {
  if (ground_ <= kMaxMaskGround) {
    DemandMask m = 0;
    for (int id : demand_ids) {
      if (id < 0 || id >= ground_) throw DomainError("demand id outside ground set");
      m |= DemandMask{1} << id;
    }
    return eval(m);
  }
  if (kind_ == Kind::Table) throw CapacityError("table penalty beyond mask size");
  Rat sum = 0;
  std::vector<bool> seen(ground_, false);
  for (int id : demand_ids) {
    if (id < 0 || id >= ground_) throw DomainError("demand id outside ground set");
    if (!seen[id]) {
      seen[id] = true;
      sum += values_[id];
    }
  }
  if (kind_ == Kind::CappedAdditive && sum > cap_) sum = cap_;
  return scale_ * sum;
}

PenaltyFn PenaltyFn::project(const std::vector<bool>& keep) const {
  if (static_cast<int>(keep.size()) != ground_)
    throw DomainError("projection mask size mismatch");
  if (forced_ != 0 || scale_ != 1)
    throw DomainError("projection only applies to base penalty functions");
  PenaltyFn f;
  f.kind_ = kind_;
  f.cap_ = cap_;
  f.offset_ = offset_;
  if (kind_ == Kind::Table) {
    std::vector<int> kept;
    for (int i = 0; i < ground_; ++i)
      if (keep[i]) kept.push_back(i);
    f.ground_ = static_cast<int>(kept.size());
    f.values_.resize(std::size_t{1} << f.ground_);
    for (DemandMask sub = 0; sub < (DemandMask{1} << f.ground_); ++sub) {
      DemandMask orig = 0;
      for (int j = 0; j < f.ground_; ++j)
        if (sub & (DemandMask{1} << j)) orig |= DemandMask{1} << kept[j];
      f.values_[sub] = values_[orig];
    }
  } else {
    for (int i = 0; i < ground_; ++i)
      if (keep[i]) f.values_.push_back(values_[i]);
    f.ground_ = static_cast<int>(f.values_.size());
  }
  return f;
}

AxiomReport check_penalty_axioms(const PenaltyFn& pi, int sample_count,
                                 std::uint64_t seed) {
  AxiomReport report;
  const int g = pi.ground_size();
  auto record = [&](const char* axiom, DemandMask a, DemandMask b) {
    if (report.violations.size() < 256)
      report.violations.push_back({axiom, a, b});
  };
  auto check_pair = [&](DemandMask a, DemandMask b) {
    const Rat pa = pi.eval(a), pb = pi.eval(b);
    if (pa < 0) record("nonnegative", a, a);
    if ((a & b) == a && a != b && pa > pb) record("monotonicity", a, b);
    if (pa + pb < pi.eval(a | b) + pi.eval(a & b)) record("submodularity", a, b);
  };
  if (g <= 12) {
    report.exhaustive = true;
    const DemandMask all = full_mask(g);
    for (DemandMask a = 0; a <= all; ++a)
      for (DemandMask b = a; b <= all; ++b) {
        check_pair(a, b);
        if (a == all && b == all) return report;
      }
    return report;
  }
  if (g > kMaxMaskGround) {
    // Only additive/capped kinds can be this large; both satisfy the axioms
    // by construction, so there is nothing to sample.
    report.exhaustive = false;
    return report;
  }
  Prng rng(seed);
  for (int i = 0; i < sample_count; ++i) {
    DemandMask a = rng.next() & full_mask(g);
    DemandMask b = rng.next() & full_mask(g);
    check_pair(a & b, a); // nested pair for monotonicity
    check_pair(a, b);
  }
  return report;
}

} // namespace pcsn
