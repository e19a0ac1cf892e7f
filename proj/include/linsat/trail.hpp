#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "linsat/echelon.hpp"
#include "linsat/types.hpp"

namespace linsat {

struct UnitInfo {
  ClauseId reason = kNoClause;  // kNoClause for decisions
  std::uint32_t level = 0;
  std::uint64_t gen = 0;  // unique per push, validates watch caches

  bool is_decision() const { return reason == kNoClause; }
};

// True units f_1..f_m in insertion order, kept as an echelon basis, with
// reasons and decision levels. A derived contradiction is recorded
// separately and is not stored in the basis.
class Trail {
 public:
  Trail() = default;
  explicit Trail(std::size_t nvars);

  std::size_t nvars() const { return units_.nvars(); }
  std::size_t width() const { return units_.width(); }
  std::size_t size() const { return units_.size(); }
  bool full() const { return size() == nvars(); }
  const EchelonBasis& units() const { return units_; }
  const Equation& unit(std::size_t i) const { return units_.row(i); }
  const UnitInfo& info(std::size_t i) const { return info_[i]; }
  std::uint32_t level() const { return static_cast<std::uint32_t>(level_starts_.size()); }
  // Number of units whose level is at most k.
  std::size_t level_end(std::uint32_t k) const;
  bool has_decision() const { return level() > 0; }

  bool in_conflict() const { return conflict_.has_value(); }
  ClauseId conflict_reason() const { return *conflict_; }
  void set_conflict(ClauseId reason);

  // Opens a new level with f. Decisions whose span is already determined
  // are rejected (AlreadyInSpan or Inconsistent) without changing the trail.
  InsertOutcome decide(const Equation& f);
  // Appends a propagated unit (reduced or not) at the current level.
  void propagate(const Equation& f, ClauseId reason);

  // Drops every unit above level k (k < level()) and clears the conflict.
  void backjump(std::uint32_t k);
  // backjump(0) that is also allowed at level 0.
  void restart();

  // Units of level 0 as a standalone basis.
  EchelonBasis level0_basis() const;

  // Watch cache validity: a value computed when size() was `stamp` is still
  // valid for the prefix if the unit at stamp-1 has generation `gen`.
  bool prefix_intact(std::size_t stamp, std::uint64_t gen) const {
    if (stamp == 0) return true;
    return stamp <= size() && info_[stamp - 1].gen == gen;
  }
  std::uint64_t gen_at_size() const { return size() == 0 ? 0 : info_.back().gen; }

 private:
  EchelonBasis units_;
  std::vector<UnitInfo> info_;
  std::vector<std::size_t> level_starts_;
  std::optional<ClauseId> conflict_;
};

}  // namespace linsat
