#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "linsat/clause.hpp"
#include "linsat/echelon.hpp"
#include "linsat/types.hpp"

namespace linsat {

struct CsidsParams {
  double base = 1.0;    // A0, activity of a fresh asserting clause
  double bump = 1.0;    // Delta, added to every clause used in analysis
  double decay = 0.98;  // alpha, multiplicative decay per conflict

  void validate() const;
};

struct CompactionReport {
  std::vector<ClauseId> removed;
  std::size_t rewritten = 0;
};

// Clause store keyed by monotone ids. Live clauses are kept in id order,
// which is also the cyclic propagation order.
class ClauseDb {
 public:
  ClauseDb() = default;
  explicit ClauseDb(std::size_t nvars);

  std::size_t nvars() const { return nvars_; }
  std::size_t size() const { return clauses_.size(); }
  bool empty() const { return clauses_.empty(); }
  std::size_t original_count() const { return original_count_; }
  std::size_t tautologies_dropped() const { return tautologies_dropped_; }
  void note_tautology() { ++tautologies_dropped_; }
  // Largest id handed out so far.
  ClauseId last_id() const { return make_id(next_id_ - 1); }

  // Normalizes a disjunction; tautologies are counted and dropped.
  std::optional<ClauseId> add_disjunction(std::span<const Equation> disjuncts);
  ClauseId add_original(EchelonBasis neg_basis);
  ClauseId add_learned(EchelonBasis neg_basis);
  // Consumes an id without storing a clause (proof-only lines).
  ClauseId reserve_id() { return make_id(next_id_++); }

  std::span<LinClause> clauses() { return clauses_; }
  std::span<const LinClause> clauses() const { return clauses_; }
  LinClause& at_position(std::size_t pos) { return clauses_[pos]; }
  const LinClause& at_position(std::size_t pos) const { return clauses_[pos]; }
  // Position of a live clause in clauses(), or npos.
  std::size_t position_of(ClauseId id) const;
  bool contains(ClauseId id) const { return position_of(id) != npos; }
  LinClause* find(ClauseId id);
  const LinClause* find(ClauseId id) const;
  // Throws UsageError for unknown ids.
  const LinClause& get(ClauseId id) const;
  LinClause& get(ClauseId id);

  void remove(std::span<const ClauseId> ids);

  // CSIDS.
  const CsidsParams& csids() const { return csids_; }
  void set_csids(const CsidsParams& params);
  double bump_scale() const { return inc_; }
  // One conflict: decay everything, bump the clauses used in analysis and
  // give `fresh` (if any) the base activity.
  void bump_and_decay(std::span<const ClauseId> used, ClauseId fresh = kNoClause);
  // Live clause ids by decreasing activity, ties by increasing id.
  std::span<const ClauseId> activity_order() const { return order_; }

  // Removes clauses satisfied by the level-0 units and reduces the rest.
  CompactionReport compact(const EchelonBasis& level0);
  const EchelonBasis& level0_subst() const { return level0_subst_; }

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

 private:
  static constexpr double kRescaleLimit = 1e100;

  ClauseId insert(EchelonBasis neg_basis, bool learned);
  void rebuild_index();
  void rebuild_order();
  bool ranks_before(ClauseId a, ClauseId b) const;

  std::size_t nvars_ = 0;
  std::vector<LinClause> clauses_;
  std::vector<std::uint32_t> pos_;  // id -> position + 1, 0 when absent
  std::vector<ClauseId> order_;
  std::uint64_t next_id_ = 1;
  std::size_t original_count_ = 0;
  std::size_t tautologies_dropped_ = 0;
  bool has_learned_ = false;
  CsidsParams csids_;
  double inc_ = 1.0;
  EchelonBasis level0_subst_;
};

}  // namespace linsat
