#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "linsat/clause_db.hpp"
#include "linsat/echelon.hpp"
#include "linsat/trail.hpp"

namespace linsat {

struct Analysis {
  EchelonBasis neg_basis;             // learned clause, normalized
  std::uint32_t level = 0;            // asserting level
  std::vector<ClauseId> antecedents;  // R_bot first, then in resolution order
  std::size_t iterations = 0;         // additions performed
  std::size_t asserting_index = 0;    // 1-based index of the latest unit used
};

// Learns an asserting clause from a conflicting trail by repeatedly
// isolating the latest used unit and adding its reason. Clause rows are
// handled in coordinates over the reverse trail basis, where the isolated
// row is simply the one whose leading coordinate is that unit.
// Requires a conflict and at least one decision on the trail.
Analysis analyze(const Trail& trail, const ClauseDb& db);

// Smallest level whose unit prefix makes the clause propagate or conflict.
// The clause must conflict with the whole trail (ContractViolation).
std::uint32_t asserting_level(const EchelonBasis& neg_basis, const Trail& trail);

}  // namespace linsat
