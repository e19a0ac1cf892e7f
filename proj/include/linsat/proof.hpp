#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "linsat/clause_db.hpp"
#include "linsat/echelon.hpp"
#include "linsat/equation.hpp"
#include "linsat/types.hpp"

namespace linsat {

// One line of an LRUP-style proof with parity terms in place of literals.
//   add:    <id> <term>* 0 <hint>* 0
//   delete: <id> d <id>* 0
struct ProofLine {
  enum class Kind { Add, Delete };
  Kind kind = Kind::Add;
  ClauseId id = kNoClause;
  std::vector<Equation> equations;  // disjuncts of an added clause
  std::vector<ClauseId> ids;        // hints (Add) or deleted ids (Delete)

  bool is_add() const { return kind == Kind::Add; }
};

struct Proof {
  std::size_t nvars = 0;
  std::vector<ProofLine> lines;
};

std::string format_proof_line(const ProofLine& line);
std::string write_proof(const Proof& proof);
Proof parse_proof(std::string_view text, std::size_t nvars);
Proof read_proof_file(const std::string& path, std::size_t nvars);

// Collects proof lines and optionally streams them (flushed per line).
class ProofLog {
 public:
  explicit ProofLog(std::size_t nvars = 0, std::ostream* stream = nullptr);

  void add(ClauseId id, std::vector<Equation> equations, std::vector<ClauseId> hints);
  void add_clause(ClauseId id, const EchelonBasis& neg_basis, std::vector<ClauseId> hints);
  void remove(ClauseId last_id, std::vector<ClauseId> ids);

  const Proof& proof() const { return proof_; }
  Proof take() { return std::move(proof_); }

 private:
  void emit(const ProofLine& line);

  Proof proof_;
  std::ostream* stream_;
};

// Resolves a hint id to the linear negation the checker will see for it.
using ClauseLookup = std::function<const EchelonBasis*(ClauseId)>;

// Turns candidate hints (already in replay order) into a minimal-ish valid
// hint list for deriving the clause with negation `neg_basis`: hints that do
// nothing are dropped, everything after the first conflict is dropped, and
// hints whose propagated unit does not contribute to the conflict are
// trimmed. Throws ContractViolation when the candidates do not refute
// the negation by unit propagation.
std::vector<ClauseId> finalize_hints(const EchelonBasis& neg_basis, std::span<const ClauseId> candidates,
                                     const ClauseLookup& lookup);

struct Verdict {
  bool accepted = false;
  std::size_t line = 0;  // 1-based proof line of the failure, 0 if none
  std::string reason;
};

// Independent LRUP(+) checker: no watches and no code shared with the
// solver's propagation.
Verdict check_proof(const ClauseDb& formula, const Proof& proof);

}  // namespace linsat
