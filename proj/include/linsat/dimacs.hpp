#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "linsat/clause_db.hpp"
#include "linsat/equation.hpp"

namespace linsat {

enum class InputFormat { Xnf, Cnf, CnfXor };

// "p xnf n m"; clauses are XOR terms ending in 0, a term being signed
// literals joined by '+' ("1+-2+3"). A term is true iff an odd number of
// its literals are true.
ClauseDb parse_xnf(std::string_view text);
// Plain DIMACS CNF.
ClauseDb parse_cnf(std::string_view text);
// DIMACS CNF extended with "x l1 l2 ... 0" XOR constraint lines; each XOR
// line becomes a single-equation clause.
ClauseDb parse_cnfxor(std::string_view text);
// Dispatches on the header; "p cnf" inputs accept XOR lines.
ClauseDb parse_dimacs(std::string_view text, InputFormat* detected = nullptr);

ClauseDb read_formula_file(const std::string& path, InputFormat* detected = nullptr);
std::string read_text_file(const std::string& path);

// Single term for a nonconstant equation: ascending literals, the first one
// negated when the RHS is 0.
std::string render_term(const Equation& e);
// Parses one term over nvars variables (throws ParseError with `line`).
Equation parse_term(std::string_view token, std::size_t nvars, std::size_t line);
// Disjuncts of a clause as space-separated terms (no terminating 0).
std::string render_clause(const LinClause& clause);

std::string write_xnf(const ClauseDb& db);
// Every disjunct must be a single-variable equation.
std::string write_cnf(const ClauseDb& db);
bool is_cnf_shaped(const ClauseDb& db);

// 1-based variables as DIMACS literals: positive when the value is 1.
std::string render_model(const std::vector<std::uint8_t>& values);

}  // namespace linsat
