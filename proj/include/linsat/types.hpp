#pragma once

#include <cstdint>
#include <string>

namespace linsat {

// Clause identifiers double as proof-line ids. Input clauses are numbered
// 1..m in file order (after tautologies are dropped); 0 is never a clause.
enum class ClauseId : std::uint32_t {};

inline constexpr ClauseId kNoClause{0};

constexpr std::uint32_t raw(ClauseId id) { return static_cast<std::uint32_t>(id); }
constexpr ClauseId make_id(std::uint64_t v) { return ClauseId{static_cast<std::uint32_t>(v)}; }
inline std::string to_string(ClauseId id) { return std::to_string(raw(id)); }

}  // namespace linsat
