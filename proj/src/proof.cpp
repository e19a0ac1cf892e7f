#include "linsat/proof.hpp"

#include <algorithm>
#include <charconv>
#include <ostream>

#include "linsat/dimacs.hpp"
#include "linsat/errors.hpp"
#include "linsat/propagate.hpp"

namespace linsat {

std::string format_proof_line(const ProofLine& line) {
  std::string out = to_string(line.id);
  if (line.is_add()) {
    for (const Equation& e : line.equations) out += " " + render_term(e);
    out += " 0";
  } else {
    out += " d";
  }
  for (ClauseId h : line.ids) out += " " + to_string(h);
  out += " 0";
  return out;
}

std::string write_proof(const Proof& proof) {
  std::string out;
  for (const ProofLine& l : proof.lines) out += format_proof_line(l) + "\n";
  return out;
}

namespace {

std::uint64_t parse_id(std::string_view tok, std::size_t line) {
  std::uint64_t v = 0;
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || p != tok.data() + tok.size() || v > UINT32_MAX) {
    throw ParseError(line, "malformed clause id '" + std::string(tok) + "'");
  }
  return v;
}

}  // namespace

Proof parse_proof(std::string_view text, std::size_t nvars) {
  Proof proof;
  proof.nvars = nvars;
  std::size_t lineno = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t nl = text.find('\n', pos);
    std::string_view l = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() : nl + 1;
    ++lineno;
    std::vector<std::string_view> toks;
    std::size_t i = 0;
    while (i < l.size()) {
      while (i < l.size() && (l[i] == ' ' || l[i] == '\t' || l[i] == '\r')) ++i;
      std::size_t j = i;
      while (j < l.size() && l[j] != ' ' && l[j] != '\t' && l[j] != '\r') ++j;
      if (j > i) toks.push_back(l.substr(i, j - i));
      i = j;
    }
    if (toks.empty() || toks[0][0] == 'c') continue;

    ProofLine pl;
    pl.id = make_id(parse_id(toks[0], lineno));
    std::size_t k = 1;
    if (k < toks.size() && toks[k] == "d") {
      pl.kind = ProofLine::Kind::Delete;
      ++k;
    } else {
      for (; k < toks.size() && toks[k] != "0"; ++k) pl.equations.push_back(parse_term(toks[k], nvars, lineno));
      if (k == toks.size()) throw ParseError(lineno, "clause is not terminated by 0");
      ++k;
    }
    for (; k < toks.size() && toks[k] != "0"; ++k) pl.ids.push_back(make_id(parse_id(toks[k], lineno)));
    if (k == toks.size()) throw ParseError(lineno, "id list is not terminated by 0");
    if (k + 1 != toks.size()) throw ParseError(lineno, "trailing tokens after final 0");
    proof.lines.push_back(std::move(pl));
  }
  return proof;
}

Proof read_proof_file(const std::string& path, std::size_t nvars) {
  return parse_proof(read_text_file(path), nvars);
}

ProofLog::ProofLog(std::size_t nvars, std::ostream* stream) : stream_(stream) { proof_.nvars = nvars; }

void ProofLog::emit(const ProofLine& line) {
  if (stream_ != nullptr) {
    *stream_ << format_proof_line(line) << '\n';
    stream_->flush();
  }
}

void ProofLog::add(ClauseId id, std::vector<Equation> equations, std::vector<ClauseId> hints) {
  ProofLine l;
  l.kind = ProofLine::Kind::Add;
  l.id = id;
  l.equations = std::move(equations);
  l.ids = std::move(hints);
  emit(l);
  proof_.lines.push_back(std::move(l));
}

namespace {

// Fully reduced rows sorted by pivot, so equal spans render identically.
std::vector<Equation> reduced_rows(const EchelonBasis& b) {
  std::vector<Equation> rows(b.rows().begin(), b.rows().end());
  for (std::size_t i = rows.size(); i-- > 0;) {
    for (std::size_t j = 0; j < i; ++j) {
      if (rows[j].test(b.pivot(i))) rows[j] += rows[i];
    }
  }
  std::vector<std::size_t> idx(rows.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](std::size_t x, std::size_t y) { return b.pivot(x) < b.pivot(y); });
  std::vector<Equation> out;
  out.reserve(rows.size());
  for (std::size_t i : idx) out.push_back(rows[i]);
  return out;
}

}  // namespace

void ProofLog::add_clause(ClauseId id, const EchelonBasis& neg_basis, std::vector<ClauseId> hints) {
  std::vector<Equation> eqs;
  eqs.reserve(neg_basis.size());
  for (const Equation& r : reduced_rows(neg_basis)) eqs.push_back(r.negated());
  add(id, std::move(eqs), std::move(hints));
}

void ProofLog::remove(ClauseId last_id, std::vector<ClauseId> ids) {
  if (ids.empty()) return;
  ProofLine l;
  l.kind = ProofLine::Kind::Delete;
  l.id = last_id;
  l.ids = std::move(ids);
  emit(l);
  proof_.lines.push_back(std::move(l));
}

namespace {

struct DryRun {
  EchelonBasis scratch;
  std::vector<ClauseId> kept;
  std::vector<std::size_t> unit_row;  // scratch row of each kept propagation
  bool conflict = false;
};

constexpr std::size_t kGreedyLimit = 48;

DryRun dry_run(const EchelonBasis& neg_basis, std::span<const ClauseId> ids, const ClauseLookup& lookup) {
  DryRun d;
  d.scratch = EchelonBasis(neg_basis.width());
  for (const Equation& r : neg_basis.rows()) d.scratch.insert(r);
  for (ClauseId id : ids) {
    const EchelonBasis* c = lookup(id);
    if (c == nullptr) throw ContractViolation("hint " + to_string(id) + " does not name a proof clause");
    ClauseStatus s = classify_clause(d.scratch, *c);
    if (s.kind == ClauseStatus::Kind::NoAction) continue;
    d.kept.push_back(id);
    if (s.conflict()) {
      d.unit_row.push_back(EchelonBasis::npos);
      d.conflict = true;
      return d;
    }
    d.scratch.insert(s.unit);
    d.unit_row.push_back(d.scratch.size() - 1);
  }
  return d;
}

void mark_support(const EchelonBasis& clause, const EchelonBasis& scratch, std::vector<char>& marked) {
  const std::size_t m = scratch.size();
  for (const Equation& r : clause.rows()) {
    Equation c = coordinates(r, scratch);
    for (std::size_t b = c.next_set(1); b != Equation::npos; b = c.next_set(b + 1)) {
      marked[row_of_coordinate_bit(b, m)] = 1;
    }
  }
}

}  // namespace

std::vector<ClauseId> finalize_hints(const EchelonBasis& neg_basis, std::span<const ClauseId> candidates,
                                     const ClauseLookup& lookup) {
  DryRun d = dry_run(neg_basis, candidates, lookup);
  if (!d.conflict) throw ContractViolation("hints do not refute the derived clause");

  std::vector<char> marked(d.scratch.size(), 0);
  mark_support(*lookup(d.kept.back()), d.scratch, marked);
  std::vector<char> keep(d.kept.size(), 0);
  keep.back() = 1;
  for (std::size_t j = d.kept.size() - 1; j-- > 0;) {
    const std::size_t row = d.unit_row[j];
    if (!marked[row]) continue;
    keep[j] = 1;
    marked[row] = 0;
    mark_support(*lookup(d.kept[j]), d.scratch, marked);
    marked[row] = 0;
  }
  std::vector<ClauseId> trimmed;
  for (std::size_t j = 0; j < d.kept.size(); ++j) {
    if (keep[j]) trimmed.push_back(d.kept[j]);
  }
  DryRun again = dry_run(neg_basis, trimmed, lookup);
  if (!again.conflict || again.kept.size() != trimmed.size()) trimmed = d.kept;
  // Units can be linearly redundant even when used in coordinates; drop
  // hints one at a time while the rest still replays exactly.
  if (trimmed.size() <= kGreedyLimit) {
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t j = 0; j + 1 < trimmed.size(); ++j) {
        std::vector<ClauseId> fewer = trimmed;
        fewer.erase(fewer.begin() + static_cast<std::ptrdiff_t>(j));
        DryRun r = dry_run(neg_basis, fewer, lookup);
        if (r.conflict && r.kept.size() == fewer.size()) {
          trimmed = std::move(fewer);
          changed = true;
          --j;
        }
      }
    }
  }
  return trimmed;
}

}  // namespace linsat
