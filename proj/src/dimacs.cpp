#include "linsat/dimacs.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "linsat/errors.hpp"

namespace linsat {

namespace {

struct Header {
  std::string kind;
  std::size_t nvars = 0;
  std::size_t nclauses = 0;
};

long long parse_int(std::string_view s, std::size_t line) {
  long long v = 0;
  const char* end = s.data() + s.size();
  auto [p, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || p != end) throw ParseError(line, "malformed integer '" + std::string(s) + "'");
  return v;
}

std::size_t parse_var(long long lit, std::size_t nvars, std::size_t line) {
  std::size_t v = static_cast<std::size_t>(lit < 0 ? -lit : lit);
  if (v == 0 || v > nvars) throw ParseError(line, "literal " + std::to_string(lit) + " out of range");
  return v;
}

// Splits the input into lines, strips comments, and reads the header.
class Reader {
 public:
  explicit Reader(std::string_view text) : text_(text) {}

  Header header() {
    std::string_view l;
    while (next_line(l)) {
      if (l.empty()) continue;
      std::istringstream in{std::string(l)};
      std::string p, kind;
      long long n = -1, m = -1;
      if (!(in >> p >> kind >> n >> m) || p != "p" || n < 0 || m < 0) {
        throw ParseError(line_, "bad header '" + std::string(l) + "'");
      }
      std::string extra;
      if (in >> extra) throw ParseError(line_, "trailing tokens in header");
      return {kind, static_cast<std::size_t>(n), static_cast<std::size_t>(m)};
    }
    throw ParseError(line_, "missing header");
  }

  // Next non-comment line, trimmed; false at end of input.
  bool next_line(std::string_view& out) {
    while (pos_ < text_.size()) {
      std::size_t nl = text_.find('\n', pos_);
      std::string_view l =
          text_.substr(pos_, nl == std::string_view::npos ? std::string_view::npos : nl - pos_);
      pos_ = nl == std::string_view::npos ? text_.size() : nl + 1;
      ++line_;
      while (!l.empty() && (l.back() == '\r' || l.back() == ' ' || l.back() == '\t')) l.remove_suffix(1);
      while (!l.empty() && (l.front() == ' ' || l.front() == '\t')) l.remove_prefix(1);
      if (!l.empty() && (l.front() == 'c' || l.front() == '%')) continue;
      out = l;
      return true;
    }
    return false;
  }

  std::size_t line() const { return line_; }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 0;
};

std::vector<std::string_view> split_ws(std::string_view l) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < l.size()) {
    while (i < l.size() && (l[i] == ' ' || l[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < l.size() && l[j] != ' ' && l[j] != '\t') ++j;
    if (j > i) out.push_back(l.substr(i, j - i));
    i = j;
  }
  return out;
}

enum class Dialect { Xnf, Cnf, CnfXor };

ClauseDb parse_body(Reader& rd, const Header& h, Dialect dialect) {
  ClauseDb db(h.nvars);
  std::vector<Equation> pending;
  std::size_t clauses = 0;
  bool open = false;
  std::size_t open_line = 0;
  auto finish = [&](std::size_t line) {
    if (clauses == h.nclauses) throw ParseError(line, "more clauses than declared in header");
    db.add_disjunction(pending);
    pending.clear();
    ++clauses;
    open = false;
  };
  std::string_view l;
  while (rd.next_line(l)) {
    if (l.empty()) continue;
    std::vector<std::string_view> toks = split_ws(l);
    if (toks.front() == "x") {
      if (dialect != Dialect::CnfXor) throw ParseError(rd.line(), "XOR line in a plain formula");
      if (open) throw ParseError(rd.line(), "XOR line inside an unterminated clause");
      if (toks.size() < 2 || toks.back() != "0") throw ParseError(rd.line(), "missing terminating 0");
      std::vector<std::size_t> vars;
      bool rhs = true;
      for (std::size_t i = 1; i + 1 < toks.size(); ++i) {
        long long lit = parse_int(toks[i], rd.line());
        vars.push_back(parse_var(lit, h.nvars, rd.line()));
        if (lit < 0) rhs = !rhs;
      }
      pending.push_back(Equation::from_vars(h.nvars, vars, rhs));
      finish(rd.line());
      continue;
    }
    for (std::string_view t : toks) {
      if (!open) {
        open = true;
        open_line = rd.line();
      }
      if (t == "0") {
        finish(rd.line());
        continue;
      }
      if (dialect == Dialect::Xnf) {
        pending.push_back(parse_term(t, h.nvars, rd.line()));
      } else {
        long long lit = parse_int(t, rd.line());
        std::size_t v = parse_var(lit, h.nvars, rd.line());
        std::size_t vars[1] = {v};
        pending.push_back(Equation::from_vars(h.nvars, vars, lit > 0));
      }
    }
  }
  if (open) throw ParseError(open_line, "missing terminating 0");
  if (clauses != h.nclauses) {
    throw ParseError(rd.line(), "header declares " + std::to_string(h.nclauses) + " clauses, found " +
                                    std::to_string(clauses));
  }
  return db;
}

ClauseDb parse_with(std::string_view text, const char* kind, Dialect dialect) {
  Reader rd(text);
  Header h = rd.header();
  if (h.kind != kind) throw ParseError(rd.line(), "expected 'p " + std::string(kind) + "' header");
  return parse_body(rd, h, dialect);
}

}  // namespace

Equation parse_term(std::string_view token, std::size_t nvars, std::size_t line) {
  std::vector<std::size_t> vars;
  bool rhs = true;
  std::size_t i = 0;
  while (true) {
    std::size_t j = token.find('+', i);
    std::string_view piece = token.substr(i, j == std::string_view::npos ? std::string_view::npos : j - i);
    if (piece.empty()) throw ParseError(line, "empty XOR term in '" + std::string(token) + "'");
    long long lit = parse_int(piece, line);
    vars.push_back(parse_var(lit, nvars, line));
    if (lit < 0) rhs = !rhs;
    if (j == std::string_view::npos) break;
    i = j + 1;
  }
  return Equation::from_vars(nvars, vars, rhs);
}

ClauseDb parse_xnf(std::string_view text) { return parse_with(text, "xnf", Dialect::Xnf); }
ClauseDb parse_cnf(std::string_view text) { return parse_with(text, "cnf", Dialect::Cnf); }
ClauseDb parse_cnfxor(std::string_view text) { return parse_with(text, "cnf", Dialect::CnfXor); }

ClauseDb parse_dimacs(std::string_view text, InputFormat* detected) {
  Reader rd(text);
  Header h = rd.header();
  if (h.kind == "xnf") {
    if (detected) *detected = InputFormat::Xnf;
    return parse_body(rd, h, Dialect::Xnf);
  }
  if (h.kind == "cnf") {
    if (detected) *detected = InputFormat::Cnf;
    return parse_body(rd, h, Dialect::CnfXor);
  }
  throw ParseError(rd.line(), "unknown format '" + h.kind + "'");
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ClauseDb read_formula_file(const std::string& path, InputFormat* detected) {
  return parse_dimacs(read_text_file(path), detected);
}

std::string render_term(const Equation& e) {
  if (e.is_constant()) throw UsageError("constant equation has no term rendering");
  std::vector<std::size_t> vars = e.support();
  std::string out;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (i > 0) out += '+';
    if (i == 0 && !e.rhs()) out += '-';
    out += std::to_string(vars[i]);
  }
  return out;
}

std::string render_clause(const LinClause& clause) {
  std::string out;
  for (const Equation& r : clause.neg_basis.rows()) {
    if (!out.empty()) out += ' ';
    out += render_term(r.negated());
  }
  return out;
}

std::string write_xnf(const ClauseDb& db) {
  std::string out = "p xnf " + std::to_string(db.nvars()) + " " + std::to_string(db.size()) + "\n";
  for (const LinClause& c : db.clauses()) {
    std::string body = render_clause(c);
    out += body.empty() ? "0\n" : body + " 0\n";
  }
  return out;
}

bool is_cnf_shaped(const ClauseDb& db) {
  for (const LinClause& c : db.clauses()) {
    for (const Equation& r : c.neg_basis.rows()) {
      if (r.popcount() - (r.rhs() ? 1 : 0) != 1) return false;
    }
  }
  return true;
}

std::string write_cnf(const ClauseDb& db) {
  if (!is_cnf_shaped(db)) throw UsageError("formula has wide equations; use the CNF conversion");
  std::string out = "p cnf " + std::to_string(db.nvars()) + " " + std::to_string(db.size()) + "\n";
  for (const LinClause& c : db.clauses()) {
    for (const Equation& r : c.neg_basis.rows()) {
      std::size_t v = r.leading() + 1;
      // Row is the negation [x_v = b]; the literal is [x_v = 1-b].
      out += (r.rhs() ? "-" : "") + std::to_string(v) + " ";
    }
    out += "0\n";
  }
  return out;
}

std::string render_model(const std::vector<std::uint8_t>& values) {
  std::string out;
  std::string line = "v";
  for (std::size_t i = 0; i < values.size(); ++i) {
    std::string lit = (values[i] ? "" : "-") + std::to_string(i + 1);
    if (line.size() + lit.size() + 1 > 78) {
      out += line + "\n";
      line = "v";
    }
    line += " " + lit;
  }
  out += line + " 0\n";
  return out;
}

}  // namespace linsat
