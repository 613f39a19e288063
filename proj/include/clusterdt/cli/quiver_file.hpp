#pragma once

// Quiver files: `key = value` statements separated by newlines or ';'.
//
//   # D4
//   name = d4
//   n = 4
//   arrows = (0,1), (1,2), (1,3,1)
//
// `arrows` takes (source, target[, multiplicity]) triples; `b` takes an explicit
// skew-symmetric matrix [[...],[...]]. Exactly one of the two must be present.
// A line ending in ',' or inside brackets continues on the next line.

#include "clusterdt/arith.hpp"
#include "clusterdt/quiver.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace clusterdt::cli {

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error(line ? "line " + std::to_string(line) + ": " + what : what), line(line) {}
  std::size_t line;
};

struct QuiverFile {
  std::optional<std::string> name;
  std::size_t n = 0;
  std::optional<std::vector<Arrow>> arrows;
  std::optional<Matrix<std::int64_t>> b;

  bool operator==(const QuiverFile&) const = default;

  ExchangeMatrix matrix() const {
    if (arrows) return ExchangeMatrix::from_arrows(n, *arrows);
    return ExchangeMatrix(*b);
  }
};

namespace detail {

struct Statement {
  std::string key;
  std::string value;
  std::size_t line;
};

inline std::string trim(const std::string& s) {
  std::size_t a = 0, e = s.size();
  while (a < e && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (e > a && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(a, e - a);
}

inline std::vector<Statement> split_statements(const std::string& text) {
  std::vector<Statement> out;
  std::string cur;
  std::size_t line = 1, start_line = 1;
  int depth = 0;
  bool comment = false;
  auto flush = [&] {
    const std::string s = trim(cur);
    cur.clear();
    if (s.empty()) return;
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw ParseError("expected 'key = value', got '" + s + "'", start_line);
    out.push_back({trim(s.substr(0, eq)), trim(s.substr(eq + 1)), start_line});
  };
  for (char ch : text) {
    if (ch == '\n') {
      comment = false;
      const std::string t = trim(cur);
      if (depth == 0 && (t.empty() || t.back() != ',')) {
        flush();
        start_line = line + 1;
      } else {
        cur += ' ';
      }
      ++line;
      continue;
    }
    if (comment) continue;
    if (ch == '#') {
      comment = true;
      continue;
    }
    if (ch == '(' || ch == '[') ++depth;
    if (ch == ')' || ch == ']') {
      if (--depth < 0) throw ParseError("unbalanced bracket", line);
    }
    if (ch == ';' && depth == 0) {
      flush();
      start_line = line;
      continue;
    }
    if (cur.empty() && std::isspace(static_cast<unsigned char>(ch))) start_line = line;
    cur += ch;
  }
  if (depth != 0) throw ParseError("unbalanced bracket", line);
  flush();
  return out;
}

/// Minimal cursor over one statement value.
class Cursor {
 public:
  Cursor(const std::string& s, std::size_t line) : s_(s), line_(line) {}

  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool done() {
    skip();
    return i_ == s_.size();
  }
  char peek() {
    skip();
    return i_ < s_.size() ? s_[i_] : '\0';
  }
  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++i_;
  }
  bool accept(char c) {
    if (peek() != c) return false;
    ++i_;
    return true;
  }
  std::int64_t integer() {
    skip();
    const std::size_t begin = i_;
    if (i_ < s_.size() && (s_[i_] == '-' || s_[i_] == '+')) ++i_;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
    const std::string tok = s_.substr(begin, i_ - begin);
    if (tok.empty() || tok == "-" || tok == "+") fail("expected an integer");
    try {
      std::size_t used = 0;
      const long long v = std::stoll(tok, &used);
      return v;
    } catch (const std::out_of_range&) {
      fail("integer out of range: " + tok);
    }
    return 0;
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what + " at column " + std::to_string(i_ + 1) + " of '" + s_ + "'", line_);
  }

 private:
  const std::string& s_;
  std::size_t line_;
  std::size_t i_ = 0;
};

inline std::vector<Arrow> parse_arrows(const Statement& st) {
  Cursor c(st.value, st.line);
  std::vector<Arrow> out;
  if (c.done()) return out;
  do {
    c.expect('(');
    const auto s = c.integer();
    c.expect(',');
    const auto t = c.integer();
    std::int64_t m = 1;
    if (c.accept(',')) m = c.integer();
    c.expect(')');
    if (s < 0 || t < 0) c.fail("negative vertex index");
    out.push_back({static_cast<Vertex>(s), static_cast<Vertex>(t), m});
  } while (c.accept(','));
  if (!c.done()) c.fail("trailing characters");
  return out;
}

inline Matrix<std::int64_t> parse_matrix(const Statement& st) {
  Cursor c(st.value, st.line);
  std::vector<std::vector<std::int64_t>> rows;
  c.expect('[');
  if (!c.accept(']')) {
    do {
      c.expect('[');
      std::vector<std::int64_t> row;
      if (!c.accept(']')) {
        do row.push_back(c.integer());
        while (c.accept(','));
        c.expect(']');
      }
      rows.push_back(std::move(row));
    } while (c.accept(','));
    c.expect(']');
  }
  if (!c.done()) c.fail("trailing characters");
  try {
    return Matrix<std::int64_t>::from_rows(rows);
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what(), st.line);
  }
}

}  // namespace detail

inline QuiverFile parse_quiver(const std::string& text) {
  QuiverFile q;
  std::map<std::string, std::size_t> seen;
  std::optional<std::int64_t> n;
  std::size_t arrows_line = 0, b_line = 0;
  for (const auto& st : detail::split_statements(text)) {
    if (seen.contains(st.key)) throw ParseError("duplicate key '" + st.key + "'", st.line);
    seen.emplace(st.key, st.line);
    if (st.key == "name") {
      if (st.value.empty()) throw ParseError("empty name", st.line);
      q.name = st.value;
    } else if (st.key == "n") {
      detail::Cursor c(st.value, st.line);
      n = c.integer();
      if (!c.done()) c.fail("trailing characters");
      if (*n <= 0) throw ParseError("n must be positive", st.line);
    } else if (st.key == "arrows") {
      q.arrows = detail::parse_arrows(st);
      arrows_line = st.line;
    } else if (st.key == "b") {
      q.b = detail::parse_matrix(st);
      b_line = st.line;
    } else {
      throw ParseError("unknown key '" + st.key + "'", st.line);
    }
  }
  if (!n) throw ParseError("missing key 'n'", 0);
  q.n = static_cast<std::size_t>(*n);
  if (q.arrows.has_value() == q.b.has_value()) throw ParseError("exactly one of 'arrows' and 'b' is required", 0);
  if (q.arrows) {
    std::map<std::pair<Vertex, Vertex>, bool> pairs;
    for (const auto& a : *q.arrows) {
      if (a.source >= q.n || a.target >= q.n)
        throw ParseError("arrow (" + std::to_string(a.source) + "," + std::to_string(a.target) + ") out of range",
                         arrows_line);
      if (!pairs.emplace(std::pair{a.source, a.target}, true).second)
        throw ParseError("arrow (" + std::to_string(a.source) + "," + std::to_string(a.target) +
                             ") listed twice; give its multiplicity instead",
                         arrows_line);
    }
    try {
      (void)q.matrix();
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what(), arrows_line);
    }
  } else {
    if (q.b->rows() != q.n || q.b->cols() != q.n)
      throw ParseError("b must be " + std::to_string(q.n) + "x" + std::to_string(q.n), b_line);
    try {
      (void)q.matrix();
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what(), b_line);
    }
  }
  return q;
}

inline QuiverFile read_quiver_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'", 0);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_quiver(ss.str());
}

inline std::string serialize(const QuiverFile& q) {
  std::ostringstream os;
  if (q.name) os << "name = " << *q.name << '\n';
  os << "n = " << q.n << '\n';
  if (q.arrows) {
    os << "arrows = ";
    for (std::size_t i = 0; i < q.arrows->size(); ++i) {
      const auto& a = (*q.arrows)[i];
      os << (i ? ", " : "") << '(' << a.source << ',' << a.target << ',' << a.multiplicity << ')';
    }
    os << '\n';
  } else {
    os << "b = " << q.b->str() << '\n';
  }
  return os.str();
}

/// Arrow-form file describing b.
inline QuiverFile to_quiver_file(const ExchangeMatrix& b, std::optional<std::string> name = std::nullopt) {
  return {std::move(name), b.size(), b.arrow_list(), std::nullopt};
}

}  // namespace clusterdt::cli
