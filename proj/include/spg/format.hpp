#pragma once

// Plain-text exchange format:
//
//   # comment, anywhere in a line
//   spg <d> <n>
//   vertex <id>: 1,2,3; 2,3,4
//   edge <a> <b>
//
// Parsing is strict: unknown directives, malformed integers, wrong arity and
// duplicate vertex ids are reported with their line number. Semantic checks
// (symbol range, overlap, connectivity) come from build_spg afterwards.

#include <charconv>
#include <istream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "spg/core.hpp"

namespace spg {

struct ParseError {
  int line = 0;
  std::string message;
};

struct ParseResult {
  std::vector<ParseError> errors;
  BuildResult build;
  bool ok() const { return errors.empty() && build.ok(); }
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
    s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

inline std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

inline std::vector<std::string_view> split_on(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(s.substr(start));
      return out;
    }
    out.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

inline bool parse_int(std::string_view tok, int& value) {
  tok = trim(tok);
  if (tok.empty()) return false;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  return ec == std::errc() && ptr == tok.data() + tok.size();
}

}  // namespace detail

inline ParseResult parse_spg_text(std::string_view text) {
  ParseResult result;
  auto fail = [&result](int line, std::string msg) {
    result.errors.push_back({line, std::move(msg)});
  };

  bool header_seen = false;
  int d = 0, n = 0;
  std::vector<VertexClass> classes;
  std::vector<Edge> edges;
  std::vector<ClassId> seen_ids;

  int line_no = 0;
  for (std::string_view rest = text; !rest.empty() || line_no == 0;) {
    std::size_t nl = rest.find('\n');
    std::string_view line = nl == std::string_view::npos ? rest : rest.substr(0, nl);
    rest = nl == std::string_view::npos ? std::string_view{} : rest.substr(nl + 1);
    ++line_no;

    if (std::size_t hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);
    line = detail::trim(line);
    if (line.empty()) {
      if (nl == std::string_view::npos) break;
      continue;
    }

    auto head = detail::split_ws(line);
    std::string_view directive = head[0];

    if (directive == "spg") {
      if (header_seen) {
        fail(line_no, "duplicate 'spg' header");
      } else if (head.size() != 3 || !detail::parse_int(head[1], d) ||
                 !detail::parse_int(head[2], n)) {
        fail(line_no, "expected 'spg <d> <n>'");
      } else {
        header_seen = true;
      }
      continue;
    }
    if (!header_seen) {
      fail(line_no, "first directive must be 'spg <d> <n>'");
      break;
    }

    if (directive == "vertex") {
      std::size_t colon = line.find(':');
      if (colon == std::string_view::npos) {
        fail(line_no, "expected 'vertex <id>: <d-sets>'");
        continue;
      }
      auto id_part = detail::split_ws(line.substr(0, colon));
      int id = 0;
      if (id_part.size() != 2 || !detail::parse_int(id_part[1], id) || id < 0) {
        fail(line_no, "expected a nonnegative vertex id before ':'");
        continue;
      }
      if (std::find(seen_ids.begin(), seen_ids.end(), id) != seen_ids.end()) {
        fail(line_no, "duplicate vertex id " + std::to_string(id));
        continue;
      }
      seen_ids.push_back(id);

      VertexClass c{id, {}};
      bool line_ok = true;
      for (std::string_view piece : detail::split_on(line.substr(colon + 1), ';')) {
        piece = detail::trim(piece);
        if (piece.empty()) {
          fail(line_no, "empty d-set in vertex " + std::to_string(id));
          line_ok = false;
          break;
        }
        std::vector<Symbol> symbols;
        for (std::string_view tok : detail::split_on(piece, ',')) {
          int s = 0;
          if (!detail::parse_int(tok, s)) {
            fail(line_no, "bad symbol '" + std::string(detail::trim(tok)) +
                              "' in vertex " + std::to_string(id));
            line_ok = false;
            break;
          }
          symbols.push_back(s);
        }
        if (!line_ok) break;
        if (static_cast<int>(symbols.size()) != d) {
          fail(line_no, "d-set of size " + std::to_string(symbols.size()) +
                            " in vertex " + std::to_string(id) + ", expected " +
                            std::to_string(d));
          line_ok = false;
          break;
        }
        DSet ds{symbols};
        if (ds.has_duplicates()) {
          fail(line_no, "repeated symbol in a d-set of vertex " + std::to_string(id));
          line_ok = false;
          break;
        }
        c.dsets.push_back(std::move(ds));
      }
      if (line_ok) classes.push_back(std::move(c));
      continue;
    }

    if (directive == "edge") {
      int a = 0, b = 0;
      if (head.size() != 3 || !detail::parse_int(head[1], a) ||
          !detail::parse_int(head[2], b)) {
        fail(line_no, "expected 'edge <a> <b>'");
        continue;
      }
      edges.emplace_back(a, b);
      continue;
    }

    fail(line_no, "unknown directive '" + std::string(directive) + "'");
  }

  if (!header_seen && result.errors.empty())
    fail(1, "missing 'spg <d> <n>' header");

  if (result.errors.empty())
    result.build = build_spg(d, n, std::move(classes), std::move(edges));
  return result;
}

inline ParseResult parse_spg_text(std::istream& in) {
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_spg_text(std::string_view(buffer.str()));
}

namespace detail {

inline void write_spg_body(std::ostream& os, const std::vector<VertexClass>& classes,
                           const std::vector<Edge>& edges) {
  for (const auto& c : classes) {
    os << "vertex " << c.id << ": ";
    for (std::size_t i = 0; i < c.dsets.size(); ++i) {
      if (i) os << "; ";
      const auto& sy = c.dsets[i].symbols();
      for (std::size_t j = 0; j < sy.size(); ++j) os << (j ? "," : "") << sy[j];
    }
    os << '\n';
  }
  for (auto [a, b] : edges) os << "edge " << a << ' ' << b << '\n';
}

}  // namespace detail

inline std::string to_spg_text(const Spg& s) {
  std::ostringstream os;
  os << "spg " << s.d << ' ' << s.n << '\n';
  detail::write_spg_body(os, s.classes, s.edges);
  return os.str();
}

}  // namespace spg
