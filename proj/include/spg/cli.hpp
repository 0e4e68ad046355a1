#pragma once

// Command line front end. run(args, out, err) parses and dispatches,
// returning the process exit code: 0 when the command succeeds and every
// checked property holds, 1 when a property or verification fails, 2 on
// usage or input errors (including resource limits).
//
// Output modes: human (default), --machine (stable line records, golden
// testable), --json (the same records as JSON objects, one per line).

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "spg/bounds.hpp"
#include "spg/core.hpp"
#include "spg/format.hpp"
#include "spg/generators.hpp"
#include "spg/metrics.hpp"
#include "spg/pathfinder.hpp"
#include "spg/properties.hpp"
#include "spg/search.hpp"

namespace spg::cli {

enum class Mode { Human, Machine, Json };

struct Ctx {
  Mode mode = Mode::Human;
  int workers = 1;
  std::ostream& out;
  std::ostream& err;
};

inline constexpr int kOk = 0;
inline constexpr int kFail = 1;
inline constexpr int kUsage = 2;

// Reals print with %.12g everywhere so machine output is line-stable.
inline std::string real_str(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

template <class T>
std::string brace_list(const std::vector<T>& xs) {
  std::string s = "{";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(xs[i]);
  }
  s += '}';
  return s;
}

inline void emit_line(Ctx& ctx, const std::string& machine,
                      const nlohmann::json& record, const std::string& human) {
  switch (ctx.mode) {
    case Mode::Machine: ctx.out << machine << '\n'; break;
    case Mode::Json: ctx.out << record.dump() << '\n'; break;
    case Mode::Human: ctx.out << human << '\n'; break;
  }
}

inline nlohmann::json spg_json(const Spg& s) {
  nlohmann::json classes = nlohmann::json::array();
  for (const auto& c : s.classes) {
    nlohmann::json dsets = nlohmann::json::array();
    for (const auto& ds : c.dsets) dsets.push_back(ds.symbols());
    classes.push_back({{"id", c.id}, {"dsets", dsets}});
  }
  nlohmann::json edges = nlohmann::json::array();
  for (auto [a, b] : s.edges) edges.push_back({a, b});
  return {{"d", s.d}, {"n", s.n}, {"classes", classes}, {"edges", edges}};
}

// Prints an SPG in the text format (machine/human) or as one JSON record.
inline void emit_spg_text(Ctx& ctx, const Spg& s, const std::string& human_note) {
  if (ctx.mode == Mode::Json) {
    nlohmann::json j = spg_json(s);
    j["record"] = "spg";
    ctx.out << j.dump() << '\n';
    return;
  }
  if (ctx.mode == Mode::Human && !human_note.empty())
    ctx.out << "# " << human_note << '\n';
  ctx.out << to_spg_text(s);
}

inline std::string witness_text(const PropertyWitness& w) {
  if (const auto* dr = std::get_if<DrWitness>(&w))
    return "F=" + brace_list(dr->f) + " compA=" + brace_list(dr->component_a) +
           " compB=" + brace_list(dr->component_b);
  if (const auto* adj = std::get_if<AdjacencyWitness>(&w))
    return "A=" + brace_list(adj->a.symbols()) + " B=" + brace_list(adj->b.symbols()) +
           " classA=" + std::to_string(adj->class_a) +
           " classB=" + std::to_string(adj->class_b);
  if (const auto* e = std::get_if<EdgeWitness>(&w))
    return std::string(e->vertex_pair ? "pair=" : "edge=") + std::to_string(e->a) +
           "-" + std::to_string(e->b);
  const auto& ep = std::get<EndpointWitness>(w);
  return "F=" + brace_list(ep.f) + " classes=" + brace_list(ep.ids);
}

inline nlohmann::json witness_json(const PropertyWitness& w) {
  if (const auto* dr = std::get_if<DrWitness>(&w))
    return {{"f", dr->f}, {"component_a", dr->component_a}, {"component_b", dr->component_b}};
  if (const auto* adj = std::get_if<AdjacencyWitness>(&w))
    return {{"a", adj->a.symbols()},
            {"b", adj->b.symbols()},
            {"class_a", adj->class_a},
            {"class_b", adj->class_b}};
  if (const auto* e = std::get_if<EdgeWitness>(&w))
    return {{e->vertex_pair ? "pair" : "edge", std::vector<ClassId>{e->a, e->b}}};
  const auto& ep = std::get<EndpointWitness>(w);
  return {{"f", ep.f}, {"classes", ep.ids}};
}

// Emits the four property reports; returns true when all hold.
inline bool emit_properties(Ctx& ctx, const Spg& s) {
  bool all = true;
  for (const auto& rep : check_all_properties(s)) {
    const std::string name = property_name(rep.property);
    if (rep.holds) {
      emit_line(ctx, "property " + name + " holds",
                {{"record", "property"}, {"name", name}, {"holds", true}},
                name + ": holds");
    } else {
      all = false;
      const std::string wit = witness_text(*rep.witness);
      nlohmann::json j{{"record", "property"}, {"name", name}, {"holds", false}};
      j["witness"] = witness_json(*rep.witness);
      emit_line(ctx, "property " + name + " fails " + wit, j,
                name + ": FAILS (" + wit + ")");
    }
  }
  return all;
}

struct Loaded {
  std::optional<Spg> spg;
  int code = kOk;
};

inline void emit_violations(Ctx& ctx, const std::vector<Violation>& violations) {
  for (const auto& v : violations) {
    const std::string kind = violation_kind_name(v.kind);
    nlohmann::json j{{"record", "violation"}, {"kind", kind}, {"message", v.message}};
    if (!v.dset.symbols().empty()) j["dset"] = v.dset.symbols();
    if (!v.ids.empty()) j["ids"] = v.ids;
    if (!v.ids_b.empty()) j["ids_b"] = v.ids_b;
    emit_line(ctx, "violation " + kind + " " + v.message, j,
              "violation (" + kind + "): " + v.message);
  }
}

inline Loaded load_spg(Ctx& ctx, const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    ctx.err << "error: cannot open " << path << '\n';
    return {std::nullopt, kUsage};
  }
  std::stringstream buf;
  buf << in.rdbuf();
  auto parsed = parse_spg_text(buf.str());
  if (!parsed.errors.empty()) {
    for (const auto& e : parsed.errors)
      emit_line(ctx, "parse_error line=" + std::to_string(e.line) + " " + e.message,
                {{"record", "parse_error"}, {"line", e.line}, {"message", e.message}},
                path + ":" + std::to_string(e.line) + ": " + e.message);
    return {std::nullopt, kUsage};
  }
  if (!parsed.build.ok()) {
    emit_violations(ctx, parsed.build.violations);
    return {std::nullopt, kUsage};
  }
  return {parsed.build.spg, kOk};
}

// validate prints the structure line then the property reports; the
// properties command prints the reports alone.
inline int cmd_validate(Ctx& ctx, const std::string& file, bool props_only) {
  auto loaded = load_spg(ctx, file);
  if (!loaded.spg) return loaded.code;
  const Spg& s = *loaded.spg;
  if (!props_only) {
    emit_line(ctx,
              "valid " + std::to_string(s.d) + " " + std::to_string(s.n) + " " +
                  std::to_string(s.classes.size()) + " " + std::to_string(s.edges.size()),
              {{"record", "valid"},
               {"d", s.d},
               {"n", s.n},
               {"classes", s.classes.size()},
               {"edges", s.edges.size()}},
              "valid spg: d=" + std::to_string(s.d) + " n=" + std::to_string(s.n) +
                  ", " + std::to_string(s.classes.size()) + " classes, " +
                  std::to_string(s.edges.size()) + " edges");
  }
  return emit_properties(ctx, s) ? kOk : kFail;
}

inline int cmd_diameter(Ctx& ctx, const std::string& file) {
  auto loaded = load_spg(ctx, file);
  if (!loaded.spg) return loaded.code;
  int dia = diameter(*loaded.spg);
  emit_line(ctx, "diameter " + std::to_string(dia),
            {{"record", "diameter"}, {"value", dia}},
            "diameter: " + std::to_string(dia));
  return kOk;
}

inline std::vector<Symbol> parse_symbol_list(const std::string& text) {
  std::vector<Symbol> out;
  for (const auto& piece : detail::split_on(text, ',')) {
    int v = 0;
    if (!detail::parse_int(detail::trim(piece), v))
      throw InvalidArgument("bad symbol '" + std::string(piece) + "'");
    out.push_back(v);
  }
  if (out.empty()) throw InvalidArgument("--symbols needs at least one symbol");
  return out;
}

inline void emit_class_edge_lines(Ctx& ctx, const std::vector<VertexClass>& classes,
                                  const std::vector<Edge>& edges) {
  for (const auto& c : classes) {
    std::string line = "vertex " + std::to_string(c.id) + ":";
    for (std::size_t i = 0; i < c.dsets.size(); ++i) {
      line += i ? ";" : "";
      for (std::size_t j = 0; j < c.dsets[i].symbols().size(); ++j)
        line += (j ? "," : " ") + std::to_string(c.dsets[i].symbols()[j]);
    }
    ctx.out << line << '\n';
  }
  for (auto [a, b] : edges) ctx.out << "edge " << a << ' ' << b << '\n';
}

inline int cmd_restrict(Ctx& ctx, const std::string& file, const std::string& symbols,
                        bool reduce) {
  auto loaded = load_spg(ctx, file);
  if (!loaded.spg) return loaded.code;
  auto f = parse_symbol_list(symbols);
  auto g = restrict(*loaded.spg, f);

  if (!reduce) {
    nlohmann::json j{{"record", "restricted"},
                     {"f", g.origin},
                     {"classes", nlohmann::json::array()},
                     {"edges", nlohmann::json::array()}};
    for (const auto& c : g.classes) {
      nlohmann::json dsets = nlohmann::json::array();
      for (const auto& ds : c.dsets) dsets.push_back(ds.symbols());
      j["classes"].push_back({{"id", c.id}, {"dsets", dsets}});
    }
    for (auto [a, b] : g.edges) j["edges"].push_back({a, b});
    emit_line(ctx,
              "restricted F=" + brace_list(g.origin) + " classes=" +
                  std::to_string(g.classes.size()) + " edges=" +
                  std::to_string(g.edges.size()),
              j,
              "restriction by F=" + brace_list(g.origin) + ": " +
                  std::to_string(g.classes.size()) + " classes, " +
                  std::to_string(g.edges.size()) + " edges");
    if (ctx.mode != Mode::Json) emit_class_edge_lines(ctx, g.classes, g.edges);
    return kOk;
  }

  auto red = reduce_dimension(g);
  if (!red.ok()) {
    switch (red.error) {
      case ReduceError::EmptyRestriction:
        emit_line(ctx, "reduce_failed empty_restriction",
                  {{"record", "reduce_failed"}, {"reason", "empty_restriction"}},
                  "reduce failed: restriction is empty");
        return kUsage;
      case ReduceError::DimensionUnderflow:
        emit_line(ctx, "reduce_failed dimension_underflow",
                  {{"record", "reduce_failed"}, {"reason", "dimension_underflow"}},
                  "reduce failed: |F| must stay below d");
        return kUsage;
      default: {
        std::string wit = "compA=" + brace_list(red.component_a) +
                          " compB=" + brace_list(red.component_b);
        emit_line(ctx, "reduce_failed disconnected " + wit,
                  {{"record", "reduce_failed"},
                   {"reason", "disconnected"},
                   {"component_a", red.component_a},
                   {"component_b", red.component_b}},
                  "reduce failed: restriction disconnected (" + wit + ")");
        return kFail;
      }
    }
  }

  std::string map_line = "map";
  nlohmann::json map_json = nlohmann::json::array();
  for (std::size_t i = 0; i < red.new_to_old.size(); ++i) {
    map_line += " " + std::to_string(red.new_to_old[i]) + "->" + std::to_string(i + 1);
    map_json.push_back({red.new_to_old[i], static_cast<Symbol>(i + 1)});
  }
  const Spg& r = *red.spg;
  if (ctx.mode == Mode::Json) {
    nlohmann::json j = spg_json(r);
    j["record"] = "reduced";
    j["map"] = map_json;
    ctx.out << j.dump() << '\n';
  } else {
    emit_line(ctx, "reduced d=" + std::to_string(r.d) + " n=" + std::to_string(r.n),
              {}, "reduced: d=" + std::to_string(r.d) + " n=" + std::to_string(r.n));
    ctx.out << map_line << '\n';
    ctx.out << to_spg_text(r);
  }
  return kOk;
}

inline int cmd_path(Ctx& ctx, const std::string& file, int from, int to, bool certified) {
  auto loaded = load_spg(ctx, file);
  if (!loaded.spg) return loaded.code;
  const Spg& s = *loaded.spg;
  if (s.class_index(from) < 0 || s.class_index(to) < 0) {
    ctx.err << "error: unknown class id\n";
    return kUsage;
  }

  auto emit_path = [&ctx](const Path& p, int from_id, int to_id) {
    std::string ids;
    for (std::size_t i = 0; i < p.ids.size(); ++i)
      ids += (i ? " " : "") + std::to_string(p.ids[i]);
    emit_line(ctx,
              "path " + std::to_string(from_id) + " " + std::to_string(to_id) + " " +
                  std::to_string(p.length()),
              {{"record", "path"},
               {"from", from_id},
               {"to", to_id},
               {"len", p.length()},
               {"ids", p.ids}},
              "path from " + std::to_string(from_id) + " to " + std::to_string(to_id) +
                  ": length " + std::to_string(p.length()));
    if (ctx.mode != Mode::Json) ctx.out << "ids " << ids << '\n';
  };

  if (!certified) {
    auto adj = detail::Adjacency::build(s);
    emit_path(detail::lex_shortest_path(s, adj, from, to), from, to);
    return kOk;
  }

  auto result = certified_path(s, from, to);
  if (!result.ok()) {
    const auto& st = *result.stuck;
    std::string wit = "F=" + brace_list(st.f) + " compA=" + brace_list(st.component_a) +
                      " compB=" + brace_list(st.component_b);
    emit_line(ctx, "stuck " + wit,
              {{"record", "stuck"},
               {"f", st.f},
               {"component_a", st.component_a},
               {"component_b", st.component_b}},
              "stuck: dimension reduction fails at " + wit);
    return kFail;
  }

  emit_path(result.certified->path, from, to);
  const std::string cert_text = to_text(result.certified->cert);
  auto verdict = verify_certificate(s, result.certified->path, result.certified->cert);
  if (ctx.mode == Mode::Json) {
    emit_line(ctx, "",
              {{"record", "certificate"}, {"ok", verdict.ok}, {"text", cert_text},
               {"reason", verdict.reason}},
              "");
  } else {
    ctx.out << cert_text;
    if (verdict.ok)
      ctx.out << "certificate ok\n";
    else
      ctx.out << "certificate failed " << verdict.reason << '\n';
  }
  return verdict.ok ? kOk : kFail;
}

inline std::string bounds_row(const BoundValues& b, uint64_t t) {
  return std::to_string(b.d) + " " + std::to_string(b.n) + " " +
         std::to_string(b.hirsch) + " " + std::to_string(b.haehnle) + " " +
         real_str(b.todd) + " " + real_str(b.spg) + " " + real_str(b.kk) + " " +
         std::to_string(t);
}

inline nlohmann::json bounds_json(const BoundValues& b, uint64_t t) {
  return {{"record", "bounds"}, {"d", b.d},        {"n", b.n},
          {"hirsch", b.hirsch}, {"haehnle", b.haehnle}, {"todd", b.todd},
          {"spg", b.spg},       {"kk", b.kk},      {"recursion", t}};
}

inline constexpr const char* kBoundsHeader = "d n hirsch haehnle todd spg kk recursion";

inline int cmd_bounds(Ctx& ctx, int d, int n) {
  auto b = bound_values(d, n);
  uint64_t t = recursion_value(d, n);
  if (ctx.mode == Mode::Human) ctx.out << kBoundsHeader << '\n';
  emit_line(ctx, bounds_row(b, t), bounds_json(b, t), bounds_row(b, t));
  return kOk;
}

inline int cmd_table(Ctx& ctx, int max_d, int max_n) {
  if (ctx.mode == Mode::Human) ctx.out << kBoundsHeader << '\n';
  if (max_n < 1) return kOk;
  const int d_hi = std::min(max_d, max_n);
  auto table = recursion_table(d_hi, max_n);
  for (int d = 1; d <= d_hi; ++d) {
    for (int n = d; n <= max_n; ++n) {
      auto b = bound_values(d, n);
      uint64_t t = table.at(d, n);
      emit_line(ctx, bounds_row(b, t), bounds_json(b, t), bounds_row(b, t));
    }
  }
  return kOk;
}

inline int cmd_lemmas(Ctx& ctx, long long max_d, long long max_n) {
  auto r = verify_lemma1(max_d);
  const std::string f4 = r.has_f4 ? real_str(r.f4) : "-";
  emit_line(ctx,
            "lemma1 " + std::to_string(r.d_max) + " " + real_str(r.f3) + " " + f4 +
                " " + real_str(r.max_f) + " " + std::to_string(r.argmax_d) + " " +
                (r.pass ? "pass" : "fail"),
            {{"record", "lemma1"},
             {"d_max", r.d_max},
             {"checked", r.checked},
             {"f3", r.f3},
             {"f4", r.has_f4 ? nlohmann::json(r.f4) : nlohmann::json(nullptr)},
             {"max_f", r.max_f},
             {"argmax_d", r.argmax_d},
             {"monotone_increasing", r.monotone_increasing},
             {"pass", r.pass}},
            "lemma1 up to d=" + std::to_string(r.d_max) + ": f(3)=" + real_str(r.f3) +
                " f(4)=" + f4 + " max=" + real_str(r.max_f) + " at d=" +
                std::to_string(r.argmax_d) + (r.pass ? " PASS" : " FAIL"));

  if (max_n < 2) max_n = std::max(5ll, max_d);
  for (long long n = 2; n <= max_n; ++n) {
    auto row = lemma2_comparison(n);
    const std::string verdict = verdict_name(row.verdict);
    emit_line(ctx,
              "lemma2 " + std::to_string(row.n) + " " + std::to_string(row.quadratic) +
                  " " + std::to_string(row.edge_bound) + " " + verdict,
              {{"record", "lemma2"},
               {"n", row.n},
               {"quadratic", row.quadratic},
               {"edge_bound", row.edge_bound},
               {"verdict", verdict}},
              "lemma2 n=" + std::to_string(row.n) + ": (n-2)^2=" +
                  std::to_string(row.quadratic) + " edge-bound=" +
                  std::to_string(row.edge_bound) + " (" + verdict + ")");
  }
  return r.pass ? kOk : kFail;
}

inline void emit_chain_variant(Ctx& ctx, const ChainVariant& v) {
  const std::string name = v.floored ? "floor" : "real";
  emit_line(ctx, "variant " + name + " " + (v.pass ? "pass" : "fail"),
            {{"record", "variant"}, {"name", name}, {"pass", v.pass}},
            "variant " + name + ": " + (v.pass ? "pass" : "fail"));
  for (const auto& st : v.steps) {
    const std::string rel = st.is_equality ? "eq" : "le";
    const std::string verdict = st.holds ? "ok" : "fail";
    emit_line(ctx,
              "step " + std::to_string(st.index) + " " + rel + " " + real_str(st.lhs) +
                  " " + real_str(st.rhs) + " " + verdict,
              {{"record", "step"},
               {"variant", name},
               {"index", st.index},
               {"relation", rel},
               {"lhs", st.lhs},
               {"rhs", st.rhs},
               {"holds", st.holds}},
              "  step " + std::to_string(st.index) + " (" + rel + "): " +
                  real_str(st.lhs) + " vs " + real_str(st.rhs) + " " + verdict);
  }
}

inline int cmd_chain(Ctx& ctx, int d, int n) {
  auto r = verify_theorem_chain(d, n);
  emit_line(ctx,
            "chain " + std::to_string(r.d) + " " + std::to_string(r.n) + " " +
                real_str(r.c) + " " + real_str(r.log_nd) + " " +
                (r.log_ge_c ? "true" : "false"),
            {{"record", "chain"},
             {"d", r.d},
             {"n", r.n},
             {"c", r.c},
             {"log_nd", r.log_nd},
             {"log_ge_c", r.log_ge_c}},
            "chain d=" + std::to_string(r.d) + " n=" + std::to_string(r.n) +
                ": log2(n-d)=" + real_str(r.log_nd) + " c=" + real_str(r.c));
  emit_chain_variant(ctx, r.halved_real);
  emit_chain_variant(ctx, r.halved_floor);
  emit_line(ctx, std::string("result ") + (r.pass ? "pass" : "fail"),
            {{"record", "result"}, {"pass", r.pass}},
            std::string("result: ") + (r.pass ? "PASS" : "FAIL"));
  return r.pass ? kOk : kFail;
}

inline int emit_sigma(Ctx& ctx, const SigmaResult& r) {
  emit_line(ctx,
            "sigma " + std::to_string(r.d) + " " + std::to_string(r.n) + " " +
                std::to_string(r.value) + " " + (r.exhaustive ? "true" : "false") +
                " " + std::to_string(r.explored),
            {{"record", "sigma"},
             {"d", r.d},
             {"n", r.n},
             {"value", r.value},
             {"exhaustive", r.exhaustive},
             {"explored", r.explored},
             {"witness_n_eff", r.witness_n_eff},
             {"witness", spg_json(r.witness)}},
            "sigma(" + std::to_string(r.d) + "," + std::to_string(r.n) + ") " +
                (r.exhaustive ? "=" : ">=") + " " + std::to_string(r.value) + " (" +
                (r.exhaustive ? "exhaustive, " : "search, ") +
                std::to_string(r.explored) + " candidates, witness on " +
                std::to_string(r.witness_n_eff) + " symbols)");
  if (ctx.mode != Mode::Json) ctx.out << to_spg_text(r.witness);
  return kOk;
}

inline int cmd_search_exact(Ctx& ctx, int d, int n) {
  ExactOptions opt;
  opt.workers = ctx.workers;
  return emit_sigma(ctx, sigma_exact(d, n, opt));
}

inline int cmd_search_random(Ctx& ctx, int d, int n, uint64_t budget, uint64_t seed) {
  SearchOptions opt;
  opt.workers = ctx.workers;
  return emit_sigma(ctx, sigma_search(d, n, budget, seed, opt));
}

inline int cmd_gen_incidence(Ctx& ctx, const std::string& file) {
  std::ifstream in(file);
  if (!in) {
    ctx.err << "error: cannot open " << file << '\n';
    return kUsage;
  }
  std::stringstream buf;
  buf << in.rdbuf();
  auto parsed = parse_incidence_text(buf.str());
  if (!parsed.ok()) {
    for (const auto& e : parsed.errors)
      emit_line(ctx, "parse_error line=" + std::to_string(e.line) + " " + e.message,
                {{"record", "parse_error"}, {"line", e.line}, {"message", e.message}},
                file + ":" + std::to_string(e.line) + ": " + e.message);
    return kUsage;
  }
  auto result = from_incidence(parsed.data);
  if (!result.ok()) {
    if (result.error != IncidenceError::None) {
      const std::string kind =
          result.error == IncidenceError::NotSimple ? "not_simple" : "duplicate_vertex";
      emit_line(ctx,
                "incidence_error " + kind + " rows=" +
                    std::to_string(result.vertex_a + 1) +
                    (result.vertex_b >= 0 ? "," + std::to_string(result.vertex_b + 1)
                                          : std::string()),
                {{"record", "incidence_error"},
                 {"kind", kind},
                 {"row_a", result.vertex_a + 1},
                 {"row_b", result.vertex_b + 1},
                 {"message", result.message}},
                "incidence error (" + kind + "): " + result.message);
      return kUsage;
    }
    emit_violations(ctx, result.violations);
    return kUsage;
  }
  emit_spg_text(ctx, *result.spg, "incidence " + file);
  return kOk;
}

inline int run(const std::vector<std::string>& args, std::ostream& out,
               std::ostream& err) {
  CLI::App app{"subset partition graph workbench"};
  app.name("spg");
  app.require_subcommand(1);

  bool machine = false, json_mode = false;
  int workers = 1;
  app.add_flag("--machine", machine, "stable line-record output");
  app.add_flag("--json", json_mode, "one JSON object per record");
  app.add_option("--workers", workers, "parallel workers for search commands")
      ->check(CLI::PositiveNumber);

  auto add_sub = [&app](const std::string& name, const std::string& desc) {
    auto* sub = app.add_subcommand(name, desc);
    sub->fallthrough();
    return sub;
  };

  std::string file;
  std::string symbols;
  bool reduce = false, certified = false;
  int from = 0, to = 0, d = 0, n = 0, max_d = 0, max_n = 0;
  long long lemma_d = 0, lemma_n = 0;
  uint64_t budget = 10000, seed = 0;

  auto* c_validate = add_sub("validate", "check structure and the four properties");
  c_validate->add_option("file", file, "spg text file")->required();

  auto* c_props = add_sub("properties", "run the four property checks");
  c_props->add_option("file", file)->required();

  auto* c_diameter = add_sub("diameter", "exact combinatorial diameter");
  c_diameter->add_option("file", file)->required();

  auto* c_restrict = add_sub("restrict", "restriction by a symbol set");
  c_restrict->add_option("file", file)->required();
  c_restrict->add_option("--symbols", symbols, "comma separated symbols")->required();
  c_restrict->add_flag("--reduce", reduce, "reduce dimension after restricting");

  auto* c_path = add_sub("path", "shortest or certified path between classes");
  c_path->add_option("file", file)->required();
  c_path->add_option("--from", from, "source class id")->required();
  c_path->add_option("--to", to, "target class id")->required();
  c_path->add_flag("--certified", certified, "emit and verify a path certificate");

  auto* c_bounds = add_sub("bounds", "diameter bounds for one (d, n)");
  c_bounds->add_option("--d", d)->required();
  c_bounds->add_option("--n", n)->required();

  auto* c_table = add_sub("table", "bound table over a (d, n) range");
  c_table->add_option("--max-d", max_d)->required()->check(CLI::PositiveNumber);
  c_table->add_option("--max-n", max_n)->required()->check(CLI::PositiveNumber);

  auto* c_lemmas = add_sub("lemmas", "factor bound sweep and quadratic comparison");
  c_lemmas->add_option("--max-d", lemma_d)->required()->check(CLI::PositiveNumber);
  c_lemmas->add_option("--max-n", lemma_n, "quadratic comparison range (default max(5, max-d))");

  auto* c_chain = add_sub("chain", "inductive bound inequality chain");
  c_chain->add_option("--d", d)->required();
  c_chain->add_option("--n", n)->required();

  auto* c_search = add_sub("search", "extremal diameter search");
  c_search->require_subcommand(1);
  auto* c_exact = c_search->add_subcommand("exact", "exhaustive enumeration");
  c_exact->fallthrough();
  c_exact->add_option("--d", d)->required();
  c_exact->add_option("--n", n)->required();
  auto* c_random = c_search->add_subcommand("random", "seeded local search");
  c_random->fallthrough();
  c_random->add_option("--d", d)->required();
  c_random->add_option("--n", n)->required();
  c_random->add_option("--budget", budget, "candidate evaluations (default 10000)");
  c_random->add_option("--seed", seed, "rng seed (default 0)");

  auto* c_gen = add_sub("gen", "generate canonical instances");
  c_gen->require_subcommand(1);
  auto* c_cube = c_gen->add_subcommand("hypercube", "d-cube spg on 2d symbols");
  c_cube->fallthrough();
  c_cube->add_option("--d", d)->required();
  auto* c_simplex = c_gen->add_subcommand("simplex", "d-simplex spg on d+1 symbols");
  c_simplex->fallthrough();
  c_simplex->add_option("--d", d)->required();
  auto* c_incidence = c_gen->add_subcommand("incidence", "spg from vertex-facet incidence");
  c_incidence->fallthrough();
  c_incidence->add_option("file", file, "incidence text file")->required();

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("spg");
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  Ctx ctx{json_mode ? Mode::Json : machine ? Mode::Machine : Mode::Human, workers,
          out, err};

  try {
    if (c_validate->parsed()) return cmd_validate(ctx, file, false);
    if (c_props->parsed()) return cmd_validate(ctx, file, true);
    if (c_diameter->parsed()) return cmd_diameter(ctx, file);
    if (c_restrict->parsed()) return cmd_restrict(ctx, file, symbols, reduce);
    if (c_path->parsed()) return cmd_path(ctx, file, from, to, certified);
    if (c_bounds->parsed()) return cmd_bounds(ctx, d, n);
    if (c_table->parsed()) return cmd_table(ctx, max_d, max_n);
    if (c_lemmas->parsed()) return cmd_lemmas(ctx, lemma_d, lemma_n);
    if (c_chain->parsed()) return cmd_chain(ctx, d, n);
    if (c_search->parsed()) {
      if (c_exact->parsed()) return cmd_search_exact(ctx, d, n);
      return cmd_search_random(ctx, d, n, budget, seed);
    }
    if (c_gen->parsed()) {
      if (c_incidence->parsed()) return cmd_gen_incidence(ctx, file);
      Spg s = c_cube->parsed() ? gen_hypercube(d) : gen_simplex(d);
      emit_spg_text(ctx, s,
                    (c_cube->parsed() ? "hypercube d=" : "simplex d=") + std::to_string(d));
      return kOk;
    }
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ResourceLimit& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  err << "error: no subcommand\n";
  return kUsage;
}

}  // namespace spg::cli
