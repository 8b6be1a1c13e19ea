#include "parse.hpp"

#include <cctype>
#include <sstream>

namespace frjac {

namespace {

struct token {
  std::string text;
  int col;  // 1-based
};

[[noreturn]] void fail(int line, int col, const std::string& msg) {
  throw error(errc::parse, "line " + std::to_string(line) + ", col " + std::to_string(col) + ": " + msg);
}

bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

std::vector<token> tokenize(const std::string& line, int lineno) {
  std::vector<token> out;
  size_t i = 0;
  while (i < line.size()) {
    char c = line[i];
    if (c == '#') break;
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    int col = static_cast<int>(i) + 1;
    if (c == ':') {
      out.push_back({":", col});
      ++i;
    } else if (c == '-' && i + 1 < line.size() && line[i + 1] == '>') {
      out.push_back({"->", col});
      i += 2;
    } else if (c == '-' || c == '+') {
      out.push_back({std::string(1, c), col});
      ++i;
    } else if (ident_char(c) || c == '/') {
      size_t j = i;
      while (j < line.size() && (ident_char(line[j]) || line[j] == '/')) ++j;
      out.push_back({line.substr(i, j - i), col});
      i = j;
    } else {
      fail(lineno, col, std::string("unexpected character '") + c + "'");
    }
  }
  return out;
}

bool looks_numeric(const std::string& s) {
  if (s.empty() || !std::isdigit(static_cast<unsigned char>(s[0]))) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c)) && c != '/') return false;
  return true;
}

}  // namespace

parsed_input parse_ice_qp(const std::string& text, const std::optional<field>& override_field) {
  parsed_input in;
  in.fld = override_field.value_or(rationals());
  bool have_vertices = false, have_arrows = false;
  enum class section { none, arrows, potential } sec = section::none;
  in.W = potential(in.fld);

  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    auto toks = tokenize(line, lineno);
    if (toks.empty()) continue;
    const std::string& kw = toks[0].text;

    if (kw == "field") {
      if (have_vertices) fail(lineno, toks[0].col, "'field' must precede 'vertices'");
      if (toks.size() < 2) fail(lineno, toks[0].col, "expected 'Q' or 'Fp <prime>'");
      if (toks[1].text == "Q") {
        in.fld = rationals();
        if (toks.size() > 2) fail(lineno, toks[2].col, "trailing tokens after field");
      } else if (toks[1].text == "Fp") {
        uint64_t p = 32003;  // default prime for the fast mode
        if (toks.size() == 3) {
          if (!looks_numeric(toks[2].text)) fail(lineno, toks[2].col, "expected a prime");
          p = std::stoull(toks[2].text);
        } else if (toks.size() > 3) {
          fail(lineno, toks[3].col, "trailing tokens after field");
        }
        try {
          in.fld = prime_field(p);
        } catch (const error& e) {
          fail(lineno, toks[1].col, e.what());
        }
      } else {
        fail(lineno, toks[1].col, "unknown field '" + toks[1].text + "'");
      }
      if (override_field) in.fld = *override_field;
      in.W = potential(in.fld);
      sec = section::none;
    } else if (kw == "vertices") {
      if (have_vertices) fail(lineno, toks[0].col, "duplicate 'vertices'");
      for (size_t i = 1; i < toks.size(); ++i) {
        if (in.q.vertex_index(toks[i].text) >= 0) fail(lineno, toks[i].col, "duplicate vertex '" + toks[i].text + "'");
        in.q.vertex_names.push_back(toks[i].text);
        in.q.vertex_frozen.push_back(false);
      }
      if (in.q.num_vertices() == 0) fail(lineno, toks[0].col, "empty vertex list");
      have_vertices = true;
      sec = section::none;
    } else if (kw == "frozen_vertices") {
      if (!have_vertices) fail(lineno, toks[0].col, "'frozen_vertices' before 'vertices'");
      for (size_t i = 1; i < toks.size(); ++i) {
        int v = in.q.vertex_index(toks[i].text);
        if (v < 0) fail(lineno, toks[i].col, "unknown vertex '" + toks[i].text + "'");
        in.q.vertex_frozen[v] = true;
      }
      sec = section::none;
    } else if (kw == "arrows") {
      if (!have_vertices) fail(lineno, toks[0].col, "'arrows' before 'vertices'");
      have_arrows = true;
      sec = section::arrows;
    } else if (kw == "potential") {
      if (!have_arrows) fail(lineno, toks[0].col, "'potential' before 'arrows'");
      sec = section::potential;
    } else if (sec == section::arrows) {
      // <name> : <tail> -> <head> [frozen]
      if (toks.size() < 5 || toks[1].text != ":" || toks[3].text != "->")
        fail(lineno, toks[0].col, "expected '<name>: <tail> -> <head> [frozen]'");
      arrow_data a;
      a.name = toks[0].text;
      if (in.q.arrow_index(a.name) >= 0) fail(lineno, toks[0].col, "duplicate arrow '" + a.name + "'");
      a.tail = in.q.vertex_index(toks[2].text);
      a.head = in.q.vertex_index(toks[4].text);
      if (a.tail < 0) fail(lineno, toks[2].col, "unknown vertex '" + toks[2].text + "'");
      if (a.head < 0) fail(lineno, toks[4].col, "unknown vertex '" + toks[4].text + "'");
      if (a.tail == a.head) fail(lineno, toks[0].col, "loop arrow '" + a.name + "' is not allowed");
      if (toks.size() == 6) {
        if (toks[5].text != "frozen") fail(lineno, toks[5].col, "expected 'frozen'");
        a.frozen = true;
        if (!in.q.vertex_frozen[a.tail] || !in.q.vertex_frozen[a.head])
          fail(lineno, toks[0].col, "frozen arrow '" + a.name + "' has an unfrozen endpoint");
      } else if (toks.size() > 6) {
        fail(lineno, toks[6].col, "trailing tokens after arrow");
      }
      in.q.arrows.push_back(a);
    } else if (sec == section::potential) {
      size_t i = 0;
      scalar coeff = one(in.fld);
      if (toks[i].text == "-" || toks[i].text == "+") {
        if (toks[i].text == "-") coeff = -coeff;
        ++i;
      }
      if (i < toks.size() && looks_numeric(toks[i].text)) {
        coeff = coeff * scalar::parse(in.fld, toks[i].text);
        ++i;
      }
      if (i >= toks.size()) fail(lineno, toks.back().col, "empty potential term");
      // Arrows are written right-to-left: the last name is traversed first.
      word w;
      for (size_t j = toks.size(); j > i; --j) {
        const token& t = toks[j - 1];
        int a = in.q.arrow_index(t.text);
        if (a < 0) fail(lineno, t.col, "unknown arrow '" + t.text + "'");
        if (!w.seq.empty() && in.q.arrows[w.seq.back()].head != in.q.arrows[a].tail)
          fail(lineno, t.col, "term is not composable at '" + t.text + "'");
        w.seq.push_back(a);
      }
      if (tail_of(w, in.q) != head_of(w, in.q))
        fail(lineno, toks[i].col, "potential term is a path but not a cycle");
      try {
        in.W.add_cycle(in.q, w, coeff);
      } catch (const error& e) {
        fail(lineno, toks[i].col, e.what());
      }
    } else {
      fail(lineno, toks[0].col, "unexpected '" + kw + "'");
    }
  }
  if (!have_vertices) throw error(errc::parse, "missing 'vertices' section");
  auto bad = validate(in.q);
  if (!bad.empty()) throw error(errc::parse, "invalid quiver: " + bad.front().detail);
  return in;
}

std::string print_quiver_file(const parsed_input& in) {
  std::ostringstream os;
  os << "field " << (in.fld.kind == field_kind::rationals ? std::string("Q") : "Fp " + std::to_string(in.fld.p))
     << "\n";
  os << "vertices";
  for (const auto& v : in.q.vertex_names) os << ' ' << v;
  os << "\n";
  bool any_frozen = false;
  for (bool f : in.q.vertex_frozen) any_frozen |= f;
  if (any_frozen) {
    os << "frozen_vertices";
    for (int v = 0; v < in.q.num_vertices(); ++v)
      if (in.q.vertex_frozen[v]) os << ' ' << in.q.vertex_names[v];
    os << "\n";
  }
  os << "arrows\n";
  for (const auto& a : in.q.arrows) {
    os << "  " << a.name << ": " << in.q.vertex_names[a.tail] << " -> " << in.q.vertex_names[a.head];
    if (a.frozen) os << " frozen";
    os << "\n";
  }
  if (!in.W.is_zero()) {
    os << "potential\n";
    for (const auto& [w, c] : in.W.value().terms()) {
      std::string cs = c.str();
      bool neg = !cs.empty() && cs[0] == '-';
      if (neg) cs = cs.substr(1);
      os << "  ";
      if (neg) os << "- ";
      if (cs != "1") os << cs << ' ';
      os << word_str(w, in.q) << "\n";
    }
  }
  return os.str();
}

}  // namespace frjac
