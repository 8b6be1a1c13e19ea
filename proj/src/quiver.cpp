#include "quiver.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace frjac {

std::vector<int> ice_quiver::unfrozen_vertices() const {
  std::vector<int> r;
  for (int v = 0; v < num_vertices(); ++v)
    if (!vertex_frozen[v]) r.push_back(v);
  return r;
}

std::vector<int> ice_quiver::unfrozen_arrows() const {
  std::vector<int> r;
  for (int a = 0; a < num_arrows(); ++a)
    if (!arrows[a].frozen) r.push_back(a);
  return r;
}

std::vector<int> ice_quiver::arrows_out(int v) const {
  std::vector<int> r;
  for (int a = 0; a < num_arrows(); ++a)
    if (arrows[a].tail == v) r.push_back(a);
  return r;
}

std::vector<int> ice_quiver::arrows_in(int v) const {
  std::vector<int> r;
  for (int a = 0; a < num_arrows(); ++a)
    if (arrows[a].head == v) r.push_back(a);
  return r;
}

int ice_quiver::vertex_index(const std::string& name) const {
  for (int v = 0; v < num_vertices(); ++v)
    if (vertex_names[v] == name) return v;
  return -1;
}

int ice_quiver::arrow_index(const std::string& name) const {
  for (int a = 0; a < num_arrows(); ++a)
    if (arrows[a].name == name) return a;
  return -1;
}

std::vector<violation> validate(const ice_quiver& q) {
  std::vector<violation> out;
  std::set<std::string> seen;
  for (const auto& n : q.vertex_names)
    if (!seen.insert(n).second) out.push_back({violation_kind::duplicate_vertex, "vertex '" + n + "'"});
  seen.clear();
  for (const auto& a : q.arrows)
    if (!seen.insert(a.name).second) out.push_back({violation_kind::duplicate_arrow, "arrow '" + a.name + "'"});
  for (const auto& a : q.arrows) {
    if (a.tail < 0 || a.tail >= q.num_vertices() || a.head < 0 || a.head >= q.num_vertices()) {
      out.push_back({violation_kind::bad_endpoint, "arrow '" + a.name + "'"});
      continue;
    }
    if (a.tail == a.head)
      out.push_back({violation_kind::loop_arrow, "arrow '" + a.name + "' at vertex " + q.vertex_names[a.tail]});
    if (a.frozen && (!q.vertex_frozen[a.tail] || !q.vertex_frozen[a.head]))
      out.push_back({violation_kind::frozen_arrow_endpoint, "arrow '" + a.name + "' has an unfrozen endpoint"});
  }
  return out;
}

int tail_of(const word& w, const ice_quiver& q) {
  return w.seq.empty() ? w.base : q.arrows[w.seq.front()].tail;
}

int head_of(const word& w, const ice_quiver& q) {
  return w.seq.empty() ? w.base : q.arrows[w.seq.back()].head;
}

word idempotent_word(int v) { return word{v, {}}; }

word arrow_word(const ice_quiver& q, int a) {
  (void)q;
  return word{0, {a}};
}

bool is_cycle(const word& w, const ice_quiver& q) {
  return !w.seq.empty() && tail_of(w, q) == head_of(w, q);
}

bool composable(const ice_quiver& q, const word& p, const word& before) {
  if (before.is_idempotent() && p.is_idempotent()) return before.base == p.base;
  return head_of(before, q) == tail_of(p, q);
}

std::optional<word> compose(const ice_quiver& q, const word& p, const word& before) {
  if (!composable(q, p, before)) return std::nullopt;
  if (p.is_idempotent()) return before;
  if (before.is_idempotent()) return p;
  word r = before;
  r.seq.insert(r.seq.end(), p.seq.begin(), p.seq.end());
  return r;
}

bool word_order::operator()(const word& a, const word& b) const {
  if (a.seq.size() != b.seq.size()) return a.seq.size() < b.seq.size();
  if (a.seq.empty()) return a.base < b.base;
  return a.seq < b.seq;
}

bool word_equal(const word& a, const word& b) {
  if (a.seq.empty() && b.seq.empty()) return a.base == b.base;
  return a.seq == b.seq;
}

std::string word_str(const word& w, const ice_quiver& q) {
  if (w.is_idempotent()) return "e_" + q.vertex_names[w.base];
  std::string s;
  for (auto it = w.seq.rbegin(); it != w.seq.rend(); ++it) {
    if (!s.empty()) s += ' ';
    s += q.arrows[*it].name;
  }
  return s;
}

void element::add_term(const word& w, const scalar& c) {
  if (c.is_zero()) return;
  auto it = terms_.find(w);
  if (it == terms_.end()) {
    terms_.emplace(w, c);
  } else {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

element& element::operator+=(const element& o) {
  for (const auto& [w, c] : o.terms_) add_term(w, c);
  return *this;
}

element& element::operator-=(const element& o) {
  for (const auto& [w, c] : o.terms_) add_term(w, -c);
  return *this;
}

element element::operator-() const {
  element r(fld_);
  for (const auto& [w, c] : terms_) r.terms_.emplace(w, -c);
  return r;
}

element element::scaled(const scalar& c) const {
  element r(fld_);
  if (c.is_zero()) return r;
  for (const auto& [w, k] : terms_) r.terms_.emplace(w, k * c);
  return r;
}

bool element::operator==(const element& o) const {
  if (terms_.size() != o.terms_.size()) return false;
  auto it = terms_.begin(), jt = o.terms_.begin();
  for (; it != terms_.end(); ++it, ++jt) {
    if (!word_equal(it->first, jt->first) || it->second != jt->second) return false;
  }
  return true;
}

std::pair<word, scalar> element::leading() const {
  if (terms_.empty()) throw error(errc::internal, "leading term of zero");
  auto it = std::prev(terms_.end());
  return {it->first, it->second};
}

int element::max_length() const {
  int m = 0;
  for (const auto& [w, c] : terms_) m = std::max(m, w.length());
  return m;
}

element element::from_word(const field& f, const word& w) {
  element e(f);
  e.add_term(w, one(f));
  return e;
}

std::string element::str(const ice_quiver& q) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  // Largest terms first.
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    std::string c = it->second.str();
    bool neg = !c.empty() && c[0] == '-';
    if (neg) c = c.substr(1);
    if (first) {
      if (neg) os << "- ";
    } else {
      os << (neg ? " - " : " + ");
    }
    if (c != "1" || it->first.is_idempotent()) os << c << ' ';
    if (!it->first.is_idempotent() || c == "1") os << word_str(it->first, q);
    first = false;
  }
  return os.str();
}

element multiply(const ice_quiver& q, const element& a, const element& b) {
  element r(a.fld());
  for (const auto& [wa, ca] : a.terms())
    for (const auto& [wb, cb] : b.terms())
      if (auto w = compose(q, wa, wb)) r.add_term(*w, ca * cb);
  return r;
}

element word_times(const ice_quiver& q, const word& w, const element& x) {
  element r(x.fld());
  for (const auto& [wx, c] : x.terms())
    if (auto p = compose(q, w, wx)) r.add_term(*p, c);
  return r;
}

element times_word(const ice_quiver& q, const element& x, const word& w) {
  element r(x.fld());
  for (const auto& [wx, c] : x.terms())
    if (auto p = compose(q, wx, w)) r.add_term(*p, c);
  return r;
}

bool endpoint_homogeneous(const element& x, const ice_quiver& q, int* tail, int* head) {
  if (x.is_zero()) return true;
  int t = tail_of(x.terms().begin()->first, q);
  int h = head_of(x.terms().begin()->first, q);
  for (const auto& [w, c] : x.terms())
    if (tail_of(w, q) != t || head_of(w, q) != h) return false;
  if (tail) *tail = t;
  if (head) *head = h;
  return true;
}

word rotate(const word& w, int k) {
  word r = w;
  std::rotate(r.seq.begin(), r.seq.begin() + k, r.seq.end());
  return r;
}

word canonical_rotation(const word& w) {
  word best = w;
  word_order lt;
  for (int k = 1; k < w.length(); ++k) {
    word r = rotate(w, k);
    if (lt(r, best)) best = r;
  }
  return best;
}

void potential::add_cycle(const ice_quiver& q, const word& w, const scalar& c) {
  if (!is_cycle(w, q))
    throw error(errc::invalid_input, "potential term '" + word_str(w, q) + "' is not a cycle");
  if (value_.is_zero() && !(value_.fld() == c.fld())) value_ = element(c.fld());
  value_.add_term(canonical_rotation(w), c);
}

}  // namespace frjac
