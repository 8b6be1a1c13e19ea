#include "ncgb.hpp"

#include <algorithm>
#include <queue>
#include <set>

namespace frjac {

namespace {

// Position of the first occurrence of `pat` in `w`, or -1.
int find_subword(const word& w, const word& pat) {
  if (pat.length() == 0 || pat.length() > w.length()) return -1;
  auto it = std::search(w.seq.begin(), w.seq.end(), pat.seq.begin(), pat.seq.end());
  if (it == w.seq.end()) return -1;
  return static_cast<int>(it - w.seq.begin());
}

struct reducer {
  const ice_quiver& q;
  const std::vector<gb_item>& items;

  // Fully reduces x: every term of the result avoids all leading words.
  element reduce(element x) const {
    element out(x.fld());
    while (!x.is_zero()) {
      auto [w, c] = x.leading();
      int hit = -1, pos = -1;
      for (size_t i = 0; i < items.size() && hit < 0; ++i) {
        int p = find_subword(w, items[i].lead);
        if (p >= 0) {
          hit = static_cast<int>(i);
          pos = p;
        }
      }
      if (hit < 0) {
        out.add_term(w, c);
        x.add_term(w, -c);
        continue;
      }
      const gb_item& g = items[hit];
      int len = g.lead.length();
      word pre, post;
      pre.seq.assign(w.seq.begin(), w.seq.begin() + pos);
      if (pre.seq.empty()) pre.base = tail_of(g.lead, q);
      post.seq.assign(w.seq.begin() + pos + len, w.seq.end());
      if (post.seq.empty()) post.base = head_of(g.lead, q);
      // w = post . lead . pre, so subtract c * post . g . pre.
      element repl = word_times(q, post, times_word(q, g.poly, pre));
      x -= repl.scaled(c);
    }
    return out;
  }
};

struct pair_entry {
  int len;     // superposition length
  int a, b;    // item ids
  int overlap;
  bool operator>(const pair_entry& o) const {
    return std::tie(len, a, b, overlap) > std::tie(o.len, o.a, o.b, o.overlap);
  }
};

struct completion {
  const ice_quiver& q;
  field fld;
  int cap;
  std::map<int, gb_item> live;  // id -> item
  int next_id = 0;
  std::priority_queue<pair_entry, std::vector<pair_entry>, std::greater<pair_entry>> pairs;
  bool truncated = false;

  std::vector<gb_item> snapshot() const {
    std::vector<gb_item> v;
    v.reserve(live.size());
    for (const auto& [id, it] : live) v.push_back(it);
    return v;
  }

  void enqueue_overlaps(int ida, int idb) {
    const word& u = live.at(ida).lead;
    const word& v = live.at(idb).lead;
    int lim = std::min(u.length(), v.length()) - 1;
    for (int o = 1; o <= lim; ++o) {
      if (!std::equal(u.seq.end() - o, u.seq.end(), v.seq.begin())) continue;
      pairs.push({u.length() + v.length() - o, ida, idb, o});
    }
  }

  // Reduce against the current items and insert; displaced items re-reduce.
  void add(element e) {
    std::vector<element> work{std::move(e)};
    while (!work.empty()) {
      element cur = std::move(work.back());
      work.pop_back();
      auto items = snapshot();
      cur = reducer{q, items}.reduce(std::move(cur));
      if (cur.is_zero()) continue;
      auto [lw, lc] = cur.leading();
      if (lw.length() == 0)
        throw error(errc::unsupported, "ideal contains a degree-0 element; input outside the supported regimes");
      cur = cur.scaled(lc.inv());
      // Displace items whose lead contains the new lead.
      for (auto it = live.begin(); it != live.end();) {
        if (find_subword(it->second.lead, lw) >= 0) {
          work.push_back(it->second.poly);
          it = live.erase(it);
        } else {
          ++it;
        }
      }
      int id = next_id++;
      live.emplace(id, gb_item{cur, lw});
      for (const auto& [oid, item] : live) {
        enqueue_overlaps(id, oid);
        if (oid != id) enqueue_overlaps(oid, id);
      }
    }
  }

  void run() {
    while (!pairs.empty()) {
      pair_entry p = pairs.top();
      if (p.len > cap) {
        // Everything left is at least this long.
        truncated = true;
        break;
      }
      pairs.pop();
      auto ia = live.find(p.a);
      auto ib = live.find(p.b);
      if (ia == live.end() || ib == live.end()) continue;
      const word& u = ia->second.lead;
      const word& v = ib->second.lead;
      if (p.overlap > std::min(u.length(), v.length()) - 1 ||
          !std::equal(u.seq.end() - p.overlap, u.seq.end(), v.seq.begin()))
        continue;  // stale
      // Superposition s = B.u = v.A with B, A the non-overlapping parts.
      word B, A;
      B.seq.assign(v.seq.begin() + p.overlap, v.seq.end());
      if (B.seq.empty()) B.base = head_of(u, q);
      A.seq.assign(u.seq.begin(), u.seq.end() - p.overlap);
      if (A.seq.empty()) A.base = tail_of(v, q);
      element spoly = word_times(q, B, ia->second.poly);
      spoly -= times_word(q, ib->second.poly, A);
      add(std::move(spoly));
    }
  }

  void interreduce_tails() {
    bool changed = true;
    while (changed) {
      changed = false;
      for (auto& [id, item] : live) {
        std::vector<gb_item> others;
        for (const auto& [oid, oit] : live)
          if (oid != id) others.push_back(oit);
        element red = reducer{q, others}.reduce(item.poly);
        if (!(red == item.poly)) {
          item.poly = red;
          changed = true;
        }
      }
    }
  }
};

}  // namespace

groebner_basis buchberger(const ice_quiver& q, const field& fld, const std::vector<element>& relations,
                          int degree_cap, std::optional<grading> grad, bool force_general) {
  int max_deg = 0;
  for (const auto& r : relations) {
    if (r.is_zero()) continue;
    if (!endpoint_homogeneous(r, q))
      throw error(errc::invalid_input, "relation is not endpoint-homogeneous: " + r.str(q));
    max_deg = std::max(max_deg, r.max_length());
  }
  if (degree_cap < max_deg)
    throw error(errc::invalid_input, "degree cap " + std::to_string(degree_cap) +
                                         " below maximal relation degree " + std::to_string(max_deg));

  bool all_monomial = true;
  for (const auto& r : relations)
    if (r.num_terms() > 1) all_monomial = false;

  completion c{q, fld, degree_cap, {}, 0, {}, false};
  for (const auto& r : relations)
    if (!r.is_zero()) c.add(r);
  if (!all_monomial || force_general) c.run();  // monomial overlaps always reduce to zero
  c.interreduce_tails();

  groebner_basis gb;
  gb.q = q;
  gb.fld = fld;
  gb.items = c.snapshot();
  std::sort(gb.items.begin(), gb.items.end(),
            [](const gb_item& a, const gb_item& b) { return word_order{}(a.lead, b.lead); });
  gb.status = c.truncated ? gb_status::truncated : gb_status::complete;
  gb.cap = degree_cap;
  for (const auto& it : gb.items) gb.max_lead_len = std::max(gb.max_lead_len, it.lead.length());
  gb.grad = std::move(grad);
  if (gb.grad) {
    for (int d : gb.grad->arrow_degree)
      if (d < 1) throw error(errc::invalid_input, "grading has a non-positive arrow degree");
    for (const auto& it : gb.items)
      if (!homogeneous_degree(it.poly, *gb.grad))
        throw error(errc::invalid_input, "relation inhomogeneous under the given grading: " + it.poly.str(q));
  }
  return gb;
}

element normal_form(const element& x, const groebner_basis& gb) {
  if (!gb.complete()) {
    for (const auto& [w, cval] : x.terms()) {
      bool ok = gb.grad ? gb.grad->degree_of(w) <= gb.cap : w.length() < gb.cap - gb.max_lead_len;
      if (!ok)
        throw error(errc::uncertified,
                    "normal form request outside the certified range of a basis truncated at degree " +
                        std::to_string(gb.cap));
    }
  }
  return reducer{gb.q, gb.items}.reduce(x);
}

element nf_multiply(const groebner_basis& gb, const element& a, const element& b) {
  return normal_form(multiply(gb.q, a, b), gb);
}

namespace {

bool tail_is_normal(const groebner_basis& gb, const word& w) {
  // w was extended by one arrow; only suffixes ending at the last position
  // can newly contain a leading word.
  for (const auto& it : gb.items) {
    int len = it.lead.length();
    if (len > w.length()) continue;
    if (std::equal(w.seq.end() - len, w.seq.end(), it.lead.seq.begin())) return false;
  }
  return true;
}

std::vector<word> extend_level(const groebner_basis& gb, const std::vector<word>& level) {
  std::vector<word> next;
  for (const auto& w : level) {
    int h = head_of(w, gb.q);
    for (int a = 0; a < gb.q.num_arrows(); ++a) {
      if (gb.q.arrows[a].tail != h) continue;
      word x = w;
      x.seq.push_back(a);
      if (tail_is_normal(gb, x)) next.push_back(std::move(x));
    }
  }
  return next;
}

}  // namespace

normal_word_basis enumerate_basis(const groebner_basis& gb, int length_cap) {
  normal_word_basis out;
  std::vector<word> level;
  for (int v = 0; v < gb.q.num_vertices(); ++v) level.push_back(idempotent_word(v));

  auto absorb = [&](const std::vector<word>& lv) {
    for (const auto& w : lv) {
      out.words.push_back(w);
      ++out.counts[{tail_of(w, gb.q), head_of(w, gb.q), w.length()}];
    }
  };

  if (!gb.complete()) {
    out.verdict = finiteness::unknown_beyond;
    out.bound = length_cap;
    for (int len = 0; len <= length_cap && !level.empty(); ++len) {
      absorb(level);
      level = extend_level(gb, level);
    }
    out.total = static_cast<long>(out.words.size());
    return out;
  }

  // Window graph on normal words of length m; edges come from normal words of
  // length m+1. A directed cycle is equivalent to arbitrarily long normal
  // words, since all obstructions have length <= m+1.
  int m = std::max(1, gb.max_lead_len - 1);
  std::vector<std::vector<word>> levels;
  levels.push_back(level);
  while (static_cast<int>(levels.size()) <= m + 1 && !levels.back().empty())
    levels.push_back(extend_level(gb, levels.back()));

  bool cyclic = false;
  if (static_cast<int>(levels.size()) > m + 1 && !levels[m + 1].empty()) {
    std::map<std::vector<int>, int> vid;
    for (const auto& w : levels[m]) {
      int id = static_cast<int>(vid.size());
      vid.emplace(w.seq, id);
    }
    std::vector<std::vector<int>> adj(vid.size());
    for (const auto& w : levels[m + 1]) {
      std::vector<int> u(w.seq.begin(), w.seq.end() - 1);
      std::vector<int> v(w.seq.begin() + 1, w.seq.end());
      adj[vid.at(u)].push_back(vid.at(v));
    }
    std::vector<int> color(vid.size(), 0);
    std::vector<std::pair<int, size_t>> stack;
    for (size_t s = 0; s < vid.size() && !cyclic; ++s) {
      if (color[s]) continue;
      stack.push_back({static_cast<int>(s), 0});
      color[s] = 1;
      while (!stack.empty() && !cyclic) {
        auto& [u, k] = stack.back();
        if (k == adj[u].size()) {
          color[u] = 2;
          stack.pop_back();
          continue;
        }
        int v = adj[u][k++];
        if (color[v] == 1) cyclic = true;
        else if (color[v] == 0) {
          color[v] = 1;
          stack.push_back({v, 0});
        }
      }
    }
  }

  if (cyclic) {
    out.verdict = finiteness::infinite_with_growth;
    out.bound = length_cap;
    for (int len = 0; len < static_cast<int>(levels.size()) && len <= length_cap; ++len) absorb(levels[len]);
    level = levels.back();
    for (int len = static_cast<int>(levels.size()); len <= length_cap && !level.empty(); ++len) {
      level = extend_level(gb, level);
      if (len <= length_cap) absorb(level);
    }
    out.total = static_cast<long>(out.words.size());
    return out;
  }

  // Acyclic: the basis is finite; walk until a level is empty.
  out.verdict = finiteness::finite;
  size_t window_count = levels.size() > static_cast<size_t>(m) ? levels[m].size() : 0;
  int safety = m + static_cast<int>(window_count) + 2;
  for (const auto& lv : levels) absorb(lv);
  level = levels.back();
  int len = static_cast<int>(levels.size()) - 1;
  while (!level.empty()) {
    level = extend_level(gb, level);
    absorb(level);
    if (++len > safety) throw error(errc::internal, "finiteness detection disagrees with enumeration");
  }
  out.total = static_cast<long>(out.words.size());
  out.bound = 0;
  for (const auto& w : out.words) out.bound = std::max(out.bound, w.length());
  return out;
}

std::vector<word> graded_normal_words(const groebner_basis& gb, const grading& g, int degree_cap) {
  for (int d : g.arrow_degree)
    if (d < 1) throw error(errc::invalid_input, "graded enumeration needs positive arrow degrees");
  for (const auto& it : gb.items)
    if (!homogeneous_degree(it.poly, g))
      throw error(errc::invalid_input, "inhomogeneous relation under the grading: " + it.poly.str(gb.q));
  if (!gb.complete() && !(gb.grad && gb.cap >= degree_cap))
    throw error(errc::uncertified, "basis not certified up to internal degree " + std::to_string(degree_cap));

  std::vector<word> out;
  std::vector<word> level;
  for (int v = 0; v < gb.q.num_vertices(); ++v) level.push_back(idempotent_word(v));
  while (!level.empty()) {
    std::vector<word> next;
    for (const auto& w : level) {
      out.push_back(w);
      int h = head_of(w, gb.q);
      int d = g.degree_of(w);
      for (int a = 0; a < gb.q.num_arrows(); ++a) {
        if (gb.q.arrows[a].tail != h || d + g.arrow_degree[a] > degree_cap) continue;
        word x = w;
        x.seq.push_back(a);
        if (tail_is_normal(gb, x)) next.push_back(std::move(x));
      }
    }
    level = std::move(next);
  }
  std::sort(out.begin(), out.end(), [](const word& a, const word& b) { return word_order{}(a, b); });
  return out;
}

std::map<std::tuple<int, int, int>, long> graded_dimensions(const groebner_basis& gb, const grading& g,
                                                            int degree_cap) {
  std::map<std::tuple<int, int, int>, long> counts;
  for (const auto& w : graded_normal_words(gb, g, degree_cap))
    ++counts[{tail_of(w, gb.q), head_of(w, gb.q), g.degree_of(w)}];
  return counts;
}

}  // namespace frjac
