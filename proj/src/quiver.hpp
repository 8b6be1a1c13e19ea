#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "field.hpp"

namespace frjac {

// Arrows and vertices are referred to by dense indices; names are kept for
// I/O. The arrow index order doubles as the monomial-order precedence.
struct arrow_data {
  std::string name;
  int tail = 0;
  int head = 0;
  bool frozen = false;
};

struct ice_quiver {
  std::vector<std::string> vertex_names;
  std::vector<bool> vertex_frozen;
  std::vector<arrow_data> arrows;

  int num_vertices() const { return static_cast<int>(vertex_names.size()); }
  int num_arrows() const { return static_cast<int>(arrows.size()); }
  bool is_frozen_vertex(int v) const { return vertex_frozen[v]; }

  std::vector<int> unfrozen_vertices() const;
  std::vector<int> unfrozen_arrows() const;
  std::vector<int> arrows_out(int v) const;
  std::vector<int> arrows_in(int v) const;

  int vertex_index(const std::string& name) const;  // -1 if unknown
  int arrow_index(const std::string& name) const;
};

enum class violation_kind { loop_arrow, frozen_arrow_endpoint, duplicate_vertex, duplicate_arrow, bad_endpoint };

struct violation {
  violation_kind kind;
  std::string detail;
};

std::vector<violation> validate(const ice_quiver& q);

// A path, stored as its arrow indices in traversal order: seq[0] is the first
// arrow traversed, so the conventional right-to-left notation "a3 a2 a1" is
// stored as {a1, a2, a3}. The empty path carries its vertex.
struct word {
  int base = 0;               // vertex of the empty path; ignored otherwise
  std::vector<int> seq;

  int length() const { return static_cast<int>(seq.size()); }
  bool is_idempotent() const { return seq.empty(); }
};

int tail_of(const word& w, const ice_quiver& q);
int head_of(const word& w, const ice_quiver& q);
word idempotent_word(int v);
word arrow_word(const ice_quiver& q, int a);
bool is_cycle(const word& w, const ice_quiver& q);
bool composable(const ice_quiver& q, const word& p, const word& after_q);

// p after q (p.q in right-to-left notation); nullopt when head(q) != tail(p).
std::optional<word> compose(const ice_quiver& q, const word& p, const word& before);

// Length-then-lexicographic well order on paths; precedence is the arrow
// index order with the first-traversed arrow most significant. Admissible:
// multiplicative and a well order on each endpoint pair.
struct word_order {
  bool operator()(const word& a, const word& b) const;
};

bool word_equal(const word& a, const word& b);

std::string word_str(const word& w, const ice_quiver& q);

// Finite K-linear combination of paths with nonzero exact coefficients. Both
// endpoint-homogeneous elements and free combinations are allowed; operations
// that require fixed endpoints check for themselves.
class element {
 public:
  element() = default;
  explicit element(const field& f) : fld_(f) {}

  const field& fld() const { return fld_; }
  bool is_zero() const { return terms_.empty(); }
  int num_terms() const { return static_cast<int>(terms_.size()); }
  const std::map<word, scalar, word_order>& terms() const { return terms_; }

  void add_term(const word& w, const scalar& c);
  element& operator+=(const element& o);
  element& operator-=(const element& o);
  element operator-() const;
  element scaled(const scalar& c) const;
  bool operator==(const element& o) const;

  // Largest term in the monomial order; element must be nonzero.
  std::pair<word, scalar> leading() const;
  // Max/min term length over the support (0 for the zero element).
  int max_length() const;

  static element from_word(const field& f, const word& w);

  std::string str(const ice_quiver& q) const;

 private:
  field fld_;
  std::map<word, scalar, word_order> terms_;
};

element multiply(const ice_quiver& q, const element& a, const element& b);  // a.b, b first
element word_times(const ice_quiver& q, const word& w, const element& x);   // w.x
element times_word(const ice_quiver& q, const element& x, const word& w);   // x.w

// True when all terms share one tail and one head.
bool endpoint_homogeneous(const element& x, const ice_quiver& q, int* tail = nullptr, int* head = nullptr);

// Potential: combination of cycles, each stored by its lexicographically
// least rotation. Terms that merge under rotation are combined.
class potential {
 public:
  potential() = default;
  explicit potential(const field& f) : value_(f) {}

  // Throws invalid_input unless w is a cycle.
  void add_cycle(const ice_quiver& q, const word& w, const scalar& c);
  const element& value() const { return value_; }
  bool is_zero() const { return value_.is_zero(); }

 private:
  element value_;
};

word canonical_rotation(const word& w);
word rotate(const word& w, int k);  // start traversal at position k

}  // namespace frjac
