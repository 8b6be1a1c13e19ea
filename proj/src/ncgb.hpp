#pragma once

#include <map>
#include <optional>
#include <tuple>
#include <vector>

#include "jacobian.hpp"
#include "quiver.hpp"

namespace frjac {

struct gb_item {
  element poly;  // monic
  word lead;
};

enum class gb_status { complete, truncated };

// Reduced rewriting system for a two-sided path-algebra ideal. Leading words
// are pairwise subword-free and all tails are fully reduced. A truncated
// basis certifies normal forms for path lengths < cap - max_lead_len, or for
// all internal degrees <= cap when `grad` makes the ideal homogeneous with
// positive arrow degrees (an overlap of internal degree <= cap has length
// <= cap, so every such overlap was processed).
struct groebner_basis {
  ice_quiver q;
  field fld;
  std::vector<gb_item> items;
  gb_status status = gb_status::complete;
  int cap = 0;
  int max_lead_len = 0;
  std::optional<grading> grad;

  bool complete() const { return status == gb_status::complete; }
};

// Buchberger completion under the length-lex order, processing overlaps by
// increasing superposition length and stopping at degree_cap. Relations must
// be endpoint-homogeneous; throws invalid_input when degree_cap is smaller
// than the largest relation degree.
groebner_basis buchberger(const ice_quiver& q, const field& fld, const std::vector<element>& relations,
                          int degree_cap, std::optional<grading> grad = std::nullopt,
                          bool force_general = false);

// Unique fully reduced representative. Idempotent and linear. Throws
// errc::uncertified when x lies outside the certified range of a truncated
// basis.
element normal_form(const element& x, const groebner_basis& gb);

// Convenience: normal form of a product of already-reduced elements.
element nf_multiply(const groebner_basis& gb, const element& a, const element& b);

enum class finiteness { finite, infinite_with_growth, unknown_beyond };

struct normal_word_basis {
  std::vector<word> words;  // by length, then order
  finiteness verdict = finiteness::unknown_beyond;
  int bound = 0;       // for finite: max word length; else the enumeration cap
  long total = 0;      // number of enumerated words (all of them when finite)
  std::map<std::tuple<int, int, int>, long> counts;  // (tail, head, length) -> count
};

// All normal words of length <= cap. On a complete basis the graph of
// normal-word windows decides finite vs infinite exactly, and in the finite
// case enumeration continues past the cap until the basis is exhausted.
normal_word_basis enumerate_basis(const groebner_basis& gb, int length_cap);

// Exact counts of normal words per (tail, head, internal degree <= cap).
// Requires positive arrow degrees, homogeneous relations and certification of
// the basis up to the cap.
std::map<std::tuple<int, int, int>, long> graded_dimensions(const groebner_basis& gb, const grading& g,
                                                            int degree_cap);

// The normal words themselves, internal degree <= cap, sorted.
std::vector<word> graded_normal_words(const groebner_basis& gb, const grading& g, int degree_cap);

}  // namespace frjac
