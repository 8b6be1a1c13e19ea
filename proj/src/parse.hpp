#pragma once

#include <string>

#include "quiver.hpp"

namespace frjac {

struct parsed_input {
  ice_quiver q;
  potential W;
  field fld;
};

// Parses the line-oriented quiver file format:
//
//   field    (Q | Fp <prime>)
//   vertices <id> ...
//   frozen_vertices <id> ...
//   arrows
//     <name>: <tail> -> <head> [frozen]
//   potential
//     <sign?> <coeff?> <name> <name> ...   # one cycle per line, right-to-left
//
// '#' starts a comment. `field`, `frozen_vertices` and `potential` may be
// omitted (defaults: Q, none, 0). Throws frjac::error with errc::parse and a
// "line L, col C" location on malformed input, loop arrows, frozen arrows
// with unfrozen endpoints, non-composable terms and non-cycle terms.
// `override_field`, when set, wins over the file's field directive.
parsed_input parse_ice_qp(const std::string& text, const std::optional<field>& override_field = std::nullopt);

// Inverse of parse_ice_qp up to comments and whitespace: parse(print(x)) == x.
std::string print_quiver_file(const parsed_input& in);

}  // namespace frjac
