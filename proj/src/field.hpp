#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace frjac {

// Error with a coarse category, surfaced through the C API as a status code.
enum class errc {
  parse,
  invalid_input,
  unsupported,
  uncertified,
  internal,
};

struct error : std::runtime_error {
  errc code;
  error(errc c, const std::string& what) : std::runtime_error(what), code(c) {}
};

enum class field_kind : uint8_t { rationals, prime };

struct field {
  field_kind kind = field_kind::rationals;
  uint64_t p = 0;  // modulus when kind == prime

  bool operator==(const field&) const = default;
  std::string name() const;
};

field rationals();
field prime_field(uint64_t p);  // throws unless p is an odd prime < 2^31

// Exact field element: a rational (GMP) or a residue mod p. Results over Q are
// definitive; over F_p, rank equalities are characteristic-p certificates.
class scalar {
 public:
  scalar() = default;  // zero over Q
  explicit scalar(const field& f) : fld_(f) {}
  scalar(const field& f, long n);
  scalar(const field& f, const mpq_class& q);

  const field& fld() const { return fld_; }
  bool is_zero() const;
  bool is_one() const;

  scalar operator-() const;
  scalar& operator+=(const scalar& o);
  scalar& operator-=(const scalar& o);
  scalar& operator*=(const scalar& o);
  scalar inv() const;  // throws on zero

  friend scalar operator+(scalar a, const scalar& b) { return a += b; }
  friend scalar operator-(scalar a, const scalar& b) { return a -= b; }
  friend scalar operator*(scalar a, const scalar& b) { return a *= b; }
  friend scalar operator/(scalar a, const scalar& b) { return a *= b.inv(); }
  bool operator==(const scalar& o) const;
  bool operator!=(const scalar& o) const { return !(*this == o); }

  const mpq_class& rat() const { return q_; }
  uint64_t residue() const { return r_; }

  std::string str() const;

  // Parses "n", "-n" or "n/m"; over F_p the value is reduced mod p.
  static scalar parse(const field& f, const std::string& text);

 private:
  void check_same(const scalar& o) const;

  field fld_;
  mpq_class q_ = 0;
  uint64_t r_ = 0;
};

inline scalar zero(const field& f) { return scalar(f); }
inline scalar one(const field& f) { return scalar(f, 1); }

}  // namespace frjac
