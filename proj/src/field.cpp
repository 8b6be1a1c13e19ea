#include "field.hpp"

namespace frjac {

std::string field::name() const {
  if (kind == field_kind::rationals) return "Q";
  return "F" + std::to_string(p);
}

field rationals() { return field{field_kind::rationals, 0}; }

namespace {

bool is_prime_u64(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

uint64_t mulmod(uint64_t a, uint64_t b, uint64_t p) {
  return static_cast<uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

uint64_t powmod(uint64_t a, uint64_t e, uint64_t p) {
  uint64_t r = 1;
  a %= p;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

}  // namespace

field prime_field(uint64_t p) {
  if (p < 3 || p >= (1ull << 31) || !is_prime_u64(p))
    throw error(errc::invalid_input, "field modulus must be an odd prime < 2^31, got " + std::to_string(p));
  return field{field_kind::prime, p};
}

scalar::scalar(const field& f, long n) : fld_(f) {
  if (f.kind == field_kind::rationals) {
    q_ = n;
  } else {
    long m = n % static_cast<long>(f.p);
    if (m < 0) m += static_cast<long>(f.p);
    r_ = static_cast<uint64_t>(m);
  }
}

scalar::scalar(const field& f, const mpq_class& q) : fld_(f) {
  if (f.kind == field_kind::rationals) {
    q_ = q;
    q_.canonicalize();
  } else {
    mpz_class num = q.get_num() % static_cast<long>(f.p);
    mpz_class den = q.get_den() % static_cast<long>(f.p);
    long n = num.get_si(), d = den.get_si();
    if (n < 0) n += static_cast<long>(f.p);
    if (d < 0) d += static_cast<long>(f.p);
    if (d == 0) throw error(errc::invalid_input, "denominator divisible by field characteristic");
    r_ = mulmod(static_cast<uint64_t>(n), powmod(static_cast<uint64_t>(d), f.p - 2, f.p), f.p);
  }
}

bool scalar::is_zero() const {
  return fld_.kind == field_kind::rationals ? q_ == 0 : r_ == 0;
}

bool scalar::is_one() const {
  return fld_.kind == field_kind::rationals ? q_ == 1 : r_ == 1;
}

void scalar::check_same(const scalar& o) const {
  if (!(fld_ == o.fld_)) throw error(errc::internal, "mixed-field scalar arithmetic");
}

scalar scalar::operator-() const {
  scalar s(fld_);
  if (fld_.kind == field_kind::rationals)
    s.q_ = -q_;
  else
    s.r_ = r_ == 0 ? 0 : fld_.p - r_;
  return s;
}

scalar& scalar::operator+=(const scalar& o) {
  check_same(o);
  if (fld_.kind == field_kind::rationals) {
    q_ += o.q_;
  } else {
    r_ += o.r_;
    if (r_ >= fld_.p) r_ -= fld_.p;
  }
  return *this;
}

scalar& scalar::operator-=(const scalar& o) {
  check_same(o);
  if (fld_.kind == field_kind::rationals) {
    q_ -= o.q_;
  } else {
    r_ += fld_.p - o.r_;
    if (r_ >= fld_.p) r_ -= fld_.p;
  }
  return *this;
}

scalar& scalar::operator*=(const scalar& o) {
  check_same(o);
  if (fld_.kind == field_kind::rationals)
    q_ *= o.q_;
  else
    r_ = mulmod(r_, o.r_, fld_.p);
  return *this;
}

scalar scalar::inv() const {
  if (is_zero()) throw error(errc::internal, "inverse of zero");
  scalar s(fld_);
  if (fld_.kind == field_kind::rationals)
    s.q_ = 1 / q_;
  else
    s.r_ = powmod(r_, fld_.p - 2, fld_.p);
  return s;
}

bool scalar::operator==(const scalar& o) const {
  check_same(o);
  return fld_.kind == field_kind::rationals ? q_ == o.q_ : r_ == o.r_;
}

std::string scalar::str() const {
  if (fld_.kind == field_kind::rationals) return q_.get_str();
  return std::to_string(r_);
}

scalar scalar::parse(const field& f, const std::string& text) {
  try {
    mpq_class q(text);
    q.canonicalize();
    return scalar(f, q);
  } catch (const std::invalid_argument&) {
    throw error(errc::parse, "bad coefficient '" + text + "'");
  }
}

}  // namespace frjac
