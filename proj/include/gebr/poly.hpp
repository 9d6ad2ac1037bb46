#pragma once

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "gf.hpp"

namespace gebr {

/// Polynomial over GF(2^w), dense, coefficient of x^0 first, no trailing zeros.
class Poly {
 public:
  Poly() = default;
  explicit Poly(unsigned w) : w_(w) { gf::check_width(w); }
  Poly(std::vector<std::uint8_t> coeffs, unsigned w) : w_(w), c_(std::move(coeffs)) {
    gf::check_width(w);
    const unsigned q = 1u << w;
    for (auto v : c_)
      if (v >= q) throw Error(ErrorCode::BadArgument, "coefficient out of range for w=" + std::to_string(w));
    trim();
  }

  static Poly zero(unsigned w = 1) { return Poly(w); }
  static Poly one(unsigned w = 1) { return monomial(0, w); }
  static Poly monomial(std::size_t e, unsigned w = 1, std::uint8_t c = 1) {
    Poly r(w);
    if (c == 0) return r;
    r.c_.assign(e + 1, 0);
    r.c_[e] = c;
    return r;
  }
  /// Sum of x^e over the listed exponents (repeats cancel).
  static Poly from_exponents(std::initializer_list<std::size_t> exps, unsigned w = 1) {
    return from_exponents(std::vector<std::size_t>(exps), w);
  }
  static Poly from_exponents(const std::vector<std::size_t>& exps, unsigned w = 1) {
    Poly r(w);
    for (auto e : exps) {
      if (r.c_.size() <= e) r.c_.resize(e + 1, 0);
      r.c_[e] ^= 1;
    }
    r.trim();
    return r;
  }

  unsigned width() const { return w_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
  std::uint8_t lead() const { return c_.empty() ? 0 : c_.back(); }
  std::uint8_t operator[](std::size_t i) const { return i < c_.size() ? c_[i] : 0; }
  const std::vector<std::uint8_t>& coeffs() const { return c_; }
  std::size_t weight() const {
    return static_cast<std::size_t>(std::count_if(c_.begin(), c_.end(), [](auto v) { return v != 0; }));
  }

  Poly& operator+=(const Poly& o) {
    same(o);
    if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), 0);
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] ^= o.c_[i];
    trim();
    return *this;
  }
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a += b; }

  friend Poly operator*(const Poly& a, const Poly& b) {
    a.same(b);
    Poly r(a.w_);
    if (a.is_zero() || b.is_zero()) return r;
    r.c_.assign(a.c_.size() + b.c_.size() - 1, 0);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      const auto ai = a.c_[i];
      if (!ai) continue;
      if (a.w_ == 1) {
        for (std::size_t j = 0; j < b.c_.size(); ++j) r.c_[i + j] ^= b.c_[j];
      } else {
        for (std::size_t j = 0; j < b.c_.size(); ++j) r.c_[i + j] ^= gf::mul(a.w_, ai, b.c_[j]);
      }
    }
    r.trim();
    return r;
  }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  Poly scaled(std::uint8_t c) const {
    Poly r(w_);
    if (c == 0) return r;
    r.c_ = c_;
    for (auto& v : r.c_) v = gf::mul(w_, v, c);
    return r;
  }
  /// Multiplication by x^k.
  Poly shifted(std::size_t k) const {
    Poly r(w_);
    if (is_zero()) return r;
    r.c_.assign(k, 0);
    r.c_.insert(r.c_.end(), c_.begin(), c_.end());
    return r;
  }
  Poly monic() const { return is_zero() ? *this : scaled(gf::inv(w_, lead())); }

  friend bool operator==(const Poly& a, const Poly& b) { return a.w_ == b.w_ && a.c_ == b.c_; }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }
  friend bool operator<(const Poly& a, const Poly& b) {
    if (a.c_.size() != b.c_.size()) return a.c_.size() < b.c_.size();
    return std::lexicographical_compare(a.c_.rbegin(), a.c_.rend(), b.c_.rbegin(), b.c_.rend());
  }

  void same(const Poly& o) const {
    if (w_ != o.w_) throw Error(ErrorCode::FieldMismatch, "polynomials over different fields");
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }

  unsigned w_ = 1;
  std::vector<std::uint8_t> c_;
};

inline std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
  a.same(b);
  if (b.is_zero()) throw Error(ErrorCode::DivisionByZero, "polynomial division by zero");
  const unsigned w = a.width();
  if (a.degree() < b.degree()) return {Poly(w), a};
  std::vector<std::uint8_t> rem = a.coeffs();
  const auto& bc = b.coeffs();
  const int db = b.degree();
  const std::uint8_t linv = gf::inv(w, b.lead());
  std::vector<std::uint8_t> quo(static_cast<std::size_t>(a.degree() - db + 1), 0);
  for (int i = a.degree(); i >= db; --i) {
    const std::uint8_t c = gf::mul(w, rem[static_cast<std::size_t>(i)], linv);
    if (!c) continue;
    const std::size_t s = static_cast<std::size_t>(i - db);
    quo[s] = c;
    for (std::size_t j = 0; j < bc.size(); ++j) rem[s + j] ^= gf::mul(w, c, bc[j]);
  }
  rem.resize(static_cast<std::size_t>(db));
  return {Poly(std::move(quo), w), Poly(std::move(rem), w)};
}

inline Poly operator/(const Poly& a, const Poly& b) { return divmod(a, b).first; }
inline Poly operator%(const Poly& a, const Poly& b) { return divmod(a, b).second; }

inline bool divides(const Poly& d, const Poly& a) { return (a % d).is_zero(); }

struct GcdExt {
  Poly gcd, s, t;
};

/// Monic gcd with Bezout cofactors: s*a + t*b = gcd.
inline GcdExt gcd_ext(const Poly& a, const Poly& b) {
  a.same(b);
  const unsigned w = a.width();
  if (a.is_zero() && b.is_zero()) throw Error(ErrorCode::BothZero, "gcd of two zero polynomials");
  Poly r0 = a, r1 = b, s0 = Poly::one(w), s1(w), t0(w), t1 = Poly::one(w);
  while (!r1.is_zero()) {
    auto [q, r] = divmod(r0, r1);
    r0 = std::exchange(r1, r);
    s0 = std::exchange(s1, s0 - q * s1);
    t0 = std::exchange(t1, t0 - q * t1);
  }
  const std::uint8_t li = gf::inv(w, r0.lead());
  return {r0.scaled(li), s0.scaled(li), t0.scaled(li)};
}

inline Poly gcd(const Poly& a, const Poly& b) {
  a.same(b);
  if (a.is_zero() && b.is_zero()) throw Error(ErrorCode::BothZero, "gcd of two zero polynomials");
  Poly r0 = a, r1 = b;
  while (!r1.is_zero()) r0 = std::exchange(r1, r0 % r1);
  return r0.monic();
}

inline Poly pow(Poly base, std::size_t e) {
  Poly acc = Poly::one(base.width());
  while (e) {
    if (e & 1) acc *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return acc;
}

/// 1 + x^step + x^{2 step} + ... + x^{(count-1) step}.
inline Poly cyclic_sum(std::size_t step, std::size_t count, unsigned w = 1) {
  std::vector<std::size_t> e;
  for (std::size_t i = 0; i < count; ++i) e.push_back(i * step);
  return Poly::from_exponents(e, w);
}

/// 1 + x^n.
inline Poly one_plus_x_pow(std::size_t n, unsigned w = 1) { return Poly::from_exponents({0, n}, w); }

/// Compact hex: two digits per coefficient, x^0 first. Zero renders as "00".
inline std::string to_hex(const Poly& p) {
  static const char* digits = "0123456789abcdef";
  if (p.is_zero()) return "00";
  std::string s;
  for (auto v : p.coeffs()) {
    s += digits[v >> 4];
    s += digits[v & 15];
  }
  return s;
}

/// Accepts two hex digits per coefficient, optionally separated by spaces, commas or underscores.
inline Poly parse_hex(const std::string& text, unsigned w = 1) {
  std::string d;
  for (char ch : text) {
    if (ch == ' ' || ch == ',' || ch == '_' || ch == '\t') continue;
    if (!std::isxdigit(static_cast<unsigned char>(ch))) throw Error(ErrorCode::BadArgument, "bad hex polynomial: " + text);
    d += ch;
  }
  if (d.empty() || d.size() % 2) throw Error(ErrorCode::BadArgument, "hex polynomial needs two digits per coefficient: " + text);
  std::vector<std::uint8_t> c;
  for (std::size_t i = 0; i < d.size(); i += 2) c.push_back(static_cast<std::uint8_t>(std::stoul(d.substr(i, 2), nullptr, 16)));
  return Poly(std::move(c), w);
}

/// Human-readable form, e.g. "1+x+x^3". Coefficients other than 1 print in hex before the power.
inline std::string to_string(const Poly& p) {
  if (p.is_zero()) return "0";
  std::string s;
  static const char* digits = "0123456789abcdef";
  for (std::size_t i = 0; i < p.coeffs().size(); ++i) {
    const auto v = p.coeffs()[i];
    if (!v) continue;
    if (!s.empty()) s += '+';
    std::string c;
    if (v != 1) {
      c = "0x";
      c += digits[v >> 4];
      c += digits[v & 15];
    }
    if (i == 0) s += v == 1 ? "1" : c;
    else {
      if (!c.empty()) s += c + "*";
      s += i == 1 ? "x" : "x^" + std::to_string(i);
    }
  }
  return s;
}

/// u32 LE coefficient count followed by one byte per coefficient.
inline std::vector<std::uint8_t> serialize(const Poly& p) {
  std::vector<std::uint8_t> out;
  const auto n = static_cast<std::uint32_t>(p.coeffs().size());
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(n >> (8 * i)));
  out.insert(out.end(), p.coeffs().begin(), p.coeffs().end());
  return out;
}

inline Poly deserialize(const std::vector<std::uint8_t>& bytes, unsigned w = 1) {
  if (bytes.size() < 4) throw Error(ErrorCode::BadArgument, "truncated polynomial");
  std::uint32_t n = 0;
  for (int i = 0; i < 4; ++i) n |= static_cast<std::uint32_t>(bytes[static_cast<std::size_t>(i)]) << (8 * i);
  if (bytes.size() != 4 + static_cast<std::size_t>(n)) throw Error(ErrorCode::BadArgument, "polynomial length mismatch");
  return Poly(std::vector<std::uint8_t>(bytes.begin() + 4, bytes.end()), w);
}

}  // namespace gebr
