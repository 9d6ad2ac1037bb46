#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "error.hpp"

namespace gebr {

namespace gf {

/// Reduction polynomials of GF(2^w), indexed by w. Bit i is the coefficient of x^i.
inline constexpr std::array<unsigned, 9> kReduction = {0, 0x3, 0x7, 0xB, 0x13, 0x25, 0x43, 0x89, 0x11B};

inline void check_width(unsigned w) {
  if (w < 1 || w > 8) throw Error(ErrorCode::BadFieldWidth, "w must be in 1..8, got " + std::to_string(w));
}

inline constexpr std::uint8_t mul_slow(unsigned w, unsigned a, unsigned b) {
  unsigned acc = 0;
  for (unsigned i = 0; i < w; ++i)
    if (b >> i & 1u) acc ^= a << i;
  for (int bit = 2 * static_cast<int>(w) - 2; bit >= static_cast<int>(w); --bit)
    if (acc >> bit & 1u) acc ^= kReduction[w] << (bit - static_cast<int>(w));
  return static_cast<std::uint8_t>(acc);
}

namespace detail {

struct Tables {
  std::array<std::array<std::uint8_t, 256>, 256> mul{};
  std::array<std::uint8_t, 256> inv{};
};

inline Tables build(unsigned w) {
  Tables t;
  const unsigned q = 1u << w;
  for (unsigned a = 0; a < q; ++a)
    for (unsigned b = 0; b < q; ++b) {
      t.mul[a][b] = mul_slow(w, a, b);
      if (t.mul[a][b] == 1) t.inv[a] = static_cast<std::uint8_t>(b);
    }
  return t;
}

inline const std::array<Tables, 9>& all_tables() {
  static const std::array<Tables, 9> tables = [] {
    std::array<Tables, 9> t{};
    for (unsigned w = 1; w <= 8; ++w) t[w] = build(w);
    return t;
  }();
  return tables;
}

}  // namespace detail

inline std::uint8_t mul(unsigned w, std::uint8_t a, std::uint8_t b) {
  if (w == 1) return a & b;
  return detail::all_tables()[w].mul[a][b];
}

inline std::uint8_t inv(unsigned w, std::uint8_t a) {
  if (a == 0) throw Error(ErrorCode::DivisionByZero, "inverse of zero field element");
  if (w == 1) return 1;
  return detail::all_tables()[w].inv[a];
}

inline std::uint8_t div(unsigned w, std::uint8_t a, std::uint8_t b) { return mul(w, a, inv(w, b)); }

}  // namespace gf

/// An element of GF(2^w) in the polynomial basis fixed by gf::kReduction.
class FieldElem {
 public:
  FieldElem() = default;
  FieldElem(unsigned value, unsigned w) : v_(static_cast<std::uint8_t>(value)), w_(w) {
    gf::check_width(w);
    if (value >= (1u << w)) throw Error(ErrorCode::BadArgument, "field element out of range");
  }

  std::uint8_t value() const { return v_; }
  unsigned width() const { return w_; }
  bool is_zero() const { return v_ == 0; }

  friend FieldElem operator+(FieldElem a, FieldElem b) {
    same(a, b);
    return FieldElem(a.v_ ^ b.v_, a.w_);
  }
  friend FieldElem operator-(FieldElem a, FieldElem b) { return a + b; }
  friend FieldElem operator*(FieldElem a, FieldElem b) {
    same(a, b);
    return FieldElem(gf::mul(a.w_, a.v_, b.v_), a.w_);
  }
  friend FieldElem operator/(FieldElem a, FieldElem b) {
    same(a, b);
    return FieldElem(gf::div(a.w_, a.v_, b.v_), a.w_);
  }
  FieldElem inverse() const { return FieldElem(gf::inv(w_, v_), w_); }

  friend bool operator==(FieldElem a, FieldElem b) { return a.v_ == b.v_ && a.w_ == b.w_; }

 private:
  static void same(FieldElem a, FieldElem b) {
    if (a.w_ != b.w_) throw Error(ErrorCode::FieldMismatch, "field widths differ");
  }
  std::uint8_t v_ = 0;
  unsigned w_ = 1;
};

}  // namespace gebr
