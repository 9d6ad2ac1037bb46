#pragma once

#include <cstdint>
#include <initializer_list>
#include <ostream>
#include <random>
#include <vector>

#include "gebr/poly.hpp"
#include "gebr/ring.hpp"

namespace gebr {

inline void PrintTo(const Poly& p, std::ostream* os) { *os << to_string(p); }
inline void PrintTo(const RingElement& a, std::ostream* os) { *os << to_string(a.poly()); }

}  // namespace gebr

namespace gebr::testing {

inline Poly P(std::initializer_list<std::size_t> exps, unsigned w = 1) { return Poly::from_exponents(exps, w); }

inline std::vector<std::uint8_t> random_symbols(std::mt19937& rng, std::size_t n, unsigned w) {
  std::uniform_int_distribution<unsigned> d(0, (1u << w) - 1);
  std::vector<std::uint8_t> v(n);
  for (auto& x : v) x = static_cast<std::uint8_t>(d(rng));
  return v;
}

inline Poly random_poly(std::mt19937& rng, std::size_t len, unsigned w) { return Poly(random_symbols(rng, len, w), w); }

inline RingElement random_element(std::mt19937& rng, const ModulusPtr& m) {
  return RingElement::from_coeffs(m, random_symbols(rng, m->degree(), m->width()));
}

/// Polynomial from a bit mask, bit i = coefficient of x^i.
inline Poly from_mask(std::uint64_t mask) {
  std::vector<std::uint8_t> c;
  while (mask) {
    c.push_back(mask & 1);
    mask >>= 1;
  }
  return Poly(c, 1);
}

}  // namespace gebr::testing
