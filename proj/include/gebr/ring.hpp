#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "gf.hpp"
#include "poly.hpp"

namespace gebr {

/// Modulus of a quotient ring GF(2^w)[x]/(M). Moduli of the form 1 + x^n are
/// flagged cyclic and reduce by folding exponents.
class Modulus {
 public:
  explicit Modulus(Poly poly) : poly_(std::move(poly)) {
    if (poly_.degree() < 1) throw Error(ErrorCode::BadModulus, "modulus must have degree >= 1");
    n_ = static_cast<std::size_t>(poly_.degree());
    cyclic_ = poly_.weight() == 2 && poly_[0] == 1 && poly_.lead() == 1;
  }

  const Poly& poly() const { return poly_; }
  std::size_t degree() const { return n_; }
  unsigned width() const { return poly_.width(); }
  bool cyclic() const { return cyclic_; }

  friend bool operator==(const Modulus& a, const Modulus& b) { return a.poly_ == b.poly_; }

 private:
  Poly poly_;
  std::size_t n_ = 0;
  bool cyclic_ = false;
};

using ModulusPtr = std::shared_ptr<const Modulus>;

inline ModulusPtr make_modulus(Poly p) { return std::make_shared<const Modulus>(std::move(p)); }
inline ModulusPtr cyclic_modulus(std::size_t n, unsigned w = 1) { return make_modulus(one_plus_x_pow(n, w)); }

namespace detail {

inline std::vector<std::uint64_t> pack_bits(const std::vector<std::uint8_t>& c, std::size_t n) {
  std::vector<std::uint64_t> out((n + 63) / 64, 0);
  for (std::size_t i = 0; i < c.size() && i < n; ++i)
    if (c[i]) out[i / 64] |= std::uint64_t{1} << (i % 64);
  return out;
}

inline std::vector<std::uint8_t> unpack_bits(const std::vector<std::uint64_t>& b, std::size_t n) {
  std::vector<std::uint8_t> out(n, 0);
  for (std::size_t i = 0; i < n; ++i) out[i] = static_cast<std::uint8_t>(b[i / 64] >> (i % 64) & 1);
  return out;
}

/// acc ^= rotate(src, s) over n bits; both vectors hold n bits.
inline void xor_rotated(std::vector<std::uint64_t>& acc, const std::vector<std::uint64_t>& src, std::size_t n,
                        std::size_t s) {
  for (std::size_t i = 0; i < n;) {
    const std::size_t dst = (i + s) % n;
    const std::size_t take = std::min({std::size_t{64} - i % 64, std::size_t{64} - dst % 64, n - i, n - dst});
    const std::uint64_t mask = take == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << take) - 1);
    const std::uint64_t bits = (src[i / 64] >> (i % 64)) & mask;
    acc[dst / 64] ^= bits << (dst % 64);
    i += take;
  }
}

inline std::vector<std::uint8_t> cyclic_mul_gf2(const std::vector<std::uint8_t>& a, const std::vector<std::uint8_t>& b,
                                               std::size_t n) {
  const auto pb = pack_bits(b, n);
  std::vector<std::uint64_t> acc(pb.size(), 0);
  for (std::size_t i = 0; i < n; ++i)
    if (a[i]) xor_rotated(acc, pb, n, i);
  return unpack_bits(acc, n);
}

}  // namespace detail

/// Element of GF(2^w)[x]/(M) in canonical form: exactly deg(M) coefficients.
class RingElement {
 public:
  RingElement() = default;
  RingElement(ModulusPtr m, const Poly& p) : m_(std::move(m)) {
    if (!m_) throw Error(ErrorCode::BadModulus, "null modulus");
    p.same(m_->poly());
    c_.assign(m_->degree(), 0);
    if (m_->cyclic()) {
      for (std::size_t i = 0; i < p.coeffs().size(); ++i) c_[i % m_->degree()] ^= p.coeffs()[i];
    } else {
      const Poly r = p.degree() < static_cast<int>(m_->degree()) ? p : p % m_->poly();
      std::copy(r.coeffs().begin(), r.coeffs().end(), c_.begin());
    }
  }

  static RingElement zero(const ModulusPtr& m) { return RingElement(m, Poly(m->width())); }
  static RingElement one(const ModulusPtr& m) { return RingElement(m, Poly::one(m->width())); }
  /// c * x^e.
  static RingElement monomial(const ModulusPtr& m, std::size_t e, std::uint8_t c = 1) {
    if (m->cyclic()) return RingElement(m, Poly::monomial(e % m->degree(), m->width(), c));
    RingElement r(m, Poly::monomial(0, m->width(), c));
    RingElement x(m, Poly::monomial(1, m->width()));
    while (e) {
      if (e & 1) r = r * x;
      e >>= 1;
      if (e) x = x * x;
    }
    return r;
  }
  static RingElement from_coeffs(const ModulusPtr& m, std::vector<std::uint8_t> c) {
    return RingElement(m, Poly(std::move(c), m->width()));
  }

  const ModulusPtr& modulus() const { return m_; }
  unsigned width() const { return m_->width(); }
  const std::vector<std::uint8_t>& coeffs() const { return c_; }
  std::uint8_t operator[](std::size_t i) const { return c_[i]; }
  Poly poly() const { return Poly(c_, m_->width()); }
  bool is_zero() const {
    for (auto v : c_)
      if (v) return false;
    return true;
  }
  bool is_one() const {
    if (c_.empty() || c_[0] != 1) return false;
    for (std::size_t i = 1; i < c_.size(); ++i)
      if (c_[i]) return false;
    return true;
  }

  friend RingElement operator+(const RingElement& a, const RingElement& b) {
    check_same(a, b);
    RingElement r = a;
    for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] ^= b.c_[i];
    return r;
  }
  friend RingElement operator-(const RingElement& a, const RingElement& b) { return a + b; }
  RingElement& operator+=(const RingElement& o) { return *this = *this + o; }

  friend RingElement operator*(const RingElement& a, const RingElement& b) {
    check_same(a, b);
    const auto& M = *a.m_;
    const std::size_t n = M.degree();
    if (M.cyclic()) {
      RingElement r;
      r.m_ = a.m_;
      if (M.width() == 1) {
        r.c_ = detail::cyclic_mul_gf2(a.c_, b.c_, n);
        return r;
      }
      r.c_.assign(n, 0);
      for (std::size_t i = 0; i < n; ++i) {
        if (!a.c_[i]) continue;
        for (std::size_t j = 0; j < n; ++j) {
          std::size_t k = i + j;
          if (k >= n) k -= n;
          r.c_[k] ^= gf::mul(M.width(), a.c_[i], b.c_[j]);
        }
      }
      return r;
    }
    return RingElement(a.m_, a.poly() * b.poly());
  }
  RingElement& operator*=(const RingElement& o) { return *this = *this * o; }

  RingElement scaled(std::uint8_t c) const {
    RingElement r = *this;
    for (auto& v : r.c_) v = gf::mul(width(), v, c);
    return r;
  }

  friend bool operator==(const RingElement& a, const RingElement& b) {
    return same_modulus(a.m_, b.m_) && a.c_ == b.c_;
  }
  friend bool operator!=(const RingElement& a, const RingElement& b) { return !(a == b); }

  static bool same_modulus(const ModulusPtr& a, const ModulusPtr& b) { return a == b || (a && b && *a == *b); }

 private:
  static void check_same(const RingElement& a, const RingElement& b) {
    if (!same_modulus(a.m_, b.m_)) throw Error(ErrorCode::ModulusMismatch, "ring elements over different moduli");
  }

  ModulusPtr m_;
  std::vector<std::uint8_t> c_;
};

inline RingElement ring_add(const RingElement& a, const RingElement& b) { return a + b; }
inline RingElement ring_mul(const RingElement& a, const RingElement& b) { return a * b; }

inline Error not_invertible(const Poly& g, const std::string& what) {
  return Error(ErrorCode::NotInvertible, what + " (gcd " + to_string(g) + ")", g.coeffs(), g.width());
}

inline bool is_unit(const RingElement& a) { return gcd(a.poly(), a.modulus()->poly()).is_one(); }

/// Throws NotInvertible carrying gcd(a, M) when a is a zero divisor.
inline RingElement ring_inverse(const RingElement& a) {
  const auto e = gcd_ext(a.poly(), a.modulus()->poly());
  if (!e.gcd.is_one()) throw not_invertible(e.gcd, "element " + to_string(a.poly()) + " not invertible");
  return RingElement(a.modulus(), e.s);
}

/// The same polynomial reduced into another quotient ring.
inline RingElement reduce_to(const RingElement& a, const ModulusPtr& m) { return RingElement(m, a.poly()); }

/// a(x^c) in R_n = F[x]/(1+x^n).
inline RingElement substitute_power(const RingElement& a, std::size_t c) {
  if (!a.modulus()->cyclic()) throw Error(ErrorCode::BadModulus, "substitution needs a cyclic modulus");
  const std::size_t n = a.modulus()->degree();
  std::vector<std::uint8_t> out(n, 0);
  for (std::size_t i = 0; i < n; ++i) out[(i * c) % n] ^= a[i];
  return RingElement::from_coeffs(a.modulus(), std::move(out));
}

/// R_{p tau} split as F[x]/(1+x^tau) x F[x]/(1+x^tau+...+x^{(p-1)tau}).
struct CyclicDecomposition {
  std::size_t p = 0, tau = 0;
  unsigned w = 1;
  ModulusPtr full, low, high;

  static CyclicDecomposition make(std::size_t p, std::size_t tau, unsigned w = 1) {
    if (p < 3 || p % 2 == 0 || tau < 1) throw Error(ErrorCode::BadArgument, "decomposition needs odd p >= 3, tau >= 1");
    return {p, tau, w, cyclic_modulus(p * tau, w), cyclic_modulus(tau, w), make_modulus(cyclic_sum(tau, p, w))};
  }
  std::size_t m() const { return p * tau; }
};

inline std::pair<RingElement, RingElement> crt_split(const RingElement& b, const CyclicDecomposition& d) {
  if (!RingElement::same_modulus(b.modulus(), d.full)) throw Error(ErrorCode::ModulusMismatch, "crt_split expects R_{p tau}");
  const Poly pb = b.poly();
  return {RingElement(d.low, pb), RingElement(d.high, pb)};
}

inline RingElement crt_join(const RingElement& b1, const RingElement& b2, const CyclicDecomposition& d) {
  if (!RingElement::same_modulus(b1.modulus(), d.low) || !RingElement::same_modulus(b2.modulus(), d.high))
    throw Error(ErrorCode::ModulusMismatch, "crt_join component moduli do not match the decomposition");
  const std::size_t m = d.m(), tau = d.tau;
  std::vector<std::uint8_t> out(m, 0);
  for (std::size_t i = 0; i < m; ++i) out[i] = b1[i % tau];
  const RingElement e_high(d.full, cyclic_sum(tau, d.p, d.w) + Poly::one(d.w));
  const RingElement part = RingElement(d.full, b2.poly()) * e_high;
  for (std::size_t i = 0; i < m; ++i) out[i] ^= part[i];
  return RingElement::from_coeffs(d.full, std::move(out));
}

}  // namespace gebr
