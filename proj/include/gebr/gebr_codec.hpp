#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "array.hpp"
#include "error.hpp"
#include "lines.hpp"
#include "params.hpp"
#include "ring.hpp"
#include "ring_linalg.hpp"

namespace gebr {

/// m x (k+r) array whose columns lie in the cyclic code generated by
/// (1+x^tau) g and whose lines of slope 0..r-1 have even parity.
struct GebrArray {
  CodeParams params;
  SymbolArray symbols;
  /// k+r <= p^{nu+1}: any r column erasures are decodable.
  bool recoverable_certified = false;
};

namespace detail {

inline bool certified(const CodeParams& c) { return c.n() <= c.recoverable_length(); }

/// s_j / ((1+x^tau) g) as an element of F[x]/(h).
inline RingElement column_quotient(const Column& col, const CodeParams& c, std::size_t j) {
  auto [q, rem] = divmod(Poly(col, c.w()), c.local_generator());
  if (!rem.is_zero()) throw Error(ErrorCode::VerificationFailed, "column " + std::to_string(j) + " is not in the column code");
  return RingElement(c.h_ring(), q);
}

inline Column column_from_quotient(const RingElement& a, const CodeParams& c) {
  const Poly s = a.poly() * c.local_generator();
  Column col(c.m(), 0);
  for (std::size_t i = 0; i < s.coeffs().size(); ++i) col[i] = s.coeffs()[i];
  return col;
}

}  // namespace detail

/// sum_j x^{l j} s_j over 1 + x^m for l = 0..r-1.
inline RingVector syndrome(const GebrArray& a) {
  const auto& c = a.params;
  RingVector out(c.r(), RingElement::zero(c.full_ring()));
  for (std::size_t j = 0; j < c.n(); ++j) {
    const RingElement s = RingElement::from_coeffs(c.full_ring(), a.symbols.column(j));
    for (std::size_t l = 0; l < c.r(); ++l) out[l] += RingElement::monomial(c.full_ring(), l * j) * s;
  }
  return out;
}

inline bool verify(const GebrArray& a) {
  const auto& c = a.params;
  if (a.symbols.rows() != c.m() || a.symbols.cols() != c.n()) return false;
  for (std::size_t j = 0; j < c.n(); ++j)
    if (!check_membership(a.symbols.column(j), c)) return false;
  for (const auto& s : syndrome(a))
    if (!s.is_zero()) return false;
  return true;
}

/// Encodes an alpha x k information array.
inline GebrArray encode(const SymbolArray& info, const CodeParams& c) {
  if (info.rows() != c.alpha() || info.cols() != c.k())
    throw Error(ErrorCode::LengthMismatch, "information array must be alpha x k");
  check_symbols(info, c.w());
  GebrArray out{c, SymbolArray(c.m(), c.n()), detail::certified(c)};
  RingVector rhs(c.r(), RingElement::zero(c.h_ring()));
  for (std::size_t j = 0; j < c.k(); ++j) {
    const Column col = local_encode_column(info.column(j), c);
    out.symbols.set_column(j, col);
    const RingElement a = detail::column_quotient(col, c, j);
    for (std::size_t l = 0; l < c.r(); ++l) rhs[l] += RingElement::monomial(c.h_ring(), l * j) * a;
  }
  std::vector<std::size_t> exps;
  for (std::size_t j = c.k(); j < c.n(); ++j) exps.push_back(j);
  const RingVector parity = solve_vandermonde(exps, rhs, c.h_ring());
  for (std::size_t q = 0; q < c.r(); ++q) out.symbols.set_column(c.k() + q, detail::column_from_quotient(parity[q], c));
  return out;
}

/// Information rows 0..alpha-1 of columns 0..k-1.
inline SymbolArray information(const GebrArray& a) {
  const auto& c = a.params;
  SymbolArray info(c.alpha(), c.k());
  for (std::size_t j = 0; j < c.k(); ++j)
    for (std::size_t i = 0; i < c.alpha(); ++i) info.at(i, j) = a.symbols.at(i, j);
  return info;
}

/// Restores up to r erased columns; contents of erased columns are ignored.
inline GebrArray decode_columns(const GebrArray& arr, const std::vector<std::size_t>& erased_in) {
  const auto& c = arr.params;
  if (arr.symbols.rows() != c.m() || arr.symbols.cols() != c.n()) throw Error(ErrorCode::LengthMismatch, "array shape");
  const auto erased = normalize_indices(erased_in, c.n(), "column");
  if (erased.size() > c.r())
    throw Error(ErrorCode::TooManyErasures, std::to_string(erased.size()) + " erasures exceed r=" + std::to_string(c.r()));
  GebrArray out = arr;
  std::vector<bool> gone(c.n(), false);
  for (auto e : erased) {
    gone[e] = true;
    out.symbols.clear_column(e);
  }
  if (!erased.empty()) {
    RingVector rhs(erased.size(), RingElement::zero(c.h_ring()));
    for (std::size_t j = 0; j < c.n(); ++j) {
      if (gone[j]) continue;
      const RingElement a = detail::column_quotient(out.symbols.column(j), c, j);
      for (std::size_t l = 0; l < erased.size(); ++l) rhs[l] += RingElement::monomial(c.h_ring(), l * j) * a;
    }
    const RingVector sol = solve_vandermonde(erased, rhs, c.h_ring());
    for (std::size_t q = 0; q < erased.size(); ++q) out.symbols.set_column(erased[q], detail::column_from_quotient(sol[q], c));
  }
  if (!verify(out)) throw Error(ErrorCode::VerificationFailed, "decoded array fails the parity check");
  return out;
}

inline void require_line_params(const CodeParams& c) {
  if (!c.g_is_one()) throw Error(ErrorCode::UnsupportedParams, "line recovery requires g = 1");
  if (!c.tau_is_power_of_p()) throw Error(ErrorCode::UnsupportedParams, "line recovery requires tau to be a power of p");
}

/// Assembled recovery system for erased lines of a GEBR array.
inline LineSystem gebr_line_system(const GebrArray& arr, const LineErasure& le) {
  return build_line_system(arr.symbols, le, arr.params, true);
}

/// Recovers erased lines of one slope (g = 1, tau a power of p, k+r <= (p-1)tau).
inline GebrArray recover_lines(const GebrArray& arr, const LineErasure& le) {
  const auto& c = arr.params;
  require_line_params(c);
  if (c.n() > (c.p() - 1) * c.tau())
    throw Error(ErrorCode::UnsupportedParams, "line recovery requires k+r <= (p-1) tau");
  if (arr.symbols.rows() != c.m() || arr.symbols.cols() != c.n()) throw Error(ErrorCode::LengthMismatch, "array shape");
  const std::size_t m = c.m();
  GebrArray out = arr;
  const auto lines = normalize_indices(le.lines, m, "line");
  for (auto l : lines)
    for (std::size_t j = 0; j < c.n(); ++j) out.symbols.at(line_row(l, le.slope, j, m), j) = 0;
  if (!lines.empty()) {
    const LineSystem sys = build_line_system(out.symbols, {le.slope, lines}, c, true);
    const RingVector u2 = solve_line_system(sys, c);
    KnownSet tail;
    for (std::size_t j = c.n(); j < m; ++j) tail.push_back({j, 0});
    const RingVector u = lift_with_known_coeffs(u2, std::vector<KnownSet>(lines.size(), tail), c.rings());
    for (std::size_t h = 0; h < lines.size(); ++h)
      for (std::size_t j = 0; j < c.n(); ++j) out.symbols.at(line_row(lines[h], le.slope, j, m), j) = u[h][j];
  }
  if (!verify(out)) throw Error(ErrorCode::VerificationFailed, "recovered array fails the parity check");
  return out;
}

}  // namespace gebr
