#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "array.hpp"
#include "error.hpp"
#include "gebr_codec.hpp"
#include "lines.hpp"
#include "params.hpp"
#include "ring.hpp"
#include "ring_linalg.hpp"

namespace gebr {

/// alpha x (k+r) array of columns over F[x]/(h) satisfying the parity-check
/// equations there.
struct GbrArray {
  CodeParams params;
  SymbolArray symbols;
  /// gcd flags hold and k+r <= p^{nu+1}.
  bool mds_certified = false;
};

namespace detail {

inline bool mds(const CodeParams& c) { return c.gcd_g_h_one() && c.gcd_low_h_one() && c.n() <= c.recoverable_length(); }

inline RingElement gbr_column(const GbrArray& a, std::size_t j) {
  return RingElement::from_coeffs(a.params.h_ring(), a.symbols.column(j));
}

}  // namespace detail

/// sum_j x^{l j} b_j over F[x]/(h) for l = 0..r-1.
inline RingVector gbr_syndrome(const GbrArray& a) {
  const auto& c = a.params;
  RingVector out(c.r(), RingElement::zero(c.h_ring()));
  for (std::size_t j = 0; j < c.n(); ++j) {
    const RingElement b = detail::gbr_column(a, j);
    for (std::size_t l = 0; l < c.r(); ++l) out[l] += RingElement::monomial(c.h_ring(), l * j) * b;
  }
  return out;
}

inline bool gbr_verify(const GbrArray& a) {
  if (a.symbols.rows() != a.params.alpha() || a.symbols.cols() != a.params.n()) return false;
  for (const auto& s : gbr_syndrome(a))
    if (!s.is_zero()) return false;
  return true;
}

inline GbrArray gbr_encode(const SymbolArray& info, const CodeParams& c) {
  if (info.rows() != c.alpha() || info.cols() != c.k())
    throw Error(ErrorCode::LengthMismatch, "information array must be alpha x k");
  check_symbols(info, c.w());
  GbrArray out{c, SymbolArray(c.alpha(), c.n()), detail::mds(c)};
  RingVector rhs(c.r(), RingElement::zero(c.h_ring()));
  for (std::size_t j = 0; j < c.k(); ++j) {
    out.symbols.set_column(j, info.column(j));
    const RingElement b = detail::gbr_column(out, j);
    for (std::size_t l = 0; l < c.r(); ++l) rhs[l] += RingElement::monomial(c.h_ring(), l * j) * b;
  }
  std::vector<std::size_t> exps;
  for (std::size_t j = c.k(); j < c.n(); ++j) exps.push_back(j);
  const RingVector parity = solve_vandermonde(exps, rhs, c.h_ring());
  for (std::size_t q = 0; q < c.r(); ++q) out.symbols.set_column(c.k() + q, parity[q].coeffs());
  return out;
}

inline GbrArray gbr_decode_columns(const GbrArray& arr, const std::vector<std::size_t>& erased_in) {
  const auto& c = arr.params;
  if (arr.symbols.rows() != c.alpha() || arr.symbols.cols() != c.n()) throw Error(ErrorCode::LengthMismatch, "array shape");
  const auto erased = normalize_indices(erased_in, c.n(), "column");
  if (erased.size() > c.r())
    throw Error(ErrorCode::TooManyErasures, std::to_string(erased.size()) + " erasures exceed r=" + std::to_string(c.r()));
  GbrArray out = arr;
  std::vector<bool> gone(c.n(), false);
  for (auto e : erased) {
    gone[e] = true;
    out.symbols.clear_column(e);
  }
  if (!erased.empty()) {
    RingVector rhs(erased.size(), RingElement::zero(c.h_ring()));
    for (std::size_t j = 0; j < c.n(); ++j) {
      if (gone[j]) continue;
      const RingElement b = detail::gbr_column(out, j);
      for (std::size_t l = 0; l < erased.size(); ++l) rhs[l] += RingElement::monomial(c.h_ring(), l * j) * b;
    }
    const RingVector sol = solve_vandermonde(erased, rhs, c.h_ring());
    for (std::size_t q = 0; q < erased.size(); ++q) out.symbols.set_column(erased[q], sol[q].coeffs());
  }
  if (!gbr_verify(out)) throw Error(ErrorCode::VerificationFailed, "decoded array fails the parity check");
  return out;
}

/// The m x (k+r) array with rows alpha..m-1 set to zero.
inline SymbolArray zero_extended(const GbrArray& a) {
  const auto& c = a.params;
  SymbolArray z(c.m(), c.n());
  for (std::size_t j = 0; j < c.n(); ++j)
    for (std::size_t i = 0; i < c.alpha(); ++i) z.at(i, j) = a.symbols.at(i, j);
  return z;
}

/// Maps each column b to the codeword s with s = 0 mod (1+x^tau) g and
/// s = b mod h. Needs gcd((1+x^tau) g, h) = 1.
inline GebrArray gbr_to_gebr(const GbrArray& a) {
  const auto& c = a.params;
  const RingElement G_mod_h(c.h_ring(), c.local_generator());
  const auto e = gcd_ext(G_mod_h.poly(), c.h());
  if (!e.gcd.is_one())
    throw Error(ErrorCode::GNotInvertible, "(1+x^tau) g and h are not coprime (gcd " + to_string(e.gcd) + ")", e.gcd.coeffs(),
                e.gcd.width());
  const RingElement idem(c.full_ring(), c.local_generator() * e.s);
  GebrArray out{c, SymbolArray(c.m(), c.n()), detail::certified(c)};
  for (std::size_t j = 0; j < c.n(); ++j) {
    const RingElement s = RingElement(c.full_ring(), detail::gbr_column(a, j).poly()) * idem;
    out.symbols.set_column(j, s.coeffs());
  }
  return out;
}

/// Whether the reduced BR sub-case applies: tau = 1 and the slope is a parity slope.
inline bool gbr_reduced_case(const CodeParams& c, std::size_t slope) { return c.tau() == 1 && slope < c.r(); }

inline LineSystem gbr_line_system(const GbrArray& arr, const LineErasure& le) {
  return build_line_system(arr.symbols, le, arr.params, false);
}

/// Recovers erased lines of the zero-extended array (g = 1, tau a power of
/// p, and k+r <= (p-1)tau or the reduced sub-case with k+r <= p).
inline GbrArray gbr_recover_lines(const GbrArray& arr, const LineErasure& le) {
  const auto& c = arr.params;
  require_line_params(c);
  const bool reduced = gbr_reduced_case(c, le.slope);
  if (c.n() > (c.p() - 1) * c.tau() && !reduced)
    throw Error(ErrorCode::UnsupportedParams, "line recovery requires k+r <= (p-1) tau");
  if (arr.symbols.rows() != c.alpha() || arr.symbols.cols() != c.n()) throw Error(ErrorCode::LengthMismatch, "array shape");
  const std::size_t m = c.m(), alpha = c.alpha();
  GbrArray out = arr;
  const auto lines = normalize_indices(le.lines, m, "line");
  for (auto l : lines)
    for (std::size_t j = 0; j < c.n(); ++j) {
      const std::size_t row = line_row(l, le.slope, j, m);
      if (row < alpha) out.symbols.at(row, j) = 0;
    }
  if (!lines.empty()) {
    const LineSystem sys = build_line_system(out.symbols, {le.slope, lines}, c, false);
    const RingVector u2 = solve_line_system(sys, c);
    RingVector u;
    if (reduced) {
      for (const auto& v : u2) u.push_back(crt_join(RingElement::zero(c.rings().low), v, c.rings()));
    } else {
      std::vector<KnownSet> known(lines.size());
      for (std::size_t h = 0; h < lines.size(); ++h)
        for (std::size_t j = 0; j < m; ++j)
          if (j >= c.n() || line_row(lines[h], le.slope, j, m) >= alpha) known[h].push_back({j, 0});
      u = lift_with_known_coeffs(u2, known, c.rings());
    }
    for (std::size_t h = 0; h < lines.size(); ++h)
      for (std::size_t j = 0; j < c.n(); ++j) {
        const std::size_t row = line_row(lines[h], le.slope, j, m);
        if (row < alpha) out.symbols.at(row, j) = u[h][j];
      }
  }
  if (!gbr_verify(out)) throw Error(ErrorCode::VerificationFailed, "recovered array fails the parity check");
  return out;
}

}  // namespace gebr
