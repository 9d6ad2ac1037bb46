#pragma once

#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "array.hpp"
#include "error.hpp"
#include "params.hpp"
#include "ring.hpp"
#include "ring_linalg.hpp"

namespace gebr {

/// Erased lines of one slope. Line l of slope i holds the symbols (l - i j mod m, j).
struct LineErasure {
  std::size_t slope = 0;
  std::vector<std::size_t> lines;
};

/// Structure of a line-erasure pattern.
struct LineAnalysis {
  std::vector<std::size_t> lines;        // sorted erased lines
  std::vector<std::size_t> groups;       // erased residues mod tau, increasing
  std::vector<std::size_t> parity_rows;  // parity rows l' < r with gcd(i - l', m) = 1
  std::vector<std::size_t> exponents;    // (m - (i - l'))^{-1} mod m, one per parity row
};

inline std::size_t mod_inverse(std::size_t a, std::size_t m) {
  long long t = 0, nt = 1, r = static_cast<long long>(m), nr = static_cast<long long>(a % m);
  while (nr) {
    const long long q = r / nr;
    t = std::exchange(nt, t - q * nt);
    r = std::exchange(nr, r - q * nr);
  }
  if (r != 1) throw Error(ErrorCode::NotCoprime, std::to_string(a) + " is not invertible mod " + std::to_string(m));
  if (t < 0) t += static_cast<long long>(m);
  return static_cast<std::size_t>(t);
}

/// Exponent multiplier relating parity row `ell` to lines of slope `i`.
inline std::size_t line_inverse_exponent(std::size_t i, std::size_t ell, const CodeParams& c) {
  const std::size_t m = c.m();
  const std::size_t diff = ((i % m) + m - (ell % m)) % m;
  if (std::gcd(diff, m) != 1)
    throw Error(ErrorCode::NotCoprime, "slope offset " + std::to_string(diff) + " shares a factor with m=" + std::to_string(m));
  return mod_inverse((m - diff) % m, m);
}

inline LineAnalysis analyze_lines(const LineErasure& le, const CodeParams& c) {
  const std::size_t m = c.m();
  if (le.slope >= m) throw Error(ErrorCode::BadArgument, "slope must be below m");
  LineAnalysis a;
  a.lines = normalize_indices(le.lines, m, "line");
  std::vector<bool> seen(c.tau(), false);
  for (auto l : a.lines) seen[l % c.tau()] = true;
  for (std::size_t th = 0; th < c.tau(); ++th)
    if (seen[th]) a.groups.push_back(th);
  for (std::size_t ell = 0; ell < c.r(); ++ell) {
    const std::size_t diff = ((le.slope % m) + m - ell % m) % m;
    if (std::gcd(diff, m) != 1) continue;
    a.parity_rows.push_back(ell);
    a.exponents.push_back(line_inverse_exponent(le.slope, ell, c));
  }
  return a;
}

/// Row of the symbol that line `line` of slope `slope` holds in column `col`.
inline std::size_t line_row(std::size_t line, std::size_t slope, std::size_t col, std::size_t m) {
  return (line + m - (slope * col) % m) % m;
}

/// sum_j A[(line - slope j) mod m][j] x^j over 1 + x^m; rows at or beyond
/// A.rows() read as zero (zero extension).
inline RingElement line_polynomial(const SymbolArray& A, std::size_t slope, std::size_t line, const CodeParams& c) {
  const std::size_t m = c.m();
  std::vector<std::uint8_t> coeffs(m, 0);
  for (std::size_t j = 0; j < A.cols(); ++j) {
    const std::size_t row = line_row(line, slope, j, m);
    if (row < A.rows()) coeffs[j] = A.at(row, j);
  }
  return RingElement::from_coeffs(c.full_ring(), std::move(coeffs));
}

/// Recovery system u * V = v over 1 + x^m: u holds the erased line
/// polynomials, the columns of V are equations.
struct LineSystem {
  LineAnalysis analysis;
  RingMatrix V;
  RingVector rhs;
  std::size_t group_equations = 0;
};

inline LineSystem build_line_system(const SymbolArray& A, const LineErasure& le, const CodeParams& c, bool with_groups) {
  LineSystem s;
  s.analysis = analyze_lines(le, c);
  const auto& an = s.analysis;
  const std::size_t m = c.m(), t = an.lines.size();
  const auto& R = c.full_ring();
  std::vector<bool> erased(m, false);
  for (auto l : an.lines) erased[l] = true;
  std::vector<RingElement> bars(m);
  for (std::size_t l = 0; l < m; ++l)
    if (!erased[l]) bars[l] = line_polynomial(A, le.slope, l, c);

  s.group_equations = with_groups ? an.groups.size() : 0;
  const std::size_t eqs = s.group_equations + an.parity_rows.size();
  s.V = RingMatrix(t, eqs, R);
  s.rhs.assign(eqs, RingElement::zero(R));
  for (std::size_t g = 0; g < s.group_equations; ++g) {
    const std::size_t th = an.groups[g];
    for (std::size_t h = 0; h < t; ++h)
      if (an.lines[h] % c.tau() == th) s.V.at(h, g) = RingElement::one(R);
    for (std::size_t l = th; l < m; l += c.tau())
      if (!erased[l]) s.rhs[g] += bars[l];
  }
  for (std::size_t q = 0; q < an.parity_rows.size(); ++q) {
    const std::size_t col = s.group_equations + q, cexp = an.exponents[q];
    for (std::size_t h = 0; h < t; ++h) s.V.at(h, col) = RingElement::monomial(R, (an.lines[h] * cexp) % m);
    for (std::size_t l = 0; l < m; ++l)
      if (!erased[l]) s.rhs[col] += RingElement::monomial(R, (l * cexp) % m) * bars[l];
  }
  return s;
}

namespace detail {

inline bool next_combination(std::vector<std::size_t>& idx, std::size_t n) {
  const std::size_t k = idx.size();
  for (std::size_t i = k; i-- > 0;) {
    if (idx[i] < n - k + i) {
      ++idx[i];
      for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

}  // namespace detail

/// Solves the line system modulo the block sum. With more equations than
/// lines, the first subset of equations (lexicographic) whose determinant is
/// a unit is used.
inline RingVector solve_line_system(const LineSystem& s, const CodeParams& c) {
  const std::size_t t = s.V.rows(), eqs = s.V.cols();
  if (t > eqs)
    throw Error(ErrorCode::TooManyLines,
                std::to_string(t) + " erased lines exceed the " + std::to_string(eqs) + " available equations");
  const auto& d = c.rings();
  std::vector<std::size_t> pick(t);
  std::iota(pick.begin(), pick.end(), 0);
  std::optional<Poly> first_gcd;
  do {
    const RingMatrix sub = s.V.select_cols(pick).reduced(d.high);
    const RingElement det = determinant(sub);
    const Poly g = gcd(det.poly(), d.high->poly());
    if (g.is_one()) {
      RingVector rhs;
      for (auto q : pick) rhs.push_back(reduce_to(s.rhs[q], d.high));
      return solve_left(sub, rhs);
    }
    if (!first_gcd) first_gcd = g;
  } while (detail::next_combination(pick, eqs));
  throw Error(ErrorCode::GNotInvertible,
              "recovery matrix determinant shares factor " + to_string(*first_gcd) + " with the block sum",
              first_gcd->coeffs(), first_gcd->width());
}

}  // namespace gebr
