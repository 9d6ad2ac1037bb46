#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "ring.hpp"
#include "scalar_linalg.hpp"

namespace gebr {

using RingVector = std::vector<RingElement>;

/// Rectangular matrix of ring elements over one modulus.
class RingMatrix {
 public:
  RingMatrix() = default;
  RingMatrix(std::size_t rows, std::size_t cols, ModulusPtr m)
      : r_(rows), c_(cols), m_(std::move(m)), a_(rows * cols, RingElement::zero(m_)) {}

  static RingMatrix identity(std::size_t n, const ModulusPtr& m) {
    RingMatrix I(n, n, m);
    for (std::size_t i = 0; i < n; ++i) I.at(i, i) = RingElement::one(m);
    return I;
  }

  std::size_t rows() const { return r_; }
  std::size_t cols() const { return c_; }
  const ModulusPtr& modulus() const { return m_; }
  RingElement& at(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
  const RingElement& at(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }

  void set(std::size_t i, std::size_t j, const RingElement& v) {
    if (!RingElement::same_modulus(v.modulus(), m_)) throw Error(ErrorCode::ModulusMismatch, "matrix entry modulus");
    at(i, j) = v;
  }

  RingMatrix reduced(const ModulusPtr& n) const {
    RingMatrix out(r_, c_, n);
    for (std::size_t i = 0; i < a_.size(); ++i) out.a_[i] = reduce_to(a_[i], n);
    return out;
  }
  RingMatrix transpose() const {
    RingMatrix t(c_, r_, m_);
    for (std::size_t i = 0; i < r_; ++i)
      for (std::size_t j = 0; j < c_; ++j) t.at(j, i) = at(i, j);
    return t;
  }
  /// Matrix without row i and column j.
  RingMatrix minor(std::size_t i, std::size_t j) const {
    RingMatrix out(r_ - 1, c_ - 1, m_);
    for (std::size_t a = 0, oa = 0; a < r_; ++a) {
      if (a == i) continue;
      for (std::size_t b = 0, ob = 0; b < c_; ++b) {
        if (b == j) continue;
        out.at(oa, ob++) = at(a, b);
      }
      ++oa;
    }
    return out;
  }
  /// Rows listed in `rows`, all columns.
  RingMatrix select_rows(const std::vector<std::size_t>& rows) const {
    RingMatrix out(rows.size(), c_, m_);
    for (std::size_t a = 0; a < rows.size(); ++a)
      for (std::size_t b = 0; b < c_; ++b) out.at(a, b) = at(rows[a], b);
    return out;
  }
  RingMatrix select_cols(const std::vector<std::size_t>& cols) const {
    RingMatrix out(r_, cols.size(), m_);
    for (std::size_t a = 0; a < r_; ++a)
      for (std::size_t b = 0; b < cols.size(); ++b) out.at(a, b) = at(a, cols[b]);
    return out;
  }

  friend bool operator==(const RingMatrix& a, const RingMatrix& b) {
    return a.r_ == b.r_ && a.c_ == b.c_ && a.a_ == b.a_;
  }

 private:
  std::size_t r_ = 0, c_ = 0;
  ModulusPtr m_;
  std::vector<RingElement> a_;
};

/// Division-free determinant (Berkowitz). Characteristic 2, so no signs.
inline RingElement determinant(const RingMatrix& A) {
  if (A.rows() != A.cols()) throw Error(ErrorCode::BadShape, "determinant of a non-square matrix");
  const auto& M = A.modulus();
  const std::size_t n = A.rows();
  RingVector vect{RingElement::one(M)};
  for (std::size_t k = 0; k < n; ++k) {
    RingVector col(k + 2, RingElement::zero(M));
    col[0] = RingElement::one(M);
    col[1] = A.at(k, k);
    RingVector c(k);
    for (std::size_t i = 0; i < k; ++i) c[i] = A.at(i, k);
    for (std::size_t q = 0; q < k; ++q) {
      RingElement s = RingElement::zero(M);
      for (std::size_t i = 0; i < k; ++i) s += A.at(k, i) * c[i];
      col[2 + q] = s;
      if (q + 1 == k) break;
      RingVector next(k, RingElement::zero(M));
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) next[i] += A.at(i, j) * c[j];
      c = std::move(next);
    }
    RingVector nv(k + 2, RingElement::zero(M));
    for (std::size_t i = 0; i < k + 2; ++i)
      for (std::size_t j = 0; j <= std::min(i, k); ++j) nv[i] += col[i - j] * vect[j];
    vect = std::move(nv);
  }
  return vect[n];
}

/// u * V for a row vector u.
inline RingVector left_multiply(const RingVector& u, const RingMatrix& V) {
  if (u.size() != V.rows()) throw Error(ErrorCode::BadShape, "left_multiply size mismatch");
  RingVector out(V.cols(), RingElement::zero(V.modulus()));
  for (std::size_t j = 0; j < V.cols(); ++j)
    for (std::size_t i = 0; i < V.rows(); ++i) out[j] += u[i] * V.at(i, j);
  return out;
}

/// A * x for a column vector x.
inline RingVector right_multiply(const RingMatrix& A, const RingVector& x) { return left_multiply(x, A.transpose()); }

inline Error singular(const RingElement& det, const std::string& what) {
  const Poly g = gcd(det.poly(), det.modulus()->poly());
  return Error(ErrorCode::SingularModH,
               what + ": determinant " + to_string(det.poly()) + " shares factor " + to_string(g) + " with modulus " +
                   to_string(det.modulus()->poly()),
               g.coeffs(), g.width());
}

namespace detail {

inline RingVector adjugate_solve(const RingMatrix& A, const RingVector& b, const RingElement& det_inv) {
  const std::size_t n = A.rows();
  RingVector x(n, RingElement::zero(A.modulus()));
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      const RingElement cof = n == 1 ? RingElement::one(A.modulus()) : determinant(A.minor(i, j));
      x[j] += cof * b[i];
    }
    x[j] = x[j] * det_inv;
  }
  return x;
}

}  // namespace detail

/// Solves A x = b with unit pivots (row-major search, first unit wins, row and
/// column swaps). Falls back to the adjugate when no unit pivot exists but the
/// determinant is a unit. Throws SingularModH with gcd(det, M) otherwise.
inline RingVector solve_right(const RingMatrix& A, const RingVector& b) {
  const std::size_t n = A.rows();
  if (A.cols() != n || b.size() != n) throw Error(ErrorCode::BadShape, "solve needs a square system");
  for (const auto& v : b)
    if (!RingElement::same_modulus(v.modulus(), A.modulus())) throw Error(ErrorCode::ModulusMismatch, "rhs modulus");
  RingMatrix M = A;
  RingVector rhs = b;
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  for (std::size_t s = 0; s < n; ++s) {
    std::size_t pi = n, pj = n;
    for (std::size_t i = s; i < n && pi == n; ++i)
      for (std::size_t j = s; j < n; ++j)
        if (is_unit(M.at(i, j))) {
          pi = i;
          pj = j;
          break;
        }
    if (pi == n) {
      const RingElement det = determinant(A);
      if (!is_unit(det)) throw singular(det, "linear system");
      return detail::adjugate_solve(A, b, ring_inverse(det));
    }
    if (pi != s) {
      for (std::size_t j = 0; j < n; ++j) std::swap(M.at(pi, j), M.at(s, j));
      std::swap(rhs[pi], rhs[s]);
    }
    if (pj != s) {
      for (std::size_t i = 0; i < n; ++i) std::swap(M.at(i, pj), M.at(i, s));
      std::swap(perm[pj], perm[s]);
    }
    const RingElement iv = ring_inverse(M.at(s, s));
    for (std::size_t j = 0; j < n; ++j) M.at(s, j) = M.at(s, j) * iv;
    rhs[s] = rhs[s] * iv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == s || M.at(i, s).is_zero()) continue;
      const RingElement f = M.at(i, s);
      for (std::size_t j = 0; j < n; ++j) M.at(i, j) += f * M.at(s, j);
      rhs[i] += f * rhs[s];
    }
  }
  RingVector x(n);
  for (std::size_t s = 0; s < n; ++s) x[perm[s]] = rhs[s];
  return x;
}

/// Solves u * V = v.
inline RingVector solve_left(const RingMatrix& V, const RingVector& v) { return solve_right(V.transpose(), v); }

/// Unique solution of u * V = v modulo 1 + x^tau + ... + x^{(p-1)tau}; V and v live over 1 + x^{p tau}.
inline RingVector solve_unique_mod_h(const RingMatrix& V, const RingVector& v, const CyclicDecomposition& d) {
  if (!RingElement::same_modulus(V.modulus(), d.full)) throw Error(ErrorCode::ModulusMismatch, "matrix not over R_{p tau}");
  RingVector rv;
  for (const auto& e : v) rv.push_back(reduce_to(e, d.high));
  return solve_left(V.reduced(d.high), rv);
}

struct KnownCoeff {
  std::size_t position;
  std::uint8_t value;
};
using KnownSet = std::vector<KnownCoeff>;

/// Lifts u2 (over the block-sum factor) to R_{p tau} using known coefficients,
/// one residue class mod tau at a time.
inline RingVector lift_with_known_coeffs(const RingVector& u2, const std::vector<KnownSet>& known,
                                         const CyclicDecomposition& d) {
  if (known.size() != u2.size()) throw Error(ErrorCode::BadShape, "one known set per entry required");
  const std::size_t m = d.m(), tau = d.tau;
  const RingElement e_high(d.full, cyclic_sum(tau, d.p, d.w) + Poly::one(d.w));
  RingVector out;
  for (std::size_t e = 0; e < u2.size(); ++e) {
    if (!RingElement::same_modulus(u2[e].modulus(), d.high)) throw Error(ErrorCode::ModulusMismatch, "u2 not over the block-sum factor");
    const RingElement a = RingElement(d.full, u2[e].poly()) * e_high;
    std::vector<int> low(tau, -1);
    for (const auto& kc : known[e]) {
      if (kc.position >= m) throw Error(ErrorCode::BadArgument, "known position out of range");
      const std::size_t mu = kc.position % tau;
      const int val = kc.value ^ a[kc.position];
      if (low[mu] < 0) {
        low[mu] = val;
      } else if (low[mu] != val) {
        throw Error(ErrorCode::InconsistentKnowns,
                    "entry " + std::to_string(e) + ": known coefficients disagree in residue class " + std::to_string(mu));
      }
    }
    std::vector<std::uint8_t> c = a.coeffs();
    for (std::size_t mu = 0; mu < tau; ++mu) {
      if (low[mu] < 0)
        throw Error(ErrorCode::InsufficientKnowns,
                    "entry " + std::to_string(e) + ": no known coefficient in residue class " + std::to_string(mu));
      for (std::size_t i = mu; i < m; i += tau) c[i] ^= static_cast<std::uint8_t>(low[mu]);
    }
    out.push_back(RingElement::from_coeffs(d.full, std::move(c)));
  }
  return out;
}

/// Exact solution of u * V = v over R_{p tau} subject to known coefficients,
/// by linear algebra over GF(2^w) on all coefficients. Throws
/// InsufficientKnowns when several solutions remain.
inline RingVector solve_with_known_coeffs(const RingMatrix& V, const RingVector& v, const std::vector<KnownSet>& known,
                                          const CyclicDecomposition& d) {
  if (!RingElement::same_modulus(V.modulus(), d.full)) throw Error(ErrorCode::ModulusMismatch, "matrix not over R_{p tau}");
  if (known.size() != V.rows() || v.size() != V.cols()) throw Error(ErrorCode::BadShape, "solve_with_known_coeffs sizes");
  const std::size_t m = d.m(), t = V.rows();
  std::size_t nk = 0;
  for (const auto& k : known) nk += k.size();
  GfMatrix A(V.cols() * m + nk, t * m, d.w);
  std::vector<std::uint8_t> b(A.rows(), 0);
  for (std::size_t h = 0; h < t; ++h)
    for (std::size_t a = 0; a < m; ++a) {
      const RingElement xa = RingElement::monomial(d.full, a);
      for (std::size_t l = 0; l < V.cols(); ++l) {
        const RingElement col = xa * V.at(h, l);
        for (std::size_t i = 0; i < m; ++i) A.at(l * m + i, h * m + a) = col[i];
      }
    }
  for (std::size_t l = 0; l < V.cols(); ++l)
    for (std::size_t i = 0; i < m; ++i) b[l * m + i] = v[l][i];
  std::size_t row = V.cols() * m;
  for (std::size_t h = 0; h < t; ++h)
    for (const auto& kc : known[h]) {
      if (kc.position >= m) throw Error(ErrorCode::BadArgument, "known position out of range");
      A.at(row, h * m + kc.position) = 1;
      b[row++] = kc.value;
    }
  const auto sol = solve(A, b);
  if (sol.status == SolveStatus::Inconsistent) throw Error(ErrorCode::InconsistentKnowns, "no solution matches the known coefficients");
  if (sol.status == SolveStatus::Underdetermined) throw Error(ErrorCode::InsufficientKnowns, "known coefficients leave several solutions");
  RingVector out;
  for (std::size_t h = 0; h < t; ++h)
    out.push_back(RingElement::from_coeffs(d.full, std::vector<std::uint8_t>(sol.x.begin() + static_cast<std::ptrdiff_t>(h * m),
                                                                             sol.x.begin() + static_cast<std::ptrdiff_t>((h + 1) * m))));
  return out;
}

/// V[h][l] = x^{l * e_h} for h < exponents.size(), l < rows.
inline RingMatrix vandermonde(const std::vector<std::size_t>& exponents, std::size_t rows, const ModulusPtr& m) {
  RingMatrix V(exponents.size(), rows, m);
  for (std::size_t h = 0; h < exponents.size(); ++h)
    for (std::size_t l = 0; l < rows; ++l) V.at(h, l) = RingElement::monomial(m, l * exponents[h]);
  return V;
}

/// Solves sum_h x^{l e_h} u_h = rhs_l for l < t over the ring of `m`.
inline RingVector solve_vandermonde(const std::vector<std::size_t>& exponents, const RingVector& rhs, const ModulusPtr& m) {
  for (std::size_t a = 0; a < exponents.size(); ++a)
    for (std::size_t b = a + 1; b < exponents.size(); ++b)
      if (exponents[a] == exponents[b]) throw Error(ErrorCode::BadArgument, "repeated Vandermonde point");
  return solve_left(vandermonde(exponents, exponents.size(), m), rhs);
}

}  // namespace gebr
