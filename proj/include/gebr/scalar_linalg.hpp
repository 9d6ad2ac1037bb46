#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "gf.hpp"

namespace gebr {

/// Dense matrix over GF(2^w), row-major.
class GfMatrix {
 public:
  GfMatrix() = default;
  GfMatrix(std::size_t rows, std::size_t cols, unsigned w) : r_(rows), c_(cols), w_(w), a_(rows * cols, 0) {}

  std::size_t rows() const { return r_; }
  std::size_t cols() const { return c_; }
  unsigned width() const { return w_; }
  std::uint8_t& at(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
  std::uint8_t at(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }

  void swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t k = 0; k < c_; ++k) std::swap(at(i, k), at(j, k));
  }

  /// Reduced row echelon form in place; returns the pivot columns, considering only columns < limit.
  std::vector<std::size_t> rref(std::size_t limit) {
    std::vector<std::size_t> piv;
    std::size_t row = 0;
    for (std::size_t col = 0; col < limit && row < r_; ++col) {
      std::size_t sel = row;
      while (sel < r_ && at(sel, col) == 0) ++sel;
      if (sel == r_) continue;
      swap_rows(sel, row);
      const std::uint8_t iv = gf::inv(w_, at(row, col));
      if (iv != 1)
        for (std::size_t k = 0; k < c_; ++k) at(row, k) = gf::mul(w_, at(row, k), iv);
      for (std::size_t i = 0; i < r_; ++i) {
        if (i == row) continue;
        const std::uint8_t f = at(i, col);
        if (!f) continue;
        for (std::size_t k = 0; k < c_; ++k) at(i, k) ^= gf::mul(w_, f, at(row, k));
      }
      piv.push_back(col);
      ++row;
    }
    return piv;
  }
  std::vector<std::size_t> rref() { return rref(c_); }

 private:
  std::size_t r_ = 0, c_ = 0;
  unsigned w_ = 1;
  std::vector<std::uint8_t> a_;
};

inline std::size_t rank(GfMatrix m) { return m.rref().size(); }

enum class SolveStatus { Unique, Underdetermined, Inconsistent };

struct ScalarSolution {
  SolveStatus status = SolveStatus::Inconsistent;
  std::vector<std::uint8_t> x;  // a particular solution unless Inconsistent
};

/// Solves A x = b over GF(2^w).
inline ScalarSolution solve(const GfMatrix& A, const std::vector<std::uint8_t>& b) {
  const std::size_t n = A.cols();
  GfMatrix aug(A.rows(), n + 1, A.width());
  for (std::size_t i = 0; i < A.rows(); ++i) {
    for (std::size_t j = 0; j < n; ++j) aug.at(i, j) = A.at(i, j);
    aug.at(i, n) = b[i];
  }
  const auto piv = aug.rref(n);
  for (std::size_t i = piv.size(); i < A.rows(); ++i)
    if (aug.at(i, n)) return {SolveStatus::Inconsistent, {}};
  ScalarSolution s;
  s.x.assign(n, 0);
  for (std::size_t r = 0; r < piv.size(); ++r) s.x[piv[r]] = aug.at(r, n);
  s.status = piv.size() == n ? SolveStatus::Unique : SolveStatus::Underdetermined;
  return s;
}

/// Basis of the right kernel {x : A x = 0}.
inline std::vector<std::vector<std::uint8_t>> kernel_basis(GfMatrix A) {
  const std::size_t n = A.cols();
  const auto piv = A.rref();
  std::vector<bool> is_piv(n, false);
  for (auto c : piv) is_piv[c] = true;
  std::vector<std::vector<std::uint8_t>> basis;
  for (std::size_t f = 0; f < n; ++f) {
    if (is_piv[f]) continue;
    std::vector<std::uint8_t> v(n, 0);
    v[f] = 1;
    for (std::size_t r = 0; r < piv.size(); ++r) v[piv[r]] = A.at(r, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

/// GF(2) matrix with rows packed into 64-bit words.
class BitMatrix {
 public:
  BitMatrix(std::size_t rows, std::size_t cols) : r_(rows), c_(cols), words_((cols + 63) / 64), a_(rows * words_, 0) {}

  std::size_t rows() const { return r_; }
  std::size_t cols() const { return c_; }
  bool get(std::size_t i, std::size_t j) const { return a_[i * words_ + j / 64] >> (j % 64) & 1; }
  void set(std::size_t i, std::size_t j, bool v) {
    auto& wd = a_[i * words_ + j / 64];
    const auto bit = std::uint64_t{1} << (j % 64);
    wd = v ? (wd | bit) : (wd & ~bit);
  }
  void flip(std::size_t i, std::size_t j) { a_[i * words_ + j / 64] ^= std::uint64_t{1} << (j % 64); }

  std::vector<std::size_t> rref() {
    std::vector<std::size_t> piv;
    std::size_t row = 0;
    for (std::size_t col = 0; col < c_ && row < r_; ++col) {
      std::size_t sel = row;
      while (sel < r_ && !get(sel, col)) ++sel;
      if (sel == r_) continue;
      if (sel != row)
        for (std::size_t k = 0; k < words_; ++k) std::swap(a_[sel * words_ + k], a_[row * words_ + k]);
      for (std::size_t i = 0; i < r_; ++i)
        if (i != row && get(i, col))
          for (std::size_t k = 0; k < words_; ++k) a_[i * words_ + k] ^= a_[row * words_ + k];
      piv.push_back(col);
      ++row;
    }
    return piv;
  }

  std::vector<std::vector<std::uint8_t>> kernel_basis() const {
    BitMatrix m = *this;
    const auto piv = m.rref();
    std::vector<bool> is_piv(c_, false);
    for (auto c : piv) is_piv[c] = true;
    std::vector<std::vector<std::uint8_t>> basis;
    for (std::size_t f = 0; f < c_; ++f) {
      if (is_piv[f]) continue;
      std::vector<std::uint8_t> v(c_, 0);
      v[f] = 1;
      for (std::size_t r = 0; r < piv.size(); ++r) v[piv[r]] = m.get(r, f);
      basis.push_back(std::move(v));
    }
    return basis;
  }

 private:
  std::size_t r_, c_, words_;
  std::vector<std::uint64_t> a_;
};

}  // namespace gebr
