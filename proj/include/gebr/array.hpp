#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "error.hpp"
#include "params.hpp"

namespace gebr {

/// rows x cols symbols stored column-major.
class SymbolArray {
 public:
  SymbolArray() = default;
  SymbolArray(std::size_t rows, std::size_t cols) : r_(rows), c_(cols), d_(rows * cols, 0) {}
  SymbolArray(std::size_t rows, std::size_t cols, std::vector<std::uint8_t> data) : r_(rows), c_(cols), d_(std::move(data)) {
    if (d_.size() != rows * cols) throw Error(ErrorCode::LengthMismatch, "array data size does not match shape");
  }

  std::size_t rows() const { return r_; }
  std::size_t cols() const { return c_; }
  std::uint8_t& at(std::size_t row, std::size_t col) { return d_[col * r_ + row]; }
  std::uint8_t at(std::size_t row, std::size_t col) const { return d_[col * r_ + row]; }
  const std::vector<std::uint8_t>& data() const { return d_; }

  Column column(std::size_t col) const {
    return Column(d_.begin() + static_cast<std::ptrdiff_t>(col * r_), d_.begin() + static_cast<std::ptrdiff_t>((col + 1) * r_));
  }
  void set_column(std::size_t col, const Column& v) {
    if (v.size() != r_) throw Error(ErrorCode::LengthMismatch, "column length does not match array rows");
    std::copy(v.begin(), v.end(), d_.begin() + static_cast<std::ptrdiff_t>(col * r_));
  }
  void clear_column(std::size_t col) { set_column(col, Column(r_, 0)); }

  friend bool operator==(const SymbolArray& a, const SymbolArray& b) { return a.r_ == b.r_ && a.c_ == b.c_ && a.d_ == b.d_; }
  friend bool operator!=(const SymbolArray& a, const SymbolArray& b) { return !(a == b); }

 private:
  std::size_t r_ = 0, c_ = 0;
  std::vector<std::uint8_t> d_;
};

/// Sorted, de-duplicated, range-checked index list.
inline std::vector<std::size_t> normalize_indices(std::vector<std::size_t> v, std::size_t bound, const char* what) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  if (!v.empty() && v.back() >= bound)
    throw Error(ErrorCode::BadArgument, std::string(what) + " index " + std::to_string(v.back()) + " out of range");
  return v;
}

inline void check_symbols(const SymbolArray& a, unsigned w) {
  const unsigned q = 1u << w;
  for (auto v : a.data())
    if (v >= q) throw Error(ErrorCode::BadArgument, "symbol out of range for w=" + std::to_string(w));
}

}  // namespace gebr
