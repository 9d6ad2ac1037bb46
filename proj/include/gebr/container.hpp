#pragma once

#include <zlib.h>

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "array.hpp"
#include "error.hpp"
#include "gbr_codec.hpp"
#include "gebr_codec.hpp"
#include "lines.hpp"
#include "params.hpp"

namespace gebr {

enum class CodeKind : std::uint8_t { Gebr = 0, Gbr = 1 };

/// One encoded chunk: header, column-major payload and CRC32.
struct Container {
  CodeKind kind = CodeKind::Gebr;
  CodeParams params;
  SymbolArray symbols;
  std::uint32_t stored_crc = 0;
};

inline constexpr std::uint8_t kContainerVersion = 1;

inline std::uint32_t crc32_of(const std::uint8_t* data, std::size_t len) {
  uLong crc = ::crc32(0L, Z_NULL, 0);
  while (len > 0) {
    const uInt step = static_cast<uInt>(std::min<std::size_t>(len, 1u << 30));
    crc = ::crc32(crc, data, step);
    data += step;
    len -= step;
  }
  return static_cast<std::uint32_t>(crc);
}

namespace detail {

inline void put_u16(std::vector<std::uint8_t>& out, std::size_t v) {
  if (v > 0xFFFF) throw Error(ErrorCode::BadArgument, "value " + std::to_string(v) + " does not fit in 16 bits");
  out.push_back(static_cast<std::uint8_t>(v & 0xFF));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
}

class Reader {
 public:
  Reader(const std::vector<std::uint8_t>& b, std::size_t pos, std::size_t end) : b_(b), pos_(pos), end_(end) {}
  std::size_t pos() const { return pos_; }
  std::uint8_t u8() {
    need(1);
    return b_[pos_++];
  }
  std::size_t u16() {
    need(2);
    const std::size_t v = b_[pos_] | (std::size_t{b_[pos_ + 1]} << 8);
    pos_ += 2;
    return v;
  }
  std::uint32_t u32() {
    need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= std::uint32_t{b_[pos_ + i]} << (8 * i);
    pos_ += 4;
    return v;
  }
  void need(std::size_t n) const {
    if (end_ - pos_ < n) throw Error(ErrorCode::BadContainer, "truncated container");
  }

 private:
  const std::vector<std::uint8_t>& b_;
  std::size_t pos_, end_;
};

}  // namespace detail

/// Rows per column in the payload: m for GEBR, alpha for GBR.
inline std::size_t payload_rows(CodeKind kind, const CodeParams& c) { return kind == CodeKind::Gebr ? c.m() : c.alpha(); }

/// Serialises a container with a fresh CRC, or with `crc` when given.
inline std::vector<std::uint8_t> write_container(CodeKind kind, const CodeParams& c, const SymbolArray& symbols,
                                                 std::optional<std::uint32_t> crc_override = std::nullopt) {
  if (symbols.rows() != payload_rows(kind, c) || symbols.cols() != c.n())
    throw Error(ErrorCode::LengthMismatch, "payload shape does not match the parameters");
  std::vector<std::uint8_t> out{'G', 'E', 'B', 'R', kContainerVersion, static_cast<std::uint8_t>(kind)};
  detail::put_u16(out, c.p());
  detail::put_u16(out, c.tau());
  detail::put_u16(out, c.k());
  detail::put_u16(out, c.r());
  out.push_back(static_cast<std::uint8_t>(c.w()));
  const auto& g = c.g().coeffs();
  detail::put_u16(out, g.size());
  out.insert(out.end(), g.begin(), g.end());
  out.insert(out.end(), symbols.data().begin(), symbols.data().end());
  const std::uint32_t crc = crc_override ? *crc_override : crc32_of(out.data(), out.size());
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(crc >> (8 * i)));
  return out;
}

inline std::vector<std::uint8_t> write_container(const Container& ct, bool keep_crc = false) {
  return write_container(ct.kind, ct.params, ct.symbols, keep_crc ? std::optional(ct.stored_crc) : std::nullopt);
}

/// Parses one container starting at `pos` (not beyond `end`), advancing `pos`.
/// With check_crc unset the stored CRC is returned for a later check.
inline Container read_container(const std::vector<std::uint8_t>& bytes, std::size_t& pos, std::size_t end, bool check_crc = true) {
  const std::size_t start = pos;
  detail::Reader rd(bytes, pos, end);
  rd.need(4);
  if (bytes[start] != 'G' || bytes[start + 1] != 'E' || bytes[start + 2] != 'B' || bytes[start + 3] != 'R')
    throw Error(ErrorCode::BadContainer, "bad magic");
  for (int i = 0; i < 4; ++i) rd.u8();
  if (rd.u8() != kContainerVersion) throw Error(ErrorCode::BadContainer, "unsupported container version");
  const std::uint8_t kind = rd.u8();
  if (kind > 1) throw Error(ErrorCode::BadContainer, "unknown code kind " + std::to_string(kind));
  const std::size_t p = rd.u16(), tau = rd.u16(), k = rd.u16(), r = rd.u16();
  const unsigned w = rd.u8();
  const std::size_t glen = rd.u16();
  rd.need(glen);
  std::vector<std::uint8_t> g(bytes.begin() + static_cast<std::ptrdiff_t>(rd.pos()),
                              bytes.begin() + static_cast<std::ptrdiff_t>(rd.pos() + glen));
  for (std::size_t i = 0; i < glen; ++i) rd.u8();
  std::optional<CodeParams> params;
  try {
    if (w < 1 || w > 8) throw Error(ErrorCode::BadFieldWidth, "w out of range");
    for (auto v : g)
      if (v >> w) throw Error(ErrorCode::FieldMismatch, "g coefficient out of range");
    params = derive_params(p, tau, k, r, w, Poly(g, w));
  } catch (const Error& e) {
    throw Error(ErrorCode::BadContainer, std::string("invalid parameters in header: ") + e.what());
  }
  const CodeKind ck = static_cast<CodeKind>(kind);
  const std::size_t rows = payload_rows(ck, *params), cols = params->n();
  rd.need(rows * cols + 4);
  std::vector<std::uint8_t> data(bytes.begin() + static_cast<std::ptrdiff_t>(rd.pos()),
                                 bytes.begin() + static_cast<std::ptrdiff_t>(rd.pos() + rows * cols));
  for (auto v : data)
    if (v >> w) throw Error(ErrorCode::BadContainer, "payload symbol out of range");
  const std::size_t body_end = rd.pos() + rows * cols;
  detail::Reader tail(bytes, body_end, end);
  const std::uint32_t stored = tail.u32();
  if (check_crc && stored != crc32_of(bytes.data() + start, body_end - start))
    throw Error(ErrorCode::BadContainer, "CRC mismatch");
  pos = tail.pos();
  return Container{ck, *params, SymbolArray(rows, cols, std::move(data)), stored};
}

/// Recomputes the CRC of a container as it would be written.
inline std::uint32_t container_crc(const Container& ct) {
  const auto bytes = write_container(ct);
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= std::uint32_t{bytes[bytes.size() - 4 + i]} << (8 * i);
  return v;
}

// Byte stream <-> w-bit symbols, least significant bit first.

inline std::vector<std::uint8_t> bytes_to_symbols(const std::vector<std::uint8_t>& bytes, unsigned w) {
  std::vector<std::uint8_t> out;
  const std::size_t bits = bytes.size() * 8;
  out.reserve((bits + w - 1) / w);
  for (std::size_t b = 0; b < bits; b += w) {
    std::uint8_t s = 0;
    for (unsigned i = 0; i < w && b + i < bits; ++i) s |= static_cast<std::uint8_t>((bytes[(b + i) / 8] >> ((b + i) % 8) & 1) << i);
    out.push_back(s);
  }
  return out;
}

inline std::vector<std::uint8_t> symbols_to_bytes(const std::vector<std::uint8_t>& symbols, unsigned w, std::size_t nbytes) {
  std::vector<std::uint8_t> out(nbytes, 0);
  const std::size_t bits = nbytes * 8;
  for (std::size_t k = 0; k < symbols.size(); ++k)
    for (unsigned i = 0; i < w; ++i) {
      const std::size_t b = k * w + i;
      if (b >= bits) return out;
      if (symbols[k] >> i & 1) out[b / 8] |= static_cast<std::uint8_t>(1u << (b % 8));
    }
  if (symbols.size() * w < bits) throw Error(ErrorCode::BadContainer, "stream holds fewer symbols than its declared length");
  return out;
}

/// Encodes a byte string as back-to-back containers of alpha*k information
/// symbols each (last one zero-padded) followed by the true length (u64 LE).
inline std::vector<std::uint8_t> encode_stream(const std::vector<std::uint8_t>& input, const CodeParams& c, CodeKind kind) {
  const auto syms = bytes_to_symbols(input, c.w());
  const std::size_t per = c.alpha() * c.k();
  std::vector<std::uint8_t> out;
  for (std::size_t off = 0; off < syms.size(); off += per) {
    std::vector<std::uint8_t> chunk(per, 0);
    for (std::size_t i = 0; i < per && off + i < syms.size(); ++i) chunk[i] = syms[off + i];
    const SymbolArray info(c.alpha(), c.k(), std::move(chunk));
    const SymbolArray body = kind == CodeKind::Gebr ? encode(info, c).symbols : gbr_encode(info, c).symbols;
    const auto bytes = write_container(kind, c, body);
    out.insert(out.end(), bytes.begin(), bytes.end());
  }
  const std::uint64_t len = input.size();
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(len >> (8 * i)));
  return out;
}

/// Splits a stream into containers and the trailing true length.
inline std::pair<std::vector<Container>, std::uint64_t> read_stream(const std::vector<std::uint8_t>& bytes, bool check_crc = true) {
  if (bytes.size() < 8) throw Error(ErrorCode::BadContainer, "stream shorter than its length footer");
  const std::size_t end = bytes.size() - 8;
  std::vector<Container> out;
  std::size_t pos = 0;
  while (pos < end) out.push_back(read_container(bytes, pos, end, check_crc));
  std::uint64_t len = 0;
  for (int i = 0; i < 8; ++i) len |= std::uint64_t{bytes[end + i]} << (8 * i);
  return {std::move(out), len};
}

inline std::vector<std::uint8_t> write_stream(const std::vector<Container>& cts, std::uint64_t len, bool keep_crc = false) {
  std::vector<std::uint8_t> out;
  for (const auto& ct : cts) {
    const auto b = write_container(ct, keep_crc);
    out.insert(out.end(), b.begin(), b.end());
  }
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(len >> (8 * i)));
  return out;
}

/// Erasures declared for every chunk of a stream.
struct ErasureSpec {
  std::vector<std::size_t> columns;
  std::optional<LineErasure> lines;
  /// (column, rows) pairs repaired inside the column code (GEBR only).
  std::vector<std::pair<std::size_t, std::vector<std::size_t>>> symbols;

  bool empty() const { return columns.empty() && (!lines || lines->lines.empty()) && symbols.empty(); }
};

/// Restores one chunk and checks it against its stored CRC.
inline Container restore(const Container& ct, const ErasureSpec& er) {
  Container out = ct;
  if (ct.kind == CodeKind::Gebr) {
    GebrArray a{ct.params, ct.symbols, false};
    for (const auto& [col, rows] : er.symbols) {
      if (col >= ct.params.n()) throw Error(ErrorCode::BadArgument, "column index out of range");
      a.symbols.set_column(col, local_repair(a.symbols.column(col), rows, ct.params));
    }
    if (er.lines) a = recover_lines(a, *er.lines);
    a = decode_columns(a, er.columns);
    out.symbols = a.symbols;
  } else {
    if (!er.symbols.empty()) throw Error(ErrorCode::BadArgument, "in-column repair applies to GEBR containers only");
    GbrArray a{ct.params, ct.symbols, false};
    if (er.lines) a = gbr_recover_lines(a, *er.lines);
    a = gbr_decode_columns(a, er.columns);
    out.symbols = a.symbols;
  }
  if (container_crc(out) != ct.stored_crc) throw Error(ErrorCode::BadContainer, "CRC mismatch after restoration");
  return out;
}

/// Restores every chunk and returns the original bytes.
inline std::vector<std::uint8_t> decode_stream(const std::vector<std::uint8_t>& bytes, const ErasureSpec& er,
                                               std::vector<Container>* restored = nullptr) {
  auto [cts, len] = read_stream(bytes, er.empty());
  std::vector<std::uint8_t> syms;
  unsigned w = 1;
  for (const auto& ct : cts) {
    const Container fixed = restore(ct, er);
    const auto& c = fixed.params;
    w = c.w();
    for (std::size_t j = 0; j < c.k(); ++j)
      for (std::size_t i = 0; i < c.alpha(); ++i) syms.push_back(fixed.symbols.at(i, j));
    if (restored) restored->push_back(fixed);
  }
  return symbols_to_bytes(syms, w, static_cast<std::size_t>(len));
}

/// Overwrites the declared erasures with zeros (CRC left as stored).
inline Container erase(const Container& ct, const ErasureSpec& er) {
  Container out = ct;
  const std::size_t rows = out.symbols.rows(), m = ct.params.m();
  for (auto j : normalize_indices(er.columns, ct.params.n(), "column")) out.symbols.clear_column(j);
  if (er.lines)
    for (auto l : normalize_indices(er.lines->lines, m, "line"))
      for (std::size_t j = 0; j < ct.params.n(); ++j) {
        const std::size_t row = line_row(l, er.lines->slope % m, j, m);
        if (row < rows) out.symbols.at(row, j) = 0;
      }
  for (const auto& [col, rs] : er.symbols) {
    if (col >= ct.params.n()) throw Error(ErrorCode::BadArgument, "column index out of range");
    for (auto row : normalize_indices(rs, rows, "row")) out.symbols.at(row, col) = 0;
  }
  return out;
}

}  // namespace gebr
