#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "error.hpp"
#include "poly.hpp"
#include "ring.hpp"
#include "scalar_linalg.hpp"

namespace gebr {

/// Column symbols, coefficient of x^0 (row 0) first.
using Column = std::vector<std::uint8_t>;

inline bool is_prime(std::size_t n) {
  if (n < 2) return false;
  for (std::size_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

class CodeParams;
CodeParams derive_params(std::size_t p, std::size_t tau, std::size_t k, std::size_t r, unsigned w, const Poly& g,
                         std::optional<std::size_t> d = std::nullopt);

/// Validated code parameters and everything derived from them.
class CodeParams {
 public:
  std::size_t p() const { return p_; }
  std::size_t tau() const { return tau_; }
  std::size_t k() const { return k_; }
  std::size_t r() const { return r_; }
  std::size_t n() const { return k_ + r_; }
  unsigned w() const { return w_; }
  std::size_t m() const { return p_ * tau_; }
  std::size_t alpha() const { return alpha_; }
  std::size_t nu() const { return nu_; }
  std::size_t gamma() const { return gamma_; }
  /// p^nu
  std::size_t p_nu() const { return p_nu_; }
  /// p^{nu+1}, the length bound under which the code is always recoverable.
  std::size_t recoverable_length() const { return p_nu_ * p_; }
  std::optional<std::size_t> d() const { return d_; }

  const Poly& g() const { return g_; }
  const Poly& h() const { return h_; }
  /// 1 + x^tau + ... + x^{(p-1)tau}
  const Poly& block_sum() const { return block_sum_; }
  /// (1 + x^tau) g, the generator of the column code.
  const Poly& local_generator() const { return local_gen_; }
  bool gcd_g_h_one() const { return gcd_g_h_; }
  bool gcd_low_h_one() const { return gcd_low_h_; }
  bool g_is_one() const { return g_.is_one(); }
  bool tau_is_power_of_p() const { return gamma_ == 1; }

  const CyclicDecomposition& rings() const { return rings_; }
  const ModulusPtr& full_ring() const { return rings_.full; }
  const ModulusPtr& h_ring() const { return h_ring_; }
  const ModulusPtr& local_ring() const { return local_ring_; }
  /// x^{-alpha} modulo the local generator.
  const RingElement& x_alpha_inverse() const { return x_alpha_inv_; }

  friend bool operator==(const CodeParams& a, const CodeParams& b) {
    return a.p_ == b.p_ && a.tau_ == b.tau_ && a.k_ == b.k_ && a.r_ == b.r_ && a.w_ == b.w_ && a.g_ == b.g_;
  }

  friend CodeParams derive_params(std::size_t, std::size_t, std::size_t, std::size_t, unsigned, const Poly&,
                                  std::optional<std::size_t>);

 private:
  CodeParams() = default;

  std::size_t p_ = 0, tau_ = 0, k_ = 0, r_ = 0;
  unsigned w_ = 1;
  std::size_t alpha_ = 0, nu_ = 0, gamma_ = 0, p_nu_ = 1;
  std::optional<std::size_t> d_;
  Poly g_, h_, block_sum_, local_gen_;
  bool gcd_g_h_ = false, gcd_low_h_ = false;
  CyclicDecomposition rings_;
  ModulusPtr h_ring_, local_ring_;
  RingElement x_alpha_inv_;
};

inline CodeParams derive_params(std::size_t p, std::size_t tau, std::size_t k, std::size_t r, unsigned w,
                                const Poly& g, std::optional<std::size_t> d) {
  gf::check_width(w);
  if (p == 2 || !is_prime(p)) throw Error(ErrorCode::NotPrime, "p=" + std::to_string(p) + " is not an odd prime");
  if (tau < 1) throw Error(ErrorCode::BadShape, "tau must be positive");
  if (k < 1 || r < 1) throw Error(ErrorCode::BadShape, "k and r must be positive");
  if (k + r > p * tau)
    throw Error(ErrorCode::BadShape, "k+r=" + std::to_string(k + r) + " exceeds p*tau=" + std::to_string(p * tau));
  if (g.width() != w) throw Error(ErrorCode::FieldMismatch, "g is over a different field than w");

  CodeParams c;
  c.p_ = p;
  c.tau_ = tau;
  c.k_ = k;
  c.r_ = r;
  c.w_ = w;
  c.d_ = d;
  c.block_sum_ = cyclic_sum(tau, p, w);
  if (g.is_zero()) throw Error(ErrorCode::GNotDivisor, "g is zero");
  auto [h, rem] = divmod(c.block_sum_, g);
  if (!rem.is_zero()) throw Error(ErrorCode::GNotDivisor, "g=" + to_string(g) + " does not divide " + to_string(c.block_sum_));
  if (g[0] != 1) throw Error(ErrorCode::BadArgument, "g must satisfy g(0)=1");
  c.g_ = g;
  c.h_ = h;
  c.alpha_ = static_cast<std::size_t>(h.degree());
  if (c.alpha_ == 0) throw Error(ErrorCode::Degenerate, "g equals the full block sum; no information rows remain");

  std::size_t gm = tau;
  while (gm % p == 0) {
    gm /= p;
    ++c.nu_;
    c.p_nu_ *= p;
  }
  c.gamma_ = gm;

  const Poly low = one_plus_x_pow(tau, w);
  c.local_gen_ = low * g;
  c.gcd_g_h_ = gcd(g, h).is_one();
  c.gcd_low_h_ = gcd(low, h).is_one();
  c.rings_ = CyclicDecomposition::make(p, tau, w);
  c.h_ring_ = make_modulus(h);
  c.local_ring_ = make_modulus(c.local_gen_);
  c.x_alpha_inv_ = ring_inverse(RingElement::monomial(c.local_ring_, c.alpha_));
  return c;
}

inline void check_length(const Column& col, std::size_t want, const char* what) {
  if (col.size() != want)
    throw Error(ErrorCode::LengthMismatch,
                std::string(what) + ": expected " + std::to_string(want) + " symbols, got " + std::to_string(col.size()));
}

/// Column divisible by (1+x^tau) g.
inline bool check_membership(const Column& col, const CodeParams& c) {
  check_length(col, c.m(), "check_membership");
  return divides(c.local_generator(), Poly(col, c.w()));
}

/// Every residue class mod tau sums to zero.
inline bool satisfies_local_parity(const Column& col, const CodeParams& c) {
  check_length(col, c.m(), "satisfies_local_parity");
  for (std::size_t mu = 0; mu < c.tau(); ++mu) {
    std::uint8_t s = 0;
    for (std::size_t l = 0; l < c.p(); ++l) s ^= col[mu + l * c.tau()];
    if (s) return false;
  }
  return true;
}

/// Systematic column: info at rows 0..alpha-1, local parity at rows alpha..m-1.
inline Column local_encode_column(const Column& info, const CodeParams& c) {
  check_length(info, c.alpha(), "local_encode_column");
  const RingElement q = RingElement(c.local_ring(), Poly(info, c.w())) * c.x_alpha_inverse();
  Column out(c.m(), 0);
  std::copy(info.begin(), info.end(), out.begin());
  for (std::size_t i = 0; i < q.coeffs().size(); ++i) out[c.alpha() + i] = q[i];
  return out;
}

/// Restores the listed erased positions of a column from its cyclic-code constraints.
inline Column local_repair(const Column& col, const std::vector<std::size_t>& erased, const CodeParams& c) {
  check_length(col, c.m(), "local_repair");
  Column work = col;
  std::vector<bool> mark(c.m(), false);
  for (auto e : erased) {
    if (e >= c.m()) throw Error(ErrorCode::BadArgument, "erased position out of range");
    mark[e] = true;
    work[e] = 0;
  }
  std::vector<std::size_t> unknowns;
  for (std::size_t i = 0; i < c.m(); ++i)
    if (mark[i]) unknowns.push_back(i);
  if (unknowns.empty()) {
    if (!check_membership(work, c)) throw Error(ErrorCode::VerificationFailed, "column is not a codeword");
    return work;
  }
  const std::size_t eqs = c.local_ring()->degree();
  GfMatrix A(eqs, unknowns.size(), c.w());
  for (std::size_t u = 0; u < unknowns.size(); ++u) {
    const auto xe = RingElement::monomial(c.local_ring(), unknowns[u]);
    for (std::size_t i = 0; i < eqs; ++i) A.at(i, u) = xe[i];
  }
  const RingElement known(c.local_ring(), Poly(work, c.w()));
  const auto sol = solve(A, known.coeffs());
  if (sol.status == SolveStatus::Underdetermined)
    throw Error(ErrorCode::UnsolvablePattern, "erasure pattern leaves the column underdetermined");
  if (sol.status == SolveStatus::Inconsistent)
    throw Error(ErrorCode::VerificationFailed, "surviving symbols are inconsistent with the column code");
  for (std::size_t u = 0; u < unknowns.size(); ++u) work[unknowns[u]] = sol.x[u];
  return work;
}

/// Canonical text form `p=..;tau=..;k=..;r=..;w=..;g=<hex>`.
inline std::string to_header(const CodeParams& c) {
  std::ostringstream os;
  os << "p=" << c.p() << ";tau=" << c.tau() << ";k=" << c.k() << ";r=" << c.r() << ";w=" << c.w()
     << ";g=" << to_hex(c.g());
  return os.str();
}

inline CodeParams parse_header(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::istringstream is(text);
  std::string item;
  while (std::getline(is, item, ';')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw Error(ErrorCode::BadArgument, "bad header field: " + item);
    kv[item.substr(0, eq)] = item.substr(eq + 1);
  }
  for (const char* key : {"p", "tau", "k", "r", "w", "g"})
    if (!kv.count(key)) throw Error(ErrorCode::BadArgument, std::string("header missing ") + key);
  auto num = [&](const char* key) {
    try {
      return static_cast<std::size_t>(std::stoull(kv[key]));
    } catch (const std::exception&) {
      throw Error(ErrorCode::BadArgument, std::string("header field not a number: ") + key);
    }
  };
  const auto w = static_cast<unsigned>(num("w"));
  gf::check_width(w);
  return derive_params(num("p"), num("tau"), num("k"), num("r"), w, parse_hex(kv["g"], w));
}

}  // namespace gebr
