#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "params.hpp"
#include "poly.hpp"
#include "ring.hpp"
#include "scalar_linalg.hpp"

namespace gebr {

enum class Verdict { Recoverable, NotRecoverable, Unknown };
enum class Rule { None, T1i, T1ii, T2i, T2ii, C1i, C1ii, T3i, T3ii, Oracle };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Recoverable: return "Recoverable";
    case Verdict::NotRecoverable: return "NotRecoverable";
    case Verdict::Unknown: return "Unknown";
  }
  return "?";
}

inline const char* to_string(Rule r) {
  switch (r) {
    case Rule::None: return "none";
    case Rule::T1i: return "T1-i";
    case Rule::T1ii: return "T1-ii";
    case Rule::T2i: return "T2-i";
    case Rule::T2ii: return "T2-ii";
    case Rule::C1i: return "C1-i";
    case Rule::C1ii: return "C1-ii";
    case Rule::T3i: return "T3-i";
    case Rule::T3ii: return "T3-ii";
    case Rule::Oracle: return "Oracle";
  }
  return "?";
}

/// Outcome of a recoverability check. A NotRecoverable verdict carries a
/// nonzero codeword s killed by 1 + x^shift modulo 1 + x^m.
struct ConditionVerdict {
  Verdict verdict = Verdict::Unknown;
  Rule rule = Rule::None;
  std::optional<std::size_t> shift;
  std::optional<Poly> witness;
};

/// `verdict=...;rule=...;i=...;witness=<hex>`; absent fields are empty.
inline std::string to_string(const ConditionVerdict& v) {
  std::string s = std::string("verdict=") + to_string(v.verdict) + ";rule=" + to_string(v.rule) + ";i=";
  if (v.shift) s += std::to_string(*v.shift);
  s += ";witness=";
  if (v.witness) s += to_hex(*v.witness);
  return s;
}

inline bool is_two_primitive_mod_p(std::size_t p) {
  if (p < 3) return false;
  std::size_t x = 2 % p, order = 1;
  while (x != 1) {
    x = x * 2 % p;
    ++order;
    if (order > p) return false;
  }
  return order == p - 1;
}

/// True when `s` is a nonzero multiple of (1+x^tau) g modulo 1 + x^m and
/// (1 + x^shift) s vanishes modulo 1 + x^m.
inline bool check_witness(const CodeParams& c, std::size_t shift, const Poly& s) {
  const RingElement e(c.full_ring(), s);
  if (e.is_zero()) return false;
  if (!divides(c.local_generator(), e.poly())) return false;
  return (RingElement(c.full_ring(), one_plus_x_pow(shift, c.w())) * e).is_zero();
}

namespace detail {

/// 1 + x^step + ... + x^{(p-1) step}.
inline Poly block_sum_at(const CodeParams& c, std::size_t step) { return cyclic_sum(step, c.p(), c.w()); }

/// g = b^t for some 1 <= t <= max_t.
inline bool is_power_of(const Poly& g, const Poly& b, std::size_t max_t) {
  Poly q = g;
  std::size_t t = 0;
  while (!q.is_one()) {
    auto [d, rem] = divmod(q, b);
    if (!rem.is_zero()) return false;
    q = d;
    if (++t > max_t) return false;
  }
  return t >= 1;
}

/// gamma = 2^j l with l odd; j = 0 when gamma is odd.
inline std::size_t two_adic(std::size_t gamma) {
  std::size_t j = 0;
  while (gamma % 2 == 0) {
    gamma /= 2;
    ++j;
  }
  return j;
}

}  // namespace detail

/// Shift and witness for a failing clause: g (1 + x^{p^nu}) sum_{u<gamma} x^{u p^{nu+1}}
/// when the block sum at p^nu does not divide g, otherwise
/// (1 + x^m)/(1 + x^{p^{nu+1}}) (1 + x^{p^nu}). Checked before returning.
inline std::pair<std::size_t, Poly> construct_witness(const CodeParams& c) {
  const std::size_t pn = c.p_nu(), pn1 = c.recoverable_length();
  const unsigned w = c.w();
  const Poly base = cyclic_sum(pn1, c.gamma(), w) * one_plus_x_pow(pn, w);
  const bool divisible = divides(detail::block_sum_at(c, pn), c.g());
  const Poly s = (divisible ? base : c.g() * base) % one_plus_x_pow(c.m(), w);
  if (!check_witness(c, pn1, s))
    throw Error(ErrorCode::WitnessCheckFailed, "constructed witness " + to_string(s) + " is not a nonzero annihilated codeword");
  return {pn1, s};
}

/// The closed-form conditions for the GEBR code in a fixed order, without
/// building a witness.
inline ConditionVerdict classify_clause(const CodeParams& c) {
  const std::size_t j = detail::two_adic(c.gamma());
  const Poly bs = detail::block_sum_at(c, c.p_nu());
  const bool bs_divides_g = divides(bs, c.g());
  const bool t2 = j >= 1 && detail::is_power_of(c.g(), bs, (std::size_t{1} << j) - 1);
  const bool c1 = j >= 1 && c.w() == 1 && is_two_primitive_mod_p(c.p()) && bs_divides_g;

  ConditionVerdict v;
  if (c.n() <= c.recoverable_length()) {
    v.verdict = Verdict::Recoverable;
    v.rule = t2 ? Rule::T2i : c1 ? Rule::C1i : Rule::T1i;
    return v;
  }
  if (!bs_divides_g)
    v.rule = Rule::T1ii;
  else if (t2)
    v.rule = Rule::T2ii;
  else if (c1)
    v.rule = Rule::C1ii;
  else
    return v;
  v.verdict = Verdict::NotRecoverable;
  return v;
}

/// classify_clause plus a checked witness for NotRecoverable verdicts.
inline ConditionVerdict classify(const CodeParams& c) {
  ConditionVerdict v = classify_clause(c);
  if (v.verdict == Verdict::NotRecoverable) {
    auto [shift, s] = construct_witness(c);
    v.shift = shift;
    v.witness = s;
  }
  return v;
}

/// MDS conditions for the GBR code; they need gcd(g,h) = gcd(1+x^tau,h) = 1.
inline ConditionVerdict classify_gbr(const CodeParams& c) {
  ConditionVerdict v;
  if (!c.gcd_g_h_one() || !c.gcd_low_h_one()) return v;
  if (c.n() <= c.recoverable_length()) {
    v.verdict = Verdict::Recoverable;
    v.rule = Rule::T3i;
    return v;
  }
  if (divides(detail::block_sum_at(c, c.p_nu()), c.g())) return v;
  auto [shift, s] = construct_witness(c);
  v.verdict = Verdict::NotRecoverable;
  v.rule = Rule::T3ii;
  v.shift = shift;
  v.witness = s;
  return v;
}

/// Largest m the oracle accepts: GEBR_ORACLE_MAX_M if set, else 128.
inline std::size_t oracle_max_m() {
  if (const char* env = std::getenv("GEBR_ORACLE_MAX_M")) {
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return v;
  }
  return 128;
}

/// Kernel data for s -> (1 + x^i) s on the cyclic code of length p tau
/// generated by (1+x^tau) g.
struct OracleProfile {
  std::size_t m = 0;
  /// Smallest i in [1, m-1] with a nontrivial kernel, or m if none.
  std::size_t first_bad = 0;
  std::optional<Poly> witness;
};

namespace detail {

/// Columns (1 + x^i) x^e G mod (1 + x^m), e < dim.
inline BitMatrix shift_map(const std::vector<std::uint8_t>& G, std::size_t dim, std::size_t m, std::size_t i) {
  BitMatrix M(m, dim);
  for (std::size_t e = 0; e < dim; ++e)
    for (std::size_t d = 0; d < G.size(); ++d) {
      if (!G[d]) continue;
      M.flip((d + e) % m, e);
      M.flip((d + e + i) % m, e);
    }
  return M;
}

}  // namespace detail

/// Exhaustive kernel computation over GF(2). Needs binary coefficients in g,
/// which makes the answer valid for every q = 2^w.
inline OracleProfile oracle_profile(std::size_t p, std::size_t tau, const Poly& g) {
  const std::size_t m = p * tau;
  if (m > oracle_max_m()) throw Error(ErrorCode::TooLarge, "oracle limited to m <= " + std::to_string(oracle_max_m()));
  for (auto v : g.coeffs())
    if (v > 1) throw Error(ErrorCode::BadArgument, "oracle needs g with binary coefficients");
  const Poly G = Poly(g.coeffs(), 1) * one_plus_x_pow(tau);
  if (G.degree() < 0 || static_cast<std::size_t>(G.degree()) >= m)
    throw Error(ErrorCode::Degenerate, "generator leaves no codewords");
  const std::size_t dim = m - static_cast<std::size_t>(G.degree());
  OracleProfile out;
  out.m = m;
  out.first_bad = m;
  for (std::size_t i = 1; i < m; ++i) {
    const BitMatrix M = detail::shift_map(G.coeffs(), dim, m, i);
    const auto ker = M.kernel_basis();
    if (ker.empty()) continue;
    out.first_bad = i;
    const Poly s = (Poly(ker.front(), 1) * G) % one_plus_x_pow(m);
    out.witness = Poly(s.coeffs(), g.width());
    break;
  }
  return out;
}

inline ConditionVerdict oracle_classify(const CodeParams& c) {
  const auto prof = oracle_profile(c.p(), c.tau(), c.g());
  ConditionVerdict v;
  v.rule = Rule::Oracle;
  if (prof.first_bad >= c.n()) {
    v.verdict = Verdict::Recoverable;
    return v;
  }
  v.verdict = Verdict::NotRecoverable;
  v.shift = prof.first_bad;
  v.witness = prof.witness;
  return v;
}

// Factorisation over GF(2).

namespace detail {

inline Poly mulmod(const Poly& a, const Poly& b, const Poly& f) { return (a * b) % f; }

/// a^(2^k) mod f.
inline Poly square_k(Poly a, std::size_t k, const Poly& f) {
  for (std::size_t i = 0; i < k; ++i) a = mulmod(a, a, f);
  return a;
}

inline Poly derivative(const Poly& f) {
  std::vector<std::uint8_t> d;
  for (std::size_t i = 1; i < f.coeffs().size(); ++i) d.push_back(i % 2 ? f.coeffs()[i] : 0);
  return Poly(d, 1);
}

/// f(x) = u(x)^2 -> u(x).
inline Poly sqrt_gf2(const Poly& f) {
  std::vector<std::uint8_t> r;
  for (std::size_t i = 0; i < f.coeffs().size(); i += 2) r.push_back(f.coeffs()[i]);
  return Poly(r, 1);
}

/// Square-free parts: pairs (square-free factor, multiplicity).
inline std::vector<std::pair<Poly, std::size_t>> square_free(const Poly& f) {
  std::vector<std::pair<Poly, std::size_t>> out;
  if (f.degree() <= 0) return out;
  const Poly d = derivative(f);
  if (d.is_zero()) {
    for (auto [u, e] : square_free(sqrt_gf2(f))) out.push_back({u, 2 * e});
    return out;
  }
  Poly c = gcd(f, d), w = f / c;
  std::size_t i = 1;
  while (!w.is_one()) {
    const Poly y = gcd(w, c);
    const Poly z = w / y;
    if (!z.is_one()) out.push_back({z, i});
    ++i;
    w = y;
    c = c / y;
  }
  if (!c.is_one())
    for (auto [u, e] : square_free(sqrt_gf2(c))) out.push_back({u, 2 * e});
  return out;
}

inline void equal_degree(const Poly& f, std::size_t d, std::mt19937& rng, std::vector<Poly>& out) {
  const std::size_t deg = static_cast<std::size_t>(f.degree());
  if (deg == d) {
    out.push_back(f);
    return;
  }
  for (;;) {
    std::vector<std::uint8_t> a(deg);
    for (auto& b : a) b = rng() & 1;
    const Poly base(a, 1);
    if (base.degree() < 1) continue;
    Poly t = base, acc = base;
    for (std::size_t i = 1; i < d; ++i) {
      t = mulmod(t, t, f);
      acc += t;
    }
    const Poly g = gcd(f, acc);
    if (g.degree() > 0 && static_cast<std::size_t>(g.degree()) < deg) {
      equal_degree(g, d, rng, out);
      equal_degree(f / g, d, rng, out);
      return;
    }
  }
}

}  // namespace detail

/// Monic irreducible factors of f over GF(2) with multiplicities, sorted.
inline std::vector<std::pair<Poly, std::size_t>> factor_gf2(const Poly& f) {
  std::mt19937 rng(0x9e3779b9u);
  std::vector<std::pair<Poly, std::size_t>> out;
  for (auto [u, e] : detail::square_free(Poly(f.coeffs(), 1))) {
    Poly rest = u;
    const Poly x = Poly::monomial(1, 1);
    Poly xp = x;
    for (std::size_t d = 1; rest.degree() >= static_cast<int>(2 * d); ++d) {
      xp = detail::mulmod(xp, xp, rest);
      const Poly g = gcd(rest, xp + x);
      if (g.is_one()) continue;
      std::vector<Poly> parts;
      detail::equal_degree(g, d, rng, parts);
      for (auto& q : parts) out.push_back({q, e});
      rest = rest / g;
      xp = xp % rest;
    }
    if (rest.degree() > 0) out.push_back({rest, e});
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<std::pair<Poly, std::size_t>> merged;
  for (auto& pr : out) {
    if (!merged.empty() && merged.back().first == pr.first)
      merged.back().second += pr.second;
    else
      merged.push_back(pr);
  }
  return merged;
}

/// All monic divisors of f over GF(2), including 1 and f.
inline std::vector<Poly> divisors_gf2(const Poly& f) {
  std::vector<Poly> out{Poly::one()};
  for (const auto& [q, e] : factor_gf2(f)) {
    const std::size_t base = out.size();
    Poly pw = Poly::one();
    for (std::size_t t = 1; t <= e; ++t) {
      pw = pw * q;
      for (std::size_t i = 0; i < base; ++i) out.push_back(out[i] * pw);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace gebr
