#include <gtest/gtest.h>

#include <cstdlib>

#include "gebr/recoverability.hpp"
#include "support.hpp"

using namespace gebr;
using gebr::testing::P;

namespace {

/// Exhaustive trial division over every polynomial of lower degree.
bool irreducible_by_trial(const Poly& f) {
  const int d = f.degree();
  for (std::uint64_t mask = 2; mask < (std::uint64_t{1} << (d / 2 + 1)); ++mask) {
    const Poly q = gebr::testing::from_mask(mask);
    if (q.degree() >= 1 && 2 * q.degree() <= d && divides(q, f)) return false;
  }
  return true;
}

std::vector<Poly> divisors_by_trial(const Poly& f) {
  std::vector<Poly> out;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << (f.degree() + 1)); ++mask) {
    const Poly q = gebr::testing::from_mask(mask);
    if (divides(q, f)) out.push_back(q);
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Smallest i in [1, m-1] with gcd(1 + x^i, h) != 1, else m.
std::size_t first_bad_by_gcd(const CodeParams& c) {
  for (std::size_t i = 1; i < c.m(); ++i)
    if (!gcd(one_plus_x_pow(i), c.h()).is_one()) return i;
  return c.m();
}

}  // namespace

TEST(TwoPrimitive, SmallPrimes) {
  EXPECT_TRUE(is_two_primitive_mod_p(3));
  EXPECT_TRUE(is_two_primitive_mod_p(5));
  EXPECT_FALSE(is_two_primitive_mod_p(7));
  EXPECT_TRUE(is_two_primitive_mod_p(11));
  EXPECT_TRUE(is_two_primitive_mod_p(13));
  EXPECT_FALSE(is_two_primitive_mod_p(17));
}

TEST(Classify, P5Tau10Boundary) {
  const Poly g = cyclic_sum(5, 5);
  const auto ok = classify(derive_params(5, 10, 20, 5, 1, g));
  EXPECT_EQ(ok.verdict, Verdict::Recoverable);
  EXPECT_EQ(ok.rule, Rule::T2i);
  const auto c = derive_params(5, 10, 20, 6, 1, g);
  const auto bad = classify(c);
  EXPECT_EQ(bad.verdict, Verdict::NotRecoverable);
  EXPECT_EQ(bad.rule, Rule::T2ii);
  ASSERT_TRUE(bad.shift && bad.witness);
  EXPECT_EQ(*bad.shift, 25u);
  EXPECT_EQ(*bad.witness, P({0, 25}) * P({0, 5}));
  EXPECT_TRUE(check_witness(c, 25, *bad.witness));
  EXPECT_TRUE(check_witness(c, 25, P({0, 25}) * P({0, 15})));
  EXPECT_FALSE(check_witness(c, 24, *bad.witness));
  EXPECT_EQ(oracle_classify(c).verdict, Verdict::NotRecoverable);
  EXPECT_EQ(oracle_classify(derive_params(5, 10, 20, 5, 1, g)).verdict, Verdict::Recoverable);
}

TEST(Classify, BaseCases) {
  const auto c = classify(derive_params(3, 1, 1, 2, 1, Poly::one()));
  EXPECT_EQ(c.verdict, Verdict::Recoverable);
  EXPECT_EQ(c.rule, Rule::T1i);
  const auto e1 = classify(derive_params(3, 3, 7, 2, 1, Poly::one()));
  EXPECT_EQ(e1.rule, Rule::T1i);
  EXPECT_EQ(to_string(e1), "verdict=Recoverable;rule=T1-i;i=;witness=");
}

TEST(Classify, FirstClauseWitness) {
  const auto c = derive_params(5, 2, 4, 2, 1, Poly::one());
  const auto v = classify(c);
  EXPECT_EQ(v.verdict, Verdict::NotRecoverable);
  EXPECT_EQ(v.rule, Rule::T1ii);
  ASSERT_TRUE(v.witness);
  EXPECT_EQ(*v.shift, 5u);
  EXPECT_EQ(*v.witness, P({0, 1}) * P({0, 5}));
  EXPECT_TRUE(check_witness(c, 5, *v.witness));
  EXPECT_EQ(to_string(v), "verdict=NotRecoverable;rule=T1-ii;i=5;witness=" + to_hex(*v.witness));
  const auto o = oracle_classify(c);
  EXPECT_EQ(o.verdict, Verdict::NotRecoverable);
  EXPECT_TRUE(check_witness(c, *o.shift, *o.witness));
}

TEST(Classify, WitnessesVerifyAcrossParameters) {
  for (std::size_t p : {3u, 5u, 7u})
    for (std::size_t tau = 1; p * tau <= 30; ++tau)
      for (const auto& g : divisors_gf2(cyclic_sum(tau, p))) {
        if (g == cyclic_sum(tau, p)) continue;
        const auto c = derive_params(p, tau, p * tau - 1, 1, 1, g);
        ConditionVerdict v;
        try {
          v = classify(c);
        } catch (const Error& e) {
          EXPECT_EQ(e.code(), ErrorCode::WitnessCheckFailed);
          continue;
        }
        if (v.verdict == Verdict::NotRecoverable) {
          EXPECT_TRUE(check_witness(c, *v.shift, *v.witness));
        }
        const auto o = oracle_classify(c);
        if (o.verdict == Verdict::NotRecoverable) {
          EXPECT_TRUE(check_witness(c, *o.shift, *o.witness));
        }
      }
}

TEST(Classify, OddMultipleShapeBreaksClause) {
  // gamma = 2 * 5, g = (1+x+x^2)^2 divides the block sum but is not a power
  // of it. The closed form claims failure beyond 3 columns; the code is fine.
  const Poly g = pow(P({0, 1, 2}), 2);
  const auto c = derive_params(3, 10, 3, 1, 1, g);
  EXPECT_EQ(oracle_profile(3, 10, g).first_bad, 15u);
  EXPECT_EQ(oracle_classify(c).verdict, Verdict::Recoverable);
  try {
    classify(c);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::WitnessCheckFailed);
  }
}

TEST(Classify, UnknownRegion) {
  // p = 7: 2 is not primitive, block sum divides g, gamma odd.
  const auto c = derive_params(7, 3, 10, 2, 1, P({0, 1, 2, 3, 4, 5, 6}));
  EXPECT_EQ(classify(c).verdict, Verdict::Unknown);
  EXPECT_EQ(to_string(classify(c)), "verdict=Unknown;rule=none;i=;witness=");
}

TEST(ClassifyGbr, Clauses) {
  EXPECT_EQ(classify_gbr(derive_params(3, 3, 7, 2, 1, Poly::one())).rule, Rule::T3i);
  const auto c = derive_params(5, 2, 4, 2, 1, Poly::one());
  const auto v = classify_gbr(c);
  EXPECT_EQ(v.rule, Rule::T3ii);
  EXPECT_TRUE(check_witness(c, *v.shift, *v.witness));
  EXPECT_EQ(classify_gbr(derive_params(3, 4, 1, 1, 1, P({0, 1, 2}))).verdict, Verdict::Unknown);
}

TEST(Oracle, Examples) {
  EXPECT_EQ(oracle_profile(3, 3, Poly::one()).first_bad, 9u);
  EXPECT_EQ(oracle_profile(5, 2, Poly::one()).first_bad, 5u);
  for (std::size_t n = 2; n <= 9; ++n)
    EXPECT_EQ(oracle_classify(derive_params(3, 3, n - 1, 1, 1, Poly::one())).verdict, Verdict::Recoverable);
}

TEST(Oracle, MatchesGcdCriterion) {
  for (std::size_t p : {3u, 5u, 7u})
    for (std::size_t tau = 1; p * tau <= 42; ++tau)
      for (const auto& g : divisors_gf2(cyclic_sum(tau, p))) {
        if (g == cyclic_sum(tau, p)) continue;
        const auto c = derive_params(p, tau, 1, 1, 1, g);
        ASSERT_EQ(oracle_profile(p, tau, g).first_bad, first_bad_by_gcd(c)) << p << "," << tau << "," << to_string(g);
      }
}

TEST(Oracle, Bound) {
  EXPECT_THROW(oracle_profile(7, 19, Poly::one()), Error);
  setenv("GEBR_ORACLE_MAX_M", "200", 1);
  EXPECT_EQ(oracle_max_m(), 200u);
  EXPECT_NO_THROW(oracle_profile(7, 19, Poly::one()));
  setenv("GEBR_ORACLE_MAX_M", "8", 1);
  EXPECT_THROW(oracle_profile(3, 3, Poly::one()), Error);
  unsetenv("GEBR_ORACLE_MAX_M");
  EXPECT_EQ(oracle_max_m(), 128u);
}

TEST(Factor, CyclotomicCounts) {
  const auto f = factor_gf2(one_plus_x_pow(63));
  EXPECT_EQ(f.size(), 13u);
  Poly prod = Poly::one();
  for (const auto& [q, e] : f) {
    EXPECT_EQ(e, 1u);
    prod = prod * q;
  }
  EXPECT_EQ(prod, one_plus_x_pow(63));
  const auto sq = factor_gf2(pow(P({0, 1, 2}), 4) * P({0, 1}));
  ASSERT_EQ(sq.size(), 2u);
  EXPECT_EQ(sq[0], (std::pair{P({0, 1}), std::size_t{1}}));
  EXPECT_EQ(sq[1], (std::pair{P({0, 1, 2}), std::size_t{4}}));
}

TEST(Factor, FactorsAreIrreducible) {
  std::mt19937 rng(113);
  for (int t = 0; t < 200; ++t) {
    Poly f = gebr::testing::random_poly(rng, 2 + rng() % 20, 1);
    if (f.degree() < 1) continue;
    Poly prod = Poly::one();
    for (const auto& [q, e] : factor_gf2(f)) {
      ASSERT_TRUE(irreducible_by_trial(q)) << to_string(q);
      prod = prod * pow(q, e);
    }
    ASSERT_EQ(prod, f.monic());
  }
}

TEST(Factor, DivisorsMatchTrialDivision) {
  for (std::size_t p : {3u, 5u, 7u})
    for (std::size_t tau = 1; (p - 1) * tau <= 16; ++tau) {
      const Poly phi = cyclic_sum(tau, p);
      EXPECT_EQ(divisors_gf2(phi), divisors_by_trial(phi)) << p << "," << tau;
    }
}
