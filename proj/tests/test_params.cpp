#include <gtest/gtest.h>

#include <random>

#include "gebr/params.hpp"
#include "support.hpp"

using namespace gebr;
using gebr::testing::P;

namespace {

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::BadArgument;
}

/// Divisors of the block sum with g(0)=1, by trial division over all candidates.
std::vector<Poly> small_divisors(std::size_t p, std::size_t tau) {
  const Poly phi = cyclic_sum(tau, p);
  std::vector<Poly> out;
  const std::size_t deg = static_cast<std::size_t>(phi.degree());
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << (deg + 1)); mask += 2) {
    Poly g = gebr::testing::from_mask(mask);
    if (divides(g, phi)) out.push_back(g);
  }
  return out;
}

}  // namespace

TEST(Params, Reference) {
  const auto c = derive_params(3, 3, 7, 2, 1, Poly::one());
  EXPECT_EQ(c.h(), P({0, 3, 6}));
  EXPECT_EQ(c.alpha(), 6u);
  EXPECT_EQ(c.nu(), 1u);
  EXPECT_EQ(c.gamma(), 1u);
  EXPECT_EQ(c.m(), 9u);
  EXPECT_EQ(c.recoverable_length(), 9u);
  EXPECT_TRUE(c.gcd_g_h_one());
  EXPECT_TRUE(c.gcd_low_h_one());
}

TEST(Params, P5Tau10Boundary) {
  const auto c = derive_params(5, 10, 20, 5, 1, cyclic_sum(5, 5));
  EXPECT_EQ(c.m(), 50u);
  EXPECT_EQ(c.nu(), 1u);
  EXPECT_EQ(c.gamma(), 2u);
  EXPECT_EQ(c.alpha(), 20u);
  EXPECT_EQ(c.p_nu(), 5u);
}

TEST(Params, Rejections) {
  EXPECT_EQ(code_of([] { derive_params(3, 3, 4, 2, 1, cyclic_sum(3, 3)); }), ErrorCode::Degenerate);
  EXPECT_EQ(code_of([] { derive_params(4, 3, 4, 2, 1, Poly::one()); }), ErrorCode::NotPrime);
  EXPECT_EQ(code_of([] { derive_params(2, 3, 4, 2, 1, Poly::one()); }), ErrorCode::NotPrime);
  EXPECT_EQ(code_of([] { derive_params(9, 1, 4, 2, 1, Poly::one()); }), ErrorCode::NotPrime);
  EXPECT_EQ(code_of([] { derive_params(3, 3, 8, 2, 1, Poly::one()); }), ErrorCode::BadShape);
  EXPECT_EQ(code_of([] { derive_params(3, 3, 0, 2, 1, Poly::one()); }), ErrorCode::BadShape);
  EXPECT_EQ(code_of([] { derive_params(3, 3, 4, 2, 1, P({0, 1})); }), ErrorCode::GNotDivisor);
  EXPECT_EQ(code_of([] { derive_params(3, 3, 4, 2, 2, Poly::one()); }), ErrorCode::FieldMismatch);
}

TEST(Params, FactorisationIdentities) {
  for (std::size_t p : {3u, 5u, 7u})
    for (std::size_t tau : {1u, 2u, 3u, 4u, 5u, 6u}) {
      if ((p - 1) * tau > 14) continue;
      const Poly phi = cyclic_sum(tau, p);
      EXPECT_TRUE(gcd(one_plus_x_pow(tau), phi).is_one()) << p << "," << tau;
      for (const auto& g : small_divisors(p, tau)) {
        if (g == phi) continue;
        const auto c = derive_params(p, tau, 1, 1, 1, g);
        EXPECT_EQ(c.g() * c.h(), phi);
        EXPECT_EQ(one_plus_x_pow(tau) * c.g() * c.h(), one_plus_x_pow(p * tau));
      }
    }
}

TEST(Params, MembershipExamples) {
  const auto c = derive_params(3, 3, 7, 2, 1, Poly::one());
  EXPECT_TRUE(check_membership({1, 0, 0, 0, 0, 0, 1, 0, 0}, c));
  EXPECT_TRUE(check_membership(Column(9, 0), c));
  EXPECT_FALSE(check_membership({1, 0, 0, 0, 0, 0, 0, 0, 0}, c));
  EXPECT_THROW(check_membership(Column(8, 0), c), Error);
}

TEST(Params, LocalEncodeExamples) {
  const auto c = derive_params(3, 3, 7, 2, 1, Poly::one());
  EXPECT_EQ(local_encode_column({1, 0, 0, 0, 0, 0}, c), (Column{1, 0, 0, 0, 0, 0, 1, 0, 0}));
  EXPECT_EQ(local_encode_column(Column(6, 0), c), Column(9, 0));
}

TEST(Params, LocalEncodeAlwaysMember) {
  std::mt19937 rng(31);
  for (auto [p, tau, w, g] : {std::tuple{3u, 3u, 1u, Poly::one()}, std::tuple{5u, 2u, 1u, Poly::one()},
                              std::tuple{3u, 5u, 1u, P({0, 1, 2})}, std::tuple{3u, 2u, 4u, Poly::one(4)},
                              std::tuple{7u, 1u, 1u, P({0, 1, 3})}}) {
    const auto c = derive_params(p, tau, 1, 1, w, g);
    for (int t = 0; t < 1000; ++t) {
      const Column info = gebr::testing::random_symbols(rng, c.alpha(), w);
      const Column col = local_encode_column(info, c);
      ASSERT_TRUE(check_membership(col, c));
      ASSERT_TRUE(std::equal(info.begin(), info.end(), col.begin()));
    }
  }
}

TEST(Params, LocalParityEquivalence) {
  std::mt19937 rng(37);
  for (unsigned w : {1u, 2u}) {
    const auto c = derive_params(3, 2, 1, 1, w, Poly::one(w));
    int members = 0;
    for (int t = 0; t < 4000; ++t) {
      Column col = gebr::testing::random_symbols(rng, c.m(), w);
      if (t % 2) col = local_encode_column(Column(col.begin(), col.begin() + static_cast<long>(c.alpha())), c);
      const bool mem = check_membership(col, c);
      members += mem;
      ASSERT_EQ(mem, satisfies_local_parity(col, c));
    }
    EXPECT_GT(members, 1000);
  }
}

TEST(Params, LocalRepairExamples) {
  const auto c = derive_params(3, 3, 7, 2, 1, Poly::one());
  EXPECT_EQ(local_repair({1, 0, 0, 0, 0, 0, 0, 0, 0}, {6}, c), (Column{1, 0, 0, 0, 0, 0, 1, 0, 0}));
  const Column ok = {1, 0, 0, 0, 0, 0, 1, 0, 0};
  EXPECT_EQ(local_repair(ok, {}, c), ok);
  EXPECT_EQ(code_of([&] { local_repair(ok, {0, 3}, c); }), ErrorCode::UnsolvablePattern);
}

TEST(Params, LocalRepairMatchesExhaustiveSearch) {
  std::mt19937 rng(41);
  const auto c = derive_params(3, 5, 1, 1, 1, P({0, 1, 2}));
  const std::size_t red = c.m() - c.alpha();
  for (int t = 0; t < 300; ++t) {
    const Column col = local_encode_column(gebr::testing::random_symbols(rng, c.alpha(), 1), c);
    std::vector<std::size_t> er;
    const std::size_t ne = 1 + rng() % red;
    while (er.size() < ne) {
      const std::size_t e = rng() % c.m();
      if (std::find(er.begin(), er.end(), e) == er.end()) er.push_back(e);
    }
    std::size_t completions = 0;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << er.size()); ++mask) {
      Column x = col;
      for (std::size_t i = 0; i < er.size(); ++i) x[er[i]] = mask >> i & 1;
      completions += check_membership(x, c);
    }
    Column damaged = col;
    for (auto e : er) damaged[e] ^= 1;
    if (completions == 1) {
      EXPECT_EQ(local_repair(damaged, er, c), col);
    } else {
      EXPECT_EQ(code_of([&] { local_repair(damaged, er, c); }), ErrorCode::UnsolvablePattern);
    }
  }
}

TEST(Params, HeaderRoundTrip) {
  const auto c = derive_params(5, 10, 20, 6, 1, cyclic_sum(5, 5));
  const std::string hdr = to_header(c);
  EXPECT_EQ(hdr, "p=5;tau=10;k=20;r=6;w=1;g=" + to_hex(cyclic_sum(5, 5)));
  EXPECT_EQ(parse_header(hdr), c);
  EXPECT_EQ(to_header(derive_params(3, 3, 7, 2, 1, Poly::one())), "p=3;tau=3;k=7;r=2;w=1;g=01");
  EXPECT_THROW(parse_header("p=3;tau=3"), Error);
}
