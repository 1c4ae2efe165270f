#include "doctest.h"
#include "oracle.h"

#include <map>

#include "relcx/actions.h"
#include "relcx/binary.h"

using namespace relcx;

namespace
{

// Shortest witness length up to max_len found by looking at every pair of
// tuples, repeats allowed; 0 if none.
std::size_t brute_shortest_witness(PermGroup const &g, std::size_t max_len)
{
  std::size_t n = g.degree();
  auto elems = oracle::closure(n, g.generators());
  std::vector<std::uint32_t> pair_orbit(n * n, ~0u);
  std::uint32_t next = 0;
  for (Point a = 0; a < n; ++a)
    for (Point b = 0; b < n; ++b) {
      if (pair_orbit[a * n + b] != ~0u)
        continue;
      for (auto const &e : elems)
        pair_orbit[e[a] * n + e[b]] = next;
      ++next;
    }
  for (std::size_t len = 2; len <= max_len; ++len) {
    std::size_t count = 1;
    for (std::size_t i = 0; i < len; ++i)
      count *= n;
    auto decode = [&](std::size_t code) {
      std::vector<Point> t(len);
      for (std::size_t i = 0; i < len; ++i, code /= n)
        t[i] = static_cast<Point>(code % n);
      return t;
    };
    auto encode = [&](std::vector<Point> const &t) {
      std::size_t c = 0;
      for (std::size_t i = len; i-- > 0;)
        c = c * n + t[i];
      return c;
    };
    std::vector<std::size_t> canon(count);
    for (std::size_t c = 0; c < count; ++c) {
      auto t = decode(c);
      std::size_t best = c;
      for (auto const &e : elems) {
        std::vector<Point> u(len);
        for (std::size_t i = 0; i < len; ++i)
          u[i] = e[t[i]];
        best = std::min(best, encode(u));
      }
      canon[c] = best;
    }
    for (std::size_t ci = 0; ci < count; ++ci) {
      auto ti = decode(ci);
      for (std::size_t cj = 0; cj < count; ++cj) {
        if (canon[ci] == canon[cj])
          continue;
        auto tj = decode(cj);
        bool ok = true;
        for (std::size_t s = 0; s < len && ok; ++s)
          for (std::size_t t = s + 1; t < len && ok; ++t)
            ok = pair_orbit[ti[s] * n + ti[t]] == pair_orbit[tj[s] * n + tj[t]];
        if (ok)
          return len;
      }
    }
  }
  return 0;
}

std::vector<PermGroup> binary_pool()
{
  return {PermGroup::symmetric(4),
          PermGroup::alternating(4),
          PermGroup::alternating(5),
          PermGroup(5, {parse_cycles("(1 2 3 4 5)", 5), parse_cycles("(2 3 5 4)", 5)}),
          PermGroup(5, {parse_cycles("(1 2 3 4 5)", 5), parse_cycles("(2 5)(3 4)", 5)}),
          PermGroup(6, {parse_cycles("(1 2 3 4 5)", 6), parse_cycles("(1 6)(2 5)", 6)}),
          PermGroup(6, {parse_cycles("(1 2)(3 4)", 6), parse_cycles("(1 3 5)(2 4 6)", 6)}),
          k_subset_action(PermGroup::symmetric(4), 2).group,
          PermGroup(7, {parse_cycles("(1 2 3 4 5 6 7)", 7), parse_cycles("(2 3 5)(4 7 6)", 7)}),
          PermGroup(8, {parse_cycles("(1 2 3 4)(5 6 7 8)", 8), parse_cycles("(1 5)(2 6)", 8)}),
          PermGroup::trivial(3)};
}

std::vector<Point> cycle_points(std::size_t n)
{
  std::vector<Point> c(n);
  std::iota(c.begin(), c.end(), Point{0});
  return c;
}

} // namespace

TEST_CASE("subtuple completeness on Alt(6) 2-subsets")
{
  auto a = k_subset_action(PermGroup::alternating(6), 2);
  std::vector<Point> i, j;
  for (std::uint32_t k = 1; k <= 5; ++k)
    i.push_back(static_cast<Point>(*a.index_of(Label{{0, k}})));
  j = i;
  std::swap(j[0], j[1]);
  auto r2 = r_subtuple_complete(a.group, i, j, 2);
  CHECK(r2.complete);
  CHECK(r2.transporters.size() == 10);
  auto r5 = r_subtuple_complete(a.group, i, j, 5);
  CHECK(!r5.complete);
  REQUIRE(r5.failing);
  CHECK(r5.failing->size() == 5);
  for (std::size_t r = 1; r <= 5; ++r)
    CHECK(r_subtuple_complete(a.group, i, i, r).complete);
}

TEST_CASE("exhaustive binary check on natural actions")
{
  auto s5 = exhaustive_binary_check(PermGroup::symmetric(5), 6);
  CHECK(s5.verdict == BinaryVerdict::binary_up_to);
  auto a5 = exhaustive_binary_check(PermGroup::alternating(5), 4);
  REQUIRE(a5.verdict == BinaryVerdict::witness);
  CHECK(a5.witness->i.size() == 4);
  CHECK(validate_witness(PermGroup::alternating(5), *a5.witness));
  CHECK(exhaustive_binary_check(PermGroup::alternating(5), 3).verdict ==
        BinaryVerdict::binary_up_to);
  CHECK(exhaustive_binary_check(PermGroup::trivial(4), 4).verdict ==
        BinaryVerdict::binary_up_to);
}

TEST_CASE("exhaustive binary check agrees with all tuple pairs")
{
  for (auto const &g : binary_pool()) {
    std::size_t len = g.degree() <= 6 ? 4 : 3;
    std::size_t brute = brute_shortest_witness(g, len);
    auto fast = exhaustive_binary_check(g, len);
    auto flat = exhaustive_binary_check(g, len, Budget::unlimited(), false);
    CHECK(fast.verdict == flat.verdict);
    if (brute == 0) {
      CHECK(fast.verdict == BinaryVerdict::binary_up_to);
      continue;
    }
    REQUIRE(fast.witness);
    CHECK(fast.witness->i.size() == brute);
    CHECK(flat.witness->i.size() == brute);
    CHECK(validate_witness(g, *fast.witness));
    auto check = r_subtuple_complete(g, fast.witness->i, fast.witness->j, 2);
    CHECK(check.complete);
  }
}

TEST_CASE("2-transitive but not symmetric never passes as binary")
{
  std::vector<PermGroup> pool{
      PermGroup::alternating(5), PermGroup::alternating(6),
      PermGroup(5, {parse_cycles("(1 2 3 4 5)", 5), parse_cycles("(2 3 5 4)", 5)}),
      PermGroup(6, {parse_cycles("(1 2 3 4 5)", 6), parse_cycles("(1 6)(2 5)", 6)}),
      PermGroup(7, {parse_cycles("(1 2 3 4 5 6 7)", 7), parse_cycles("(1 2)(3 6)", 7)})};
  for (auto const &g : pool) {
    REQUIRE(is_2_transitive(g));
    auto r = exhaustive_binary_check(g, g.degree());
    CHECK(r.verdict == BinaryVerdict::witness);
  }
}

TEST_CASE("lemma-auxiliary certificates")
{
  PermGroup f20(5, {parse_cycles("(1 2 3 4 5)", 5), parse_cycles("(2 3 5 4)", 5)});
  auto c = witness_search(f20, WitnessStrategy::lemma_aux, 1, Budget::unlimited());
  REQUIRE(c);
  CHECK(validate_witness(f20, *c));
  CHECK(r_subtuple_complete(f20, c->i, c->j, 2).complete);
  CHECK(!r_subtuple_complete(f20, c->i, c->j, 3).complete);

  CHECK_THROWS_WITH_AS(lemma_aux_witness(f20, 0, 1, 2, Perm(5)), "g stabilizes w2",
                       PreconditionError);
  CHECK_THROWS_WITH_AS(lemma_aux_witness(f20, 0, 1, 2, parse_cycles("(1 2 3 4 5)", 5)),
                       "g does not fix w0", PreconditionError);
}

TEST_CASE("lemma-auxiliary scan on the degree-15 action of Alt(6)")
{
  // Every two-point stabilizer is nontrivial, so the lemma cannot apply.
  auto a = k_subset_action(PermGroup::alternating(6), 2);
  auto elems = enumerate(a.group);
  bool regular_pair = false;
  for (Point w = 1; w < 15; ++w) {
    std::size_t fixing = 0;
    for (auto const &e : elems)
      if (e[0] == 0 && e[w] == w)
        ++fixing;
    regular_pair |= fixing == 1;
  }
  CHECK(!regular_pair);
  CHECK(!witness_search(a.group, WitnessStrategy::lemma_aux, 1, Budget::unlimited()));
  auto w = witness_search(a.group, WitnessStrategy::orbit_scan, 1, Budget::unlimited());
  REQUIRE(w);
  CHECK(w->i.size() == 3);
  CHECK(validate_witness(a.group, *w));
}

TEST_CASE("stabilizer model in Alt(13)")
{
  Perm x = Perm::from_cycles(13, {cycle_points(13)});
  Perm y = conjugate(x, parse_cycles("(1 2 3)", 13));
  CHECK(y == parse_cycles("(2 3 1 4 5 6 7 8 9 10 11 12 13)", 13));
  Perm g = x * y;
  CHECK(g == parse_cycles("(2 1 3 5 7 9 11 13 4 6 8 10 12)", 13));
  auto a13 = PermGroup::alternating(13);
  auto h0 = normalizer_of_cyclic(a13, g), h1 = normalizer_of_cyclic(a13, y),
       h2 = normalizer_of_cyclic(a13, x);
  auto c = lemma_aux_witness_stabilizer_model(a13, h0, h1, h2, g);
  CHECK(c.h0_h1_trivial);
  CHECK(c.h0_h2_trivial);
  CHECK(c.g_in_h2h1);
  CHECK(validate_model(a13, c));
  CHECK_THROWS_WITH_AS(lemma_aux_witness_stabilizer_model(a13, h0, h1, h2, Perm(13)),
                       "g ∈ H2", PreconditionError);
}

TEST_CASE("stabilizer model in Alt(7)")
{
  Perm x = Perm::from_cycles(7, {cycle_points(7)});
  Perm y = conjugate(x, parse_cycles("(1 2 3)", 7));
  Perm g = x * y;
  auto a7 = PermGroup::alternating(7);
  auto h0 = normalizer_of_cyclic(a7, g), h1 = normalizer_of_cyclic(a7, y),
       h2 = normalizer_of_cyclic(a7, x);
  CHECK(h0.order() == 21);
  // Brute force over the 21 elements of H0.
  std::size_t common = 0;
  for (auto const &e : enumerate(h0))
    common += h1.contains(e);
  CHECK(common == 1);
  bool factors = false;
  auto e1 = enumerate(h1);
  for (auto const &a : enumerate(h2))
    for (auto const &b : e1)
      factors |= a * b == g;
  CHECK(factors);
  CHECK(!h2.contains(g));
  // The algebraic conditions all hold here; only maximality of the point
  // stabilizer is lost at this degree.
  auto c = lemma_aux_witness_stabilizer_model(a7, h0, h1, h2, g);
  CHECK(validate_model(a7, c));
}

TEST_CASE("size-6 forbidden configuration")
{
  PermGroup v(6, {parse_cycles("(1 2)(3 4)", 6), parse_cycles("(1 2)(5 6)", 6)});
  auto w = forbidden_config_size6(v);
  REQUIRE(w);
  CHECK(w->j == std::vector<Point>{1, 0, 2, 3, 4, 5});
  CHECK(validate_witness(v, *w));
  CHECK(!forbidden_config_size6(PermGroup::symmetric(6)));
  auto a6 = forbidden_config_size6(PermGroup::alternating(6));
  REQUIRE(a6);
  CHECK(validate_witness(PermGroup::alternating(6), *a6));
  CHECK_THROWS(forbidden_config_size6(PermGroup::symmetric(5)));
}

TEST_CASE("witness search finds nothing in Sym(5)")
{
  Budget b;
  b.max_ms = 5000;
  CHECK(!witness_search(PermGroup::symmetric(5), WitnessStrategy::orbit_scan, 1, b, 5));
}
