#include "doctest.h"
#include "oracle.h"

#include <map>

#include "relcx/actions.h"
#include "relcx/beautiful.h"

using namespace relcx;

namespace
{

PermGroup psl32()
{
  return PermGroup(7, {parse_cycles("(1 2 3 4 5 6 7)", 7), parse_cycles("(1 2)(3 6)", 7)});
}

// Induced order and pair-orbit count of G^Λ by closure.
std::pair<std::size_t, std::size_t> brute_induced(PermGroup const &g,
                                                  std::vector<Point> const &lambda)
{
  auto elems = oracle::closure(g.degree(), g.generators());
  std::map<Point, Point> pos;
  for (std::size_t i = 0; i < lambda.size(); ++i)
    pos[lambda[i]] = static_cast<Point>(i);
  std::set<Perm> induced;
  for (auto const &e : elems) {
    if (!oracle::preserves(e, lambda))
      continue;
    std::vector<Point> img;
    for (Point x : lambda)
      img.push_back(pos[e[x]]);
    induced.insert(Perm(img));
  }
  std::vector<Perm> ind(induced.begin(), induced.end());
  return {ind.size(), oracle::pair_orbits(lambda.size(), ind)};
}

bool brute_beautiful(PermGroup const &g, std::vector<Point> const &lambda)
{
  std::size_t k = lambda.size();
  if (k < 5)
    return false;
  auto [order, pairs] = brute_induced(g, lambda);
  return pairs == 1 && static_cast<Order>(order) * 2 < factorial(static_cast<unsigned>(k));
}

std::vector<Point> all_points(std::size_t n)
{
  std::vector<Point> v(n);
  for (std::size_t i = 0; i < n; ++i)
    v[i] = static_cast<Point>(i);
  return v;
}

} // namespace

TEST_CASE("beautiful subsets of natural actions")
{
  auto l = psl32();
  auto r = is_beautiful(l, all_points(7));
  REQUIRE(r.certificate);
  CHECK(r.certificate->group.induced_order == 168);
  CHECK(r.certificate->group.pair_orbit_count == 1);
  CHECK(validate_beautiful(l, *r.certificate));

  auto a5 = is_beautiful(PermGroup::alternating(5), all_points(5));
  CHECK(!a5.certificate);
  CHECK(a5.failed == "induced group contains Alt(Λ)");

  auto small = is_beautiful(PermGroup::symmetric(8), std::vector<Point>{0, 1, 2, 3});
  CHECK(small.failed == "|Λ| < 5");

  // PSL2(5) on the projective line is Alt(5) abstractly, yet beautiful.
  PermGroup l25(6, {parse_cycles("(1 2 3 4 5)", 6), parse_cycles("(1 6)(2 5)", 6)});
  CHECK(l25.order() == 60);
  CHECK(is_beautiful(l25, all_points(6)).certificate);
}

TEST_CASE("certificates agree with brute force")
{
  auto g = k_subset_action(PermGroup::symmetric(7), 3).group;   // degree 35
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<Point> l;
    for (Point x = 0; x < g.degree(); ++x)
      if (rng() % 5 == 0)
        l.push_back(x);
    auto r = is_beautiful(g, l);
    CHECK(static_cast<bool>(r.certificate) == brute_beautiful(g, l));
    auto d = induced_data(g, l);
    auto [ord, pairs] = brute_induced(g, l);
    CHECK(d.induced_order == ord);
    if (l.size() >= 2)
      CHECK(d.pair_orbit_count == pairs);
  }
}

TEST_CASE("S-beautiful with alternating socle")
{
  auto sym = k_subset_action(PermGroup::symmetric(8), 3);
  auto alt = k_subset_action(PermGroup::alternating(8), 3);
  // Lines of a Fano plane on {1..7}.
  std::vector<std::vector<std::uint32_t>> lines{{0, 1, 2}, {0, 3, 4}, {0, 5, 6}, {1, 3, 5},
                                                {1, 4, 6}, {2, 3, 6}, {2, 4, 5}};
  std::vector<Point> l;
  for (auto const &b : lines)
    l.push_back(static_cast<Point>(*sym.index_of(Label{b})));
  auto r = is_S_beautiful(sym.group, alt.group, l);
  REQUIRE(r.certificate);
  REQUIRE(r.certificate->socle);
  auto [ord, pairs] = brute_induced(alt.group, std::vector<Point>(l.begin(), l.end()));
  std::sort(l.begin(), l.end());
  CHECK(r.certificate->socle->induced_order == ord);
  CHECK(pairs == 1);
  CHECK(validate_beautiful(sym.group, *r.certificate, &alt.group));

  auto same = is_S_beautiful(sym.group, sym.group, l);
  CHECK(static_cast<bool>(same.certificate) == static_cast<bool>(is_beautiful(sym.group, l).certificate));

  PermGroup stray(sym.degree(), {Perm::from_cycles(sym.degree(), {{0, 1}})});
  CHECK_THROWS_AS(is_S_beautiful(sym.group, stray, l), std::invalid_argument);
}

TEST_CASE("exhaustive scans with no beautiful subset")
{
  auto pairs5 = k_subset_action(PermGroup::symmetric(5), 2).group;
  auto s = exhaustive_beautiful_search(pairs5, 5, 10);
  CHECK(s.complete);
  CHECK(s.found.empty());

  for (auto const &base : {PermGroup::symmetric(6), PermGroup::alternating(6)}) {
    auto g = k_subset_action(base, 2).group;
    auto r = exhaustive_beautiful_search(g, 5, 15, 2);
    CHECK(r.complete);
    CHECK(r.found.empty());
    std::uint64_t scanned = 0;
    for (auto const &c : r.chunks)
      scanned += c.scanned;
    CHECK(scanned == (1u << 15));
  }
  CHECK_THROWS_AS(exhaustive_beautiful_search(k_subset_action(PermGroup::symmetric(7), 2).group, 5, 21),
                  std::length_error);
}

TEST_CASE("exhaustive scan agrees with brute force")
{
  auto l = psl32();
  auto r = exhaustive_beautiful_search(l, 5, 7);
  REQUIRE(r.complete);
  std::set<std::uint32_t> got;
  for (auto [mask, ord] : r.found)
    got.insert(mask);
  for (std::uint32_t mask = 0; mask < 128; ++mask)
    CHECK(got.count(mask) == (brute_beautiful(l, mask_points(mask)) ? 1u : 0u));
}

TEST_CASE("orbit search agrees with the exhaustive scan up to degree 12")
{
  std::vector<PermGroup> pool{
      PermGroup::alternating(5),
      PermGroup::symmetric(6),
      psl32(),
      PermGroup(5, {parse_cycles("(1 2 3 4 5)", 5), parse_cycles("(2 3 5 4)", 5)}),
      PermGroup(6, {parse_cycles("(1 2 3 4 5)", 6), parse_cycles("(1 6)(2 5)", 6)}),
      PermGroup(7, {parse_cycles("(1 2 3 4 5 6 7)", 7), parse_cycles("(2 3 5)(4 7 6)", 7)}),
      PermGroup(11, {parse_cycles("(1 2 3 4 5 6 7 8 9 10 11)", 11),
                     parse_cycles("(3 7 11 8)(4 10 5 6)", 11)}),
      k_subset_action(PermGroup::symmetric(5), 2).group,
      k_subset_action(PermGroup::symmetric(4), 2).group,
      uniform_partition_action(PermGroup::symmetric(6), 3).group,
  };
  for (auto const &g : pool) {
    auto ex = exhaustive_beautiful_search(g, 5, g.degree());
    REQUIRE(ex.complete);
    auto orb = orbit_beautiful_search(g, PoolSpec{}, 11, Budget{});
    CHECK(static_cast<bool>(orb) == !ex.found.empty());
    if (orb)
      CHECK(validate_beautiful(g, *orb));
  }
}

TEST_CASE("orbit search on perfect matchings of 8 points")
{
  auto a = uniform_partition_action(PermGroup::symmetric(8), 2);
  REQUIRE(a.degree() == 105);
  PoolSpec pool;
  pool.max_size = 7;
  auto c = orbit_beautiful_search(a.group, pool, 1, Budget{});
  REQUIRE(c);
  CHECK(c->lambda.size() == 7);
  CHECK(validate_beautiful(a.group, *c));
  CHECK(!orbit_beautiful_search(PermGroup::symmetric(5), PoolSpec{}, 3, Budget{}));
}

TEST_CASE("order below half factorial means Alt is not contained")
{
  // Every two-generated subgroup of Sym(5) and the ones from class
  // representatives of Sym(6).
  for (std::size_t n : {5u, 6u}) {
    auto sym = oracle::closure(n, PermGroup::symmetric(n).generators());
    std::map<std::vector<std::size_t>, Perm> reps;
    for (auto const &x : sym) {
      std::vector<std::size_t> type;
      std::vector<char> seen(n, 0);
      for (Point p = 0; p < n; ++p) {
        std::size_t len = 0;
        for (Point q = p; !seen[q]; q = x[q], ++len)
          seen[q] = 1;
        if (len)
          type.push_back(len);
      }
      std::sort(type.begin(), type.end());
      reps.emplace(type, x);
    }
    std::vector<Perm> firsts;
    if (n == 5)
      firsts = sym;
    else
      for (auto const &[t, x] : reps)
        firsts.push_back(x);
    auto alt = PermGroup::alternating(n);
    Order half = factorial(static_cast<unsigned>(n)) / 2;
    for (auto const &a : firsts)
      for (auto const &b : sym) {
        PermGroup h(n, {a, b});
        bool big = !(h.order() < half);
        CHECK(big == h.contains(alt));
      }
  }
}

TEST_CASE("Frobenius construction preconditions")
{
  // Sym(7) with M the stabilizer of a point; g in M is rejected.
  auto g = PermGroup::symmetric(7);
  Point w = 6;
  auto m = pointwise_stabilizer(g, std::span<Point const>(&w, 1));
  FrobeniusCandidate c{parse_cycles("(2 3 5 4)", 7), parse_cycles("(1 2 3 4 5)", 7), 5, 5};
  auto v = frobenius_beautiful(g, m, c);
  CHECK(v.outcome == FrobeniusOutcome::precondition_failure);
  CHECK(v.message == "g lies in M");

  FrobeniusCandidate bad{parse_cycles("(1 2 3 4 5)", 7), parse_cycles("(1 2 3 4 5)", 7), 5, 5};
  CHECK(frobenius_beautiful(g, m, bad).message == "h does not have order t-1");
}

TEST_CASE("stabilizer containments")
{
  std::vector<PermGroup> pool{PermGroup::symmetric(6), psl32(),
                              k_subset_action(PermGroup::symmetric(6), 2).group};
  std::mt19937_64 rng(5);
  for (auto const &g : pool) {
    auto triv = check_lemma_stabs(g, PermGroup::trivial(g.degree()), 0);
    CHECK(triv.lambda == std::vector<Point>{0});
    CHECK(triv.centralizer_fixes);
    CHECK(triv.setwise_normalizes);
    for (int i = 0; i < 4; ++i) {
      PermGroup h(g.degree(), {g.chain().random_element(rng)});
      Point w = static_cast<Point>(rng() % g.degree());
      auto s = check_lemma_stabs(g, h, w);
      CHECK(s.centralizer_fixes);
      CHECK(s.setwise_normalizes);
    }
  }
}
