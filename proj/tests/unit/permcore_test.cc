#include "doctest.h"
#include "oracle.h"

#include <random>

#include "relcx/backtrack.h"
#include "relcx/group.h"

using namespace relcx;

namespace
{

// PSL3(2) on the seven lines of the Fano plane, from all invertible 3x3
// matrices over GF(2) acting on row vectors.
std::vector<Perm> fano_line_matrices()
{
  auto apply = [](unsigned m, unsigned v) {
    unsigned out = 0;
    for (unsigned r = 0; r < 3; ++r)
      if (v >> r & 1u)
        out ^= (m >> (3 * r)) & 7u;
    return out;
  };
  // A line is the kernel of a nonzero functional; label by that functional.
  auto on_line = [](unsigned f, unsigned v) { return __builtin_popcount(f & v) % 2 == 0; };
  std::vector<Perm> out;
  for (unsigned m = 0; m < 512; ++m) {
    std::set<unsigned> img;
    for (unsigned v = 1; v < 8; ++v)
      img.insert(apply(m, v));
    if (img.size() != 7 || img.count(0))
      continue;
    std::vector<Point> images(7);
    for (unsigned f = 1; f < 8; ++f) {
      std::set<unsigned> line;
      for (unsigned v = 1; v < 8; ++v)
        if (on_line(f, v))
          line.insert(apply(m, v));
      for (unsigned f2 = 1; f2 < 8; ++f2) {
        bool all = std::all_of(line.begin(), line.end(),
                               [&](unsigned v) { return on_line(f2, v); });
        if (all)
          images[f - 1] = f2 - 1;
      }
    }
    out.emplace_back(images);
  }
  return out;
}

std::vector<PermGroup> small_pool()
{
  std::vector<PermGroup> pool;
  pool.push_back(PermGroup::symmetric(5));
  pool.push_back(PermGroup::alternating(6));
  pool.push_back(PermGroup::symmetric(7));
  pool.push_back(PermGroup(8, {parse_cycles("(1 2 3 4)(5 6 7 8)", 8),
                               parse_cycles("(1 5)(2 6)", 8)}));
  pool.push_back(PermGroup(9, {parse_cycles("(1 2 3)(4 5 6)(7 8 9)", 9),
                               parse_cycles("(1 4 7)(2 5 8)", 9),
                               parse_cycles("(2 3)(5 6)", 9)}));
  auto fano = fano_line_matrices();
  pool.push_back(PermGroup(7, {fano[5], fano[77], fano[120]}));
  pool.push_back(PermGroup(10, {parse_cycles("(1 2 3 4 5)(6 7 8 9 10)", 10),
                                parse_cycles("(1 6)(2 7)", 10)}));
  pool.push_back(PermGroup::trivial(4));
  return pool;
}

} // namespace

TEST_CASE("composition acts on the right")
{
  Perm c = parse_cycles("(1 2 3)", 3);
  CHECK(c * c == parse_cycles("(1 3 2)", 3));
  CHECK(c * Perm(3) == c);
  CHECK((c * c.inverse()).is_identity());

  std::vector<Point> cyc(13);
  std::iota(cyc.begin(), cyc.end(), Point{0});
  Perm x = Perm::from_cycles(13, {cyc});
  Perm y = conjugate(x, parse_cycles("(1 2 3)", 13));
  Perm xy = x * y;
  REQUIRE(xy.cycles().size() == 1);
  CHECK(xy.cycles()[0].size() == 13);
}

TEST_CASE("cycle notation round trip")
{
  Perm p = parse_cycles("(1 2 3)(4 5)", 6);
  CHECK(to_cycle_string(p) == "(1 2 3)(4 5)");
  CHECK(to_cycle_string(Perm(4)) == "()");
  CHECK_THROWS(parse_cycles("(1 7)", 6));
  CHECK_THROWS(parse_cycles("(1 2 1)", 6));
}

TEST_CASE("chain orders")
{
  CHECK(PermGroup::symmetric(5).order() == 120);
  PermGroup c5(5, {parse_cycles("(1 2 3 4 5)", 5)});
  CHECK(c5.order() == 5);
  CHECK(c5.chain().length() == 1);

  auto all = fano_line_matrices();
  CHECK(all.size() == 168);
  PermGroup fano(7, all);
  CHECK(fano.order() == 168);
  CHECK(is_2_transitive(fano));
  CHECK(PermGroup::symmetric(12).order() == factorial(12));
  CHECK(PermGroup::alternating(10).order() == factorial(10) / 2);
}

TEST_CASE("chain order and membership agree with closure")
{
  std::mt19937_64 rng(7);
  for (auto const &g : small_pool()) {
    auto elems = oracle::closure(g.degree(), g.generators());
    CHECK(g.order() == elems.size());
    auto listed = enumerate(g);
    CHECK(listed == elems);
    std::set<Perm> in(elems.begin(), elems.end());
    for (int t = 0; t < 50; ++t) {
      std::vector<Point> img(g.degree());
      std::iota(img.begin(), img.end(), Point{0});
      std::shuffle(img.begin(), img.end(), rng);
      Perm p(img);
      CHECK(g.contains(p) == (in.count(p) > 0));
    }
    for (auto const &s : g.chain().strong_generators())
      CHECK(in.count(s));
  }
}

TEST_CASE("orbits")
{
  PermGroup c5(5, {parse_cycles("(1 2 3 4 5)", 5)});
  CHECK(orbit(c5, 0) == std::vector<Point>{0, 1, 2, 3, 4});
  CHECK(orbit(PermGroup::trivial(5), 3) == std::vector<Point>{3});
  CHECK_THROWS(orbit(c5, 5));
}

TEST_CASE("transporter")
{
  PermGroup c3(3, {parse_cycles("(1 2 3)", 3)});
  std::vector<Point> i01{0, 1}, j10{1, 0}, j12{1, 2};
  CHECK(!transporter(c3, i01, j10).element);
  auto t = transporter(PermGroup::symmetric(3), i01, j12).element;
  REQUIRE(t);
  CHECK((*t)[0] == 1);
  CHECK((*t)[1] == 2);
  CHECK(transporter(c3, i01, i01).element->is_identity());
  std::vector<Point> rep{0, 0}, bad{1, 2};
  CHECK(!transporter(PermGroup::symmetric(3), rep, bad).element);
  CHECK_THROWS(transporter(c3, i01, std::vector<Point>{1}));
}

TEST_CASE("transporter agrees with brute force")
{
  std::mt19937_64 rng(11);
  for (auto const &g : small_pool()) {
    auto elems = oracle::closure(g.degree(), g.generators());
    std::uniform_int_distribution<Point> pt(0, static_cast<Point>(g.degree() - 1));
    for (int t = 0; t < 40; ++t) {
      std::vector<Point> a(3), b(3);
      for (auto &x : a)
        x = pt(rng);
      for (auto &x : b)
        x = pt(rng);
      if (t % 2)
        for (std::size_t k = 0; k < 3; ++k)
          b[k] = elems[t % elems.size()][a[k]];
      bool brute = std::any_of(elems.begin(), elems.end(), [&](Perm const &p) {
        for (std::size_t k = 0; k < 3; ++k)
          if (p[a[k]] != b[k])
            return false;
        return true;
      });
      auto r = transporter(g, a, b).element;
      CHECK(r.has_value() == brute);
      if (r)
        for (std::size_t k = 0; k < 3; ++k)
          CHECK((*r)[a[k]] == b[k]);
    }
  }
}

TEST_CASE("set stabilizers")
{
  auto s4 = PermGroup::symmetric(4);
  std::vector<Point> l{0, 1};
  CHECK(setwise_stabilizer(s4, l).order() == 4);
  auto pw = pointwise_stabilizer(s4, l);
  CHECK(pw.order() == 2);
  CHECK(pw.contains(parse_cycles("(3 4)", 4)));
  std::vector<Point> all{0, 1, 2, 3}, none;
  CHECK(setwise_stabilizer(s4, all).order() == 24);
  CHECK(pointwise_stabilizer(s4, none).order() == 24);
  CHECK(pointwise_stabilizer(s4, all).order() == 1);
}

TEST_CASE("set stabilizers agree with brute force")
{
  std::mt19937_64 rng(3);
  for (auto const &g : small_pool()) {
    auto elems = oracle::closure(g.degree(), g.generators());
    for (int t = 0; t < 12; ++t) {
      std::vector<Point> set;
      for (Point x = 0; x < g.degree(); ++x)
        if (rng() % 3 == 0)
          set.push_back(x);
      auto sw = setwise_stabilizer(g, set);
      auto pw = pointwise_stabilizer(g, set);
      std::size_t n_sw = 0, n_pw = 0;
      for (auto const &p : elems) {
        if (oracle::preserves(p, set))
          ++n_sw;
        if (std::all_of(set.begin(), set.end(), [&](Point x) { return p[x] == x; }))
          ++n_pw;
      }
      CHECK(sw.order() == n_sw);
      CHECK(pw.order() == n_pw);
      for (auto const &s : sw.generators())
        CHECK(oracle::preserves(s, set));
      CHECK(sw.contains(pw));
      for (auto const &s : sw.generators())
        for (auto const &k : pw.generators())
          CHECK(pw.contains(conjugate(k, s)));
    }
  }
}

TEST_CASE("2-transitivity agrees with pair-orbit count")
{
  CHECK(is_2_transitive(PermGroup::symmetric(3)));
  CHECK(!is_2_transitive(PermGroup(4, {parse_cycles("(1 2 3 4)", 4)})));
  for (auto const &g : small_pool()) {
    if (g.degree() < 2)
      continue;
    auto elems = oracle::closure(g.degree(), g.generators());
    bool brute = oracle::pair_orbits(g.degree(), elems) == 1;
    CHECK(is_2_transitive(g) == brute);
    CHECK(pair_orbit_count(g.generators(), g.degree()) ==
          oracle::pair_orbits(g.degree(), elems));
  }
}

TEST_CASE("intersection")
{
  PermGroup a(3, {parse_cycles("(1 2)", 3)}), b(3, {parse_cycles("(1 2 3)", 3)});
  CHECK(intersection(a, b).group->order() == 1);
  CHECK(intersection(a, a).group->order() == 2);

  // The backtrack route, forced by groups above the enumeration guard.
  auto s10 = PermGroup::symmetric(10);
  PermGroup s5s5(10, {parse_cycles("(1 2)", 10), parse_cycles("(1 2 3 4 5)", 10),
                      parse_cycles("(6 7)", 10), parse_cycles("(6 7 8 9 10)", 10),
                      parse_cycles("(1 6)(2 7)(3 8)(4 9)(5 10)", 10)});
  auto r = intersection(PermGroup::alternating(10), s5s5);
  REQUIRE(r.group);
  CHECK(r.group->order() == 14400);
  auto s = intersection(s10, PermGroup::alternating(10));
  REQUIRE(s.group);
  CHECK(!s.by_enumeration);
  CHECK(s.group->order() == factorial(10) / 2);
  Budget tiny;
  tiny.max_nodes = 5;
  auto ex = intersection(s10, PermGroup::alternating(10), tiny);
  CHECK(!ex.group);
  CHECK(ex.stats.exhausted);
}

TEST_CASE("centralizer and cyclic normalizer in Alt(13)")
{
  std::vector<Point> cyc(13);
  std::iota(cyc.begin(), cyc.end(), Point{0});
  Perm x = Perm::from_cycles(13, {cyc});
  Perm y = conjugate(x, parse_cycles("(1 2 3)", 13));
  auto a13 = PermGroup::alternating(13);
  Perm const xs[] = {x};
  CHECK(centralizer(a13, xs).order() == 13);
  auto n0 = normalizer_of_cyclic(a13, x * y);
  auto n1 = normalizer_of_cyclic(a13, y);
  CHECK(n0.order() == 78);
  CHECK(n1.order() == 78);
  auto elems = enumerate(n0);
  std::size_t common = 0;
  for (auto const &e : elems)
    if (n1.contains(e))
      ++common;
  CHECK(common == 1);
  CHECK(intersection(n0, n1).group->order() == 1);
}
