#include "doctest.h"
#include "oracle.h"

#include <map>
#include <set>

#include "relcx/binary.h"
#include "relcx/classical.h"

using namespace relcx;

namespace
{

// All vectors of GF(q)^n in odometer order.
template <typename F>
void for_each_vector(unsigned q, unsigned n, F &&visit)
{
  Vec v(n, 0);
  while (true) {
    visit(v);
    unsigned i = 0;
    for (; i < n; ++i) {
      if (++v[i] < q)
        break;
      v[i] = 0;
    }
    if (i == n)
      return;
  }
}

// Hermitian form written out by hand: sum e_i f_i-bar + f_i e_i-bar + x x-bar.
FElt herm(Field const &f, unsigned n, Vec const &v)
{
  unsigned k = n / 2, half = f.degree() / 2;
  FElt s = 0;
  for (unsigned i = 0; i < k; ++i) {
    s = f.add(s, f.mul(v[i], f.frobenius(v[k + i], half)));
    s = f.add(s, f.mul(v[k + i], f.frobenius(v[i], half)));
  }
  if (n % 2)
    s = f.add(s, f.mul(v[n - 1], f.frobenius(v[n - 1], half)));
  return s;
}

std::vector<Perm> induced_on(std::vector<Perm> const &elems, std::vector<Point> const &lambda)
{
  std::map<Point, Point> pos;
  for (std::size_t i = 0; i < lambda.size(); ++i)
    pos[lambda[i]] = static_cast<Point>(i);
  std::vector<Perm> out;
  for (auto const &e : elems) {
    std::vector<Point> img;
    for (Point x : lambda)
      img.push_back(pos.at(e[x]));
    out.emplace_back(img);
  }
  return out;
}

} // namespace

TEST_CASE("finite field axioms")
{
  for (unsigned q : {2u, 3u, 4u, 5u, 7u, 8u, 9u, 11u, 13u, 16u, 25u, 27u, 32u}) {
    CAPTURE(q);
    Field const &f = *Field::get(q);
    CHECK(f.q() == q);
    for (unsigned a = 0; a < q; ++a) {
      FElt x = static_cast<FElt>(a);
      CHECK(f.add(x, 0) == x);
      CHECK(f.mul(x, 1) == x);
      CHECK(f.add(x, f.neg(x)) == 0);
      CHECK(f.pow(x, q) == x);
      if (x)
        CHECK(f.mul(x, f.inv(x)) == 1);
      for (unsigned b = 0; b < q; ++b) {
        FElt y = static_cast<FElt>(b);
        CHECK(f.add(x, y) == f.add(y, x));
        CHECK(f.mul(x, y) == f.mul(y, x));
        for (unsigned c = 0; c < q; c += 1 + q / 8) {
          FElt z = static_cast<FElt>(c);
          CHECK(f.mul(x, f.add(y, z)) == f.add(f.mul(x, y), f.mul(x, z)));
          CHECK(f.mul(f.mul(x, y), z) == f.mul(x, f.mul(y, z)));
        }
      }
    }
    // The primitive element has order q-1.
    std::set<FElt> powers;
    for (unsigned i = 0; i + 1 < q; ++i)
      powers.insert(f.exp(i));
    CHECK(powers.size() == q - 1);
    // Frobenius is additive and multiplicative.
    for (unsigned a = 0; a < q; ++a)
      for (unsigned b = 0; b < q; ++b) {
        FElt x = static_cast<FElt>(a), y = static_cast<FElt>(b);
        CHECK(f.frobenius(f.add(x, y)) == f.add(f.frobenius(x), f.frobenius(y)));
        CHECK(f.frobenius(f.mul(x, y)) == f.mul(f.frobenius(x), f.frobenius(y)));
      }
  }
}

TEST_CASE("prime fields agree with integer arithmetic")
{
  for (unsigned p : {2u, 3u, 5u, 7u, 11u, 13u}) {
    Field const &f = *Field::get(p);
    for (unsigned a = 0; a < p; ++a)
      for (unsigned b = 0; b < p; ++b) {
        CHECK(f.add(static_cast<FElt>(a), static_cast<FElt>(b)) == (a + b) % p);
        CHECK(f.mul(static_cast<FElt>(a), static_cast<FElt>(b)) == (a * b) % p);
      }
  }
}

TEST_CASE("conjugation on GF(q^2) is an involution fixing GF(q)")
{
  for (unsigned q : {2u, 3u, 4u, 5u}) {
    Field const &f = *Field::get(q * q);
    unsigned half = f.degree() / 2;
    unsigned fixed = 0;
    for (unsigned a = 0; a < q * q; ++a) {
      FElt x = static_cast<FElt>(a);
      CHECK(f.frobenius(f.frobenius(x, half), half) == x);
      fixed += f.frobenius(x, half) == x;
    }
    CHECK(fixed == q);
  }
}

TEST_CASE("matrix helpers")
{
  Field const &f = *Field::get(5);
  Mat x(3, 3);
  x.a = {1, 2, 0, 0, 1, 3, 1, 0, 1};
  Mat y = inverse(f, x);
  CHECK(is_identity(mul(f, x, y)));
  CHECK(det(f, x) == 2);
  Mat n = null_space(f, x);
  CHECK(n.rows + rank(f, x) == 3);
  for (unsigned m : {1u, 2u, 3u}) {
    auto poly = primitive_polynomial(f, m);
    unsigned long long target = 1;
    for (unsigned i = 0; i < m; ++i)
      target *= 5;
    CHECK(has_order(f, companion(f, poly), target - 1));
  }
}

TEST_CASE("Gaussian binomials count subspaces")
{
  for (auto [q, n] : std::vector<std::pair<unsigned, unsigned>>{{2, 4}, {3, 3}, {4, 3}, {2, 5}}) {
    auto s = formed_space(Family::SL, n, q);
    for (unsigned m = 1; m < n; ++m) {
      // Brute force: distinct row spaces of all m x n matrices of rank m.
      std::set<Mat> spaces;
      Field const &f = *s.field;
      std::vector<Vec> vs;
      for_each_vector(q, n, [&](Vec const &v) { vs.push_back(v); });
      if (m == 1) {
        for (auto const &v : vs)
          if (std::any_of(v.begin(), v.end(), [](FElt e) { return e; })) {
            Mat x(1, n);
            x.a = v;
            spaces.insert(rref(f, x));
          }
      } else if (m == 2) {
        for (auto const &v : vs)
          for (auto const &w : vs) {
            Mat x(2, n);
            std::copy(v.begin(), v.end(), x.a.begin());
            std::copy(w.begin(), w.end(), x.a.begin() + n);
            if (rank(f, x) == 2)
              spaces.insert(rref(f, x));
          }
      } else {
        continue;
      }
      CHECK(spaces.size() == gaussian_binomial(q, n, m));
      CHECK(enumerate_subspaces(s, m, {}).size() == spaces.size());
    }
  }
}

TEST_CASE("closed-form orders")
{
  CHECK(classical_order(Family::SL, 3, 4) == 60480);
  CHECK(classical_order(Family::Sp, 4, 4) == 979200);
  CHECK(classical_order(Family::SU, 3, 2) == 216);
  CHECK(classical_order(Family::SU, 4, 2) == 25920);
  CHECK(classical_order(Family::SU, 5, 2) == 13685760);
  CHECK(classical_order(Family::O_odd, 7, 3) == 4585351680ULL);
  CHECK(classical_order(Family::O_plus, 8, 2) == 174182400);
  CHECK(classical_order(Family::O_minus, 8, 2) == 197406720);
  CHECK(center_order(Family::SL, 3, 4) == 3);
  CHECK(center_order(Family::SU, 4, 3) == 4);
  CHECK(center_order(Family::O_plus, 8, 3) == 2);
  CHECK(center_order(Family::O_minus, 8, 3) == 1);
}

TEST_CASE("generators lie in the group and reach the projective order")
{
  struct C
  {
    Family f;
    unsigned n, q;
  };
  for (auto c : std::vector<C>{{Family::SL, 2, 4},
                               {Family::SL, 3, 3},
                               {Family::SL, 3, 4},
                               {Family::Sp, 4, 2},
                               {Family::Sp, 4, 3},
                               {Family::SU, 3, 3},
                               {Family::SU, 4, 2},
                               {Family::O_odd, 7, 3},
                               {Family::O_plus, 8, 2},
                               {Family::O_minus, 8, 2}}) {
    auto g = build_group(c.f, c.n, c.q);
    CAPTURE(g.name);
    Field const &f = *g.space.field;
    for (auto const &x : g.generators) {
      CHECK(det(f, x) == 1);
      CHECK(g.space.preserves(x));
    }
    CHECK(g.points->action.group.order() == g.order / g.center);
    CHECK(g.points->action.degree() == gaussian_binomial(f.q(), c.n, 1));
  }
}

TEST_CASE("SU_3(2) is found despite being soluble")
{
  auto g = build_group(Family::SU, 3, 2);
  CHECK(g.points->action.group.order() == 72);
  auto a = subspace_action(g, 1, parse_class("nondeg"));
  CHECK(a.action.degree() == 12);
}

TEST_CASE("forms preserved: hand-written hermitian form")
{
  auto g = build_group(Family::SU, 5, 2);
  Field const &f = *g.space.field;
  for (auto const &x : g.generators)
    for_each_vector(4, 5, [&](Vec const &v) { CHECK(herm(f, 5, mul(f, v, x)) == herm(f, 5, v)); });
}

TEST_CASE("subspace action degrees")
{
  auto count_nonisotropic = [](unsigned n, unsigned q) {
    Field const &f = *Field::get(q * q);
    std::size_t c = 0;
    for_each_vector(q * q, n, [&](Vec const &v) { c += herm(f, n, v) != 0; });
    return c / (q * q - 1);
  };
  auto su32 = build_group(Family::SU, 3, 2);
  CHECK(subspace_action(su32, 1, parse_class("nondeg")).action.degree() == count_nonisotropic(3, 2));
  auto su42 = build_group(Family::SU, 4, 2);
  CHECK(subspace_action(su42, 1, parse_class("nondeg")).action.degree() == count_nonisotropic(4, 2));
  CHECK(subspace_action(su42, 1, parse_class("nondeg")).action.degree() == 40);
  CHECK(subspace_action(su42, 2, parse_class("ti")).action.degree() == 27);
  auto su52 = build_group(Family::SU, 5, 2);
  CHECK(subspace_action(su52, 1, parse_class("nondeg")).action.degree() == count_nonisotropic(5, 2));
  CHECK(subspace_action(su52, 2, parse_class("nondeg")).action.degree() == 3520);

  auto sp = build_group(Family::Sp, 4, 2);
  CHECK(subspace_action(sp, 1, {}).action.degree() == 15);
  CHECK(subspace_action(sp, 2, parse_class("ti")).action.degree() == 15);
  auto sl = build_group(Family::SL, 2, 4);
  CHECK(subspace_action(sl, 1, {}).action.degree() == 5);
}

TEST_CASE("Omega_7(3) points split by the square class of Q")
{
  auto g = build_group(Family::O_odd, 7, 3);
  Field const &f = *g.space.field;
  std::map<FElt, std::size_t> byq;
  for_each_vector(3, 7, [&](Vec const &v) {
    if (std::any_of(v.begin(), v.end(), [](FElt e) { return e; })) {
      FElt q = 0;
      for (unsigned i = 0; i < 3; ++i)
        q = f.add(q, f.mul(v[i], v[3 + i]));
      q = f.add(q, f.mul(v[6], v[6]));
      ++byq[q];
    }
  });
  CHECK(byq[0] / 2 == 364);
  std::multiset<std::size_t> brute{byq[1] / 2, byq[2] / 2};
  auto minus = subspace_action(g, 1, parse_class("nondeg-"));
  auto plus = subspace_action(g, 1, parse_class("nondeg+"));
  CHECK(std::multiset<std::size_t>{minus.action.degree(), plus.action.degree()} == brute);
  CHECK(minus.action.degree() == 351);
  CHECK(subspace_action(g, 1, parse_class("ti")).action.degree() == 364);
  CHECK(minus.action.group.order() == 4585351680ULL);
}

TEST_CASE("flags, antiflags and the duality")
{
  for (unsigned q : {2u, 3u}) {
    auto g = build_group(Family::SL, 3, q);
    for (bool inc : {true, false}) {
      auto a = pair_action(g, 1, 2, inc);
      unsigned pts = q * q + q + 1;
      CHECK(a.action.degree() == (inc ? pts * (q + 1) : pts * q * q));
      Perm d = duality(g, a);
      CHECK((d * d).is_identity());
      CHECK_FALSE(a.action.group.contains(d));
      for (auto const &x : a.action.group.generators())
        CHECK(a.action.group.contains(conjugate(x, d)));
    }
  }
  auto g = build_group(Family::SL, 3, 4);
  CHECK(pair_action(g, 1, 2, true).action.degree() == 105);
}

TEST_CASE("Singer cycles on totally isotropic subspaces")
{
  auto sp = build_group(Family::Sp, 4, 2);
  auto c1 = singer_cycle(sp, {0, 1});
  CHECK(c1.order_on_w == 3);
  CHECK(c1.irreducible);
  auto su = build_group(Family::SU, 5, 2);
  auto c2 = singer_cycle(su, {0});
  CHECK(c2.order_on_w == 3);
  CHECK(c2.irreducible);
  CHECK(singer_cycle(su, {0, 1}).order_on_w == 15);
  auto o = build_group(Family::O_plus, 8, 2);
  auto c3 = singer_cycle(o, {0, 1, 2});
  CHECK(c3.order_on_w == 7);
  CHECK(c3.irreducible);
  CHECK(o.contains(c3.element));

  auto sl = build_group(Family::SL, 3, 2);
  CHECK_THROWS_AS(singer_cycle(sl, {0}), PreconditionError);
  auto su4 = build_group(Family::SU, 4, 2);
  CHECK_THROWS_AS(singer_cycle(su4, {0, 1}), PreconditionError);
  CHECK_THROWS_AS(singer_cycle(o, {0, 1, 2, 3}), PreconditionError);
}

TEST_CASE("UT recipes give beautiful subsets")
{
  auto check = [](auto const &g, auto const &a, UTRecipe const &r, std::size_t size) {
    auto res = ut_beautiful(g, a, r);
    CHECK(res.failed == "");
    CHECK(res.lambda.size() == size);
    CHECK(res.certificate);
    // 2-transitivity on Λ by brute force.
    std::vector<Perm> hp;
    for (auto const *l : {&r.u, &r.t})
      for (auto const &x : *l)
        hp.push_back(a.induce(x));
    auto elems = oracle::closure(a.action.degree(), hp);
    CHECK(elems.size() == res.h_order);
    CHECK(oracle::pair_orbits(size, induced_on(elems, res.lambda)) == 1);
  };
  {
    auto g = build_group(Family::SU, 5, 2);
    auto a = subspace_action(g, 1, parse_class("nondeg"));
    check(g, a, su_affine_recipe(g), 16);
  }
  {
    auto g = build_group(Family::SL, 3, 4);
    auto a = pair_action(g, 1, 2, true);
    check(g, a, sl3_unital_recipe(g), 9);
  }
  {
    auto g = build_group(Family::Sp, 4, 4);
    auto a = subspace_action(g, 1, {});
    check(g, a, sp4_ovoid_recipe(g), 16);
  }
}

TEST_CASE("UT recipe claims are checked")
{
  auto g = build_group(Family::SU, 5, 2);
  auto a = subspace_action(g, 1, parse_class("nondeg"));
  auto r = su_affine_recipe(g);
  r.claims_u_meets_m_trivially = true;
  CHECK(ut_beautiful(g, a, r).failed == "U ∩ M is not trivial");
  r = su_affine_recipe(g);
  r.t.push_back(r.u[0]);
  CHECK(ut_beautiful(g, a, r).failed == "T is not contained in M");
}

TEST_CASE("explicit point stabilizers in SU_3(q)")
{
  for (unsigned q : {3u, 4u, 5u}) {
    CAPTURE(q);
    auto g = build_group(Family::SU, 3, q);
    auto a = subspace_action(g, 1, parse_class("nondeg"));
    auto e = explicit_su_point_stabilizer(g, a);
    CHECK(e.variant == ((q + 1) % 3 ? 1 : 2));
    CHECK(e.h.size() == e.expected_order);
    CHECK(e.h_order == e.expected_order);
    CHECK(e.lambda.size() == (e.variant == 1 ? q * q : q));
    CHECK(e.h_2_transitive);
    CHECK(e.check.certificate);
  }
  auto g2 = build_group(Family::SU, 3, 2);
  auto a2 = subspace_action(g2, 1, parse_class("nondeg"));
  CHECK_THROWS_AS(explicit_su_point_stabilizer(g2, a2), PreconditionError);
  auto g3 = build_group(Family::SU, 3, 3);
  auto a3 = subspace_action(g3, 1, parse_class("nondeg"));
  CHECK_THROWS_AS(explicit_su_point_stabilizer(g3, a3, 2), PreconditionError);
}

TEST_CASE("derived subgroup of Sp_4(2)")
{
  auto g = build_group(Family::Sp, 4, 2);
  auto d = derived_subgroup(g.points->action.group);
  CHECK(d.order() == 360);
  auto elems = oracle::closure(15, d.generators());
  CHECK(elems.size() == 360);
}
