#include "doctest.h"
#include "oracle.h"

#include "relcx/altconstruct.h"

using namespace relcx;

namespace
{

BeautyCheck certify(NamedConfiguration const &c)
{
  auto a = ambient_action(c);
  return is_beautiful(a.group, locate(a, c));
}

} // namespace

TEST_CASE("Fano subsets")
{
  auto c = fano_subset(8, 3);
  REQUIRE(c.labels.size() == 7);
  CHECK(label_string(c.kind, c.labels[0]) == "{1,2,3}");
  auto big = fano_subset(11, 5);
  CHECK(label_string(big.kind, big.labels[1]) == "{3,4,5,8,9}");
  for (auto [n, k] : {std::pair{8u, 3u}, {9u, 3u}, {10u, 4u}, {11u, 4u}, {12u, 5u}}) {
    auto r = certify(fano_subset(n, k));
    REQUIRE(r.certificate);
    CHECK(r.certificate->group.induced_order == 168);
    CHECK(r.certificate->lambda.size() == 7);
  }
  CHECK_THROWS_AS(fano_subset(6, 3), std::invalid_argument);
  CHECK_THROWS_AS(fano_subset(8, 2), std::invalid_argument);
}

TEST_CASE("Fano subset stabilizer fixes X and Y")
{
  unsigned n = 11, k = 4;
  auto c = fano_subset(n, k);
  auto a = ambient_action(c);
  auto pts = locate(a, c);
  auto stab = setwise_stabilizer(a.group, pts);
  // Back in Sym(n): G_Δ is the setwise stabilizer of the labels.
  auto sym = PermGroup::symmetric(n);
  std::vector<Point> x{7}, y{8, 9, 10};
  auto elems = enumerate(setwise_stabilizer(sym, std::vector<Point>{0, 1, 2, 3, 4, 5, 6}));
  std::size_t count = 0;
  for (auto const &e : elems) {
    bool keeps = true;
    for (auto const &l : c.labels) {
      std::vector<std::uint32_t> img;
      for (auto v : l[0])
        img.push_back(e[v]);
      std::sort(img.begin(), img.end());
      keeps &= std::find(c.labels.begin(), c.labels.end(), Label{img}) != c.labels.end();
    }
    if (keeps) {
      ++count;
      CHECK(oracle::preserves(e, x));
      CHECK(oracle::preserves(e, y));
    }
  }
  // The parent action is faithful, so orders agree.
  CHECK(stab.order() == count);
}

TEST_CASE("Petersen matchings")
{
  for (unsigned n : {10u, 12u}) {
    auto c = petersen_matchings(n);
    REQUIRE(c.labels.size() == 6);
    auto r = certify(c);
    REQUIRE(r.certificate);
    CHECK(r.certificate->group.induced_order == 120);
  }
  CHECK(label_string(LabelKind::partition, petersen_matchings(10).labels.front()).front() == '{');
  CHECK_THROWS_AS(petersen_matchings(8), std::invalid_argument);
  CHECK_THROWS_AS(petersen_matchings(11), std::invalid_argument);
}

TEST_CASE("Fano partitions")
{
  for (auto [n, k] : {std::pair{8u, 4u}, {12u, 4u}, {10u, 5u}}) {
    auto r = certify(fano_partitions(n, k));
    REQUIRE(r.certificate);
    CHECK(r.certificate->group.induced_order == 168);
  }
  CHECK_THROWS_AS(fano_partitions(9, 3), std::invalid_argument);
  CHECK_THROWS_AS(fano_partitions(10, 4), std::invalid_argument);
}

TEST_CASE("3-uniform partitions")
{
  auto six = three_uniform_partitions(6);
  auto a = ambient_action(six);
  CHECK(a.degree() == 10);
  CHECK(locate(a, six).size() == 10);
  auto r6 = certify(six);
  REQUIRE(r6.certificate);
  CHECK(r6.certificate->group.induced_order == 720);
  auto r9 = certify(three_uniform_partitions(9));
  REQUIRE(r9.certificate);
  CHECK(r9.certificate->lambda.size() == 10);
  CHECK_THROWS_AS(three_uniform_partitions(7), std::invalid_argument);
}

TEST_CASE("beautiful for the alternating socle too")
{
  for (auto const &c : {fano_subset(9, 3), petersen_matchings(10), fano_partitions(8, 4),
                        three_uniform_partitions(9)}) {
    auto sym = ambient_action(c);
    auto alt = ambient_action(c, true);
    auto r = is_S_beautiful(sym.group, alt.group, locate(sym, c));
    CHECK(r.certificate);
  }
}

TEST_CASE("affine line orbit")
{
  for (unsigned r : {5u, 7u}) {
    auto a = affine_line_orbit(r);
    CHECK(a.action->degree() == (r == 5 ? 6u : 120u));
    CHECK(a.meet_is_h);
    CHECK(a.delta.size() == r);
    CHECK(a.delta_size == r);
    CHECK(conjugate(a.h, a.x) == a.h.inverse());
    auto c = is_beautiful(a.action->group, a.delta);
    REQUIRE(c.certificate);
    CHECK(c.certificate->group.induced_order == static_cast<Order>(r) * (r - 1));
    CHECK(c.certificate->group.setwise_order == a.m.order());
  }
  auto big = affine_line_orbit(11, false);
  CHECK(big.meet_is_h);
  CHECK(big.delta_size == 11);
  CHECK_THROWS_AS(affine_line_orbit(9), std::invalid_argument);
}

TEST_CASE("Frobenius construction in product action")
{
  auto s = product_setup();
  CHECK(s.m.order() == 14400);
  auto const &c = s.candidate;
  CHECK(conjugate(c.g, c.h) == c.g.pow(2));
  auto v = frobenius_beautiful(s.g, s.m, c);
  CHECK(v.message == "Δ = ω0^K is G-beautiful of size 5");
  CHECK(v.outcome == FrobeniusOutcome::beautiful);
  CHECK(v.k_order == 20);
  CHECK(v.k_meet_m_order == 4);
  CHECK(v.delta_size == 5);
  CHECK(v.k_sharply_2_transitive);
  CHECK(v.scanned == 14400);
  // Independent: nothing in M of order divisible by 3 fixes 15 points.
  for (auto const &f : oracle::closure(25, s.m.generators()))
    if (fixed_point_count(f) >= 15 && !f.is_identity())
      CHECK(f.order() % 3 != 0);
}

TEST_CASE("Frobenius construction in diagonal action")
{
  auto s = diagonal_setup();
  CHECK(s.m.order() == 14400);
  auto const &c = s.candidate;
  CHECK(c.h.order() == 4);
  CHECK(conjugate(c.g, c.h) == c.g.pow(3));
  CHECK(fixed_point_count(c.g) == 40);
  auto v = frobenius_beautiful(s.g, s.m, c);
  CHECK(v.outcome == FrobeniusOutcome::beautiful);
  CHECK(v.delta_size == 5);
  CHECK(v.scanned == 14400);
  std::size_t most = 0;
  for (auto const &f : enumerate(s.m))
    if (!f.is_identity())
      most = std::max(most, fixed_point_count(f));
  CHECK(most <= 16);   // 4n/15
}

TEST_CASE("stabilizer containments on the Petersen configuration")
{
  auto c = petersen_matchings(10);
  auto a = ambient_action(c);
  auto pts = locate(a, c);
  auto h = setwise_stabilizer(a.group, pts);
  CHECK(h.order() == 120);
  auto s = check_lemma_stabs(a.group, h, pts[0]);
  CHECK(s.lambda == pts);
  CHECK(s.centralizer_fixes);
  CHECK(s.setwise_normalizes);
}

TEST_CASE("construction ids")
{
  CHECK(construction("fano-subset", {8, 3}).labels.size() == 7);
  CHECK(construction("three-uniform", {6}).labels.size() == 10);
  CHECK(construction("affine-line", {5}).labels.size() == 5);
  CHECK_THROWS_AS(construction("nope", {}), std::invalid_argument);
}
