#include "relcx/altconstruct.h"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "relcx/backtrack.h"

namespace relcx
{

namespace
{

using Block = std::vector<std::uint32_t>;

// 1-based printed blocks to a canonical 0-based label.
Label canonical(std::vector<Block> blocks)
{
  for (auto &b : blocks) {
    for (auto &x : b)
      --x;
    std::sort(b.begin(), b.end());
  }
  std::sort(blocks.begin(), blocks.end());
  return blocks;
}

Block range(std::uint32_t lo, std::uint32_t hi)
{
  Block b;
  for (std::uint32_t x = lo; x <= hi; ++x)
    b.push_back(x);
  return b;
}

Block join(Block a, Block const &b)
{
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

// X_1, X_2, ... : consecutive k-blocks of {from..n}.
std::vector<Block> padding(unsigned from, unsigned n, unsigned k)
{
  std::vector<Block> out;
  for (unsigned a = from; a + k - 1 <= n; a += k)
    out.push_back(range(a, a + k - 1));
  return out;
}

std::vector<Block> const kFanoLines{{1, 2, 3}, {3, 4, 5}, {1, 5, 6}, {1, 4, 7},
                                    {3, 6, 7}, {2, 5, 7}, {2, 4, 6}};

Block complement7(Block const &line)
{
  Block c;
  for (std::uint32_t x = 1; x <= 7; ++x)
    if (std::find(line.begin(), line.end(), x) == line.end())
      c.push_back(x);
  return c;
}

void require(bool ok, std::string const &what)
{
  if (!ok)
    throw std::invalid_argument(what);
}

bool is_prime(unsigned p)
{
  if (p < 2)
    return false;
  for (unsigned d = 2; d * d <= p; ++d)
    if (p % d == 0)
      return false;
  return true;
}

unsigned primitive_root(unsigned r)
{
  for (unsigned a = 2; a < r; ++a) {
    unsigned x = a, k = 1;
    while (x != 1) {
      x = x * a % r;
      ++k;
    }
    if (k == r - 1)
      return a;
  }
  return 1;
}

} // namespace

InducedAction ambient_action(NamedConfiguration const &c, bool alternating)
{
  unsigned n = c.params.at(0);
  auto base = alternating ? PermGroup::alternating(n) : PermGroup::symmetric(n);
  if (c.kind == LabelKind::subset)
    return k_subset_action(base, c.params.at(1));
  if (c.kind == LabelKind::partition)
    return uniform_partition_action(base, c.params.at(1));
  throw std::invalid_argument("configuration has no standard ambient action");
}

std::vector<Point> locate(InducedAction const &a, NamedConfiguration const &c)
{
  std::vector<Point> out;
  for (auto const &l : c.labels) {
    auto i = a.index_of(l);
    if (!i)
      throw std::invalid_argument("label " + label_string(c.kind, l) + " not in the action");
    out.push_back(static_cast<Point>(*i));
  }
  std::sort(out.begin(), out.end());
  return out;
}

NamedConfiguration fano_subset(unsigned n, unsigned k)
{
  require(2 < k && 2 * k < n, "fano-subset needs 2 < k < n/2");
  NamedConfiguration c{"fano-subset", {n, k}, LabelKind::subset, {}, 7, 168};
  for (auto const &line : kFanoLines)
    c.labels.push_back(canonical({join(line, range(8, k + 4))}));
  return c;
}

NamedConfiguration petersen_matchings(unsigned n)
{
  require(n % 2 == 0 && n >= 10, "petersen-matchings needs n even and n >= 10");
  std::vector<std::vector<Block>> const delta{
      {{1, 6}, {2, 7}, {3, 8}, {4, 9}, {5, 10}}, {{1, 2}, {3, 8}, {4, 5}, {6, 9}, {7, 10}},
      {{1, 5}, {2, 3}, {4, 9}, {6, 8}, {7, 10}}, {{1, 6}, {2, 3}, {4, 5}, {7, 9}, {8, 10}},
      {{1, 2}, {3, 4}, {5, 10}, {6, 8}, {7, 9}}, {{1, 5}, {2, 7}, {3, 4}, {6, 9}, {8, 10}}};
  NamedConfiguration c{"petersen-matchings", {n, 2}, LabelKind::partition, {}, 6, 120};
  auto pad = padding(11, n, 2);
  for (auto d : delta) {
    d.insert(d.end(), pad.begin(), pad.end());
    c.labels.push_back(canonical(d));
  }
  return c;
}

NamedConfiguration fano_partitions(unsigned n, unsigned k)
{
  require(k >= 4 && n % k == 0 && n >= 2 * k, "fano-partitions needs k >= 4 and k | n");
  NamedConfiguration c{"fano-partitions", {n, k}, LabelKind::partition, {}, 7, 168};
  auto pad = padding(2 * k + 1, n, k);
  for (auto const &line : kFanoLines) {
    std::vector<Block> d{join(line, range(8, k + 4)), join(complement7(line), range(k + 5, 2 * k))};
    d.insert(d.end(), pad.begin(), pad.end());
    c.labels.push_back(canonical(d));
  }
  return c;
}

NamedConfiguration three_uniform_partitions(unsigned n)
{
  require(n % 3 == 0 && n >= 6, "three-uniform needs 3 | n and n >= 6");
  NamedConfiguration c{"three-uniform", {n, 3}, LabelKind::partition, {}, 10, 0};
  auto pad = padding(7, n, 3);
  for (std::uint32_t a = 2; a <= 6; ++a)
    for (std::uint32_t b = a + 1; b <= 6; ++b) {
      Block first{1, a, b}, second;
      for (std::uint32_t x = 2; x <= 6; ++x)
        if (x != a && x != b)
          second.push_back(x);
      std::vector<Block> d{first, second};
      d.insert(d.end(), pad.begin(), pad.end());
      c.labels.push_back(canonical(d));
    }
  return c;
}

AffineLine affine_line_orbit(unsigned r, bool materialize)
{
  require(r >= 5 && is_prime(r), "affine-line needs r an odd prime, r >= 5");
  AffineLine out;
  out.g = PermGroup::symmetric(r);
  std::vector<Point> shift(r), scale(r);
  unsigned a = primitive_root(r);
  for (Point v = 0; v < r; ++v) {
    shift[v] = (v + 1) % r;
    scale[v] = static_cast<Point>(v * a % r);
  }
  out.h = Perm(scale);
  out.m = PermGroup(r, {Perm(shift), out.h}, static_cast<Order>(r) * (r - 1));
  out.x = *conjugating_element(out.g, out.h, out.h.inverse());

  auto meet = intersection(out.m, conjugate(out.m, out.x));
  out.meet_order = meet.group->order();
  out.meet_is_h = out.meet_order == r - 1 && meet.group->contains(out.h);
  out.delta_size = static_cast<std::size_t>(out.m.order() / out.meet_order);

  out.config = NamedConfiguration{"affine-line", {r}, LabelKind::coset, {}, r,
                                  static_cast<Order>(r) * (r - 1)};
  if (!materialize)
    return out;
  out.action = coset_action(out.g, out.m);
  auto const &act = *out.action;
  std::vector<std::uint32_t> id(r);
  std::iota(id.begin(), id.end(), 0u);
  Point w0 = static_cast<Point>(*act.index_of(Label{id}));
  Point w1 = act.induce(out.x)[w0];
  std::vector<Perm> mgens;
  for (auto const &s : out.m.generators())
    mgens.push_back(act.induce(s));
  out.delta = orbit(mgens, act.degree(), w1);
  for (Point p : out.delta)
    out.config.labels.push_back(act.labels[p]);
  return out;
}

FrobeniusSetup product_setup()
{
  constexpr std::size_t n = 25;
  auto point = [](Point a, Point b) { return 5 * a + b; };
  auto on_coords = [&](Perm const &x1, Perm const &x2) {
    std::vector<Point> img(n);
    for (Point a = 0; a < 5; ++a)
      for (Point b = 0; b < 5; ++b)
        img[point(a, b)] = point(x1[a], x2[b]);
    return Perm(img);
  };
  std::vector<Point> swap(n);
  for (Point a = 0; a < 5; ++a)
    for (Point b = 0; b < 5; ++b)
      swap[point(a, b)] = point(b, a);
  Perm id5(5);
  auto s5 = PermGroup::symmetric(5);
  std::vector<Perm> gens;
  for (auto const &s : s5.generators())
    gens.push_back(on_coords(s, id5));
  gens.push_back(Perm(swap));
  PermGroup wreath(n, gens, 28800);
  auto alt = PermGroup::alternating(n);

  FrobeniusSetup s;
  s.id = "frobenius-product";
  s.g = alt;
  s.m = *intersection(wreath, alt).group;
  Perm h = on_coords(Perm::from_cycles(5, {{1, 2, 3, 4}}), Perm::from_cycles(5, {{1, 2}}));
  Point d0 = point(0, 0), d1 = point(1, 1), d2 = point(2, 2), d3 = point(3, 1),
        d4 = point(4, 2);
  Perm g = Perm::from_cycles(n, {{d0, d1, d2, d4, d3}});
  s.candidate = FrobeniusCandidate{h, g, 5, 5};
  return s;
}

FrobeniusSetup diagonal_setup()
{
  auto t = enumerate(PermGroup::alternating(5));   // sorted: index = point
  std::size_t n = t.size();
  auto index = [&](Perm const &p) {
    return static_cast<Point>(std::lower_bound(t.begin(), t.end(), p) - t.begin());
  };
  auto on_points = [&](auto f) {
    std::vector<Point> img(n);
    for (std::size_t i = 0; i < n; ++i)
      img[i] = index(f(t[i]));
    return Perm(img);
  };
  auto a5 = PermGroup::alternating(5);
  auto s5 = PermGroup::symmetric(5);
  std::vector<Perm> gens;
  for (auto const &s : a5.generators()) {
    gens.push_back(on_points([&](Perm const &a) { return s.inverse() * a; }));
    gens.push_back(on_points([&](Perm const &a) { return a * s; }));
  }
  for (auto const &s : s5.generators())
    gens.push_back(on_points([&](Perm const &a) { return conjugate(a, s); }));
  Perm sigma = on_points([](Perm const &a) { return a.inverse(); });
  gens.push_back(sigma);

  FrobeniusSetup s;
  s.id = "frobenius-diagonal";
  s.g = PermGroup::symmetric(n);
  s.m = PermGroup(n, gens);
  Perm inv = Perm::from_cycles(5, {{0, 1}, {2, 3}});
  Perm h = on_points([&](Perm const &a) { return a * inv; }) * sigma;

  // First five 4-cycles of h, each read from its least point.
  std::vector<Point> lam{0};   // λ_0 unused
  std::vector<char> seen(n, 0);
  for (Point p = 0; p < n && lam.size() < 21; ++p) {
    if (seen[p])
      continue;
    std::vector<Point> cyc;
    for (Point q = p; !seen[q]; q = h[q]) {
      seen[q] = 1;
      cyc.push_back(q);
    }
    if (cyc.size() == 4)
      lam.insert(lam.end(), cyc.begin(), cyc.end());
  }
  if (lam.size() < 21)
    throw std::logic_error("h has fewer than five 4-cycles");
  std::vector<std::vector<Point>> cycles{{lam[1], lam[5], lam[9], lam[13], lam[17]},
                                         {lam[2], lam[10], lam[18], lam[6], lam[14]},
                                         {lam[3], lam[19], lam[15], lam[11], lam[7]},
                                         {lam[4], lam[16], lam[8], lam[20], lam[12]}};
  s.candidate = FrobeniusCandidate{h, Perm::from_cycles(n, cycles), 5, 20};
  return s;
}

NamedConfiguration construction(std::string const &id, std::vector<unsigned> const &params)
{
  auto arg = [&](std::size_t i) {
    require(i < params.size(), id + ": missing parameter");
    return params[i];
  };
  if (id == "fano-subset")
    return fano_subset(arg(0), arg(1));
  if (id == "petersen-matchings")
    return petersen_matchings(arg(0));
  if (id == "fano-partitions")
    return fano_partitions(arg(0), arg(1));
  if (id == "three-uniform")
    return three_uniform_partitions(arg(0));
  if (id == "affine-line")
    return affine_line_orbit(arg(0)).config;
  throw std::invalid_argument("unknown construction " + id);
}

} // namespace relcx
