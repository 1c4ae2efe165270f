#include "relcx/group.h"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace relcx
{

PermGroup::PermGroup(std::size_t degree, std::vector<Perm> gens)
    : _degree(degree), _lazy(std::make_shared<Lazy>())
{
  for (auto &g : gens) {
    if (g.degree() != degree)
      throw std::invalid_argument("generator degree mismatch");
    if (!g.is_identity())
      _gens.push_back(std::move(g));
  }
}

PermGroup::PermGroup(std::size_t degree, std::vector<Perm> gens, Order certified_order)
    : PermGroup(degree, std::move(gens))
{
  _certified = certified_order;
}

PermGroup PermGroup::trivial(std::size_t degree) { return PermGroup(degree, {}); }

PermGroup PermGroup::symmetric(std::size_t n)
{
  std::vector<Perm> gens;
  if (n >= 2) {
    gens.push_back(Perm::from_cycles(n, {{0, 1}}));
    std::vector<Point> c(n);
    std::iota(c.begin(), c.end(), Point{0});
    gens.push_back(Perm::from_cycles(n, {c}));
  }
  if (n > 34)
    return PermGroup(n, std::move(gens));
  return PermGroup(n, std::move(gens), factorial(static_cast<unsigned>(n)));
}

PermGroup PermGroup::alternating(std::size_t n)
{
  std::vector<Perm> gens;
  if (n >= 3) {
    gens.push_back(Perm::from_cycles(n, {{0, 1, 2}}));
    std::vector<Point> c;
    for (Point i = (n % 2 ? 0 : 1); i < n; ++i)
      c.push_back(i);
    gens.push_back(Perm::from_cycles(n, {c}));
  }
  if (n > 34)
    return PermGroup(n, std::move(gens));
  return PermGroup(n, std::move(gens), n >= 3 ? factorial(static_cast<unsigned>(n)) / 2 : 1);
}

std::shared_ptr<StabChain const> PermGroup::chain_ptr() const
{
  std::call_once(_lazy->once, [this] {
    StabChain::Options opts;
    opts.known_order = _certified;
    _lazy->chain = std::make_shared<StabChain const>(_degree, _gens, opts);
  });
  return _lazy->chain;
}

StabChain const &PermGroup::chain() const { return *chain_ptr(); }

std::shared_ptr<StabChain const>
PermGroup::chain_with_base(std::span<Point const> prefix) const
{
  StabChain::Options opts;
  opts.base_prefix.assign(prefix.begin(), prefix.end());
  opts.known_order = order();
  // Reuse the strong generators: they already generate and sift well.
  return std::make_shared<StabChain const>(_degree, chain().strong_generators(), opts);
}

bool PermGroup::contains(PermGroup const &h) const
{
  return std::all_of(h.generators().begin(), h.generators().end(),
                     [this](Perm const &g) { return contains(g); });
}

bool PermGroup::is_trivial() const { return _gens.empty(); }

std::vector<Point> orbit(std::span<Perm const> gens, std::size_t degree, Point x)
{
  if (x >= degree)
    throw std::out_of_range("point out of range");
  std::vector<char> seen(degree, 0);
  std::vector<Point> out{x};
  seen[x] = 1;
  for (std::size_t i = 0; i < out.size(); ++i)
    for (auto const &g : gens) {
      Point y = g[out[i]];
      if (!seen[y]) {
        seen[y] = 1;
        out.push_back(y);
      }
    }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Point> orbit(PermGroup const &g, Point x)
{
  return orbit(g.generators(), g.degree(), x);
}

std::vector<std::uint32_t> orbit_partition(std::span<Perm const> gens, std::size_t degree)
{
  constexpr std::uint32_t none = ~0u;
  std::vector<std::uint32_t> id(degree, none);
  std::uint32_t next = 0;
  std::vector<Point> queue;
  for (Point s = 0; s < degree; ++s) {
    if (id[s] != none)
      continue;
    id[s] = next;
    queue.assign(1, s);
    for (std::size_t i = 0; i < queue.size(); ++i)
      for (auto const &g : gens) {
        Point y = g[queue[i]];
        if (id[y] == none) {
          id[y] = next;
          queue.push_back(y);
        }
      }
    ++next;
  }
  return id;
}

std::size_t orbit_count(PermGroup const &g)
{
  auto p = orbit_partition(g.generators(), g.degree());
  return p.empty() ? 0 : *std::max_element(p.begin(), p.end()) + 1;
}

SchreierOrbit::SchreierOrbit(std::span<Perm const> gens, std::size_t degree, Point root)
    : _gens(gens.begin(), gens.end()), _degree(degree), _root(root),
      _parent_gen(degree, -1), _parent(degree, 0)
{
  std::vector<char> seen(degree, 0);
  seen[root] = 1;
  _points.push_back(root);
  for (std::size_t i = 0; i < _points.size(); ++i)
    for (std::size_t k = 0; k < _gens.size(); ++k) {
      Point y = _gens[k][_points[i]];
      if (!seen[y]) {
        seen[y] = 1;
        _parent_gen[y] = static_cast<int>(k);
        _parent[y] = _points[i];
        _points.push_back(y);
      }
    }
}

Perm SchreierOrbit::element_to(Point y) const
{
  if (!contains(y))
    throw std::invalid_argument("point not in orbit");
  std::vector<int> word;
  for (Point z = y; z != _root; z = _parent[z])
    word.push_back(_parent_gen[z]);
  Perm g(_degree);
  for (auto it = word.rbegin(); it != word.rend(); ++it)
    g *= _gens[*it];
  return g;
}

bool is_transitive(PermGroup const &g)
{
  if (g.degree() == 0)
    return true;
  return orbit(g, 0).size() == g.degree();
}

bool is_2_transitive(PermGroup const &g)
{
  if (g.degree() < 2)
    return false;
  if (!is_transitive(g))
    return false;
  Point first = 0;
  auto ch = g.chain_with_base(std::span<Point const>(&first, 1));
  auto const &stab = ch->gens_at(1);
  return orbit(stab, g.degree(), 1).size() == g.degree() - 1;
}

std::size_t pair_orbit_count(std::span<Perm const> gens, std::size_t degree)
{
  std::size_t n = degree;
  std::vector<std::size_t> parent(n * n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  for (auto const &g : gens)
    for (Point a = 0; a < n; ++a)
      for (Point b = 0; b < n; ++b) {
        if (a == b)
          continue;
        std::size_t u = find(a * n + b), v = find(g[a] * n + g[b]);
        if (u != v)
          parent[u] = v;
      }
  std::size_t count = 0;
  for (Point a = 0; a < n; ++a)
    for (Point b = 0; b < n; ++b)
      if (a != b && find(a * n + b) == a * n + b)
        ++count;
  return count;
}

std::vector<Perm> enumerate(PermGroup const &g, std::size_t guard)
{
  if (g.order() > guard)
    throw std::length_error("group order " + to_string(g.order()) +
                            " exceeds the enumeration guard");
  auto const &ch = g.chain();
  std::vector<Perm> out{Perm(g.degree())};
  for (std::size_t k = ch.length(); k-- > 0;) {
    auto const &l = ch.level(k);
    std::vector<Perm> next;
    next.reserve(out.size() * l.trans.size());
    for (auto const &x : out)
      for (auto const &t : l.trans)
        next.push_back(x * t);
    out = std::move(next);
  }
  std::sort(out.begin(), out.end());
  return out;
}

Perm random_element(PermGroup const &g, std::uint64_t seed)
{
  ProductReplacement pr(g.degree(), g.generators(), seed);
  return pr.next();
}

PermGroup conjugate(PermGroup const &g, Perm const &by)
{
  std::vector<Perm> gens;
  for (auto const &x : g.generators())
    gens.push_back(conjugate(x, by));
  if (g.certified_order())
    return PermGroup(g.degree(), std::move(gens), *g.certified_order());
  return PermGroup(g.degree(), std::move(gens));
}

PermGroup subgroup_generated(std::size_t degree, std::span<Perm const> elements)
{
  std::vector<Perm> gens;
  auto ch = std::make_unique<StabChain>(degree, gens);
  for (auto const &e : elements) {
    if (ch->contains(e))
      continue;
    gens.push_back(e);
    ch = std::make_unique<StabChain>(degree, gens);
  }
  return PermGroup(degree, std::move(gens), ch->order());
}

PermGroup derived_subgroup(PermGroup const &g)
{
  auto const &gens = g.generators();
  std::vector<Perm> pool;
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j)
      pool.push_back(gens[i].inverse() * gens[j].inverse() * gens[i] * gens[j]);
  PermGroup d = subgroup_generated(g.degree(), pool);
  for (bool grew = true; grew;) {
    grew = false;
    std::vector<Perm> next = d.generators();
    for (auto const &x : d.generators())
      for (auto const &s : gens) {
        Perm c = conjugate(x, s);
        if (!d.contains(c)) {
          next.push_back(c);
          grew = true;
        }
      }
    if (grew)
      d = subgroup_generated(g.degree(), next);
  }
  return d;
}

PermGroup induced(std::span<Perm const> gens, std::span<Point const> points)
{
  std::size_t m = points.size();
  std::vector<std::int64_t> index;
  Point maxp = 0;
  for (Point p : points)
    maxp = std::max(maxp, p);
  index.assign(maxp + 1, -1);
  for (std::size_t i = 0; i < m; ++i)
    index[points[i]] = static_cast<std::int64_t>(i);
  std::vector<Perm> out;
  for (auto const &g : gens) {
    std::vector<Point> img(m);
    for (std::size_t i = 0; i < m; ++i) {
      Point y = g[points[i]];
      if (y > maxp || index[y] < 0)
        throw std::invalid_argument("generator does not preserve the subset");
      img[i] = static_cast<Point>(index[y]);
    }
    out.emplace_back(std::move(img));
  }
  return PermGroup(m, std::move(out));
}

} // namespace relcx
