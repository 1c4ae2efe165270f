#include "relcx/backtrack.h"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace relcx
{

namespace
{

struct BudgetExhausted
{};

class Meter
{
public:
  Meter(Budget b, SearchStats &s)
      : _b(b), _s(s), _t0(std::chrono::steady_clock::now())
  {}

  void tick()
  {
    ++_s.nodes;
    if (_b.max_nodes && _s.nodes > _b.max_nodes)
      throw BudgetExhausted{};
    if (_b.max_ms && (_s.nodes & 1023u) == 0) {
      auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                    std::chrono::steady_clock::now() - _t0)
                    .count();
      if (ms > _b.max_ms)
        throw BudgetExhausted{};
    }
  }

private:
  Budget _b;
  SearchStats &_s;
  std::chrono::steady_clock::time_point _t0;
};

// Candidates at a level ordered by the image they give the base point.
std::vector<std::pair<Point, std::size_t>> candidates(StabLevel const &l, Perm const &p)
{
  std::vector<std::pair<Point, std::size_t>> out;
  out.reserve(l.orbit.size());
  for (std::size_t i = 0; i < l.orbit.size(); ++i)
    out.emplace_back(p[l.orbit[i]], i);
  std::sort(out.begin(), out.end());
  return out;
}

class Searcher
{
public:
  Searcher(std::shared_ptr<StabChain const> g, std::size_t leaf, Constraint &c,
           Meter &m)
      : _g(std::move(g)), _leaf(leaf), _c(c), _m(m), _base(_g->base())
  {}

  std::optional<Perm> dfs(std::size_t j, Perm const &p)
  {
    if (j == _leaf) {
      if (_c.accept(p))
        return p;
      return std::nullopt;
    }
    auto const &l = _g->level(j);
    for (auto [gamma, idx] : candidates(l, p)) {
      _m.tick();
      bool ok = _c.push(j, l.base, gamma);
      std::optional<Perm> r;
      if (ok)
        r = dfs(j + 1, l.trans[idx] * p);
      _c.pop(j);
      if (r)
        return r;
    }
    return std::nullopt;
  }

  void identity_path(std::size_t i)
  {
    if (i == _leaf)
      return;
    auto const &l = _g->level(i);
    _m.tick();
    if (_c.push(i, l.base, l.base))
      identity_path(i + 1);
    _c.pop(i);

    std::vector<std::size_t> order(l.orbit.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return l.orbit[a] < l.orbit[b]; });
    for (std::size_t idx : order) {
      Point beta = l.orbit[idx];
      if (beta == l.base || _k->level(i).in_orbit(beta))
        continue;
      _m.tick();
      std::optional<Perm> r;
      if (_c.push(i, l.base, beta))
        r = dfs(i + 1, l.trans[idx]);
      _c.pop(i);
      if (r) {
        _kgens.push_back(std::move(*r));
        rebuild();
      }
    }
  }

  void seed(std::vector<Perm> known)
  {
    _kgens = std::move(known);
    for (auto const &g : _g->gens_at(_leaf))
      _kgens.push_back(g);
    rebuild();
  }

  PermGroup result() const
  {
    return PermGroup(_g->degree(), _kgens, _k->order());
  }

private:
  void rebuild()
  {
    StabChain::Options o;
    o.base_prefix = _base;
    _k = std::make_unique<StabChain>(_g->degree(), _kgens, o);
  }

  std::shared_ptr<StabChain const> _g;
  std::size_t _leaf;
  Constraint &_c;
  Meter &_m;
  std::vector<Point> _base;
  std::vector<Perm> _kgens;
  std::unique_ptr<StabChain> _k;
};

class SetConstraint : public Constraint
{
public:
  SetConstraint(std::size_t degree, std::span<Point const> set) : _in(degree, 0)
  {
    for (Point x : set)
      _in[x] = 1;
  }
  bool push(std::size_t, Point b, Point gamma) override { return _in[b] == _in[gamma]; }
  void pop(std::size_t) override {}

private:
  std::vector<char> _in;
};

// Partial images must extend to an element of a second group whose chain
// shares the searched base.
class MemberConstraint : public Constraint
{
public:
  explicit MemberConstraint(std::shared_ptr<StabChain const> b) : _b(std::move(b))
  {
    _r.emplace_back(Perm(_b->degree()), Perm(_b->degree()));
  }

  bool push(std::size_t level, Point, Point gamma) override
  {
    auto const &[r, rinv] = _r.back();
    bool ok = level < _b->length();
    Point target = rinv[gamma];
    if (ok)
      ok = _b->level(level).in_orbit(target);
    if (!ok) {
      _r.push_back(_r.back());
      _ok.push_back(false);
      return false;
    }
    auto const &l = _b->level(level);
    Perm nr = l.transversal(target) * r;
    Perm ninv = rinv * l.transversal_inv(target);
    _r.emplace_back(std::move(nr), std::move(ninv));
    _ok.push_back(true);
    return true;
  }

  void pop(std::size_t) override
  {
    _r.pop_back();
    _ok.pop_back();
  }

  bool accept(Perm const &x) override { return _b->contains(x); }

private:
  std::shared_ptr<StabChain const> _b;
  std::vector<std::pair<Perm, Perm>> _r;
  std::vector<bool> _ok;
};

std::vector<Point> normalized_set(std::span<Point const> set, std::size_t degree)
{
  std::vector<Point> s(set.begin(), set.end());
  for (Point x : s)
    if (x >= degree)
      throw std::out_of_range("point out of range");
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

} // namespace

std::optional<PermGroup> subgroup_search(std::shared_ptr<StabChain const> chain,
                                         std::size_t leaf_depth, Constraint &c,
                                         std::vector<Perm> known, Budget budget,
                                         SearchStats &stats)
{
  Meter m(budget, stats);
  leaf_depth = std::min(leaf_depth, chain->length());
  Searcher s(std::move(chain), leaf_depth, c, m);
  try {
    s.seed(std::move(known));
    s.identity_path(0);
  } catch (BudgetExhausted const &) {
    stats.exhausted = true;
    return std::nullopt;
  }
  return s.result();
}

std::optional<Perm> find_element(StabChain const &chain, Constraint &c, Budget budget,
                                 SearchStats &stats)
{
  Meter m(budget, stats);
  auto alias = std::shared_ptr<StabChain const>(&chain, [](StabChain const *) {});
  Searcher s(alias, chain.length(), c, m);
  try {
    return s.dfs(0, Perm(chain.degree()));
  } catch (BudgetExhausted const &) {
    stats.exhausted = true;
    return std::nullopt;
  }
}

TransportResult transporter(StabChain const &ch, std::span<Point const> from,
                            std::span<Point const> to)
{
  if (from.size() != to.size())
    throw std::invalid_argument("tuple length mismatch");
  TransportResult res;
  std::vector<Point> d, t;
  for (std::size_t k = 0; k < from.size(); ++k) {
    if (from[k] >= ch.degree() || to[k] >= ch.degree())
      throw std::out_of_range("point out of range");
    auto it = std::find(d.begin(), d.end(), from[k]);
    if (it != d.end()) {
      if (t[it - d.begin()] != to[k])
        return res;
      continue;
    }
    d.push_back(from[k]);
    t.push_back(to[k]);
  }
  Perm r(ch.degree()), rinv(ch.degree());
  for (std::size_t j = 0; j < d.size(); ++j) {
    ++res.nodes;
    if (j >= ch.length() || ch.level(j).base != d[j])
      throw std::logic_error("chain is not based on the source tuple");
    auto const &l = ch.level(j);
    Point target = rinv[t[j]];
    if (!l.in_orbit(target))
      return res;
    r = l.transversal(target) * r;
    rinv = rinv * l.transversal_inv(target);
  }
  res.element = std::move(r);
  return res;
}

TransportResult transporter(PermGroup const &g, std::span<Point const> from,
                            std::span<Point const> to)
{
  if (from.size() != to.size())
    throw std::invalid_argument("tuple length mismatch");
  std::vector<Point> d;
  for (Point x : from) {
    if (x >= g.degree())
      throw std::out_of_range("point out of range");
    if (std::find(d.begin(), d.end(), x) == d.end())
      d.push_back(x);
  }
  auto ch = g.chain_with_base(d);
  return transporter(*ch, from, to);
}

PermGroup setwise_stabilizer(PermGroup const &g, std::span<Point const> set)
{
  auto s = normalized_set(set, g.degree());
  if (s.empty() || s.size() == g.degree() || g.is_trivial())
    return g;
  std::vector<Point> complement;
  std::vector<char> in(g.degree(), 0);
  for (Point x : s)
    in[x] = 1;
  for (Point x = 0; x < g.degree(); ++x)
    if (!in[x])
      complement.push_back(x);
  auto const &prefix = complement.size() < s.size() ? complement : s;
  auto ch = g.chain_with_base(prefix);
  SetConstraint c(g.degree(), s);
  SearchStats stats;
  auto r = subgroup_search(ch, prefix.size(), c, {}, Budget::unlimited(), stats);
  return *r;
}

PermGroup pointwise_stabilizer(PermGroup const &g, std::span<Point const> set)
{
  auto s = normalized_set(set, g.degree());
  if (s.empty() || g.is_trivial())
    return g;
  auto ch = g.chain_with_base(s);
  Order o = 1;
  for (std::size_t k = s.size(); k < ch->length(); ++k)
    o = checked_mul(o, ch->level(k).orbit.size());
  return PermGroup(g.degree(), ch->gens_at(s.size()), o);
}

IntersectionResult intersection(PermGroup const &a, PermGroup const &b, Budget budget)
{
  if (a.degree() != b.degree())
    throw std::invalid_argument("degree mismatch in intersection");
  IntersectionResult res;
  bool a_small = a.order() <= b.order();
  PermGroup const &small = a_small ? a : b;
  PermGroup const &large = a_small ? b : a;
  if (small.order() <= kEnumerationGuard) {
    std::vector<Perm> keep;
    for (auto &x : enumerate(small))
      if (large.contains(x))
        keep.push_back(std::move(x));
    res.group = subgroup_generated(a.degree(), keep);
    res.by_enumeration = true;
    return res;
  }
  auto ach = a.chain_ptr();
  auto bch = b.chain_with_base(ach->base());
  MemberConstraint c(bch);
  res.group = subgroup_search(ach, ach->length(), c, {}, budget, res.stats);
  return res;
}

MapConstraint::MapConstraint(std::size_t degree, std::vector<std::pair<Perm, Perm>> pairs)
    : _degree(degree), _pairs(std::move(pairs)), _map(degree, -1), _rev(degree, -1)
{}

bool MapConstraint::assign(Point p, Point img)
{
  if (_map[p] >= 0)
    return _map[p] == img;
  if (_rev[img] >= 0)
    return false;
  std::size_t head = _trail.size();
  _map[p] = img;
  _rev[img] = p;
  _trail.push_back(p);
  while (head < _trail.size()) {
    Point q = _trail[head++];
    Point iq = static_cast<Point>(_map[q]);
    for (auto const &[a, b] : _pairs) {
      Point p2 = a[q], i2 = b[iq];
      if (_map[p2] >= 0) {
        if (static_cast<Point>(_map[p2]) != i2)
          return false;
        continue;
      }
      if (_rev[i2] >= 0)
        return false;
      _map[p2] = i2;
      _rev[i2] = p2;
      _trail.push_back(p2);
    }
  }
  return true;
}

bool MapConstraint::push(std::size_t, Point b, Point gamma)
{
  _marks.push_back(_trail.size());
  return assign(b, gamma);
}

void MapConstraint::pop(std::size_t)
{
  std::size_t m = _marks.back();
  _marks.pop_back();
  while (_trail.size() > m) {
    Point p = _trail.back();
    _trail.pop_back();
    _rev[_map[p]] = -1;
    _map[p] = -1;
  }
}

bool MapConstraint::accept(Perm const &x)
{
  Perm xi = x.inverse();
  for (auto const &[a, b] : _pairs)
    if (xi * a * x != b)
      return false;
  return true;
}

PermGroup centralizer(PermGroup const &g, std::span<Perm const> elements)
{
  std::vector<std::pair<Perm, Perm>> pairs;
  for (auto const &e : elements)
    pairs.emplace_back(e, e);
  MapConstraint c(g.degree(), std::move(pairs));
  auto ch = g.chain_ptr();
  SearchStats stats;
  return *subgroup_search(ch, ch->length(), c, {}, Budget::unlimited(), stats);
}

std::optional<Perm> conjugating_element(PermGroup const &g, Perm const &from, Perm const &to)
{
  auto type = [](Perm const &p) {
    std::vector<std::size_t> t;
    for (auto const &c : p.cycles())
      t.push_back(c.size());
    std::sort(t.begin(), t.end());
    return t;
  };
  if (from.degree() != to.degree() || type(from) != type(to))
    return std::nullopt;
  MapConstraint c(g.degree(), {{from, to}});
  SearchStats stats;
  return find_element(g.chain(), c, Budget::unlimited(), stats);
}

PermGroup normalizer_of_cyclic(PermGroup const &g, Perm const &x)
{
  std::uint64_t n = x.order();
  Perm const xs[] = {x};
  PermGroup c = centralizer(g, xs);
  std::set<std::uint64_t> units{1 % n};
  std::vector<Perm> gens = c.generators();
  for (std::uint64_t k = 2; k < n; ++k) {
    if (std::gcd(k, n) != 1 || units.count(k))
      continue;
    auto y = conjugating_element(g, x, x.pow(static_cast<long long>(k)));
    if (!y)
      continue;
    gens.push_back(*y);
    bool grew = true;
    units.insert(k);
    while (grew) {
      grew = false;
      std::vector<std::uint64_t> cur(units.begin(), units.end());
      for (auto u : cur)
        for (auto v : cur)
          grew |= units.insert((u * v) % n).second;
    }
  }
  return PermGroup(g.degree(), std::move(gens), checked_mul(c.order(), units.size()));
}

} // namespace relcx
