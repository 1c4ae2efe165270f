#include "relcx/binary.h"

#include <algorithm>
#include <chrono>
#include <map>
#include <numeric>
#include <random>
#include <unordered_map>

namespace relcx
{

namespace
{

void index_subsets(std::size_t m, std::size_t r, IndexSet &cur, std::vector<IndexSet> &out)
{
  if (cur.size() == r) {
    out.push_back(cur);
    return;
  }
  std::size_t from = cur.empty() ? 0 : cur.back() + 1;
  for (std::size_t x = from; x + (r - cur.size()) <= m; ++x) {
    cur.push_back(x);
    index_subsets(m, r, cur, out);
    cur.pop_back();
  }
}

std::vector<IndexSet> index_subsets(std::size_t m, std::size_t r)
{
  std::vector<IndexSet> out;
  IndexSet cur;
  index_subsets(m, r, cur, out);
  return out;
}

bool carries(Perm const &p, std::span<Point const> i, std::span<Point const> j,
             IndexSet const &idx)
{
  return std::all_of(idx.begin(), idx.end(), [&](std::size_t k) { return p[i[k]] == j[k]; });
}

std::int64_t ms_since(std::chrono::steady_clock::time_point t0)
{
  return std::chrono::duration_cast<std::chrono::milliseconds>(
             std::chrono::steady_clock::now() - t0)
      .count();
}

} // namespace

SubtupleCheck r_subtuple_complete(PermGroup const &g, std::span<Point const> i,
                                  std::span<Point const> j, std::size_t r)
{
  if (i.size() != j.size())
    throw std::invalid_argument("tuple length mismatch");
  if (r == 0 || r > i.size())
    throw std::invalid_argument("subtuple size out of range");
  SubtupleCheck out;
  for (auto const &idx : index_subsets(i.size(), r)) {
    std::vector<Point> a, b;
    for (auto k : idx) {
      a.push_back(i[k]);
      b.push_back(j[k]);
    }
    auto t = transporter(g, a, b);
    if (!t.element) {
      out.failing = idx;
      out.transporters.clear();
      return out;
    }
    out.transporters.emplace_back(idx, std::move(*t.element));
  }
  out.complete = true;
  return out;
}

bool validate_witness(PermGroup const &g, WitnessCertificate const &c)
{
  if (c.i.size() != c.j.size() || c.level == 0 || c.level > c.i.size())
    return false;
  auto need = index_subsets(c.i.size(), c.level);
  std::vector<IndexSet> have;
  for (auto const &[idx, p] : c.transporters) {
    if (p.degree() != g.degree() || !g.contains(p) || !carries(p, c.i, c.j, idx))
      return false;
    have.push_back(idx);
  }
  std::sort(have.begin(), have.end());
  if (have != need)
    return false;
  if (c.refutation.mode != "transporter")
    return false;
  auto t = transporter(g, c.i, c.j);
  return !t.element && t.nodes == c.refutation.nodes;
}

std::optional<std::pair<Perm, Perm>> product_member(PermGroup const &a, PermGroup const &b,
                                                    Perm const &g)
{
  if (b.order() <= a.order()) {
    for (auto const &y : enumerate(b)) {
      Perm x = g * y.inverse();
      if (a.contains(x))
        return std::pair{x, y};
    }
  } else {
    for (auto const &x : enumerate(a)) {
      Perm y = x.inverse() * g;
      if (b.contains(y))
        return std::pair{x, y};
    }
  }
  return std::nullopt;
}

WitnessCertificate lemma_aux_witness(PermGroup const &g, Point w0, Point w1, Point w2,
                                     Perm const &x)
{
  auto stab = [&](Point w) { return pointwise_stabilizer(g, std::span<Point const>(&w, 1)); };
  auto g0 = stab(w0), g1 = stab(w1), g2 = stab(w2);
  auto meet = intersection(g0, g1);
  if (!meet.group)
    throw PreconditionError("G_w0 ∩ G_w1 could not be decided");
  if (!meet.group->is_trivial() && meet.group->order() != 1)
    throw PreconditionError("G_w0 ∩ G_w1 is not trivial");
  if (!g.contains(x) || x[w0] != w0)
    throw PreconditionError("g does not fix w0");
  if (x[w2] == w2)
    throw PreconditionError("g stabilizes w2");
  auto f = product_member(g2, g1, x);
  if (!f)
    throw PreconditionError("g is not in G_w2 G_w1");

  WitnessCertificate c;
  c.i = {w0, w1, w2};
  c.j = {w0, w1, x[w2]};
  c.transporters = {{{0, 1}, Perm(g.degree())}, {{0, 2}, x}, {{1, 2}, f->second}};
  auto t = transporter(g, c.i, c.j);
  if (t.element)
    throw std::logic_error("lemma hypotheses hold but the triples are transportable");
  c.refutation = {"transporter", 0, t.nodes};
  return c;
}

namespace
{

bool same_subgroup(PermGroup const &a, PermGroup const &b)
{
  return a.order() == b.order() && a.contains(b);
}

ModelCertificate evaluate_model(PermGroup const &g, PermGroup const &h0, PermGroup const &h1,
                                PermGroup const &h2, Perm const &x)
{
  for (auto const *h : {&h0, &h1, &h2})
    if (!g.contains(*h))
      throw PreconditionError("a point stabilizer is not a subgroup of G");
  ModelCertificate c{h0, h1, h2, x, Perm(g.degree()), Perm(g.degree()), false, false, false, false, false, {}};
  auto m01 = intersection(h0, h1), m02 = intersection(h0, h2);
  c.h0_h1_trivial = m01.group && m01.group->order() == 1;
  c.h0_h2_trivial = m02.group && m02.group->order() == 1;
  c.g_in_h0 = h0.contains(x);
  c.g_not_in_h2 = !h2.contains(x);
  if (auto f = product_member(h2, h1, x)) {
    c.g_in_h2h1 = true;
    c.x = f->first;
    c.y = f->second;
  }
  c.transporters = {{{0, 1}, Perm(g.degree())}, {{0, 2}, x}, {{1, 2}, c.y}};
  return c;
}

} // namespace

ModelCertificate lemma_aux_witness_stabilizer_model(PermGroup const &g, PermGroup const &h0,
                                                    PermGroup const &h1, PermGroup const &h2,
                                                    Perm const &x)
{
  auto c = evaluate_model(g, h0, h1, h2, x);
  if (!c.h0_h1_trivial)
    throw PreconditionError("H0 ∩ H1 is not trivial");
  if (!c.g_in_h0)
    throw PreconditionError("g is not in H0");
  if (!c.g_not_in_h2)
    throw PreconditionError("g ∈ H2");
  if (!c.g_in_h2h1)
    throw PreconditionError("g is not in H2 H1");
  return c;
}

bool validate_model(PermGroup const &g, ModelCertificate const &c)
{
  auto r = evaluate_model(g, c.h0, c.h1, c.h2, c.g);
  if (!(r.h0_h1_trivial && r.g_in_h0 && r.g_not_in_h2 && r.g_in_h2h1))
    return false;
  // The stored factorisation, and the three pair images it induces.
  if (c.x * c.y != c.g || !c.h2.contains(c.x) || !c.h1.contains(c.y))
    return false;
  auto h2g = conjugate(c.h2, c.g);
  return same_subgroup(conjugate(c.h0, c.g), c.h0) &&
         same_subgroup(conjugate(c.h1, c.y), c.h1) &&
         same_subgroup(conjugate(c.h2, c.y), h2g) && !same_subgroup(h2g, c.h2);
}

std::optional<WitnessCertificate> forbidden_config_size6(PermGroup const &on_lambda)
{
  if (on_lambda.degree() != 6)
    throw std::invalid_argument("forbidden configuration needs |Λ| = 6");
  Perm f = parse_cycles("(1 2)(3 4)", 6), g = parse_cycles("(1 2)(5 6)", 6),
       h = parse_cycles("(1 2)", 6);
  if (!on_lambda.contains(f) || !on_lambda.contains(g) || on_lambda.contains(h))
    return std::nullopt;
  WitnessCertificate c;
  c.i = {0, 1, 2, 3, 4, 5};
  c.j = {1, 0, 2, 3, 4, 5};
  auto sub = r_subtuple_complete(on_lambda, c.i, c.j, 2);
  if (!sub.complete)
    throw std::logic_error("size-6 configuration is not 2-subtuple complete");
  c.transporters = std::move(sub.transporters);
  auto t = transporter(on_lambda, c.i, c.j);
  c.refutation = {"transporter", 0, t.nodes};
  return c;
}

namespace
{

struct Exhausted
{};

// Orbit partitions of point stabilizers G_p, obtained by conjugating the
// partition of a stabilizer of the orbit representative.
class StabilizerClasses
{
public:
  explicit StabilizerClasses(PermGroup const &g) : _g(g), _rep(g.degree(), 0)
  {
    auto ids = orbit_partition(g.generators(), g.degree());
    std::vector<std::int64_t> first(g.degree(), -1);
    for (Point x = 0; x < g.degree(); ++x) {
      if (first[ids[x]] < 0) {
        first[ids[x]] = x;
        _trees.emplace(x, SchreierOrbit(g.generators(), g.degree(), x));
      }
      _rep[x] = static_cast<Point>(first[ids[x]]);
    }
  }

  PermGroup const &stabilizer_of_rep(Point r)
  {
    auto it = _stab.find(r);
    if (it == _stab.end())
      it = _stab.emplace(r, pointwise_stabilizer(_g, std::span<Point const>(&r, 1))).first;
    return it->second;
  }

  // t maps the representative of p's orbit to p.
  Perm const &to(Point p)
  {
    auto it = _to.find(p);
    if (it == _to.end())
      it = _to.emplace(p, _trees.at(_rep[p]).element_to(p)).first;
    return it->second;
  }

  std::vector<std::uint32_t> const &classes(Point p)
  {
    auto it = _cls.find(p);
    if (it != _cls.end())
      return it->second;
    Point r = _rep[p];
    auto const &s = stabilizer_of_rep(r);
    auto base = orbit_partition(s.generators(), _g.degree());
    Perm const &t = to(p);
    std::vector<std::uint32_t> out(_g.degree());
    for (Point x = 0; x < _g.degree(); ++x)
      out[t[x]] = base[x];
    return _cls.emplace(p, std::move(out)).first->second;
  }

  // u in G_p with a^u = b, where b lies in a's G_p-orbit.
  Perm mover(Point p, Point a, Point b)
  {
    Perm const &t = to(p);
    Perm ti = t.inverse();
    SchreierOrbit o(stabilizer_of_rep(_rep[p]).generators(), _g.degree(), ti[a]);
    Perm w = o.element_to(ti[b]);
    return ti * w * t;
  }

private:
  PermGroup const &_g;
  std::vector<Point> _rep;
  std::map<Point, SchreierOrbit> _trees;
  std::map<Point, PermGroup> _stab;
  std::map<Point, Perm> _to;
  std::map<Point, std::vector<std::uint32_t>> _cls;
};

class PrefixScan
{
public:
  PrefixScan(PermGroup const &g, Budget b, bool reduce)
      : _g(g), _budget(b), _reduce(reduce), _cls(g), _t0(std::chrono::steady_clock::now())
  {}

  std::optional<WitnessCertificate> run(std::size_t k)
  {
    _target = k;
    std::vector<Point> p;
    return step(p, _g);
  }

  std::uint64_t prefixes = 0;

private:
  void tick()
  {
    ++prefixes;
    if (_budget.max_nodes && prefixes > _budget.max_nodes)
      throw Exhausted{};
    if (_budget.max_ms && ms_since(_t0) > _budget.max_ms)
      throw Exhausted{};
  }

  std::optional<WitnessCertificate> step(std::vector<Point> &p, PermGroup const &h)
  {
    if (p.size() == _target)
      return test(p, h);
    auto ids = orbit_partition(h.generators(), _g.degree());
    std::vector<char> done(_g.degree(), 0);
    for (Point x = 0; x < _g.degree(); ++x) {
      if (std::find(p.begin(), p.end(), x) != p.end())
        continue;
      if (_reduce) {
        if (done[ids[x]])
          continue;
        done[ids[x]] = 1;
      }
      tick();
      auto next = pointwise_stabilizer(h, std::span<Point const>(&x, 1));
      p.push_back(x);
      auto r = step(p, next);
      p.pop_back();
      if (r)
        return r;
    }
    return std::nullopt;
  }

  // A witness (P+a, P+b) exists iff some class of the common refinement of
  // the G_{P_i}-orbit partitions splits into several orbits of G_(P).
  std::optional<WitnessCertificate> test(std::vector<Point> const &p, PermGroup const &h)
  {
    std::size_t n = _g.degree();
    auto horb = orbit_partition(h.generators(), n);
    std::vector<std::uint64_t> key(n, 0);
    for (Point q : p) {
      auto const &c = _cls.classes(q);
      std::unordered_map<std::uint64_t, std::uint64_t> renum;
      for (Point x = 0; x < n; ++x) {
        std::uint64_t pair = key[x] * n + c[x];
        key[x] = renum.emplace(pair, renum.size()).first->second;
      }
    }
    std::unordered_map<std::uint64_t, Point> first;
    for (Point x = 0; x < n; ++x) {
      auto [it, fresh] = first.emplace(key[x], x);
      if (fresh || horb[it->second] == horb[x])
        continue;
      return certificate(p, it->second, x);
    }
    return std::nullopt;
  }

  WitnessCertificate certificate(std::vector<Point> const &p, Point a, Point b)
  {
    WitnessCertificate c;
    c.i = p;
    c.i.push_back(a);
    c.j = p;
    c.j.push_back(b);
    std::size_t k = p.size();
    for (std::size_t s = 0; s <= k; ++s)
      for (std::size_t t = s + 1; t <= k; ++t) {
        if (t < k)
          c.transporters.push_back({{s, t}, Perm(_g.degree())});
        else
          c.transporters.push_back({{s, t}, _cls.mover(p[s], a, b)});
      }
    auto tr = transporter(_g, c.i, c.j);
    c.refutation = {"transporter", 0, tr.nodes};
    c.search_nodes = prefixes;
    c.search_ms = ms_since(_t0);
    return c;
  }

  PermGroup const &_g;
  Budget _budget;
  bool _reduce;
  StabilizerClasses _cls;
  std::chrono::steady_clock::time_point _t0;
  std::size_t _target = 0;
};

} // namespace

BinaryCheck exhaustive_binary_check(PermGroup const &g, std::size_t max_len, Budget budget,
                                    bool reduce)
{
  BinaryCheck out;
  out.max_len = max_len;
  PrefixScan scan(g, budget, reduce);
  try {
    for (std::size_t len = 2; len <= std::min(max_len, g.degree() + 1); ++len) {
      if (auto w = scan.run(len - 1)) {
        out.verdict = BinaryVerdict::witness;
        out.witness = std::move(w);
        break;
      }
    }
  } catch (Exhausted const &) {
    out.verdict = BinaryVerdict::budget_exhausted;
  }
  out.prefixes = scan.prefixes;
  return out;
}

std::optional<WitnessCertificate> witness_search(PermGroup const &g, WitnessStrategy s,
                                                 std::uint64_t seed, Budget budget,
                                                 std::size_t max_len, SearchStats *stats)
{
  auto t0 = std::chrono::steady_clock::now();
  if (s == WitnessStrategy::orbit_scan) {
    auto r = exhaustive_binary_check(g, max_len, budget);
    if (stats) {
      stats->nodes = r.prefixes;
      stats->exhausted = r.verdict == BinaryVerdict::budget_exhausted;
    }
    if (r.witness)
      r.witness->refutation.seed = seed;
    return r.witness;
  }

  // Lemma-auxiliary scan: w0 over orbit representatives, w1 with a
  // regular two-point stabilizer, w2 and g sampled from G_w0.
  std::size_t n = g.degree();
  std::mt19937_64 rng(seed);
  std::uint64_t nodes = 0;
  auto over = [&] {
    ++nodes;
    return (budget.max_nodes && nodes > budget.max_nodes) ||
           (budget.max_ms && ms_since(t0) > budget.max_ms);
  };
  auto ids = orbit_partition(g.generators(), n);
  std::vector<char> seen(n, 0);
  for (Point w0 = 0; w0 < n; ++w0) {
    if (seen[ids[w0]])
      continue;
    seen[ids[w0]] = 1;
    auto g0 = pointwise_stabilizer(g, std::span<Point const>(&w0, 1));
    auto ids0 = orbit_partition(g0.generators(), n);
    std::vector<char> seen0(n, 0);
    for (Point w1 = 0; w1 < n; ++w1) {
      if (w1 == w0 || seen0[ids0[w1]])
        continue;
      seen0[ids0[w1]] = 1;
      auto g01 = pointwise_stabilizer(g0, std::span<Point const>(&w1, 1));
      if (g01.order() != 1)
        continue;
      auto g1 = pointwise_stabilizer(g, std::span<Point const>(&w1, 1));
      auto chain0 = g0.chain_ptr();
      for (int sample = 0; sample < 64; ++sample) {
        if (over()) {
          if (stats)
            *stats = {nodes, true};
          return std::nullopt;
        }
        Perm x = chain0->random_element(rng);
        for (Point w2 = 0; w2 < n; ++w2) {
          if (x[w2] == w2)
            continue;
          auto o = orbit(g1, w2);
          if (!std::binary_search(o.begin(), o.end(), x[w2]))
            continue;
          auto c = lemma_aux_witness(g, w0, w1, w2, x);
          c.refutation.seed = seed;
          c.search_nodes = nodes;
          c.search_ms = ms_since(t0);
          if (stats)
            *stats = {nodes, false};
          return c;
        }
      }
    }
  }
  if (stats)
    *stats = {nodes, false};
  return std::nullopt;
}

} // namespace relcx
