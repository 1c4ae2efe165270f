#include "relcx/beautiful.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <numeric>
#include <random>
#include <set>
#include <thread>

#include "relcx/actions.h"

namespace relcx
{

namespace
{

// o < k!/2, without forming k! when it would overflow.
bool below_half_factorial(Order o, std::size_t k)
{
  if (k < 2)
    return false;
  Order f = 1;
  for (std::size_t i = 3; i <= k; ++i) {
    if (f > o)
      return true;
    f *= i;
  }
  return o < f;
}

std::vector<Point> sorted_set(std::span<Point const> s)
{
  std::vector<Point> v(s.begin(), s.end());
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

std::string verdict_clause(InducedData const &d, std::size_t k)
{
  if (k < 5)
    return "|Λ| < 5";
  if (d.pair_orbit_count != 1)
    return "induced group is not 2-transitive";
  if (!below_half_factorial(d.induced_order, k))
    return "induced group contains Alt(Λ)";
  return {};
}

} // namespace

InducedData induced_data(PermGroup const &g, std::span<Point const> lambda)
{
  auto r = restrict_to(g, lambda);
  InducedData d;
  d.stabilizer_gens = r.setwise.generators();
  d.setwise_order = r.setwise.order();
  d.kernel_order = r.kernel.order();
  d.induced_order = r.induced.order();
  d.pair_orbit_count = r.points.size() < 2
                           ? 0
                           : pair_orbit_count(r.induced.generators(), r.points.size());
  return d;
}

BeautyCheck is_beautiful(PermGroup const &g, std::span<Point const> lambda)
{
  BeautyCheck out;
  auto l = sorted_set(lambda);
  if (l.size() < 5) {
    out.failed = "|Λ| < 5";
    return out;
  }
  auto d = induced_data(g, l);
  out.failed = verdict_clause(d, l.size());
  if (out.failed.empty())
    out.certificate = BeautifulCertificate{l, std::move(d), std::nullopt};
  return out;
}

BeautyCheck is_S_beautiful(PermGroup const &g, PermGroup const &socle,
                           std::span<Point const> lambda)
{
  if (socle.degree() != g.degree() || !g.contains(socle))
    throw std::invalid_argument("socle generators do not lie in G");
  BeautyCheck out;
  auto l = sorted_set(lambda);
  if (l.size() < 5) {
    out.failed = "|Λ| < 5";
    return out;
  }
  auto s = induced_data(socle, l);
  out.failed = verdict_clause(s, l.size());
  if (out.failed.empty())
    out.certificate = BeautifulCertificate{l, induced_data(g, l), std::move(s)};
  return out;
}

bool validate_beautiful(PermGroup const &g, BeautifulCertificate const &c,
                        PermGroup const *socle)
{
  auto same = [](InducedData const &a, InducedData const &b) {
    return a.setwise_order == b.setwise_order && a.kernel_order == b.kernel_order &&
           a.induced_order == b.induced_order && a.pair_orbit_count == b.pair_orbit_count;
  };
  auto d = induced_data(g, c.lambda);
  if (!same(d, c.group))
    return false;
  std::vector<char> in(g.degree(), 0);
  for (Point x : c.lambda)
    in[x] = 1;
  for (auto const &s : c.group.stabilizer_gens) {
    if (!g.contains(s))
      return false;
    for (Point x : c.lambda)
      if (!in[s[x]])
        return false;
  }
  if (socle) {
    if (!c.socle)
      return false;
    auto s = induced_data(*socle, c.lambda);
    return same(s, *c.socle) && verdict_clause(s, c.lambda.size()).empty();
  }
  return verdict_clause(d, c.lambda.size()).empty();
}

std::vector<Point> mask_points(std::uint32_t mask)
{
  std::vector<Point> out;
  for (Point x = 0; mask; ++x, mask >>= 1)
    if (mask & 1u)
      out.push_back(x);
  return out;
}

ExhaustiveScan exhaustive_beautiful_search(PermGroup const &g, std::size_t min_size,
                                           std::size_t max_size, unsigned threads)
{
  std::size_t n = g.degree();
  if (n > kScanDegreeGuard)
    throw std::length_error("exhaustive subset scan needs degree <= 16");
  min_size = std::max<std::size_t>(min_size, 5);
  max_size = std::min(max_size, n);

  auto elems = enumerate(g);
  std::size_t m = elems.size();
  // Byte lookup tables: image of the bits of one byte of a mask.
  std::vector<std::uint16_t> lo(m * 256), hi(m * 256);
  std::vector<std::uint16_t> fixed(m, 0);
  std::vector<std::vector<Point>> img(m);
  for (std::size_t e = 0; e < m; ++e) {
    for (unsigned b = 0; b < 256; ++b) {
      std::uint16_t a = 0, c = 0;
      for (unsigned bit = 0; bit < 8; ++bit) {
        if (!(b >> bit & 1u))
          continue;
        if (bit < n)
          a |= static_cast<std::uint16_t>(1u << elems[e][bit]);
        if (bit + 8 < n)
          c |= static_cast<std::uint16_t>(1u << elems[e][bit + 8]);
      }
      lo[e * 256 + b] = a;
      hi[e * 256 + b] = c;
    }
    for (Point x = 0; x < n; ++x)
      if (elems[e][x] == x)
        fixed[e] |= static_cast<std::uint16_t>(1u << x);
    auto im = elems[e].images();
    img[e].assign(im.begin(), im.end());
  }

  std::uint32_t total = 1u << n;
  std::uint32_t nchunks = std::min<std::uint32_t>(total, 256);
  std::uint32_t width = total / nchunks;
  ExhaustiveScan out;
  out.chunks.resize(nchunks);
  std::vector<std::vector<std::pair<std::uint32_t, Order>>> found(nchunks);

  auto scan_chunk = [&](std::uint32_t c) {
    ScanChunk rec{c * width, c * width + width - 1, 0, 0};
    std::vector<std::size_t> stab;
    std::vector<std::size_t> parent;
    for (std::uint32_t mask = rec.first;; ++mask) {
      ++rec.scanned;
      std::size_t k = static_cast<std::size_t>(__builtin_popcount(mask));
      if (k >= min_size && k <= max_size) {
        stab.clear();
        std::size_t kernel = 0;
        for (std::size_t e = 0; e < m; ++e) {
          std::uint32_t im = lo[e * 256 + (mask & 255u)] | hi[e * 256 + (mask >> 8 & 255u)];
          if (im != mask)
            continue;
          stab.push_back(e);
          if ((fixed[e] & mask) == mask)
            ++kernel;
        }
        Order ind = stab.size() / kernel;
        if (ind % (k * (k - 1)) == 0 && below_half_factorial(ind, k)) {
          auto pts = mask_points(mask);
          std::vector<int> pos(n, -1);
          for (std::size_t i = 0; i < k; ++i)
            pos[pts[i]] = static_cast<int>(i);
          parent.resize(k * k);
          std::iota(parent.begin(), parent.end(), std::size_t{0});
          auto find = [&](std::size_t x) {
            while (parent[x] != x)
              x = parent[x] = parent[parent[x]];
            return x;
          };
          for (auto e : stab)
            for (std::size_t a = 0; a < k; ++a)
              for (std::size_t b = 0; b < k; ++b) {
                if (a == b)
                  continue;
                std::size_t u = find(a * k + b);
                std::size_t v = find(pos[img[e][pts[a]]] * k + pos[img[e][pts[b]]]);
                if (u != v)
                  parent[u] = v;
              }
          std::size_t classes = 0;
          for (std::size_t a = 0; a < k; ++a)
            for (std::size_t b = 0; b < k; ++b)
              if (a != b && find(a * k + b) == a * k + b)
                ++classes;
          if (classes == 1) {
            found[c].emplace_back(mask, ind);
            ++rec.found;
          }
        }
      }
      if (mask == rec.last)
        break;
    }
    out.chunks[c] = rec;
  };

  std::atomic<std::uint32_t> next{0};
  auto worker = [&] {
    for (std::uint32_t c; (c = next++) < nchunks;)
      scan_chunk(c);
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < std::max(1u, threads); ++t)
    pool.emplace_back(worker);
  worker();
  for (auto &t : pool)
    t.join();

  std::uint64_t covered = 0;
  bool tiled = true;
  for (std::uint32_t c = 0; c < nchunks; ++c) {
    tiled &= out.chunks[c].first == c * width && out.chunks[c].scanned == width;
    covered += out.chunks[c].scanned;
    out.found.insert(out.found.end(), found[c].begin(), found[c].end());
  }
  for (std::size_t k = min_size; k <= max_size; ++k)
    out.subsets_in_range += static_cast<std::uint64_t>(binomial(static_cast<unsigned>(n),
                                                                static_cast<unsigned>(k)));
  out.complete = tiled && covered == total;
  return out;
}

namespace
{

struct Clock
{
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  std::int64_t ms() const
  {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now() - t0)
        .count();
  }
};

bool is_prime(std::uint64_t p)
{
  if (p < 2)
    return false;
  for (std::uint64_t d = 2; d * d <= p; ++d)
    if (p % d == 0)
      return false;
  return true;
}

std::uint64_t mult_order(std::uint64_t e, std::uint64_t t)
{
  std::uint64_t x = e % t, k = 1;
  while (x != 1 && k < t) {
    x = x * e % t;
    ++k;
  }
  return x == 1 ? k : 0;
}

// Exponent i with a = g^i, or 0.
std::uint64_t power_index(Perm const &g, Perm const &a, std::uint64_t ord)
{
  Perm p = g;
  for (std::uint64_t i = 1; i < ord; ++i, p *= g)
    if (p == a)
      return i;
  return 0;
}

} // namespace

std::optional<BeautifulCertificate> orbit_beautiful_search(PermGroup const &g,
                                                           PoolSpec const &pool,
                                                           std::uint64_t seed, Budget budget,
                                                           OrbitSearchStats *stats)
{
  Clock clock;
  OrbitSearchStats local;
  OrbitSearchStats &st = stats ? *stats : local;
  std::size_t n = g.degree();
  std::set<std::vector<Point>> tried;
  auto over = [&] {
    return (budget.max_ms && clock.ms() > budget.max_ms) ||
           (budget.max_nodes && st.candidates > budget.max_nodes);
  };

  std::optional<BeautifulCertificate> hit;
  auto consider = [&](std::vector<Point> l, bool close) -> bool {
    if (l.size() < pool.min_size || l.size() > pool.max_size || !tried.insert(l).second)
      return false;
    ++st.candidates;
    auto r = is_beautiful(g, l);
    if (r.certificate) {
      hit = std::move(r.certificate);
      return true;
    }
    if (!close || !pool.closure)
      return false;
    // Orbits of the set stabilizer of a failed candidate.
    auto sw = setwise_stabilizer(g, l);
    auto ids = orbit_partition(sw.generators(), n);
    std::vector<std::vector<Point>> orbs(*std::max_element(ids.begin(), ids.end()) + 1);
    for (Point x = 0; x < n; ++x)
      orbs[ids[x]].push_back(x);
    for (auto &o : orbs) {
      if (o.size() < pool.min_size || o.size() > pool.max_size || !tried.insert(o).second)
        continue;
      ++st.candidates;
      auto rr = is_beautiful(g, o);
      if (rr.certificate) {
        hit = std::move(rr.certificate);
        return true;
      }
    }
    return false;
  };
  auto orbits_of = [&](std::vector<Perm> const &gens) -> bool {
    ++st.subgroups;
    auto ids = orbit_partition(gens, n);
    std::vector<std::vector<Point>> orbs(ids.empty() ? 0 : *std::max_element(ids.begin(), ids.end()) + 1);
    for (Point x = 0; x < n; ++x)
      orbs[ids[x]].push_back(x);
    for (auto &o : orbs) {
      if (over()) {
        st.exhausted = true;
        return true;
      }
      if (consider(std::move(o), true))
        return true;
    }
    return false;
  };

  if (orbits_of(g.generators()))
    return hit;
  for (auto const &gens : pool.extra)
    if (orbits_of(gens))
      return hit;

  std::mt19937_64 rng(seed);
  auto const &ch = g.chain();
  std::set<Perm> seen;
  for (unsigned s = 0; s < pool.samples; ++s) {
    if (over()) {
      st.exhausted = true;
      return std::nullopt;
    }
    Perm x = ch.random_element(rng);
    std::uint64_t o = x.order();
    if (o < 2)
      continue;
    // x and its prime-order powers.
    std::vector<Perm> cyc{x};
    for (std::uint64_t p = 2; p <= o; ++p)
      if (o % p == 0 && is_prime(p) && p != o)
        cyc.push_back(x.pow(static_cast<long long>(o / p)));
    for (auto const &c : cyc) {
      if (!seen.insert(c).second)
        continue;
      if (orbits_of({c}))
        return hit;
      if (pool.centralizers) {
        Perm const cs[] = {c};
        if (orbits_of(centralizer(g, cs).generators()))
          return hit;
      }
      std::uint64_t t = c.order();
      bool frob = pool.frobenius && (t == 5 || t == 7);
      if (!pool.normalizers && !frob)
        continue;
      auto nz = normalizer_of_cyclic(g, c);
      if (pool.normalizers && orbits_of(nz.generators()))
        return hit;
      if (!frob)
        continue;
      // h of order t-1 acting on <c> by a primitive root.
      auto const &nch = nz.chain();
      std::mt19937_64 r2(seed ^ t);
      for (int tries = 0; tries < 64; ++tries) {
        Perm y = nch.random_element(r2);
        std::uint64_t oy = y.order();
        if (oy % (t - 1))
          continue;
        Perm h = y.pow(static_cast<long long>(oy / (t - 1)));
        std::uint64_t e = power_index(c, conjugate(c, h), t);
        if (e == 0 || mult_order(e, t) != t - 1)
          continue;
        if (orbits_of({c, h}))
          return hit;
        break;
      }
    }
  }
  return hit;
}

FrobeniusVerdict frobenius_beautiful(PermGroup const &g, PermGroup const &m,
                                     FrobeniusCandidate const &c, std::size_t guard)
{
  FrobeniusVerdict v;
  std::size_t n = g.degree();
  auto fail = [&](std::string msg) {
    v.outcome = FrobeniusOutcome::precondition_failure;
    v.message = std::move(msg);
    return v;
  };
  if (c.t < 3)
    return fail("t < 3");
  if (!g.contains(m))
    return fail("M is not a subgroup of G");
  if (!m.contains(c.h))
    return fail("h is not in M");
  if (c.h.order() != c.t - 1)
    return fail("h does not have order t-1");
  if (!g.contains(c.g))
    return fail("g is not in G");
  if (m.contains(c.g))
    return fail("g lies in M");
  if (c.g.order() != c.t)
    return fail("g does not have order t");
  v.fix_g = fixed_point_count(c.g);
  if (v.fix_g + c.k != n)
    return fail("fix(g) is not n-k");
  std::uint64_t e = power_index(c.g, conjugate(c.g, c.h), c.t);
  if (e == 0)
    return fail("h does not normalize <g>");
  if (mult_order(e, c.t) != c.t - 1)
    return fail("<h> does not act fixed-point-freely on <g>");
  PermGroup k(n, {c.g, c.h});
  v.k_order = k.order();
  if (v.k_order != static_cast<Order>(c.t) * (c.t - 1))
    return fail("|K| is not t(t-1)");

  auto meet = intersection(k, m);
  v.k_meet_m_order = meet.group->order();
  PermGroup hh(n, {c.h});
  if (v.k_meet_m_order != c.t - 1 || !meet.group->contains(hh))
    return fail("K ∩ M is not <h>");
  auto delta = coset_action(k, *meet.group);
  v.delta_size = delta.degree();
  v.k_sharply_2_transitive = delta.degree() == c.t && is_2_transitive(delta.group) &&
                             delta.group.order() == v.k_order;
  if (!v.k_sharply_2_transitive)
    return fail("K is not sharply 2-transitive on Δ");

  if (m.order() > guard) {
    v.outcome = FrobeniusOutcome::inconclusive;
    v.message = "M too large to scan for the alternative";
    return v;
  }
  for (auto const &f : enumerate(m, guard)) {
    ++v.scanned;
    if (f.is_identity() || f.order() % 3)
      continue;
    if (fixed_point_count(f) + 2 * c.k >= n) {
      v.outcome = FrobeniusOutcome::alternative;
      v.f = f;
      v.message = "M has an element of order divisible by 3 with fix >= n-2k";
      return v;
    }
  }
  v.outcome = FrobeniusOutcome::beautiful;
  v.message = "Δ = ω0^K is G-beautiful of size " + std::to_string(c.t);
  return v;
}

StabsCheck check_lemma_stabs(PermGroup const &g, PermGroup const &h, Point w)
{
  StabsCheck out;
  out.lambda = orbit(h, w);
  auto m = pointwise_stabilizer(g, std::span<Point const>(&w, 1));
  auto cm = centralizer(m, h.generators());
  auto fix = pointwise_stabilizer(g, out.lambda);
  auto sw = setwise_stabilizer(g, out.lambda);
  out.centralizer_fixes = fix.contains(cm);
  out.setwise_normalizes = true;
  for (auto const &s : sw.generators())
    for (auto const &x : fix.generators())
      out.setwise_normalizes &= fix.contains(conjugate(x, s));
  return out;
}

} // namespace relcx
