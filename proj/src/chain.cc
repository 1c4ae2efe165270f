#include "relcx/chain.h"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace relcx
{

std::string to_string(Order n)
{
  if (n == 0)
    return "0";
  std::string s;
  while (n) {
    s.push_back(static_cast<char>('0' + static_cast<int>(n % 10)));
    n /= 10;
  }
  std::reverse(s.begin(), s.end());
  return s;
}

Order checked_mul(Order a, Order b)
{
  if (a != 0 && b > std::numeric_limits<Order>::max() / a)
    throw std::overflow_error("group order overflows 128 bits");
  return a * b;
}

Order factorial(unsigned n)
{
  Order f = 1;
  for (unsigned i = 2; i <= n; ++i)
    f = checked_mul(f, i);
  return f;
}

ProductReplacement::ProductReplacement(std::size_t degree,
                                       std::span<Perm const> gens,
                                       std::uint64_t seed)
    : _acc(degree), _rng(seed)
{
  for (auto const &g : gens)
    _state.push_back(g);
  if (_state.empty())
    _state.push_back(Perm(degree));
  std::size_t base = _state.size();
  while (_state.size() < 10)
    _state.push_back(_state[_state.size() % base]);
  for (int i = 0; i < 60; ++i)
    next();
}

Perm ProductReplacement::next()
{
  std::uniform_int_distribution<std::size_t> pick(0, _state.size() - 1);
  std::size_t s = pick(_rng), t = pick(_rng);
  while (t == s)
    t = pick(_rng);
  bool left = _rng() & 1u;
  bool inv = _rng() & 1u;
  Perm const other = inv ? _state[t].inverse() : _state[t];
  _state[s] = left ? other * _state[s] : _state[s] * other;
  _acc = left ? _state[s] * _acc : _acc * _state[s];
  return _acc;
}

StabChain::StabChain(std::size_t degree, std::span<Perm const> gens,
                     Options opts)
    : _degree(degree)
{
  std::vector<Perm> input;
  for (auto const &g : gens) {
    if (g.degree() != degree)
      throw std::invalid_argument("generator degree mismatch");
    if (!g.is_identity())
      input.push_back(g);
  }

  for (Point b : opts.base_prefix) {
    if (b >= degree)
      throw std::invalid_argument("base point out of range");
    bool dup = std::any_of(_levels.begin(), _levels.end(),
                           [b](StabLevel const &l) { return l.base == b; });
    if (!dup)
      add_level(b);
  }

  if (input.empty()) {
    _verified = true;
    return;
  }

  if (_levels.empty()) {
    Point b = static_cast<Point>(degree);
    for (auto const &g : input)
      b = std::min(b, g.first_moved());
    add_level(b);
  }
  for (auto const &g : input)
    add_gen(0, g);

  // Every input generator must move some base point.
  for (auto const &g : input) {
    auto [r, stop] = sift(g, 0);
    if (!r.is_identity())
      insert_residue(r, 1, stop);
  }

  bool target_reached = false;
  if (opts.known_order && order() == *opts.known_order)
    target_reached = true;

  ProductReplacement pr(degree, input, opts.seed);
  unsigned quiet = 0;
  unsigned budget_rounds = opts.known_order ? opts.quiet_rounds * 20 : opts.quiet_rounds;
  while (!target_reached && quiet < budget_rounds) {
    auto [r, stop] = sift(pr.next(), 0);
    if (r.is_identity()) {
      ++quiet;
      continue;
    }
    quiet = 0;
    insert_residue(r, 1, stop);
    if (opts.known_order) {
      Order o = order();
      if (o == *opts.known_order)
        target_reached = true;
      else if (o > *opts.known_order)
        throw std::logic_error("chain order exceeds the supplied order");
    }
  }

  if (target_reached) {
    _verified = true;
    return;
  }
  verify();
  if (opts.known_order && order() != *opts.known_order)
    throw std::logic_error("verified chain order differs from the supplied order (" +
                           to_string(order()) + " vs " +
                           to_string(*opts.known_order) + ")");
  _verified = true;
}

void StabChain::add_level(Point b)
{
  StabLevel l;
  l.base = b;
  l.where.assign(_degree, -1);
  l.orbit.push_back(b);
  l.where[b] = 0;
  l.trans.emplace_back(_degree);
  l.trans_inv.emplace_back(_degree);
  _levels.push_back(std::move(l));
}

void StabChain::add_gen(std::size_t lvl, Perm const &g)
{
  auto &l = _levels[lvl];
  l.gens.push_back(g);
  auto grow = [&](std::size_t i, Perm const &s) {
    Point y = s[l.orbit[i]];
    if (l.where[y] >= 0)
      return;
    l.where[y] = static_cast<std::int32_t>(l.orbit.size());
    l.orbit.push_back(y);
    Perm t = l.trans[i] * s;
    l.trans_inv.push_back(t.inverse());
    l.trans.push_back(std::move(t));
  };
  std::size_t old = l.orbit.size();
  for (std::size_t i = 0; i < old; ++i)
    grow(i, g);
  for (std::size_t i = old; i < l.orbit.size(); ++i)
    for (std::size_t c = 0; c < l.gens.size(); ++c)
      grow(i, l.gens[c]);
}

void StabChain::insert_residue(Perm const &r, std::size_t from, std::size_t stop)
{
  if (stop == _levels.size())
    add_level(r.first_moved());
  for (std::size_t k = from; k <= stop; ++k)
    add_gen(k, r);
}

void StabChain::verify()
{
  struct Cursor
  {
    std::size_t a = 0, c = 0;
  };
  std::vector<Cursor> cur(_levels.size());

  std::size_t i = _levels.size();
  while (i-- > 0) {
    cur.resize(_levels.size());
    auto &l = _levels[i];
    std::size_t const no = l.orbit.size(), ng = l.gens.size();
    bool changed = false;
    std::size_t jump = 0;
    for (auto &k = cur[i]; k.a < no && !changed; ++k.a, k.c = 0) {
      std::size_t c0 = k.a < l.checked_orbit ? l.checked_gens : 0;
      k.c = std::max(k.c, c0);
      for (; k.c < ng; ++k.c) {
        Point beta = l.orbit[k.a];
        Perm const &s = l.gens[k.c];
        Point gamma = s[beta];
        Perm sg = l.trans[k.a] * s;
        sg *= l.trans_inv[l.where[gamma]];
        if (sg.is_identity())
          continue;
        auto [r, stop] = sift(std::move(sg), i + 1);
        if (r.is_identity())
          continue;
        insert_residue(r, i + 1, stop);
        ++k.c;
        changed = true;
        jump = stop;
        break;
      }
      if (changed)
        break;
    }
    if (changed) {
      i = jump + 1;
      continue;
    }
    l.checked_orbit = no;
    l.checked_gens = ng;
    cur[i] = Cursor{};
  }
}

std::vector<Point> StabChain::base() const
{
  std::vector<Point> b;
  for (auto const &l : _levels)
    b.push_back(l.base);
  return b;
}

Order StabChain::order() const
{
  Order o = 1;
  for (auto const &l : _levels)
    o = checked_mul(o, l.orbit.size());
  return o;
}

std::pair<Perm, std::size_t> StabChain::sift(Perm g, std::size_t from) const
{
  for (std::size_t k = from; k < _levels.size(); ++k) {
    auto const &l = _levels[k];
    Point beta = g[l.base];
    if (l.where[beta] < 0)
      return {std::move(g), k};
    if (beta != l.base)
      g *= l.trans_inv[l.where[beta]];
  }
  return {std::move(g), _levels.size()};
}

bool StabChain::contains(Perm const &g) const
{
  if (g.degree() != _degree)
    return false;
  return sift(g, 0).first.is_identity();
}

std::vector<Perm> const &StabChain::gens_at(std::size_t i) const
{
  return i < _levels.size() ? _levels[i].gens : _none;
}

Perm StabChain::random_element(std::mt19937_64 &rng) const
{
  Perm g(_degree);
  for (std::size_t k = _levels.size(); k-- > 0;) {
    auto const &l = _levels[k];
    std::uniform_int_distribution<std::size_t> pick(0, l.orbit.size() - 1);
    g *= l.trans[pick(rng)];
  }
  return g;
}

} // namespace relcx
