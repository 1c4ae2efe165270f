#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "relcx/perm.h"

namespace relcx
{

using Order = unsigned __int128;

std::string to_string(Order n);
Order checked_mul(Order a, Order b);
Order factorial(unsigned n);

struct StabLevel
{
  Point base = 0;
  std::vector<Perm> gens;
  std::vector<Point> orbit;
  std::vector<std::int32_t> where;   // point -> index into orbit, -1 if absent
  std::vector<Perm> trans;           // trans[i] maps base to orbit[i]
  std::vector<Perm> trans_inv;

  bool in_orbit(Point x) const { return where[x] >= 0; }
  Perm const &transversal(Point x) const { return trans[where[x]]; }
  Perm const &transversal_inv(Point x) const { return trans_inv[where[x]]; }

  std::size_t checked_orbit = 0;
  std::size_t checked_gens = 0;
};

// Product replacement generator over a fixed generator list.
class ProductReplacement
{
public:
  ProductReplacement(std::size_t degree, std::span<Perm const> gens,
                     std::uint64_t seed);
  Perm next();

private:
  std::vector<Perm> _state;
  Perm _acc;
  std::mt19937_64 _rng;
};

// Base and strong generating set. Random Schreier-Sims proposes strong
// generators; unless a certified order is supplied and reached, every
// Schreier generator is then sifted before the chain is accepted.
class StabChain
{
public:
  struct Options
  {
    std::vector<Point> base_prefix;
    std::optional<Order> known_order;
    std::uint64_t seed = 0x5eedULL;
    unsigned quiet_rounds = 40;
  };

  StabChain(std::size_t degree, std::span<Perm const> gens, Options opts);
  StabChain(std::size_t degree, std::span<Perm const> gens)
      : StabChain(degree, gens, Options{})
  {}

  std::size_t degree() const { return _degree; }
  std::size_t length() const { return _levels.size(); }
  StabLevel const &level(std::size_t i) const { return _levels[i]; }
  std::vector<Point> base() const;
  Order order() const;

  std::pair<Perm, std::size_t> sift(Perm g, std::size_t from = 0) const;
  bool contains(Perm const &g) const;

  // Strong generators fixing base[0..i-1]; empty past the last level.
  std::vector<Perm> const &gens_at(std::size_t i) const;
  std::vector<Perm> const &strong_generators() const { return gens_at(0); }

  // Uniform random element, built from transversals.
  Perm random_element(std::mt19937_64 &rng) const;

  bool verified() const { return _verified; }

private:
  void add_level(Point b);
  void add_gen(std::size_t lvl, Perm const &g);
  // Adds a non-identity residue fixing base[0..stop-1] to levels from..stop.
  void insert_residue(Perm const &r, std::size_t from, std::size_t stop);
  void verify();

  std::size_t _degree;
  std::vector<StabLevel> _levels;
  bool _verified = false;
  std::vector<Perm> _none;
};

} // namespace relcx
