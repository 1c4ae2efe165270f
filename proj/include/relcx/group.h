#pragma once

#include <cstddef>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "relcx/chain.h"
#include "relcx/perm.h"

namespace relcx
{

inline constexpr std::size_t kEnumerationGuard = 1'000'000;

// Generators plus a stabilizer chain built on first use. Copies share the
// chain; a group is never mutated after construction.
class PermGroup
{
public:
  PermGroup() : PermGroup(0, {}) {}
  PermGroup(std::size_t degree, std::vector<Perm> gens);
  // The order is taken as certified (e.g. an isomorphic image with a verified
  // chain); chains of this group stop as soon as they reach it.
  PermGroup(std::size_t degree, std::vector<Perm> gens, Order certified_order);

  static PermGroup trivial(std::size_t degree);
  static PermGroup symmetric(std::size_t n);
  static PermGroup alternating(std::size_t n);

  std::size_t degree() const { return _degree; }
  std::vector<Perm> const &generators() const { return _gens; }

  StabChain const &chain() const;
  std::shared_ptr<StabChain const> chain_ptr() const;
  // Chain whose base starts with prefix (trivial levels kept).
  std::shared_ptr<StabChain const> chain_with_base(std::span<Point const> prefix) const;

  Order order() const { return chain().order(); }
  bool contains(Perm const &g) const { return chain().contains(g); }
  bool contains(PermGroup const &h) const;
  bool is_trivial() const;

  std::optional<Order> certified_order() const { return _certified; }

private:
  struct Lazy
  {
    std::once_flag once;
    std::shared_ptr<StabChain const> chain;
  };

  std::size_t _degree;
  std::vector<Perm> _gens;
  std::optional<Order> _certified;
  std::shared_ptr<Lazy> _lazy;
};

std::vector<Point> orbit(PermGroup const &g, Point x);
std::vector<Point> orbit(std::span<Perm const> gens, std::size_t degree, Point x);
// Orbit id per point; ids numbered by increasing smallest element.
std::vector<std::uint32_t> orbit_partition(std::span<Perm const> gens, std::size_t degree);
std::size_t orbit_count(PermGroup const &g);

// Orbit with a Schreier tree: word_to(y) maps the root to y.
class SchreierOrbit
{
public:
  SchreierOrbit(std::span<Perm const> gens, std::size_t degree, Point root);
  bool contains(Point y) const { return _parent_gen[y] >= 0 || y == _root; }
  std::vector<Point> const &points() const { return _points; }
  Perm element_to(Point y) const;

private:
  std::vector<Perm> _gens;
  std::size_t _degree;
  Point _root;
  std::vector<Point> _points;
  std::vector<int> _parent_gen;
  std::vector<Point> _parent;
};

bool is_transitive(PermGroup const &g);
bool is_2_transitive(PermGroup const &g);
// Number of orbits on ordered pairs of distinct points, by union-find.
std::size_t pair_orbit_count(std::span<Perm const> gens, std::size_t degree);

// All elements, refused above the guard.
std::vector<Perm> enumerate(PermGroup const &g, std::size_t guard = kEnumerationGuard);

Perm random_element(PermGroup const &g, std::uint64_t seed);

PermGroup conjugate(PermGroup const &g, Perm const &by);
// Subgroup generated by a list of elements, keeping only those that enlarge it.
PermGroup subgroup_generated(std::size_t degree, std::span<Perm const> elements);
// Normal closure of the generator commutators.
PermGroup derived_subgroup(PermGroup const &g);
// Group induced on `points` by generators that preserve it.
PermGroup induced(std::span<Perm const> gens, std::span<Point const> points);

} // namespace relcx
