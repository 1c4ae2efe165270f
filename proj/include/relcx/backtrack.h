#pragma once

#include <chrono>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "relcx/group.h"

namespace relcx
{

struct Budget
{
  std::uint64_t max_nodes = 0;   // 0: unlimited
  std::int64_t max_ms = 0;       // 0: unlimited

  static Budget unlimited() { return {}; }
};

struct SearchStats
{
  std::uint64_t nodes = 0;
  bool exhausted = false;
};

// Incremental pruning over the levels of a chain. push() is told that base
// point b is sent to gamma; returning false cuts the branch. Every push is
// matched by a pop on the same level, including failed ones.
class Constraint
{
public:
  virtual ~Constraint() = default;
  virtual bool push(std::size_t level, Point b, Point gamma) = 0;
  virtual void pop(std::size_t level) = 0;
  virtual bool accept(Perm const &) { return true; }
};

// Subgroup of elements satisfying the constraint. Levels at or below
// leaf_depth are assumed to satisfy it wholesale. nullopt: budget exhausted.
std::optional<PermGroup> subgroup_search(std::shared_ptr<StabChain const> chain,
                                         std::size_t leaf_depth, Constraint &c,
                                         std::vector<Perm> known, Budget budget,
                                         SearchStats &stats);

// First solution in ascending order of base images.
std::optional<Perm> find_element(StabChain const &chain, Constraint &c, Budget budget,
                                 SearchStats &stats);

struct TransportResult
{
  std::optional<Perm> element;
  std::uint64_t nodes = 0;
};

// g with I[k]^g = J[k] for every k, or none; the chain is rebased on I.
TransportResult transporter(PermGroup const &g, std::span<Point const> from,
                            std::span<Point const> to);
TransportResult transporter(StabChain const &based_on_from, std::span<Point const> from,
                            std::span<Point const> to);

PermGroup setwise_stabilizer(PermGroup const &g, std::span<Point const> set);
PermGroup pointwise_stabilizer(PermGroup const &g, std::span<Point const> set);

struct IntersectionResult
{
  std::optional<PermGroup> group;   // none: inconclusive
  SearchStats stats;
  bool by_enumeration = false;
};
IntersectionResult intersection(PermGroup const &a, PermGroup const &b,
                                Budget budget = Budget::unlimited());

// Elements x with g_k^x = h_k for all k.
PermGroup centralizer(PermGroup const &g, std::span<Perm const> elements);
std::optional<Perm> conjugating_element(PermGroup const &g, Perm const &from,
                                        Perm const &to);
PermGroup normalizer_of_cyclic(PermGroup const &g, Perm const &x);

// x with a^x = b, or none: a and b realized as pairs (a_k, b_k).
class MapConstraint : public Constraint
{
public:
  MapConstraint(std::size_t degree, std::vector<std::pair<Perm, Perm>> pairs);
  bool push(std::size_t level, Point b, Point gamma) override;
  void pop(std::size_t level) override;
  bool accept(Perm const &x) override;

private:
  bool assign(Point p, Point img);

  std::size_t _degree;
  std::vector<std::pair<Perm, Perm>> _pairs;
  std::vector<std::pair<Perm, Perm>> _inv;
  std::vector<std::int64_t> _map, _rev;
  std::vector<Point> _trail;
  std::vector<std::size_t> _marks;
};

} // namespace relcx
