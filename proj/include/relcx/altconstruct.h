#pragma once

#include <optional>
#include <string>
#include <vector>

#include "relcx/actions.h"
#include "relcx/beautiful.h"

namespace relcx
{

// A subset of a standard action of Sym(n), as canonical 0-based labels.
struct NamedConfiguration
{
  std::string id;
  std::vector<unsigned> params;
  LabelKind kind = LabelKind::other;
  std::vector<Label> labels;
  std::size_t expected_degree = 0;
  Order expected_induced_order = 0;   // 0: not pinned
};

// The action the configuration lives in: k-subsets or k-uniform partitions
// of {0..n-1} under Sym(n), or Alt(n) with alternating set.
InducedAction ambient_action(NamedConfiguration const &c, bool alternating = false);
// Points of the labels in the action; throws if one is missing.
std::vector<Point> locate(InducedAction const &a, NamedConfiguration const &c);

NamedConfiguration fano_subset(unsigned n, unsigned k);
NamedConfiguration petersen_matchings(unsigned n);
NamedConfiguration fano_partitions(unsigned n, unsigned k);
NamedConfiguration three_uniform_partitions(unsigned n);

// Sym(r) on the cosets of AGL1(r): the M-orbit of Mx, x inverting an
// element h of M of order r-1.
struct AffineLine
{
  NamedConfiguration config;   // coset labels; empty unless materialized
  PermGroup g, m;
  Perm h, x;
  Order meet_order = 0;        // |M ∩ M^x|
  bool meet_is_h = false;
  std::optional<InducedAction> action;
  std::vector<Point> delta;
  std::size_t delta_size = 0;  // |M : M ∩ M^x|
};
AffineLine affine_line_orbit(unsigned r, bool materialize = true);

// Inputs for the Frobenius construction in Sym(n) or Alt(n).
struct FrobeniusSetup
{
  std::string id;
  PermGroup g, m;
  FrobeniusCandidate candidate;
};
// Product action of (Sym(5) wr Sym(2)) ∩ Alt(25): (a, b) is the point 5a + b.
FrobeniusSetup product_setup();
// Diagonal action of Alt(5)^2.(Out x Sym(2)) on the 60 elements of Alt(5).
FrobeniusSetup diagonal_setup();

// Dispatch on the construction id ("fano-subset", ...).
NamedConfiguration construction(std::string const &id, std::vector<unsigned> const &params);

} // namespace relcx
