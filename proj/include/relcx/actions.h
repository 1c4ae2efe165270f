#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "relcx/group.h"

namespace relcx
{

// A domain label: a subset is one block, a partition several, a coset its
// least representative, a subspace the rows of its echelon form.
using Label = std::vector<std::vector<std::uint32_t>>;

enum class LabelKind
{
  point,
  subset,
  partition,
  coset,
  subspace,
  other
};

std::string label_string(LabelKind kind, Label const &l);

struct InducedAction
{
  std::string description;
  LabelKind kind = LabelKind::other;
  std::vector<Label> labels;
  PermGroup group;
  // Images of the parent generators, in order; identities kept.
  std::vector<Perm> generator_images;
  std::optional<PermGroup> parent;
  // Parent element -> induced permutation; empty without a permutation parent.
  std::function<Perm(Perm const &)> induce;

  std::size_t degree() const { return labels.size(); }
  std::optional<std::size_t> index_of(Label const &l) const;
  std::string label(std::size_t i) const { return label_string(kind, labels[i]); }

  std::shared_ptr<std::map<Label, std::uint32_t> const> index;
};

// Builds the action on an explicit domain of canonical labels closed under
// the parent. apply(label, g) must return the canonical image label.
InducedAction action_on_labels(PermGroup const &parent, std::vector<Label> domain,
                               LabelKind kind,
                               std::function<Label(Label const &, Perm const &)> apply,
                               std::optional<Order> certified_order = std::nullopt);

InducedAction natural_action(PermGroup const &g);
InducedAction k_subset_action(PermGroup const &parent, std::size_t k);
InducedAction uniform_partition_action(PermGroup const &parent, std::size_t k);

inline constexpr std::size_t kCosetIndexBound = 1'000'000;
// Right cosets Mg, labelled by their lexicographically least element.
InducedAction coset_action(PermGroup const &g, PermGroup const &m,
                           std::size_t index_bound = kCosetIndexBound);

struct Restriction
{
  PermGroup setwise;
  PermGroup induced;   // on {0..|set|-1}, in the order of the sorted set
  PermGroup kernel;
  std::vector<Point> points;
};
Restriction restrict_to(PermGroup const &g, std::span<Point const> set);

// Elements of the parent acting trivially; none if this cannot be settled
// by enumeration or an order comparison.
std::optional<PermGroup> action_kernel(InducedAction const &a);

// Checks the induced map is multiplicative on all generator words up to
// the given length.
bool check_homomorphism(InducedAction const &a, std::size_t max_word = 3);

Order binomial(unsigned n, unsigned k);
Order uniform_partition_count(unsigned n, unsigned k);

} // namespace relcx
