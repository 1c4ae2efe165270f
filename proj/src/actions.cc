#include "relcx/actions.h"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "relcx/backtrack.h"

namespace relcx
{

std::string label_string(LabelKind kind, Label const &l)
{
  std::ostringstream os;
  auto block = [&](std::vector<std::uint32_t> const &b, bool one_based) {
    for (std::size_t i = 0; i < b.size(); ++i)
      os << (i ? "," : "") << (one_based ? b[i] + 1 : b[i]);
  };
  switch (kind) {
  case LabelKind::point:
    os << l.at(0).at(0) + 1;
    break;
  case LabelKind::subset:
    os << '{';
    block(l.at(0), true);
    os << '}';
    break;
  case LabelKind::partition:
    os << '{';
    for (std::size_t i = 0; i < l.size(); ++i) {
      os << (i ? "|" : "");
      block(l[i], true);
    }
    os << '}';
    break;
  case LabelKind::coset:
    os << "M" << to_cycle_string(Perm(std::vector<Point>(l.at(0).begin(), l.at(0).end())));
    break;
  case LabelKind::subspace:
    os << '<';
    for (std::size_t i = 0; i < l.size(); ++i) {
      os << (i ? ";" : "");
      block(l[i], false);
    }
    os << '>';
    break;
  case LabelKind::other:
    for (std::size_t i = 0; i < l.size(); ++i) {
      os << (i ? "/" : "");
      block(l[i], false);
    }
    break;
  }
  return os.str();
}

std::optional<std::size_t> InducedAction::index_of(Label const &l) const
{
  if (!index)
    return std::nullopt;
  auto it = index->find(l);
  if (it == index->end())
    return std::nullopt;
  return it->second;
}

InducedAction action_on_labels(PermGroup const &parent, std::vector<Label> domain,
                               LabelKind kind,
                               std::function<Label(Label const &, Perm const &)> apply,
                               std::optional<Order> certified_order)
{
  auto index = std::make_shared<std::map<Label, std::uint32_t>>();
  for (std::size_t i = 0; i < domain.size(); ++i)
    if (!index->emplace(domain[i], static_cast<std::uint32_t>(i)).second)
      throw std::invalid_argument("duplicate label in action domain");

  InducedAction a;
  a.kind = kind;
  a.labels = std::move(domain);
  a.parent = parent;
  a.index = index;
  auto labels = std::make_shared<std::vector<Label> const>(a.labels);
  a.induce = [labels, index, apply](Perm const &g) {
    std::vector<Point> img(labels->size());
    for (std::size_t i = 0; i < labels->size(); ++i) {
      auto it = index->find(apply((*labels)[i], g));
      if (it == index->end())
        throw std::logic_error("action domain is not closed under the parent");
      img[i] = it->second;
    }
    return Perm(std::move(img));
  };
  for (auto const &g : parent.generators())
    a.generator_images.push_back(a.induce(g));
  a.group = certified_order ? PermGroup(a.degree(), a.generator_images, *certified_order)
                            : PermGroup(a.degree(), a.generator_images);
  return a;
}

InducedAction natural_action(PermGroup const &g)
{
  std::vector<Label> dom;
  for (Point x = 0; x < g.degree(); ++x)
    dom.push_back({{x}});
  auto a = action_on_labels(
      g, std::move(dom), LabelKind::point,
      [](Label const &l, Perm const &p) { return Label{{p[l[0][0]]}}; },
      g.certified_order());
  a.description = "natural";
  return a;
}

namespace
{

void combinations(std::size_t n, std::size_t k, std::vector<std::uint32_t> &cur,
                  std::vector<Label> &out)
{
  if (cur.size() == k) {
    out.push_back({cur});
    return;
  }
  std::uint32_t from = cur.empty() ? 0 : cur.back() + 1;
  for (std::uint32_t x = from; x + (k - cur.size()) <= n; ++x) {
    cur.push_back(x);
    combinations(n, k, cur, out);
    cur.pop_back();
  }
}

void partitions(std::vector<std::uint32_t> rest, std::size_t k, Label &cur,
                std::vector<Label> &out)
{
  if (rest.empty()) {
    out.push_back(cur);
    return;
  }
  // The block holding the smallest remaining point.
  std::uint32_t head = rest[0];
  std::vector<std::uint32_t> tail(rest.begin() + 1, rest.end());
  std::vector<Label> picks;
  std::vector<std::uint32_t> c;
  combinations(tail.size(), k - 1, c, picks);
  for (auto const &pick : picks) {
    std::vector<std::uint32_t> blk{head};
    std::vector<char> used(tail.size(), 0);
    for (auto i : pick[0]) {
      blk.push_back(tail[i]);
      used[i] = 1;
    }
    std::vector<std::uint32_t> left;
    for (std::size_t i = 0; i < tail.size(); ++i)
      if (!used[i])
        left.push_back(tail[i]);
    cur.push_back(blk);
    partitions(left, k, cur, out);
    cur.pop_back();
  }
}

Label image_blocks(Label const &l, Perm const &p)
{
  Label out;
  for (auto const &b : l) {
    std::vector<std::uint32_t> nb;
    for (auto x : b)
      nb.push_back(p[x]);
    std::sort(nb.begin(), nb.end());
    out.push_back(std::move(nb));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<Order> faithful_order(PermGroup const &parent, bool faithful)
{
  if (faithful && parent.certified_order())
    return parent.certified_order();
  return std::nullopt;
}

// Least element of the coset Mg; the chain has base 0..n-1.
std::vector<std::uint32_t> least_in_coset(StabChain const &m, Perm h)
{
  for (std::size_t j = 0; j < m.length(); ++j) {
    auto const &l = m.level(j);
    std::size_t best = 0;
    for (std::size_t i = 1; i < l.orbit.size(); ++i)
      if (h[l.orbit[i]] < h[l.orbit[best]])
        best = i;
    if (best)
      h = l.trans[best] * h;
  }
  auto im = h.images();
  return std::vector<std::uint32_t>(im.begin(), im.end());
}

} // namespace

Order binomial(unsigned n, unsigned k)
{
  if (k > n)
    return 0;
  Order r = 1;
  for (unsigned i = 1; i <= k; ++i)
    r = checked_mul(r, n - k + i) / i;
  return r;
}

Order uniform_partition_count(unsigned n, unsigned k)
{
  if (k == 0 || n % k)
    return 0;
  unsigned l = n / k;
  Order r = factorial(n);
  for (unsigned i = 0; i < l; ++i)
    r /= factorial(k);
  return r / factorial(l);
}

InducedAction k_subset_action(PermGroup const &parent, std::size_t k)
{
  std::size_t n = parent.degree();
  if (k < 1 || k >= n)
    throw std::invalid_argument("k-subsets need 1 <= k < n");
  std::vector<Label> dom;
  std::vector<std::uint32_t> cur;
  combinations(n, k, cur, dom);
  if (dom.size() != binomial(n, k))
    throw std::logic_error("k-subset count disagrees with the binomial");
  auto a = action_on_labels(parent, std::move(dom), LabelKind::subset, image_blocks,
                            faithful_order(parent, n > 2));
  a.description = std::to_string(k) + "-subsets";
  return a;
}

InducedAction uniform_partition_action(PermGroup const &parent, std::size_t k)
{
  std::size_t n = parent.degree();
  if (k < 2 || n % k || n / k < 2)
    throw std::invalid_argument("partitions need k > 1 dividing n with n/k > 1");
  std::vector<std::uint32_t> all(n);
  std::iota(all.begin(), all.end(), 0u);
  std::vector<Label> dom;
  Label cur;
  partitions(all, k, cur, dom);
  std::sort(dom.begin(), dom.end());
  if (dom.size() != uniform_partition_count(n, k))
    throw std::logic_error("partition count disagrees with the closed form");
  auto a = action_on_labels(parent, std::move(dom), LabelKind::partition, image_blocks,
                            faithful_order(parent, n != 4));
  a.description = std::to_string(n / k) + " blocks of size " + std::to_string(k);
  return a;
}

InducedAction coset_action(PermGroup const &g, PermGroup const &m, std::size_t index_bound)
{
  if (g.degree() != m.degree())
    throw std::invalid_argument("degree mismatch");
  if (!g.contains(m))
    throw std::invalid_argument("M is not a subgroup of G");
  Order index = g.order() / m.order();
  if (index > index_bound)
    throw std::length_error("coset index " + to_string(index) + " exceeds the bound " +
                            std::to_string(index_bound));
  std::vector<Point> all(g.degree());
  std::iota(all.begin(), all.end(), Point{0});
  auto mch = m.chain_with_base(all);

  std::map<Label, std::uint32_t> seen;
  std::vector<Label> dom;
  dom.push_back({least_in_coset(*mch, Perm(g.degree()))});
  seen.emplace(dom[0], 0);
  for (std::size_t i = 0; i < dom.size(); ++i)
    for (auto const &s : g.generators()) {
      Perm rep(std::vector<Point>(dom[i][0].begin(), dom[i][0].end()));
      Label img{least_in_coset(*mch, rep * s)};
      if (seen.emplace(img, static_cast<std::uint32_t>(dom.size())).second)
        dom.push_back(std::move(img));
    }
  if (dom.size() != index)
    throw std::logic_error("coset enumeration disagrees with the index");
  std::sort(dom.begin(), dom.end());
  auto apply = [mch](Label const &l, Perm const &p) {
    Perm rep(std::vector<Point>(l[0].begin(), l[0].end()));
    return Label{least_in_coset(*mch, rep * p)};
  };
  auto a = action_on_labels(g, std::move(dom), LabelKind::coset, apply);
  a.description = "cosets of a subgroup of order " + to_string(m.order());
  return a;
}

Restriction restrict_to(PermGroup const &g, std::span<Point const> set)
{
  if (set.empty())
    throw std::invalid_argument("restriction to an empty set");
  Restriction r;
  r.points.assign(set.begin(), set.end());
  std::sort(r.points.begin(), r.points.end());
  r.points.erase(std::unique(r.points.begin(), r.points.end()), r.points.end());
  r.setwise = setwise_stabilizer(g, r.points);
  r.kernel = pointwise_stabilizer(g, r.points);
  Order ind = r.setwise.order() / r.kernel.order();
  r.induced = PermGroup(r.points.size(), induced(r.setwise.generators(), r.points).generators(),
                        ind);
  if (checked_mul(ind, r.kernel.order()) != r.setwise.order())
    throw std::logic_error("kernel does not divide the set stabilizer");
  return r;
}

std::optional<PermGroup> action_kernel(InducedAction const &a)
{
  if (!a.parent)
    return std::nullopt;
  if (a.group.order() == a.parent->order())
    return PermGroup::trivial(a.parent->degree());
  if (a.parent->order() > kEnumerationGuard)
    return std::nullopt;
  std::vector<Perm> keep;
  for (auto &x : enumerate(*a.parent))
    if (a.induce(x).is_identity())
      keep.push_back(std::move(x));
  return subgroup_generated(a.parent->degree(), keep);
}

bool check_homomorphism(InducedAction const &a, std::size_t max_word)
{
  if (!a.parent || !a.induce)
    return true;
  auto const &gens = a.parent->generators();
  auto const &imgs = a.generator_images;
  std::size_t k = gens.size();
  // Words as index sequences, compared against the product of images.
  std::vector<std::pair<Perm, Perm>> layer{{Perm(a.parent->degree()), Perm(a.degree())}};
  for (std::size_t len = 1; len <= max_word; ++len) {
    std::vector<std::pair<Perm, Perm>> next;
    for (auto const &[w, iw] : layer)
      for (std::size_t i = 0; i < k; ++i) {
        Perm nw = w * gens[i], niw = iw * imgs[i];
        if (a.induce(nw) != niw)
          return false;
        next.emplace_back(std::move(nw), std::move(niw));
      }
    layer = std::move(next);
    if (layer.size() > 4096)
      break;
  }
  return true;
}

} // namespace relcx
