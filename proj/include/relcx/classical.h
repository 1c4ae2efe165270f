#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "relcx/actions.h"
#include "relcx/beautiful.h"
#include "relcx/field.h"

namespace relcx
{

enum class Family
{
  SL,
  SU,
  Sp,
  O_odd,
  O_plus,
  O_minus
};

std::string family_name(Family f);   // "SL", "SU", "Sp", "O", "O+", "O-"
Family parse_family(std::string const &s);

// Coordinates are e_1..e_k, f_1..f_k, then the anisotropic part. For SL
// there is no form and k = 0.
struct FormedSpace
{
  Family family = Family::SL;
  unsigned n = 0, q = 0, k = 0;
  std::shared_ptr<Field const> field;   // GF(q), or GF(q^2) for SU
  std::vector<unsigned> aniso;
  Mat gram;   // alternating, hermitian, or the polar form of quad
  Mat quad;   // O only: Q(v) = sum over i <= j of quad(i,j) v_i v_j
  FElt zeta = 0;   // O-: Q(y) on the anisotropic pair (x, y)

  unsigned e(unsigned i) const { return i; }
  unsigned f(unsigned i) const { return k + i; }
  Vec basis(unsigned i) const;

  FElt conj(FElt a) const;   // a^q for SU, else a
  // Linear in the first argument; conjugate-linear in the second for SU.
  FElt form(Vec const &v, Vec const &w) const;
  FElt quadratic(Vec const &v) const;
  bool singular(Vec const &v) const;   // Q(v) = 0, or form(v,v) = 0

  // Form (and for O the quadratic form) preserved, checked on basis pairs.
  bool preserves(Mat const &x) const;
  // Gram matrix of the form restricted to the row space of w.
  Mat restricted_gram(Mat const &w) const;
  // Rows spanning {v : form(w_i, v) = 0 for all rows w_i}.
  Mat perp(Mat const &w) const;
};

FormedSpace formed_space(Family f, unsigned n, unsigned q);

// |S| from the closed-form product, and the number of scalars in S.
Order classical_order(Family f, unsigned n, unsigned q);
Order center_order(Family f, unsigned n, unsigned q);
std::string group_name(Family f, unsigned n, unsigned q);

enum class SubspaceKind
{
  all,
  totally_isotropic,
  nondegenerate
};

struct SubspaceClass
{
  SubspaceKind kind = SubspaceKind::all;
  // O only: sign of W for even dim(W), of W^perp for odd dim(W); 0 for any.
  int type = 0;
};

std::string class_name(SubspaceClass c);
SubspaceClass parse_class(std::string const &s);   // "all", "ti", "nondeg", "nondeg+", "nondeg-"

// Number of m-dimensional subspaces of GF(q)^n.
Order gaussian_binomial(unsigned q, unsigned n, unsigned m);

inline constexpr std::size_t kSubspaceBudget = 1'000'000;

bool in_class(FormedSpace const &s, Mat const &w, SubspaceClass c);
// Canonical echelon forms, in lexicographic order of pivots and entries.
std::vector<Mat> enumerate_subspaces(FormedSpace const &s, unsigned m, SubspaceClass c,
                                     std::size_t budget = kSubspaceBudget);

Label to_label(Mat const &w);
Mat from_label(Label const &l, unsigned n);

// Induced permutation action of a matrix group on a list of subspaces (or
// flags). induce maps any matrix of the group to its permutation.
struct SubspaceAction
{
  InducedAction action;
  std::vector<unsigned> dims;   // one entry per component of a label
  SubspaceClass cls;
  std::function<Perm(Mat const &)> induce;
  std::optional<std::size_t> index_of(std::vector<Mat> const &components) const;
};

struct MatrixGroupSpec
{
  std::string name;
  FormedSpace space;
  std::vector<Mat> generators;
  Order order = 0;   // |S|
  std::vector<std::pair<unsigned long long, unsigned>> order_factors;
  Order center = 1;
  // Action on all 1-spaces; its chain certifies |S| / |Z(S)|.
  std::shared_ptr<SubspaceAction const> points;
  Order projective_order() const { return order / center; }

  // Form, determinant and (through the point action) membership; for
  // Omega in even dimension and odd q it throws when -1 is not in Omega and
  // the image alone cannot decide.
  bool contains(Mat const &x) const;
};

// Generators are accepted only if the point action reaches the closed-form
// order |S| / |Z(S)|; for Omega the index-2 overgroup is also excluded.
MatrixGroupSpec build_group(Family f, unsigned n, unsigned q);

SubspaceAction subspace_action(MatrixGroupSpec const &g, unsigned m, SubspaceClass c,
                               std::size_t budget = kSubspaceBudget);
// Pairs (W1, W2) with dims d1 < d2: W1 < W2 when incident, else V = W1 + W2
// with d1 + d2 = n.
SubspaceAction pair_action(MatrixGroupSpec const &g, unsigned d1, unsigned d2,
                           bool incident);
// SL only: W -> W^perp under the standard dot product, on a pair action with
// d1 + d2 = n. Normalizes the induced group (inverse-transpose).
Perm duality(MatrixGroupSpec const &g, SubspaceAction const &a);

// The entrywise field automorphism a -> a^p on the labels of a subspace
// action; it normalizes the induced group.
Perm frobenius_image(MatrixGroupSpec const &g, SubspaceAction const &a);
// O only: an element of SO(V) outside Omega(V).
Mat outside_omega(MatrixGroupSpec const &g);

// Lemma on Singer cycles: an element of S stabilizing W = <e_i : i in I>
// that acts on W as a Singer cycle. Throws PreconditionError outside the
// lemma's cases.
struct SingerCycle
{
  Mat element;
  unsigned long long order_on_w = 0;
  bool irreducible = false;   // a nonzero vector of W has an orbit of size |K|^m - 1
};
SingerCycle singer_cycle(MatrixGroupSpec const &g, std::vector<unsigned> const &i);

// H = <U, T> and Λ = ω0^H inside a subspace action.
struct UTRecipe
{
  std::string id;
  std::vector<Mat> omega0;   // components of the label of ω0
  std::vector<Mat> u, t;
  bool claims_u_meets_m_trivially = true;
  bool claims_t_in_m = true;
};

struct UTResult
{
  std::string failed;   // empty on success
  Order u_order = 0, t_order = 0, h_order = 0;
  Order u_meet_m = 0;   // |U ∩ M| = |U| / |ω0^U|
  bool t_in_m = false;
  bool h_2_transitive = false;
  std::vector<Point> lambda;
  std::optional<BeautifulCertificate> certificate;
};

UTResult ut_beautiful(MatrixGroupSpec const &g, SubspaceAction const &a, UTRecipe const &r);

// The recipes behind the affine, unital and ovoid examples.
UTRecipe su_affine_recipe(MatrixGroupSpec const &g);   // SU_n(2), n odd >= 5: <x + v>
UTRecipe sl3_unital_recipe(MatrixGroupSpec const &g);   // SL_3(4) on incident pairs
UTRecipe sp4_ovoid_recipe(MatrixGroupSpec const &g);    // Sp_4(q), q even, on points

// The point-stabilizer family inside SU_n(q) acting on nondegenerate points.
struct ExplicitSU
{
  int variant = 0;   // 1 when 3 does not divide q+1, else 2
  std::vector<Mat> h;   // all matrices of H (on V)
  Order h_order = 0, expected_order = 0;
  std::vector<Point> lambda;
  bool h_2_transitive = false;
  BeautyCheck check;
};
// variant 0 selects by the divisibility of q+1 by 3.
ExplicitSU explicit_su_point_stabilizer(MatrixGroupSpec const &g, SubspaceAction const &a,
                                        int variant = 0);

} // namespace relcx
