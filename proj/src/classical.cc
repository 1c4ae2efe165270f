#include "relcx/classical.h"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>

#include "relcx/backtrack.h"
#include "relcx/binary.h"

namespace relcx
{

namespace
{

Order ipow(Order b, unsigned e)
{
  Order r = 1;
  for (unsigned i = 0; i < e; ++i)
    r = checked_mul(r, b);
  return r;
}

unsigned family_dim_ok(Family f, unsigned n, unsigned q)
{
  switch (f) {
  case Family::SL:
    if (n < 2 || (n == 2 && q < 4))
      throw std::invalid_argument("SL needs n >= 2, and q >= 4 when n = 2");
    return 0;
  case Family::SU:
    if (n < 3)
      throw std::invalid_argument("SU needs n >= 3");
    return n / 2;
  case Family::Sp:
    if (n < 4 || n % 2)
      throw std::invalid_argument("Sp needs even n >= 4");
    return n / 2;
  case Family::O_odd:
    if (n < 7 || n % 2 == 0)
      throw std::invalid_argument("O needs odd n >= 7");
    return (n - 1) / 2;
  case Family::O_plus:
  case Family::O_minus:
    if (n < 8 || n % 2)
      throw std::invalid_argument("O+ and O- need even n >= 8");
    return f == Family::O_plus ? n / 2 : n / 2 - 1;
  }
  return 0;
}

bool orthogonal(Family f)
{
  return f == Family::O_odd || f == Family::O_plus || f == Family::O_minus;
}

// A string key for the row space of a matrix in echelon form.
std::string key_of(Mat const &w)
{
  std::string k(w.a.begin(), w.a.end());
  k.push_back(static_cast<char>(0xff));
  return k;
}

// Some c with c + conj(c) = target, conj(a) = a^r.
FElt solve_trace(Field const &f, unsigned r_exp, FElt target)
{
  for (unsigned c = 0; c < f.q(); ++c) {
    FElt cc = static_cast<FElt>(c);
    if (f.add(cc, f.frobenius(cc, r_exp)) == target)
      return cc;
  }
  throw std::logic_error("trace equation has no solution");
}

} // namespace

std::string family_name(Family f)
{
  switch (f) {
  case Family::SL:
    return "SL";
  case Family::SU:
    return "SU";
  case Family::Sp:
    return "Sp";
  case Family::O_odd:
    return "O";
  case Family::O_plus:
    return "O+";
  case Family::O_minus:
    return "O-";
  }
  return "?";
}

Family parse_family(std::string const &s)
{
  static std::map<std::string, Family> const names{
      {"SL", Family::SL}, {"SU", Family::SU},  {"Sp", Family::Sp},
      {"O", Family::O_odd}, {"O+", Family::O_plus}, {"O-", Family::O_minus}};
  auto it = names.find(s);
  if (it == names.end())
    throw std::invalid_argument("unknown family '" + s + "'");
  return it->second;
}

std::string group_name(Family f, unsigned n, unsigned q)
{
  std::string dims = std::to_string(n) + "(" + std::to_string(q) + ")";
  switch (f) {
  case Family::O_odd:
    return "Omega" + dims;
  case Family::O_plus:
    return "Omega" + std::to_string(n) + "+(" + std::to_string(q) + ")";
  case Family::O_minus:
    return "Omega" + std::to_string(n) + "-(" + std::to_string(q) + ")";
  default:
    return family_name(f) + dims;
  }
}

Vec FormedSpace::basis(unsigned i) const
{
  Vec v(n, 0);
  v[i] = 1;
  return v;
}

FElt FormedSpace::conj(FElt a) const
{
  if (family != Family::SU)
    return a;
  return field->frobenius(a, field->degree() / 2);
}

FElt FormedSpace::form(Vec const &v, Vec const &w) const
{
  Field const &F = *field;
  FElt s = 0;
  for (unsigned i = 0; i < n; ++i) {
    if (!v[i])
      continue;
    for (unsigned j = 0; j < n; ++j) {
      FElt g = gram(i, j);
      if (g && w[j])
        s = F.add(s, F.mul(F.mul(v[i], g), conj(w[j])));
    }
  }
  return s;
}

FElt FormedSpace::quadratic(Vec const &v) const
{
  Field const &F = *field;
  FElt s = 0;
  for (unsigned i = 0; i < n; ++i) {
    if (!v[i])
      continue;
    for (unsigned j = i; j < n; ++j)
      if (quad(i, j) && v[j])
        s = F.add(s, F.mul(quad(i, j), F.mul(v[i], v[j])));
  }
  return s;
}

bool FormedSpace::singular(Vec const &v) const
{
  if (orthogonal(family))
    return quadratic(v) == 0;
  if (family == Family::SL)
    return false;
  return form(v, v) == 0;
}

bool FormedSpace::preserves(Mat const &x) const
{
  if (family == Family::SL)
    return true;
  std::vector<Vec> rows;
  for (unsigned i = 0; i < n; ++i)
    rows.push_back(x.row(i));
  for (unsigned i = 0; i < n; ++i) {
    if (orthogonal(family) && quadratic(rows[i]) != quad(i, i))
      return false;
    for (unsigned j = 0; j < n; ++j) {
      if (orthogonal(family) && j <= i)
        continue;
      if (form(rows[i], rows[j]) != gram(i, j))
        return false;
    }
  }
  return true;
}

Mat FormedSpace::restricted_gram(Mat const &w) const
{
  Mat g(w.rows, w.rows);
  for (unsigned i = 0; i < w.rows; ++i)
    for (unsigned j = 0; j < w.rows; ++j)
      g(i, j) = form(w.row(i), w.row(j));
  return g;
}

Mat FormedSpace::perp(Mat const &w) const
{
  // form(w_i, v) = sum_j (w_i G)_j conj(v_j); conjugating gives a linear
  // condition on v.
  Mat wg = mul(*field, w, gram);
  for (auto &c : wg.a)
    c = conj(c);
  return null_space(*field, wg);
}

FormedSpace formed_space(Family f, unsigned n, unsigned q)
{
  FormedSpace s;
  s.family = f;
  s.n = n;
  s.q = q;
  s.k = family_dim_ok(f, n, q);
  if (f == Family::SU) {
    if (q * q > kMaxFieldOrder)
      throw std::invalid_argument("GF(q^2) too large for SU");
    s.field = Field::get(q * q);
  } else {
    s.field = Field::get(q);
  }
  Field const &F = *s.field;
  s.gram = Mat(n, n);
  s.quad = Mat(n, n);
  unsigned k = s.k;
  for (unsigned i = 2 * k; i < n; ++i)
    s.aniso.push_back(i);
  switch (f) {
  case Family::SL:
    break;
  case Family::Sp:
    for (unsigned i = 0; i < k; ++i) {
      s.gram(i, k + i) = 1;
      s.gram(k + i, i) = F.neg(1);
    }
    break;
  case Family::SU:
    for (unsigned i = 0; i < k; ++i)
      s.gram(i, k + i) = s.gram(k + i, i) = 1;
    if (n % 2)
      s.gram(n - 1, n - 1) = 1;
    break;
  case Family::O_odd:
  case Family::O_plus:
  case Family::O_minus:
    for (unsigned i = 0; i < k; ++i)
      s.quad(i, k + i) = 1;
    if (f == Family::O_odd)
      s.quad(n - 1, n - 1) = 1;
    if (f == Family::O_minus) {
      // (Q(x), Q(y), x.y) = (1, zeta, 1) with t^2 + t + zeta irreducible.
      for (unsigned z = 1; z < q && !s.zeta; ++z) {
        bool root = false;
        for (unsigned t = 0; t < q && !root; ++t) {
          FElt tt = static_cast<FElt>(t);
          root = F.add(F.add(F.mul(tt, tt), tt), static_cast<FElt>(z)) == 0;
        }
        if (!root)
          s.zeta = static_cast<FElt>(z);
      }
      s.quad(n - 2, n - 2) = 1;
      s.quad(n - 2, n - 1) = 1;
      s.quad(n - 1, n - 1) = s.zeta;
    }
    for (unsigned i = 0; i < n; ++i)
      for (unsigned j = 0; j < n; ++j)
        s.gram(i, j) = i == j ? F.add(s.quad(i, i), s.quad(i, i))
                              : F.add(s.quad(std::min(i, j), std::max(i, j)), 0);
    break;
  }
  return s;
}

Order classical_order(Family f, unsigned n, unsigned q)
{
  Order Q = q;
  Order o = 1;
  switch (f) {
  case Family::SL:
    o = ipow(Q, n * (n - 1) / 2);
    for (unsigned i = 2; i <= n; ++i)
      o = checked_mul(o, ipow(Q, i) - 1);
    return o;
  case Family::SU:
    o = ipow(Q, n * (n - 1) / 2);
    for (unsigned i = 2; i <= n; ++i)
      o = checked_mul(o, i % 2 ? ipow(Q, i) + 1 : ipow(Q, i) - 1);
    return o;
  case Family::Sp:
  case Family::O_odd: {
    unsigned m = f == Family::Sp ? n / 2 : (n - 1) / 2;
    o = ipow(Q, m * m);
    for (unsigned i = 1; i <= m; ++i)
      o = checked_mul(o, ipow(Q, 2 * i) - 1);
    return f == Family::O_odd && q % 2 ? o / 2 : o;
  }
  case Family::O_plus:
  case Family::O_minus: {
    unsigned m = n / 2;
    o = ipow(Q, m * (m - 1));
    o = checked_mul(o, f == Family::O_plus ? ipow(Q, m) - 1 : ipow(Q, m) + 1);
    for (unsigned i = 1; i < m; ++i)
      o = checked_mul(o, ipow(Q, 2 * i) - 1);
    return q % 2 ? o / 2 : o;
  }
  }
  return o;
}

Order center_order(Family f, unsigned n, unsigned q)
{
  switch (f) {
  case Family::SL:
    return std::gcd(n, q - 1);
  case Family::SU:
    return std::gcd(n, q + 1);
  case Family::Sp:
    return std::gcd(2u, q - 1);
  case Family::O_odd:
    return 1;
  case Family::O_plus:
  case Family::O_minus: {
    if (q % 2 == 0)
      return 1;
    unsigned m = n / 2;
    unsigned r = 1;
    for (unsigned i = 0; i < m; ++i)
      r = r * q % 4;
    unsigned eps = f == Family::O_plus ? 1 : 3;
    return r == eps ? 2 : 1;
  }
  }
  return 1;
}

std::string class_name(SubspaceClass c)
{
  switch (c.kind) {
  case SubspaceKind::all:
    return "all";
  case SubspaceKind::totally_isotropic:
    return "ti";
  case SubspaceKind::nondegenerate:
    return c.type > 0 ? "nondeg+" : c.type < 0 ? "nondeg-" : "nondeg";
  }
  return "?";
}

SubspaceClass parse_class(std::string const &s)
{
  if (s == "all")
    return {SubspaceKind::all, 0};
  if (s == "ti")
    return {SubspaceKind::totally_isotropic, 0};
  if (s == "nondeg")
    return {SubspaceKind::nondegenerate, 0};
  if (s == "nondeg+")
    return {SubspaceKind::nondegenerate, 1};
  if (s == "nondeg-")
    return {SubspaceKind::nondegenerate, -1};
  throw std::invalid_argument("unknown subspace class '" + s + "'");
}

Order gaussian_binomial(unsigned q, unsigned n, unsigned m)
{
  if (m > n)
    return 0;
  Order num = 1, den = 1;
  for (unsigned i = 0; i < m; ++i) {
    num = checked_mul(num, ipow(q, n - i) - 1);
    den = checked_mul(den, ipow(q, i + 1) - 1);
  }
  return num / den;
}

namespace
{

// Nonzero singular vectors of the row space of b: +1 for the count of a
// plus-type space of that dimension, -1 for minus type, 0 otherwise.
int witt_type(FormedSpace const &s, Mat const &b)
{
  Field const &F = *s.field;
  unsigned d = b.rows;
  if (d % 2)
    return 0;
  unsigned long long total = 1;
  for (unsigned i = 0; i < d; ++i)
    total *= F.q();
  if (total > (1u << 22))
    throw std::length_error("space too large to count singular vectors");
  unsigned long long sing = 0;
  Vec c(d, 0);
  for (unsigned long long t = 1; t < total; ++t) {
    for (unsigned i = 0; i < d; ++i) {
      if (++c[i] < F.q())
        break;
      c[i] = 0;
    }
    Vec v(s.n, 0);
    for (unsigned i = 0; i < d; ++i)
      if (c[i])
        v = axpy(F, c[i], b.row(i), v);
    if (s.quadratic(v) == 0)
      ++sing;
  }
  unsigned long long qq = F.q(), r = d / 2;
  unsigned long long qr = 1, qr1 = 1;
  for (unsigned i = 0; i < r; ++i)
    qr *= qq;
  qr1 = qr / qq;
  if (sing == (qr - 1) * (qr1 + 1))
    return 1;
  if (qr1 >= 1 && sing == (qr + 1) * (qr1 - 1))
    return -1;
  return 0;
}

Mat rows_of(std::vector<Vec> const &rows, unsigned n)
{
  Mat m(static_cast<unsigned>(rows.size()), n);
  for (unsigned i = 0; i < rows.size(); ++i)
    for (unsigned j = 0; j < n; ++j)
      m(i, j) = rows[i][j];
  return m;
}

Mat image(Field const &f, Mat const &w, Mat const &x) { return rref(f, mul(f, w, x)); }

} // namespace

bool in_class(FormedSpace const &s, Mat const &w, SubspaceClass c)
{
  if (c.kind == SubspaceKind::all)
    return true;
  if (s.family == Family::SL)
    throw std::invalid_argument("SL has no form to classify subspaces");
  Field const &F = *s.field;
  Mat g = s.restricted_gram(w);
  bool zero = std::all_of(g.a.begin(), g.a.end(), [](FElt e) { return e == 0; });
  if (c.kind == SubspaceKind::totally_isotropic) {
    if (!zero)
      return false;
    if (orthogonal(s.family))
      for (unsigned i = 0; i < w.rows; ++i)
        if (s.quadratic(w.row(i)) != 0)
          return false;
    return true;
  }
  // Nondegenerate: no nonzero radical vector (for O: no singular one).
  Mat rad = null_space(F, transpose(g));
  if (rad.rows > 0) {
    if (!orthogonal(s.family) || rad.rows > 1)
      return false;
    Vec v(s.n, 0);
    for (unsigned i = 0; i < w.rows; ++i)
      if (rad(0, i))
        v = axpy(F, rad(0, i), w.row(i), v);
    if (s.quadratic(v) == 0)
      return false;
  }
  if (c.type == 0 || !orthogonal(s.family))
    return true;
  if (w.rows % 2 == 0)
    return witt_type(s, w) == c.type;
  if ((s.n - w.rows) % 2)
    return false;
  return witt_type(s, s.perp(w)) == c.type;
}

std::vector<Mat> enumerate_subspaces(FormedSpace const &s, unsigned m, SubspaceClass c,
                                     std::size_t budget)
{
  Field const &F = *s.field;
  unsigned n = s.n, q = F.q();
  if (m == 0 || m > n)
    throw std::invalid_argument("subspace dimension out of range");
  Order total = gaussian_binomial(q, n, m);
  if (total > budget)
    throw std::length_error("number of subspaces " + to_string(total) + " exceeds the budget");
  std::vector<Mat> out;
  std::vector<unsigned> piv(m);
  std::iota(piv.begin(), piv.end(), 0u);
  std::size_t visited = 0;
  while (true) {
    std::vector<std::pair<unsigned, unsigned>> free;
    for (unsigned r = 0; r < m; ++r)
      for (unsigned j = piv[r] + 1; j < n; ++j)
        if (!std::binary_search(piv.begin(), piv.end(), j))
          free.emplace_back(r, j);
    Mat w(m, n);
    for (unsigned r = 0; r < m; ++r)
      w(r, piv[r]) = 1;
    std::vector<unsigned> digit(free.size(), 0);
    while (true) {
      ++visited;
      if (in_class(s, w, c))
        out.push_back(w);
      std::size_t i = 0;
      for (; i < free.size(); ++i) {
        if (++digit[i] < q) {
          w(free[i].first, free[i].second) = static_cast<FElt>(digit[i]);
          break;
        }
        digit[i] = 0;
        w(free[i].first, free[i].second) = 0;
      }
      if (i == free.size())
        break;
    }
    // Next pivot set in lexicographic order.
    int r = static_cast<int>(m) - 1;
    while (r >= 0 && piv[r] == n - m + static_cast<unsigned>(r))
      --r;
    if (r < 0)
      break;
    ++piv[r];
    for (unsigned t = static_cast<unsigned>(r) + 1; t < m; ++t)
      piv[t] = piv[t - 1] + 1;
  }
  if (visited != total)
    throw std::logic_error("subspace enumeration count differs from the Gaussian binomial");
  return out;
}

Label to_label(Mat const &w)
{
  Label l;
  for (unsigned i = 0; i < w.rows; ++i) {
    std::vector<std::uint32_t> r;
    for (unsigned j = 0; j < w.cols; ++j)
      r.push_back(w(i, j));
    l.push_back(std::move(r));
  }
  return l;
}

Mat from_label(Label const &l, unsigned n)
{
  Mat w(static_cast<unsigned>(l.size()), n);
  for (unsigned i = 0; i < l.size(); ++i)
    for (unsigned j = 0; j < n; ++j)
      w(i, j) = static_cast<FElt>(l[i].at(j));
  return w;
}

namespace
{

struct Domain
{
  std::shared_ptr<Field const> field;
  std::vector<std::vector<Mat>> items;
  std::unordered_map<std::string, std::uint32_t> index;

  std::string key(std::vector<Mat> const &comps) const
  {
    std::string k;
    for (auto const &c : comps)
      k += key_of(c);
    return k;
  }
};

SubspaceAction make_action(std::shared_ptr<Domain> dom, std::vector<unsigned> dims,
                           SubspaceClass cls, std::vector<Mat> const &gens,
                           std::optional<Order> certified, std::string description)
{
  SubspaceAction a;
  a.dims = std::move(dims);
  a.cls = cls;
  a.induce = [dom](Mat const &x) {
    Field const &F = *dom->field;
    std::vector<Point> img(dom->items.size());
    std::vector<Mat> comps;
    for (std::size_t i = 0; i < dom->items.size(); ++i) {
      comps.clear();
      for (auto const &c : dom->items[i])
        comps.push_back(image(F, c, x));
      auto it = dom->index.find(dom->key(comps));
      if (it == dom->index.end())
        throw std::logic_error("subspace domain is not closed under the group");
      img[i] = it->second;
    }
    return Perm(std::move(img));
  };
  a.action.description = std::move(description);
  a.action.kind = LabelKind::subspace;
  auto index = std::make_shared<std::map<Label, std::uint32_t>>();
  for (std::uint32_t i = 0; i < dom->items.size(); ++i) {
    Label l;
    for (auto const &c : dom->items[i]) {
      auto part = to_label(c);
      l.insert(l.end(), part.begin(), part.end());
    }
    index->emplace(l, i);
    a.action.labels.push_back(std::move(l));
  }
  a.action.index = index;
  for (auto const &g : gens)
    a.action.generator_images.push_back(a.induce(g));
  std::size_t deg = dom->items.size();
  a.action.group = certified ? PermGroup(deg, a.action.generator_images, *certified)
                             : PermGroup(deg, a.action.generator_images);
  return a;
}

// Whether |S/Z| is the order of every nontrivial transitive action of S/Z.
bool simple_quotient(Family f, unsigned n, unsigned q)
{
  if (f == Family::SU && n == 3 && q == 2)
    return false;
  if (f == Family::Sp && n == 4 && q == 2)
    return false;
  if (f == Family::SL && n == 2 && q < 4)
    return false;
  return true;
}

std::shared_ptr<Domain> domain_of(MatrixGroupSpec const &g, std::vector<std::vector<Mat>> items)
{
  auto d = std::make_shared<Domain>();
  d->field = g.space.field;
  d->items = std::move(items);
  for (std::uint32_t i = 0; i < d->items.size(); ++i)
    if (!d->index.emplace(d->key(d->items[i]), i).second)
      throw std::logic_error("duplicate subspace in action domain");
  return d;
}

// Transvection-type generators per family, before validation.
std::vector<Mat> candidate_generators(FormedSpace const &s)
{
  Field const &F = *s.field;
  unsigned n = s.n, k = s.k;
  std::vector<Mat> gens;
  unsigned e = F.degree();
  // An additive basis of the field over its prime field.
  std::vector<FElt> basis;
  for (unsigned i = 0; i < e; ++i)
    basis.push_back(F.exp(i));

  auto transvection = [&](Vec const &u, FElt c) {
    // v -> v + c form(v, u) u
    Mat x = Mat::identity(n);
    for (unsigned i = 0; i < n; ++i) {
      FElt t = F.mul(c, s.form(s.basis(i), u));
      if (!t)
        continue;
      for (unsigned j = 0; j < n; ++j)
        x(i, j) = F.add(x(i, j), F.mul(t, u[j]));
    }
    return x;
  };

  switch (s.family) {
  case Family::SL:
    for (unsigned i = 0; i < n; ++i)
      for (unsigned j = 0; j < n; ++j)
        if (i != j)
          for (FElt c : basis) {
            Mat x = Mat::identity(n);
            x(i, j) = c;
            gens.push_back(x);
          }
    break;
  case Family::Sp: {
    std::vector<Vec> us;
    for (unsigned i = 0; i < n; ++i)
      us.push_back(s.basis(i));
    for (unsigned i = 0; i < k; ++i)
      for (unsigned j = i + 1; j < k; ++j) {
        us.push_back(axpy(F, 1, s.basis(s.e(i)), s.basis(s.e(j))));
        us.push_back(axpy(F, 1, s.basis(s.e(i)), s.basis(s.f(j))));
      }
    for (auto const &u : us)
      for (FElt c : basis)
        gens.push_back(transvection(u, c));
    break;
  }
  case Family::SU: {
    unsigned half = F.degree() / 2;
    // Trace-zero scalars a (a + a^q = 0), spanning that F_p-space.
    std::vector<FElt> tz;
    {
      FElt a0 = 0;
      for (unsigned c = 1; c < F.q() && !a0; ++c)
        if (F.add(static_cast<FElt>(c), s.conj(static_cast<FElt>(c))) == 0)
          a0 = static_cast<FElt>(c);
      // F_q inside GF(q^2) is generated by omega^(q+1).
      FElt w = F.exp(s.q + 1);
      FElt t = a0;
      for (unsigned i = 0; i < half; ++i, t = F.mul(t, w))
        tz.push_back(t);
    }
    std::vector<Vec> us;
    for (unsigned i = 0; i < k; ++i) {
      us.push_back(s.basis(s.e(i)));
      us.push_back(s.basis(s.f(i)));
      us.push_back(axpy(F, tz[0], s.basis(s.f(i)), s.basis(s.e(i))));
      for (unsigned j = 0; j < k; ++j)
        if (j != i)
          for (FElt c : basis)
            us.push_back(axpy(F, c, s.basis(s.f(j)), s.basis(s.e(i))));
    }
    for (auto const &u : us)
      for (FElt a : tz)
        gens.push_back(transvection(u, a));
    // x -> x + b e_i with compensation on f_i (h(x,x) = 1).
    for (unsigned xi : s.aniso)
      for (unsigned i = 0; i < k; ++i)
        for (FElt b : basis) {
          Mat x = Mat::identity(n);
          x(xi, s.e(i)) = b;
          x(s.f(i), xi) = F.neg(s.conj(b));
          FElt nb = F.mul(b, s.conj(b));
          x(s.f(i), s.e(i)) = solve_trace(F, half, F.neg(nb));
          gens.push_back(x);
        }
    // A torus element.
    {
      Mat t = Mat::identity(n);
      FElt w = F.primitive();
      t(s.e(0), s.e(0)) = w;
      t(s.f(0), s.f(0)) = F.inv(s.conj(w));
      if (!s.aniso.empty()) {
        t(s.aniso[0], s.aniso[0]) = F.div(s.conj(w), w);
      } else {
        t(s.e(1), s.e(1)) = F.inv(w);
        t(s.f(1), s.f(1)) = s.conj(w);
      }
      gens.push_back(t);
    }
    break;
  }
  case Family::O_odd:
  case Family::O_plus:
  case Family::O_minus: {
    std::vector<Vec> cand;
    for (unsigned i = 0; i < n; ++i)
      cand.push_back(s.basis(i));
    for (unsigned i = 0; i < n; ++i)
      for (unsigned j = i + 1; j < n; ++j)
        for (FElt c : {FElt{1}, F.primitive()})
          cand.push_back(axpy(F, c, s.basis(j), s.basis(i)));
    // With every basis vector singular, e_i + f_i + c b_j are needed too.
    for (unsigned i = 0; i < k; ++i) {
      Vec h = axpy(F, 1, s.basis(s.e(i)), s.basis(s.f(i)));
      for (unsigned j = 0; j < n; ++j)
        if (j != s.e(i) && j != s.f(i))
          for (FElt c : {FElt{1}, F.primitive()})
            cand.push_back(axpy(F, c, s.basis(j), h));
    }
    auto reflection = [&](Vec const &u) {
      FElt qi = F.inv(s.quadratic(u));
      Mat x = Mat::identity(n);
      for (unsigned i = 0; i < n; ++i) {
        FElt t = F.neg(F.mul(s.form(s.basis(i), u), qi));
        if (!t)
          continue;
        for (unsigned j = 0; j < n; ++j)
          x(i, j) = F.add(x(i, j), F.mul(t, u[j]));
      }
      return x;
    };
    std::vector<Vec> sq, ns;
    for (auto const &v : cand) {
      FElt qv = s.quadratic(v);
      if (!qv)
        continue;
      (F.is_square(qv) ? sq : ns).push_back(v);
    }
    for (auto const *cls : {&sq, &ns}) {
      if (cls->empty())
        continue;
      Mat r0 = reflection((*cls)[0]);
      for (std::size_t i = 1; i < cls->size(); ++i)
        gens.push_back(mul(F, r0, reflection((*cls)[i])));
    }
    break;
  }
  }
  // Drop duplicates and the identity.
  std::set<Mat> seen;
  std::vector<Mat> out;
  for (auto &g : gens)
    if (!is_identity(g) && seen.insert(g).second)
      out.push_back(std::move(g));
  return out;
}

// A product of reflections in vectors whose Q-values lie in different
// square classes (q odd), or one reflection.
Mat so_outside_omega(FormedSpace const &s)
{
  Field const &F = *s.field;
  auto reflection = [&](Vec const &u) {
    FElt qi = F.inv(s.quadratic(u));
    Mat x = Mat::identity(s.n);
    for (unsigned i = 0; i < s.n; ++i) {
      FElt t = F.neg(F.mul(s.form(s.basis(i), u), qi));
      for (unsigned j = 0; j < s.n && t; ++j)
        x(i, j) = F.add(x(i, j), F.mul(t, u[j]));
    }
    return x;
  };
  // e_1 + c f_1 has Q = c.
  auto vec = [&](FElt c) { return axpy(F, c, s.basis(s.f(0)), s.basis(s.e(0))); };
  if (F.q() % 2 == 0)
    return reflection(vec(1));
  FElt non = F.primitive();
  return mul(F, reflection(vec(1)), reflection(vec(non)));
}

} // namespace

std::optional<std::size_t> SubspaceAction::index_of(std::vector<Mat> const &components) const
{
  Label l;
  for (auto const &c : components) {
    auto part = to_label(c);
    l.insert(l.end(), part.begin(), part.end());
  }
  return action.index_of(l);
}

bool MatrixGroupSpec::contains(Mat const &x) const
{
  Field const &F = *space.field;
  if (x.rows != space.n || x.cols != space.n)
    return false;
  if (det(F, x) != 1 || !space.preserves(x))
    return false;
  Perm p = points->induce(x);
  if (!points->action.group.contains(p))
    return false;
  // A scalar in the isometry group that is not in S could account for
  // the image; only -1 in even-dimensional Omega with odd q arises.
  Family f = space.family;
  if ((f == Family::O_plus || f == Family::O_minus) && F.q() % 2 && center == 1)
    throw std::domain_error("Omega membership is not decided by the point action here");
  return true;
}

MatrixGroupSpec build_group(Family f, unsigned n, unsigned q)
{
  MatrixGroupSpec g;
  g.space = formed_space(f, n, q);
  g.name = group_name(f, n, q);
  g.order = classical_order(f, n, q);
  g.center = center_order(f, n, q);
  Order rest = g.order;
  for (unsigned long long r = 2; r <= 1000 && rest > 1; ++r) {
    unsigned e = 0;
    while (rest % r == 0) {
      rest /= r;
      ++e;
    }
    if (e)
      g.order_factors.emplace_back(r, e);
  }
  if (rest > 1) {
    if (rest > ~0ull)
      throw std::logic_error("order has a large prime cofactor");
    g.order_factors.emplace_back(static_cast<unsigned long long>(rest), 1);
  }

  Field const &F = *g.space.field;
  auto cands = candidate_generators(g.space);
  for (auto const &x : cands)
    if (det(F, x) != 1 || !g.space.preserves(x))
      throw std::logic_error("candidate generator is not in " + g.name);

  auto pts = enumerate_subspaces(g.space, 1, {}, kSubspaceBudget);
  std::vector<std::vector<Mat>> items;
  for (auto &p : pts)
    items.push_back({std::move(p)});
  auto dom = domain_of(g, std::move(items));
  Order target = g.projective_order();
  SubspaceAction full;
  try {
    full = make_action(dom, {1}, {}, cands, target, "points");
    (void)full.action.group.order();
  } catch (std::logic_error const &e) {
    throw std::logic_error("generators of " + g.name + " fail the order check: " + e.what());
  }
  if (orthogonal(f)) {
    auto out = so_outside_omega(g.space);
    if (full.action.group.contains(full.induce(out)))
      throw std::logic_error("generators of " + g.name + " reach the index-2 overgroup");
  }

  // Two random elements usually suffice; they are kept if the point action
  // again reaches the full order.
  std::vector<Mat> chosen = cands;
  {
    std::mt19937_64 rng(0x51ee7ULL + n * 131 + q);
    std::vector<Mat> state = cands;
    while (state.size() < 8)
      state.push_back(state[state.size() % cands.size()]);
    auto step = [&] {
      std::uniform_int_distribution<std::size_t> pick(0, state.size() - 1);
      std::size_t a = pick(rng), b = pick(rng);
      while (b == a)
        b = pick(rng);
      state[a] = (rng() & 1) ? mul(F, state[a], state[b]) : mul(F, state[b], state[a]);
      return state[a];
    };
    for (int i = 0; i < 40; ++i)
      step();
    for (int attempt = 0; attempt < 6; ++attempt) {
      std::vector<Mat> two{step(), step()};
      for (int i = 0; i < 5; ++i)
        two[1] = mul(F, two[1], step());
      try {
        std::vector<Perm> imgs{full.induce(two[0]), full.induce(two[1])};
        StabChain::Options opts;
        opts.known_order = target;
        opts.quiet_rounds = 10;
        StabChain probe(dom->items.size(), imgs, opts);
        if (probe.order() == target) {
          chosen = two;
          break;
        }
      } catch (std::logic_error const &) {
      }
    }
  }
  g.generators = chosen;
  auto final_action = make_action(dom, {1}, {}, chosen, target, "points");
  (void)final_action.action.group.order();
  g.points = std::make_shared<SubspaceAction const>(std::move(final_action));
  return g;
}

SubspaceAction subspace_action(MatrixGroupSpec const &g, unsigned m, SubspaceClass c,
                               std::size_t budget)
{
  auto ws = enumerate_subspaces(g.space, m, c, budget);
  if (ws.empty())
    throw std::invalid_argument("no subspaces of that class");
  std::vector<std::vector<Mat>> items;
  for (auto &w : ws)
    items.push_back({std::move(w)});
  auto dom = domain_of(g, std::move(items));
  std::optional<Order> cert;
  auto const &sp = g.space;
  if (simple_quotient(sp.family, sp.n, sp.q) && m < sp.n)
    cert = g.projective_order();
  auto a = make_action(dom, {m}, c, g.generators, cert,
                       g.name + " on " + class_name(c) + " " + std::to_string(m) + "-spaces");
  if (!is_transitive(a.action.group))
    throw std::logic_error("group is not transitive on the subspace class");
  return a;
}

SubspaceAction pair_action(MatrixGroupSpec const &g, unsigned d1, unsigned d2, bool incident)
{
  auto const &sp = g.space;
  Field const &F = *sp.field;
  if (!(0 < d1 && d1 < d2 && d2 < sp.n) || (!incident && d1 + d2 != sp.n))
    throw std::invalid_argument("pair dimensions out of range");
  auto w1s = enumerate_subspaces(sp, d1, {});
  auto w2s = enumerate_subspaces(sp, d2, {});
  std::vector<std::vector<Mat>> items;
  for (auto const &a : w1s)
    for (auto const &b : w2s) {
      Mat st(d1 + d2, sp.n);
      std::copy(a.a.begin(), a.a.end(), st.a.begin());
      std::copy(b.a.begin(), b.a.end(), st.a.begin() + a.a.size());
      unsigned r = rank(F, st);
      if (incident ? r == d2 : r == sp.n)
        items.push_back({a, b});
    }
  auto dom = domain_of(g, std::move(items));
  std::optional<Order> cert;
  if (simple_quotient(sp.family, sp.n, sp.q))
    cert = g.projective_order();
  auto a = make_action(dom, {d1, d2}, {}, g.generators, cert,
                       g.name + (incident ? " on flags " : " on antiflags ") +
                           std::to_string(d1) + "<" + std::to_string(d2));
  if (!is_transitive(a.action.group))
    throw std::logic_error("group is not transitive on the pairs");
  return a;
}

Perm duality(MatrixGroupSpec const &g, SubspaceAction const &a)
{
  auto const &sp = g.space;
  Field const &F = *sp.field;
  if (sp.family != Family::SL || a.dims.size() != 2 || a.dims[0] + a.dims[1] != sp.n)
    throw std::invalid_argument("duality needs SL on pairs with d1 + d2 = n");
  std::vector<Point> img(a.action.degree());
  for (std::size_t i = 0; i < img.size(); ++i) {
    auto const &l = a.action.labels[i];
    Label l1(l.begin(), l.begin() + a.dims[0]), l2(l.begin() + a.dims[0], l.end());
    Mat w1 = from_label(l1, sp.n), w2 = from_label(l2, sp.n);
    Mat p1 = rref(F, null_space(F, w2)), p2 = rref(F, null_space(F, w1));
    auto j = a.index_of({p1, p2});
    if (!j)
      throw std::logic_error("duality image missing from the domain");
    img[i] = static_cast<Point>(*j);
  }
  return Perm(std::move(img));
}

Perm frobenius_image(MatrixGroupSpec const &g, SubspaceAction const &a)
{
  Field const &F = *g.space.field;
  std::vector<Point> img(a.action.degree());
  for (std::size_t i = 0; i < img.size(); ++i) {
    auto const &l = a.action.labels[i];
    std::vector<Mat> comps;
    std::size_t row = 0;
    for (unsigned d : a.dims) {
      Label part(l.begin() + row, l.begin() + row + d);
      row += d;
      Mat w = from_label(part, g.space.n);
      for (auto &e : w.a)
        e = F.frobenius(e);
      comps.push_back(rref(F, w));
    }
    auto j = a.index_of(comps);
    if (!j)
      throw std::logic_error("field automorphism does not preserve the domain");
    img[i] = static_cast<Point>(*j);
  }
  return Perm(std::move(img));
}

Mat outside_omega(MatrixGroupSpec const &g)
{
  if (!orthogonal(g.space.family))
    throw std::invalid_argument("outside_omega needs an orthogonal family");
  return so_outside_omega(g.space);
}

SingerCycle singer_cycle(MatrixGroupSpec const &g, std::vector<unsigned> const &idx)
{
  auto const &sp = g.space;
  Field const &F = *sp.field;
  unsigned n = sp.n, k = sp.k, m = static_cast<unsigned>(idx.size());
  std::vector<unsigned> I = idx;
  std::sort(I.begin(), I.end());
  if (sp.family == Family::SL)
    throw PreconditionError("the Singer lemma concerns formed spaces");
  if (m == 0 || std::adjacent_find(I.begin(), I.end()) != I.end() || I.back() >= k)
    throw PreconditionError("I must be a nonempty subset of {1..k}");
  bool even_su = sp.family == Family::SU && n % 2 == 0;
  bool even_o = sp.family == Family::O_plus || sp.family == Family::O_minus;
  if ((even_su || even_o) && 2 * m >= n)
    throw PreconditionError("dim(W) < n/2 fails");
  if (sp.family == Family::O_odd && 2 * m >= n - 1)
    throw PreconditionError("dim(W) < (n-1)/2 fails");

  auto poly = primitive_polynomial(F, m);
  Mat c = companion(F, poly);
  Mat a = Mat::identity(k);
  for (unsigned r = 0; r < m; ++r)
    for (unsigned s = 0; s < m; ++s)
      a(I[r], I[s]) = c(r, s);
  FElt d = det(F, a);
  bool compensate = even_su || (orthogonal(sp.family) && F.q() % 2);
  if (compensate) {
    unsigned j = 0;
    while (j < k && std::binary_search(I.begin(), I.end(), j))
      ++j;
    if (j == k)
      throw PreconditionError("no coordinate of E outside W to balance the determinant");
    a(j, j) = F.inv(d);
  }
  // diag(A, conj(A^-1)^T) on E + F, then the anisotropic part.
  Mat ainv = inverse(F, a);
  Mat dblock = transpose(ainv);
  for (auto &e : dblock.a)
    e = sp.conj(e);
  Mat x = Mat::identity(n);
  for (unsigned r = 0; r < k; ++r)
    for (unsigned s = 0; s < k; ++s) {
      x(sp.e(r), sp.e(s)) = a(r, s);
      x(sp.f(r), sp.f(s)) = dblock(r, s);
    }
  if (sp.family == Family::SU && n % 2)
    x(n - 1, n - 1) = F.div(sp.conj(d), d);   // det(A)^(q-1)
  bool in_s = false;
  try {
    in_s = g.contains(x);
  } catch (std::domain_error const &) {
    throw PreconditionError("membership of the Singer element in Omega is undecided");
  }
  if (!in_s)
    throw std::logic_error("constructed Singer element is not in " + g.name);

  SingerCycle out;
  out.element = x;
  unsigned long long target = 1;
  for (unsigned i = 0; i < m; ++i)
    target *= F.q();
  target -= 1;
  out.order_on_w = has_order(F, c, target) ? target : order(F, c, target);
  // Orbit of e_{I[0]} under <x> inside W.
  std::set<Vec> orbit;
  Vec v = sp.basis(sp.e(I[0]));
  for (unsigned long long t = 0; t <= target && orbit.insert(v).second; ++t)
    v = mul(F, v, x);
  bool inside = std::all_of(orbit.begin(), orbit.end(), [&](Vec const &w) {
    for (unsigned j = 0; j < n; ++j)
      if (w[j] && !std::binary_search(I.begin(), I.end(), j))
        return false;
    return true;
  });
  out.irreducible = inside && orbit.size() == target;
  return out;
}

UTResult ut_beautiful(MatrixGroupSpec const &g, SubspaceAction const &a, UTRecipe const &r)
{
  UTResult res;
  for (auto const *list : {&r.u, &r.t})
    for (auto const &x : *list)
      if (!g.contains(x)) {
        res.failed = "recipe element is not in " + g.name;
        return res;
      }
  auto w0 = a.index_of(r.omega0);
  if (!w0) {
    res.failed = "ω0 is not in the action domain";
    return res;
  }
  Point omega0 = static_cast<Point>(*w0);
  std::size_t deg = a.action.degree();
  std::vector<Perm> up, tp;
  for (auto const &x : r.u)
    up.push_back(a.induce(x));
  for (auto const &x : r.t)
    tp.push_back(a.induce(x));
  PermGroup U = subgroup_generated(deg, up), T = subgroup_generated(deg, tp);
  res.u_order = U.order();
  res.t_order = T.order();
  res.u_meet_m = res.u_order / orbit(U, omega0).size();
  res.t_in_m = std::all_of(tp.begin(), tp.end(), [&](Perm const &p) { return p[omega0] == omega0; });
  if (r.claims_u_meets_m_trivially && res.u_meet_m != 1) {
    res.failed = "U ∩ M is not trivial";
    return res;
  }
  if (r.claims_t_in_m && !res.t_in_m) {
    res.failed = "T is not contained in M";
    return res;
  }
  std::vector<Perm> hp = up;
  hp.insert(hp.end(), tp.begin(), tp.end());
  PermGroup H = subgroup_generated(deg, hp);
  res.h_order = H.order();
  res.lambda = orbit(H, omega0);
  auto on_lambda = induced(H.generators(), res.lambda);
  res.h_2_transitive = res.lambda.size() >= 2 &&
                       pair_orbit_count(on_lambda.generators(), res.lambda.size()) == 1;
  if (!res.h_2_transitive) {
    res.failed = "H is not 2-transitive on Λ";
    return res;
  }
  auto check = is_beautiful(a.action.group, res.lambda);
  if (!check.certificate) {
    res.failed = check.failed;
    return res;
  }
  res.certificate = std::move(check.certificate);
  return res;
}

namespace
{

std::vector<Mat> closure(Field const &f, std::vector<Mat> const &gens, std::size_t limit)
{
  unsigned n = gens.empty() ? 0 : gens[0].rows;
  std::set<Mat> seen{Mat::identity(n)};
  std::vector<Mat> queue{Mat::identity(n)};
  for (std::size_t i = 0; i < queue.size(); ++i)
    for (auto const &x : gens) {
      Mat y = mul(f, queue[i], x);
      if (seen.insert(y).second) {
        if (seen.size() > limit)
          throw std::length_error("matrix group larger than the closure limit");
        queue.push_back(y);
      }
    }
  return queue;
}

Mat span_row(Vec const &v)
{
  Mat m(1, static_cast<unsigned>(v.size()));
  for (unsigned j = 0; j < v.size(); ++j)
    m(0, j) = v[j];
  return m;
}

} // namespace

UTRecipe su_affine_recipe(MatrixGroupSpec const &g)
{
  auto const &sp = g.space;
  Field const &F = *sp.field;
  if (sp.family != Family::SU || sp.q != 2 || sp.n % 2 == 0 || sp.n < 5)
    throw PreconditionError("the affine recipe needs SU_n(2) with n odd and n >= 5");
  unsigned n = sp.n, xi = sp.aniso[0];
  unsigned half = F.degree() / 2;
  UTRecipe r;
  r.id = "su-affine";
  r.omega0 = {span_row(sp.basis(xi))};
  // u_v: x -> x + v for v in <e1, e2>, balanced on f1, f2.
  auto u_of = [&](Vec const &v) {
    Mat x = Mat::identity(n);
    for (unsigned j = 0; j < n; ++j)
      x(xi, j) = F.add(x(xi, j), v[j]);
    for (unsigned i = 0; i < 2; ++i) {
      FElt vi = v[sp.e(i)];
      x(sp.f(i), xi) = F.neg(sp.conj(vi));
      for (unsigned l = i + 1; l < 2; ++l)
        x(sp.f(i), sp.e(l)) = F.neg(F.mul(sp.conj(vi), v[sp.e(l)]));
      x(sp.f(i), sp.e(i)) = solve_trace(F, half, F.neg(F.mul(vi, sp.conj(vi))));
    }
    return x;
  };
  for (unsigned i = 0; i < 2; ++i)
    for (unsigned b = 0; b < F.degree(); ++b) {
      Vec v(n, 0);
      v[sp.e(i)] = F.exp(b);
      r.u.push_back(u_of(v));
    }
  r.t.push_back(singer_cycle(g, {0, 1}).element);
  r.claims_u_meets_m_trivially = false;   // the x-fixing part of U is central
  return r;
}

UTRecipe sl3_unital_recipe(MatrixGroupSpec const &g)
{
  auto const &sp = g.space;
  if (sp.family != Family::SL || sp.n != 3 || sp.q != 4)
    throw PreconditionError("the unital recipe needs SL_3(4)");
  Field const &F = *sp.field;
  // SU_3(2) inside SL_3(4), with its own hermitian form on the same basis.
  FormedSpace h = formed_space(Family::SU, 3, 2);
  auto su = build_group(Family::SU, 3, 2);
  auto elems = closure(F, su.generators, 1000);
  UTRecipe r;
  r.id = "sl3-unital";
  Mat p0 = span_row(h.basis(h.e(0)));
  Mat l0 = rref(F, h.perp(p0));
  r.omega0 = {p0, l0};
  for (auto const &x : elems) {
    if (is_identity(x))
      continue;
    if (order(F, x, 4) == 3)
      r.u.push_back(x);
    Vec img = mul(F, h.basis(0), x);
    if (img[1] == 0 && img[2] == 0)
      r.t.push_back(x);
  }
  r.claims_u_meets_m_trivially = false;   // the centre of SU_3(2) lies in U
  return r;
}

UTRecipe sp4_ovoid_recipe(MatrixGroupSpec const &g)
{
  auto const &sp = g.space;
  Field const &F = *sp.field;
  if (sp.family != Family::Sp || sp.n != 4 || sp.q % 2)
    throw PreconditionError("the ovoid recipe needs Sp_4(q) with q even");
  unsigned n = 4;
  // Q(v) = v_e1 v_f1 + v_e2^2 + v_e2 v_f2 + zeta v_f2^2 polarises to the
  // symplectic form; its singular points form an elliptic quadric.
  FElt zeta = formed_space(Family::O_minus, 8, sp.q).zeta;
  auto Q = [&](Vec const &v) {
    FElt s = F.mul(v[sp.e(0)], v[sp.f(0)]);
    s = F.add(s, F.mul(v[sp.e(1)], v[sp.e(1)]));
    s = F.add(s, F.mul(v[sp.e(1)], v[sp.f(1)]));
    return F.add(s, F.mul(zeta, F.mul(v[sp.f(1)], v[sp.f(1)])));
  };
  Vec e1 = sp.basis(sp.e(0));
  // Eichler maps E(e1, w): v -> v + B(v,e1) w - B(v,w) e1 - Q(w) B(v,e1) e1.
  auto eichler = [&](Vec const &w) {
    Mat x(n, n);
    for (unsigned i = 0; i < n; ++i) {
      Vec b = sp.basis(i);
      FElt be = sp.form(b, e1), bw = sp.form(b, w);
      Vec v = axpy(F, be, w, b);
      v = axpy(F, F.neg(bw), e1, v);
      v = axpy(F, F.neg(F.mul(Q(w), be)), e1, v);
      for (unsigned j = 0; j < n; ++j)
        x(i, j) = v[j];
    }
    return x;
  };
  UTRecipe r;
  r.id = "sp4-ovoid";
  r.omega0 = {span_row(sp.basis(sp.f(0)))};
  for (unsigned i : {sp.e(1), sp.f(1)})
    for (unsigned b = 0; b < F.degree(); ++b) {
      Vec w(n, 0);
      w[i] = F.exp(b);
      r.u.push_back(eichler(w));
    }
  Mat s = Mat::identity(n);
  s(sp.e(0), sp.e(0)) = F.primitive();
  s(sp.f(0), sp.f(0)) = F.inv(F.primitive());
  r.t.push_back(s);
  // A rotation of order q+1 of the anisotropic plane <e2, f2>.
  auto q2 = [&](FElt a, FElt b) {
    return F.add(F.add(F.mul(a, a), F.mul(a, b)), F.mul(zeta, F.mul(b, b)));
  };
  unsigned qq = F.q();
  bool found = false;
  for (unsigned c = 0; c < qq * qq * qq * qq && !found; ++c) {
    FElt m00 = static_cast<FElt>(c % qq), m01 = static_cast<FElt>(c / qq % qq),
         m10 = static_cast<FElt>(c / qq / qq % qq), m11 = static_cast<FElt>(c / qq / qq / qq);
    if (q2(m00, m01) != 1 || q2(m10, m11) != zeta)
      continue;
    // Polar form value on the images must stay 1.
    FElt polar = F.add(F.sub(q2(F.add(m00, m10), F.add(m01, m11)), q2(m00, m01)),
                       F.neg(q2(m10, m11)));
    if (polar != 1)
      continue;
    Mat rot = Mat::identity(n);
    rot(sp.e(1), sp.e(1)) = m00;
    rot(sp.e(1), sp.f(1)) = m01;
    rot(sp.f(1), sp.e(1)) = m10;
    rot(sp.f(1), sp.f(1)) = m11;
    if (det(F, rot) == 0 || order(F, rot, 1000) != qq + 1)
      continue;
    r.t.push_back(rot);
    found = true;
  }
  if (!found)
    throw std::logic_error("no rotation of order q+1 found");
  return r;
}

ExplicitSU explicit_su_point_stabilizer(MatrixGroupSpec const &g, SubspaceAction const &a,
                                        int variant)
{
  auto const &sp = g.space;
  Field const &F = *sp.field;
  unsigned q = sp.q, n = sp.n;
  if (sp.family != Family::SU || n < 3)
    throw PreconditionError("the family needs SU_n(q) with n >= 3");
  if (q == 2)
    throw PreconditionError("q = 2 is not covered by either variant");
  bool three = (q + 1) % 3 == 0;
  if (variant == 0)
    variant = three ? 2 : 1;
  if (variant == 1 && three)
    throw PreconditionError("gcd(q^2-1, q-2) = 1 fails");
  if (variant == 2 && !three)
    throw PreconditionError("3 does not divide q+1");
  if (a.dims != std::vector<unsigned>{1} || a.cls.kind != SubspaceKind::nondegenerate)
    throw PreconditionError("the action must be on nondegenerate points");
  unsigned half = F.degree() / 2;

  // Basis e1, y, f1 of W', then a basis of its perp.
  Vec e1 = sp.basis(sp.e(0)), f1 = sp.basis(sp.f(0)), y;
  if (n == 3) {
    y = sp.basis(sp.aniso[0]);
  } else {
    FElt alpha = solve_trace(F, half, 1);
    y = axpy(F, alpha, sp.basis(sp.f(1)), sp.basis(sp.e(1)));
  }
  Mat wp = rows_of({e1, y, f1}, n);
  Mat rest = sp.perp(wp);
  Mat P(n, n);
  for (unsigned j = 0; j < n; ++j) {
    P(0, j) = e1[j];
    P(1, j) = y[j];
    P(2, j) = f1[j];
  }
  for (unsigned i = 0; i < rest.rows; ++i)
    for (unsigned j = 0; j < n; ++j)
      P(3 + i, j) = rest(i, j);
  Mat Pinv = inverse(F, P);
  auto embed = [&](Mat const &x3) {
    Mat b = Mat::identity(n);
    for (unsigned i = 0; i < 3; ++i)
      for (unsigned j = 0; j < 3; ++j)
        b(i, j) = x3(i, j);
    return mul(F, mul(F, Pinv, b), P);
  };
  auto in_fq = [&](FElt c) { return sp.conj(c) == c; };

  ExplicitSU out;
  out.variant = variant;
  std::set<Mat> all;
  for (unsigned c = 1; c < F.q(); ++c) {
    FElt cc = static_cast<FElt>(c);
    if (variant == 2 && !in_fq(cc))
      continue;
    for (unsigned b = 0; b < F.q(); ++b) {
      FElt bb = static_cast<FElt>(b);
      if (variant == 2 && !in_fq(bb))
        continue;
      for (unsigned av = 0; av < F.q(); ++av) {
        FElt aa = static_cast<FElt>(av);
        FElt nb = variant == 1 ? F.mul(bb, sp.conj(bb)) : F.mul(bb, bb);
        if (F.add(F.add(aa, sp.conj(aa)), nb) != 0)
          continue;
        // Columns are images; the row convention uses the transpose.
        Mat col(3, 3);
        if (variant == 1) {
          FElt cq1 = F.div(sp.conj(cc), cc);   // c^(q-1)
          col(0, 0) = cc;
          col(0, 1) = F.neg(F.mul(cc, sp.conj(bb)));
          col(0, 2) = F.mul(cc, aa);
          col(1, 1) = cq1;
          col(1, 2) = F.mul(cq1, bb);
          col(2, 2) = F.inv(sp.conj(cc));
        } else {
          col(0, 0) = cc;
          col(0, 1) = F.neg(F.mul(cc, bb));
          col(0, 2) = F.mul(cc, aa);
          col(1, 1) = 1;
          col(1, 2) = bb;
          col(2, 2) = F.inv(cc);
        }
        all.insert(embed(transpose(col)));
      }
    }
  }
  out.h.assign(all.begin(), all.end());
  Order qq = q;
  out.expected_order = variant == 1 ? qq * qq * qq * (qq * qq - 1) : qq * qq * (qq - 1);
  for (auto const &x : out.h)
    if (!g.contains(x))
      throw std::logic_error("explicit matrix is not in " + g.name);
  // The set is a group: closed under products with every element.
  auto cl = closure(F, out.h, out.h.size() + 1);
  out.h_order = cl.size();

  for (unsigned c = 0; c < F.q(); ++c) {
    FElt gamma = static_cast<FElt>(c);
    if (variant == 2 && !in_fq(gamma))
      continue;
    Mat w = rref(F, span_row(axpy(F, gamma, e1, y)));
    auto i = a.index_of({w});
    if (!i)
      throw std::logic_error("Λ point missing from the action");
    out.lambda.push_back(static_cast<Point>(*i));
  }
  std::sort(out.lambda.begin(), out.lambda.end());
  std::vector<Perm> hp;
  for (auto const &x : out.h)
    hp.push_back(a.induce(x));
  auto hgroup = subgroup_generated(a.action.degree(), hp);
  try {
    auto on = induced(hgroup.generators(), out.lambda);
    out.h_2_transitive = pair_orbit_count(on.generators(), out.lambda.size()) == 1;
  } catch (std::invalid_argument const &) {
    out.h_2_transitive = false;
  }
  out.check = is_beautiful(a.action.group, out.lambda);
  return out;
}

} // namespace relcx
