#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace relcx
{

// Field elements are codes 0..q-1: the base-p digits of the coefficients of
// a polynomial in the primitive element, lowest degree first.
using FElt = std::uint8_t;

inline constexpr unsigned kMaxFieldOrder = 32;

class Field
{
public:
  explicit Field(unsigned q);
  // Shared, immutable instances.
  static std::shared_ptr<Field const> get(unsigned q);

  unsigned q() const { return _q; }
  unsigned p() const { return _p; }
  unsigned degree() const { return _e; }
  // Monic minimal polynomial of the primitive element over GF(p), low to
  // high, leading 1 included.
  std::vector<unsigned> const &polynomial() const { return _poly; }
  FElt primitive() const { return _exp[1 % (_q - 1)]; }

  FElt add(FElt a, FElt b) const { return _add[a * _q + b]; }
  FElt sub(FElt a, FElt b) const { return _add[a * _q + _neg[b]]; }
  FElt neg(FElt a) const { return _neg[a]; }
  FElt mul(FElt a, FElt b) const { return _mul[a * _q + b]; }
  FElt inv(FElt a) const;
  FElt div(FElt a, FElt b) const { return mul(a, inv(b)); }
  FElt pow(FElt a, long long k) const;
  // log base the primitive element; a must be nonzero.
  unsigned log(FElt a) const;
  FElt exp(long long k) const;
  bool is_square(FElt a) const;
  // a^(p^k).
  FElt frobenius(FElt a, unsigned k = 1) const;
  FElt from_int(long long k) const;   // image of the integer k

  std::string str(FElt a) const;

private:
  unsigned _q, _p, _e;
  std::vector<unsigned> _poly;
  std::vector<FElt> _add, _mul, _neg, _exp;
  std::vector<unsigned> _log;
};

// Row-major square or rectangular matrices over one field.
struct Mat
{
  unsigned rows = 0, cols = 0;
  std::vector<FElt> a;

  Mat() = default;
  Mat(unsigned r, unsigned c) : rows(r), cols(c), a(std::size_t{r} * c, 0) {}
  static Mat identity(unsigned n);

  FElt &operator()(unsigned i, unsigned j) { return a[std::size_t{i} * cols + j]; }
  FElt operator()(unsigned i, unsigned j) const { return a[std::size_t{i} * cols + j]; }
  std::vector<FElt> row(unsigned i) const;
  bool operator==(Mat const &) const = default;
  auto operator<=>(Mat const &) const = default;
};

using Vec = std::vector<FElt>;

Mat mul(Field const &f, Mat const &x, Mat const &y);
Vec mul(Field const &f, Vec const &v, Mat const &x);   // row vector times x
Mat transpose(Mat const &x);
Mat conjugate_entries(Field const &f, Mat const &x, unsigned k);   // entrywise a^(p^k)
FElt det(Field const &f, Mat x);
Mat inverse(Field const &f, Mat x);   // throws on singular input
Mat power(Field const &f, Mat const &x, unsigned long long k);
bool is_identity(Mat const &x);
// Multiplicative order by repeated multiplication; 0 above the limit.
unsigned long long order(Field const &f, Mat const &x, unsigned long long limit = 1'000'000);
// x^n = 1 and x^(n/r) != 1 for every prime r dividing n.
bool has_order(Field const &f, Mat const &x, unsigned long long n);

// Reduced row echelon form; zero rows dropped.
Mat rref(Field const &f, Mat x);
unsigned rank(Field const &f, Mat const &x);
// Rows spanning {v : x v^T = 0}.
Mat null_space(Field const &f, Mat const &x);

FElt dot(Field const &f, Vec const &v, Vec const &w);
Vec axpy(Field const &f, FElt a, Vec const &x, Vec const &y);   // a x + y
// First nonzero entry scaled to 1; the zero vector is left alone.
Vec normalized(Field const &f, Vec v);

// Monic polynomials over f, low to high with leading 1, in increasing code
// order; the first whose companion matrix has order q^m - 1.
std::vector<FElt> primitive_polynomial(Field const &f, unsigned m);
Mat companion(Field const &f, std::vector<FElt> const &poly);

std::vector<std::pair<unsigned long long, unsigned>> factorize(unsigned long long n);

} // namespace relcx
