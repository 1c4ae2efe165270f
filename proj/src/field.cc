#include "relcx/field.h"

#include <map>
#include <mutex>
#include <stdexcept>

namespace relcx
{

namespace
{

bool prime_power(unsigned q, unsigned &p, unsigned &e)
{
  if (q < 2)
    return false;
  for (p = 2; p * p <= q; ++p)
    if (q % p == 0)
      break;
  if (q % p != 0 || p * p > q)
    p = q;
  e = 0;
  unsigned r = q;
  while (r % p == 0) {
    r /= p;
    ++e;
  }
  return r == 1;
}

// Coefficient vectors mod a monic polynomial over GF(p).
std::vector<unsigned> times_x(std::vector<unsigned> const &v, std::vector<unsigned> const &poly,
                              unsigned p)
{
  unsigned e = static_cast<unsigned>(v.size());
  std::vector<unsigned> out(e, 0);
  unsigned top = v[e - 1];
  for (unsigned i = e - 1; i > 0; --i)
    out[i] = v[i - 1];
  for (unsigned i = 0; i < e; ++i)
    out[i] = (out[i] + (p - top) * poly[i]) % p;
  return out;
}

unsigned code_of(std::vector<unsigned> const &v, unsigned p)
{
  unsigned c = 0;
  for (std::size_t i = v.size(); i-- > 0;)
    c = c * p + v[i];
  return c;
}

} // namespace

Field::Field(unsigned q) : _q(q)
{
  if (!prime_power(q, _p, _e) || q > kMaxFieldOrder)
    throw std::invalid_argument("field order " + std::to_string(q) +
                                " is not a supported prime power");
  _exp.assign(q - 1, 0);
  if (_e == 1) {
    for (unsigned g = 1; g < q; ++g) {
      unsigned x = 1, k = 0;
      do {
        _exp[k++] = static_cast<FElt>(x);
        x = x * g % q;
      } while (x != 1 && k < q - 1);
      if (x == 1 && k == q - 1) {
        _poly = {(q - g) % q, 1};
        break;
      }
    }
  } else {
    // The lower coefficients run through the p^e codes in increasing order.
    for (unsigned c = 0; c < q && _poly.empty(); ++c) {
      std::vector<unsigned> poly(_e + 1, 0);
      for (unsigned i = 0, r = c; i < _e; ++i, r /= _p)
        poly[i] = r % _p;
      poly[_e] = 1;
      if (poly[0] == 0)
        continue;
      std::vector<unsigned> v(_e, 0);
      v[0] = 1;
      unsigned k = 0;
      bool ok = true;
      do {
        if (k == q - 1) {
          ok = false;
          break;
        }
        _exp[k++] = static_cast<FElt>(code_of(v, _p));
        v = times_x(v, poly, _p);
      } while (code_of(v, _p) != 1);
      if (ok && k == q - 1)
        _poly = poly;
    }
  }
  if (_poly.empty())
    throw std::logic_error("no primitive polynomial found");

  _log.assign(q, 0);
  for (unsigned k = 0; k + 1 < q; ++k)
    _log[_exp[k]] = k;

  _add.assign(q * q, 0);
  _mul.assign(q * q, 0);
  _neg.assign(q, 0);
  for (unsigned a = 0; a < q; ++a) {
    unsigned na = 0;
    for (unsigned i = 0, r = a, w = 1; i < _e; ++i, r /= _p, w *= _p)
      na += ((_p - r % _p) % _p) * w;
    _neg[a] = static_cast<FElt>(na);
    for (unsigned b = 0; b < q; ++b) {
      unsigned s = 0;
      for (unsigned i = 0, ra = a, rb = b, w = 1; i < _e; ++i, ra /= _p, rb /= _p, w *= _p)
        s += ((ra % _p + rb % _p) % _p) * w;
      _add[a * q + b] = static_cast<FElt>(s);
      if (a && b)
        _mul[a * q + b] = _exp[(_log[a] + _log[b]) % (q - 1)];
    }
  }
}

std::shared_ptr<Field const> Field::get(unsigned q)
{
  static std::mutex mu;
  static std::map<unsigned, std::shared_ptr<Field const>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto &slot = cache[q];
  if (!slot)
    slot = std::make_shared<Field const>(q);
  return slot;
}

FElt Field::inv(FElt a) const
{
  if (a == 0)
    throw std::domain_error("inverse of zero");
  return _exp[(_q - 1 - _log[a]) % (_q - 1)];
}

FElt Field::pow(FElt a, long long k) const
{
  if (a == 0) {
    if (k < 0)
      throw std::domain_error("negative power of zero");
    return k == 0 ? 1 : 0;
  }
  long long m = static_cast<long long>(_q) - 1;
  long long e = (static_cast<long long>(_log[a]) * (k % m)) % m;
  return exp(e);
}

unsigned Field::log(FElt a) const
{
  if (a == 0)
    throw std::domain_error("log of zero");
  return _log[a];
}

FElt Field::exp(long long k) const
{
  long long m = static_cast<long long>(_q) - 1;
  return _exp[static_cast<std::size_t>(((k % m) + m) % m)];
}

bool Field::is_square(FElt a) const { return a == 0 || _p == 2 || _log[a] % 2 == 0; }

FElt Field::frobenius(FElt a, unsigned k) const
{
  long long e = 1;
  for (unsigned i = 0; i < k; ++i)
    e *= _p;
  return pow(a, e);
}

FElt Field::from_int(long long k) const
{
  return static_cast<FElt>(((k % _p) + _p) % _p);
}

std::string Field::str(FElt a) const { return std::to_string(a); }

Mat Mat::identity(unsigned n)
{
  Mat m(n, n);
  for (unsigned i = 0; i < n; ++i)
    m(i, i) = 1;
  return m;
}

std::vector<FElt> Mat::row(unsigned i) const
{
  return {a.begin() + std::size_t{i} * cols, a.begin() + std::size_t{i + 1} * cols};
}

Mat mul(Field const &f, Mat const &x, Mat const &y)
{
  if (x.cols != y.rows)
    throw std::invalid_argument("matrix shape mismatch");
  Mat z(x.rows, y.cols);
  for (unsigned i = 0; i < x.rows; ++i)
    for (unsigned k = 0; k < x.cols; ++k) {
      FElt c = x(i, k);
      if (!c)
        continue;
      for (unsigned j = 0; j < y.cols; ++j)
        z(i, j) = f.add(z(i, j), f.mul(c, y(k, j)));
    }
  return z;
}

Vec mul(Field const &f, Vec const &v, Mat const &x)
{
  if (v.size() != x.rows)
    throw std::invalid_argument("vector length mismatch");
  Vec out(x.cols, 0);
  for (unsigned k = 0; k < x.rows; ++k) {
    FElt c = v[k];
    if (!c)
      continue;
    for (unsigned j = 0; j < x.cols; ++j)
      out[j] = f.add(out[j], f.mul(c, x(k, j)));
  }
  return out;
}

Mat transpose(Mat const &x)
{
  Mat t(x.cols, x.rows);
  for (unsigned i = 0; i < x.rows; ++i)
    for (unsigned j = 0; j < x.cols; ++j)
      t(j, i) = x(i, j);
  return t;
}

Mat conjugate_entries(Field const &f, Mat const &x, unsigned k)
{
  Mat c = x;
  for (auto &e : c.a)
    e = f.frobenius(e, k);
  return c;
}

FElt det(Field const &f, Mat x)
{
  if (x.rows != x.cols)
    throw std::invalid_argument("determinant of a non-square matrix");
  unsigned n = x.rows;
  FElt d = 1;
  for (unsigned c = 0; c < n; ++c) {
    unsigned r = c;
    while (r < n && x(r, c) == 0)
      ++r;
    if (r == n)
      return 0;
    if (r != c) {
      for (unsigned j = 0; j < n; ++j)
        std::swap(x(r, j), x(c, j));
      d = f.neg(d);
    }
    d = f.mul(d, x(c, c));
    FElt iv = f.inv(x(c, c));
    for (unsigned i = c + 1; i < n; ++i) {
      FElt t = f.mul(x(i, c), iv);
      if (!t)
        continue;
      for (unsigned j = c; j < n; ++j)
        x(i, j) = f.sub(x(i, j), f.mul(t, x(c, j)));
    }
  }
  return d;
}

Mat inverse(Field const &f, Mat x)
{
  unsigned n = x.rows;
  if (x.cols != n)
    throw std::invalid_argument("inverse of a non-square matrix");
  Mat y = Mat::identity(n);
  for (unsigned c = 0; c < n; ++c) {
    unsigned r = c;
    while (r < n && x(r, c) == 0)
      ++r;
    if (r == n)
      throw std::domain_error("singular matrix");
    for (unsigned j = 0; j < n; ++j) {
      std::swap(x(r, j), x(c, j));
      std::swap(y(r, j), y(c, j));
    }
    FElt iv = f.inv(x(c, c));
    for (unsigned j = 0; j < n; ++j) {
      x(c, j) = f.mul(x(c, j), iv);
      y(c, j) = f.mul(y(c, j), iv);
    }
    for (unsigned i = 0; i < n; ++i) {
      if (i == c || x(i, c) == 0)
        continue;
      FElt t = x(i, c);
      for (unsigned j = 0; j < n; ++j) {
        x(i, j) = f.sub(x(i, j), f.mul(t, x(c, j)));
        y(i, j) = f.sub(y(i, j), f.mul(t, y(c, j)));
      }
    }
  }
  return y;
}

Mat power(Field const &f, Mat const &x, unsigned long long k)
{
  Mat r = Mat::identity(x.rows), b = x;
  while (k) {
    if (k & 1)
      r = mul(f, r, b);
    k >>= 1;
    if (k)
      b = mul(f, b, b);
  }
  return r;
}

bool is_identity(Mat const &x)
{
  for (unsigned i = 0; i < x.rows; ++i)
    for (unsigned j = 0; j < x.cols; ++j)
      if (x(i, j) != (i == j ? 1 : 0))
        return false;
  return true;
}

unsigned long long order(Field const &f, Mat const &x, unsigned long long limit)
{
  Mat y = x;
  for (unsigned long long k = 1; k <= limit; ++k) {
    if (is_identity(y))
      return k;
    y = mul(f, y, x);
  }
  return 0;
}

std::vector<std::pair<unsigned long long, unsigned>> factorize(unsigned long long n)
{
  std::vector<std::pair<unsigned long long, unsigned>> out;
  for (unsigned long long r = 2; r * r <= n; ++r) {
    unsigned e = 0;
    while (n % r == 0) {
      n /= r;
      ++e;
    }
    if (e)
      out.emplace_back(r, e);
  }
  if (n > 1)
    out.emplace_back(n, 1);
  return out;
}

bool has_order(Field const &f, Mat const &x, unsigned long long n)
{
  if (n == 0 || !is_identity(power(f, x, n)))
    return false;
  for (auto [r, e] : factorize(n))
    if (is_identity(power(f, x, n / r)))
      return false;
  return true;
}

Mat rref(Field const &f, Mat x)
{
  unsigned r = 0;
  for (unsigned c = 0; c < x.cols && r < x.rows; ++c) {
    unsigned i = r;
    while (i < x.rows && x(i, c) == 0)
      ++i;
    if (i == x.rows)
      continue;
    for (unsigned j = 0; j < x.cols; ++j)
      std::swap(x(i, j), x(r, j));
    FElt iv = f.inv(x(r, c));
    for (unsigned j = 0; j < x.cols; ++j)
      x(r, j) = f.mul(x(r, j), iv);
    for (unsigned k = 0; k < x.rows; ++k) {
      if (k == r || x(k, c) == 0)
        continue;
      FElt t = x(k, c);
      for (unsigned j = 0; j < x.cols; ++j)
        x(k, j) = f.sub(x(k, j), f.mul(t, x(r, j)));
    }
    ++r;
  }
  Mat out(r, x.cols);
  std::copy(x.a.begin(), x.a.begin() + std::size_t{r} * x.cols, out.a.begin());
  return out;
}

unsigned rank(Field const &f, Mat const &x) { return rref(f, x).rows; }

Mat null_space(Field const &f, Mat const &x)
{
  Mat r = rref(f, x);
  std::vector<int> pivot_row(x.cols, -1);
  for (unsigned i = 0; i < r.rows; ++i)
    for (unsigned j = 0; j < r.cols; ++j)
      if (r(i, j)) {
        pivot_row[j] = static_cast<int>(i);
        break;
      }
  std::vector<unsigned> free;
  for (unsigned j = 0; j < x.cols; ++j)
    if (pivot_row[j] < 0)
      free.push_back(j);
  Mat out(static_cast<unsigned>(free.size()), x.cols);
  for (unsigned k = 0; k < free.size(); ++k) {
    out(k, free[k]) = 1;
    for (unsigned j = 0; j < x.cols; ++j)
      if (pivot_row[j] >= 0)
        out(k, j) = f.neg(r(static_cast<unsigned>(pivot_row[j]), free[k]));
  }
  return out;
}

FElt dot(Field const &f, Vec const &v, Vec const &w)
{
  FElt s = 0;
  for (std::size_t i = 0; i < v.size(); ++i)
    s = f.add(s, f.mul(v[i], w[i]));
  return s;
}

Vec axpy(Field const &f, FElt a, Vec const &x, Vec const &y)
{
  Vec out(y);
  for (std::size_t i = 0; i < x.size(); ++i)
    out[i] = f.add(out[i], f.mul(a, x[i]));
  return out;
}

Vec normalized(Field const &f, Vec v)
{
  for (auto c : v)
    if (c) {
      FElt iv = f.inv(c);
      for (auto &e : v)
        e = f.mul(e, iv);
      break;
    }
  return v;
}

Mat companion(Field const &f, std::vector<FElt> const &poly)
{
  unsigned m = static_cast<unsigned>(poly.size()) - 1;
  // Row i is the image of the basis vector t^i under multiplication by t.
  Mat c(m, m);
  for (unsigned i = 0; i + 1 < m; ++i)
    c(i, i + 1) = 1;
  for (unsigned j = 0; j < m; ++j)
    c(m - 1, j) = f.neg(poly[j]);
  return c;
}

std::vector<FElt> primitive_polynomial(Field const &f, unsigned m)
{
  if (m == 0)
    throw std::invalid_argument("degree zero");
  unsigned long long target = 1;
  for (unsigned i = 0; i < m; ++i)
    target *= f.q();
  target -= 1;
  for (unsigned long long c = 0; c <= target; ++c) {
    std::vector<FElt> poly(m + 1, 0);
    unsigned long long r = c;
    for (unsigned i = 0; i < m; ++i, r /= f.q())
      poly[i] = static_cast<FElt>(r % f.q());
    poly[m] = 1;
    if (poly[0] == 0)
      continue;
    if (has_order(f, companion(f, poly), target))
      return poly;
  }
  throw std::logic_error("no primitive polynomial of the requested degree");
}

} // namespace relcx
