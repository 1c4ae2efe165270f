#include "relcx/perm.h"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace relcx
{

Perm::Perm(std::size_t degree) : _images(degree)
{
  std::iota(_images.begin(), _images.end(), Point{0});
}

Perm::Perm(std::vector<Point> images) : _images(std::move(images))
{
  std::vector<char> seen(_images.size(), 0);
  for (Point x : _images) {
    if (x >= _images.size() || seen[x])
      throw std::invalid_argument("image sequence is not a bijection");
    seen[x] = 1;
  }
}

Perm Perm::from_cycles(std::size_t degree,
                       std::vector<std::vector<Point>> const &cycles)
{
  std::vector<Point> img(degree);
  std::iota(img.begin(), img.end(), Point{0});
  std::vector<char> used(degree, 0);
  for (auto const &c : cycles) {
    for (std::size_t i = 0; i < c.size(); ++i) {
      Point a = c[i];
      if (a >= degree)
        throw std::invalid_argument("cycle point out of range");
      if (used[a])
        throw std::invalid_argument("cycles are not disjoint");
      used[a] = 1;
      img[a] = c[(i + 1) % c.size()];
    }
  }
  return Perm(std::move(img));
}

Perm Perm::operator*(Perm const &rhs) const
{
  if (degree() != rhs.degree())
    throw std::invalid_argument("degree mismatch in compose");
  Perm r;
  r._images.resize(_images.size());
  for (std::size_t i = 0; i < _images.size(); ++i)
    r._images[i] = rhs._images[_images[i]];
  return r;
}

Perm &Perm::operator*=(Perm const &rhs)
{
  if (degree() != rhs.degree())
    throw std::invalid_argument("degree mismatch in compose");
  for (auto &x : _images)
    x = rhs._images[x];
  return *this;
}

Perm Perm::inverse() const
{
  Perm r;
  r._images.resize(_images.size());
  for (std::size_t i = 0; i < _images.size(); ++i)
    r._images[_images[i]] = static_cast<Point>(i);
  return r;
}

Perm Perm::pow(long long e) const
{
  Perm base = e < 0 ? inverse() : *this;
  unsigned long long k = e < 0 ? -static_cast<unsigned long long>(e) : e;
  Perm acc(degree());
  while (k) {
    if (k & 1u)
      acc *= base;
    base = base * base;
    k >>= 1u;
  }
  return acc;
}

bool Perm::is_identity() const
{
  for (std::size_t i = 0; i < _images.size(); ++i)
    if (_images[i] != i)
      return false;
  return true;
}

std::uint64_t Perm::order() const
{
  std::uint64_t ord = 1;
  for (auto const &c : cycles())
    ord = std::lcm(ord, static_cast<std::uint64_t>(c.size()));
  return ord;
}

bool Perm::is_even() const
{
  std::size_t transpositions = 0;
  for (auto const &c : cycles())
    transpositions += c.size() - 1;
  return transpositions % 2 == 0;
}

std::vector<std::vector<Point>> Perm::cycles() const
{
  std::vector<std::vector<Point>> out;
  std::vector<char> seen(_images.size(), 0);
  for (Point i = 0; i < _images.size(); ++i) {
    if (seen[i] || _images[i] == i)
      continue;
    std::vector<Point> c;
    for (Point x = i; !seen[x]; x = _images[x]) {
      seen[x] = 1;
      c.push_back(x);
    }
    out.push_back(std::move(c));
  }
  return out;
}

Point Perm::first_moved() const
{
  for (Point i = 0; i < _images.size(); ++i)
    if (_images[i] != i)
      return i;
  return static_cast<Point>(_images.size());
}

Perm conjugate(Perm const &p, Perm const &by)
{
  return by.inverse() * p * by;
}

std::size_t fixed_point_count(Perm const &p, std::span<Point const> set)
{
  std::size_t n = 0;
  for (Point x : set)
    n += p[x] == x;
  return n;
}

std::size_t fixed_point_count(Perm const &p)
{
  std::size_t n = 0;
  for (Point x = 0; x < p.degree(); ++x)
    n += p[x] == x;
  return n;
}

std::string to_cycle_string(Perm const &p)
{
  auto cs = p.cycles();
  if (cs.empty())
    return "()";
  std::ostringstream os;
  for (auto const &c : cs) {
    os << '(';
    for (std::size_t i = 0; i < c.size(); ++i)
      os << (i ? " " : "") << c[i] + 1;
    os << ')';
  }
  return os.str();
}

Perm parse_cycles(std::string_view text, std::size_t degree)
{
  std::vector<std::vector<Point>> cycles;
  std::vector<Point> cur;
  bool open = false;
  std::size_t i = 0;
  auto fail = [&](char const *why) {
    throw std::invalid_argument(std::string("bad cycle notation: ") + why);
  };
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c)) || c == ',') {
      ++i;
    } else if (c == '(') {
      if (open)
        fail("nested '('");
      open = true;
      cur.clear();
      ++i;
    } else if (c == ')') {
      if (!open)
        fail("unmatched ')'");
      open = false;
      if (cur.size() > 1)
        cycles.push_back(cur);
      ++i;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      if (!open)
        fail("point outside a cycle");
      unsigned long v = 0;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
        v = v * 10 + static_cast<unsigned long>(text[i++] - '0');
      if (v == 0 || v > degree)
        fail("point out of range");
      cur.push_back(static_cast<Point>(v - 1));
    } else {
      fail("unexpected character");
    }
  }
  if (open)
    fail("unterminated cycle");
  return Perm::from_cycles(degree, cycles);
}

std::size_t PermHash::operator()(Perm const &p) const noexcept
{
  std::size_t h = 1469598103934665603ull;
  for (Point x : p.images()) {
    h ^= x;
    h *= 1099511628211ull;
  }
  return h;
}

} // namespace relcx
