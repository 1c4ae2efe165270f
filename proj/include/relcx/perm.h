#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace relcx
{

using Point = std::uint32_t;

// Bijection of {0..n-1}, stored as its image sequence. Products act on the
// right: x^(pq) = (x^p)^q.
class Perm
{
public:
  Perm() = default;
  explicit Perm(std::size_t degree);
  explicit Perm(std::vector<Point> images);

  static Perm identity(std::size_t degree) { return Perm(degree); }
  // 0-based cycles; points outside every cycle are fixed.
  static Perm from_cycles(std::size_t degree,
                          std::vector<std::vector<Point>> const &cycles);

  std::size_t degree() const { return _images.size(); }
  Point operator[](Point x) const { return _images[x]; }
  std::span<Point const> images() const { return _images; }

  Perm operator*(Perm const &rhs) const;
  Perm &operator*=(Perm const &rhs);
  Perm inverse() const;
  Perm pow(long long e) const;

  bool is_identity() const;
  std::uint64_t order() const;
  bool is_even() const;
  std::vector<std::vector<Point>> cycles() const;
  // Smallest moved point, or degree() for the identity.
  Point first_moved() const;

  friend bool operator==(Perm const &, Perm const &) = default;
  friend auto operator<=>(Perm const &, Perm const &) = default;

private:
  std::vector<Point> _images;
};

Perm conjugate(Perm const &p, Perm const &by);
std::size_t fixed_point_count(Perm const &p, std::span<Point const> set);
std::size_t fixed_point_count(Perm const &p);

// 1-based disjoint cycle notation, "()" for the identity.
std::string to_cycle_string(Perm const &p);
Perm parse_cycles(std::string_view text, std::size_t degree);

struct PermHash
{
  std::size_t operator()(Perm const &p) const noexcept;
};

} // namespace relcx
