#pragma once

// Lattice points and elementary cubes in Z^n.
//
// A cube is stored as its minimum vertex plus an extent mask: bit i set means
// the cube spans [min_i, min_i + 1] along axis i, clear means it is degenerate
// there. The same mask encoding is used for past-link simplices.

#include <array>
#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace dicubical {

inline constexpr int kMaxDim = 8;

using AxisMask = std::uint32_t;

inline constexpr AxisMask axis_bit(int axis) { return AxisMask{1} << axis; }
inline constexpr AxisMask full_mask(int n) { return (AxisMask{1} << n) - 1; }
inline int popcount(AxisMask m) { return std::popcount(m); }

class Point {
 public:
  Point() = default;
  static Point zero(int dim);
  Point(std::initializer_list<int> coords);
  explicit Point(std::span<const int> coords);

  int dim() const { return dim_; }
  int operator[](int axis) const { return coords_[static_cast<std::size_t>(axis)]; }
  int& operator[](int axis) { return coords_[static_cast<std::size_t>(axis)]; }

  /// Componentwise shift by the 0/1 vector encoded in `mask`.
  Point plus(AxisMask mask) const;
  Point minus(AxisMask mask) const;

  std::vector<int> to_vector() const;
  std::string to_string() const;  // "(a,b,c)"

  friend bool operator==(const Point&, const Point&) = default;
  // Lexicographic on coordinates; unused slots are always zero.
  friend auto operator<=>(const Point&, const Point&) = default;

 private:
  std::array<int, kMaxDim> coords_{};
  int dim_ = 0;
};

/// Product order: a ⪯ b iff a_i <= b_i for every axis.
bool product_le(const Point& a, const Point& b);
inline bool product_lt(const Point& a, const Point& b) {
  return a != b && product_le(a, b);
}

/// Lexicographic comparison of two masks read as 0/1 vectors, axis 0 first.
bool extent_lex_less(AxisMask a, AxisMask b, int n);

class ElementaryCube {
 public:
  ElementaryCube() = default;
  ElementaryCube(Point min, AxisMask extent);

  /// The cube [lo, hi]; throws DataError unless hi - lo is a 0/1 vector.
  static ElementaryCube from_interval(const Point& lo, const Point& hi);
  static ElementaryCube vertex(const Point& p) { return {p, 0}; }

  const Point& min() const { return min_; }
  Point max() const { return min_.plus(extent_); }
  AxisMask extent() const { return extent_; }
  int ambient_dim() const { return min_.dim(); }
  int dim() const { return popcount(extent_); }
  bool is_vertex() const { return extent_ == 0; }

  std::vector<Point> vertices() const;

  /// Closed-cube inclusion: other ⊆ this.
  bool contains(const ElementaryCube& other) const;
  bool contains(const Point& p) const;

  std::string to_string() const;  // "(a,b)..(c,d)"

  friend bool operator==(const ElementaryCube&, const ElementaryCube&) = default;
  friend auto operator<=>(const ElementaryCube&, const ElementaryCube&) = default;

 private:
  Point min_;
  AxisMask extent_ = 0;
};

struct Face {
  ElementaryCube cube;
  bool proper = false;
};

/// All 3^dim faces of `c`, including `c` itself (flagged non-proper).
std::vector<Face> faces(const ElementaryCube& c);

/// Enumerates every submask of `mask`, including 0 and `mask`.
template <typename F>
void for_each_submask(AxisMask mask, F&& visit) {
  AxisMask sub = mask;
  while (true) {
    visit(sub);
    if (sub == 0) break;
    sub = (sub - 1) & mask;
  }
}

}  // namespace dicubical

template <>
struct std::hash<dicubical::Point> {
  std::size_t operator()(const dicubical::Point& p) const noexcept;
};

template <>
struct std::hash<dicubical::ElementaryCube> {
  std::size_t operator()(const dicubical::ElementaryCube& c) const noexcept;
};
