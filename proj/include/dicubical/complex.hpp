#pragma once

// Face-closed finite sets of elementary cubes and the special subcomplexes
// built from the product order.

#include <cstddef>
#include <optional>
#include <set>
#include <span>
#include <vector>

#include "dicubical/cube.hpp"

namespace dicubical {

/// Closed box [lo, hi] of the product order.
struct IntervalQuery {
  Point lo;
  Point hi;

  /// Throws DataError unless lo ⪯ hi.
  IntervalQuery(Point lo_, Point hi_);
  explicit IntervalQuery(const ElementaryCube& c) : IntervalQuery(c.min(), c.max()) {}

  bool contains(const ElementaryCube& c) const {
    return product_le(lo, c.min()) && product_le(c.max(), hi);
  }
};

class CubicalComplex {
 public:
  using CubeSet = std::set<ElementaryCube>;

  CubicalComplex() = default;
  explicit CubicalComplex(int ambient_dim);

  /// Face closure of `cubes`. Throws DataError on dimension mismatch.
  static CubicalComplex closure_of(int ambient_dim, std::span<const ElementaryCube> cubes);

  /// Builds from a set that the caller guarantees is already face-closed.
  static CubicalComplex from_closed_set(int ambient_dim, CubeSet cubes);

  int ambient_dim() const { return ambient_dim_; }
  bool empty() const { return cubes_.empty(); }
  std::size_t size() const { return cubes_.size(); }
  const CubeSet& cubes() const { return cubes_; }

  bool contains(const ElementaryCube& c) const { return cubes_.count(c) != 0; }
  bool contains_vertex(const Point& p) const { return contains(ElementaryCube::vertex(p)); }

  std::vector<Point> vertices() const;
  std::vector<ElementaryCube> cubes_of_dim(int d) const;
  /// counts[d] = number of d-cubes, d = 0..ambient_dim.
  std::vector<std::size_t> counts_by_dim() const;
  int dim() const;  // -1 for the empty complex

  /// Cubes of K having `c` as a proper face.
  std::vector<ElementaryCube> proper_cofaces(const ElementaryCube& c) const;
  bool is_maximal(const ElementaryCube& c) const;

  /// The vertex below/above every vertex of K, when K has one.
  std::optional<Point> min_vertex() const;
  std::optional<Point> max_vertex() const;

  /// Componentwise bounds of V(K); nullopt for the empty complex.
  std::optional<IntervalQuery> bounding_box() const;

  bool is_face_closed() const;
  bool is_subcomplex_of(const CubicalComplex& other) const;

  /// K minus `removed`; the caller guarantees the result stays face-closed.
  CubicalComplex without(std::span<const ElementaryCube> removed) const;

  friend bool operator==(const CubicalComplex&, const CubicalComplex&) = default;

 private:
  int ambient_dim_ = 0;
  CubeSet cubes_;
};

/// Face closure of `maximal`, checked for extent and dimension consistency.
CubicalComplex from_maximal_cubes(int n, std::span<const ElementaryCube> maximal);
std::vector<ElementaryCube> maximal_cubes(const CubicalComplex& k);

/// The unique maximal cube having `tau` as a proper face, provided no other
/// maximal cube contains `tau`. Throws DataError if tau ∉ K.
std::optional<ElementaryCube> free_face_partner(const CubicalComplex& k, const ElementaryCube& tau);

/// Cubes with min ⪰ p.
CubicalComplex up_set(const CubicalComplex& k, const Point& p);
/// Cubes with max ⪯ p.
CubicalComplex down_set(const CubicalComplex& k, const Point& p);
/// Cubes lying inside the box [q.lo, q.hi].
CubicalComplex restrict_to(const CubicalComplex& k, const IntervalQuery& q);

/// All cubes [v - j, v] of K with j ≠ 0.
std::vector<ElementaryCube> lower_cofaces(const CubicalComplex& k, const Point& v);

/// Union of two complexes of the same ambient dimension.
CubicalComplex unite(const CubicalComplex& a, const CubicalComplex& b);

/// The full grid [lo, hi] with every cube.
CubicalComplex full_grid(const Point& lo, const Point& hi);

}  // namespace dicubical
