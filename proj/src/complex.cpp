#include "dicubical/complex.hpp"

#include <algorithm>
#include <string>

#include "dicubical/errors.hpp"

namespace dicubical {

IntervalQuery::IntervalQuery(Point lo_, Point hi_) : lo(lo_), hi(hi_) {
  if (!product_le(lo, hi)) {
    throw DataError("interval bounds are not ordered: " + lo.to_string() +
                    " vs " + hi.to_string());
  }
}

CubicalComplex::CubicalComplex(int ambient_dim) : ambient_dim_(ambient_dim) {
  if (ambient_dim < 1 || ambient_dim > kMaxDim) {
    throw DataError("ambient dimension must lie in [1, " +
                    std::to_string(kMaxDim) + "], got " +
                    std::to_string(ambient_dim));
  }
}

CubicalComplex CubicalComplex::closure_of(int ambient_dim,
                                          std::span<const ElementaryCube> cubes) {
  CubicalComplex k(ambient_dim);
  for (const auto& c : cubes) {
    if (c.ambient_dim() != ambient_dim) {
      throw DataError("cube " + c.to_string() + " has dimension " +
                      std::to_string(c.ambient_dim()) + ", expected " +
                      std::to_string(ambient_dim));
    }
    if (k.contains(c)) continue;
    for (const auto& f : faces(c)) k.cubes_.insert(f.cube);
  }
  return k;
}

CubicalComplex CubicalComplex::from_closed_set(int ambient_dim, CubeSet cubes) {
  CubicalComplex k(ambient_dim);
  k.cubes_ = std::move(cubes);
  return k;
}

std::vector<Point> CubicalComplex::vertices() const {
  std::vector<Point> out;
  for (const auto& c : cubes_) {
    if (c.is_vertex()) out.push_back(c.min());
  }
  return out;
}

std::vector<ElementaryCube> CubicalComplex::cubes_of_dim(int d) const {
  std::vector<ElementaryCube> out;
  for (const auto& c : cubes_) {
    if (c.dim() == d) out.push_back(c);
  }
  return out;
}

std::vector<std::size_t> CubicalComplex::counts_by_dim() const {
  std::vector<std::size_t> counts(static_cast<std::size_t>(ambient_dim_) + 1, 0);
  for (const auto& c : cubes_) ++counts[static_cast<std::size_t>(c.dim())];
  return counts;
}

int CubicalComplex::dim() const {
  int d = -1;
  for (const auto& c : cubes_) d = std::max(d, c.dim());
  return d;
}

std::vector<ElementaryCube> CubicalComplex::proper_cofaces(const ElementaryCube& c) const {
  std::vector<ElementaryCube> out;
  const AxisMask free_axes = full_mask(ambient_dim_) & ~c.extent();
  // A coface spans extra axes `added`; along each added axis, c sits either at
  // the low end (no shift) or the high end (min shifted down).
  for_each_submask(free_axes, [&](AxisMask added) {
    if (added == 0) return;
    for_each_submask(added, [&](AxisMask shifted) {
      ElementaryCube g(c.min().minus(shifted), c.extent() | added);
      if (contains(g)) out.push_back(g);
    });
  });
  std::sort(out.begin(), out.end());
  return out;
}

bool CubicalComplex::is_maximal(const ElementaryCube& c) const {
  if (!contains(c)) return false;
  const AxisMask free_axes = full_mask(ambient_dim_) & ~c.extent();
  // Face-closure means checking one-step cofaces suffices.
  for (int i = 0; i < ambient_dim_; ++i) {
    if (!(free_axes & axis_bit(i))) continue;
    if (contains(ElementaryCube(c.min(), c.extent() | axis_bit(i)))) return false;
    if (contains(ElementaryCube(c.min().minus(axis_bit(i)), c.extent() | axis_bit(i))))
      return false;
  }
  return true;
}

std::optional<Point> CubicalComplex::min_vertex() const {
  const auto box = bounding_box();
  if (!box || !contains_vertex(box->lo)) return std::nullopt;
  return box->lo;
}

std::optional<Point> CubicalComplex::max_vertex() const {
  const auto box = bounding_box();
  if (!box || !contains_vertex(box->hi)) return std::nullopt;
  return box->hi;
}

std::optional<IntervalQuery> CubicalComplex::bounding_box() const {
  if (cubes_.empty()) return std::nullopt;
  Point lo = cubes_.begin()->min();
  Point hi = lo;
  for (const auto& c : cubes_) {
    const Point top = c.max();
    for (int i = 0; i < ambient_dim_; ++i) {
      lo[i] = std::min(lo[i], c.min()[i]);
      hi[i] = std::max(hi[i], top[i]);
    }
  }
  return IntervalQuery(lo, hi);
}

bool CubicalComplex::is_face_closed() const {
  for (const auto& c : cubes_) {
    for (const auto& f : faces(c)) {
      if (!contains(f.cube)) return false;
    }
  }
  return true;
}

bool CubicalComplex::is_subcomplex_of(const CubicalComplex& other) const {
  if (empty()) return true;
  if (ambient_dim_ != other.ambient_dim_) return false;
  return std::includes(other.cubes_.begin(), other.cubes_.end(), cubes_.begin(),
                       cubes_.end());
}

CubicalComplex CubicalComplex::without(std::span<const ElementaryCube> removed) const {
  CubicalComplex out = *this;
  for (const auto& c : removed) out.cubes_.erase(c);
  return out;
}

CubicalComplex from_maximal_cubes(int n, std::span<const ElementaryCube> maximal) {
  return CubicalComplex::closure_of(n, maximal);
}

std::vector<ElementaryCube> maximal_cubes(const CubicalComplex& k) {
  std::vector<ElementaryCube> out;
  for (const auto& c : k.cubes()) {
    if (k.is_maximal(c)) out.push_back(c);
  }
  return out;
}

std::optional<ElementaryCube> free_face_partner(const CubicalComplex& k,
                                                const ElementaryCube& tau) {
  if (!k.contains(tau)) {
    throw DataError("cube " + tau.to_string() + " is not in the complex");
  }
  std::optional<ElementaryCube> partner;
  for (const auto& g : k.proper_cofaces(tau)) {
    if (!k.is_maximal(g)) continue;
    if (partner) return std::nullopt;
    partner = g;
  }
  return partner;
}

namespace {

template <typename Keep>
CubicalComplex filtered(const CubicalComplex& k, Keep keep) {
  CubicalComplex::CubeSet out;
  for (const auto& c : k.cubes()) {
    if (keep(c)) out.insert(out.end(), c);
  }
  return CubicalComplex::from_closed_set(k.ambient_dim(), std::move(out));
}

}  // namespace

CubicalComplex up_set(const CubicalComplex& k, const Point& p) {
  return filtered(k, [&](const ElementaryCube& c) { return product_le(p, c.min()); });
}

CubicalComplex down_set(const CubicalComplex& k, const Point& p) {
  return filtered(k, [&](const ElementaryCube& c) { return product_le(c.max(), p); });
}

CubicalComplex restrict_to(const CubicalComplex& k, const IntervalQuery& q) {
  return filtered(k, [&](const ElementaryCube& c) { return q.contains(c); });
}

std::vector<ElementaryCube> lower_cofaces(const CubicalComplex& k, const Point& v) {
  std::vector<ElementaryCube> out;
  if (v.dim() != k.ambient_dim()) return out;
  for (AxisMask j = 1; j <= full_mask(k.ambient_dim()); ++j) {
    ElementaryCube c(v.minus(j), j);
    if (k.contains(c)) out.push_back(c);
  }
  std::sort(out.begin(), out.end());
  return out;
}

CubicalComplex unite(const CubicalComplex& a, const CubicalComplex& b) {
  if (a.ambient_dim() != b.ambient_dim()) {
    throw DataError("cannot unite complexes of different ambient dimension");
  }
  CubicalComplex::CubeSet all = a.cubes();
  all.insert(b.cubes().begin(), b.cubes().end());
  return CubicalComplex::from_closed_set(a.ambient_dim(), std::move(all));
}

CubicalComplex full_grid(const Point& lo, const Point& hi) {
  const IntervalQuery box(lo, hi);
  const int n = lo.dim();
  CubicalComplex::CubeSet all;
  // Odometer over the vertices of the box; every cube [v, v + j] inside it.
  Point v = lo;
  while (true) {
    for (AxisMask j = 0; j <= full_mask(n); ++j) {
      ElementaryCube c(v, j);
      if (product_le(c.max(), hi)) all.insert(c);
    }
    int axis = n - 1;
    while (axis >= 0 && v[axis] == hi[axis]) {
      v[axis] = lo[axis];
      --axis;
    }
    if (axis < 0) break;
    ++v[axis];
  }
  return CubicalComplex::from_closed_set(n, std::move(all));
}

}  // namespace dicubical
