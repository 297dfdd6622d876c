#include "dicubical/cube.hpp"

#include <algorithm>
#include <sstream>

#include "dicubical/errors.hpp"

namespace dicubical {

namespace {

void check_dim(std::size_t dim) {
  if (dim > static_cast<std::size_t>(kMaxDim)) {
    throw DataError("ambient dimension " + std::to_string(dim) +
                    " exceeds the supported maximum of " +
                    std::to_string(kMaxDim));
  }
}

}  // namespace

Point Point::zero(int dim) {
  check_dim(static_cast<std::size_t>(dim));
  Point p;
  p.dim_ = dim;
  return p;
}

Point::Point(std::initializer_list<int> coords)
    : Point(std::span<const int>(coords.begin(), coords.size())) {}

Point::Point(std::span<const int> coords) {
  check_dim(coords.size());
  dim_ = static_cast<int>(coords.size());
  std::copy(coords.begin(), coords.end(), coords_.begin());
}

Point Point::plus(AxisMask mask) const {
  Point out = *this;
  for (int i = 0; i < dim_; ++i) {
    if (mask & axis_bit(i)) ++out[i];
  }
  return out;
}

Point Point::minus(AxisMask mask) const {
  Point out = *this;
  for (int i = 0; i < dim_; ++i) {
    if (mask & axis_bit(i)) --out[i];
  }
  return out;
}

std::vector<int> Point::to_vector() const {
  return {coords_.begin(), coords_.begin() + dim_};
}

std::string Point::to_string() const {
  std::ostringstream os;
  os << '(';
  for (int i = 0; i < dim_; ++i) {
    if (i) os << ',';
    os << coords_[static_cast<std::size_t>(i)];
  }
  os << ')';
  return os.str();
}

bool product_le(const Point& a, const Point& b) {
  if (a.dim() != b.dim()) return false;
  for (int i = 0; i < a.dim(); ++i) {
    if (a[i] > b[i]) return false;
  }
  return true;
}

bool extent_lex_less(AxisMask a, AxisMask b, int n) {
  for (int i = 0; i < n; ++i) {
    const bool ai = a & axis_bit(i);
    const bool bi = b & axis_bit(i);
    if (ai != bi) return bi;
  }
  return false;
}

ElementaryCube::ElementaryCube(Point min, AxisMask extent)
    : min_(min), extent_(extent) {
  if (extent_ & ~full_mask(min_.dim())) {
    throw DataError("extent mask has bits beyond the ambient dimension");
  }
}

ElementaryCube ElementaryCube::from_interval(const Point& lo, const Point& hi) {
  if (lo.dim() != hi.dim()) {
    throw DataError("dimension mismatch: " + std::to_string(lo.dim()) +
                    " vs " + std::to_string(hi.dim()));
  }
  AxisMask extent = 0;
  for (int i = 0; i < lo.dim(); ++i) {
    const int d = hi[i] - lo[i];
    if (d != 0 && d != 1) {
      throw DataError("extent " + std::to_string(d) + " at axis " +
                      std::to_string(i));
    }
    if (d == 1) extent |= axis_bit(i);
  }
  return {lo, extent};
}

std::vector<Point> ElementaryCube::vertices() const {
  std::vector<Point> out;
  out.reserve(std::size_t{1} << dim());
  for_each_submask(extent_, [&](AxisMask s) { out.push_back(min_.plus(s)); });
  std::sort(out.begin(), out.end());
  return out;
}

bool ElementaryCube::contains(const ElementaryCube& other) const {
  return product_le(min_, other.min_) && product_le(other.max(), max());
}

bool ElementaryCube::contains(const Point& p) const {
  return product_le(min_, p) && product_le(p, max());
}

std::string ElementaryCube::to_string() const {
  return min_.to_string() + ".." + max().to_string();
}

std::vector<Face> faces(const ElementaryCube& c) {
  std::vector<Face> out;
  // A face keeps a subset of the spanned axes; each dropped axis is pinned at
  // either end of its interval.
  for_each_submask(c.extent(), [&](AxisMask kept) {
    const AxisMask dropped = c.extent() & ~kept;
    for_each_submask(dropped, [&](AxisMask shifted) {
      ElementaryCube f(c.min().plus(shifted), kept);
      out.push_back({f, !(f == c)});
    });
  });
  std::sort(out.begin(), out.end(),
            [](const Face& a, const Face& b) { return a.cube < b.cube; });
  return out;
}

}  // namespace dicubical

std::size_t std::hash<dicubical::Point>::operator()(
    const dicubical::Point& p) const noexcept {
  std::size_t h = static_cast<std::size_t>(p.dim());
  for (int i = 0; i < p.dim(); ++i) {
    h ^= std::hash<int>{}(p[i]) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

std::size_t std::hash<dicubical::ElementaryCube>::operator()(
    const dicubical::ElementaryCube& c) const noexcept {
  std::size_t h = std::hash<dicubical::Point>{}(c.min());
  return h ^ (static_cast<std::size_t>(c.extent()) * 0x100000001b3ULL + (h << 6));
}
