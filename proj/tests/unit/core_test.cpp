#include <doctest.h>

#include "dicubical/complex.hpp"
#include "dicubical/errors.hpp"
#include "dicubical/fixtures.hpp"
#include "test_util.hpp"

using namespace dicubical;
using testing::cube;

TEST_CASE("points and the product order") {
  const Point a{1, 2};
  const Point b{2, 2};
  CHECK(product_le(a, b));
  CHECK(product_lt(a, b));
  CHECK_FALSE(product_le(b, a));
  CHECK_FALSE(product_le(Point{0, 3}, Point{1, 2}));
  CHECK(a.plus(0b11) == Point{2, 3});
  CHECK(a.minus(0b10) == Point{1, 1});
  CHECK(a.to_string() == "(1,2)");
  CHECK(Point::zero(3) == Point{0, 0, 0});
}

TEST_CASE("elementary cubes") {
  const ElementaryCube sq = cube("0,0..1,1");
  CHECK(sq.dim() == 2);
  CHECK(sq.max() == Point{1, 1});
  CHECK(sq.vertices().size() == 4);
  CHECK(sq.contains(cube("1,0..1,1")));
  CHECK_FALSE(cube("1,0..1,1").contains(sq));
  CHECK(sq.to_string() == "(0,0)..(1,1)");
  CHECK_THROWS_WITH_AS(ElementaryCube::from_interval(Point{0, 0}, Point{2, 1}), "extent 2 at axis 0",
                       DataError);
  CHECK_THROWS_AS(ElementaryCube::from_interval(Point{0, 0}, Point{0, 0, 1}), DataError);
  CHECK_THROWS_AS(ElementaryCube::from_interval(Point{1, 0}, Point{0, 0}), DataError);
}

TEST_CASE("faces of a cube") {
  const auto edge = faces(cube("0,0..1,0"));
  CHECK(edge.size() == 3);
  CHECK(std::count_if(edge.begin(), edge.end(), [](const Face& f) { return !f.proper; }) == 1);
  CHECK(faces(cube("3,3")).size() == 1);
  const auto sq = faces(cube("0,0..1,1"));
  CHECK(sq.size() == 9);
  int by_dim[3] = {0, 0, 0};
  for (const auto& f : sq) ++by_dim[f.cube.dim()];
  CHECK(by_dim[0] == 4);
  CHECK(by_dim[1] == 4);
  CHECK(by_dim[2] == 1);
  CHECK(faces(cube("0,0,0,0..1,1,1,1")).size() == 81);
}

TEST_CASE("closure of maximal cubes") {
  const std::vector<ElementaryCube> one{cube("0,0..1,1")};
  const auto sq = from_maximal_cubes(2, one);
  CHECK(sq.counts_by_dim() == std::vector<std::size_t>{4, 4, 1});
  CHECK(maximal_cubes(sq) == one);

  CHECK(from_maximal_cubes(2, std::vector<ElementaryCube>{}).empty());
  CHECK(maximal_cubes(CubicalComplex(2)).empty());

  const auto c3 = from_maximal_cubes(3, std::vector{cube("0,0,0..1,1,1")});
  CHECK(c3.counts_by_dim() == std::vector<std::size_t>{8, 12, 6, 1});

  CHECK_THROWS_AS(from_maximal_cubes(2, std::vector{cube("0,0,0..1,1,1")}), DataError);
}

TEST_CASE("non-maximal inputs are absorbed") {
  const auto k = from_maximal_cubes(2, std::vector{cube("0,0..1,1"), cube("0,0..1,0"), cube("3,3")});
  CHECK(maximal_cubes(k) == std::vector{cube("0,0..1,1"), cube("3,3")});
}

TEST_CASE("unit n-cube face counts are binomial") {
  for (int n = 1; n <= 5; ++n) {
    const auto counts = unit_cube(n).counts_by_dim();
    for (int k = 0; k <= n; ++k) {
      std::size_t binom = 1;
      for (int i = 0; i < k; ++i) binom = binom * static_cast<std::size_t>(n - i) / static_cast<std::size_t>(i + 1);
      CHECK(counts[static_cast<std::size_t>(k)] == binom * (std::size_t{1} << (n - k)));
    }
  }
}

TEST_CASE("free faces") {
  const auto g = grid(3, 2);
  CHECK(free_face_partner(g, cube("1,3..2,3")) == cube("1,2..2,3"));
  CHECK_FALSE(free_face_partner(grid(5, 2), cube("2,2..3,2")).has_value());
  CHECK_FALSE(free_face_partner(g, cube("1,2..2,3")).has_value());  // maximal itself
  CHECK_THROWS_AS(free_face_partner(g, cube("7,7")), DataError);

  const auto f2 = fig2_complex();
  const auto top = maximal_cubes(f2);
  CHECK(std::find(top.begin(), top.end(), cube("2,4..3,4")) != top.end());
}

TEST_CASE("up, down and restricted complexes") {
  const auto sq = unit_cube(2);
  CHECK(down_set(sq, Point{1, 1}) == sq);
  CHECK(up_set(sq, Point{1, 0}) == from_maximal_cubes(2, std::vector{cube("1,0..1,1")}));
  CHECK(up_set(sq, Point{5, 5}).empty());

  const auto c3 = unit_cube(3);
  CHECK(restrict_to(c3, IntervalQuery(cube("0,0,0..1,1,1"))) == c3);

  const auto g = grid(4, 2);
  const IntervalQuery box(Point{1, 1}, Point{3, 2});
  const auto r = restrict_to(g, box);
  CHECK(r.is_face_closed());
  CHECK(r == full_grid(Point{1, 1}, Point{3, 2}));
  CHECK_THROWS_AS(IntervalQuery(Point{2, 0}, Point{1, 1}), DataError);
}

TEST_CASE("lower cofaces") {
  const auto f2 = fig2_complex();
  const auto lc = lower_cofaces(f2, Point{3, 4});
  CHECK(lc.size() == 2);
  CHECK(std::find(lc.begin(), lc.end(), cube("2,4..3,4")) != lc.end());

  const auto g = grid(5, 2);
  CHECK(lower_cofaces(g, Point{0, 0}).empty());
  CHECK(lower_cofaces(g, Point{2, 3}).size() == 3);
  CHECK(lower_cofaces(g, Point{9, 9}).empty());
}

TEST_CASE("complex queries") {
  const auto g = grid(2, 2);
  CHECK(g.min_vertex() == Point{0, 0});
  CHECK(g.max_vertex() == Point{2, 2});
  CHECK(g.dim() == 2);
  CHECK(CubicalComplex(2).dim() == -1);
  CHECK(g.is_face_closed());
  CHECK(unit_cube(2).is_subcomplex_of(g));
  CHECK_FALSE(g.is_subcomplex_of(unit_cube(2)));
  CHECK(g.proper_cofaces(cube("1,1")).size() == 8);
  CHECK(g.is_maximal(cube("0,0..1,1")));
  CHECK_FALSE(g.is_maximal(cube("0,0..1,0")));
  CHECK(unite(unit_cube(2), full_grid(Point{1, 1}, Point{2, 2})).counts_by_dim() ==
        std::vector<std::size_t>{7, 8, 2});
  // An L shape has no global minimum.
  const auto l = from_maximal_cubes(2, std::vector{cube("1,0..1,1"), cube("0,1..1,1")});
  CHECK_FALSE(l.min_vertex().has_value());
  CHECK(l.max_vertex() == Point{1, 1});
  CHECK_THROWS_AS(CubicalComplex(0), DataError);
  CHECK_THROWS_AS(CubicalComplex(kMaxDim + 1), DataError);
}
