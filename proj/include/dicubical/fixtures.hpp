#pragma once

// Named example complexes and a seeded random sampler for tests.

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "dicubical/complex.hpp"

namespace dicubical {

enum class FixtureKind {
  swiss_flag,
  grid,
  window,
  shell3,
  bowling_ball,
  open_top_box,
  unit_cube,
  fig2_complex,
  bad_window,
};

struct FixtureSpec {
  FixtureKind kind = FixtureKind::swiss_flag;
  int k = 0;  // grid side, shell side
  int d = 0;  // grid dimension, unit cube dimension
  int core_lo = 0;  // shell: open core (core_lo, core_hi)^3 is removed
  int core_hi = 0;

  static FixtureSpec make_grid(int k, int d) { return {FixtureKind::grid, k, d, 0, 0}; }
  static FixtureSpec make_unit_cube(int n) { return {FixtureKind::unit_cube, 0, n, 0, 0}; }
  static FixtureSpec make_shell3(int k, int lo, int hi) {
    return {FixtureKind::shell3, k, 3, lo, hi};
  }
  static FixtureSpec named(FixtureKind kind) { return {kind, 0, 0, 0, 0}; }
};

/// Throws DataError on invalid parameters.
CubicalComplex generate(const FixtureSpec& spec);

/// Accepts swiss_flag, window, bad_window, bowling_ball, open_top_box,
/// fig2_complex, shell3[:K[:LO:HI]], grid:K:D, unit_cube:N and cubeN.
std::optional<FixtureSpec> parse_fixture_name(const std::string& name);
std::string fixture_name(const FixtureSpec& spec);
std::string describe(const FixtureSpec& spec);
/// Canonical names accepted by parse_fixture_name, for help text.
std::vector<std::string> fixture_names();

CubicalComplex swiss_flag();
CubicalComplex grid(int k, int d);
CubicalComplex window();
CubicalComplex shell3(int k, int core_lo, int core_hi);
CubicalComplex bowling_ball();
CubicalComplex open_top_box();
CubicalComplex unit_cube(int n);
CubicalComplex fig2_complex();
/// The window after its border vertex collapses and the collapse of the
/// edge [(2,4),(3,4)] into [(2,3),(3,4)].
CubicalComplex bad_window();

/// The grid [lo, hi] minus the open region covered by `removed`: a cube goes
/// iff every top-dimensional grid cube containing it is listed.
CubicalComplex grid_minus_open(const Point& lo, const Point& hi,
                               const std::vector<ElementaryCube>& removed);

/// Face closure of cubes of [lo, hi] each kept with probability p.
/// `top_bias` in [0,1] is the extra chance a top-dimensional cube is drawn.
CubicalComplex random_subcomplex(const Point& lo, const Point& hi, double p,
                                 std::mt19937_64& rng, double top_bias = 0.0);

}  // namespace dicubical
