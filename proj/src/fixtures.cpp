#include "dicubical/fixtures.hpp"

#include <algorithm>
#include <charconv>
#include <set>

#include "dicubical/collapse.hpp"
#include "dicubical/errors.hpp"

namespace dicubical {

namespace {

ElementaryCube square(int x, int y) { return ElementaryCube(Point{x, y}, 0b11); }

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto at = s.find(sep, start);
    out.push_back(s.substr(start, at - start));
    if (at == std::string::npos) break;
    start = at + 1;
  }
  return out;
}

std::optional<int> to_int(const std::string& s) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

}  // namespace

CubicalComplex grid_minus_open(const Point& lo, const Point& hi,
                               const std::vector<ElementaryCube>& removed) {
  const int n = lo.dim();
  const CubicalComplex full = full_grid(lo, hi);
  const std::set<ElementaryCube> gone(removed.begin(), removed.end());
  for (const auto& c : gone) {
    if (c.dim() != n || !full.contains(c)) {
      throw DataError("removed cube " + c.to_string() + " is not a top cube of the grid");
    }
  }
  CubicalComplex::CubeSet kept;
  for (const auto& c : full.cubes()) {
    bool covered = true;
    // Top cubes containing c: shift min down along every free axis.
    for_each_submask(full_mask(n) & ~c.extent(), [&](AxisMask down) {
      const ElementaryCube top(c.min().minus(down), full_mask(n));
      if (full.contains(top) && !gone.count(top)) covered = false;
    });
    if (!covered) kept.insert(c);
  }
  return CubicalComplex::from_closed_set(n, std::move(kept));
}

CubicalComplex swiss_flag() {
  return grid_minus_open(Point{0, 0}, Point{5, 5},
                         {square(2, 1), square(1, 2), square(2, 2), square(3, 2), square(2, 3)});
}

CubicalComplex grid(int k, int d) {
  if (k < 1) throw DataError("grid side must be at least 1");
  if (d < 1 || d > kMaxDim) throw DataError("grid dimension must be in 1.." + std::to_string(kMaxDim));
  Point hi = Point::zero(d);
  for (int i = 0; i < d; ++i) hi[i] = k;
  return full_grid(Point::zero(d), hi);
}

CubicalComplex window() {
  return grid_minus_open(Point{0, 0}, Point{5, 5},
                         {square(1, 1), square(3, 1), square(1, 3), square(3, 3)});
}

CubicalComplex shell3(int k, int core_lo, int core_hi) {
  if (k < 1) throw DataError("shell side must be at least 1");
  if (core_lo < 0 || core_hi > k || core_hi - core_lo < 1) {
    throw DataError("shell core must satisfy 0 <= lo < hi <= k");
  }
  std::vector<ElementaryCube> core;
  for (int x = core_lo; x < core_hi; ++x) {
    for (int y = core_lo; y < core_hi; ++y) {
      for (int z = core_lo; z < core_hi; ++z) core.emplace_back(Point{x, y, z}, 0b111);
    }
  }
  return grid_minus_open(Point{0, 0, 0}, Point{k, k, k}, core);
}

CubicalComplex bowling_ball() {
  const CubicalComplex full = grid(5, 3);
  CubicalComplex::CubeSet cubes;
  for (const auto& c : full.cubes()) {
    if (c.dim() == 3) continue;
    // On the boundary surface iff some fixed coordinate sits at 0 or 5.
    bool on_surface = false;
    for (int i = 0; i < 3; ++i) {
      if (!(c.extent() & axis_bit(i)) && (c.min()[i] == 0 || c.min()[i] == 5)) on_surface = true;
    }
    if (on_surface) cubes.insert(c);
  }
  const ElementaryCube solid(Point{4, 1, 1}, 0b111);
  const ElementaryCube hollow(Point{4, 3, 3}, 0b111);
  for (const auto& f : faces(solid)) cubes.insert(f.cube);
  for (const auto& f : faces(hollow)) cubes.insert(f.cube);
  cubes.erase(hollow);
  cubes.erase(ElementaryCube(Point{5, 3, 3}, 0b110));
  return CubicalComplex::from_closed_set(3, std::move(cubes));
}

CubicalComplex open_top_box() {
  CubicalComplex::CubeSet cubes;
  for (const auto& f : faces(ElementaryCube(Point{0, 0, 0}, 0b111))) {
    if (f.proper) cubes.insert(f.cube);
  }
  cubes.erase(ElementaryCube(Point{0, 0, 1}, 0b011));
  return CubicalComplex::from_closed_set(3, std::move(cubes));
}

CubicalComplex unit_cube(int n) {
  if (n < 1 || n > kMaxDim) throw DataError("unit cube dimension must be in 1.." + std::to_string(kMaxDim));
  return CubicalComplex::closure_of(n, std::vector{ElementaryCube(Point::zero(n), full_mask(n))});
}

CubicalComplex fig2_complex() {
  // A 2x3 block of squares next to a tree; 24 vertices, 28 edges, 6 squares.
  std::vector<ElementaryCube> gens;
  for (int x = 0; x < 3; ++x) {
    for (int y = 0; y < 2; ++y) gens.push_back(square(x, y));
  }
  const auto hedge = [](int x, int y) { return ElementaryCube(Point{x, y}, 0b01); };
  const auto vedge = [](int x, int y) { return ElementaryCube(Point{x, y}, 0b10); };
  for (int x = 0; x < 5; ++x) gens.push_back(hedge(x, 4));
  gens.push_back(vedge(3, 3));
  gens.push_back(vedge(0, 4));
  gens.push_back(vedge(0, 5));
  gens.push_back(vedge(5, 4));
  gens.push_back(vedge(5, 5));
  gens.push_back(vedge(5, 6));
  return from_maximal_cubes(2, gens);
}

CubicalComplex bad_window() {
  const CubicalComplex w = window();
  CollapsePolicy policy;
  policy.max_tau_dim = 0;
  policy.guards.forbid_new_deadlocks = true;
  policy.deadlock_target = Point{5, 5};
  policy.admit = [](const CollapsePair& p) {
    const Point& m = p.sigma.min();
    return p.sigma.dim() == 2 && (m[0] == 0 || m[0] == 4 || m[1] == 0 || m[1] == 4);
  };
  const CubicalComplex border = greedy_lpdc_sequence(w, policy).result;
  return tau_sigma_collapse(border, ElementaryCube(Point{2, 4}, 0b01),
                            ElementaryCube(Point{2, 3}, 0b11));
}

CubicalComplex random_subcomplex(const Point& lo, const Point& hi, double p,
                                 std::mt19937_64& rng, double top_bias) {
  const CubicalComplex full = full_grid(lo, hi);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<ElementaryCube> picked;
  for (const auto& c : full.cubes()) {
    const double chance = c.dim() == lo.dim() ? std::min(1.0, p + top_bias) : p;
    if (u(rng) < chance) picked.push_back(c);
  }
  return CubicalComplex::closure_of(lo.dim(), picked);
}

CubicalComplex generate(const FixtureSpec& spec) {
  switch (spec.kind) {
    case FixtureKind::swiss_flag: return swiss_flag();
    case FixtureKind::grid: return grid(spec.k, spec.d);
    case FixtureKind::window: return window();
    case FixtureKind::shell3: return shell3(spec.k, spec.core_lo, spec.core_hi);
    case FixtureKind::bowling_ball: return bowling_ball();
    case FixtureKind::open_top_box: return open_top_box();
    case FixtureKind::unit_cube: return unit_cube(spec.d);
    case FixtureKind::fig2_complex: return fig2_complex();
    case FixtureKind::bad_window: return bad_window();
  }
  throw DataError("unknown fixture");
}

std::optional<FixtureSpec> parse_fixture_name(const std::string& name) {
  const auto parts = split(name, ':');
  const std::string& head = parts.front();
  auto ints = [&]() -> std::optional<std::vector<int>> {
    std::vector<int> out;
    for (std::size_t i = 1; i < parts.size(); ++i) {
      const auto v = to_int(parts[i]);
      if (!v) return std::nullopt;
      out.push_back(*v);
    }
    return out;
  }();
  if (!ints) return std::nullopt;
  const auto& a = *ints;

  const std::pair<const char*, FixtureKind> plain[] = {
      {"swiss_flag", FixtureKind::swiss_flag},     {"window", FixtureKind::window},
      {"bad_window", FixtureKind::bad_window},     {"bowling_ball", FixtureKind::bowling_ball},
      {"open_top_box", FixtureKind::open_top_box}, {"fig2_complex", FixtureKind::fig2_complex},
  };
  for (const auto& [n, kind] : plain) {
    if (head == n && a.empty()) return FixtureSpec::named(kind);
  }
  if (head == "shell3") {
    if (a.empty()) return FixtureSpec::make_shell3(5, 1, 4);
    if (a.size() == 1) return FixtureSpec::make_shell3(a[0], 1, a[0] - 1);
    if (a.size() == 3) return FixtureSpec::make_shell3(a[0], a[1], a[2]);
    return std::nullopt;
  }
  if (head == "grid" && a.size() == 2) return FixtureSpec::make_grid(a[0], a[1]);
  if (head == "unit_cube" && a.size() == 1) return FixtureSpec::make_unit_cube(a[0]);
  if (head.size() > 4 && head.rfind("cube", 0) == 0 && a.empty()) {
    if (const auto n = to_int(head.substr(4))) return FixtureSpec::make_unit_cube(*n);
  }
  return std::nullopt;
}

std::string fixture_name(const FixtureSpec& spec) {
  switch (spec.kind) {
    case FixtureKind::swiss_flag: return "swiss_flag";
    case FixtureKind::grid: return "grid:" + std::to_string(spec.k) + ":" + std::to_string(spec.d);
    case FixtureKind::window: return "window";
    case FixtureKind::shell3:
      return "shell3:" + std::to_string(spec.k) + ":" + std::to_string(spec.core_lo) + ":" +
             std::to_string(spec.core_hi);
    case FixtureKind::bowling_ball: return "bowling_ball";
    case FixtureKind::open_top_box: return "open_top_box";
    case FixtureKind::unit_cube: return "cube" + std::to_string(spec.d);
    case FixtureKind::fig2_complex: return "fig2_complex";
    case FixtureKind::bad_window: return "bad_window";
  }
  return "?";
}

std::string describe(const FixtureSpec& spec) {
  switch (spec.kind) {
    case FixtureKind::swiss_flag:
      return "[0,5]^2 with an open cross removed; two execution orders";
    case FixtureKind::grid: return "full grid [0,k]^d";
    case FixtureKind::window: return "[0,5]^2 minus four open squares";
    case FixtureKind::shell3: return "[0,k]^3 minus an open core cube";
    case FixtureKind::bowling_ball:
      return "surface of [0,5]^3 with a solid cube and a hollow pocket on the x=5 side";
    case FixtureKind::open_top_box: return "surface of the unit 3-cube without its top square";
    case FixtureKind::unit_cube: return "closed unit n-cube";
    case FixtureKind::fig2_complex: return "planar complex: 24 vertices, 28 edges, 6 squares";
    case FixtureKind::bad_window: return "window after a collapse that adds a deadlock at (2,4)";
  }
  return "";
}

std::vector<std::string> fixture_names() {
  return {"swiss_flag",   "window",       "bad_window", "bowling_ball", "open_top_box",
          "fig2_complex", "shell3[:K[:LO:HI]]", "grid:K:D",   "unit_cube:N",  "cubeN"};
}

}  // namespace dicubical
