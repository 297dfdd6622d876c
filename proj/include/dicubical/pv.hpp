#pragma once

// A small PV language for processes sharing counting semaphores, and its
// geometric model: one axis per process, with the states where some resource
// is over-held cut out of the grid.
//
//   # dining philosophers
//   resource a 1;
//   resource b 1;
//   process left  = P(a).P(b).V(b).V(a);
//   process right = P(b).P(a).V(a).V(b);

#include <string>
#include <string_view>
#include <vector>

#include "dicubical/complex.hpp"

namespace dicubical {

struct PvResource {
  std::string name;
  int capacity = 1;
};

struct PvAction {
  enum class Kind { P, V };
  Kind kind = Kind::P;
  int resource = 0;  // index into PvProgram::resources
};

struct PvProcess {
  std::string name;
  std::vector<PvAction> actions;
};

struct PvProgram {
  std::vector<PvResource> resources;
  std::vector<PvProcess> processes;

  int dim() const { return static_cast<int>(processes.size()); }
  /// Upper corner of the state grid: (len_i + 1)_i.
  Point grid_max() const;
};

/// One forbidden open box. On axes in `constrained` it is the open interval
/// (lo[i], hi[i]); on the other axes it spans the whole axis [0, len_i + 1].
struct ForbiddenBox {
  int resource = 0;
  AxisMask constrained = 0;
  std::vector<int> lo;
  std::vector<int> hi;

  friend bool operator==(const ForbiddenBox&, const ForbiddenBox&) = default;
  friend auto operator<=>(const ForbiddenBox&, const ForbiddenBox&) = default;
};

/// Throws ParseError with line and column on malformed input, unknown or
/// duplicate names, unbalanced P/V, over-capacity use within one process and
/// programs without processes. Accepts LF and CRLF line ends.
PvProgram parse_pv(std::string_view text);

/// Maximal forbidden boxes, sorted.
std::vector<ForbiddenBox> forbidden_region(const PvProgram& prog);

/// The state grid minus every cell where some resource has more holders than
/// its capacity. Throws ScaleLimitError for grids over `max_cubes` cubes.
CubicalComplex to_complex(const PvProgram& prog, std::size_t max_cubes = 1'000'000);

std::string to_string(const ForbiddenBox& box, const PvProgram& prog);

}  // namespace dicubical
