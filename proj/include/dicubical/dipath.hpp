#pragma once

// Combinatorial model of directed path spaces.
//
// Dipaths are represented by monotone edge paths (each step adds one unit
// basis vector along an edge of K) and dihomotopy by elementary square moves:
// two edge paths are related when they differ only in the two-edge corner of a
// 2-cube of K. Path-space components are the classes of this relation. This is
// the standard cubical approximation of continuous dipaths; everything in this
// module, and every class count it reports, rests on it.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "dicubical/complex.hpp"

namespace dicubical {

struct EdgePath {
  std::vector<Point> vertices;

  std::size_t length() const { return vertices.empty() ? 0 : vertices.size() - 1; }
  friend bool operator==(const EdgePath&, const EdgePath&) = default;
};

struct ClassReport {
  Point from;
  Point to;
  std::uint64_t path_count = 0;
  std::size_t class_count = 0;
  /// Lexicographically least path of each class, in enumeration order.
  std::vector<EdgePath> representatives;
  std::vector<std::uint64_t> class_sizes;
};

struct EnumerationOptions {
  std::uint64_t limit = 10'000'000;
  /// Worker threads for prefix-parallel enumeration; 0 picks hardware concurrency.
  unsigned threads = 0;
};

/// Vertices reachable from p by monotone edge paths in K (sorted).
std::vector<Point> reachable_vertices(const CubicalComplex& k, const Point& p);

/// Cubes of K whose minimum vertex is reachable from p. Empty if p ∉ K.
CubicalComplex reachable_complex(const CubicalComplex& k, const Point& p);

/// True iff v has no outgoing edge in K and v is not `designated_max`.
/// Throws DataError if v ∉ V(K).
bool is_deadlock(const CubicalComplex& k, const Point& v,
                 const std::optional<Point>& designated_max);

/// All deadlocks of K. `target` defaults to the global maximum vertex of K.
std::vector<Point> deadlocks(const CubicalComplex& k, std::optional<Point> target = std::nullopt);

/// Number of monotone edge paths p -> q, saturating at UINT64_MAX.
std::uint64_t count_edge_paths(const CubicalComplex& k, const Point& p, const Point& q);

/// Streams every monotone edge path p -> q in lexicographic step order
/// (smaller axis first). `visit` returns false to stop early. Throws
/// ScaleLimitError when the path count exceeds `limit`. Returns the number
/// of paths visited.
std::uint64_t enumerate_edge_paths(const CubicalComplex& k, const Point& p, const Point& q,
                                   const std::function<bool(const EdgePath&)>& visit,
                                   std::uint64_t limit = EnumerationOptions{}.limit);

/// Dihomotopy classes of edge paths p -> q under square moves.
ClassReport dihomotopy_classes(const CubicalComplex& k, const Point& p, const Point& q,
                               const EnumerationOptions& options = {});

enum class Verdict { contractible, connected, disconnected, empty, unknown };

enum class VerdictBasis {
  trivial_path,              // v is the start vertex
  all_links_collapsible,     // every past link collapsible, start is the minimum
  all_links_connected,       // every past link connected, start is the minimum
  reachable_link_disconnected,
  unreachable,
  path_classes,              // settled by the square-move oracle
  none,
};

struct VertexVerdict {
  Point vertex;
  Verdict verdict = Verdict::unknown;
  VerdictBasis basis = VerdictBasis::none;
};

struct PathSpaceReport {
  Point start;
  bool start_is_minimum = false;
  bool all_links_collapsible = false;
  bool all_links_connected = false;
  std::vector<VertexVerdict> verdicts;  // one per vertex of K, sorted

  const VertexVerdict* find(const Point& v) const;
};

struct PathSpaceOptions {
  /// Settle "unknown" verdicts by counting path classes.
  bool resolve_with_oracle = false;
  EnumerationOptions enumeration;
};

/// Classifies the path spaces from w to every vertex of K from past links.
/// When w is the minimum vertex, all-collapsible past links give
/// "contractible" and all-connected past links give "connected" everywhere
/// (the start vertex's own past link is always empty and is skipped).
/// Otherwise a disconnected past link in the complex reachable from w marks
/// that vertex's path space disconnected.
PathSpaceReport path_space_report(const CubicalComplex& k, const Point& w,
                                  const PathSpaceOptions& options = {});

struct Pi0Correspondence {
  bool precondition_met = false;
  bool holds = false;
  std::size_t path_classes = 0;
  int link_components = 0;
  /// Contractibility is only checked through class counts.
  bool pi0_only = true;
};

/// Compares the class count p -> q with the component count of
/// past_link(up_set(K, p), q), provided every q - j with j in that past link
/// has exactly one path class from p. Requires p ≺ q.
Pi0Correspondence pi0_pastlink_correspondence(const CubicalComplex& k, const Point& p,
                                              const Point& q,
                                              const EnumerationOptions& options = {});

std::string to_string(Verdict v);
std::string to_string(VerdictBasis b);

}  // namespace dicubical
