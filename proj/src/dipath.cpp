#include "dicubical/dipath.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <numeric>
#include <string_view>
#include <thread>
#include <unordered_map>
#include <unordered_set>

#include "dicubical/errors.hpp"
#include "dicubical/past_link.hpp"

namespace dicubical {

namespace {

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b) {
  return a > kSaturated - b ? kSaturated : a + b;
}

// Dense view of K restricted to the box [lo, hi]: vertex presence, outgoing
// edges and 2-cubes at each lattice point, indexed in mixed radix.
class BoxGraph {
 public:
  BoxGraph(const CubicalComplex& k, const Point& lo, const Point& hi)
      : n_(k.ambient_dim()), lo_(lo) {
    std::size_t total = 1;
    stride_.assign(static_cast<std::size_t>(n_), 0);
    extent_.assign(static_cast<std::size_t>(n_), 0);
    for (int i = n_ - 1; i >= 0; --i) {
      const auto ui = static_cast<std::size_t>(i);
      extent_[ui] = hi[i] - lo[i] + 1;
      stride_[ui] = total;
      total *= static_cast<std::size_t>(extent_[ui]);
    }
    present_.assign(total, 0);
    out_.assign(total, 0);
    squares_.assign(total, 0);
    for (const auto& c : k.cubes()) {
      if (c.dim() > 2 || !product_le(lo, c.min()) || !product_le(c.max(), hi)) continue;
      const std::size_t at = index(c.min());
      if (c.dim() == 0) {
        present_[at] = 1;
      } else if (c.dim() == 1) {
        out_[at] |= c.extent();
      } else {
        int a = -1;
        int b = -1;
        for (int i = 0; i < n_; ++i) {
          if (!(c.extent() & axis_bit(i))) continue;
          (a < 0 ? a : b) = i;
        }
        squares_[at] |= std::uint64_t{1} << pair_bit(a, b);
      }
    }
  }

  int n() const { return n_; }
  std::size_t size() const { return present_.size(); }
  bool present(std::size_t v) const { return present_[v] != 0; }
  bool has_edge(std::size_t v, int axis) const { return out_[v] & axis_bit(axis); }
  bool has_square(std::size_t v, int a, int b) const {
    return squares_[v] & (std::uint64_t{1} << pair_bit(std::min(a, b), std::max(a, b)));
  }
  std::size_t step(std::size_t v, int axis) const {
    return v + stride_[static_cast<std::size_t>(axis)];
  }

  std::size_t index(const Point& p) const {
    std::size_t at = 0;
    for (int i = 0; i < n_; ++i) {
      at += static_cast<std::size_t>(p[i] - lo_[i]) * stride_[static_cast<std::size_t>(i)];
    }
    return at;
  }

  Point point(std::size_t at) const {
    Point p = lo_;
    for (int i = 0; i < n_; ++i) {
      const auto ui = static_cast<std::size_t>(i);
      p[i] += static_cast<int>(at / stride_[ui]);
      at %= stride_[ui];
    }
    return p;
  }

 private:
  int pair_bit(int a, int b) const { return a * n_ + b; }

  int n_;
  Point lo_;
  std::vector<std::size_t> stride_;
  std::vector<int> extent_;
  std::vector<std::uint8_t> present_;
  std::vector<AxisMask> out_;
  std::vector<std::uint64_t> squares_;
};

// Paths from every box vertex to `target`; edges only ever increase the index.
std::vector<std::uint64_t> paths_to(const BoxGraph& g, std::size_t target) {
  std::vector<std::uint64_t> count(g.size(), 0);
  if (!g.present(target)) return count;
  count[target] = 1;
  for (std::size_t v = target; v-- > 0;) {
    if (!g.present(v)) continue;
    std::uint64_t c = 0;
    for (int i = 0; i < g.n(); ++i) {
      if (!g.has_edge(v, i)) continue;
      const std::size_t w = g.step(v, i);
      if (w < g.size()) c = saturating_add(c, count[w]);
    }
    count[v] = c;
  }
  return count;
}

struct PathProblem {
  bool ordered = false;
  std::optional<BoxGraph> graph;
  std::size_t source = 0;
  std::size_t target = 0;
  std::size_t length = 0;
  std::vector<std::uint64_t> to_target;

  std::uint64_t total() const { return graph ? to_target[source] : 0; }
};

PathProblem make_problem(const CubicalComplex& k, const Point& p, const Point& q) {
  PathProblem pb;
  if (p.dim() != k.ambient_dim() || q.dim() != k.ambient_dim() || !product_le(p, q)) {
    return pb;
  }
  pb.ordered = true;
  pb.graph.emplace(k, p, q);
  pb.source = pb.graph->index(p);
  pb.target = pb.graph->index(q);
  for (int i = 0; i < p.dim(); ++i) pb.length += static_cast<std::size_t>(q[i] - p[i]);
  pb.to_target = paths_to(*pb.graph, pb.target);
  return pb;
}

void check_limit(std::uint64_t total, std::uint64_t limit) {
  if (total > limit) {
    throw ScaleLimitError("path count " +
                          (total == kSaturated ? std::string("> 2^64") : std::to_string(total)) +
                          " exceeds the enumeration limit " + std::to_string(limit));
  }
}

// Depth-first completion of a step prefix; appends each full step string.
void complete_paths(const PathProblem& pb, std::size_t at, std::string& steps,
                    std::string& sink) {
  if (at == pb.target) {
    sink += steps;
    return;
  }
  const BoxGraph& g = *pb.graph;
  for (int i = 0; i < g.n(); ++i) {
    if (!g.has_edge(at, i)) continue;
    const std::size_t w = g.step(at, i);
    if (w >= g.size() || pb.to_target[w] == 0) continue;
    steps.push_back(static_cast<char>(i));
    complete_paths(pb, w, steps, sink);
    steps.pop_back();
  }
}

struct Prefix {
  std::string steps;
  std::size_t at;
};

std::vector<Prefix> prefixes(const PathProblem& pb, std::size_t depth) {
  std::vector<Prefix> level{{std::string(), pb.source}};
  const BoxGraph& g = *pb.graph;
  for (std::size_t d = 0; d < depth; ++d) {
    std::vector<Prefix> next;
    for (const auto& pre : level) {
      if (pre.at == pb.target) {
        next.push_back(pre);
        continue;
      }
      for (int i = 0; i < g.n(); ++i) {
        if (!g.has_edge(pre.at, i)) continue;
        const std::size_t w = g.step(pre.at, i);
        if (w >= g.size() || pb.to_target[w] == 0) continue;
        next.push_back({pre.steps + static_cast<char>(i), w});
      }
    }
    level = std::move(next);
  }
  return level;
}

// All paths as one flat buffer of fixed-width step strings, lexicographic.
std::string enumerate_flat(const PathProblem& pb, unsigned threads) {
  if (pb.total() == 0) return {};
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t depth = std::min<std::size_t>(pb.length, threads > 1 ? 3 : 0);
  const auto tasks = prefixes(pb, depth);
  std::vector<std::string> out(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t t = next++; t < tasks.size(); t = next++) {
      std::string steps = tasks[t].steps;
      complete_paths(pb, tasks[t].at, steps, out[t]);
    }
  };
  const unsigned used = static_cast<unsigned>(std::min<std::size_t>(threads, tasks.size()));
  if (used <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < used; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  std::string flat;
  flat.reserve(pb.total() * pb.length);
  for (const auto& chunk : out) flat += chunk;
  return flat;
}

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    // Keep the smaller index as root so roots are class minima.
    if (a < b) std::swap(a, b);
    parent_[a] = b;
  }

 private:
  std::vector<std::size_t> parent_;
};

EdgePath path_from_steps(const Point& start, std::string_view steps) {
  EdgePath path;
  path.vertices.reserve(steps.size() + 1);
  Point at = start;
  path.vertices.push_back(at);
  for (char s : steps) {
    at[static_cast<int>(s)] += 1;
    path.vertices.push_back(at);
  }
  return path;
}

}  // namespace

std::vector<Point> reachable_vertices(const CubicalComplex& k, const Point& p) {
  std::vector<Point> out;
  if (p.dim() != k.ambient_dim() || !k.contains_vertex(p)) return out;
  std::unordered_set<Point> seen{p};
  std::vector<Point> stack{p};
  while (!stack.empty()) {
    const Point v = stack.back();
    stack.pop_back();
    out.push_back(v);
    for (int i = 0; i < k.ambient_dim(); ++i) {
      if (!k.contains(ElementaryCube(v, axis_bit(i)))) continue;
      const Point w = v.plus(axis_bit(i));
      if (seen.insert(w).second) stack.push_back(w);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

CubicalComplex reachable_complex(const CubicalComplex& k, const Point& p) {
  const auto reach = reachable_vertices(k, p);
  const std::unordered_set<Point> reachable(reach.begin(), reach.end());
  CubicalComplex::CubeSet kept;
  for (const auto& c : k.cubes()) {
    if (reachable.count(c.min())) kept.insert(kept.end(), c);
  }
  return CubicalComplex::from_closed_set(k.ambient_dim(), std::move(kept));
}

bool is_deadlock(const CubicalComplex& k, const Point& v,
                 const std::optional<Point>& designated_max) {
  if (v.dim() != k.ambient_dim() || !k.contains_vertex(v)) {
    throw DataError("vertex " + v.to_string() + " is not in the complex");
  }
  if (designated_max && *designated_max == v) return false;
  for (int i = 0; i < k.ambient_dim(); ++i) {
    if (k.contains(ElementaryCube(v, axis_bit(i)))) return false;
  }
  return true;
}

std::vector<Point> deadlocks(const CubicalComplex& k, std::optional<Point> target) {
  if (!target) target = k.max_vertex();
  std::vector<Point> out;
  for (const auto& v : k.vertices()) {
    if (is_deadlock(k, v, target)) out.push_back(v);
  }
  return out;
}

std::uint64_t count_edge_paths(const CubicalComplex& k, const Point& p, const Point& q) {
  return make_problem(k, p, q).total();
}

std::uint64_t enumerate_edge_paths(const CubicalComplex& k, const Point& p, const Point& q,
                                   const std::function<bool(const EdgePath&)>& visit,
                                   std::uint64_t limit) {
  const PathProblem pb = make_problem(k, p, q);
  const std::uint64_t total = pb.total();
  if (total == 0) return 0;
  check_limit(total, limit);
  const BoxGraph& g = *pb.graph;
  std::uint64_t visited = 0;
  bool stop = false;
  EdgePath path;
  path.vertices.push_back(p);
  std::function<void(std::size_t)> walk = [&](std::size_t at) {
    if (stop) return;
    if (at == pb.target) {
      ++visited;
      if (!visit(path)) stop = true;
      return;
    }
    for (int i = 0; i < g.n() && !stop; ++i) {
      if (!g.has_edge(at, i)) continue;
      const std::size_t w = g.step(at, i);
      if (w >= g.size() || pb.to_target[w] == 0) continue;
      path.vertices.push_back(path.vertices.back().plus(axis_bit(i)));
      walk(w);
      path.vertices.pop_back();
    }
  };
  walk(pb.source);
  return visited;
}

ClassReport dihomotopy_classes(const CubicalComplex& k, const Point& p, const Point& q,
                               const EnumerationOptions& options) {
  ClassReport report;
  report.from = p;
  report.to = q;
  const PathProblem pb = make_problem(k, p, q);
  report.path_count = pb.total();
  if (report.path_count == 0) return report;
  check_limit(report.path_count, options.limit);

  const std::string flat = enumerate_flat(pb, options.threads);
  const std::size_t len = pb.length;
  const std::size_t count = static_cast<std::size_t>(report.path_count);
  if (len == 0) {
    report.class_count = 1;
    report.representatives.push_back(path_from_steps(p, {}));
    report.class_sizes.push_back(1);
    return report;
  }

  std::unordered_map<std::string_view, std::size_t> index;
  index.reserve(count * 2);
  for (std::size_t i = 0; i < count; ++i) index.emplace(std::string_view(flat).substr(i * len, len), i);

  const BoxGraph& g = *pb.graph;
  UnionFind classes(count);
  std::string swapped(len, '\0');
  for (std::size_t i = 0; i < count; ++i) {
    const std::string_view steps = std::string_view(flat).substr(i * len, len);
    std::size_t at = pb.source;
    for (std::size_t s = 0; s + 1 < len; ++s) {
      const int a = steps[s];
      const int b = steps[s + 1];
      // Each square move is seen from the path taking the larger axis first.
      if (a > b && g.has_square(at, a, b)) {
        swapped.assign(steps);
        std::swap(swapped[s], swapped[s + 1]);
        const auto it = index.find(swapped);
        if (it != index.end()) classes.unite(i, it->second);
      }
      at = g.step(at, a);
    }
  }

  std::unordered_map<std::size_t, std::size_t> slot;
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t root = classes.find(i);
    auto [it, fresh] = slot.emplace(root, report.representatives.size());
    if (fresh) {
      report.representatives.push_back(
          path_from_steps(p, std::string_view(flat).substr(i * len, len)));
      report.class_sizes.push_back(0);
    }
    ++report.class_sizes[it->second];
  }
  report.class_count = report.representatives.size();
  return report;
}

const VertexVerdict* PathSpaceReport::find(const Point& v) const {
  const auto it = std::lower_bound(
      verdicts.begin(), verdicts.end(), v,
      [](const VertexVerdict& a, const Point& b) { return a.vertex < b; });
  return it != verdicts.end() && it->vertex == v ? &*it : nullptr;
}

PathSpaceReport path_space_report(const CubicalComplex& k, const Point& w,
                                  const PathSpaceOptions& options) {
  PathSpaceReport report;
  report.start = w;
  const auto verts = k.vertices();
  if (!k.contains_vertex(w)) {
    for (const auto& v : verts) report.verdicts.push_back({v, Verdict::empty, VerdictBasis::unreachable});
    return report;
  }
  report.start_is_minimum = k.min_vertex() == w;

  report.all_links_collapsible = true;
  report.all_links_connected = true;
  for (const auto& v : verts) {
    if (v == w) continue;
    const auto sig = homotopy_signature(past_link(k, v));
    report.all_links_collapsible = report.all_links_collapsible && sig.collapsible_to_point;
    report.all_links_connected = report.all_links_connected && sig.component_count == 1;
  }

  if (report.start_is_minimum &&
      (report.all_links_collapsible || report.all_links_connected)) {
    const bool contractible = report.all_links_collapsible;
    for (const auto& v : verts) {
      if (v == w) {
        report.verdicts.push_back({v, Verdict::contractible, VerdictBasis::trivial_path});
      } else {
        report.verdicts.push_back(
            {v, contractible ? Verdict::contractible : Verdict::connected,
             contractible ? VerdictBasis::all_links_collapsible
                          : VerdictBasis::all_links_connected});
      }
    }
    return report;
  }

  const CubicalComplex reach = reachable_complex(k, w);
  for (const auto& v : verts) {
    VertexVerdict verdict{v, Verdict::unknown, VerdictBasis::none};
    if (v == w) {
      verdict = {v, Verdict::contractible, VerdictBasis::trivial_path};
    } else if (!reach.contains_vertex(v)) {
      verdict = {v, Verdict::empty, VerdictBasis::unreachable};
    } else if (component_count(past_link(reach, v)) >= 2) {
      verdict = {v, Verdict::disconnected, VerdictBasis::reachable_link_disconnected};
    } else if (options.resolve_with_oracle) {
      const auto classes = dihomotopy_classes(k, w, v, options.enumeration);
      verdict = {v, classes.class_count >= 2 ? Verdict::disconnected : Verdict::connected,
                 VerdictBasis::path_classes};
    }
    report.verdicts.push_back(verdict);
  }
  return report;
}

Pi0Correspondence pi0_pastlink_correspondence(const CubicalComplex& k, const Point& p,
                                              const Point& q,
                                              const EnumerationOptions& options) {
  Pi0Correspondence out;
  if (!product_lt(p, q) || !k.contains_vertex(p) || !k.contains_vertex(q)) return out;
  const PastLinkComplex link = past_link(up_set(k, p), q);
  for (Simplex j : link.simplices()) {
    if (dihomotopy_classes(k, p, q.minus(j), options).class_count != 1) return out;
  }
  out.precondition_met = true;
  out.path_classes = dihomotopy_classes(k, p, q, options).class_count;
  out.link_components = component_count(link);
  out.holds = out.path_classes == static_cast<std::size_t>(out.link_components);
  return out;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::contractible: return "contractible";
    case Verdict::connected: return "connected";
    case Verdict::disconnected: return "disconnected";
    case Verdict::empty: return "empty";
    case Verdict::unknown: return "unknown";
  }
  return "unknown";
}

std::string to_string(VerdictBasis b) {
  switch (b) {
    case VerdictBasis::trivial_path: return "trivial_path";
    case VerdictBasis::all_links_collapsible: return "all_links_collapsible";
    case VerdictBasis::all_links_connected: return "all_links_connected";
    case VerdictBasis::reachable_link_disconnected: return "reachable_link_disconnected";
    case VerdictBasis::unreachable: return "unreachable";
    case VerdictBasis::path_classes: return "path_classes";
    case VerdictBasis::none: return "none";
  }
  return "none";
}

}  // namespace dicubical
