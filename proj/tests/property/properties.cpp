#include "properties.hpp"

#include <algorithm>
#include <functional>
#include <random>

#include "dicubical/collapse.hpp"
#include "dicubical/dipath.hpp"
#include "dicubical/fixtures.hpp"
#include "dicubical/io.hpp"
#include "dicubical/past_link.hpp"
#include "oracles.hpp"

namespace props {

using namespace dicubical;

namespace {

using Rng = std::mt19937_64;

struct Run {
  Outcome out;

  explicit Run(const char* name) { out.name = name; }

  // Records one case; `ok` false marks a failure with its description.
  void check(bool ok, const std::function<std::string()>& what) {
    ++out.cases;
    if (ok) return;
    if (out.failures++ == 0) out.first_failure = what();
  }

  // For cases made of several checks: expect() any number of times, then commit().
  void expect(bool ok, const std::function<std::string()>& what) {
    pending_any_ = true;
    if (ok || !pending_ok_) return;
    pending_ok_ = false;
    pending_what_ = what();
  }
  // Instances that made no checks are not counted.
  void commit() {
    if (pending_any_) check(pending_ok_, [&] { return pending_what_; });
    pending_any_ = false;
    pending_ok_ = true;
    pending_what_.clear();
  }

 private:
  bool pending_any_ = false;
  bool pending_ok_ = true;
  std::string pending_what_;
};

int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

template <class T>
const T& pick(Rng& rng, const std::vector<T>& v) {
  return v[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(v.size()) - 1))];
}

Point filled(int n, int value) {
  Point p = Point::zero(n);
  for (int i = 0; i < n; ++i) p[i] = value;
  return p;
}

std::string show(const CubicalComplex& k) {
  std::string s = format_complex(k);
  std::replace(s.begin(), s.end(), '\n', ';');
  return s;
}

// Mixed-dimension sample: mostly 2-D boxes up to 4x4, some 3-D and 4-D.
CubicalComplex random_complex(Rng& rng) {
  const int roll = uniform(rng, 0, 9);
  int n = 2, side = uniform(rng, 1, 4);
  if (roll >= 6) n = 3, side = uniform(rng, 1, 2);
  if (roll == 9) n = 4, side = 1;
  const double p = std::uniform_real_distribution<double>(0.15, 0.7)(rng);
  const double bias = std::uniform_real_distribution<double>(0.0, 0.6)(rng);
  return random_subcomplex(Point::zero(n), filled(n, side), p, rng, bias);
}

CubicalComplex random_planar(Rng& rng, int max_side) {
  const int side = uniform(rng, 2, max_side);
  // Squares are drawn with p + bias < 1 so holes stay common.
  const double p = std::uniform_real_distribution<double>(0.1, 0.4)(rng);
  const double bias = std::uniform_real_distribution<double>(0.1, 0.5)(rng);
  return random_subcomplex(Point::zero(2), filled(2, side), p, rng, bias);
}

std::vector<CollapsePair> free_pairs(const CubicalComplex& k) {
  std::vector<CollapsePair> out;
  for (const auto& c : k.cubes()) {
    if (const auto s = free_face_partner(k, c)) out.push_back({c, *s});
  }
  return out;
}

ElementaryCube random_cube(Rng& rng, int n) {
  Point lo = Point::zero(n);
  for (int i = 0; i < n; ++i) lo[i] = uniform(rng, -2, 2);
  const AxisMask full = static_cast<AxisMask>((1u << n) - 1);
  return ElementaryCube(lo, static_cast<AxisMask>(uniform(rng, 1, full)));
}

std::vector<Point> vertex_list(const CubicalComplex& k) { return k.vertices(); }

PastLinkComplex random_link(Rng& rng, int n) {
  const AxisMask full = static_cast<AxisMask>((1u << n) - 1);
  std::vector<Simplex> gens(static_cast<std::size_t>(uniform(rng, 1, 4)));
  for (auto& g : gens) g = static_cast<Simplex>(uniform(rng, 1, full));
  return PastLinkComplex::closure_of(n, gens);
}

// ---------------------------------------------------------------- past links

Outcome past_link_matches_definition(std::uint64_t seed, std::size_t cases) {
  Run run("past link matches its definition");
  Rng rng(seed);
  while (run.out.cases < cases) {
    const auto k = random_complex(rng);
    for (const auto& v : vertex_list(k)) {
      const auto lib = past_link(k, v).simplices();
      run.expect(lib == oracle::past_link(k, v), [&] { return "v=" + v.to_string() + " K=" + show(k); });
    }
    run.commit();
  }
  return run.out;
}

Outcome past_link_union_of_up_sets(std::uint64_t seed, std::size_t cases) {
  Run run("past link is the union over up-sets");
  Rng rng(seed);
  while (run.out.cases < cases) {
    const auto k = random_complex(rng);
    const auto box = k.bounding_box();
    if (!box) continue;
    const auto v = pick(rng, vertex_list(k));
    PastLinkComplex::Bits bits;
    for (const auto& p : full_grid(box->lo, box->hi).vertices()) {
      bits |= past_link(up_set(k, p), v).bits();
    }
    run.check(bits == past_link(k, v).bits(), [&] { return "v=" + v.to_string() + " K=" + show(k); });
  }
  return run.out;
}

Outcome past_link_monotone(std::uint64_t seed, std::size_t cases) {
  Run run("past link is monotone in K");
  Rng rng(seed);
  while (run.out.cases < cases) {
    const auto k = random_complex(rng);
    std::vector<ElementaryCube> keep;
    for (const auto& m : maximal_cubes(k)) {
      if (uniform(rng, 0, 1)) keep.push_back(m);
    }
    const auto sub = from_maximal_cubes(k.ambient_dim(), keep);
    for (const auto& v : vertex_list(k)) {
      run.expect(past_link(sub, v).is_subcomplex_of(past_link(k, v)),
                [&] { return "v=" + v.to_string() + " K=" + show(k) + " K'=" + show(sub); });
    }
    run.commit();
  }
  return run.out;
}

Outcome past_link_of_down_set(std::uint64_t seed, std::size_t cases) {
  Run run("past link only sees the down-set");
  Rng rng(seed);
  while (run.out.cases < cases) {
    const auto k = random_complex(rng);
    for (const auto& v : vertex_list(k)) {
      run.expect(past_link(down_set(k, v), v) == past_link(k, v),
                [&] { return "v=" + v.to_string() + " K=" + show(k); });
    }
    run.commit();
  }
  return run.out;
}

Outcome past_link_inside_complete(std::uint64_t seed, std::size_t cases) {
  Run run("past links sit inside the complete complex");
  Rng rng(seed);
  while (run.out.cases < cases) {
    const int n = uniform(rng, 1, 6);
    run.expect(past_link(unit_cube(n), filled(n, 1)) == PastLinkComplex::complete(n),
              [&] { return "unit cube n=" + std::to_string(n); });
    const auto k = random_complex(rng);
    const auto full = PastLinkComplex::complete(k.ambient_dim());
    for (const auto& v : vertex_list(k)) {
      const auto l = past_link(k, v);
      run.expect(l.is_subcomplex_of(full) && l.is_subset_closed(),
                [&] { return "v=" + v.to_string() + " K=" + show(k); });
    }
    run.commit();
  }
  return run.out;
}

Outcome signature_matches_oracle(std::uint64_t seed, std::size_t cases) {
  Run run("homotopy signature matches brute force");
  Rng rng(seed);
  while (run.out.cases < cases) {
    const int n = uniform(rng, 1, 4);
    const auto l = random_link(rng, n);
    const auto s = homotopy_signature(l);
    const auto simplices = l.simplices();
    int chi = 0;
    for (std::size_t i = 0; i < s.betti_gf2.size(); ++i) chi += (i % 2 ? -1 : 1) * s.betti_gf2[i];
    const bool ok = s.component_count == oracle::components(simplices, n) &&
                    s.component_count == s.betti_gf2[0] &&
                    chi == oracle::euler_characteristic(simplices) &&
                    s.collapsible_to_point ==
                        oracle::collapsible(std::set<AxisMask>(simplices.begin(), simplices.end()));
    run.check(ok, [&] {
      std::string t;
      for (auto m : simplices) t += simplex_to_string(m, n) + " ";
      return "L={" + t + "} sig=" + to_string(s);
    });
  }
  return run.out;
}

Outcome simplicial_collapse_keeps_signature(std::uint64_t seed, std::size_t cases) {
  Run run("simplicial collapse keeps the signature");
  Rng rng(seed);
  while (run.out.cases < cases) {
    const auto l = random_link(rng, uniform(rng, 2, 5));
    std::vector<Simplex> free;
    for (auto a : l.simplices()) {
      if (free_coface(l, a)) free.push_back(a);
    }
    if (free.empty()) continue;
    const Simplex a = pick(rng, free);
    const auto after = simplicial_collapse(l, a);
    run.check(after.is_subset_closed() && homotopy_signature(after) == homotopy_signature(l), [&] {
      return "alpha=" + simplex_to_string(a, l.ground_size()) + " " + to_string(homotopy_signature(l)) +
             " -> " + to_string(homotopy_signature(after));
    });
  }
  return run.out;
}

// ------------------------------------------------------------------ collapses

Outcome restricted_formulas(std::uint64_t seed, std::size_t cases) {
  Run run("restricted past-link formulas");
  Rng rng(seed);
  while (run.out.cases < cases) {
    const int n = uniform(rng, 1, 5);
    const auto sigma = random_cube(rng, n);
    const auto verts = sigma.vertices();
    const Point tau = pick(rng, verts);
    std::vector<Point> above;
    for (const auto& v : verts) {
      if (product_le(tau, v)) above.push_back(v);
    }
    const Point v = pick(rng, above);
    const auto closed = from_maximal_cubes(n, std::vector{sigma});
    const auto after = tau_sigma_collapse(closed, ElementaryCube(tau, 0), sigma);
    const auto f = restricted_past_link_formulas(sigma, tau, v);
    run.check(f.spanned == past_link(closed, v).simplices() && f.after() == past_link(after, v).simplices(),
              [&] { return "sigma=" + sigma.to_string() + " tau=" + tau.to_string() + " v=" + v.to_string(); });
  }
  return run.out;
}

Outcome links_equal_off_tau(std::uint64_t seed, std::size_t cases) {
  Run run("past links unchanged where max(tau) is not below v");
  Rng rng(seed);
  while (run.out.cases < cases) {
    const auto k = random_complex(rng);
    const auto pairs = free_pairs(k);
    if (pairs.empty()) continue;
    const auto pr = pick(rng, pairs);
    const auto after = tau_sigma_collapse(k, pr.tau, pr.sigma);
    for (const auto& v : vertex_list(after)) {
      if (product_le(pr.tau.max(), v)) continue;
      run.expect(past_link(after, v) == past_link(k, v), [&] {
        return "tau=" + pr.tau.to_string() + " sigma=" + pr.sigma.to_string() + " v=" + v.to_string() +
               " K=" + show(k);
      });
    }
    run.commit();
  }
  return run.out;
}

Outcome general_matches_min_vertex_collapse(std::uint64_t seed, std::size_t cases) {
  Run run("general collapse matches the min-vertex collapse");
  Rng rng(seed);
  while (run.out.cases < cases) {
    const int n = uniform(rng, 1, 5);
    const auto sigma = random_cube(rng, n);
    std::vector<ElementaryCube> proper;
    for (const auto& f : faces(sigma)) {
      if (f.proper) proper.push_back(f.cube);
    }
    const auto tau = pick(rng, proper);
    const auto closed = from_maximal_cubes(n, std::vector{sigma});
    const auto general = tau_sigma_collapse(closed, tau, sigma);
    const auto vertex = tau_sigma_collapse(closed, ElementaryCube(tau.min(), 0), sigma);
    for (const auto& v : vertex_list(general)) {
      if (!product_le(tau.max(), v)) continue;
      run.expect(past_link(general, v) == past_link(vertex, v), [&] {
        return "sigma=" + sigma.to_string() + " tau=" + tau.to_string() + " v=" + v.to_string();
      });
    }
    run.commit();
  }
  return run.out;
}

Outcome vertex_collapse_keeps_signatures(std::uint64_t seed, std::size_t cases) {
  Run run("vertex collapses away from min(sigma) keep signatures");
  Rng rng(seed);
  while (run.out.cases < cases) {
    const auto k = random_complex(rng);
    std::vector<CollapsePair> pairs;
    for (const auto& p : free_pairs(k)) {
      if (p.tau.is_vertex() && p.tau.min() != p.sigma.min()) pairs.push_back(p);
    }
    if (pairs.empty()) continue;
    const auto pr = pick(rng, pairs);
    const auto after = tau_sigma_collapse(k, pr.tau, pr.sigma);
    bool ok = true;
    for (const auto& v : vertex_list(after)) {
      ok = ok && homotopy_signature(past_link(after, v)) == homotopy_signature(past_link(k, v));
    }
    run.check(ok, [&] { return "tau=" + pr.tau.to_string() + " sigma=" + pr.sigma.to_string() + " K=" + show(k); });
  }
  return run.out;
}

Outcome vertex_collapse_induces_simplicial_collapse(std::uint64_t seed, std::size_t cases) {
  Run run("vertex collapse induces a simplicial collapse");
  Rng rng(seed);
  while (run.out.cases < cases) {
    const auto k = random_complex(rng);
    std::vector<CollapsePair> pairs;
    for (const auto& p : free_pairs(k)) {
      if (p.tau.is_vertex() && p.tau.min() != p.sigma.min()) pairs.push_back(p);
    }
    if (pairs.empty()) continue;
    const auto pr = pick(rng, pairs);
    const Point tau = pr.tau.min();
    const auto after = tau_sigma_collapse(k, pr.tau, pr.sigma);
    for (const auto& v : pr.sigma.vertices()) {
      if (v == tau || !product_le(tau, v)) continue;
      const Simplex alpha = ElementaryCube::from_interval(tau, v).extent();
      run.expect(past_link(after, v) == simplicial_collapse(past_link(k, v), alpha), [&] {
        return "tau=" + tau.to_string() + " sigma=" + pr.sigma.to_string() + " v=" + v.to_string() +
               " K=" + show(k);
      });
    }
    run.commit();
  }
  return run.out;
}

Outcome criterion_matches_definition(std::uint64_t seed, std::size_t cases) {
  Run run("criterion agrees with the definition on random complexes");
  Rng rng(seed);
  while (run.out.cases < cases) {
    const auto k = random_complex(rng);
    for (const auto& pr : free_pairs(k)) {
      const bool fast = is_lpdc_pair(k, pr.tau, pr.sigma);
      const bool slow =
          lpdc_verify_by_definition(k, pr.tau, pr.sigma, VerifyScope::all_vertices).preserves_links;
      run.expect(fast == slow, [&] {
        return "tau=" + pr.tau.to_string() + " sigma=" + pr.sigma.to_string() + " K=" + show(k);
      });
    }
    run.commit();
  }
  return run.out;
}

Outcome collapse_matches_oracle(std::uint64_t seed, std::size_t cases) {
  Run run("free faces and collapses match brute force");
  Rng rng(seed);
  while (run.out.cases < cases) {
    const auto k = random_complex(rng);
    auto lib_max = maximal_cubes(k);
    auto naive_max = oracle::maximal(k);
    std::sort(lib_max.begin(), lib_max.end());
    std::sort(naive_max.begin(), naive_max.end());
    run.expect(lib_max == naive_max && from_maximal_cubes(k.ambient_dim(), lib_max) == k && k.is_face_closed(),
              [&] { return "maximal cubes K=" + show(k); });
    for (const auto& c : k.cubes()) {
      const auto partner = free_face_partner(k, c);
      bool ok = true;
      for (const auto& m : naive_max) {
        if (m.contains(c) && !(m == c)) ok = ok && (oracle::is_free_pair(k, c, m) == (partner && *partner == m));
      }
      if (partner) {
        const auto after = tau_sigma_collapse(k, c, *partner);
        ok = ok && after == oracle::collapse(k, c, *partner) && after.is_face_closed() &&
             k.cubes().size() - after.cubes().size() == (std::size_t{1} << (partner->dim() - c.dim()));
      }
      run.expect(ok, [&] { return "cube=" + c.to_string() + " K=" + show(k); });
    }
    run.commit();
  }
  return run.out;
}

Outcome step_logs_replay(std::uint64_t seed, std::size_t cases) {
  Run run("greedy sequences replay from their logs");
  Rng rng(seed);
  const Ordering orders[] = {Ordering::vertex_first, Ordering::lexicographic, Ordering::max_dim_first};
  while (run.out.cases < cases) {
    const auto k = random_complex(rng);
    CollapsePolicy policy;
    policy.ordering = orders[uniform(rng, 0, 2)];
    policy.guards.forbid_new_deadlocks = uniform(rng, 0, 1) == 1;
    policy.max_steps = static_cast<std::size_t>(uniform(rng, 1, 12));
    const auto seq = greedy_lpdc_sequence(k, policy);
    bool ok = true;
    CubicalComplex at = k;
    for (const auto& s : seq.steps) {
      ok = ok && is_lpdc_pair(at, s.tau, s.sigma);
      at = tau_sigma_collapse(at, s.tau, s.sigma);
    }
    const auto logged = parse_step_log(format_step_log(k.ambient_dim(), seq.steps));
    ok = ok && at == seq.result && replay(k, logged) == seq.result &&
         parse_complex(format_complex(seq.result)) == seq.result;
    run.check(ok, [&] { return "policy " + to_string(policy.ordering) + " K=" + show(k); });
  }
  return run.out;
}

// -------------------------------------------------------------------- dipaths

Outcome dipaths_match_oracle(std::uint64_t seed, std::size_t cases) {
  Run run("path counts and classes match brute force");
  Rng rng(seed);
  while (run.out.cases < cases) {
    const auto k = random_complex(rng);
    const auto verts = vertex_list(k);
    if (verts.empty()) continue;
    const Point p = pick(rng, verts);
    const Point q = pick(rng, verts);
    const auto naive = oracle::paths(k, p, q);
    const auto r = dihomotopy_classes(k, p, q, {EnumerationOptions{}.limit, 1});
    bool ok = r.path_count == naive.size() && count_edge_paths(k, p, q) == naive.size() &&
              r.class_count == oracle::class_count(k, p, q) && r.class_count <= r.path_count &&
              (r.class_count == 0) == (r.path_count == 0);
    std::uint64_t total = 0;
    for (auto s : r.class_sizes) total += s;
    ok = ok && total == r.path_count;
    for (const auto& rep : r.representatives) {
      std::size_t len = 0;
      for (int i = 0; i < k.ambient_dim(); ++i) len += static_cast<std::size_t>(q[i] - p[i]);
      ok = ok && rep.length() == len;
      for (std::size_t i = 0; i + 1 < rep.vertices.size(); ++i) {
        ok = ok && k.contains(ElementaryCube::from_interval(rep.vertices[i], rep.vertices[i + 1]));
      }
    }
    const auto reach = reachable_vertices(k, p);
    const auto naive_reach = oracle::reachable(k, p);
    ok = ok && std::vector<Point>(naive_reach.begin(), naive_reach.end()) == reach &&
         deadlocks(k, q) == oracle::deadlocks(k, q);
    run.check(ok, [&] { return "p=" + p.to_string() + " q=" + q.to_string() + " K=" + show(k); });
  }
  return run.out;
}

Outcome reachability_monotone(std::uint64_t seed, std::size_t cases) {
  Run run("reachable complex is monotone in K");
  Rng rng(seed);
  while (run.out.cases < cases) {
    const auto k = random_complex(rng);
    const auto verts = vertex_list(k);
    if (verts.empty()) continue;
    std::vector<ElementaryCube> keep;
    for (const auto& m : maximal_cubes(k)) {
      if (uniform(rng, 0, 3)) keep.push_back(m);
    }
    const auto sub = from_maximal_cubes(k.ambient_dim(), keep);
    const Point p = pick(rng, verts);
    const auto big = reachable_complex(k, p);
    const auto small = reachable_complex(sub, p);
    run.check(small.is_subcomplex_of(big) && big.is_face_closed() && small.is_face_closed(),
              [&] { return "p=" + p.to_string() + " K=" + show(k) + " K'=" + show(sub); });
  }
  return run.out;
}

Outcome disconnected_link_obstruction(std::uint64_t seed, std::size_t cases) {
  Run run("disconnected reachable past link forces two classes");
  Rng rng(seed);
  for (std::size_t tries = 0; run.out.cases < cases && tries < 200 * cases; ++tries) {
    const auto k = random_planar(rng, 6);
    const Point w = Point::zero(2);
    const auto r = reachable_complex(k, w);
    for (const auto& v : vertex_list(r)) {
      if (v == w || component_count(past_link(r, v)) < 2) continue;
      const auto classes = dihomotopy_classes(k, w, v, {EnumerationOptions{}.limit, 1}).class_count;
      run.expect(classes >= 2, [&] { return "v=" + v.to_string() + " K=" + show(k); });
    }
    run.commit();
  }
  return run.out;
}

Outcome class_count_matches_link_components(std::uint64_t seed, std::size_t cases) {
  Run run("class count matches past-link components when prefixes are unique");
  Rng rng(seed);
  for (std::size_t tries = 0; run.out.cases < cases && tries < 200 * cases; ++tries) {
    const auto k = random_planar(rng, 5);
    const auto verts = vertex_list(k);
    if (verts.size() < 2) continue;
    const Point p = pick(rng, verts);
    const Point q = pick(rng, verts);
    if (!product_lt(p, q)) continue;
    const auto c = pi0_pastlink_correspondence(k, p, q, {EnumerationOptions{}.limit, 1});
    if (!c.precondition_met) continue;
    const auto naive = oracle::class_count(k, p, q);
    run.check(c.holds && c.path_classes == naive &&
                  static_cast<std::size_t>(c.link_components) == naive,
              [&] { return "p=" + p.to_string() + " q=" + q.to_string() + " K=" + show(k); });
  }
  return run.out;
}

}  // namespace

const std::vector<Suite>& suites() {
  static const std::vector<Suite> all{
      {"past_link_definition", past_link_matches_definition},
      {"past_link_union", past_link_union_of_up_sets},
      {"past_link_monotone", past_link_monotone},
      {"past_link_down_set", past_link_of_down_set},
      {"past_link_complete", past_link_inside_complete},
      {"signature_oracle", signature_matches_oracle},
      {"simplicial_collapse_signature", simplicial_collapse_keeps_signature},
      {"restricted_formulas", restricted_formulas},
      {"links_equal_off_tau", links_equal_off_tau},
      {"min_vertex_collapse", general_matches_min_vertex_collapse},
      {"vertex_collapse_signatures", vertex_collapse_keeps_signatures},
      {"induced_simplicial_collapse", vertex_collapse_induces_simplicial_collapse},
      {"criterion_random", criterion_matches_definition},
      {"collapse_oracle", collapse_matches_oracle},
      {"step_log_replay", step_logs_replay},
      {"dipath_oracle", dipaths_match_oracle},
      {"reach_monotone", reachability_monotone},
      {"pi0_obstruction", disconnected_link_obstruction},
      {"pi0_correspondence", class_count_matches_link_components},
  };
  return all;
}

}  // namespace props
