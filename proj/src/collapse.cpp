#include "dicubical/collapse.hpp"

#include <algorithm>
#include <iterator>
#include <tuple>
#include <unordered_set>

#include "dicubical/dipath.hpp"
#include "dicubical/errors.hpp"

namespace dicubical {

std::vector<ElementaryCube> cubes_between(const ElementaryCube& tau, const ElementaryCube& sigma) {
  std::vector<ElementaryCube> out;
  const AxisMask added = sigma.extent() & ~tau.extent();
  // Along an added axis τ sits at one end of σ; the coface starts at σ's min.
  AxisMask at_top = 0;
  for (int i = 0; i < sigma.ambient_dim(); ++i) {
    if ((added & axis_bit(i)) && tau.min()[i] != sigma.min()[i]) at_top |= axis_bit(i);
  }
  for_each_submask(added, [&](AxisMask a) {
    out.emplace_back(tau.min().minus(a & at_top), tau.extent() | a);
  });
  std::sort(out.begin(), out.end());
  return out;
}

void require_free_pair(const CubicalComplex& k, const ElementaryCube& tau,
                       const ElementaryCube& sigma) {
  if (tau == sigma) throw DataError("tau equals sigma; the removal set would be degenerate");
  if (!k.contains(tau)) throw DataError("tau " + tau.to_string() + " is not in the complex");
  if (!k.contains(sigma)) throw DataError("sigma " + sigma.to_string() + " is not in the complex");
  if (!sigma.contains(tau)) {
    throw DataError("tau " + tau.to_string() + " is not a face of sigma " + sigma.to_string());
  }
  const auto partner = free_face_partner(k, tau);
  if (!partner) throw DataError("tau " + tau.to_string() + " is not a free face");
  if (!(*partner == sigma)) {
    throw DataError("sigma " + sigma.to_string() + " is not the free partner of tau " +
                    tau.to_string() + " (partner is " + partner->to_string() + ")");
  }
}

CollapseStep make_step(const CubicalComplex& k, const ElementaryCube& tau,
                       const ElementaryCube& sigma) {
  require_free_pair(k, tau, sigma);
  return {tau, sigma, cubes_between(tau, sigma)};
}

CubicalComplex tau_sigma_collapse(const CubicalComplex& k, const ElementaryCube& tau,
                                  const ElementaryCube& sigma) {
  const CollapseStep step = make_step(k, tau, sigma);
  return k.without(step.removed);
}

bool is_lpdc_pair(const CubicalComplex& k, const ElementaryCube& tau, const ElementaryCube& sigma) {
  if (!k.contains(tau) || tau == sigma) return false;
  const auto partner = free_face_partner(k, tau);
  return partner && *partner == sigma && !tau.contains(sigma.min());
}

LpdcVerification lpdc_verify_by_definition(const CubicalComplex& k, const ElementaryCube& tau,
                                           const ElementaryCube& sigma, VerifyScope scope) {
  const CubicalComplex after = tau_sigma_collapse(k, tau, sigma);
  std::vector<Point> checked;
  if (scope == VerifyScope::sigma_vertices) {
    for (const auto& v : sigma.vertices()) {
      if (after.contains_vertex(v)) checked.push_back(v);
    }
  } else {
    checked = after.vertices();
  }
  LpdcVerification out;
  out.preserves_links = true;
  for (const auto& v : checked) {
    VertexLinkCheck c;
    c.vertex = v;
    c.before = homotopy_signature(past_link(k, v));
    c.after = homotopy_signature(past_link(after, v));
    c.equal = c.before == c.after;
    out.preserves_links = out.preserves_links && c.equal;
    out.vertices.push_back(std::move(c));
  }
  return out;
}

RestrictedLinkFormulas restricted_past_link_formulas(const ElementaryCube& sigma,
                                                     const Point& tau, const Point& v) {
  if (!sigma.contains(tau)) throw DataError("tau " + tau.to_string() + " is not a vertex of sigma");
  if (!sigma.contains(v)) throw DataError("v " + v.to_string() + " is not a vertex of sigma");
  if (!product_le(tau, v)) throw DataError("tau must precede v in the product order");
  RestrictedLinkFormulas out;
  for (Simplex j = 1; j <= full_mask(sigma.ambient_dim()); ++j) {
    const Point base = v.minus(j);
    if (product_le(sigma.min(), base)) out.spanned.push_back(j);
    if (product_le(base, tau)) out.removed.push_back(j);
  }
  return out;
}

std::vector<Simplex> RestrictedLinkFormulas::after() const {
  std::vector<Simplex> out;
  std::set_difference(spanned.begin(), spanned.end(), removed.begin(), removed.end(),
                      std::back_inserter(out));
  return out;
}

namespace {

auto ordering_key(const CollapsePair& p, Ordering o) {
  const int n = p.tau.ambient_dim();
  // Extent compared as a 0/1 vector, axis 0 first.
  AxisMask rev = 0;
  for (int i = 0; i < n; ++i) {
    if (p.tau.extent() & axis_bit(i)) rev |= axis_bit(n - 1 - i);
  }
  switch (o) {
    case Ordering::vertex_first:
      return std::make_tuple(0, p.tau.dim(), p.tau.min(), rev);
    case Ordering::lexicographic:
      return std::make_tuple(0, 0, p.tau.min(), rev);
    case Ordering::max_dim_first:
      return std::make_tuple(-p.sigma.dim(), p.tau.dim(), p.tau.min(), rev);
  }
  return std::make_tuple(0, 0, p.tau.min(), rev);
}

}  // namespace

std::vector<CollapsePair> enumerate_lpdc_pairs(const CubicalComplex& k, Ordering ordering) {
  std::vector<CollapsePair> out;
  for (const auto& tau : k.cubes()) {
    const auto partner = free_face_partner(k, tau);
    if (!partner || tau.contains(partner->min())) continue;
    out.push_back({tau, *partner});
  }
  std::stable_sort(out.begin(), out.end(), [&](const CollapsePair& a, const CollapsePair& b) {
    return ordering_key(a, ordering) < ordering_key(b, ordering);
  });
  return out;
}

CollapseSequence greedy_lpdc_sequence(const CubicalComplex& k, const CollapsePolicy& policy) {
  CollapseSequence seq;
  seq.result = k;
  const std::optional<Point> target = policy.deadlock_target ? policy.deadlock_target : k.max_vertex();
  const std::optional<Point> origin = k.min_vertex();

  while (seq.steps.size() < policy.max_steps) {
    bool applied = false;
    for (const auto& pair : enumerate_lpdc_pairs(seq.result, policy.ordering)) {
      if (pair.tau.dim() > policy.max_tau_dim) continue;
      if (policy.admit && !policy.admit(pair)) continue;
      CollapseStep step{pair.tau, pair.sigma, cubes_between(pair.tau, pair.sigma)};
      CubicalComplex next = seq.result.without(step.removed);
      std::vector<Point> local;
      for (const auto& v : pair.sigma.vertices()) {
        if (next.contains_vertex(v)) local.push_back(v);
      }

      bool ok = true;
      if (policy.guards.forbid_new_deadlocks) {
        for (const auto& v : local) {
          if (is_deadlock(next, v, target) && !is_deadlock(seq.result, v, target)) ok = false;
        }
      }
      if (ok && policy.guards.forbid_new_unreachable_from) {
        const Point& from = *policy.guards.forbid_new_unreachable_from;
        const auto before = reachable_vertices(seq.result, from);
        const auto after = reachable_vertices(next, from);
        for (const auto& v : local) {
          if (std::binary_search(before.begin(), before.end(), v) &&
              !std::binary_search(after.begin(), after.end(), v)) {
            ok = false;
          }
        }
      }
      if (!ok) {
        ++seq.rejected_by_guards;
        continue;
      }

      StepStats stats;
      {
        const auto dl_before = deadlocks(seq.result, target);
        const std::unordered_set<Point> old(dl_before.begin(), dl_before.end());
        for (const auto& v : deadlocks(next, target)) stats.new_deadlocks += old.count(v) ? 0 : 1;
      }
      if (origin) {
        const auto before = reachable_vertices(seq.result, *origin);
        const auto after = reachable_vertices(next, *origin);
        for (const auto& v : before) {
          if (next.contains_vertex(v) && !std::binary_search(after.begin(), after.end(), v)) {
            ++stats.new_unreachable;
          }
        }
      }
      seq.result = std::move(next);
      seq.steps.push_back(std::move(step));
      seq.stats.push_back(stats);
      applied = true;
      break;
    }
    if (!applied) break;
  }
  return seq;
}

CubicalComplex replay(const CubicalComplex& k, const std::vector<CollapseStep>& steps) {
  CubicalComplex at = k;
  for (const auto& s : steps) {
    const CollapseStep expected = make_step(at, s.tau, s.sigma);
    if (!s.removed.empty() && s.removed != expected.removed) {
      throw DataError("logged removal set for " + s.tau.to_string() + " / " +
                      s.sigma.to_string() + " does not match the complex");
    }
    at = at.without(expected.removed);
  }
  return at;
}

std::string to_string(Ordering o) {
  switch (o) {
    case Ordering::vertex_first: return "vertex_first";
    case Ordering::lexicographic: return "lexicographic";
    case Ordering::max_dim_first: return "max_dim_first";
  }
  return "vertex_first";
}

Ordering parse_ordering(const std::string& name) {
  if (name == "vertex_first" || name == "vertex-first") return Ordering::vertex_first;
  if (name == "lexicographic") return Ordering::lexicographic;
  if (name == "max_dim_first" || name == "max-dim-first") return Ordering::max_dim_first;
  throw DataError("unknown collapse policy '" + name +
                  "' (expected vertex_first, lexicographic or max_dim_first)");
}

}  // namespace dicubical
