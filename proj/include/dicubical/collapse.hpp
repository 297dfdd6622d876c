#pragma once

// (τ,σ)-collapses, the link-preserving criterion, a definition-based
// verifier for it, and greedy collapse scheduling.

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "dicubical/complex.hpp"
#include "dicubical/past_link.hpp"

namespace dicubical {

struct CollapsePair {
  ElementaryCube tau;
  ElementaryCube sigma;

  friend bool operator==(const CollapsePair&, const CollapsePair&) = default;
};

struct CollapseStep {
  ElementaryCube tau;
  ElementaryCube sigma;
  /// {γ ∈ K : τ ⊆ γ ⊆ σ}, sorted; always 2^(dim σ - dim τ) cubes.
  std::vector<ElementaryCube> removed;
};

/// Cubes between τ and σ (inclusive) in closure order.
std::vector<ElementaryCube> cubes_between(const ElementaryCube& tau, const ElementaryCube& sigma);

/// Checks that τ is a free face of σ in K; throws DataError otherwise,
/// including when σ is not τ's free partner.
void require_free_pair(const CubicalComplex& k, const ElementaryCube& tau,
                       const ElementaryCube& sigma);

/// K minus every cube between τ and σ.
CubicalComplex tau_sigma_collapse(const CubicalComplex& k, const ElementaryCube& tau,
                                  const ElementaryCube& sigma);
CollapseStep make_step(const CubicalComplex& k, const ElementaryCube& tau,
                       const ElementaryCube& sigma);

/// τ is a free face of σ and min(σ) is not a vertex of τ.
bool is_lpdc_pair(const CubicalComplex& k, const ElementaryCube& tau, const ElementaryCube& sigma);

struct VertexLinkCheck {
  Point vertex;
  HomotopySignature before;
  HomotopySignature after;
  bool equal = false;
};

struct LpdcVerification {
  bool preserves_links = false;
  std::vector<VertexLinkCheck> vertices;
};

enum class VerifyScope {
  sigma_vertices,  // vertices of σ surviving the collapse; others are untouched
  all_vertices,    // every vertex of K'
};

/// Compares past-link signatures before and after the collapse.
LpdcVerification lpdc_verify_by_definition(const CubicalComplex& k, const ElementaryCube& tau,
                                           const ElementaryCube& sigma,
                                           VerifyScope scope = VerifyScope::sigma_vertices);

/// The two simplex sets describing past links of a vertex v of σ inside the
/// closed cube σ before and after a (τ,σ)-collapse, τ a vertex:
///   spanned = {j ≠ 0 : min(σ) ⪯ v - j}
///   removed = {j ≠ 0 : v - j ⪯ τ}
/// so the link before is `spanned` and after is `spanned \ removed`.
struct RestrictedLinkFormulas {
  std::vector<Simplex> spanned;  // sorted
  std::vector<Simplex> removed;  // sorted; upward closed, not a complex
  std::vector<Simplex> after() const;
};

/// Throws DataError unless τ and v are vertices of σ with τ ⪯ v.
RestrictedLinkFormulas restricted_past_link_formulas(const ElementaryCube& sigma,
                                                     const Point& tau, const Point& v);

enum class Ordering {
  vertex_first,   // (dim τ, min τ, extent τ)
  lexicographic,  // (min τ, extent τ)
  max_dim_first,  // (-dim σ, dim τ, min τ, extent τ)
};

/// Every LPDC pair of K, sorted by `ordering`.
std::vector<CollapsePair> enumerate_lpdc_pairs(const CubicalComplex& k,
                                               Ordering ordering = Ordering::vertex_first);

struct CollapseGuards {
  bool forbid_new_deadlocks = false;
  /// Reject steps that make a vertex of σ unreachable from this start.
  std::optional<Point> forbid_new_unreachable_from;
};

struct CollapsePolicy {
  Ordering ordering = Ordering::vertex_first;
  CollapseGuards guards;
  /// Vertex exempt from deadlock checks; defaults to the input's maximum vertex.
  std::optional<Point> deadlock_target;
  /// Only pairs with dim τ <= this are considered.
  int max_tau_dim = kMaxDim;
  /// Extra caller filter over candidate pairs.
  std::function<bool(const CollapsePair&)> admit;
  std::size_t max_steps = static_cast<std::size_t>(-1);
};

struct StepStats {
  std::size_t new_deadlocks = 0;
  std::size_t new_unreachable = 0;
};

struct CollapseSequence {
  std::vector<CollapseStep> steps;
  /// Global deadlock/reachability changes per step, measured against the
  /// input's minimum vertex and deadlock target when they exist.
  std::vector<StepStats> stats;
  CubicalComplex result;
  std::size_t rejected_by_guards = 0;
};

/// Repeatedly applies the first admissible LPDC pair until none remains.
CollapseSequence greedy_lpdc_sequence(const CubicalComplex& k, const CollapsePolicy& policy = {});

/// Applies logged steps in order, checking each removal set.
CubicalComplex replay(const CubicalComplex& k, const std::vector<CollapseStep>& steps);

std::string to_string(Ordering o);
/// Throws DataError for unknown names.
Ordering parse_ordering(const std::string& name);

}  // namespace dicubical
