#pragma once

// Past links as abstract simplicial complexes on the ground set {0..n-1}.
//
// A simplex is a nonzero mask j; it stands for the lower coface [v - j, v].
// Complexes are stored as a membership bitset indexed by the mask itself, so
// n <= kMaxDim gives at most 255 simplices.

#include <bitset>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dicubical/complex.hpp"

namespace dicubical {

using Simplex = AxisMask;

class PastLinkComplex {
 public:
  using Bits = std::bitset<std::size_t{1} << kMaxDim>;

  PastLinkComplex() = default;
  explicit PastLinkComplex(int ground_size);

  static PastLinkComplex complete(int ground_size);
  /// Subset closure of `generators`.
  static PastLinkComplex closure_of(int ground_size, const std::vector<Simplex>& generators);
  /// Throws DataError if `simplices` is not subset-closed or has out-of-range masks.
  static PastLinkComplex from_simplices(int ground_size, const std::vector<Simplex>& simplices);

  int ground_size() const { return ground_size_; }
  bool empty() const { return bits_.none(); }
  std::size_t size() const { return bits_.count(); }
  bool contains(Simplex s) const { return s != 0 && bits_.test(s); }
  const Bits& bits() const { return bits_; }

  /// Sorted by mask value.
  std::vector<Simplex> simplices() const;
  std::vector<Simplex> maximal_simplices() const;
  int dim() const;  // -1 when empty

  bool is_subcomplex_of(const PastLinkComplex& other) const {
    return ground_size_ == other.ground_size_ && (bits_ & ~other.bits_).none();
  }
  bool is_subset_closed() const;

  friend bool operator==(const PastLinkComplex&, const PastLinkComplex&) = default;

 private:
  friend PastLinkComplex past_link(const CubicalComplex&, const Point&);
  friend PastLinkComplex simplicial_collapse(const PastLinkComplex&, Simplex);
  friend PastLinkComplex set_difference(const PastLinkComplex&, const PastLinkComplex&);

  int ground_size_ = 0;
  Bits bits_;
};

/// Homotopy invariants used to compare past links.
struct HomotopySignature {
  int component_count = 0;
  /// betti_gf2[k] for k = 0..ground_size-1.
  std::vector<int> betti_gf2;
  bool collapsible_to_point = false;

  friend bool operator==(const HomotopySignature&, const HomotopySignature&) = default;
};

/// {j ≠ 0 : [v - j, v] ∈ K}. Empty when v ∉ K.
PastLinkComplex past_link(const CubicalComplex& k, const Point& v);

HomotopySignature homotopy_signature(const PastLinkComplex& l);

int component_count(const PastLinkComplex& l);
std::vector<int> betti_gf2(const PastLinkComplex& l);
/// Exhaustive search over elementary collapse orders, memoizing dead ends.
bool is_collapsible(const PastLinkComplex& l);

/// Removes every γ with α ⊆ γ ⊆ β, β the unique maximal proper coface of α.
/// Throws DataError if α ∉ L or α is not free.
PastLinkComplex simplicial_collapse(const PastLinkComplex& l, Simplex alpha);

/// The unique maximal simplex properly containing α, if α is free.
std::optional<Simplex> free_coface(const PastLinkComplex& l, Simplex alpha);

/// Set difference a \ b (not necessarily subset-closed).
PastLinkComplex set_difference(const PastLinkComplex& a, const PastLinkComplex& b);

std::string to_string(const HomotopySignature& s);
/// Simplex mask as a 0/1 vector, e.g. "(1,0,1)".
std::string simplex_to_string(Simplex s, int ground_size);

}  // namespace dicubical
