#include "dicubical/past_link.hpp"

#include <numeric>
#include <sstream>
#include <unordered_set>

#include "dicubical/errors.hpp"

namespace dicubical {

namespace {

using Bits = PastLinkComplex::Bits;

Simplex top_mask(int n) { return full_mask(n); }

void check_ground(int n) {
  if (n < 0 || n > kMaxDim) {
    throw DataError("past-link ground size " + std::to_string(n) + " out of range");
  }
}

bool subset_closed(const Bits& bits, int n) {
  for (Simplex s = 1; s <= top_mask(n); ++s) {
    if (!bits.test(s)) continue;
    for (int i = 0; i < n; ++i) {
      const Simplex f = s & ~axis_bit(i);
      if (f != s && f != 0 && !bits.test(f)) return false;
    }
  }
  return true;
}

// Number of simplices properly containing s, capped at 2.
int coface_count_capped(const Bits& bits, Simplex s, int n, Simplex* only) {
  int count = 0;
  for (int i = 0; i < n; ++i) {
    if (s & axis_bit(i)) continue;
    const Simplex g = s | axis_bit(i);
    if (bits.test(g)) {
      if (++count > 1) return 2;
      if (only) *only = g;
    }
  }
  return count;
}

int gf2_rank(std::vector<Bits> rows) {
  int rank = 0;
  const std::size_t width = rows.empty() ? 0 : rows.front().size();
  for (std::size_t col = 0; col < width && !rows.empty(); ++col) {
    auto pivot = rows.end();
    for (auto it = rows.begin(); it != rows.end(); ++it) {
      if (it->test(col)) {
        pivot = it;
        break;
      }
    }
    if (pivot == rows.end()) continue;
    const Bits p = *pivot;
    rows.erase(pivot);
    for (auto& r : rows) {
      if (r.test(col)) r ^= p;
    }
    ++rank;
  }
  return rank;
}

// Rank of the boundary map from k-simplices (popcount k+1) to (k-1)-simplices.
int boundary_rank(const Bits& bits, int n, int k) {
  if (k <= 0) return 0;
  std::vector<Bits> rows;
  for (Simplex s = 1; s <= top_mask(n); ++s) {
    if (!bits.test(s) || popcount(s) != k + 1) continue;
    Bits row;
    for (int i = 0; i < n; ++i) {
      if (s & axis_bit(i)) row.set(s & ~axis_bit(i));
    }
    rows.push_back(row);
  }
  return gf2_rank(std::move(rows));
}

struct BitsHash {
  std::size_t operator()(const Bits& b) const noexcept { return std::hash<Bits>{}(b); }
};

class CollapseSearch {
 public:
  explicit CollapseSearch(int n) : n_(n) {}

  bool run(const Bits& state) {
    const std::size_t count = state.count();
    if (count == 0) return false;
    if (count == 1) return true;
    if (dead_.count(state)) return false;
    for (Simplex a = 1; a <= top_mask(n_); ++a) {
      if (!state.test(a)) continue;
      Simplex b = 0;
      if (coface_count_capped(state, a, n_, &b) != 1) continue;
      if (coface_count_capped(state, b, n_, nullptr) != 0) continue;
      Bits next = state;
      next.reset(a);
      next.reset(b);
      if (run(next)) return true;
    }
    dead_.insert(state);
    return false;
  }

 private:
  int n_;
  std::unordered_set<Bits, BitsHash> dead_;
};

}  // namespace

PastLinkComplex::PastLinkComplex(int ground_size) : ground_size_(ground_size) {
  check_ground(ground_size);
}

PastLinkComplex PastLinkComplex::complete(int ground_size) {
  PastLinkComplex l(ground_size);
  for (Simplex s = 1; s <= top_mask(ground_size); ++s) l.bits_.set(s);
  return l;
}

PastLinkComplex PastLinkComplex::closure_of(int ground_size,
                                            const std::vector<Simplex>& generators) {
  PastLinkComplex l(ground_size);
  for (Simplex g : generators) {
    if (g == 0 || (g & ~top_mask(ground_size))) {
      throw DataError("simplex mask out of range for ground size " +
                      std::to_string(ground_size));
    }
    for_each_submask(g, [&](Simplex s) {
      if (s) l.bits_.set(s);
    });
  }
  return l;
}

PastLinkComplex PastLinkComplex::from_simplices(int ground_size,
                                                const std::vector<Simplex>& simplices) {
  PastLinkComplex l(ground_size);
  for (Simplex s : simplices) {
    if (s == 0 || (s & ~top_mask(ground_size))) {
      throw DataError("simplex mask out of range for ground size " +
                      std::to_string(ground_size));
    }
    l.bits_.set(s);
  }
  if (!subset_closed(l.bits_, ground_size)) {
    throw DataError("simplex set is not closed under taking faces");
  }
  return l;
}

std::vector<Simplex> PastLinkComplex::simplices() const {
  std::vector<Simplex> out;
  for (Simplex s = 1; s <= top_mask(ground_size_); ++s) {
    if (bits_.test(s)) out.push_back(s);
  }
  return out;
}

std::vector<Simplex> PastLinkComplex::maximal_simplices() const {
  std::vector<Simplex> out;
  for (Simplex s : simplices()) {
    if (coface_count_capped(bits_, s, ground_size_, nullptr) == 0) out.push_back(s);
  }
  return out;
}

int PastLinkComplex::dim() const {
  int d = -1;
  for (Simplex s : simplices()) d = std::max(d, popcount(s) - 1);
  return d;
}

bool PastLinkComplex::is_subset_closed() const { return subset_closed(bits_, ground_size_); }

PastLinkComplex past_link(const CubicalComplex& k, const Point& v) {
  const int n = k.ambient_dim();
  PastLinkComplex l(n);
  if (v.dim() != n || !k.contains_vertex(v)) return l;
  for (Simplex j = 1; j <= top_mask(n); ++j) {
    if (k.contains(ElementaryCube(v.minus(j), j))) l.bits_.set(j);
  }
  return l;
}

int component_count(const PastLinkComplex& l) {
  const int n = l.ground_size();
  std::vector<int> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      x = parent[static_cast<std::size_t>(x)] =
          parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
    }
    return x;
  };
  int components = 0;
  for (int i = 0; i < n; ++i) {
    if (l.contains(axis_bit(i))) ++components;
  }
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      if (!l.contains(axis_bit(a) | axis_bit(b))) continue;
      const int ra = find(a);
      const int rb = find(b);
      if (ra != rb) {
        parent[static_cast<std::size_t>(ra)] = rb;
        --components;
      }
    }
  }
  return components;
}

std::vector<int> betti_gf2(const PastLinkComplex& l) {
  const int n = l.ground_size();
  std::vector<int> chain_dims(static_cast<std::size_t>(n), 0);
  for (Simplex s : l.simplices()) ++chain_dims[static_cast<std::size_t>(popcount(s) - 1)];
  std::vector<int> ranks(static_cast<std::size_t>(n) + 1, 0);
  for (int k = 1; k < n; ++k) ranks[static_cast<std::size_t>(k)] = boundary_rank(l.bits(), n, k);
  std::vector<int> betti(static_cast<std::size_t>(n), 0);
  for (int k = 0; k < n; ++k) {
    const auto uk = static_cast<std::size_t>(k);
    betti[uk] = chain_dims[uk] - ranks[uk] - ranks[uk + 1];
  }
  return betti;
}

bool is_collapsible(const PastLinkComplex& l) {
  CollapseSearch search(l.ground_size());
  return search.run(l.bits());
}

HomotopySignature homotopy_signature(const PastLinkComplex& l) {
  HomotopySignature sig;
  sig.component_count = component_count(l);
  sig.betti_gf2 = betti_gf2(l);
  sig.collapsible_to_point = is_collapsible(l);
  return sig;
}

std::optional<Simplex> free_coface(const PastLinkComplex& l, Simplex alpha) {
  if (!l.contains(alpha)) return std::nullopt;
  std::optional<Simplex> beta;
  for (Simplex m : l.maximal_simplices()) {
    if (m == alpha || (m & alpha) != alpha) continue;
    if (beta) return std::nullopt;
    beta = m;
  }
  return beta;
}

PastLinkComplex simplicial_collapse(const PastLinkComplex& l, Simplex alpha) {
  if (!l.contains(alpha)) {
    throw DataError("simplex " + simplex_to_string(alpha, l.ground_size()) +
                    " is not in the complex");
  }
  const auto beta = free_coface(l, alpha);
  if (!beta) {
    throw DataError("simplex " + simplex_to_string(alpha, l.ground_size()) +
                    " is not a free face");
  }
  PastLinkComplex out = l;
  for_each_submask(*beta & ~alpha, [&](Simplex extra) { out.bits_.reset(alpha | extra); });
  return out;
}

PastLinkComplex set_difference(const PastLinkComplex& a, const PastLinkComplex& b) {
  PastLinkComplex out = a;
  out.bits_ &= ~b.bits_;
  return out;
}

std::string to_string(const HomotopySignature& s) {
  std::ostringstream os;
  os << '(' << s.component_count << ",[";
  for (std::size_t i = 0; i < s.betti_gf2.size(); ++i) {
    if (i) os << ',';
    os << s.betti_gf2[i];
  }
  os << "]," << (s.collapsible_to_point ? "true" : "false") << ')';
  return os.str();
}

std::string simplex_to_string(Simplex s, int ground_size) {
  std::ostringstream os;
  os << '(';
  for (int i = 0; i < ground_size; ++i) {
    if (i) os << ',';
    os << ((s & axis_bit(i)) ? 1 : 0);
  }
  os << ')';
  return os.str();
}

}  // namespace dicubical
