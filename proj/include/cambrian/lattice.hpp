#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "cambrian/errors.hpp"

namespace cambrian {

using LatticeBits = boost::dynamic_bitset<>;

// Finite lattice given by its Hasse diagram. Construction validates eagerly:
// the cover relation must be acyclic and transitively reduced, with a unique
// bottom and top and a unique meet and join for every pair.
class FiniteLattice {
 public:
  static FiniteLattice from_covers(std::vector<std::string> labels,
                                   std::vector<std::pair<int, int>> covers) {
    FiniteLattice L;
    L.labels_ = std::move(labels);
    const int n = static_cast<int>(L.labels_.size());
    if (n == 0) throw ValidationError("lattice: empty element set");
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        if (L.labels_[static_cast<std::size_t>(i)] == L.labels_[static_cast<std::size_t>(j)]) {
          throw ValidationError("lattice: duplicate label '" +
                                L.labels_[static_cast<std::size_t>(i)] + "'");
        }
      }
    }
    std::sort(covers.begin(), covers.end());
    for (std::size_t e = 0; e < covers.size(); ++e) {
      const auto [a, b] = covers[e];
      if (a < 0 || a >= n || b < 0 || b >= n) {
        throw ValidationError("lattice: cover (" + std::to_string(a) + "," + std::to_string(b) +
                              ") out of range");
      }
      if (a == b) throw ValidationError("lattice: self cover at " + std::to_string(a));
      if (e > 0 && covers[e] == covers[e - 1]) {
        throw ValidationError("lattice: duplicate cover edge (" + std::to_string(a) + "," +
                              std::to_string(b) + ")");
      }
    }
    L.covers_ = std::move(covers);
    L.up_adj_.assign(static_cast<std::size_t>(n), {});
    L.down_adj_.assign(static_cast<std::size_t>(n), {});
    for (const auto& [a, b] : L.covers_) {
      L.up_adj_[static_cast<std::size_t>(a)].push_back(b);
      L.down_adj_[static_cast<std::size_t>(b)].push_back(a);
    }

    // Kahn topological order; leftovers mean a cycle.
    std::vector<int> indeg(static_cast<std::size_t>(n), 0);
    for (const auto& [a, b] : L.covers_) indeg[static_cast<std::size_t>(b)]++;
    std::vector<int> queue;
    for (int i = 0; i < n; ++i) {
      if (indeg[static_cast<std::size_t>(i)] == 0) queue.push_back(i);
    }
    L.topo_.clear();
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const int x = queue[head];
      L.topo_.push_back(x);
      for (int y : L.up_adj_[static_cast<std::size_t>(x)]) {
        if (--indeg[static_cast<std::size_t>(y)] == 0) queue.push_back(y);
      }
    }
    if (static_cast<int>(L.topo_.size()) != n) {
      throw ValidationError("lattice: cover relation contains a cycle");
    }
    L.topo_pos_.assign(static_cast<std::size_t>(n), 0);
    for (int p = 0; p < n; ++p) L.topo_pos_[static_cast<std::size_t>(L.topo_[p])] = p;

    L.down_.assign(static_cast<std::size_t>(n), LatticeBits(static_cast<std::size_t>(n)));
    for (int x : L.topo_) {
      L.down_[static_cast<std::size_t>(x)].set(static_cast<std::size_t>(x));
      for (int y : L.down_adj_[static_cast<std::size_t>(x)]) {
        L.down_[static_cast<std::size_t>(x)] |= L.down_[static_cast<std::size_t>(y)];
      }
    }
    L.up_.assign(static_cast<std::size_t>(n), LatticeBits(static_cast<std::size_t>(n)));
    for (auto it = L.topo_.rbegin(); it != L.topo_.rend(); ++it) {
      const int x = *it;
      L.up_[static_cast<std::size_t>(x)].set(static_cast<std::size_t>(x));
      for (int y : L.up_adj_[static_cast<std::size_t>(x)]) {
        L.up_[static_cast<std::size_t>(x)] |= L.up_[static_cast<std::size_t>(y)];
      }
    }

    // A cover edge is redundant when another path connects its endpoints.
    for (const auto& [a, b] : L.covers_) {
      for (int k : L.down_adj_[static_cast<std::size_t>(b)]) {
        if (k != a && L.down_[static_cast<std::size_t>(k)].test(static_cast<std::size_t>(a))) {
          throw ValidationError("lattice: redundant cover edge (" + L.labels_[static_cast<std::size_t>(a)] +
                                " < " + L.labels_[static_cast<std::size_t>(b)] + ")");
        }
      }
    }

    std::vector<int> tops, bottoms;
    for (int i = 0; i < n; ++i) {
      if (L.up_adj_[static_cast<std::size_t>(i)].empty()) tops.push_back(i);
      if (L.down_adj_[static_cast<std::size_t>(i)].empty()) bottoms.push_back(i);
    }
    if (tops.size() != 1) {
      std::string msg = "lattice: multiple tops:";
      for (int t : tops) msg += " '" + L.labels_[static_cast<std::size_t>(t)] + "'";
      throw ValidationError(msg);
    }
    if (bottoms.size() != 1) {
      std::string msg = "lattice: multiple bottoms:";
      for (int b : bottoms) msg += " '" + L.labels_[static_cast<std::size_t>(b)] + "'";
      throw ValidationError(msg);
    }
    L.top_ = tops.front();
    L.bottom_ = bottoms.front();

    L.meet_.assign(static_cast<std::size_t>(n) * n, -1);
    L.join_.assign(static_cast<std::size_t>(n) * n, -1);
    for (int i = 0; i < n; ++i) {
      for (int j = i; j < n; ++j) {
        const int m = L.extremum(i, j, /*meet=*/true);
        if (m < 0) {
          throw ValidationError("lattice: non-unique meet for ('" +
                                L.labels_[static_cast<std::size_t>(i)] + "', '" +
                                L.labels_[static_cast<std::size_t>(j)] + "')");
        }
        const int v = L.extremum(i, j, /*meet=*/false);
        if (v < 0) {
          throw ValidationError("lattice: non-unique join for ('" +
                                L.labels_[static_cast<std::size_t>(i)] + "', '" +
                                L.labels_[static_cast<std::size_t>(j)] + "')");
        }
        L.meet_[L.flat(i, j)] = L.meet_[L.flat(j, i)] = m;
        L.join_[L.flat(i, j)] = L.join_[L.flat(j, i)] = v;
      }
    }
    return L;
  }

  int size() const { return static_cast<int>(labels_.size()); }
  const std::string& label(int i) const { return labels_[static_cast<std::size_t>(i)]; }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<std::pair<int, int>>& covers() const { return covers_; }
  int bottom() const { return bottom_; }
  int top() const { return top_; }

  bool leq(int i, int j) const {
    return down_[static_cast<std::size_t>(j)].test(static_cast<std::size_t>(i));
  }
  int meet(int i, int j) const { return meet_[flat(i, j)]; }
  int join(int i, int j) const { return join_[flat(i, j)]; }

  const std::vector<int>& upper_cover_list(int i) const {
    return up_adj_[static_cast<std::size_t>(i)];
  }
  const std::vector<int>& lower_cover_list(int i) const {
    return down_adj_[static_cast<std::size_t>(i)];
  }
  const LatticeBits& downset(int i) const { return down_[static_cast<std::size_t>(i)]; }
  const LatticeBits& upset(int i) const { return up_[static_cast<std::size_t>(i)]; }

 private:
  FiniteLattice() = default;

  std::size_t flat(int i, int j) const {
    return static_cast<std::size_t>(i) * labels_.size() + static_cast<std::size_t>(j);
  }

  // Unique maximal (meet) or minimal (join) element of the common bound set,
  // or -1 when no unique one exists. Scanning members in (reverse) topological
  // order finds a maximal (minimal) member first; it is the extremum exactly
  // when it bounds the whole set.
  int extremum(int i, int j, bool meet) const {
    const LatticeBits common = meet ? (down_[static_cast<std::size_t>(i)] & down_[static_cast<std::size_t>(j)])
                                    : (up_[static_cast<std::size_t>(i)] & up_[static_cast<std::size_t>(j)]);
    const int n = size();
    int cand = -1;
    if (meet) {
      for (int p = n - 1; p >= 0; --p) {
        if (common.test(static_cast<std::size_t>(topo_[static_cast<std::size_t>(p)]))) {
          cand = topo_[static_cast<std::size_t>(p)];
          break;
        }
      }
      if (cand < 0) return -1;
      return common.is_subset_of(down_[static_cast<std::size_t>(cand)]) ? cand : -1;
    }
    for (int p = 0; p < n; ++p) {
      if (common.test(static_cast<std::size_t>(topo_[static_cast<std::size_t>(p)]))) {
        cand = topo_[static_cast<std::size_t>(p)];
        break;
      }
    }
    if (cand < 0) return -1;
    return common.is_subset_of(up_[static_cast<std::size_t>(cand)]) ? cand : -1;
  }

  std::vector<std::string> labels_;
  std::vector<std::pair<int, int>> covers_;
  std::vector<std::vector<int>> up_adj_, down_adj_;
  std::vector<int> topo_, topo_pos_;
  std::vector<LatticeBits> down_, up_;
  std::vector<int> meet_, join_;
  int bottom_ = -1, top_ = -1;
};

// Elements with exactly one lower cover.
inline std::vector<int> join_irreducibles(const FiniteLattice& L) {
  std::vector<int> out;
  for (int i = 0; i < L.size(); ++i) {
    if (L.lower_cover_list(i).size() == 1) out.push_back(i);
  }
  return out;
}

// Elements with exactly one upper cover.
inline std::vector<int> meet_irreducibles(const FiniteLattice& L) {
  std::vector<int> out;
  for (int i = 0; i < L.size(); ++i) {
    if (L.upper_cover_list(i).size() == 1) out.push_back(i);
  }
  return out;
}

namespace detail {

// Length of the longest cover path from bottom to each element.
inline std::vector<int> longest_from_bottom(const FiniteLattice& L) {
  std::vector<int> lp(static_cast<std::size_t>(L.size()), 0);
  // Cover pairs sorted ascending is not a topological order in general; walk
  // elements in an order where all lower covers precede. Repeated relaxation
  // over covers sorted by downset size would be overkill; instead do a DFS.
  std::vector<int> state(static_cast<std::size_t>(L.size()), 0);
  std::vector<int> stack{L.top()};
  // Iterative postorder: compute lp recursively from lower covers.
  std::vector<int> order;
  while (!stack.empty()) {
    const int x = stack.back();
    if (state[static_cast<std::size_t>(x)] == 0) {
      state[static_cast<std::size_t>(x)] = 1;
      for (int y : L.lower_cover_list(x)) {
        if (state[static_cast<std::size_t>(y)] == 0) stack.push_back(y);
      }
    } else {
      stack.pop_back();
      if (state[static_cast<std::size_t>(x)] == 1) {
        state[static_cast<std::size_t>(x)] = 2;
        order.push_back(x);
      }
    }
  }
  for (int x : order) {
    int best = 0;
    for (int y : L.lower_cover_list(x)) {
      best = std::max(best, lp[static_cast<std::size_t>(y)] + 1);
    }
    lp[static_cast<std::size_t>(x)] = best;
  }
  return lp;
}

}  // namespace detail

// Length of the longest maximal chain.
inline int lattice_length(const FiniteLattice& L) {
  return detail::longest_from_bottom(L)[static_cast<std::size_t>(L.top())];
}

struct GradedCheck {
  bool graded = false;
  // When not graded: two maximal chains of different lengths (bottom to top).
  std::vector<int> long_chain, short_chain;
};

// Graded means every maximal chain from bottom to top has the same length,
// equivalently the shortest and longest cover paths agree.
inline GradedCheck is_graded(const FiniteLattice& L) {
  const int n = L.size();
  const std::vector<int> lp = detail::longest_from_bottom(L);
  std::vector<int> sp(static_cast<std::size_t>(n), -1);
  std::vector<int> queue{L.bottom()};
  sp[static_cast<std::size_t>(L.bottom())] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const int x = queue[head];
    for (int y : L.upper_cover_list(x)) {
      if (sp[static_cast<std::size_t>(y)] < 0) {
        sp[static_cast<std::size_t>(y)] = sp[static_cast<std::size_t>(x)] + 1;
        queue.push_back(y);
      }
    }
  }
  GradedCheck r;
  r.graded = sp[static_cast<std::size_t>(L.top())] == lp[static_cast<std::size_t>(L.top())];
  // Longest chain: walk down choosing a lower cover that realizes lp - 1.
  std::vector<int> lc{L.top()};
  while (lc.back() != L.bottom()) {
    for (int y : L.lower_cover_list(lc.back())) {
      if (lp[static_cast<std::size_t>(y)] == lp[static_cast<std::size_t>(lc.back())] - 1) {
        lc.push_back(y);
        break;
      }
    }
  }
  std::reverse(lc.begin(), lc.end());
  r.long_chain = std::move(lc);
  // Shortest chain via the BFS parents, rebuilt by scanning sp.
  std::vector<int> sc{L.top()};
  while (sc.back() != L.bottom()) {
    for (int y : L.lower_cover_list(sc.back())) {
      if (sp[static_cast<std::size_t>(y)] == sp[static_cast<std::size_t>(sc.back())] - 1) {
        sc.push_back(y);
        break;
      }
    }
  }
  std::reverse(sc.begin(), sc.end());
  r.short_chain = std::move(sc);
  return r;
}

// Extremal: the counts of join and meet irreducibles both equal the length.
inline bool is_extremal(const FiniteLattice& L) {
  const int len = lattice_length(L);
  return static_cast<int>(join_irreducibles(L).size()) == len &&
         static_cast<int>(meet_irreducibles(L).size()) == len;
}

struct LeftModularCheck {
  bool holds = false;
  int y = -1, z = -1;  // witness pair when it fails
};

// Cover characterization: x is left modular iff over every cover y < z
// exactly one of (x meet y = x meet z) and (x join y = x join z) holds.
inline LeftModularCheck is_left_modular_element(const FiniteLattice& L, int x) {
  for (const auto& [y, z] : L.covers()) {
    const bool meet_eq = L.meet(x, y) == L.meet(x, z);
    const bool join_eq = L.join(x, y) == L.join(x, z);
    if (meet_eq == join_eq) return {false, y, z};
  }
  return {true, -1, -1};
}

// Definition: (y join x) meet z = y join (x meet z) for all y < z.
inline LeftModularCheck is_left_modular_element_def(const FiniteLattice& L, int x) {
  for (int y = 0; y < L.size(); ++y) {
    for (int z = 0; z < L.size(); ++z) {
      if (y == z || !L.leq(y, z)) continue;
      if (L.meet(L.join(y, x), z) != L.join(y, L.meet(x, z))) return {false, y, z};
    }
  }
  return {true, -1, -1};
}

// First maximal chain of full length whose elements are all left modular,
// searched depth first in index order over the cover DAG restricted to left
// modular elements. Unreachable branches are pruned by the longest remaining
// distance to the top inside that restriction.
inline std::optional<std::vector<int>> find_left_modular_chain(const FiniteLattice& L) {
  const int n = L.size();
  const int target = lattice_length(L);
  std::vector<bool> lm(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) lm[static_cast<std::size_t>(i)] = is_left_modular_element(L, i).holds;
  if (!lm[static_cast<std::size_t>(L.bottom())] || !lm[static_cast<std::size_t>(L.top())]) {
    return std::nullopt;
  }
  // Longest path to the top through left modular elements; -1 if unreachable.
  std::vector<int> rem(static_cast<std::size_t>(n), -1);
  std::vector<int> state(static_cast<std::size_t>(n), 0);
  std::vector<int> stack{L.bottom()};
  std::vector<int> order;
  while (!stack.empty()) {
    const int x = stack.back();
    if (state[static_cast<std::size_t>(x)] == 0) {
      state[static_cast<std::size_t>(x)] = 1;
      for (int y : L.upper_cover_list(x)) {
        if (lm[static_cast<std::size_t>(y)] && state[static_cast<std::size_t>(y)] == 0) {
          stack.push_back(y);
        }
      }
    } else {
      stack.pop_back();
      if (state[static_cast<std::size_t>(x)] == 1) {
        state[static_cast<std::size_t>(x)] = 2;
        order.push_back(x);
      }
    }
  }
  for (int x : order) {
    if (x == L.top()) {
      rem[static_cast<std::size_t>(x)] = 0;
      continue;
    }
    int best = -1;
    for (int y : L.upper_cover_list(x)) {
      if (lm[static_cast<std::size_t>(y)] && rem[static_cast<std::size_t>(y)] >= 0) {
        best = std::max(best, rem[static_cast<std::size_t>(y)] + 1);
      }
    }
    rem[static_cast<std::size_t>(x)] = best;
  }
  if (rem[static_cast<std::size_t>(L.bottom())] < target) return std::nullopt;
  std::vector<int> chain{L.bottom()};
  std::vector<std::size_t> branch{0};
  while (true) {
    const int x = chain.back();
    const int depth = static_cast<int>(chain.size()) - 1;
    if (x == L.top()) {
      if (depth == target) return chain;
      // Full-length continuation impossible from the top; backtrack.
    } else {
      const auto& ups = L.upper_cover_list(x);
      bool advanced = false;
      for (std::size_t k = branch.back(); k < ups.size(); ++k) {
        const int y = ups[k];
        if (!lm[static_cast<std::size_t>(y)] || rem[static_cast<std::size_t>(y)] < 0) continue;
        if (depth + 1 + rem[static_cast<std::size_t>(y)] < target) continue;
        branch.back() = k + 1;
        chain.push_back(y);
        branch.push_back(0);
        advanced = true;
        break;
      }
      if (advanced) continue;
    }
    chain.pop_back();
    branch.pop_back();
    if (chain.empty()) return std::nullopt;
  }
}

struct SdCheck {
  bool holds = false;
  int x = -1, y = -1, z = -1;  // first violating triple in index order
};

// Join semidistributivity: x v y = x v z implies x v y = x v (y ^ z).
inline SdCheck is_join_semidistributive(const FiniteLattice& L) {
  const int n = L.size();
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      for (int z = 0; z < n; ++z) {
        if (L.join(x, y) == L.join(x, z) && L.join(x, y) != L.join(x, L.meet(y, z))) {
          return {false, x, y, z};
        }
      }
    }
  }
  return {true, -1, -1, -1};
}

// Meet semidistributivity: x ^ y = x ^ z implies x ^ y = x ^ (y v z).
inline SdCheck is_meet_semidistributive(const FiniteLattice& L) {
  const int n = L.size();
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      for (int z = 0; z < n; ++z) {
        if (L.meet(x, y) == L.meet(x, z) && L.meet(x, y) != L.meet(x, L.join(y, z))) {
          return {false, x, y, z};
        }
      }
    }
  }
  return {true, -1, -1, -1};
}

inline SdCheck is_semidistributive(const FiniteLattice& L) {
  const SdCheck j = is_join_semidistributive(L);
  if (!j.holds) return j;
  return is_meet_semidistributive(L);
}

// Distributivity of meet over join on all triples.
inline SdCheck is_distributive(const FiniteLattice& L) {
  const int n = L.size();
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      for (int z = 0; z < n; ++z) {
        if (L.meet(x, L.join(y, z)) != L.join(L.meet(x, y), L.meet(x, z))) {
          return {false, x, y, z};
        }
      }
    }
  }
  return {true, -1, -1, -1};
}

// Trim: extremal with a maximal chain of left modular elements of full length.
inline bool is_trim(const FiniteLattice& L) {
  return is_extremal(L) && find_left_modular_chain(L).has_value();
}

// Closed interval [a, b] as a lattice. Inside an interval the induced cover
// relation is the restriction of the ambient one.
inline FiniteLattice sublattice_interval(const FiniteLattice& L, int a, int b) {
  if (a < 0 || a >= L.size() || b < 0 || b >= L.size()) {
    throw ValidationError("interval: index out of range");
  }
  if (!L.leq(a, b)) {
    throw ValidationError("interval: '" + L.label(a) + "' is not below '" + L.label(b) + "'");
  }
  std::vector<int> keep;
  std::vector<int> remap(static_cast<std::size_t>(L.size()), -1);
  for (int i = 0; i < L.size(); ++i) {
    if (L.leq(a, i) && L.leq(i, b)) {
      remap[static_cast<std::size_t>(i)] = static_cast<int>(keep.size());
      keep.push_back(i);
    }
  }
  std::vector<std::string> labels;
  for (int i : keep) labels.push_back(L.label(i));
  std::vector<std::pair<int, int>> covers;
  for (const auto& [x, y] : L.covers()) {
    if (remap[static_cast<std::size_t>(x)] >= 0 && remap[static_cast<std::size_t>(y)] >= 0) {
      covers.emplace_back(remap[static_cast<std::size_t>(x)], remap[static_cast<std::size_t>(y)]);
    }
  }
  return FiniteLattice::from_covers(std::move(labels), std::move(covers));
}

inline FiniteLattice dual(const FiniteLattice& L) {
  std::vector<std::pair<int, int>> covers;
  for (const auto& [a, b] : L.covers()) covers.emplace_back(b, a);
  return FiniteLattice::from_covers(L.labels(), std::move(covers));
}

}  // namespace cambrian
