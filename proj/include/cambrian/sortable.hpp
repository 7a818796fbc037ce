#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "cambrian/coxeter.hpp"
#include "cambrian/errors.hpp"
#include "cambrian/lattice.hpp"
#include "cambrian/weak_order.hpp"

namespace cambrian {

// A Coxeter element given as a permutation of the generator indices; the
// user's letter order is the reduced word, taken verbatim.
struct GammaSpec {
  Word order;
};

template <class S>
GammaSpec make_gamma(const SystemPtr<S>& sys, const Word& order) {
  const int n = sys->rank();
  if (static_cast<int>(order.size()) != n) {
    throw ValidationError("gamma must list all " + std::to_string(n) + " generators, got " +
                          std::to_string(order.size()));
  }
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  for (int s : order) {
    if (s < 0 || s >= n) {
      throw ValidationError("gamma letter " + std::to_string(s) + " out of range");
    }
    if (seen[static_cast<std::size_t>(s)]) {
      throw ValidationError("gamma repeats generator '" + sys->name(s) + "'");
    }
    seen[static_cast<std::size_t>(s)] = true;
  }
  return GammaSpec{order};
}

// The sorting word of w: the reduced word picked up by scanning repeated
// copies of gamma left to right, taking a letter whenever it is a left
// descent of the unconsumed remainder. Letters are grouped into blocks, one
// per gamma copy.
struct SortingWord {
  Word letters;
  std::vector<int> block_sizes;  // nonempty while letters remain

  std::vector<std::uint32_t> block_masks() const {
    std::vector<std::uint32_t> masks;
    std::size_t at = 0;
    for (int len : block_sizes) {
      std::uint32_t m = 0;
      for (int k = 0; k < len; ++k) m |= std::uint32_t{1} << letters[at++];
      masks.push_back(m);
    }
    return masks;
  }

  // Index of the first block not contained in its predecessor, or -1.
  int first_violating_block() const {
    const auto masks = block_masks();
    for (std::size_t i = 1; i < masks.size(); ++i) {
      if ((masks[i] & ~masks[i - 1]) != 0) return static_cast<int>(i);
    }
    return -1;
  }
};

template <class S>
std::string render_sorting_word(const SystemPtr<S>& sys, const SortingWord& sw) {
  std::string out;
  std::size_t at = 0;
  for (std::size_t b = 0; b < sw.block_sizes.size(); ++b) {
    if (b) out += " | ";
    for (int k = 0; k < sw.block_sizes[b]; ++k) {
      if (k) out += ' ';
      out += sys->name(sw.letters[at++]);
    }
  }
  return out;
}

// Display label used for sortable elements: the sorting word without block
// dividers. For the identity this is "e".
template <class S>
std::string sorting_label(const SystemPtr<S>& sys, const SortingWord& sw) {
  if (sw.letters.empty()) return "e";
  std::string out;
  for (std::size_t i = 0; i < sw.letters.size(); ++i) {
    if (i) out += ' ';
    out += sys->name(sw.letters[i]);
  }
  return out;
}

template <class S>
SortingWord sorting_word(const Element<S>& w, const GammaSpec& gamma) {
  const auto& sys = *w.system();
  const int n = sys.rank();
  if (static_cast<int>(gamma.order.size()) != n) {
    throw ValidationError("gamma rank mismatch");
  }
  SortingWord sw;
  int remaining = w.length();
  // Scratch matrix of the remainder's inverse; consuming s from the left of
  // the remainder r multiplies M(r^-1) by R_s on the right.
  std::vector<S> inv = detail::mat_identity<S>(n);
  for (auto it = w.word().rbegin(); it != w.word().rend(); ++it) {
    detail::mat_apply_right(sys, inv, *it);
  }
  while (remaining > 0) {
    int taken = 0;
    for (int k = 0; k < n && remaining > 0; ++k) {
      const int s = gamma.order[static_cast<std::size_t>(k)];
      if (classify_root(detail::mat_column(n, inv, s)) != RootSign::negative) continue;
      sw.letters.push_back(s);
      ++taken;
      --remaining;
      detail::mat_apply_right(sys, inv, s);
    }
    if (taken == 0) {
      throw ArithmeticError("sorting scan stalled with a nonempty remainder");
    }
    sw.block_sizes.push_back(taken);
  }
  return sw;
}

// Sortable: the blocks of the sorting word weakly decrease as letter sets.
template <class S>
bool is_sortable(const Element<S>& w, const GammaSpec& gamma) {
  return sorting_word(w, gamma).first_violating_block() < 0;
}

// Recursive characterization. With s the first letter of gamma: if s w is
// shorter, w is sortable iff s w is sortable for the rotation s gamma s; if
// not, w must avoid s entirely and be sortable in the standard parabolic on
// the remaining generators, with gamma restricted.
template <class S>
bool is_sortable_recursive(const Element<S>& w, const GammaSpec& gamma) {
  if (w.is_identity()) return true;
  const int s = gamma.order.front();
  if (w.is_left_descent(s)) {
    Word rotated(gamma.order.begin() + 1, gamma.order.end());
    rotated.push_back(s);
    return is_sortable_recursive(multiply(generator(w.system(), s), w), GammaSpec{rotated});
  }
  const auto supp = w.support();
  if (supp[static_cast<std::size_t>(s)]) return false;
  std::vector<int> J;
  for (int i = 0; i < w.system()->rank(); ++i) {
    if (i != s) J.push_back(i);
  }
  const Parabolic<S> par = parabolic_subsystem(w.system(), J);
  std::vector<int> to_sub(static_cast<std::size_t>(w.system()->rank()), -1);
  for (std::size_t a = 0; a < par.embedding.size(); ++a) {
    to_sub[static_cast<std::size_t>(par.embedding[a])] = static_cast<int>(a);
  }
  Word sub_word;
  for (int letter : w.word()) sub_word.push_back(to_sub[static_cast<std::size_t>(letter)]);
  Word sub_gamma;
  for (std::size_t k = 1; k < gamma.order.size(); ++k) {
    sub_gamma.push_back(to_sub[static_cast<std::size_t>(gamma.order[k])]);
  }
  return is_sortable_recursive(canonicalize(par.system, sub_word), GammaSpec{sub_gamma});
}

// Every reduced word of w, sorted lexicographically. Memoized on canonical
// words within one call tree.
template <class S>
std::vector<Word> all_reduced_words(const Element<S>& w) {
  std::map<Word, std::vector<Word>> memo;
  struct Rec {
    std::map<Word, std::vector<Word>>& memo;
    const std::vector<Word>& operator()(const Element<S>& x) {
      auto it = memo.find(x.word());
      if (it != memo.end()) return it->second;
      std::vector<Word> words;
      if (x.is_identity()) {
        words.push_back({});
      } else {
        for (int s : x.left_descents()) {
          const Element<S> rest = multiply(generator(x.system(), s), x);
          for (const Word& tail : (*this)(rest)) {
            Word word{s};
            word.insert(word.end(), tail.begin(), tail.end());
            words.push_back(std::move(word));
          }
        }
      }
      return memo.emplace(x.word(), std::move(words)).first->second;
    }
  } rec{memo};
  std::vector<Word> out = rec(w);
  std::sort(out.begin(), out.end());
  return out;
}

// The chain of sorting-word prefixes from the identity up to w. Consecutive
// entries differ by one right multiplication, so each step is a weak-order
// cover.
template <class S>
std::vector<Element<S>> sorting_chain(const Element<S>& w, const GammaSpec& gamma) {
  const SortingWord sw = sorting_word(w, gamma);
  const int bad = sw.first_violating_block();
  if (bad >= 0) {
    throw ValidationError("sorting chain requires a sortable element; got " +
                          render_sorting_word(w.system(), sw) + " with block " +
                          std::to_string(bad + 1) + " not contained in block " +
                          std::to_string(bad));
  }
  std::vector<Element<S>> chain{identity(w.system())};
  for (int s : sw.letters) {
    Element<S> next = right_extension(chain.back(), s);
    if (next.length() != chain.back().length() + 1) {
      throw ArithmeticError("sorting word prefix failed to extend reduced");
    }
    chain.push_back(std::move(next));
  }
  return chain;
}

// A closed interval of the Cambrian semilattice: the sortable elements
// between bottom and top in weak order, with the induced order's Hasse
// diagram validated as a lattice. Labels are sorting words.
template <class S>
struct CambrianInterval {
  SystemPtr<S> sys;
  GammaSpec gamma;
  Element<S> bottom, top;
  std::vector<Element<S>> elements;  // sorted by (length, canonical word)
  std::vector<std::string> labels;   // sorting-word labels, same order
  FiniteLattice lattice;
  // Lattice indices of the top's sorting-chain members that lie in the
  // interval; for bottom = identity this is the whole chain.
  std::vector<int> chain;
};

namespace detail {

inline std::vector<std::pair<int, int>> transitive_reduction(const std::vector<LatticeBits>& strict_down) {
  const int m = static_cast<int>(strict_down.size());
  std::vector<std::pair<int, int>> covers;
  for (int j = 0; j < m; ++j) {
    for (int i = 0; i < m; ++i) {
      if (!strict_down[static_cast<std::size_t>(j)].test(static_cast<std::size_t>(i))) continue;
      // i < j is a cover unless some k sits strictly between.
      const LatticeBits between =
          strict_down[static_cast<std::size_t>(j)] & ~strict_down[static_cast<std::size_t>(i)];
      bool direct = true;
      for (std::size_t k = between.find_first(); k != LatticeBits::npos;
           k = between.find_next(k)) {
        if (static_cast<int>(k) != i &&
            strict_down[k].test(static_cast<std::size_t>(i))) {
          direct = false;
          break;
        }
      }
      if (direct) covers.emplace_back(i, j);
    }
  }
  std::sort(covers.begin(), covers.end());
  return covers;
}

}  // namespace detail

template <class S>
void require_sortable(const Element<S>& w, const GammaSpec& gamma, const char* role) {
  const SortingWord sw = sorting_word(w, gamma);
  const int bad = sw.first_violating_block();
  if (bad >= 0) {
    throw ValidationError(std::string(role) + " is not sortable for this gamma: " +
                          render_sorting_word(w.system(), sw) + " (block " +
                          std::to_string(bad + 1) + " is not contained in block " +
                          std::to_string(bad) + ")");
  }
}

template <class S>
CambrianInterval<S> cambrian_interval(const Element<S>& bottom, const Element<S>& top,
                                      const GammaSpec& gamma,
                                      std::size_t max_elems = 1u << 20) {
  if (bottom.system() != top.system()) {
    throw ValidationError("interval endpoints from different systems");
  }
  require_sortable(bottom, gamma, "interval bottom");
  require_sortable(top, gamma, "interval top");
  if (!weak_le(bottom, top)) {
    throw ValidationError("interval bottom " + bottom.display() + " is not below top " +
                          top.display());
  }
  CambrianInterval<S> out{top.system(), gamma, bottom, top, {}, {}, FiniteLattice::from_covers({"e"}, {}), {}};
  const std::vector<Element<S>> ideal = order_ideal(top);
  if (ideal.size() > max_elems) {
    throw LimitError("interval ideal has " + std::to_string(ideal.size()) +
                     " elements, over the cap of " + std::to_string(max_elems));
  }
  for (const Element<S>& x : ideal) {
    if (weak_le(bottom, x) && is_sortable(x, gamma)) out.elements.push_back(x);
  }
  const int m = static_cast<int>(out.elements.size());
  std::vector<LatticeBits> strict_down(static_cast<std::size_t>(m),
                                       LatticeBits(static_cast<std::size_t>(m)));
  for (int j = 0; j < m; ++j) {
    for (int i = 0; i < m; ++i) {
      if (i != j && weak_le(out.elements[static_cast<std::size_t>(i)],
                            out.elements[static_cast<std::size_t>(j)])) {
        strict_down[static_cast<std::size_t>(j)].set(static_cast<std::size_t>(i));
      }
    }
  }
  for (const Element<S>& x : out.elements) {
    out.labels.push_back(sorting_label(x.system(), sorting_word(x, gamma)));
  }
  out.lattice = FiniteLattice::from_covers(out.labels, detail::transitive_reduction(strict_down));
  std::unordered_map<std::string, int> by_key;
  for (int i = 0; i < m; ++i) by_key[out.elements[static_cast<std::size_t>(i)].key()] = i;
  for (const Element<S>& x : sorting_chain(top, gamma)) {
    auto it = by_key.find(x.key());
    if (it != by_key.end()) out.chain.push_back(it->second);
  }
  return out;
}

}  // namespace cambrian
