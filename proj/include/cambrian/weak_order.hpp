#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "cambrian/coxeter.hpp"
#include "cambrian/errors.hpp"

namespace cambrian {

using Bits = boost::dynamic_bitset<>;

// Right weak order: u <= v iff len(v) = len(u) + len(u^{-1} v).
template <class S>
bool weak_le(const Element<S>& u, const Element<S>& v) {
  if (u.system() != v.system()) throw ValidationError("weak_le across different systems");
  if (u.length() > v.length()) return false;
  const Element<S> t = multiply(inverse(u), v);
  return v.length() == u.length() + t.length();
}

// Covers of w are w s for every right ascent s; at most rank many, also in
// infinite groups. Sorted by (length, canonical word).
template <class S>
std::vector<Element<S>> upper_covers(const Element<S>& w) {
  std::vector<Element<S>> out;
  for (int s = 0; s < w.system()->rank(); ++s) {
    if (!w.is_right_descent(s)) out.push_back(right_extension(w, s));
  }
  std::sort(out.begin(), out.end());
  return out;
}

template <class S>
std::vector<Element<S>> lower_covers(const Element<S>& w) {
  std::vector<Element<S>> out;
  for (int s = 0; s < w.system()->rank(); ++s) {
    if (w.is_right_descent(s)) out.push_back(right_extension(w, s));
  }
  std::sort(out.begin(), out.end());
  return out;
}

// All u <= w, by downward closure along right descents. Emitted by length,
// ties broken by canonical-word order.
template <class S>
std::vector<Element<S>> order_ideal(const Element<S>& w) {
  std::vector<Element<S>> out;
  std::unordered_set<std::string> seen;
  std::vector<Element<S>> frontier{w};
  seen.insert(w.key());
  while (!frontier.empty()) {
    std::vector<Element<S>> next;
    for (const Element<S>& x : frontier) {
      out.push_back(x);
      for (const Element<S>& y : lower_covers(x)) {
        if (seen.insert(y.key()).second) next.push_back(y);
      }
    }
    frontier = std::move(next);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Meet: intersect the ideal of the shorter argument with membership below the
// other, then take the unique maximal element of the intersection. The weak
// order is a meet semilattice, so a non-unique maximum is a hard failure.
template <class S>
Element<S> weak_meet(const Element<S>& u, const Element<S>& v) {
  if (u.system() != v.system()) throw ValidationError("weak_meet across different systems");
  const Element<S>& shorter = u.length() <= v.length() ? u : v;
  const Element<S>& other = u.length() <= v.length() ? v : u;
  std::vector<Element<S>> common;
  for (const Element<S>& x : order_ideal(shorter)) {
    if (weak_le(x, other)) common.push_back(x);
  }
  // Sorted ascending; the last element is the longest candidate.
  const Element<S>& top = common.back();
  for (const Element<S>& x : common) {
    if (x.length() == top.length() && !(x == top)) {
      throw ArithmeticError("weak_meet: two maximal common lower bounds of " + u.display() +
                            " and " + v.display());
    }
    if (!weak_le(x, top)) {
      throw ArithmeticError("weak_meet: maximal common lower bound is not a maximum for " +
                            u.display() + " and " + v.display());
    }
  }
  return top;
}

// Join bounded by a length cap. Searches the up-set of the longer argument
// level by level; the first level containing a common upper bound holds the
// minimum, which is unique. Absence within the cap is a value, not an error.
template <class S>
std::optional<Element<S>> weak_join(const Element<S>& u, const Element<S>& v, int cap) {
  if (u.system() != v.system()) throw ValidationError("weak_join across different systems");
  if (cap < std::max(u.length(), v.length())) {
    throw ValidationError("weak_join: cap " + std::to_string(cap) +
                          " below the arguments' lengths");
  }
  const Element<S>& base = u.length() >= v.length() ? u : v;
  const Element<S>& other = u.length() >= v.length() ? v : u;
  std::unordered_set<std::string> seen{base.key()};
  std::vector<Element<S>> level{base};
  while (!level.empty()) {
    std::vector<Element<S>> found;
    for (const Element<S>& x : level) {
      if (weak_le(other, x)) found.push_back(x);
    }
    if (!found.empty()) {
      if (found.size() > 1) {
        throw ArithmeticError("weak_join: two minimal common upper bounds of " + u.display() +
                              " and " + v.display());
      }
      return found.front();
    }
    if (level.front().length() >= cap) break;
    std::vector<Element<S>> next;
    for (const Element<S>& x : level) {
      for (const Element<S>& y : upper_covers(x)) {
        if (seen.insert(y.key()).second) next.push_back(y);
      }
    }
    level = std::move(next);
  }
  return std::nullopt;
}

// All elements of length <= max_len with the cover DAG and downset bitsets,
// built once and shared by interval sweeps. Index order is (length, word).
template <class S>
struct WeakOrderBall {
  SystemPtr<S> sys;
  int max_len = 0;
  std::vector<Element<S>> elems;                  // index 0 is the identity
  std::unordered_map<std::string, int> index;     // canonical word key -> index
  std::vector<std::vector<int>> lower;            // lower covers, per element
  std::vector<Bits> down;                         // downset, self included

  int find(const Element<S>& w) const {
    auto it = index.find(w.key());
    return it == index.end() ? -1 : it->second;
  }
};

template <class S>
WeakOrderBall<S> build_ball(const SystemPtr<S>& sys, int max_len, std::size_t max_size) {
  WeakOrderBall<S> ball;
  ball.sys = sys;
  ball.max_len = max_len;
  std::unordered_set<std::string> seen;
  std::vector<Element<S>> level{identity(sys)};
  seen.insert(level.front().key());
  while (!level.empty()) {
    std::sort(level.begin(), level.end());
    for (const Element<S>& x : level) ball.elems.push_back(x);
    if (ball.elems.size() > max_size) {
      throw LimitError("weak order ball exceeds " + std::to_string(max_size) + " elements");
    }
    if (level.front().length() >= max_len) break;
    std::vector<Element<S>> next;
    for (const Element<S>& x : level) {
      for (int s = 0; s < sys->rank(); ++s) {
        if (x.is_right_descent(s)) continue;
        Element<S> y = right_extension(x, s);
        if (seen.insert(y.key()).second) next.push_back(std::move(y));
      }
    }
    level = std::move(next);
  }
  const int n = static_cast<int>(ball.elems.size());
  for (int i = 0; i < n; ++i) ball.index[ball.elems[static_cast<std::size_t>(i)].key()] = i;
  ball.lower.assign(static_cast<std::size_t>(n), {});
  ball.down.assign(static_cast<std::size_t>(n), Bits(static_cast<std::size_t>(n)));
  for (int i = 0; i < n; ++i) {
    const Element<S>& x = ball.elems[static_cast<std::size_t>(i)];
    for (const Element<S>& y : lower_covers(x)) {
      auto it = ball.index.find(y.key());
      if (it == ball.index.end()) {
        throw ArithmeticError("weak order ball: lower cover of " + x.display() + " missing");
      }
      ball.lower[static_cast<std::size_t>(i)].push_back(it->second);
    }
    Bits& d = ball.down[static_cast<std::size_t>(i)];
    d.set(static_cast<std::size_t>(i));
    for (int j : ball.lower[static_cast<std::size_t>(i)]) {
      d |= ball.down[static_cast<std::size_t>(j)];
    }
  }
  return ball;
}

}  // namespace cambrian
