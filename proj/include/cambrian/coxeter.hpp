#pragma once

#include <algorithm>
#include <cstdlib>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "cambrian/errors.hpp"
#include "cambrian/numeric.hpp"

namespace cambrian {

using Word = std::vector<int>;

// Encodes a word as a byte string for hashing and map keys.
inline std::string word_key(const Word& w) {
  std::string k;
  k.reserve(w.size());
  for (int s : w) k.push_back(static_cast<char>(s));
  return k;
}

// Symmetric Coxeter matrix. Diagonal entries are 1; off-diagonal entries are
// >= 2 or the literal 0, which encodes the label infinity.
class CoxeterMatrix {
 public:
  CoxeterMatrix(int rank, const std::vector<std::vector<int>>& rows) : rank_(rank) {
    if (rank < 1) throw ValidationError("coxeter matrix: rank must be at least 1");
    if (static_cast<int>(rows.size()) != rank) {
      throw ValidationError("coxeter matrix: expected " + std::to_string(rank) + " rows, got " +
                            std::to_string(rows.size()));
    }
    m_.assign(static_cast<std::size_t>(rank) * rank, 1);
    for (int i = 0; i < rank; ++i) {
      if (static_cast<int>(rows[i].size()) != rank) {
        throw ValidationError("coxeter matrix: row " + std::to_string(i) + " has " +
                              std::to_string(rows[i].size()) + " entries, expected " +
                              std::to_string(rank));
      }
      for (int j = 0; j < rank; ++j) m_[idx(i, j)] = rows[i][j];
    }
    for (int i = 0; i < rank; ++i) {
      if (bond(i, i) != 1) {
        throw ValidationError("coxeter matrix: diagonal entry (" + std::to_string(i) + "," +
                              std::to_string(i) + ") must be 1, got " + std::to_string(bond(i, i)));
      }
      for (int j = 0; j < rank; ++j) {
        if (i == j) continue;
        if (bond(i, j) != bond(j, i)) {
          throw ValidationError("coxeter matrix: asymmetric at (" + std::to_string(i) + "," +
                                std::to_string(j) + "): " + std::to_string(bond(i, j)) + " vs " +
                                std::to_string(bond(j, i)));
        }
        if (bond(i, j) == 1 || bond(i, j) < 0) {
          throw ValidationError("coxeter matrix: entry (" + std::to_string(i) + "," +
                                std::to_string(j) + ") must be >= 2 or 0 (infinity), got " +
                                std::to_string(bond(i, j)));
        }
      }
    }
  }

  int rank() const { return rank_; }
  // 0 encodes infinity.
  int bond(int i, int j) const { return m_[idx(i, j)]; }

  friend bool operator==(const CoxeterMatrix& x, const CoxeterMatrix& y) {
    return x.rank_ == y.rank_ && x.m_ == y.m_;
  }

 private:
  std::size_t idx(int i, int j) const { return static_cast<std::size_t>(i) * rank_ + j; }

  int rank_;
  std::vector<int> m_;
};

// True when every bond label is handled by the exact backend.
inline bool all_labels_exact(const CoxeterMatrix& m) {
  for (int i = 0; i < m.rank(); ++i) {
    for (int j = i + 1; j < m.rank(); ++j) {
      if (!ScalarOps<Exact>::supports_label(m.bond(i, j))) return false;
    }
  }
  return true;
}

template <class S>
class CoxeterSystem;

template <class S>
using SystemPtr = std::shared_ptr<const CoxeterSystem<S>>;

template <class S>
class Element;

// A Coxeter system with its geometric representation: form(i,j) = -cos(pi/m_ij)
// and cartan(i,j) = 2 * form(i,j), which drives the reflection action on
// simple-root coordinates. Instances are immutable and shared; the shared
// pointer identity is what ties Elements to their system.
template <class S>
class CoxeterSystem {
 public:
  static SystemPtr<S> build(const CoxeterMatrix& matrix, std::vector<std::string> names = {}) {
    const int n = matrix.rank();
    if (names.empty()) {
      for (int i = 0; i < n; ++i) names.push_back("s" + std::to_string(i));
    }
    if (static_cast<int>(names.size()) != n) {
      throw ValidationError("coxeter system: " + std::to_string(names.size()) +
                            " generator names for rank " + std::to_string(n));
    }
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        if (names[i] == names[j]) {
          throw ValidationError("coxeter system: duplicate generator name '" + names[i] + "'");
        }
      }
    }
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (!ScalarOps<S>::supports_label(matrix.bond(i, j))) {
          throw ValidationError("coxeter system: label " + std::to_string(matrix.bond(i, j)) +
                                " at (" + std::to_string(i) + "," + std::to_string(j) +
                                ") is not supported by this scalar backend");
        }
      }
    }
    return SystemPtr<S>(new CoxeterSystem(matrix, std::move(names)));
  }

  int rank() const { return matrix_.rank(); }
  const CoxeterMatrix& matrix() const { return matrix_; }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(int s) const { return names_[static_cast<std::size_t>(s)]; }

  int generator_index(const std::string& name) const {
    for (int i = 0; i < rank(); ++i) {
      if (names_[static_cast<std::size_t>(i)] == name) return i;
    }
    throw ValidationError("unknown generator name '" + name + "'");
  }

  const S& form(int i, int j) const { return form_[flat(i, j)]; }
  const S& cartan(int i, int j) const { return cartan_[flat(i, j)]; }

 private:
  CoxeterSystem(const CoxeterMatrix& matrix, std::vector<std::string> names)
      : matrix_(matrix), names_(std::move(names)) {
    const int n = rank();
    form_.resize(static_cast<std::size_t>(n) * n);
    cartan_.resize(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        form_[flat(i, j)] = ScalarOps<S>::bond_form(matrix.bond(i, j));
        cartan_[flat(i, j)] = S(2) * form_[flat(i, j)];
      }
    }
  }

  std::size_t flat(int i, int j) const { return static_cast<std::size_t>(i) * rank() + j; }

  CoxeterMatrix matrix_;
  std::vector<std::string> names_;
  std::vector<S> form_;
  std::vector<S> cartan_;
};

enum class RootSign { positive, negative };

// A root vector must be sign-coherent: all coordinates >= 0 or all <= 0.
// Coordinates inside the floating-point dead zone never decide; if nothing
// decisive remains, or both signs appear, the computation is rejected.
template <class S>
RootSign classify_root(const std::vector<S>& coords) {
  bool pos = false, neg = false;
  for (const S& v : coords) {
    const int sg = ScalarOps<S>::sign3(v);
    if (sg > 0) pos = true;
    if (sg < 0) neg = true;
  }
  if (pos && neg) throw ArithmeticError("root vector is sign-incoherent");
  if (!pos && !neg) throw ArithmeticError("root vector has indeterminate sign");
  return pos ? RootSign::positive : RootSign::negative;
}

namespace detail {

// Square matrices over S in row-major order; rows/columns are indexed by the
// simple roots. mat_left applies the reflection s on the left (only row s
// changes); mat_right applies it on the right (every column picks up a
// multiple of column s).
template <class S>
std::vector<S> mat_identity(int n) {
  std::vector<S> m(static_cast<std::size_t>(n) * n, S(0));
  for (int i = 0; i < n; ++i) m[static_cast<std::size_t>(i) * n + i] = S(1);
  return m;
}

template <class S>
void mat_apply_left(const CoxeterSystem<S>& sys, int s, std::vector<S>& m) {
  const int n = sys.rank();
  for (int k = 0; k < n; ++k) {
    S acc = S(0);
    for (int j = 0; j < n; ++j) acc += sys.cartan(s, j) * m[static_cast<std::size_t>(j) * n + k];
    m[static_cast<std::size_t>(s) * n + k] = m[static_cast<std::size_t>(s) * n + k] - acc;
  }
}

template <class S>
void mat_apply_right(const CoxeterSystem<S>& sys, std::vector<S>& m, int s) {
  const int n = sys.rank();
  for (int k = 0; k < n; ++k) {
    const S pivot = m[static_cast<std::size_t>(k) * n + s];
    for (int j = 0; j < n; ++j) {
      m[static_cast<std::size_t>(k) * n + j] =
          m[static_cast<std::size_t>(k) * n + j] - pivot * sys.cartan(s, j);
    }
  }
}

template <class S>
std::vector<S> mat_mul(int n, const std::vector<S>& x, const std::vector<S>& y) {
  std::vector<S> r(static_cast<std::size_t>(n) * n, S(0));
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      const S& v = x[static_cast<std::size_t>(i) * n + k];
      if (ScalarOps<S>::is_exact && v == S(0)) continue;
      for (int j = 0; j < n; ++j) {
        r[static_cast<std::size_t>(i) * n + j] += v * y[static_cast<std::size_t>(k) * n + j];
      }
    }
  }
  return r;
}

template <class S>
std::vector<S> mat_column(int n, const std::vector<S>& m, int j) {
  std::vector<S> col(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) col[static_cast<std::size_t>(i)] = m[static_cast<std::size_t>(i) * n + j];
  return col;
}

}  // namespace detail

// Group element, identified by its ShortLex-least reduced word. The matrices
// of w and w^{-1} are cached so both left and right descent tests are single
// column classifications.
template <class S>
class Element {
 public:
  const Word& word() const { return word_; }
  int length() const { return static_cast<int>(word_.size()); }
  bool is_identity() const { return word_.empty(); }
  const SystemPtr<S>& system() const { return sys_; }

  // Coordinates of w(alpha_s) in the simple-root basis.
  std::vector<S> root_image(int s) const { return detail::mat_column(rank(), mat_, s); }
  // Coordinates of w^{-1}(alpha_s).
  std::vector<S> root_image_inverse(int s) const { return detail::mat_column(rank(), inv_, s); }

  // s w is shorter than w exactly when w^{-1}(alpha_s) is a negative root.
  bool is_left_descent(int s) const {
    check_gen(s);
    return classify_root(root_image_inverse(s)) == RootSign::negative;
  }
  // w s is shorter than w exactly when w(alpha_s) is a negative root.
  bool is_right_descent(int s) const {
    check_gen(s);
    return classify_root(root_image(s)) == RootSign::negative;
  }

  std::vector<int> left_descents() const {
    std::vector<int> out;
    for (int s = 0; s < rank(); ++s) {
      if (is_left_descent(s)) out.push_back(s);
    }
    return out;
  }
  std::vector<int> right_descents() const {
    std::vector<int> out;
    for (int s = 0; s < rank(); ++s) {
      if (is_right_descent(s)) out.push_back(s);
    }
    return out;
  }

  // Generators appearing in the canonical word; identical for every reduced
  // word of the element.
  std::vector<bool> support() const {
    std::vector<bool> in(static_cast<std::size_t>(rank()), false);
    for (int s : word_) in[static_cast<std::size_t>(s)] = true;
    return in;
  }

  std::string key() const { return word_key(word_); }

  std::string display() const {
    if (word_.empty()) return "e";
    std::string out;
    for (std::size_t i = 0; i < word_.size(); ++i) {
      if (i) out += ' ';
      out += sys_->name(word_[i]);
    }
    return out;
  }

  friend bool operator==(const Element& x, const Element& y) {
    if (x.sys_ != y.sys_) throw ValidationError("comparing elements from different systems");
    return x.word_ == y.word_;
  }
  friend bool operator!=(const Element& x, const Element& y) { return !(x == y); }
  // Deterministic order: by length, then lexicographic on the canonical word.
  friend bool operator<(const Element& x, const Element& y) {
    if (x.sys_ != y.sys_) throw ValidationError("comparing elements from different systems");
    if (x.word_.size() != y.word_.size()) return x.word_.size() < y.word_.size();
    return x.word_ < y.word_;
  }

  template <class T>
  friend Element<T> canonicalize(const SystemPtr<T>& sys, const Word& input);
  template <class T>
  friend Element<T> multiply(const Element<T>& u, const Element<T>& v);
  template <class T>
  friend Element<T> inverse(const Element<T>& w);
  template <class T>
  friend Element<T> right_extension(const Element<T>& w, int s);
  template <class T>
  friend Element<T> identity(const SystemPtr<T>& sys);

  Element<S> operator*(const Element<S>& other) const { return multiply(*this, other); }
  Element<S> inverted() const { return inverse(*this); }

 private:
  Element(SystemPtr<S> sys, Word word, std::vector<S> mat, std::vector<S> inv)
      : sys_(std::move(sys)), word_(std::move(word)), mat_(std::move(mat)), inv_(std::move(inv)) {}

  int rank() const { return sys_->rank(); }
  void check_gen(int s) const {
    if (s < 0 || s >= rank()) {
      throw ValidationError("generator index " + std::to_string(s) + " out of range for rank " +
                            std::to_string(rank()));
    }
  }

  static Element from_matrices(SystemPtr<S> sys, std::vector<S> mat, std::vector<S> inv,
                               int length_bound);

  SystemPtr<S> sys_;
  Word word_;
  std::vector<S> mat_, inv_;

  template <class T>
  friend class Element;
};

// Recovers the ShortLex canonical word from the matrix pair by repeatedly
// peeling the smallest left descent. Each peel shortens the element by one,
// so more than length_bound peels means the arithmetic went bad.
template <class S>
Element<S> Element<S>::from_matrices(SystemPtr<S> sys, std::vector<S> mat, std::vector<S> inv,
                                     int length_bound) {
  const int n = sys->rank();
  std::vector<S> pm = mat, pinv = inv;
  Word canonical;
  for (int steps = 0;; ++steps) {
    int descent = -1;
    for (int s = 0; s < n; ++s) {
      if (classify_root(detail::mat_column(n, pinv, s)) == RootSign::negative) {
        descent = s;
        break;
      }
    }
    if (descent < 0) break;
    if (steps >= length_bound) {
      throw ArithmeticError("canonicalization exceeded the input word length");
    }
    canonical.push_back(descent);
    detail::mat_apply_left(*sys, descent, pm);
    detail::mat_apply_right(*sys, pinv, descent);
  }
  return Element<S>(std::move(sys), std::move(canonical), std::move(mat), std::move(inv));
}

template <class S>
Element<S> identity(const SystemPtr<S>& sys) {
  return Element<S>::from_matrices(sys, detail::mat_identity<S>(sys->rank()),
                                   detail::mat_identity<S>(sys->rank()), 0);
}

// Canonical form of an arbitrary word in the generators.
template <class S>
Element<S> canonicalize(const SystemPtr<S>& sys, const Word& input) {
  const int n = sys->rank();
  for (int s : input) {
    if (s < 0 || s >= n) {
      throw ValidationError("word letter " + std::to_string(s) + " out of range for rank " +
                            std::to_string(n));
    }
  }
  std::vector<S> mat = detail::mat_identity<S>(n);
  for (int s : input) detail::mat_apply_right(*sys, mat, s);
  std::vector<S> inv = detail::mat_identity<S>(n);
  for (auto it = input.rbegin(); it != input.rend(); ++it) detail::mat_apply_right(*sys, inv, *it);
  return Element<S>::from_matrices(sys, std::move(mat), std::move(inv),
                                   static_cast<int>(input.size()));
}

template <class S>
Element<S> generator(const SystemPtr<S>& sys, int s) {
  return canonicalize(sys, Word{s});
}

template <class S>
Element<S> multiply(const Element<S>& u, const Element<S>& v) {
  if (u.sys_ != v.sys_) throw ValidationError("multiplying elements from different systems");
  const int n = u.rank();
  return Element<S>::from_matrices(u.sys_, detail::mat_mul(n, u.mat_, v.mat_),
                                   detail::mat_mul(n, v.inv_, u.inv_),
                                   u.length() + v.length());
}

template <class S>
Element<S> inverse(const Element<S>& w) {
  return Element<S>::from_matrices(w.sys_, w.inv_, w.mat_, w.length());
}

// w s for a right ascent or descent; one rank-squared update per matrix.
template <class S>
Element<S> right_extension(const Element<S>& w, int s) {
  std::vector<S> mat = w.mat_, inv = w.inv_;
  detail::mat_apply_right(*w.sys_, mat, s);
  detail::mat_apply_left(*w.sys_, s, inv);
  return Element<S>::from_matrices(w.sys_, std::move(mat), std::move(inv), w.length() + 1);
}

template <class S>
bool is_left_descent(const Element<S>& w, int s) {
  return w.is_left_descent(s);
}

template <class S>
struct Parabolic {
  SystemPtr<S> system;
  std::vector<int> embedding;
};

// Standard parabolic subsystem on the generator subset J (parent indices,
// strictly increasing). Bond labels and names are inherited.
template <class S>
Parabolic<S> parabolic_subsystem(const SystemPtr<S>& sys, const std::vector<int>& J) {
  if (J.empty()) throw ValidationError("parabolic subsystem: empty generator subset");
  for (std::size_t i = 0; i < J.size(); ++i) {
    if (J[i] < 0 || J[i] >= sys->rank()) {
      throw ValidationError("parabolic subsystem: index " + std::to_string(J[i]) +
                            " out of range");
    }
    if (i > 0 && J[i] <= J[i - 1]) {
      throw ValidationError("parabolic subsystem: indices must be strictly increasing");
    }
  }
  const int k = static_cast<int>(J.size());
  std::vector<std::vector<int>> rows(static_cast<std::size_t>(k), std::vector<int>(k));
  std::vector<std::string> names;
  for (int a = 0; a < k; ++a) {
    names.push_back(sys->name(J[static_cast<std::size_t>(a)]));
    for (int b = 0; b < k; ++b) {
      rows[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] =
          sys->matrix().bond(J[static_cast<std::size_t>(a)], J[static_cast<std::size_t>(b)]);
    }
  }
  return Parabolic<S>{CoxeterSystem<S>::build(CoxeterMatrix(k, rows), std::move(names)), J};
}

}  // namespace cambrian
