#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "cambrian/coxeter.hpp"
#include "cambrian/errors.hpp"
#include "cambrian/lattice.hpp"
#include "cambrian/report.hpp"
#include "cambrian/sortable.hpp"
#include "cambrian/weak_order.hpp"

namespace cambrian {

inline constexpr std::uint32_t kDefaultSeed = 0xCA3B41A4u;

inline Json labels_json(const FiniteLattice& L, const std::vector<int>& idxs) {
  Json arr = Json::array();
  for (int i : idxs) arr.push_back(L.label(i));
  return arr;
}

inline Json triple_json(const FiniteLattice& L, const SdCheck& c) {
  return Json{{"x", L.label(c.x)}, {"y", L.label(c.y)}, {"z", L.label(c.z)}};
}

// Every property decided by the lattice analyzer, with witnesses.
inline PropertyReport lattice_property_report(const FiniteLattice& L) {
  PropertyReport rep;
  const int len = lattice_length(L);
  const GradedCheck gc = is_graded(L);
  {
    Json w{{"length", len}};
    if (!gc.graded) {
      w["long_chain"] = labels_json(L, gc.long_chain);
      w["short_chain"] = labels_json(L, gc.short_chain);
    }
    rep.add("graded", Verdict{gc.graded, std::move(w)});
  }
  const std::vector<int> ji = join_irreducibles(L);
  const std::vector<int> mi = meet_irreducibles(L);
  const bool extremal = static_cast<int>(ji.size()) == len && static_cast<int>(mi.size()) == len;
  rep.add("extremal", Verdict{extremal, Json{{"length", len},
                                             {"join_irreducibles", labels_json(L, ji)},
                                             {"meet_irreducibles", labels_json(L, mi)}}});
  const std::optional<std::vector<int>> chain = find_left_modular_chain(L);
  rep.add("left_modular_chain",
          chain ? Verdict::pass(Json{{"chain", labels_json(L, *chain)}})
                : Verdict::fail(Json{{"length", len}}));
  rep.add("trim", Verdict{extremal && chain.has_value(), Json{{"size", L.size()}}});
  const SdCheck jsd = is_join_semidistributive(L);
  rep.add("join_semidistributive",
          jsd.holds ? Verdict::pass() : Verdict::fail(triple_json(L, jsd)));
  const SdCheck msd = is_meet_semidistributive(L);
  rep.add("meet_semidistributive",
          msd.holds ? Verdict::pass() : Verdict::fail(triple_json(L, msd)));
  rep.add("semidistributive", Verdict{jsd.holds && msd.holds, Json::object()});
  const SdCheck dis = is_distributive(L);
  rep.add("distributive", dis.holds ? Verdict::pass() : Verdict::fail(triple_json(L, dis)));
  return rep;
}

// Core claim: the interval is trim, and distributive whenever it is graded.
template <class S>
PropertyReport verify_trim_interval(const CambrianInterval<S>& iv) {
  PropertyReport rep;
  const FiniteLattice& L = iv.lattice;
  const int len = lattice_length(L);
  const std::vector<int> ji = join_irreducibles(L);
  const std::vector<int> mi = meet_irreducibles(L);
  const bool extremal = static_cast<int>(ji.size()) == len && static_cast<int>(mi.size()) == len;
  const std::optional<std::vector<int>> chain = find_left_modular_chain(L);
  Json tw{{"size", L.size()},
          {"length", len},
          {"join_irreducible_count", ji.size()},
          {"meet_irreducible_count", mi.size()}};
  if (chain) tw["left_modular_chain"] = labels_json(L, *chain);
  rep.add("trim", Verdict{extremal && chain.has_value(), std::move(tw)});
  const GradedCheck gc = is_graded(L);
  if (!gc.graded) {
    rep.add("graded_implies_distributive", Verdict::pass(Json{{"graded", false}}));
  } else {
    const SdCheck dis = is_distributive(L);
    rep.add("graded_implies_distributive",
            dis.holds ? Verdict::pass(Json{{"graded", true}}) : Verdict::fail(triple_json(L, dis)));
  }
  return rep;
}

template <class S>
PropertyReport verify_trim_interval(const Element<S>& u, const Element<S>& v,
                                    const GammaSpec& gamma) {
  return verify_trim_interval(cambrian_interval(u, v, gamma));
}

template <class S>
std::unordered_map<std::string, int> interval_index(const CambrianInterval<S>& iv) {
  std::unordered_map<std::string, int> map;
  for (std::size_t i = 0; i < iv.elements.size(); ++i) {
    map[iv.elements[i].key()] = static_cast<int>(i);
  }
  return map;
}

// The chain of sorting-word prefixes of the top is a maximal left-modular
// chain of full length in the interval based at the identity.
template <class S>
PropertyReport verify_sorting_chain_left_modular(const CambrianInterval<S>& iv) {
  if (!iv.bottom.is_identity()) {
    throw ValidationError("sorting-chain check requires an interval based at the identity");
  }
  PropertyReport rep;
  const FiniteLattice& L = iv.lattice;
  const int k = iv.top.length();
  {
    bool spans = static_cast<int>(iv.chain.size()) == k + 1 && iv.chain.front() == L.bottom() &&
                 iv.chain.back() == L.top();
    Json w{{"chain", labels_json(L, iv.chain)}};
    for (std::size_t i = 0; spans && i + 1 < iv.chain.size(); ++i) {
      const auto& ups = L.upper_cover_list(iv.chain[i]);
      if (std::find(ups.begin(), ups.end(), iv.chain[i + 1]) == ups.end()) {
        spans = false;
        w["broken_at"] = L.label(iv.chain[i]);
      }
    }
    rep.add("chain_spans_interval", Verdict{spans, std::move(w)});
  }
  {
    Verdict v = Verdict::pass();
    for (int x : iv.chain) {
      const LeftModularCheck c = is_left_modular_element(L, x);
      if (!c.holds) {
        v = Verdict::fail(Json{{"element", L.label(x)}, {"y", L.label(c.y)}, {"z", L.label(c.z)}});
        break;
      }
    }
    rep.add("chain_left_modular", std::move(v));
  }
  rep.add("chain_full_length",
          Verdict{lattice_length(L) == k, Json{{"lattice_length", lattice_length(L)}, {"word_length", k}}});
  return rep;
}

template <class S>
PropertyReport verify_sorting_chain_left_modular(const Element<S>& w, const GammaSpec& gamma) {
  return verify_sorting_chain_left_modular(cambrian_interval(identity(w.system()), w, gamma));
}

// In the interval based at the identity there are exactly as many
// meet-irreducibles as the top's length, and as many join-irreducibles.
template <class S>
PropertyReport verify_irreducible_counts(const CambrianInterval<S>& iv) {
  if (!iv.bottom.is_identity()) {
    throw ValidationError("irreducible-count check requires an interval based at the identity");
  }
  PropertyReport rep;
  const FiniteLattice& L = iv.lattice;
  const std::vector<int> ji = join_irreducibles(L);
  const std::vector<int> mi = meet_irreducibles(L);
  const int k = iv.top.length();
  rep.add("meet_irreducible_count_equals_word_length",
          Verdict{static_cast<int>(mi.size()) == k,
                  Json{{"meet_irreducibles", labels_json(L, mi)}, {"word_length", k}}});
  rep.add("join_count_equals_meet_count",
          Verdict{ji.size() == mi.size(),
                  Json{{"join_count", ji.size()}, {"meet_count", mi.size()}}});
  return rep;
}

template <class S>
PropertyReport verify_irreducible_counts(const Element<S>& w, const GammaSpec& gamma) {
  return verify_irreducible_counts(cambrian_interval(identity(w.system()), w, gamma));
}

// For interval members u <= v where the initial generator s of gamma
// satisfies s <= v but s !<= u: the join s v u covers u, and equals v when
// u is a lower cover of v.
template <class S>
PropertyReport verify_initial_join_covers(const CambrianInterval<S>& iv) {
  PropertyReport rep;
  const FiniteLattice& L = iv.lattice;
  const int s1 = iv.gamma.order.front();
  const Element<S> s1e = generator(iv.sys, s1);
  const auto index = interval_index(iv);
  const int n = L.size();
  Verdict covers_v = Verdict::pass();
  Verdict matches_v = Verdict::pass();
  for (int vi = 0; vi < n && (covers_v.holds || matches_v.holds); ++vi) {
    if (!iv.elements[static_cast<std::size_t>(vi)].is_left_descent(s1)) continue;
    for (int ui = 0; ui < n; ++ui) {
      if (ui == vi || !L.leq(ui, vi)) continue;
      const Element<S>& u = iv.elements[static_cast<std::size_t>(ui)];
      if (u.is_left_descent(s1)) continue;
      Json pair{{"u", L.label(ui)}, {"v", L.label(vi)}};
      const std::optional<Element<S>> j = weak_join(s1e, u, iv.top.length());
      if (!j) {
        if (covers_v.holds) covers_v = Verdict::fail(Json{{"pair", pair}, {"reason", "join missing"}});
        break;
      }
      const auto it = index.find(j->key());
      if (it == index.end()) {
        if (covers_v.holds) {
          covers_v = Verdict::fail(Json{{"pair", pair}, {"join", j->display()},
                                        {"reason", "join outside interval"}});
        }
        break;
      }
      pair["join"] = L.label(it->second);
      if (covers_v.holds) {
        const auto& ups = L.upper_cover_list(ui);
        if (std::find(ups.begin(), ups.end(), it->second) == ups.end()) {
          covers_v = Verdict::fail(pair);
        }
      }
      if (matches_v.holds) {
        const auto& ups = L.upper_cover_list(ui);
        if (std::find(ups.begin(), ups.end(), vi) != ups.end() && it->second != vi) {
          matches_v = Verdict::fail(pair);
        }
      }
      if (!covers_v.holds && !matches_v.holds) break;
    }
  }
  rep.add("initial_join_covers", std::move(covers_v));
  rep.add("initial_join_matches_cover", std::move(matches_v));
  return rep;
}

// Among members not above the initial generator s, every one lies below
// every meet-irreducible not above s, and exactly one meet-irreducible of
// the identity-based interval avoids s (provided s <= top).
template <class S>
PropertyReport verify_avoiding_meet_irreducibles(const CambrianInterval<S>& iv) {
  if (!iv.bottom.is_identity()) {
    throw ValidationError("avoiding-meet-irreducible check requires an interval based at the identity");
  }
  PropertyReport rep;
  const FiniteLattice& L = iv.lattice;
  const int s1 = iv.gamma.order.front();
  if (!iv.top.is_left_descent(s1)) {
    const Json vac{{"vacuous", true}, {"reason", "initial generator not below top"}};
    rep.add("avoiders_below_avoiding_meet_irreducible", Verdict::pass(vac));
    rep.add("unique_avoiding_meet_irreducible", Verdict::pass(vac));
    return rep;
  }
  std::vector<int> avoiding_mi;
  for (int m : meet_irreducibles(L)) {
    if (!iv.elements[static_cast<std::size_t>(m)].is_left_descent(s1)) avoiding_mi.push_back(m);
  }
  Verdict below = Verdict::pass();
  for (int ui = 0; ui < L.size() && below.holds; ++ui) {
    if (iv.elements[static_cast<std::size_t>(ui)].is_left_descent(s1)) continue;
    for (int m : avoiding_mi) {
      if (!L.leq(ui, m)) {
        below = Verdict::fail(Json{{"u", L.label(ui)}, {"meet_irreducible", L.label(m)}});
        break;
      }
    }
  }
  rep.add("avoiders_below_avoiding_meet_irreducible", std::move(below));
  rep.add("unique_avoiding_meet_irreducible",
          Verdict{avoiding_mi.size() == 1,
                  Json{{"avoiding_meet_irreducibles", labels_json(L, avoiding_mi)}}});
  return rep;
}

template <class S>
PropertyReport verify_avoiding_meet_irreducibles(const Element<S>& w, const GammaSpec& gamma) {
  return verify_avoiding_meet_irreducibles(cambrian_interval(identity(w.system()), w, gamma));
}

// Meets and bounded joins of interval members, taken in the ambient group,
// stay sortable and agree with the interval's tables; same for folds over
// random subsets.
template <class S>
PropertyReport verify_closure_under_meets_joins(const CambrianInterval<S>& iv,
                                                int random_subsets = 100,
                                                std::uint32_t seed = kDefaultSeed) {
  PropertyReport rep;
  const FiniteLattice& L = iv.lattice;
  const auto index = interval_index(iv);
  const int n = L.size();
  const int cap = iv.top.length();
  const auto locate = [&](const Element<S>& x) {
    const auto it = index.find(x.key());
    return it == index.end() ? -1 : it->second;
  };
  Verdict pm = Verdict::pass(), pj = Verdict::pass();
  for (int i = 0; i < n && (pm.holds || pj.holds); ++i) {
    for (int j = i; j < n; ++j) {
      Json pair{{"x", L.label(i)}, {"y", L.label(j)}};
      if (pm.holds) {
        const Element<S> m = weak_meet(iv.elements[static_cast<std::size_t>(i)],
                                       iv.elements[static_cast<std::size_t>(j)]);
        if (!is_sortable(m, iv.gamma) || locate(m) != L.meet(i, j)) {
          pair["group_meet"] = m.display();
          pair["lattice_meet"] = L.label(L.meet(i, j));
          pm = Verdict::fail(pair);
          continue;
        }
      }
      if (pj.holds) {
        const std::optional<Element<S>> jn = weak_join(iv.elements[static_cast<std::size_t>(i)],
                                                       iv.elements[static_cast<std::size_t>(j)], cap);
        if (!jn || !is_sortable(*jn, iv.gamma) || locate(*jn) != L.join(i, j)) {
          pair["group_join"] = jn ? jn->display() : "none";
          pair["lattice_join"] = L.label(L.join(i, j));
          pj = Verdict::fail(pair);
        }
      }
    }
  }
  rep.add("pair_meets_agree", std::move(pm));
  rep.add("pair_joins_agree", std::move(pj));

  std::mt19937 rng(seed);
  Verdict sm = Verdict::pass(), sj = Verdict::pass();
  for (int t = 0; t < random_subsets && (sm.holds || sj.holds); ++t) {
    const int size = 1 + static_cast<int>(rng() % 5);
    std::vector<int> subset;
    for (int k = 0; k < size; ++k) {
      const int idx = static_cast<int>(rng() % static_cast<std::uint32_t>(n));
      if (std::find(subset.begin(), subset.end(), idx) == subset.end()) subset.push_back(idx);
    }
    Json sub = labels_json(L, subset);
    if (sm.holds) {
      Element<S> m = iv.elements[static_cast<std::size_t>(subset.front())];
      int lm = subset.front();
      for (std::size_t k = 1; k < subset.size(); ++k) {
        m = weak_meet(m, iv.elements[static_cast<std::size_t>(subset[k])]);
        lm = L.meet(lm, subset[k]);
      }
      if (!is_sortable(m, iv.gamma) || locate(m) != lm) {
        sm = Verdict::fail(Json{{"subset", sub}, {"group_meet", m.display()},
                                {"lattice_meet", L.label(lm)}});
      }
    }
    if (sj.holds) {
      std::optional<Element<S>> j = iv.elements[static_cast<std::size_t>(subset.front())];
      int lj = subset.front();
      for (std::size_t k = 1; k < subset.size() && j; ++k) {
        j = weak_join(*j, iv.elements[static_cast<std::size_t>(subset[k])], cap);
        lj = L.join(lj, subset[k]);
      }
      if (!j || !is_sortable(*j, iv.gamma) || locate(*j) != lj) {
        sj = Verdict::fail(Json{{"subset", sub}, {"group_join", j ? j->display() : "none"},
                                {"lattice_join", L.label(lj)}});
      }
    }
  }
  rep.add("subset_meets_agree", std::move(sm));
  rep.add("subset_joins_agree", std::move(sj));
  return rep;
}

// Hand-checked example lattices used across the test suite.

// Seven elements, eight covers; trim of length 4 but not semidistributive.
inline FiniteLattice trim_not_semidistributive_lattice() {
  return FiniteLattice::from_covers(
      {"n1", "n2", "n3", "n4", "n5", "n6", "n7"},
      {{0, 1}, {0, 4}, {1, 2}, {1, 3}, {2, 6}, {3, 5}, {4, 5}, {5, 6}});
}

// The hexagon: semidistributive with four irreducibles each side, length 3.
inline FiniteLattice semidistributive_not_trim_lattice() {
  return FiniteLattice::from_covers({"n1", "n2", "n3", "n4", "n5", "n6"},
                                    {{0, 1}, {0, 2}, {1, 3}, {2, 4}, {3, 5}, {4, 5}});
}

// Transcription of the 26-element interval of the affine C3 example: labels
// are sorting words, covers index into the label list, chain lists the
// sorting-prefix chain of the top.
struct IntervalFixture {
  std::vector<std::string> labels;
  std::vector<std::pair<int, int>> covers;
  std::vector<int> chain;
  std::vector<std::string> join_irreducible_labels;
  std::vector<std::string> meet_irreducible_labels;
};

inline const IntervalFixture& affine_c3_interval_fixture() {
  static const IntervalFixture fixture = [] {
    IntervalFixture f;
    f.labels = {"e",
                "s0",
                "s2",
                "s0 s1",
                "s2 s3",
                "s0 s1 s2",
                "s0 s2",
                "s0 s1 s2 s1",
                "s0 s1 s2 s3",
                "s0 s2 s3",
                "s0 s1 s2 s3 s1",
                "s2 s3 s2",
                "s3",
                "s0 s1 s2 s3 s1 s2",
                "s0 s1 s2 s3 s2",
                "s0 s1 s2 s3 s1 s2 s3",
                "s0 s3",
                "s0 s1 s2 s3 s1 s2 s1",
                "s0 s2 s3 s2",
                "s2 s3 s2 s3",
                "s0 s1 s2 s3 s1 s2 s3 s1",
                "s0 s1 s3",
                "s0 s1 s2 s3 s1 s2 s3 s1 s2",
                "s0 s2 s3 s2 s3",
                "s0 s1 s2 s3 s2 s3",
                "s0 s1 s2 s3 s1 s2 s3 s1 s2 s3"};
    f.covers = {{0, 1},   {0, 2},   {0, 12},  {1, 3},   {1, 6},   {1, 16},  {2, 6},
                {2, 4},   {3, 5},   {3, 21},  {4, 9},   {4, 11},  {5, 7},   {5, 8},
                {6, 7},   {6, 9},   {7, 10},  {8, 10},  {8, 14},  {9, 15},  {9, 18},
                {10, 13}, {11, 18}, {11, 19}, {12, 16}, {12, 19}, {13, 15}, {13, 17},
                {14, 17}, {14, 24}, {15, 20}, {16, 21}, {16, 23}, {17, 20}, {18, 22},
                {18, 23}, {19, 23}, {20, 22}, {21, 24}, {22, 25}, {23, 25}, {24, 25}};
    f.chain = {0, 1, 3, 5, 8, 10, 13, 15, 20, 22, 25};
    f.join_irreducible_labels = {"s0",           "s2",          "s3",
                                 "s0 s1",        "s2 s3",       "s0 s1 s2",
                                 "s2 s3 s2",     "s0 s1 s2 s3", "s0 s1 s2 s3 s2",
                                 "s0 s1 s2 s3 s1 s2"};
    f.meet_irreducible_labels = {"s0 s1 s3",
                                 "s0 s1 s2 s1",
                                 "s2 s3 s2 s3",
                                 "s0 s1 s2 s3 s1",
                                 "s0 s2 s3 s2 s3",
                                 "s0 s1 s2 s3 s2 s3",
                                 "s0 s1 s2 s3 s1 s2 s1",
                                 "s0 s1 s2 s3 s1 s2 s3",
                                 "s0 s1 s2 s3 s1 s2 s3 s1",
                                 "s0 s1 s2 s3 s1 s2 s3 s1 s2"};
    return f;
  }();
  return fixture;
}

inline FiniteLattice affine_c3_interval_lattice() {
  const IntervalFixture& f = affine_c3_interval_fixture();
  return FiniteLattice::from_covers(f.labels, f.covers);
}

// Batch driver: construct intervals of the Cambrian semilattice over whole
// families of systems and check the trim claim on each.

struct SweepSystem {
  std::string name;
  CoxeterMatrix matrix = CoxeterMatrix(1, {{1}});
  std::vector<std::string> names;  // empty: default generator names
  bool all_gammas = true;
  std::vector<Word> gammas;  // used when all_gammas is false
  int max_len = 6;
  std::size_t max_elems = 1u << 17;  // per-interval ideal cap
  std::size_t max_ball = 1u << 20;   // ball cap
  bool pairs = false;                // also sweep intervals with non-identity bottoms
};

struct SweepResult {
  Json systems = Json::array();
  std::size_t intervals = 0;
  std::size_t failures = 0;
  std::size_t skips = 0;
  bool all_hold = true;

  Json to_json() const {
    return Json{{"systems", systems},
                {"totals", Json{{"intervals", intervals}, {"failures", failures}, {"skips", skips}}},
                {"all_hold", all_hold}};
  }
};

namespace detail {

struct IntervalCheck {
  bool ok = true;
  std::string verdict;
  Json witness;
};

// expected_length < 0 skips the full-length check (used for intervals whose
// bottom is not the identity, where the length can be anything).
inline IntervalCheck check_trim_interval(const FiniteLattice& L, int expected_length) {
  IntervalCheck out;
  const int len = lattice_length(L);
  const std::vector<int> ji = join_irreducibles(L);
  const std::vector<int> mi = meet_irreducibles(L);
  if (static_cast<int>(ji.size()) != len || static_cast<int>(mi.size()) != len) {
    out.ok = false;
    out.verdict = "trim";
    out.witness = Json{{"length", len}, {"join_count", ji.size()}, {"meet_count", mi.size()}};
    return out;
  }
  if (!find_left_modular_chain(L)) {
    out.ok = false;
    out.verdict = "trim";
    out.witness = Json{{"reason", "no left-modular chain of full length"}};
    return out;
  }
  if (expected_length >= 0 && len != expected_length) {
    out.ok = false;
    out.verdict = "identity_interval_full_length";
    out.witness = Json{{"lattice_length", len}, {"word_length", expected_length}};
    return out;
  }
  const GradedCheck gc = is_graded(L);
  if (gc.graded) {
    const SdCheck dis = is_distributive(L);
    if (!dis.holds) {
      out.ok = false;
      out.verdict = "graded_implies_distributive";
      out.witness = triple_json(L, dis);
      return out;
    }
  }
  return out;
}

template <class S>
void sweep_one(const SweepSystem& cfg, SweepResult& out) {
  SystemPtr<S> sys = CoxeterSystem<S>::build(cfg.matrix, cfg.names);
  Json skips = Json::array();
  Json fails = Json::array();
  std::size_t intervals = 0;
  std::size_t gamma_count = 0;

  WeakOrderBall<S> ball;
  bool have_ball = true;
  try {
    ball = build_ball(sys, cfg.max_len, cfg.max_ball);
  } catch (const LimitError& e) {
    have_ball = false;
    skips.push_back(Json{{"reason", "ball cap"}, {"detail", e.what()}});
    ++out.skips;
  }

  if (have_ball) {
    std::vector<Word> gammas;
    if (cfg.all_gammas) {
      Word perm(static_cast<std::size_t>(sys->rank()));
      for (int i = 0; i < sys->rank(); ++i) perm[static_cast<std::size_t>(i)] = i;
      do {
        gammas.push_back(perm);
      } while (std::next_permutation(perm.begin(), perm.end()));
    } else {
      gammas = cfg.gammas;
    }
    gamma_count = gammas.size();

    const int bn = static_cast<int>(ball.elems.size());
    std::vector<int> local(static_cast<std::size_t>(bn), -1);
    for (const Word& gw : gammas) {
      const GammaSpec gamma = make_gamma(sys, gw);
      std::string gname;
      for (std::size_t i = 0; i < gw.size(); ++i) {
        if (i) gname += ' ';
        gname += sys->name(gw[static_cast<std::size_t>(i)]);
      }
      try {
        std::vector<char> sortable(static_cast<std::size_t>(bn), 0);
        std::vector<std::string> slabel(static_cast<std::size_t>(bn));
        for (int i = 0; i < bn; ++i) {
          const SortingWord sw = sorting_word(ball.elems[static_cast<std::size_t>(i)], gamma);
          if (sw.first_violating_block() < 0) {
            sortable[static_cast<std::size_t>(i)] = 1;
            slabel[static_cast<std::size_t>(i)] = sorting_label(sys, sw);
          }
        }
        for (int t = 0; t < bn; ++t) {
          if (!sortable[static_cast<std::size_t>(t)]) continue;
          const Bits& ideal = ball.down[static_cast<std::size_t>(t)];
          if (ideal.count() > cfg.max_elems) {
            skips.push_back(Json{{"gamma", gname},
                                 {"top", slabel[static_cast<std::size_t>(t)]},
                                 {"ideal_size", ideal.count()},
                                 {"reason", "interval cap"}});
            ++out.skips;
            continue;
          }
          std::vector<int> bottoms;
          if (cfg.pairs) {
            for (std::size_t u = ideal.find_first(); u != Bits::npos; u = ideal.find_next(u)) {
              if (sortable[u]) bottoms.push_back(static_cast<int>(u));
            }
          } else {
            bottoms.push_back(0);
          }
          for (int b : bottoms) {
            std::vector<int> members;
            for (std::size_t i = ideal.find_first(); i != Bits::npos; i = ideal.find_next(i)) {
              if (sortable[i] && ball.down[i].test(static_cast<std::size_t>(b))) {
                members.push_back(static_cast<int>(i));
              }
            }
            const int m = static_cast<int>(members.size());
            for (int i = 0; i < m; ++i) local[static_cast<std::size_t>(members[static_cast<std::size_t>(i)])] = i;
            std::vector<LatticeBits> strict(static_cast<std::size_t>(m),
                                            LatticeBits(static_cast<std::size_t>(m)));
            std::vector<std::string> labels;
            labels.reserve(static_cast<std::size_t>(m));
            for (int i = 0; i < m; ++i) {
              const std::size_t bi = static_cast<std::size_t>(members[static_cast<std::size_t>(i)]);
              labels.push_back(slabel[bi]);
              for (std::size_t d = ball.down[bi].find_first(); d != Bits::npos;
                   d = ball.down[bi].find_next(d)) {
                const int li = local[d];
                if (li >= 0 && li != i) strict[static_cast<std::size_t>(i)].set(static_cast<std::size_t>(li));
              }
            }
            ++intervals;
            ++out.intervals;
            try {
              const FiniteLattice L =
                  FiniteLattice::from_covers(labels, transitive_reduction(strict));
              const int expected =
                  b == 0 ? ball.elems[static_cast<std::size_t>(t)].length() : -1;
              const IntervalCheck check = check_trim_interval(L, expected);
              if (!check.ok) {
                fails.push_back(Json{{"gamma", gname},
                                     {"bottom", labels[static_cast<std::size_t>(local[static_cast<std::size_t>(b)])]},
                                     {"top", slabel[static_cast<std::size_t>(t)]},
                                     {"verdict", check.verdict},
                                     {"witness", check.witness}});
                ++out.failures;
                out.all_hold = false;
              }
            } catch (const std::runtime_error& e) {
              fails.push_back(Json{{"gamma", gname},
                                   {"top", slabel[static_cast<std::size_t>(t)]},
                                   {"verdict", "lattice_construction"},
                                   {"witness", e.what()}});
              ++out.failures;
              out.all_hold = false;
            }
            for (int i = 0; i < m; ++i) local[static_cast<std::size_t>(members[static_cast<std::size_t>(i)])] = -1;
          }
        }
      } catch (const ArithmeticError& e) {
        fails.push_back(Json{{"gamma", gname}, {"verdict", "arithmetic"}, {"witness", e.what()}});
        ++out.failures;
        out.all_hold = false;
      }
    }
  }

  out.systems.push_back(Json{{"name", cfg.name},
                             {"rank", cfg.matrix.rank()},
                             {"ball_size", have_ball ? ball.elems.size() : 0},
                             {"gammas", gamma_count},
                             {"intervals", intervals},
                             {"skipped", skips},
                             {"failures", fails}});
}

}  // namespace detail

inline SweepResult run_sweep(const std::vector<SweepSystem>& systems) {
  SweepResult out;
  for (const SweepSystem& cfg : systems) {
    if (all_labels_exact(cfg.matrix)) {
      detail::sweep_one<Exact>(cfg, out);
    } else {
      detail::sweep_one<double>(cfg, out);
    }
  }
  return out;
}

}  // namespace cambrian
