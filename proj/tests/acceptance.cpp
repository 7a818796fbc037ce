// Acceptance gate: end-to-end checks against known ground truth, one
// pass/fail line per criterion. Exits nonzero if any criterion fails.

#include <chrono>
#include <cstdint>
#include <functional>
#include <iostream>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "cambrian/cli.hpp"

using namespace cambrian;

namespace {

struct Checker {
  bool ok = true;
  std::vector<std::string> notes;
  std::string detail;

  void expect(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      notes.push_back(what);
    }
  }
};

int g_failures = 0;

void run_criterion(int index, const std::string& name, double budget_seconds,
                   const std::function<void(Checker&)>& body) {
  Checker c;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(c);
  } catch (const std::exception& e) {
    c.expect(false, std::string("exception: ") + e.what());
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (budget_seconds > 0 && secs >= budget_seconds) {
    c.expect(false, "time target exceeded: " + std::to_string(secs) + "s >= " +
                        std::to_string(budget_seconds) + "s");
  }
  std::cout << (c.ok ? "[PASS] " : "[FAIL] ") << index << "/8 " << name << " (";
  std::cout.setf(std::ios::fixed);
  std::cout.precision(2);
  std::cout << secs << "s";
  if (!c.detail.empty()) std::cout << ", " << c.detail;
  std::cout << ")\n";
  if (!c.ok) {
    ++g_failures;
    for (const auto& n : c.notes) std::cout << "       " << n << "\n";
  }
}

std::string data_path(const std::string& name) {
  return std::string(CAMBRIAN_DATA_DIR) + "/" + name;
}

SystemPtr<Exact> affine_c3() {
  return CoxeterSystem<Exact>::build(
      CoxeterMatrix(4, {{1, 4, 2, 2}, {4, 1, 3, 2}, {2, 3, 1, 4}, {2, 2, 4, 1}}),
      {"s0", "s1", "s2", "s3"});
}

SystemPtr<Exact> symmetric4() {
  return CoxeterSystem<Exact>::build(CoxeterMatrix(3, {{1, 3, 2}, {3, 1, 3}, {2, 3, 1}}),
                                     {"s1", "s2", "s3"});
}

CambrianInterval<Exact> affine_interval() {
  auto sys = affine_c3();
  const GammaSpec gamma = make_gamma(sys, {0, 1, 2, 3});
  const auto top = canonicalize(sys, {0, 1, 2, 3, 1, 2, 3, 1, 2, 3});
  return cambrian_interval(identity(sys), top, gamma);
}

CambrianInterval<Exact> tamari_interval() {
  auto sys = symmetric4();
  const GammaSpec gamma = make_gamma(sys, {0, 1, 2});
  const auto w0 = canonicalize(sys, {0, 1, 0, 2, 1, 0});
  return cambrian_interval(identity(sys), w0, gamma);
}

CambrianInterval<Exact> pentagon_interval() {
  auto sys = CoxeterSystem<Exact>::build(CoxeterMatrix(2, {{1, 3}, {3, 1}}));
  const GammaSpec gamma = make_gamma(sys, {0, 1});
  return cambrian_interval(identity(sys), canonicalize(sys, {0, 1, 0}), gamma);
}

template <class T>
std::set<T> as_set(const std::vector<T>& v) {
  return std::set<T>(v.begin(), v.end());
}

// Random bounded posets, rejection-sampled down to genuine lattices.
std::vector<FiniteLattice> random_lattices(int want, std::uint32_t seed) {
  std::mt19937 rng(seed);
  std::vector<FiniteLattice> out;
  int attempts = 0;
  while (static_cast<int>(out.size()) < want && attempts < 400000) {
    ++attempts;
    const int n = 4 + static_cast<int>(rng() % 9);
    std::vector<std::vector<char>> le(static_cast<std::size_t>(n),
                                      std::vector<char>(static_cast<std::size_t>(n), 0));
    for (int i = 0; i < n; ++i) {
      le[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1;
      if (i > 0) le[0][static_cast<std::size_t>(i)] = 1;
      if (i < n - 1) le[static_cast<std::size_t>(i)][static_cast<std::size_t>(n - 1)] = 1;
    }
    for (int i = 1; i + 1 < n; ++i) {
      for (int j = i + 1; j + 1 < n; ++j) {
        if (rng() % 100 < 30) le[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = 1;
      }
    }
    for (int k = 0; k < n; ++k) {
      for (int i = 0; i < n; ++i) {
        if (!le[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)]) continue;
        for (int j = 0; j < n; ++j) {
          if (le[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)]) {
            le[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = 1;
          }
        }
      }
    }
    std::vector<std::pair<int, int>> covers;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (i == j || !le[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]) continue;
        bool direct = true;
        for (int k = 0; k < n && direct; ++k) {
          if (k != i && k != j && le[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] &&
              le[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)]) {
            direct = false;
          }
        }
        if (direct) covers.emplace_back(i, j);
      }
    }
    std::vector<std::string> labels;
    for (int i = 0; i < n; ++i) labels.push_back("x" + std::to_string(i));
    try {
      out.push_back(FiniteLattice::from_covers(labels, covers));
    } catch (const ValidationError&) {
    }
  }
  return out;
}

void criterion_sorting_words(Checker& c) {
  auto sys = affine_c3();
  const GammaSpec gamma = make_gamma(sys, {0, 1, 2, 3});

  const auto w1 = canonicalize(sys, {0, 2, 3, 2});
  const auto words1 = all_reduced_words(w1);
  c.expect(words1.size() == 4, "expected 4 reduced words for s0 s2 s3 s2");
  const std::set<Word> want1{{0, 2, 3, 2}, {2, 0, 3, 2}, {2, 3, 0, 2}, {2, 3, 2, 0}};
  c.expect(as_set(words1) == want1, "reduced-word set of s0 s2 s3 s2 differs");
  const SortingWord sw1 = sorting_word(w1, gamma);
  c.expect(render_sorting_word(sys, sw1) == "s0 s2 s3 | s2",
           "sorting word of s0 s2 s3 s2 is not 's0 s2 s3 | s2'");
  c.expect(sw1.block_sizes == std::vector<int>{3, 1}, "block sizes of s0 s2 s3 s2 differ");
  c.expect(is_sortable(w1, gamma), "s0 s2 s3 s2 should be sortable");

  const auto w2 = canonicalize(sys, {0, 2, 3, 1});
  const auto words2 = all_reduced_words(w2);
  c.expect(words2.size() == 5, "expected 5 reduced words for s0 s2 s3 s1");
  const std::set<Word> want2{
      {0, 2, 1, 3}, {0, 2, 3, 1}, {2, 0, 1, 3}, {2, 0, 3, 1}, {2, 3, 0, 1}};
  c.expect(as_set(words2) == want2, "reduced-word set of s0 s2 s3 s1 differs");
  const SortingWord sw2 = sorting_word(w2, gamma);
  c.expect(render_sorting_word(sys, sw2) == "s0 s2 s3 | s1",
           "sorting word of s0 s2 s3 s1 is not 's0 s2 s3 | s1'");
  c.expect(sw2.block_sizes == std::vector<int>{3, 1}, "block sizes of s0 s2 s3 s1 differ");
  c.expect(sw2.first_violating_block() == 1, "violation should appear in the second block");
  c.expect(!is_sortable(w2, gamma), "s0 s2 s3 s1 should not be sortable");
}

void criterion_affine_interval(Checker& c) {
  const auto iv = affine_interval();
  const IntervalFixture& f = affine_c3_interval_fixture();
  const FiniteLattice& L = iv.lattice;

  c.expect(L.size() == 26, "interval should have 26 elements");
  c.expect(as_set(L.labels()) == as_set(f.labels), "element labels differ from ground truth");
  std::set<std::pair<std::string, std::string>> got_covers, want_covers;
  for (const auto& [a, b] : L.covers()) got_covers.emplace(L.label(a), L.label(b));
  for (const auto& [a, b] : f.covers) {
    want_covers.emplace(f.labels[static_cast<std::size_t>(a)],
                        f.labels[static_cast<std::size_t>(b)]);
  }
  c.expect(got_covers == want_covers, "cover relation differs from ground truth");
  c.expect(lattice_length(L) == 10, "lattice length should be 10");

  std::set<std::string> got_j, got_m;
  for (int i : join_irreducibles(L)) got_j.insert(L.label(i));
  for (int i : meet_irreducibles(L)) got_m.insert(L.label(i));
  c.expect(got_j == as_set(f.join_irreducible_labels), "join-irreducible set differs");
  c.expect(got_m == as_set(f.meet_irreducible_labels), "meet-irreducible set differs");

  c.expect(is_trim(L), "interval should be trim");
  c.expect(!is_graded(L).graded, "interval should not be graded");

  std::vector<std::string> got_chain, want_chain;
  for (int i : iv.chain) got_chain.push_back(L.label(i));
  for (int i : f.chain) want_chain.push_back(f.labels[static_cast<std::size_t>(i)]);
  c.expect(got_chain == want_chain, "sorting chain differs from ground truth");
  c.expect(verify_sorting_chain_left_modular(iv).all_hold(),
           "sorting chain should be left modular of full length");
}

void criterion_avoiding_meet_irreducible(Checker& c) {
  const auto iv = affine_interval();
  const PropertyReport rep = verify_avoiding_meet_irreducibles(iv);
  c.expect(rep.all_hold(), "avoiding-meet-irreducible properties should hold");
  const Verdict* unique = rep.find("unique_avoiding_meet_irreducible");
  c.expect(unique != nullptr, "missing uniqueness verdict");
  if (unique != nullptr) {
    c.expect(unique->witness.at("avoiding_meet_irreducibles") == Json::array({"s2 s3 s2 s3"}),
             "the avoiding meet-irreducible should be s2 s3 s2 s3");
  }
}

void criterion_lattice_fixtures(Checker& c) {
  const FiniteLattice a = trim_not_semidistributive_lattice();
  c.expect(is_trim(a), "first fixture should be trim");
  c.expect(!is_semidistributive(a).holds, "first fixture should not be semidistributive");
  c.expect(lattice_length(a) == 4, "first fixture should have length 4");
  c.expect(join_irreducibles(a).size() == 4 && meet_irreducibles(a).size() == 4,
           "first fixture should have 4 irreducibles of each kind");

  const FiniteLattice b = semidistributive_not_trim_lattice();
  c.expect(is_semidistributive(b).holds, "second fixture should be semidistributive");
  c.expect(!is_trim(b), "second fixture should not be trim");
  c.expect(lattice_length(b) == 3, "second fixture should have length 3");
  c.expect(join_irreducibles(b).size() == 4 && meet_irreducibles(b).size() == 4,
           "second fixture should have 4 irreducibles of each kind");
}

void criterion_sweep(Checker& c) {
  const auto configs = sweep_config_from_json(load_json_file(data_path("rank3.sweep.json")));
  c.expect(configs.size() == 29, "sweep config should list 29 systems");
  const SweepResult res = run_sweep(configs);
  c.expect(res.failures == 0, "sweep reported failures");
  c.expect(res.skips == 0, "sweep skipped intervals; caps are too low");
  c.expect(res.all_hold, "sweep verdict should hold");
  c.expect(res.intervals > 1000, "sweep covered suspiciously few intervals");
  c.detail = std::to_string(res.intervals) + " intervals, " + std::to_string(res.failures) +
             " failures, " + std::to_string(res.skips) + " skips";
  if (res.failures > 0) {
    for (const auto& sysj : res.systems) {
      for (const auto& fail : sysj.at("failures")) {
        c.notes.push_back(sysj.at("name").get<std::string>() + ": " + fail.dump());
      }
    }
  }
}

void criterion_tamari(Checker& c) {
  const auto iv = tamari_interval();
  c.expect(iv.lattice.size() == 14, "full Cambrian lattice of the rank-3 symmetric system "
                                    "should have 14 elements");
  c.expect(is_trim(iv.lattice), "it should be trim");
  c.expect(!is_graded(iv.lattice).graded, "it should not be graded");
  c.detail = std::to_string(iv.lattice.size()) + " elements";
}

void criterion_oracle_equivalences(Checker& c) {
  // Block condition vs recursive characterization, across whole ideals.
  std::size_t checked = 0;
  {
    auto sys = affine_c3();
    const GammaSpec gamma = make_gamma(sys, {0, 1, 2, 3});
    const auto top = canonicalize(sys, {0, 1, 2, 3, 1, 2, 3, 1, 2, 3});
    for (const auto& w : order_ideal(top)) {
      if (is_sortable(w, gamma) != is_sortable_recursive(w, gamma)) {
        c.expect(false, "sortability characterizations disagree at " + w.display());
        return;
      }
      ++checked;
    }
  }
  {
    auto sys = symmetric4();
    const auto ball = build_ball(sys, 6, 1u << 12);
    Word perm{0, 1, 2};
    do {
      const GammaSpec gamma = make_gamma(sys, perm);
      for (const auto& w : ball.elems) {
        if (is_sortable(w, gamma) != is_sortable_recursive(w, gamma)) {
          c.expect(false, "sortability characterizations disagree at " + w.display());
          return;
        }
        ++checked;
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
  }

  // Lattice-law oracles on fixtures plus seeded random lattices.
  std::vector<FiniteLattice> pool{trim_not_semidistributive_lattice(),
                                  semidistributive_not_trim_lattice(),
                                  affine_c3_interval_lattice(), tamari_interval().lattice,
                                  pentagon_interval().lattice};
  const auto randoms = random_lattices(200, 20260814u);
  c.expect(randoms.size() == 200, "random lattice pool came up short");
  pool.insert(pool.end(), randoms.begin(), randoms.end());

  for (const FiniteLattice& L : pool) {
    for (int x = 0; x < L.size(); ++x) {
      if (is_left_modular_element(L, x).holds != is_left_modular_element_def(L, x).holds) {
        c.expect(false, "left-modularity characterizations disagree");
        return;
      }
    }
    const int len = lattice_length(L);
    const auto ji = join_irreducibles(L);
    const auto mi = meet_irreducibles(L);
    if (is_semidistributive(L).holds) {
      c.expect(ji.size() == mi.size(), "semidistributive lattice with |J| != |M|");
    }
    if (is_graded(L).graded && is_extremal(L)) {
      c.expect(is_distributive(L).holds, "graded extremal lattice that is not distributive");
    }
    c.expect(static_cast<int>(ji.size()) >= len && static_cast<int>(mi.size()) >= len,
             "fewer irreducibles than the length");
    if (is_trim(L)) {
      for (int a = 0; a < L.size(); ++a) {
        for (int b = 0; b < L.size(); ++b) {
          if (!L.leq(a, b)) continue;
          if (!is_trim(sublattice_interval(L, a, b))) {
            c.expect(false, "interval of a trim lattice is not trim");
            return;
          }
        }
      }
    }
    checked += static_cast<std::size_t>(L.size());
  }
  c.detail = std::to_string(pool.size()) + " lattices, " + std::to_string(checked) + " probes";
}

void criterion_weak_order_agreement(Checker& c) {
  std::size_t pairs = 0;
  const std::vector<CambrianInterval<Exact>> fixtures{affine_interval(), tamari_interval(),
                                                      pentagon_interval()};
  for (const auto& iv : fixtures) {
    const FiniteLattice& L = iv.lattice;
    const int cap = iv.top.length();
    for (int i = 0; i < L.size(); ++i) {
      for (int j = 0; j < L.size(); ++j) {
        const auto& a = iv.elements[static_cast<std::size_t>(i)];
        const auto& b = iv.elements[static_cast<std::size_t>(j)];
        const auto& m = iv.elements[static_cast<std::size_t>(L.meet(i, j))];
        const auto& jn = iv.elements[static_cast<std::size_t>(L.join(i, j))];
        if (!(weak_meet(a, b) == m)) {
          c.expect(false, "lattice meet disagrees with weak-order meet at " + a.display() +
                              ", " + b.display());
          return;
        }
        const std::optional<Element<Exact>> wj = weak_join(a, b, cap);
        if (!wj || !(*wj == jn)) {
          c.expect(false, "lattice join disagrees with weak-order join at " + a.display() +
                              ", " + b.display());
          return;
        }
        ++pairs;
      }
    }
  }
  c.detail = std::to_string(pairs) + " pairs";
}

}  // namespace

int main() {
  run_criterion(1, "sorting-word-blocks", 1.0, criterion_sorting_words);
  run_criterion(2, "affine-interval-reconstruction", 10.0, criterion_affine_interval);
  run_criterion(3, "avoiding-meet-irreducible", 0.0, criterion_avoiding_meet_irreducible);
  run_criterion(4, "lattice-fixture-classification", 0.0, criterion_lattice_fixtures);
  run_criterion(5, "low-rank-sweep", 300.0, criterion_sweep);
  run_criterion(6, "catalan-count", 0.0, criterion_tamari);
  run_criterion(7, "oracle-equivalences", 0.0, criterion_oracle_equivalences);
  run_criterion(8, "weak-order-agreement", 0.0, criterion_weak_order_agreement);
  if (g_failures > 0) {
    std::cout << "acceptance: " << g_failures << " of 8 criteria failed\n";
    return 1;
  }
  std::cout << "acceptance: all 8 criteria passed\n";
  return 0;
}
