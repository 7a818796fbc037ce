#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "cambrian/lattice.hpp"

using namespace cambrian;

namespace {

using Covers = std::vector<std::pair<int, int>>;

std::vector<std::string> numbered_labels(int n) {
  std::vector<std::string> out;
  for (int i = 0; i < n; ++i) out.push_back("n" + std::to_string(i + 1));
  return out;
}

FiniteLattice chain_lattice(int n) {
  Covers covers;
  for (int i = 0; i + 1 < n; ++i) covers.emplace_back(i, i + 1);
  return FiniteLattice::from_covers(numbered_labels(n), covers);
}

// 0 < a, 0 < b < c, a < 1, c < 1.
FiniteLattice pentagon() {
  return FiniteLattice::from_covers({"0", "a", "b", "c", "1"},
                                    {{0, 1}, {0, 2}, {2, 3}, {1, 4}, {3, 4}});
}

// Three incomparable middles between bottom and top.
FiniteLattice diamond3() {
  return FiniteLattice::from_covers({"0", "a", "b", "c", "1"},
                                    {{0, 1}, {0, 2}, {0, 3}, {1, 4}, {2, 4}, {3, 4}});
}

FiniteLattice boolean_cube() {
  // Subsets of {x,y,z} ordered by inclusion.
  return FiniteLattice::from_covers(
      {"{}", "x", "y", "z", "xy", "xz", "yz", "xyz"},
      {{0, 1}, {0, 2}, {0, 3}, {1, 4}, {1, 5}, {2, 4}, {2, 6}, {3, 5}, {3, 6},
       {4, 7}, {5, 7}, {6, 7}});
}

// Random bounded posets, accepted only when the cover relation passes full
// lattice validation. Deterministic across runs.
std::vector<FiniteLattice> random_lattices(std::size_t want, std::uint32_t seed) {
  std::vector<FiniteLattice> out;
  std::mt19937 rng(seed);
  std::size_t attempts = 0;
  while (out.size() < want && attempts < 40000) {
    ++attempts;
    const int n = 4 + static_cast<int>(rng() % 6);
    std::vector<std::vector<bool>> rel(static_cast<std::size_t>(n),
                                       std::vector<bool>(static_cast<std::size_t>(n), false));
    for (int i = 1; i < n - 1; ++i) {
      rel[0][static_cast<std::size_t>(i)] = true;
      rel[static_cast<std::size_t>(i)][static_cast<std::size_t>(n - 1)] = true;
    }
    rel[0][static_cast<std::size_t>(n - 1)] = true;
    for (int i = 1; i < n - 1; ++i) {
      for (int j = i + 1; j < n - 1; ++j) {
        if (rng() % 100 < 30) rel[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = true;
      }
    }
    for (int k = 0; k < n; ++k) {
      for (int i = 0; i < n; ++i) {
        if (!rel[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)]) continue;
        for (int j = 0; j < n; ++j) {
          if (rel[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)]) {
            rel[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = true;
          }
        }
      }
    }
    Covers covers;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (!rel[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]) continue;
        bool direct = true;
        for (int k = 0; k < n && direct; ++k) {
          if (rel[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] &&
              rel[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)]) {
            direct = false;
          }
        }
        if (direct) covers.emplace_back(i, j);
      }
    }
    try {
      out.push_back(FiniteLattice::from_covers(numbered_labels(n), covers));
    } catch (const ValidationError&) {
    }
  }
  return out;
}

}  // namespace

TEST_CASE("cover input validation", "[lattice]") {
  CHECK_THROWS_AS(FiniteLattice::from_covers({}, {}), ValidationError);
  CHECK_THROWS_WITH(FiniteLattice::from_covers({"a", "a"}, {{0, 1}}),
                    Catch::Matchers::ContainsSubstring("duplicate label"));
  CHECK_THROWS_WITH(FiniteLattice::from_covers({"a", "b"}, {{0, 2}}),
                    Catch::Matchers::ContainsSubstring("out of range"));
  CHECK_THROWS_WITH(FiniteLattice::from_covers({"a", "b"}, {{0, 0}}),
                    Catch::Matchers::ContainsSubstring("self cover"));
  CHECK_THROWS_WITH(FiniteLattice::from_covers({"a", "b"}, {{0, 1}, {0, 1}}),
                    Catch::Matchers::ContainsSubstring("duplicate cover edge"));
  CHECK_THROWS_WITH(FiniteLattice::from_covers({"a", "b"}, {{0, 1}, {1, 0}}),
                    Catch::Matchers::ContainsSubstring("cycle"));
  CHECK_THROWS_WITH(
      FiniteLattice::from_covers({"a", "b", "c"}, {{0, 1}, {1, 2}, {0, 2}}),
      Catch::Matchers::ContainsSubstring("redundant cover edge"));
  // Two maximal elements.
  CHECK_THROWS_WITH(FiniteLattice::from_covers({"a", "b", "c"}, {{0, 1}, {0, 2}}),
                    Catch::Matchers::ContainsSubstring("multiple tops: 'b' 'c'"));
  CHECK_THROWS_WITH(FiniteLattice::from_covers({"a", "b", "c"}, {{0, 2}, {1, 2}}),
                    Catch::Matchers::ContainsSubstring("multiple bottoms"));
  // Two minimal upper bounds for the two middles.
  CHECK_THROWS_WITH(
      FiniteLattice::from_covers(
          numbered_labels(6), {{0, 1}, {0, 2}, {1, 3}, {2, 3}, {1, 4}, {2, 4}, {3, 5}, {4, 5}}),
      Catch::Matchers::ContainsSubstring("non-unique join"));
  // A single isolated point is a valid (one-element) lattice.
  const FiniteLattice one = FiniteLattice::from_covers({"e"}, {});
  CHECK(one.size() == 1);
  CHECK(one.bottom() == one.top());
  CHECK(lattice_length(one) == 0);
  CHECK(is_trim(one));
}

TEST_CASE("meet and join tables on the cube", "[lattice]") {
  const FiniteLattice L = boolean_cube();
  CHECK(L.bottom() == 0);
  CHECK(L.top() == 7);
  CHECK(lattice_length(L) == 3);
  // Subset semantics: meet is intersection, join is union.
  auto bits = [](int i) {
    switch (i) {
      case 0: return 0;
      case 1: return 1;
      case 2: return 2;
      case 3: return 4;
      case 4: return 3;
      case 5: return 5;
      case 6: return 6;
      default: return 7;
    }
  };
  auto index_of = [&bits](int mask) {
    for (int i = 0; i < 8; ++i) {
      if (bits(i) == mask) return i;
    }
    return -1;
  };
  for (int i = 0; i < 8; ++i) {
    for (int j = 0; j < 8; ++j) {
      CHECK(L.meet(i, j) == index_of(bits(i) & bits(j)));
      CHECK(L.join(i, j) == index_of(bits(i) | bits(j)));
      CHECK(L.leq(i, j) == ((bits(i) & bits(j)) == bits(i)));
    }
  }
  CHECK(is_graded(L).graded);
  CHECK(is_distributive(L).holds);
  CHECK(is_semidistributive(L).holds);
  // The cube is graded with 3 atoms and 3 coatoms but length 3, so extremal.
  CHECK(is_extremal(L));
  CHECK(is_trim(L));
}

TEST_CASE("pentagon properties", "[lattice]") {
  const FiniteLattice L = pentagon();
  CHECK(lattice_length(L) == 3);
  const GradedCheck gc = is_graded(L);
  CHECK_FALSE(gc.graded);
  CHECK(gc.long_chain.size() == 4);
  CHECK(gc.short_chain.size() == 3);
  CHECK(is_semidistributive(L).holds);
  CHECK_FALSE(is_distributive(L).holds);
  CHECK(is_extremal(L));
  CHECK(is_trim(L));
  // Left-modular elements are exactly bottom, top, and the long side.
  const int a = 1, b = 2, c = 3;
  CHECK(is_left_modular_element(L, L.bottom()).holds);
  CHECK(is_left_modular_element(L, L.top()).holds);
  CHECK(is_left_modular_element(L, b).holds);
  CHECK(is_left_modular_element(L, c).holds);
  CHECK_FALSE(is_left_modular_element(L, a).holds);
  const auto chain = find_left_modular_chain(L);
  REQUIRE(chain.has_value());
  CHECK(*chain == std::vector<int>{0, b, c, 4});
}

TEST_CASE("three-middle diamond fails semidistributivity", "[lattice]") {
  const FiniteLattice L = diamond3();
  CHECK(is_graded(L).graded);
  const SdCheck sj = is_join_semidistributive(L);
  CHECK_FALSE(sj.holds);
  // Witness triple really violates the law.
  CHECK(L.join(sj.x, sj.y) == L.join(sj.x, sj.z));
  CHECK(L.join(sj.x, L.meet(sj.y, sj.z)) != L.join(sj.x, sj.y));
  CHECK_FALSE(is_meet_semidistributive(L).holds);
  CHECK_FALSE(is_extremal(L));  // three atoms, length two
  CHECK_FALSE(is_trim(L));
}

TEST_CASE("left-modularity definitions agree", "[lattice]") {
  const auto stock = random_lattices(200, 20260814);
  REQUIRE(stock.size() >= 150);
  std::vector<FiniteLattice> all = {pentagon(), diamond3(), boolean_cube(), chain_lattice(5)};
  for (const auto& L : stock) all.push_back(L);
  for (const FiniteLattice& L : all) {
    for (int x = 0; x < L.size(); ++x) {
      const LeftModularCheck by_covers = is_left_modular_element(L, x);
      const LeftModularCheck by_def = is_left_modular_element_def(L, x);
      CHECK(by_covers.holds == by_def.holds);
      if (!by_covers.holds) {
        // The cover witness is a genuine cover.
        bool found = false;
        for (const auto& [y, z] : L.covers()) {
          if (y == by_covers.y && z == by_covers.z) found = true;
        }
        CHECK(found);
      }
    }
  }
}

TEST_CASE("lattice laws and counting bounds on random lattices", "[lattice]") {
  const auto stock = random_lattices(200, 97);
  REQUIRE(stock.size() >= 150);
  std::mt19937 rng(5);
  for (const FiniteLattice& L : stock) {
    const int n = L.size();
    const int len = lattice_length(L);
    // Irreducibles can never undercut the longest chain.
    CHECK(static_cast<int>(join_irreducibles(L).size()) >= len);
    CHECK(static_cast<int>(meet_irreducibles(L).size()) >= len);
    // Semidistributive lattices balance their irreducibles.
    if (is_semidistributive(L).holds) {
      CHECK(join_irreducibles(L).size() == meet_irreducibles(L).size());
    }
    // Graded extremal lattices collapse to distributive ones.
    if (is_graded(L).graded && is_extremal(L)) {
      CHECK(is_distributive(L).holds);
    }
    for (int i = 0; i < n; ++i) {
      CHECK(L.meet(i, L.top()) == i);
      CHECK(L.join(i, L.bottom()) == i);
      for (int j = 0; j < n; ++j) {
        CHECK(L.meet(i, j) == L.meet(j, i));
        CHECK(L.join(i, j) == L.join(j, i));
        CHECK(L.meet(i, L.join(i, j)) == i);  // absorption
        CHECK(L.join(i, L.meet(i, j)) == i);
        CHECK(L.leq(i, j) == (L.meet(i, j) == i));
        CHECK(L.leq(i, j) == (L.join(i, j) == j));
      }
    }
    for (int t = 0; t < 20; ++t) {
      const int x = static_cast<int>(rng() % static_cast<unsigned>(n));
      const int y = static_cast<int>(rng() % static_cast<unsigned>(n));
      const int z = static_cast<int>(rng() % static_cast<unsigned>(n));
      CHECK(L.meet(x, L.meet(y, z)) == L.meet(L.meet(x, y), z));
      CHECK(L.join(x, L.join(y, z)) == L.join(L.join(x, y), z));
    }
  }
}

TEST_CASE("duality swaps the roles of meet and join", "[lattice]") {
  const auto stock = random_lattices(60, 424242);
  REQUIRE(stock.size() >= 40);
  std::vector<FiniteLattice> all = {pentagon(), diamond3(), boolean_cube()};
  for (const auto& L : stock) all.push_back(L);
  for (const FiniteLattice& L : all) {
    const FiniteLattice D = dual(L);
    CHECK(D.size() == L.size());
    CHECK(D.bottom() == L.top());
    CHECK(D.top() == L.bottom());
    CHECK(lattice_length(D) == lattice_length(L));
    for (int i = 0; i < L.size(); ++i) {
      for (int j = 0; j < L.size(); ++j) {
        CHECK(D.meet(i, j) == L.join(i, j));
        CHECK(D.join(i, j) == L.meet(i, j));
      }
    }
    CHECK(join_irreducibles(D).size() == meet_irreducibles(L).size());
    CHECK(is_trim(D) == is_trim(L));
    // Dual of the dual restores the original cover set.
    const FiniteLattice DD = dual(D);
    std::set<std::pair<int, int>> c1(L.covers().begin(), L.covers().end());
    std::set<std::pair<int, int>> c2(DD.covers().begin(), DD.covers().end());
    CHECK(c1 == c2);
  }
}

TEST_CASE("intervals of trim lattices are trim", "[lattice]") {
  // 0 < n2 < {n3, n4}ish shape with a length-4 spine; trim but ungraded.
  const FiniteLattice L = FiniteLattice::from_covers(
      numbered_labels(7), {{0, 1}, {0, 4}, {1, 2}, {1, 3}, {2, 6}, {3, 5}, {4, 5}, {5, 6}});
  CHECK(is_trim(L));
  for (int a = 0; a < L.size(); ++a) {
    for (int b = 0; b < L.size(); ++b) {
      if (!L.leq(a, b)) continue;
      const FiniteLattice sub = sublattice_interval(L, a, b);
      CHECK(is_trim(sub));
      CHECK(sub.size() == static_cast<int>((L.upset(a) & L.downset(b)).count()));
    }
  }
  CHECK_THROWS_AS(sublattice_interval(L, 0, 99), ValidationError);
  CHECK_THROWS_AS(sublattice_interval(L, 6, 0), ValidationError);
}

TEST_CASE("interval extraction preserves order and labels", "[lattice]") {
  const FiniteLattice L = boolean_cube();
  const FiniteLattice sub = sublattice_interval(L, 1, 7);  // [x, xyz]
  CHECK(sub.size() == 4);
  CHECK(sub.labels() == std::vector<std::string>{"x", "xy", "xz", "xyz"});
  CHECK(lattice_length(sub) == 2);
  CHECK(is_distributive(sub).holds);
  const FiniteLattice self = sublattice_interval(L, 0, 7);
  CHECK(self.size() == L.size());
  CHECK(self.covers() == L.covers());
}
