#include <doctest.h>

#include <numbers>
#include <random>

#include "blaschke/partition.hpp"

using namespace blaschke;

TEST_CASE("canonical form and orbit partition") {
  Partition p = make_partition(5, {{3, 4}, {0}, {2, 1}});
  CHECK(p.blocks == std::vector<std::vector<int>>{{0}, {1, 2}, {3, 4}});
  CHECK(p.q() == 3);
  CHECK(p.block_of(4) == 2);

  // orbits of a single 4-cycle on 5 points fixing 0
  Partition orbits = orbit_partition(5, {{0, 2, 3, 4, 1}});
  CHECK(orbits == make_partition(5, {{0}, {1, 2, 3, 4}}));
}

TEST_CASE("dual partition") {
  // singletons are self dual (character vectors distinct)
  Partition singles = make_partition(6, {{0}, {1}, {2}, {3}, {4}, {5}});
  CHECK(dual_partition(singles) == singles);

  // {{0}, rest}: geometric sums give n-1 at j=0 and -1 otherwise
  Partition rest = make_partition(7, {{0}, {1, 2, 3, 4, 5, 6}});
  CHECK(dual_partition(rest) == rest);

  // Z5 pair partition is self dual; confirmed against direct character sums.
  Partition pairs = make_partition(5, {{0}, {1, 4}, {2, 3}});
  Partition dual = dual_partition(pairs);
  CHECK(dual == pairs);
  auto chi = [](int i, int j) {
    double t = 2.0 * std::numbers::pi * i * j / 5.0;
    return Cplx(std::cos(t), std::sin(t));
  };
  for (int j1 = 0; j1 < 5; ++j1)
    for (int j2 = 0; j2 < 5; ++j2) {
      bool equal = true;
      for (const auto& blk : pairs.blocks) {
        Cplx s1(0, 0), s2(0, 0);
        for (int i : blk) {
          s1 += chi(i, j1);
          s2 += chi(i, j2);
        }
        equal = equal && std::abs(s1 - s2) < 1e-9;
      }
      bool same_block = dual.block_of(j1) == dual.block_of(j2);
      CHECK(equal == same_block);
    }
}

TEST_CASE("necessary conditions") {
  ConditionReport bad = check_conditions(make_partition(5, {{0}, {1, 2}, {3, 4}}));
  CHECK(bad.a1);
  CHECK(bad.a2);
  CHECK_FALSE(bad.a3);  // G2+G2 = {2,3,3,4} is not a block union

  ConditionReport good = check_conditions(make_partition(5, {{0}, {1, 4}, {2, 3}}));
  CHECK(good.all());

  ConditionReport seven = check_conditions(make_partition(7, {{0}, {1, 6}, {2, 5}, {3, 4}}));
  CHECK(seven.all());

  for (int n = 2; n <= 12; ++n) {
    std::vector<std::vector<int>> blocks;
    for (int i = 0; i < n; ++i) blocks.push_back({i});
    CHECK(check_conditions(make_partition(n, blocks)).all());
  }
}

TEST_CASE("subgroup unions") {
  CHECK(subgroup_unions(make_partition(6, {{0}, {1, 3, 5}, {2}, {4}})) ==
        std::vector<std::vector<int>>{{0, 2, 4}});

  Partition singles = make_partition(6, {{0}, {1}, {2}, {3}, {4}, {5}});
  CHECK(subgroup_unions(singles) ==
        std::vector<std::vector<int>>{{0, 3}, {0, 2, 4}});

  CHECK(subgroup_unions(make_partition(6, {{0}, {1, 2, 3, 4, 5}})).empty());
}

TEST_CASE("admissible partitions for n = 5") {
  std::vector<Partition> got = enumerate_admissible(5, false);
  REQUIRE(got.size() == 3);
  CHECK(got[0] == make_partition(5, {{0}, {1}, {2}, {3}, {4}}));
  CHECK(got[1] == make_partition(5, {{0}, {1, 4}, {2, 3}}));
  CHECK(got[2] == make_partition(5, {{0}, {1, 2, 3, 4}}));
}

TEST_CASE("admissible partitions for n = 7") {
  std::vector<Partition> got = enumerate_admissible(7, false);
  REQUIRE(got.size() == 4);
  CHECK(got[0] == make_partition(7, {{0}, {1}, {2}, {3}, {4}, {5}, {6}}));
  CHECK(got[1] == make_partition(7, {{0}, {1, 6}, {2, 5}, {3, 4}}));
  CHECK(got[2] == make_partition(7, {{0}, {1, 2, 4}, {3, 5, 6}}));
  CHECK(got[3] == make_partition(7, {{0}, {1, 2, 3, 4, 5, 6}}));
}

TEST_CASE("admissible partitions for n = 6 with the named filter") {
  std::vector<Partition> unfiltered = enumerate_admissible(6, false);
  std::vector<Partition> filtered = enumerate_admissible(6, true);
  CHECK(unfiltered.size() == 7);
  REQUIRE(filtered.size() == 6);

  Partition excluded = make_partition(6, {{0}, {1, 5}, {2, 4}, {3}});
  CHECK(double_decomposition_6(excluded));
  for (const Partition& p : filtered) CHECK_FALSE(p == excluded);

  auto contains = [&](const Partition& p) {
    for (const Partition& f : filtered)
      if (f == p) return true;
    return false;
  };
  CHECK(contains(make_partition(6, {{0}, {1}, {2}, {3}, {4}, {5}})));
  CHECK(contains(make_partition(6, {{0}, {1, 3, 5}, {2}, {4}})));
  CHECK(contains(make_partition(6, {{0}, {1, 4}, {2, 5}, {3}})));
  CHECK(contains(make_partition(6, {{0}, {1, 2, 4, 5}, {3}})));
  CHECK(contains(make_partition(6, {{0}, {1, 3, 5}, {2, 4}})));
  CHECK(contains(make_partition(6, {{0}, {1, 2, 3, 4, 5}})));
}

TEST_CASE("dual is an involution on the admissible lists") {
  for (int n : {5, 6, 7}) {
    for (const Partition& p : enumerate_admissible(n, n == 6)) {
      Partition d = dual_partition(p);
      CHECK(d.q() == p.q());
      CHECK(dual_partition(d).q() == p.q());
    }
  }
}

TEST_CASE("enumeration is deterministic") {
  CHECK(enumerate_admissible(8, false) == enumerate_admissible(8, false));
}

namespace {

// Independent A3 oracle: greedily peel whole blocks off the sum multiset.
bool decomposes_into_blocks(std::vector<long> mult, const Partition& p) {
  while (true) {
    int first = -1;
    for (int x = 0; x < p.n; ++x)
      if (mult[x] != 0) {
        first = x;
        break;
      }
    if (first < 0) return true;
    if (mult[first] < 0) return false;
    const auto& blk = p.blocks[p.block_of(first)];
    for (int x : blk) {
      if (mult[x] <= 0) return false;
      --mult[x];
    }
  }
}

}  // namespace

TEST_CASE("A3 agrees with a brute-force multiset decomposer") {
  std::mt19937_64 rng(101);
  for (int trial = 0; trial < 200; ++trial) {
    int n = 4 + int(rng() % 7);
    // random partition containing {0}
    std::vector<std::vector<int>> blocks{{0}};
    std::vector<int> labels(n - 1);
    int used = 0;
    for (int i = 0; i < n - 1; ++i) {
      labels[i] = int(rng() % (used + 1));
      used = std::max(used, labels[i] + 1);
    }
    blocks.resize(1 + used);
    for (int i = 0; i < n - 1; ++i) blocks[1 + labels[i]].push_back(i + 1);
    Partition p = make_partition(n, blocks);

    bool expected = true;
    for (int j = 0; j < p.q() && expected; ++j)
      for (int k = j; k < p.q() && expected; ++k) {
        std::vector<long> mult(n, 0);
        for (int x : p.blocks[j])
          for (int y : p.blocks[k]) ++mult[(x + y) % n];
        expected = decomposes_into_blocks(mult, p);
      }
    CHECK(check_conditions(p).a3 == expected);
  }
}
