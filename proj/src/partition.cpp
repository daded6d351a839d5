#include "blaschke/partition.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace blaschke {

namespace {

constexpr double kCharSumTol = 1e-9;

struct UnionFind {
  std::vector<int> parent, size;
  explicit UnionFind(int n) : parent(n), size(n, 1) {
    for (int i = 0; i < n; ++i) parent[i] = i;
  }
  int find(int i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (size[a] < size[b]) std::swap(a, b);
    parent[b] = a;
    size[a] += size[b];
  }
};

}  // namespace

void Partition::canonicalize() {
  for (auto& blk : blocks) std::sort(blk.begin(), blk.end());
  std::sort(blocks.begin(), blocks.end(),
            [](const std::vector<int>& a, const std::vector<int>& b) {
              return a.front() < b.front();
            });
}

int Partition::block_of(int x) const {
  for (int i = 0; i < q(); ++i)
    if (std::binary_search(blocks[i].begin(), blocks[i].end(), x)) return i;
  throw Error("Partition::block_of: element not covered");
}

Partition make_partition(int n, std::vector<std::vector<int>> blocks) {
  if (n <= 0) throw Error("make_partition: n must be positive");
  Partition p{n, std::move(blocks)};
  std::vector<int> seen(n, 0);
  for (const auto& blk : p.blocks) {
    if (blk.empty()) throw Error("make_partition: empty block");
    for (int x : blk) {
      if (x < 0 || x >= n) throw Error("make_partition: element out of range");
      if (seen[x]++) throw Error("make_partition: element repeated");
    }
  }
  for (int x = 0; x < n; ++x)
    if (!seen[x]) throw Error("make_partition: element missing");
  p.canonicalize();
  return p;
}

Partition orbit_partition(int n, const std::vector<std::vector<int>>& generator_images) {
  UnionFind uf(n);
  for (const auto& images : generator_images) {
    if (int(images.size()) != n) throw Error("orbit_partition: generator size mismatch");
    for (int i = 0; i < n; ++i) uf.unite(i, images[i]);
  }
  std::vector<std::vector<int>> groups(n);
  for (int i = 0; i < n; ++i) groups[uf.find(i)].push_back(i);
  Partition p{n, {}};
  for (auto& g : groups)
    if (!g.empty()) p.blocks.push_back(std::move(g));
  p.canonicalize();
  return p;
}

Partition dual_partition(const Partition& p) {
  const int n = p.n;
  const int q = p.q();
  // Character sums S(k, j) = sum_{i in G_k} omega^{ij}.
  std::vector<std::vector<Cplx>> sums(n, std::vector<Cplx>(q));
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < q; ++k) {
      Cplx s(0, 0);
      for (int i : p.blocks[k]) {
        double t = 2.0 * std::numbers::pi * double(i) * double(j) / double(n);
        s += Cplx(std::cos(t), std::sin(t));
      }
      sums[j][k] = s;
    }

  UnionFind uf(n);
  for (int j1 = 0; j1 < n; ++j1)
    for (int j2 = j1 + 1; j2 < n; ++j2) {
      bool equal = true;
      for (int k = 0; k < q && equal; ++k)
        equal = std::abs(sums[j1][k] - sums[j2][k]) < kCharSumTol;
      if (equal) uf.unite(j1, j2);
    }
  std::vector<std::vector<int>> groups(n);
  for (int j = 0; j < n; ++j) groups[uf.find(j)].push_back(j);
  Partition d{n, {}};
  for (auto& g : groups)
    if (!g.empty()) d.blocks.push_back(std::move(g));
  d.canonicalize();
  return d;
}

namespace {

bool a2_holds(const Partition& p) {
  const int n = p.n;
  for (const auto& blk : p.blocks) {
    std::vector<int> neg;
    for (int x : blk) neg.push_back((n - x) % n);
    std::sort(neg.begin(), neg.end());
    bool found = std::any_of(p.blocks.begin(), p.blocks.end(),
                             [&](const std::vector<int>& b) { return b == neg; });
    if (!found) return false;
  }
  return true;
}

// A3: the multiset G_j + G_k splits into whole blocks exactly when every
// element of a block occurs with the same multiplicity in the sum.
bool a3_holds(const Partition& p) {
  const int n = p.n;
  for (int j = 0; j < p.q(); ++j)
    for (int k = j; k < p.q(); ++k) {
      std::vector<long> mult(n, 0);
      for (int x : p.blocks[j])
        for (int y : p.blocks[k]) ++mult[(x + y) % n];
      for (const auto& blk : p.blocks) {
        long m0 = mult[blk.front()];
        for (int x : blk)
          if (mult[x] != m0) return false;
      }
    }
  return true;
}

}  // namespace

ConditionReport check_conditions(const Partition& p) {
  ConditionReport r;
  r.a1 = std::any_of(p.blocks.begin(), p.blocks.end(),
                     [](const std::vector<int>& b) { return b == std::vector<int>{0}; });
  r.a2 = a2_holds(p);
  r.a3 = a3_holds(p);
  r.a4 = dual_partition(p).q() == p.q();
  return r;
}

std::vector<std::vector<int>> subgroup_unions(const Partition& p) {
  const int n = p.n;
  std::vector<std::vector<int>> result;
  for (int d = 2; d < n; ++d) {
    if (n % d != 0) continue;
    // The unique subgroup of order d is generated by n/d.
    std::vector<int> sub;
    for (int k = 0; k < d; ++k) sub.push_back(k * (n / d));
    std::sort(sub.begin(), sub.end());
    bool is_union = true;
    std::vector<char> inside(n, 0);
    for (int x : sub) inside[x] = 1;
    for (int x : sub) {
      for (int y : p.blocks[p.block_of(x)])
        if (!inside[y]) {
          is_union = false;
          break;
        }
      if (!is_union) break;
    }
    if (is_union) result.push_back(sub);
  }
  std::sort(result.begin(), result.end(),
            [](const std::vector<int>& a, const std::vector<int>& b) {
              if (a.size() != b.size()) return a.size() < b.size();
              return a < b;
            });
  return result;
}

bool double_decomposition_6(const Partition& p) {
  if (p.n != 6) return false;
  return p == make_partition(6, {{0}, {1, 5}, {2, 4}, {3}});
}

std::vector<Partition> enumerate_admissible(int n, bool apply_double_decomposition_filter) {
  if (n < 2 || n > 12) throw Error("enumerate_admissible: n must be in [2, 12]");

  // Exhaust set partitions of {1, ..., n-1} via restricted growth strings;
  // {0} is always its own block (A1).
  std::vector<Partition> out;
  const int m = n - 1;
  std::vector<int> label(m, 0);

  auto emit = [&]() {
    int q = 1 + *std::max_element(label.begin(), label.end()) + 1;
    std::vector<std::vector<int>> blocks(q);
    blocks[0] = {0};
    for (int i = 0; i < m; ++i) blocks[1 + label[i]].push_back(i + 1);
    Partition p = make_partition(n, std::move(blocks));
    // A2 rejects the bulk of candidates and is far cheaper than the dual
    // computation, so stage the checks.
    if (!a2_holds(p)) return;
    if (!a3_holds(p)) return;
    if (dual_partition(p).q() != p.q()) return;
    if (apply_double_decomposition_filter && double_decomposition_6(p)) return;
    out.push_back(std::move(p));
  };

  // Iterate restricted growth strings: label[i] <= 1 + max(label[0..i-1]).
  while (true) {
    emit();
    int i = m - 1;
    for (; i >= 0; --i) {
      int cap = 0;
      for (int j = 0; j < i; ++j) cap = std::max(cap, label[j] + 1);
      if (label[i] < cap) {
        ++label[i];
        std::fill(label.begin() + i + 1, label.end(), 0);
        break;
      }
    }
    if (i < 0) break;
  }

  std::sort(out.begin(), out.end(), [](const Partition& a, const Partition& b) {
    if (a.q() != b.q()) return a.q() > b.q();
    return a.blocks < b.blocks;
  });
  return out;
}

}  // namespace blaschke
