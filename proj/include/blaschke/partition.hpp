#ifndef BLASCHKE_PARTITION_HPP
#define BLASCHKE_PARTITION_HPP

#include <vector>

#include "blaschke/types.hpp"

namespace blaschke {

/// A partition of Z_n = {0, ..., n-1} into disjoint blocks. Canonical form:
/// each block sorted ascending, blocks ordered by their minimum element.
struct Partition {
  int n = 0;
  std::vector<std::vector<int>> blocks;

  int q() const { return int(blocks.size()); }
  void canonicalize();
  bool operator==(const Partition& other) const = default;

  /// Index of the block containing x.
  int block_of(int x) const;
};

Partition make_partition(int n, std::vector<std::vector<int>> blocks);

/// Partition of Z_n grouped by orbits of the generated permutation group
/// (union-find over generator images).
Partition orbit_partition(int n, const std::vector<std::vector<int>>& generator_images);

/// Residues j grouped by equality of all block character sums
/// sum_{i in G_k} omega^{ij}, omega = exp(2 pi i / n).
Partition dual_partition(const Partition& p);

struct ConditionReport {
  bool a1 = false;  // {0} is a block
  bool a2 = false;  // blocks closed under negation mod n
  bool a3 = false;  // pairwise block sums decompose into whole blocks
  bool a4 = false;  // dual partition has the same block count
  bool all() const { return a1 && a2 && a3 && a4; }
};

ConditionReport check_conditions(const Partition& p);

/// Nontrivial proper subgroups of Z_n that are unions of blocks of p,
/// ordered by subgroup size.
std::vector<std::vector<int>> subgroup_unions(const Partition& p);

/// Named n=6 exclusion: {{0},{1,5},{2,4},{3}} admits both the order-2 and the
/// order-3 subgroup as block unions, which would force two incompatible
/// composition chains.
bool double_decomposition_6(const Partition& p);

/// All partitions of Z_n passing A1-A4, optionally with the n=6 filter.
std::vector<Partition> enumerate_admissible(int n, bool apply_double_decomposition_filter);

}  // namespace blaschke

#endif
