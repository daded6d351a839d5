#ifndef BLASCHKE_COMMUTANT_HPP
#define BLASCHKE_COMMUTANT_HPP

#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "blaschke/continuation.hpp"
#include "blaschke/partition.hpp"
#include "blaschke/product.hpp"
#include "blaschke/types.hpp"

namespace blaschke {

/// Per-block multisets of local-inverse values at the origin, plus the
/// involution pairing each block with its inverse block.
struct BlockPointData {
  std::vector<std::vector<Cplx>> multisets;
  std::vector<int> inverse_block;
};

BlockPointData block_point_data(const BlaschkeProduct& b, const LabeledFiber& fiber,
                                const Partition& partition, const ToolConfig& cfg = {},
                                const BranchSet* E = nullptr);

struct ConstraintSystem {
  std::vector<Cplx> distinct_points;
  Eigen::MatrixXcd m;  // rows: points, cols: blocks; entry p * mult_i(p)
  Eigen::MatrixXcd n;  // entry conj(p) * mult_{sigma(i)}(p)
};

ConstraintSystem constraint_matrices(const BlockPointData& data, double cluster_eps);

struct DirichletReport {
  Partition partition;
  BlockPointData block_data;
  std::vector<Cplx> distinct_points;
  Eigen::MatrixXcd matrix_m, matrix_n;
  int rank = 0;
  int dim = 0;
  bool reducible = false;
  Eigen::MatrixXcd coefficient_basis;  // columns span the null space
  /// Smallest ratio across the rank threshold; infinity when one side is empty.
  double spectral_gap = 0.0;
  bool ill_conditioned = false;
  double rank_tol = 0.0;
  double cluster_eps = 0.0;
};

/// Null-space dimension of the stacked constraint system, computed from a
/// full monodromy run.
DirichletReport dirichlet_dim(const BlaschkeProduct& b, const ToolConfig& cfg = {});
DirichletReport dirichlet_dim(const BlaschkeProduct& b, const MonodromyReport& mono,
                              const ToolConfig& cfg = {});

/// xi f(z) = sum_{j in block} f(rho_j(z)) rho_j'(z), with
/// rho' = phi'(z) / phi'(rho(z)).
Cplx xi_apply(const BlaschkeProduct& b, const LabeledFiber& fiber,
              const std::vector<int>& block, const std::function<Cplx(Cplx)>& f, Cplx z,
              const ToolConfig& cfg = {}, const BranchSet* E = nullptr);

/// T f(z) = sum_i a_i (F_i(z) - F_i(0)) / z; the z = 0 value is the circular
/// mean of the quotient on |z| = mean_circle_radius.
Cplx t_apply(const BlaschkeProduct& b, const LabeledFiber& fiber,
             const Partition& partition, const std::vector<Cplx>& a,
             const std::function<Cplx(Cplx)>& f, Cplx z, const ToolConfig& cfg = {},
             const BranchSet* E = nullptr);

}  // namespace blaschke

#endif
