#include "blaschke/commutant.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/SVD>

#include "blaschke/roots.hpp"

namespace blaschke {

namespace {

// Monic coefficients (ascending) of the polynomial whose roots have the
// given power sums p[k-1] = sum rho^k, via Newton's identities.
poly::Coeffs coeffs_from_power_sums(const std::vector<Cplx>& p) {
  const int m = int(p.size());
  std::vector<Cplx> e(m + 1, Cplx(0, 0));
  e[0] = Cplx(1, 0);
  for (int k = 1; k <= m; ++k) {
    Cplx acc(0, 0);
    for (int i = 1; i <= k; ++i) acc += ((i % 2) ? 1.0 : -1.0) * e[k - i] * p[i - 1];
    e[k] = acc / double(k);
  }
  poly::Coeffs c(m + 1);
  for (int j = 0; j <= m; ++j) c(j) = (((m - j) % 2) ? Cplx(-1, 0) : Cplx(1, 0)) * e[m - j];
  return c;
}

// Consume the pool entry nearest to v; tol guards against mismatches.
Cplx take_nearest(std::vector<Cplx>& pool, Cplx v, double tol) {
  int best = -1;
  double d = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < pool.size(); ++i) {
    double di = std::abs(pool[i] - v);
    if (di < d) {
      d = di;
      best = int(i);
    }
  }
  if (best < 0 || d > tol)
    throw Error("block_point_data: recovered value does not match the fiber over 0");
  Cplx out = pool[best];
  pool.erase(pool.begin() + best);
  return out;
}

void sort_lex(std::vector<Cplx>& v) {
  std::sort(v.begin(), v.end(), [](Cplx a, Cplx b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
}

}  // namespace

BlockPointData block_point_data(const BlaschkeProduct& b, const LabeledFiber& fiber,
                                const Partition& partition, const ToolConfig& cfg,
                                const BranchSet* E) {
  BranchSet local;
  if (!E) {
    local = branch_points(b, cfg.cluster_eps);
    E = &local;
  }
  const int n = b.order();
  const int q = partition.q();

  BlockPointData data;
  data.multisets.resize(q);

  // sigma from A2 on the label sets.
  data.inverse_block.assign(q, -1);
  for (int i = 0; i < q; ++i) {
    std::vector<int> neg;
    for (int x : partition.blocks[i]) neg.push_back((n - x) % n);
    std::sort(neg.begin(), neg.end());
    for (int k = 0; k < q; ++k)
      if (partition.blocks[k] == neg) data.inverse_block[i] = k;
    if (data.inverse_block[i] < 0)
      throw InverseBlockMissing("block_point_data: no block matches the negated labels");
  }

  std::vector<Cplx> pool = preimages(b, eval(b, Cplx(0, 0)));
  // Multiple roots of the fiber polynomial scatter by roughly the m-th root
  // of the solver residual, symmetrically about the true root; fold each
  // cluster onto its centroid so multiplicities survive into the constraint
  // matrices.
  constexpr double kRootResolution = 1e-4;
  {
    std::vector<bool> used(pool.size(), false);
    for (std::size_t i = 0; i < pool.size(); ++i) {
      if (used[i]) continue;
      std::vector<std::size_t> members{i};
      used[i] = true;
      for (std::size_t j = i + 1; j < pool.size(); ++j)
        if (!used[j] && std::abs(pool[j] - pool[i]) < kRootResolution) {
          members.push_back(j);
          used[j] = true;
        }
      Cplx centroid(0, 0);
      for (std::size_t k : members) centroid += pool[k];
      centroid /= double(members.size());
      for (std::size_t k : members) pool[k] = centroid;
    }
  }
  double pool_gap = std::numeric_limits<double>::infinity();
  {
    std::vector<Cplx> distinct;
    for (Cplx v : pool) {
      bool seen = false;
      for (Cplx w : distinct) seen = seen || std::abs(v - w) < cfg.cluster_eps;
      if (!seen) distinct.push_back(v);
    }
    for (std::size_t i = 0; i < distinct.size(); ++i)
      for (std::size_t j = i + 1; j < distinct.size(); ++j)
        pool_gap = std::min(pool_gap, std::abs(distinct[i] - distinct[j]));
  }
  double snap_tol = std::min(1e-2, 0.45 * pool_gap);

  FiberValues at0 = local_inverse_values(b, fiber, Cplx(0, 0), cfg, E);
  if (!at0.on_branch) {
    for (int i = 0; i < q; ++i)
      for (int j : partition.blocks[i])
        data.multisets[i].push_back(take_nearest(pool, at0.values[j], snap_tol));
  } else {
    // The origin is a branch point: per-block power sums are single valued
    // analytic functions, recovered by circular means; the block multisets
    // are the roots of the implied monic polynomials. The largest block is
    // recovered by subtraction so its (possibly high) degree never enters a
    // root solve.
    std::vector<int> order(q);
    for (int i = 0; i < q; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](int x, int y) {
      return partition.blocks[x].size() < partition.blocks[y].size();
    });
    int largest = order.back();

    int max_power = 0;
    for (int i : order)
      if (i != largest) max_power = std::max(max_power, int(partition.blocks[i].size()));

    std::vector<std::function<Cplx(Cplx)>> monomials;
    for (int k = 0; k < std::max(max_power, 1); ++k)
      monomials.push_back([k](Cplx w) {
        Cplx acc(1, 0);
        for (int e = 0; e < k; ++e) acc *= w;
        return acc;
      });
    // sums[k][i] = sum_{j in G_i} rho_j(0)^(k+1)
    std::vector<std::vector<Cplx>> sums =
        block_sums_at(b, fiber, partition, Cplx(0, 0), monomials, cfg, E);

    for (int i : order) {
      if (i == largest) continue;
      const int m = int(partition.blocks[i].size());
      std::vector<Cplx> powers(m);
      for (int k = 0; k < m; ++k) powers[k] = sums[k][i];
      if (m == 1) {
        data.multisets[i].push_back(take_nearest(pool, powers[0], snap_tol));
        continue;
      }
      std::vector<Cplx> roots = poly_roots(coeffs_from_power_sums(powers));
      for (Cplx r : roots) data.multisets[i].push_back(take_nearest(pool, r, snap_tol));
    }
    data.multisets[largest] = pool;
    pool.clear();
    // Consistency: the leftover multiset must reproduce the block sum.
    Cplx s1(0, 0);
    for (Cplx v : data.multisets[largest]) s1 += v;
    if (std::abs(s1 - sums[0][largest]) > 1e-5)
      throw Error("block_point_data: leftover multiset disagrees with its block sum");
  }

  for (auto& ms : data.multisets) sort_lex(ms);

  // The identity label sits in its block, so that block must contain 0.
  int id_block = partition.block_of(0);
  bool has_zero = std::any_of(data.multisets[id_block].begin(),
                              data.multisets[id_block].end(),
                              [&](Cplx v) { return std::abs(v) < 1e-6; });
  if (!has_zero)
    throw Error("block_point_data: identity block misses the origin value");
  return data;
}

ConstraintSystem constraint_matrices(const BlockPointData& data, double cluster_eps) {
  ConstraintSystem sys;
  const int q = int(data.multisets.size());

  for (const auto& ms : data.multisets)
    for (Cplx v : ms) {
      bool seen = false;
      for (Cplx w : sys.distinct_points) seen = seen || std::abs(v - w) < cluster_eps;
      if (!seen) sys.distinct_points.push_back(v);
    }
  sort_lex(sys.distinct_points);

  const int rows = int(sys.distinct_points.size());
  auto mult_of = [&](int block, Cplx p) {
    int count = 0;
    for (Cplx v : data.multisets[block])
      if (std::abs(v - p) < cluster_eps) ++count;
    return count;
  };

  sys.m = Eigen::MatrixXcd::Zero(rows, q);
  sys.n = Eigen::MatrixXcd::Zero(rows, q);
  for (int r = 0; r < rows; ++r) {
    Cplx p = sys.distinct_points[r];
    for (int i = 0; i < q; ++i) {
      sys.m(r, i) = p * double(mult_of(i, p));
      sys.n(r, i) = std::conj(p) * double(mult_of(data.inverse_block[i], p));
    }
  }
  return sys;
}

DirichletReport dirichlet_dim(const BlaschkeProduct& b, const MonodromyReport& mono,
                              const ToolConfig& cfg) {
  DirichletReport rep;
  rep.partition = mono.partition;
  rep.rank_tol = cfg.rank_tol;
  rep.cluster_eps = cfg.cluster_eps;
  rep.block_data = block_point_data(b, mono.fiber, mono.partition, cfg, &mono.branch_set);

  ConstraintSystem sys = constraint_matrices(rep.block_data, cfg.cluster_eps);
  rep.distinct_points = sys.distinct_points;
  rep.matrix_m = sys.m;
  rep.matrix_n = sys.n;

  const int q = mono.partition.q();
  Eigen::MatrixXcd stacked(sys.m.rows() + sys.n.rows(), q);
  stacked << sys.m, sys.n;

  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(stacked, Eigen::ComputeFullV);
  Eigen::VectorXd sv = svd.singularValues();
  double smax = sv.size() ? sv(0) : 0.0;

  if (smax == 0.0) {
    rep.rank = 0;
    rep.spectral_gap = std::numeric_limits<double>::infinity();
  } else {
    double threshold = cfg.rank_tol * smax;
    int rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
      if (sv(i) > threshold) ++rank;
    rep.rank = rank;
    double kept = rank > 0 ? sv(rank - 1) / threshold : std::numeric_limits<double>::infinity();
    double dropped = rank < sv.size() && sv(rank) > 0.0
                         ? threshold / sv(rank)
                         : std::numeric_limits<double>::infinity();
    rep.spectral_gap = std::min(kept, dropped);
    for (Eigen::Index i = 0; i < sv.size(); ++i)
      if (sv(i) > threshold / 10.0 && sv(i) < threshold * 10.0) rep.ill_conditioned = true;
  }

  rep.dim = q - rep.rank;
  rep.reducible = rep.dim > 1;
  rep.coefficient_basis = svd.matrixV().rightCols(rep.dim);
  return rep;
}

DirichletReport dirichlet_dim(const BlaschkeProduct& b, const ToolConfig& cfg) {
  MonodromyReport mono = monodromy(b, cfg);
  return dirichlet_dim(b, mono, cfg);
}

Cplx xi_apply(const BlaschkeProduct& b, const LabeledFiber& fiber,
              const std::vector<int>& block, const std::function<Cplx(Cplx)>& f, Cplx z,
              const ToolConfig& cfg, const BranchSet* E) {
  FiberValues vals = local_inverse_values(b, fiber, z, cfg, E);
  if (vals.on_branch) throw NearBranchPoint("xi_apply: z is within safety_eps of E");
  Cplx dz = eval_derivative(b, z);
  Cplx acc(0, 0);
  for (int j : block) {
    Cplx w = vals.values[j];
    acc += f(w) * dz / eval_derivative(b, w);
  }
  return acc;
}

Cplx t_apply(const BlaschkeProduct& b, const LabeledFiber& fiber,
             const Partition& partition, const std::vector<Cplx>& a,
             const std::function<Cplx(Cplx)>& f, Cplx z, const ToolConfig& cfg,
             const BranchSet* E) {
  BranchSet local;
  if (!E) {
    local = branch_points(b, cfg.cluster_eps);
    E = &local;
  }
  const int q = partition.q();
  if (int(a.size()) != q) throw Error("t_apply: coefficient count differs from q");

  std::vector<Cplx> f0 = block_sum_at(b, fiber, partition, Cplx(0, 0), f, cfg, E);

  auto combine = [&](const std::vector<Cplx>& fz, Cplx at) {
    Cplx acc(0, 0);
    for (int i = 0; i < q; ++i) acc += a[i] * (fz[i] - f0[i]) / at;
    return acc;
  };

  if (std::abs(z) > 1e-9) {
    std::vector<Cplx> fz = block_sum_at(b, fiber, partition, z, f, cfg, E);
    return combine(fz, z);
  }

  // Limit at the origin: circular mean of the difference quotient, on a
  // circle pushed out of every branch point's shadow shell.
  double radius = cfg.mean_circle_radius;
  for (int pass = 0; pass < 16; ++pass) {
    bool ok = true;
    for (std::size_t i = 0; i < E->points.size(); ++i) {
      double need = std::max(cfg.safety_eps, 1.1 * E->shadow_of(i));
      if (std::abs(std::abs(E->points[i]) - radius) < need) {
        radius = std::abs(E->points[i]) + 1.05 * need;
        ok = false;
      }
    }
    if (ok) break;
  }

  Cplx acc(0, 0);
  const int samples = cfg.mean_samples;
  for (int k = 0; k < samples; ++k) {
    double th = 2.0 * std::numbers::pi * (k + 0.25) / samples;
    Cplx s = radius * Cplx(std::cos(th), std::sin(th));
    std::vector<Cplx> fs = block_sum_at(b, fiber, partition, s, f, cfg, E);
    acc += combine(fs, s);
  }
  return acc / double(samples);
}

}  // namespace blaschke
