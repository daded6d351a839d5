#ifndef BLASCHKE_ROOTS_HPP
#define BLASCHKE_ROOTS_HPP

#include <vector>

#include "blaschke/poly.hpp"
#include "blaschke/product.hpp"
#include "blaschke/types.hpp"

namespace blaschke {

/// Distinct branch points of a product, all inside the open disk.
struct BranchSet {
  std::vector<Cplx> points;
  /// Per point: the domain radius at which the image separates from the
  /// critical value by at least the tracking floor. Paths must clear each
  /// point by this much, since inside it the fiber is not resolvable in
  /// double precision (the image distance scales like dist^k at a point of
  /// local degree k).
  std::vector<double> shadow;
  /// Distinct critical values; trackers cap the image step by the distance
  /// to this set.
  std::vector<Cplx> critical_values;
  double cluster_eps = 1e-8;
  /// Set when two raw branch points were closer than 10 * cluster_eps,
  /// i.e. the clustering decision was tight.
  bool tight_clustering = false;

  double min_gap() const;
  double shadow_of(std::size_t i) const { return i < shadow.size() ? shadow[i] : 0.0; }
};

/// All deg roots of the polynomial (ascending coefficients), multiplicities
/// repeated. Companion-matrix eigenvalues followed by Newton polishing.
std::vector<Cplx> poly_roots(const poly::Coeffs& coeffs);

/// The n-1 critical points of b inside the open disk, with multiplicity.
std::vector<Cplx> critical_points(const BlaschkeProduct& b);

/// The n solutions of b(z) = v for |v| < 1, with multiplicity.
std::vector<Cplx> preimages(const BlaschkeProduct& b, Cplx v);

/// E = b^{-1}(b({critical points})), deduplicated with cluster_eps.
BranchSet branch_points(const BlaschkeProduct& b, double cluster_eps = 1e-8);

}  // namespace blaschke

#endif
