#ifndef BLASCHKE_CONTINUATION_HPP
#define BLASCHKE_CONTINUATION_HPP

#include <functional>
#include <vector>

#include "blaschke/partition.hpp"
#include "blaschke/product.hpp"
#include "blaschke/roots.hpp"
#include "blaschke/types.hpp"

namespace blaschke {

/// A path for numerical continuation. Kinds:
///   segment           anchors = {a, b}
///   circle            anchors = {center, entry}; one full turn
///   polyline          anchors = waypoints
///   image_circle_lift anchors = {start}; the tracked point follows the
///                     full circle through phi(start) in the image plane
///                     (one lift advances every label by one)
struct PathSpec {
  enum class Kind { segment, circle, polyline, image_circle_lift };
  Kind kind = Kind::polyline;
  std::vector<Cplx> anchors;
  int orientation = 1;  // +1 counterclockwise
  double initial_step = 1e-2;
};

/// The fiber of phi^-1(phi(base)) in the intrinsic label order:
/// values[j] = rho_j(base), values[0] = base.
struct LabeledFiber {
  Cplx base;
  std::vector<Cplx> values;
  Cplx phi_value;

  int size() const { return int(values.size()); }
  double min_separation() const;
};

struct Permutation {
  std::vector<int> images;

  static Permutation identity(int n);
  bool is_identity() const;
  void validate() const;
  int size() const { return int(images.size()); }
};

/// One planned monodromy loop: a closed polyline from the base around a
/// branch point (or a cluster of branch points closer than 4*safety_eps).
struct LoopPlan {
  Cplx about;
  double radius = 0.0;
  bool merged = false;
  std::vector<Cplx> enclosed;
  PathSpec path;
};

struct MonodromyReport {
  BranchSet branch_set;
  LabeledFiber fiber;
  std::vector<LoopPlan> loops;
  std::vector<Permutation> generators;
  Partition partition;
  int q = 0;
  Permutation boundary_label_perm;
  bool overlapping_loops = false;
};

/// Continue every fiber value along the path. When E is given, the path is
/// checked against the safety margin first.
LabeledFiber track_fiber(const BlaschkeProduct& b, const PathSpec& path,
                         const LabeledFiber& fiber, const ToolConfig& cfg = {},
                         const BranchSet* E = nullptr);

/// Base point selection plus the image-circle lift labeling.
LabeledFiber label_fiber(const BlaschkeProduct& b, const ToolConfig& cfg = {});

/// Same labeling construction started from an arbitrary point of the level
/// set |phi| = |fiber.phi_value| (used to re-base the group-law checks).
LabeledFiber label_fiber_from(const BlaschkeProduct& b, Cplx start,
                              const ToolConfig& cfg = {});

std::vector<LoopPlan> plan_loops(const BranchSet& E, Cplx base,
                                 const ToolConfig& cfg = {});

MonodromyReport monodromy(const BlaschkeProduct& b, const ToolConfig& cfg = {});

/// Per-label fiber values at a target off the branch set; on_branch is set
/// (and values left empty) when the target is within safety_eps of E.
struct FiberValues {
  bool on_branch = false;
  std::vector<Cplx> values;
};

FiberValues local_inverse_values(const BlaschkeProduct& b, const LabeledFiber& fiber,
                                 Cplx target, const ToolConfig& cfg = {},
                                 const BranchSet* E = nullptr);

/// Block sums F_i(target) = sum_{j in G_i} f(rho_j(target)) rho_j(target).
/// On the branch set the analytic extension is evaluated as the circular
/// mean over |z - target| = mean_circle_radius.
std::vector<Cplx> block_sum_at(const BlaschkeProduct& b, const LabeledFiber& fiber,
                               const Partition& partition, Cplx target,
                               const std::function<Cplx(Cplx)>& f,
                               const ToolConfig& cfg = {}, const BranchSet* E = nullptr);

/// Several test functions in one tracking pass; result[k][i] = F_i under f_k.
std::vector<std::vector<Cplx>> block_sums_at(
    const BlaschkeProduct& b, const LabeledFiber& fiber, const Partition& partition,
    Cplx target, const std::vector<std::function<Cplx(Cplx)>>& fs,
    const ToolConfig& cfg = {}, const BranchSet* E = nullptr);

}  // namespace blaschke

#endif
