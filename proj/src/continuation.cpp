#include "blaschke/continuation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace blaschke {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double dist_point_segment(Cplx p, Cplx a, Cplx b) {
  Cplx ab = b - a;
  double len2 = std::norm(ab);
  if (len2 == 0.0) return std::abs(p - a);
  double t = std::clamp(((p - a) * std::conj(ab)).real() / len2, 0.0, 1.0);
  return std::abs(p - (a + t * ab));
}

// One parametrized path piece, t in [0, 1].
struct Piece {
  enum class Type { segment, arc } type = Type::segment;
  Cplx a, b;              // segment endpoints
  Cplx center;            // arc data
  double radius = 0.0, th0 = 0.0, th1 = 0.0;

  Cplx at(double t) const {
    if (type == Type::segment) return a + t * (b - a);
    double th = th0 + t * (th1 - th0);
    return center + radius * Cplx(std::cos(th), std::sin(th));
  }
};

std::vector<Piece> compile_path(const PathSpec& path, Cplx phi_value) {
  std::vector<Piece> pieces;
  switch (path.kind) {
    case PathSpec::Kind::segment: {
      if (path.anchors.size() != 2) throw Error("segment path needs two anchors");
      pieces.push_back({Piece::Type::segment, path.anchors[0], path.anchors[1]});
      break;
    }
    case PathSpec::Kind::polyline: {
      if (path.anchors.size() < 2) throw Error("polyline path needs two anchors");
      for (std::size_t i = 0; i + 1 < path.anchors.size(); ++i)
        pieces.push_back({Piece::Type::segment, path.anchors[i], path.anchors[i + 1]});
      break;
    }
    case PathSpec::Kind::circle: {
      if (path.anchors.size() != 2) throw Error("circle path needs center and entry");
      Cplx center = path.anchors[0], entry = path.anchors[1];
      double r = std::abs(entry - center);
      if (r <= 0) throw Error("circle path needs positive radius");
      double th0 = std::arg(entry - center);
      double th1 = th0 + (path.orientation >= 0 ? kTwoPi : -kTwoPi);
      Piece p;
      p.type = Piece::Type::arc;
      p.center = center;
      p.radius = r;
      p.th0 = th0;
      p.th1 = th1;
      pieces.push_back(p);
      break;
    }
    case PathSpec::Kind::image_circle_lift: {
      // Realized directly in the image plane; represented as an arc around
      // the image origin through phi_value.
      Piece p;
      p.type = Piece::Type::arc;
      p.center = Cplx(0, 0);
      p.radius = std::abs(phi_value);
      p.th0 = std::arg(phi_value);
      p.th1 = p.th0 + (path.orientation >= 0 ? kTwoPi : -kTwoPi);
      pieces.push_back(p);
      break;
    }
  }
  return pieces;
}

double min_sep(const std::vector<Cplx>& ws) {
  double m = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < ws.size(); ++i)
    for (std::size_t j = i + 1; j < ws.size(); ++j)
      m = std::min(m, std::abs(ws[i] - ws[j]));
  return m;
}

enum class StepFail { none, newton, hop, collision, image_step };

// Advance all sheets from phi-value `from` to `to`; returns the failure kind.
StepFail try_step(const BlaschkeProduct& b, std::vector<Cplx>& ws, Cplx from, Cplx to,
                  double newton_tol) {
  const std::size_t n = ws.size();
  std::vector<Cplx> next(n);
  for (std::size_t j = 0; j < n; ++j) {
    double own_sep = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < n; ++k)
      if (k != j) own_sep = std::min(own_sep, std::abs(ws[k] - ws[j]));

    Cplx w = ws[j];
    Cplx dphi = eval_derivative(b, w);
    if (std::abs(dphi) > 1e-13) {
      Cplx predict = (to - from) / dphi;
      // A predictor that overshoots the sheet spacing invites the corrector
      // to land on a neighbour.
      if (std::abs(predict) > 0.4 * own_sep) return StepFail::hop;
      w += predict;
    }

    bool converged = false;
    for (int it = 0; it < 5; ++it) {
      Cplx f = eval(b, w) - to;
      if (std::abs(f) < newton_tol) {
        converged = true;
        break;
      }
      Cplx df = eval_derivative(b, w);
      if (std::abs(df) < 1e-13) break;
      Cplx delta = f / df;
      if (!is_finite(delta) || std::abs(delta) > 0.3) break;
      w -= delta;
    }
    if (!converged && std::abs(eval(b, w) - to) >= newton_tol) return StepFail::newton;
    // A corrected point that moved by a sizable fraction of the sheet gap
    // may have hopped to a neighbouring sheet.
    if (n > 1 && std::abs(w - ws[j]) > 0.45 * own_sep) return StepFail::hop;
    next[j] = w;
  }
  if (n > 1 && min_sep(next) < 10.0 * newton_tol) return StepFail::collision;
  ws = std::move(next);
  return StepFail::none;
}

// Track the fiber along one piece (its image under eval). Near a critical
// value the fiber sheets rotate at a rate set by the image distance, so the
// image step is capped by the distance to the critical value set.
void track_piece(const BlaschkeProduct& b, const Piece& piece, bool image_space,
                 std::vector<Cplx>& ws, const ToolConfig& cfg,
                 const std::vector<Cplx>& critical_values) {
  auto gamma = [&](double t) {
    Cplx z = piece.at(t);
    return image_space ? z : eval(b, z);
  };
  const double h0 = cfg.initial_step;
  const double h_min = h0 * std::pow(0.5, 40);
  double t = 0.0, h = h0;
  Cplx cur = gamma(0.0);
  int streak = 0;
  while (t < 1.0) {
    double hh = std::min(h, 1.0 - t);
    Cplx target = gamma(t + hh);

    double cv_dist = std::numeric_limits<double>::infinity();
    for (Cplx v : critical_values) cv_dist = std::min(cv_dist, std::abs(cur - v));
    StepFail fail = std::abs(target - cur) > 0.3 * cv_dist
                        ? StepFail::image_step
                        : try_step(b, ws, cur, target, cfg.newton_tol);
    if (fail == StepFail::none) {
      t += hh;
      cur = target;
      if (++streak >= 4 && h < h0) {
        h = std::min(h0, 2.0 * h);
        streak = 0;
      }
    } else {
      h *= 0.5;
      streak = 0;
      if (h < h_min) {
        if (fail == StepFail::collision || fail == StepFail::hop)
          throw TrackingCollision("tracking: sheets merged below minimal step");
        throw MinStepReached("tracking: corrector failed at minimal step");
      }
    }
  }
}

void check_path_clearance(const std::vector<Piece>& pieces, const BranchSet& E,
                          double safety_eps) {
  for (const Piece& p : pieces) {
    for (std::size_t i = 0; i < E.points.size(); ++i) {
      Cplx e = E.points[i];
      double margin = std::max(0.85 * safety_eps, 0.8 * E.shadow_of(i));
      double d;
      if (p.type == Piece::Type::segment) {
        d = dist_point_segment(e, p.a, p.b);
      } else {
        d = std::numeric_limits<double>::infinity();
        for (int k = 0; k <= 64; ++k) d = std::min(d, std::abs(p.at(k / 64.0) - e));
      }
      if (d < margin)
        throw PathTooCloseToBranchPoint("path passes a branch point at distance " +
                                        std::to_string(d) + " (margin " +
                                        std::to_string(margin) + ")");
    }
  }
}

// Short-way interpolation between unit directions.
Cplx slerp_dir(Cplx from, Cplx to, double t) {
  double sweep = std::arg(to / from);
  return from * Cplx(std::cos(t * sweep), std::sin(t * sweep));
}

struct Obstacle {
  Cplx point;
  double clearance;
};

std::vector<Obstacle> obstacles_from(const BranchSet& E, double safety_eps) {
  std::vector<Obstacle> out;
  out.reserve(E.points.size());
  for (std::size_t i = 0; i < E.points.size(); ++i)
    out.push_back({E.points[i], std::max(2.0 * safety_eps, 1.15 * E.shadow_of(i))});
  return out;
}

// Straight run from a to b with clearance arcs around any obstacle closer
// than its clearance to the segment. Obstacles hugging an endpoint get a
// proportionally smaller arc so the run can still terminate there.
std::vector<Cplx> detoured_segment(Cplx a, Cplx b, const std::vector<Obstacle>& obstacles) {
  Cplx ab = b - a;
  double len = std::abs(ab);
  if (len < 1e-15) return {a, b};
  Cplx u = ab / len;

  struct Hit {
    double along;
    Cplx o;
    double c;
  };
  std::vector<Hit> hits;
  for (const Obstacle& obs : obstacles) {
    Cplx o = obs.point;
    double c = obs.clearance;
    if (std::abs(o - b) < 1.25 * c) c = std::min(c, 0.9 * std::abs(o - b));
    if (std::abs(o - a) < 1.25 * c) c = std::min(c, 0.9 * std::abs(o - a));
    if (dist_point_segment(o, a, b) >= c) continue;
    hits.push_back({((o - a) * std::conj(u)).real(), o, c});
  }
  std::sort(hits.begin(), hits.end(),
            [](const Hit& x, const Hit& y) { return x.along < y.along; });

  // Obstacles whose along-track intervals overlap are bypassed as one
  // group; separate arcs would reconnect straight through the gap.
  struct Group {
    Cplx center;
    double c;
    double along, s_lo, s_hi;
  };
  std::vector<Group> groups;
  for (const Hit& hit : hits) {
    double d = std::abs(((hit.o - a) * std::conj(u)).imag());
    double run = std::sqrt(std::max(hit.c * hit.c - d * d, 0.0)) + 1e-12;
    Group g{hit.o, hit.c, hit.along, hit.along - run, hit.along + run};
    if (!groups.empty() && g.s_lo <= groups.back().s_hi + 1e-12) {
      Group& prev = groups.back();
      Cplx center = 0.5 * (prev.center + hit.o);
      double c = std::max(std::abs(prev.center - center) + prev.c,
                          std::abs(hit.o - center) + hit.c);
      double along = ((center - a) * std::conj(u)).real();
      double dd = std::abs(((center - a) * std::conj(u)).imag());
      double rr = std::sqrt(std::max(c * c - dd * dd, 0.0)) + 1e-12;
      prev = {center, c, along, along - rr, along + rr};
    } else {
      groups.push_back(g);
    }
  }

  std::vector<Cplx> pts{a};
  for (const Group& g : groups) {
    double run = (g.s_hi - g.s_lo) * 0.525 + 1e-12;
    double s_in = std::clamp((g.along - run) / len, 0.0, 1.0);
    double s_out = std::clamp((g.along + run) / len, 0.0, 1.0);
    Cplx p_in = a + s_in * ab, p_out = a + s_out * ab;

    // Bulge away from the group center; a center on the line bulges left.
    double side = ((g.center - a) * std::conj(u)).imag() >= 0.0 ? 1.0 : -1.0;
    Cplx away = -side * Cplx(0, 1) * u;
    Cplx d_in = (p_in - g.center) / std::abs(p_in - g.center);
    Cplx d_out = (p_out - g.center) / std::abs(p_out - g.center);

    pts.push_back(p_in);
    for (int k = 1; k < 4; ++k)
      pts.push_back(g.center + g.c * slerp_dir(d_in, away, k / 4.0));
    for (int k = 0; k < 4; ++k)
      pts.push_back(g.center + g.c * slerp_dir(away, d_out, k / 4.0));
    pts.push_back(p_out);
  }
  pts.push_back(b);
  return pts;
}

}  // namespace

double LabeledFiber::min_separation() const { return min_sep(values); }

Permutation Permutation::identity(int n) {
  Permutation p;
  p.images.resize(n);
  for (int i = 0; i < n; ++i) p.images[i] = i;
  return p;
}

bool Permutation::is_identity() const {
  for (int i = 0; i < size(); ++i)
    if (images[i] != i) return false;
  return true;
}

void Permutation::validate() const {
  std::vector<char> seen(images.size(), 0);
  for (int v : images) {
    if (v < 0 || v >= size() || seen[v]) throw Error("Permutation: not a bijection");
    seen[v] = 1;
  }
}

namespace {

std::vector<Cplx> critical_values_of(const BlaschkeProduct& b) {
  std::vector<Cplx> out;
  for (Cplx c : critical_points(b)) {
    Cplx v = eval(b, c);
    bool seen = false;
    for (Cplx w : out) seen = seen || std::abs(v - w) < 1e-12;
    if (!seen) out.push_back(v);
  }
  return out;
}

}  // namespace

LabeledFiber track_fiber(const BlaschkeProduct& b, const PathSpec& path,
                         const LabeledFiber& fiber, const ToolConfig& cfg,
                         const BranchSet* E) {
  std::vector<Piece> pieces = compile_path(path, fiber.phi_value);
  bool image_space = path.kind == PathSpec::Kind::image_circle_lift;
  // Detour arcs shrink to 0.9 * safety_eps around obstacles that hug a path
  // endpoint, and the polygonal arc chords shave a further ~2%.
  if (E && !image_space) check_path_clearance(pieces, *E, cfg.safety_eps);

  std::vector<Cplx> cv = E ? E->critical_values : critical_values_of(b);
  ToolConfig stepped = cfg;
  stepped.initial_step = std::min(cfg.initial_step, path.initial_step);
  LabeledFiber out = fiber;
  for (const Piece& piece : pieces)
    track_piece(b, piece, image_space, out.values, stepped, cv);
  Cplx endpoint = pieces.empty() ? fiber.base : pieces.back().at(1.0);
  if (!image_space) {
    out.base = endpoint;
    out.phi_value = eval(b, endpoint);
  }
  return out;
}

namespace {

// Lift the image circle once, starting at w; returns the next label value.
Cplx lift_once(const BlaschkeProduct& b, Cplx w, Cplx phi_value, const ToolConfig& cfg,
               const std::vector<Cplx>& critical_values) {
  Piece arc;
  arc.type = Piece::Type::arc;
  arc.center = Cplx(0, 0);
  arc.radius = std::abs(phi_value);
  arc.th0 = std::arg(phi_value);
  arc.th1 = arc.th0 + kTwoPi;
  std::vector<Cplx> ws{w};
  track_piece(b, arc, true, ws, cfg, critical_values);
  return ws[0];
}

LabeledFiber label_fiber_impl(const BlaschkeProduct& b, const ToolConfig& cfg,
                              const BranchSet& E, Cplx forced_start,
                              bool has_forced_start) {
  const int n = b.order();
  if (n < 2) throw Error("label_fiber: order must be at least 2");

  double maxcv = 0.0;
  for (Cplx v : E.critical_values) maxcv = std::max(maxcv, std::abs(v));
  double maxE = 0.0;
  for (Cplx e : E.points) maxE = std::max(maxE, std::abs(e));

  Cplx base;
  std::vector<Cplx> roots;
  int base_index = -1;

  if (has_forced_start) {
    base = forced_start;
    roots = preimages(b, eval(b, base));
  } else {
    double r = std::max(0.9, (1.0 + maxE) / 2.0);
    bool found = false;
    for (int grow = 0; grow < 60 && !found; ++grow) {
      // The image of the circle |z| = r has to clear every critical value.
      double min_mod = std::numeric_limits<double>::infinity();
      for (int k = 0; k < 512; ++k) {
        double th = kTwoPi * k / 512.0;
        min_mod = std::min(min_mod, std::abs(eval(b, r * Cplx(std::cos(th), std::sin(th)))));
      }
      if (min_mod > maxcv + 0.1 * (1.0 - maxcv)) {
        for (int k = 0; k < 64; ++k) {
          double th = kTwoPi * (k + 0.3) / 64.0;
          Cplx z0 = r * Cplx(std::cos(th), std::sin(th));
          std::vector<Cplx> f = preimages(b, eval(b, z0));
          if (min_sep(f) >= 1e-4) {
            base = z0;
            roots = f;
            found = true;
            break;
          }
        }
      }
      if (!found) r = (1.0 + r) / 2.0;
      if (1.0 - r < 1e-9) break;
    }
    if (!found) throw NoValidBasePoint("label_fiber: no base circle clears the critical values");
  }

  // Anchor the base point exactly into the fiber.
  double best = std::numeric_limits<double>::infinity();
  for (int j = 0; j < n; ++j) {
    double d = std::abs(roots[j] - base);
    if (d < best) {
      best = d;
      base_index = j;
    }
  }
  if (best > 1e-6) throw NoValidBasePoint("label_fiber: base point is not in its own fiber");
  roots[base_index] = base;
  double sep = min_sep(roots);
  if (sep < 1e-6) throw NoValidBasePoint("label_fiber: fiber separation too small");

  LabeledFiber fiber;
  fiber.base = base;
  fiber.phi_value = eval(b, base);
  fiber.values.assign(n, Cplx(0, 0));
  fiber.values[0] = base;

  Cplx w = base;
  for (int k = 1; k <= n; ++k) {
    w = lift_once(b, w, fiber.phi_value, cfg, E.critical_values);
    if (k == n) {
      if (std::abs(w - base) > 1e-7)
        throw TrackingCollision("label_fiber: n lifts fail to close the cycle");
      break;
    }
    // Snap to the polished fiber roots.
    int nearest = -1;
    double d = std::numeric_limits<double>::infinity();
    for (int j = 0; j < n; ++j) {
      double dj = std::abs(roots[j] - w);
      if (dj < d) {
        d = dj;
        nearest = j;
      }
    }
    if (d > 0.25 * sep)
      throw TrackingCollision("label_fiber: lift endpoint misses the fiber");
    w = roots[nearest];
    fiber.values[k] = w;
  }
  return fiber;
}

}  // namespace

LabeledFiber label_fiber(const BlaschkeProduct& b, const ToolConfig& cfg) {
  BranchSet E = branch_points(b, cfg.cluster_eps);
  return label_fiber_impl(b, cfg, E, Cplx(0, 0), false);
}

LabeledFiber label_fiber_from(const BlaschkeProduct& b, Cplx start, const ToolConfig& cfg) {
  BranchSet E = branch_points(b, cfg.cluster_eps);
  return label_fiber_impl(b, cfg, E, start, true);
}

std::vector<LoopPlan> plan_loops(const BranchSet& E, Cplx base, const ToolConfig& cfg) {
  // Cluster branch points too close to separate with safe loop radii; two
  // points also merge when one sits inside a scale where the other's shadow
  // forbids a loop between them.
  const std::size_t m = E.points.size();
  auto mergeable = [&](std::size_t i, std::size_t j) {
    double need = std::max(4.0 * cfg.safety_eps,
                           3.3 * std::max(E.shadow_of(i), E.shadow_of(j)));
    return std::abs(E.points[i] - E.points[j]) < need;
  };
  std::vector<int> cluster(m, -1);
  int n_clusters = 0;
  for (std::size_t i = 0; i < m; ++i) {
    if (cluster[i] >= 0) continue;
    cluster[i] = n_clusters;
    // breadth-first closure so merging is transitive
    std::vector<std::size_t> frontier{i};
    while (!frontier.empty()) {
      std::size_t u = frontier.back();
      frontier.pop_back();
      for (std::size_t j = 0; j < m; ++j)
        if (cluster[j] < 0 && mergeable(u, j)) {
          cluster[j] = n_clusters;
          frontier.push_back(j);
        }
    }
    ++n_clusters;
  }

  std::vector<LoopPlan> plans(n_clusters);
  std::vector<double> plan_shadow(n_clusters, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    plans[cluster[i]].enclosed.push_back(E.points[i]);
    plan_shadow[cluster[i]] = std::max(plan_shadow[cluster[i]], E.shadow_of(i));
  }

  // Size every loop; when a required radius reaches into a neighbouring
  // cluster, absorb that neighbour and try again.
  for (int pass = 0; pass <= int(m); ++pass) {
    int violator = -1, neighbour = -1;
    for (std::size_t c = 0; c < plans.size(); ++c) {
      LoopPlan& plan = plans[c];
      Cplx centroid(0, 0);
      for (Cplx e : plan.enclosed) centroid += e;
      centroid /= double(plan.enclosed.size());
      plan.about = centroid;
      plan.merged = plan.enclosed.size() > 1;

      double spread = 0.0;
      for (Cplx e : plan.enclosed) spread = std::max(spread, std::abs(e - centroid));
      double gap = std::numeric_limits<double>::infinity();
      int gap_cluster = -1;
      for (std::size_t o = 0; o < plans.size(); ++o) {
        if (o == c) continue;
        for (Cplx e : plans[o].enclosed) {
          double d = std::abs(e - centroid);
          if (d < gap) {
            gap = d;
            gap_cluster = int(o);
          }
        }
      }
      plan.radius = std::min({0.4 * gap, 0.4 * std::abs(base - centroid), 0.1});
      // The loop circle must clear the enclosed points' shadows as well.
      plan.radius = std::max({plan.radius, spread + 2.0 * cfg.safety_eps,
                              spread + 1.25 * plan_shadow[c]});
      if (plan.radius > 0.47 * gap && violator < 0) {
        violator = int(c);
        neighbour = gap_cluster;
      }
    }
    if (violator < 0) break;
    if (neighbour < 0 || pass == int(m))
      throw PathTooCloseToBranchPoint(
          "plan_loops: shadow radius collides with a neighbouring branch point");
    LoopPlan& into = plans[violator];
    LoopPlan& from = plans[neighbour];
    into.enclosed.insert(into.enclosed.end(), from.enclosed.begin(), from.enclosed.end());
    plan_shadow[violator] = std::max(plan_shadow[violator], plan_shadow[neighbour]);
    plans.erase(plans.begin() + neighbour);
    plan_shadow.erase(plan_shadow.begin() + neighbour);
  }

  // Deterministic order: lexicographic by loop center.
  std::sort(plans.begin(), plans.end(), [](const LoopPlan& x, const LoopPlan& y) {
    if (x.about.real() != y.about.real()) return x.about.real() < y.about.real();
    return x.about.imag() < y.about.imag();
  });

  std::vector<Obstacle> all_obstacles = obstacles_from(E, cfg.safety_eps);
  for (LoopPlan& plan : plans) {
    std::vector<Obstacle> obstacles;
    for (const Obstacle& obs : all_obstacles) {
      bool enclosed = false;
      for (Cplx e : plan.enclosed) enclosed = enclosed || std::abs(obs.point - e) < 1e-15;
      if (!enclosed) obstacles.push_back(obs);
    }

    Cplx entry = plan.about + plan.radius * (base - plan.about) / std::abs(base - plan.about);
    std::vector<Cplx> approach = detoured_segment(base, entry, obstacles);

    PathSpec path;
    path.kind = PathSpec::Kind::polyline;
    path.initial_step = cfg.initial_step;
    path.anchors = approach;
    double th0 = std::arg(entry - plan.about);
    // Inscribed 32-gon of the loop circle; homotopic to the circle and it
    // still encloses exactly the intended branch points.
    for (int k = 1; k < 32; ++k) {
      double th = th0 + kTwoPi * k / 32.0;
      path.anchors.push_back(plan.about + plan.radius * Cplx(std::cos(th), std::sin(th)));
    }
    path.anchors.push_back(entry);
    for (auto it = approach.rbegin() + 1; it != approach.rend(); ++it)
      path.anchors.push_back(*it);
    plan.path = path;
  }
  return plans;
}

namespace {

Permutation match_permutation(const LabeledFiber& start, const std::vector<Cplx>& end) {
  const int n = start.size();
  double sep = start.min_separation();
  Permutation perm;
  perm.images.assign(n, -1);
  for (int j = 0; j < n; ++j) {
    int nearest = -1;
    double best = std::numeric_limits<double>::infinity();
    for (int k = 0; k < n; ++k) {
      double d = std::abs(end[j] - start.values[k]);
      if (d < best) {
        best = d;
        nearest = k;
      }
    }
    if (best > 0.5 * sep)
      throw TrackingCollision("monodromy: endpoint does not match any start sheet");
    perm.images[j] = nearest;
  }
  perm.validate();
  return perm;
}

}  // namespace

MonodromyReport monodromy(const BlaschkeProduct& b, const ToolConfig& cfg) {
  const int n = b.order();
  MonodromyReport report;

  if (n == 1) {
    report.branch_set.cluster_eps = cfg.cluster_eps;
    report.fiber.base = Cplx(0.9, 0);
    report.fiber.values = {Cplx(0.9, 0)};
    report.fiber.phi_value = eval(b, Cplx(0.9, 0));
    report.partition = make_partition(1, {{0}});
    report.q = 1;
    report.boundary_label_perm = Permutation::identity(1);
    return report;
  }

  report.branch_set = branch_points(b, cfg.cluster_eps);
  report.fiber = label_fiber_impl(b, cfg, report.branch_set, Cplx(0, 0), false);
  report.loops = plan_loops(report.branch_set, report.fiber.base, cfg);
  report.overlapping_loops =
      std::any_of(report.loops.begin(), report.loops.end(),
                  [](const LoopPlan& l) { return l.merged; });

  std::vector<std::vector<int>> images;
  for (const LoopPlan& loop : report.loops) {
    LabeledFiber end = track_fiber(b, loop.path, report.fiber, cfg, &report.branch_set);
    Permutation perm = match_permutation(report.fiber, end.values);
    // The identity inverse is single valued, so every generator fixes 0.
    if (perm.images[0] != 0)
      throw TrackingCollision("monodromy: a loop moved the identity sheet");
    images.push_back(perm.images);
    report.generators.push_back(std::move(perm));
  }

  report.partition = orbit_partition(n, images);
  report.q = report.partition.q();

  // Every local inverse is single valued on the base annulus, so one full
  // turn of the base circle must restore the fiber elementwise.
  PathSpec boundary;
  boundary.kind = PathSpec::Kind::circle;
  boundary.anchors = {Cplx(0, 0), report.fiber.base};
  LabeledFiber around = track_fiber(b, boundary, report.fiber, cfg, &report.branch_set);
  report.boundary_label_perm = match_permutation(report.fiber, around.values);
  if (!report.boundary_label_perm.is_identity())
    throw TrackingCollision("monodromy: base circle permutation is not the identity");

  return report;
}

namespace {

double dist_to_branch(Cplx z, const BranchSet& E) {
  double d = std::numeric_limits<double>::infinity();
  for (Cplx e : E.points) d = std::min(d, std::abs(z - e));
  return d;
}

// Fiber transported from the labeling base to `target` along a detoured run.
std::vector<Cplx> values_at(const BlaschkeProduct& b, const LabeledFiber& fiber,
                            Cplx target, const BranchSet& E, const ToolConfig& cfg) {
  PathSpec path;
  path.kind = PathSpec::Kind::polyline;
  path.initial_step = cfg.initial_step;
  path.anchors = detoured_segment(fiber.base, target, obstacles_from(E, cfg.safety_eps));
  LabeledFiber moved = track_fiber(b, path, fiber, cfg, &E);
  return moved.values;
}

}  // namespace

FiberValues local_inverse_values(const BlaschkeProduct& b, const LabeledFiber& fiber,
                                 Cplx target, const ToolConfig& cfg, const BranchSet* E) {
  BranchSet local;
  if (!E) {
    local = branch_points(b, cfg.cluster_eps);
    E = &local;
  }
  FiberValues out;
  if (dist_to_branch(target, *E) < cfg.safety_eps) {
    out.on_branch = true;
    return out;
  }
  out.values = values_at(b, fiber, target, *E, cfg);
  return out;
}

std::vector<std::vector<Cplx>> block_sums_at(
    const BlaschkeProduct& b, const LabeledFiber& fiber, const Partition& partition,
    Cplx target, const std::vector<std::function<Cplx(Cplx)>>& fs, const ToolConfig& cfg,
    const BranchSet* E) {
  BranchSet local;
  if (!E) {
    local = branch_points(b, cfg.cluster_eps);
    E = &local;
  }
  const int q = partition.q();
  std::vector<std::vector<Cplx>> sums(fs.size(), std::vector<Cplx>(q, Cplx(0, 0)));

  auto accumulate = [&](const std::vector<Cplx>& vals, double weight) {
    for (std::size_t k = 0; k < fs.size(); ++k)
      for (int i = 0; i < q; ++i) {
        Cplx s(0, 0);
        for (int j : partition.blocks[i]) s += fs[k](vals[j]) * vals[j];
        sums[k][i] += weight * s;
      }
  };

  if (dist_to_branch(target, *E) >= cfg.safety_eps) {
    accumulate(values_at(b, fiber, target, *E, cfg), 1.0);
    return sums;
  }

  // On the branch set: the block sums extend analytically, so take the
  // circular mean over a circle that itself clears E (including the shadow
  // of the target and of every other branch point).
  double target_shadow = 0.0;
  for (std::size_t i = 0; i < E->points.size(); ++i)
    if (std::abs(E->points[i] - target) < cfg.safety_eps)
      target_shadow = std::max(target_shadow, E->shadow_of(i));
  double radius = std::max(cfg.mean_circle_radius, 1.15 * target_shadow);
  bool found = false;
  for (int attempt = 0; attempt < 64 && !found; ++attempt) {
    bool clear = std::abs(target) + radius <= 1.0 - 1e-6;
    for (std::size_t i = 0; i < E->points.size() && clear; ++i) {
      double d = std::abs(E->points[i] - target);
      if (d < cfg.safety_eps) continue;  // the target itself
      double need = std::max(cfg.safety_eps, E->shadow_of(i));
      clear = std::abs(d - radius) >= need;
    }
    if (clear) {
      found = true;
      break;
    }
    radius *= 0.93;
    if (radius < std::max(4.0 * cfg.safety_eps, 1.05 * target_shadow))
      throw NearBranchPoint("block_sum_at: no clear mean circle around target");
  }
  if (!found) throw NearBranchPoint("block_sum_at: no clear mean circle around target");

  Cplx dir = fiber.base - target;
  dir /= std::abs(dir);
  Cplx entry = target + radius * dir;

  PathSpec approach;
  approach.kind = PathSpec::Kind::polyline;
  approach.initial_step = cfg.initial_step;
  approach.anchors = detoured_segment(fiber.base, entry, obstacles_from(*E, cfg.safety_eps));
  LabeledFiber moved = track_fiber(b, approach, fiber, cfg, E);

  const int samples = cfg.mean_samples;
  double th0 = std::arg(dir);
  std::vector<Cplx> ws = moved.values;
  accumulate(ws, 1.0 / samples);
  for (int k = 1; k < samples; ++k) {
    Piece arc;
    arc.type = Piece::Type::arc;
    arc.center = target;
    arc.radius = radius;
    arc.th0 = th0 + kTwoPi * (k - 1) / samples;
    arc.th1 = th0 + kTwoPi * k / samples;
    track_piece(b, arc, false, ws, cfg, E->critical_values);
    accumulate(ws, 1.0 / samples);
  }
  return sums;
}

std::vector<Cplx> block_sum_at(const BlaschkeProduct& b, const LabeledFiber& fiber,
                               const Partition& partition, Cplx target,
                               const std::function<Cplx(Cplx)>& f, const ToolConfig& cfg,
                               const BranchSet* E) {
  return block_sums_at(b, fiber, partition, target, {f}, cfg, E)[0];
}

}  // namespace blaschke
