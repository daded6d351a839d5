#include "blaschke/roots.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

namespace blaschke {

namespace {

void sort_lex(std::vector<Cplx>& v) {
  std::sort(v.begin(), v.end(), [](Cplx a, Cplx b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
}

// One Newton polish pass; skips roots where the derivative has collapsed
// (defective clusters keep their eigenvalue estimate).
void polish(const poly::Coeffs& p, const poly::Coeffs& dp, std::vector<Cplx>& roots) {
  double scale = 0.0;
  for (Eigen::Index i = 0; i < p.size(); ++i) scale = std::max(scale, std::abs(p(i)));
  for (Cplx& r : roots) {
    for (int it = 0; it < 8; ++it) {
      Cplx f = poly::eval(p, r);
      if (std::abs(f) < 1e-14 * scale) break;
      Cplx df = poly::eval(dp, r);
      if (std::abs(df) < 1e-10 * scale) break;
      Cplx step = f / df;
      if (!is_finite(step) || std::abs(step) > 0.5) break;
      r -= step;
    }
  }
}

}  // namespace

double BranchSet::min_gap() const {
  double gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j)
      gap = std::min(gap, std::abs(points[i] - points[j]));
  return gap;
}

std::vector<Cplx> poly_roots(const poly::Coeffs& coeffs) {
  poly::Coeffs p = poly::trim(coeffs, 1e-12);
  if (p.size() <= 1) throw NoConvergence("poly_roots: constant polynomial");

  // Strip exact z^k factors: low-order coefficients that vanish relative
  // to the coefficient scale contribute roots at the origin.
  double scale = 0.0;
  for (Eigen::Index i = 0; i < p.size(); ++i) scale = std::max(scale, std::abs(p(i)));
  Eigen::Index low = 0;
  while (low < p.size() - 1 && std::abs(p(low)) < 1e-14 * scale) ++low;
  std::vector<Cplx> roots(std::size_t(low), Cplx(0, 0));
  p = p.tail(p.size() - low).eval();

  const Eigen::Index deg = p.size() - 1;
  if (deg > 0) {
    Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(deg, deg);
    for (Eigen::Index i = 1; i < deg; ++i) companion(i, i - 1) = 1.0;
    for (Eigen::Index i = 0; i < deg; ++i) companion(i, deg - 1) = -p(i) / p(deg);
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(companion, false);
    if (es.info() != Eigen::Success)
      throw NoConvergence("poly_roots: eigenvalue iteration failed");
    std::vector<Cplx> raw(es.eigenvalues().data(), es.eigenvalues().data() + deg);
    polish(p, poly::derivative(p), raw);
    roots.insert(roots.end(), raw.begin(), raw.end());
  }

  for (Cplx r : roots) {
    double residual_scale = 0.0;
    for (Eigen::Index i = 0; i < coeffs.size(); ++i)
      residual_scale = std::max(residual_scale,
                                std::abs(coeffs(i)) * std::pow(std::max(1.0, std::abs(r)),
                                                               double(i)));
    if (std::abs(poly::eval(coeffs, r)) > 1e-9 * std::max(residual_scale, 1e-300))
      throw NoConvergence("poly_roots: residual above 1e-9 of coefficient scale");
  }
  sort_lex(roots);
  return roots;
}

std::vector<Cplx> critical_points(const BlaschkeProduct& b) {
  RationalRep rep = rational_rep(b);
  poly::Coeffs num = poly::add(
      poly::multiply(poly::derivative(rep.p), rep.q),
      poly::scale(poly::multiply(rep.p, poly::derivative(rep.q)), Cplx(-1, 0)));
  std::vector<Cplx> all = poly_roots(num);

  // Roots outside the closed disk are circle reflections of the interior
  // critical points, not critical points of b in D.
  std::vector<Cplx> inside;
  for (Cplx r : all)
    if (std::abs(r) < 1.0 - 1e-9) inside.push_back(r);

  if (int(inside.size()) != b.order() - 1)
    throw BochnerCountViolation(
        "critical_points: found " + std::to_string(inside.size()) + " interior roots, expected " +
        std::to_string(b.order() - 1));
  sort_lex(inside);
  return inside;
}

std::vector<Cplx> preimages(const BlaschkeProduct& b, Cplx v) {
  if (std::abs(v) >= 1.0)
    throw Error("preimages: value must lie in the open disk");
  RationalRep rep = rational_rep(b);
  poly::Coeffs num = poly::add(rep.p, poly::scale(rep.q, -v));
  std::vector<Cplx> roots = poly_roots(num);
  if (int(roots.size()) != b.order())
    throw NoConvergence("preimages: wrong root count");
  for (Cplx& r : roots) {
    if (std::abs(r) > 1.0 + 1e-8)
      throw NoConvergence("preimages: root escaped the closed disk");
    // A couple of Newton steps on b itself sharpens clustered roots.
    for (int it = 0; it < 3; ++it) {
      Cplx f = eval(b, r) - v;
      if (std::abs(f) < 1e-15) break;
      Cplx df = eval_derivative(b, r);
      if (std::abs(df) < 1e-9) break;
      Cplx step = f / df;
      if (!is_finite(step) || std::abs(step) > 1e-2) break;
      r -= step;
    }
  }
  sort_lex(roots);
  return roots;
}

BranchSet branch_points(const BlaschkeProduct& b, double cluster_eps) {
  std::vector<Cplx> crit = critical_points(b);
  BranchSet E;
  for (Cplx c : crit) {
    Cplx v = eval(b, c);
    bool seen = false;
    for (Cplx w : E.critical_values) seen = seen || std::abs(v - w) < 1e-12;
    if (!seen) E.critical_values.push_back(v);
  }
  std::vector<Cplx> raw;
  for (Cplx c : crit) {
    Cplx v = eval(b, c);
    std::vector<Cplx> fiber = preimages(b, v);
    // The fiber over a critical value ramifies exactly at the critical
    // points, where the defective root cluster scatters by ~1e-8; snap
    // those roots onto the (well conditioned) critical point.
    for (Cplx& z : fiber)
      for (Cplx cp : crit)
        if (std::abs(z - cp) < 1e-6) z = cp;
    raw.insert(raw.end(), fiber.begin(), fiber.end());
  }
  sort_lex(raw);

  E.cluster_eps = cluster_eps;
  std::vector<bool> used(raw.size(), false);
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (used[i]) continue;
    Cplx sum = raw[i];
    int count = 1;
    used[i] = true;
    for (std::size_t j = i + 1; j < raw.size(); ++j) {
      if (!used[j] && std::abs(raw[j] - raw[i]) < cluster_eps) {
        sum += raw[j];
        ++count;
        used[j] = true;
      }
    }
    E.points.push_back(sum / double(count));
  }
  sort_lex(E.points);
  E.tight_clustering = E.min_gap() < 10.0 * cluster_eps;

  // Image floor 1e-9 leaves three decades over the 1e-12 corrector
  // tolerance; 16 angles suffice since |phi - phi(e)| is comparable around
  // the circle at these radii.
  constexpr double kImageFloor = 1e-9;
  E.shadow.reserve(E.points.size());
  for (Cplx e : E.points) {
    Cplx ve = eval(b, e);
    double d = 1e-4;
    for (; d < 0.25; d *= 2.0) {
      double worst = std::numeric_limits<double>::infinity();
      for (int k = 0; k < 16; ++k) {
        double th = 2.0 * std::numbers::pi * (k + 0.31) / 16.0;
        worst = std::min(worst,
                         std::abs(eval(b, e + d * Cplx(std::cos(th), std::sin(th))) - ve));
      }
      if (worst >= kImageFloor) break;
    }
    E.shadow.push_back(d);
  }
  return E;
}

}  // namespace blaschke
