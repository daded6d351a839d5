#include "blaschke/product.hpp"

#include <algorithm>
#include <cmath>

#include "blaschke/roots.hpp"

namespace blaschke {

namespace {

constexpr double kDiskMargin = 1e-12;
constexpr double kMergeEps = 1e-10;

// Deterministic interior test points for cross-validation.
std::vector<Cplx> probe_points(int count) {
  std::vector<Cplx> pts;
  pts.reserve(count);
  double a = 0.1234567;
  for (int k = 0; k < count; ++k) {
    a = std::fmod(a * 997.0 + 0.618033988749895, 1.0);
    double r = 0.15 + 0.7 * a;
    double t = 6.283185307179586 * std::fmod(a * 31.0 + 0.37, 1.0);
    pts.emplace_back(r * std::cos(t), r * std::sin(t));
  }
  return pts;
}

}  // namespace

Cplx mobius_eval(Cplx a, Cplx z) { return (a - z) / (1.0 - std::conj(a) * z); }

Cplx mobius_deriv(Cplx a, Cplx z) {
  Cplx d = 1.0 - std::conj(a) * z;
  return (std::norm(a) - 1.0) / (d * d);
}

BlaschkeProduct make_blaschke(const std::vector<std::pair<Cplx, int>>& zeros,
                              Cplx unimodular) {
  if (!is_finite(unimodular)) throw NonUnimodularConstant("constant is not finite");
  if (std::abs(std::abs(unimodular) - 1.0) >= kDiskMargin)
    throw NonUnimodularConstant("constant modulus differs from 1");

  std::vector<MobiusZero> flat;
  for (const auto& [pt, mult] : zeros) {
    if (!is_finite(pt)) throw ZeroOutsideDisk("zero is not finite");
    if (std::abs(pt) >= 1.0 - kDiskMargin)
      throw ZeroOutsideDisk("zero has modulus >= 1 - 1e-12");
    if (mult <= 0) throw EmptyProduct("zero multiplicity must be positive");
    flat.push_back({pt, mult});
  }
  if (flat.empty()) throw EmptyProduct("a Blaschke product needs at least one zero");

  std::sort(flat.begin(), flat.end(), [](const MobiusZero& a, const MobiusZero& b) {
    if (a.point.real() != b.point.real()) return a.point.real() < b.point.real();
    return a.point.imag() < b.point.imag();
  });

  std::vector<MobiusZero> merged;
  for (const auto& mz : flat) {
    if (!merged.empty() && std::abs(merged.back().point - mz.point) < kMergeEps)
      merged.back().multiplicity += mz.multiplicity;
    else
      merged.push_back(mz);
  }

  BlaschkeProduct b;
  b.zeros_ = std::move(merged);
  b.unimodular_ = unimodular / std::abs(unimodular);
  b.order_ = 0;
  for (const auto& mz : b.zeros_) b.order_ += mz.multiplicity;
  return b;
}

BlaschkeProduct power_product(int n) {
  Cplx c = (n % 2 == 0) ? Cplx(1, 0) : Cplx(-1, 0);
  return make_blaschke({{Cplx(0, 0), n}}, c);
}

BlaschkeProduct mobius_product(Cplx a) { return make_blaschke({{a, 1}}); }

BlaschkeProduct operator*(const BlaschkeProduct& lhs, const BlaschkeProduct& rhs) {
  std::vector<std::pair<Cplx, int>> zs;
  for (const auto& mz : lhs.zeros()) zs.emplace_back(mz.point, mz.multiplicity);
  for (const auto& mz : rhs.zeros()) zs.emplace_back(mz.point, mz.multiplicity);
  return make_blaschke(zs, lhs.unimodular() * rhs.unimodular());
}

BlaschkeProduct rotate(const BlaschkeProduct& b, Cplx s) {
  std::vector<std::pair<Cplx, int>> zs;
  for (const auto& mz : b.zeros()) zs.emplace_back(mz.point, mz.multiplicity);
  return make_blaschke(zs, b.unimodular() * s);
}

Cplx eval(const BlaschkeProduct& b, Cplx z) {
  Cplx acc = b.unimodular();
  for (const auto& mz : b.zeros()) {
    Cplx f = mobius_eval(mz.point, z);
    for (int k = 0; k < mz.multiplicity; ++k) acc *= f;
  }
  return acc;
}

Cplx eval_derivative(const BlaschkeProduct& b, Cplx z) {
  // Product rule over the expanded factor list; exact at factor zeros.
  std::vector<Cplx> vals, ders;
  for (const auto& mz : b.zeros()) {
    Cplx f = mobius_eval(mz.point, z);
    Cplx df = mobius_deriv(mz.point, z);
    for (int k = 0; k < mz.multiplicity; ++k) {
      vals.push_back(f);
      ders.push_back(df);
    }
  }
  const int n = int(vals.size());
  std::vector<Cplx> pre(n + 1), suf(n + 1);
  pre[0] = Cplx(1, 0);
  for (int i = 0; i < n; ++i) pre[i + 1] = pre[i] * vals[i];
  suf[n] = Cplx(1, 0);
  for (int i = n - 1; i >= 0; --i) suf[i] = suf[i + 1] * vals[i];
  Cplx acc(0, 0);
  for (int i = 0; i < n; ++i) acc += pre[i] * ders[i] * suf[i + 1];
  return b.unimodular() * acc;
}

RationalRep rational_rep(const BlaschkeProduct& b) {
  RationalRep rep;
  rep.p = poly::Coeffs::Constant(1, b.unimodular());
  rep.q = poly::Coeffs::Constant(1, Cplx(1, 0));
  for (const auto& mz : b.zeros()) {
    for (int k = 0; k < mz.multiplicity; ++k) {
      rep.p = poly::multiply_linear(rep.p, mz.point, Cplx(-1, 0));
      rep.q = poly::multiply_linear(rep.q, Cplx(1, 0), -std::conj(mz.point));
    }
  }
  return rep;
}

Cplx f_bivariate_eval(const RationalRep& rep, Cplx w, Cplx z) {
  return poly::eval(rep.p, w) * poly::eval(rep.q, z) -
         poly::eval(rep.p, z) * poly::eval(rep.q, w);
}

Cplx f_bivariate_eval(const BlaschkeProduct& b, Cplx w, Cplx z) {
  return f_bivariate_eval(rational_rep(b), w, z);
}

BlaschkeProduct compose(const BlaschkeProduct& outer, const BlaschkeProduct& inner) {
  std::vector<std::pair<Cplx, int>> zs;
  for (const auto& mz : outer.zeros()) {
    std::vector<Cplx> pre = preimages(inner, mz.point);
    // Cluster at root-finder resolution so repeated preimages keep their
    // multiplicity structure.
    std::vector<bool> used(pre.size(), false);
    for (std::size_t i = 0; i < pre.size(); ++i) {
      if (used[i]) continue;
      Cplx sum = pre[i];
      int count = 1;
      used[i] = true;
      for (std::size_t j = i + 1; j < pre.size(); ++j) {
        if (!used[j] && std::abs(pre[j] - pre[i]) < 1e-7) {
          sum += pre[j];
          ++count;
          used[j] = true;
        }
      }
      zs.emplace_back(sum / double(count), count * mz.multiplicity);
    }
  }
  BlaschkeProduct shape = make_blaschke(zs, Cplx(1, 0));

  // Recover the unimodular constant from a well-conditioned probe point.
  Cplx c(0, 0);
  double best = -1.0;
  for (Cplx t : probe_points(8)) {
    Cplx denom = eval(shape, t);
    if (std::abs(denom) > best) {
      best = std::abs(denom);
      c = eval(outer, eval(inner, t)) / denom;
    }
  }
  if (std::abs(std::abs(c) - 1.0) > 1e-6)
    throw RootFindingFailed("compose: recovered constant is not unimodular");
  c /= std::abs(c);
  BlaschkeProduct result = rotate(shape, c);

  for (Cplx t : probe_points(32)) {
    Cplx lhs = eval(outer, eval(inner, t));
    Cplx rhs = eval(result, t);
    if (std::abs(lhs - rhs) > 1e-9 * std::max(1.0, std::abs(lhs)))
      throw RootFindingFailed("compose: evaluation mismatch beyond 1e-9");
  }
  return result;
}

BlaschkeProduct normalize(const BlaschkeProduct& b) {
  Cplx v = eval(b, Cplx(0, 0));
  if (std::abs(v) < 1e-14) return b;
  return compose(mobius_product(v), b);
}

bool equivalent_to_power(const BlaschkeProduct& b) {
  // b is a rotation of mobius(w)(z^n) exactly when mobius(b(0)) o b has an
  // order-n zero at the origin, i.e. the numerator of b(0)*Q - P is a
  // multiple of z^n.
  const int n = b.order();
  RationalRep rep = rational_rep(b);
  Cplx v = eval(b, Cplx(0, 0));
  poly::Coeffs num = poly::add(poly::scale(rep.q, v), poly::scale(rep.p, Cplx(-1, 0)));
  double scale = 0.0;
  for (Eigen::Index i = 0; i < num.size(); ++i) scale = std::max(scale, std::abs(num(i)));
  if (scale == 0.0) return false;
  for (int k = 0; k < n && k < num.size(); ++k)
    if (std::abs(num(k)) > 1e-8 * scale) return false;
  return true;
}

Cplx bivariate_table_eval(const Eigen::Matrix3cd& table, Cplx w, Cplx z) {
  Cplx zp[3] = {Cplx(1, 0), z, z * z};
  Cplx wp[3] = {Cplx(1, 0), w, w * w};
  Cplx acc(0, 0);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) acc += table(i, j) * wp[i] * zp[j];
  return acc;
}

Cplx Order5Oracle::d_factored_eval(Cplx w, Cplx z) const {
  Cplx acc(0, 0);
  for (int k = 0; k < 5; ++k) {
    Cplx wk(1, 0);
    for (int e = 0; e < 4 - k; ++e) wk *= w;
    acc += poly::eval(d[k], z) * wk;
  }
  return (w - z) * acc;
}

Cplx Order5Oracle::p_factored_eval(Cplx w, Cplx z) const {
  return (w - z) * bivariate_table_eval(p1, w, z) * bivariate_table_eval(p2, w, z);
}

Order5Oracle order5_d_coeffs(Cplx alpha, Cplx beta, Cplx gamma) {
  for (Cplx a : {alpha, beta, gamma})
    if (std::abs(a) >= 1.0 - kDiskMargin)
      throw ZeroOutsideDisk("order5_d_coeffs: parameter outside open disk");

  Cplx ca = std::conj(alpha), cb = std::conj(beta), cg = std::conj(gamma);

  poly::Coeffs one = poly::Coeffs::Constant(1, Cplx(1, 0));
  poly::Coeffs A = poly::multiply_linear(
      poly::multiply_linear(poly::multiply_linear(one, Cplx(1, 0), -ca), Cplx(1, 0), -cb),
      Cplx(1, 0), -cg);
  poly::Coeffs B = poly::multiply_linear(
      poly::multiply_linear(poly::multiply_linear(one, alpha, Cplx(-1, 0)), beta,
                            Cplx(-1, 0)),
      gamma, Cplx(-1, 0));

  Cplx e1 = alpha + beta + gamma;
  Cplx e2 = alpha * beta + beta * gamma + alpha * gamma;

  Order5Oracle o;
  o.has_d = true;
  o.d[0] = poly::scale(A, Cplx(-1, 0));
  o.d[1] = poly::multiply_linear(A, e1, Cplx(-1, 0));

  poly::Coeffs quad(3);
  quad << -e2, e1, Cplx(-1, 0);
  poly::Coeffs z2(3);
  z2 << Cplx(0, 0), Cplx(0, 0), ca * cb * cg;
  o.d[2] = poly::add(poly::multiply(A, quad), poly::multiply(z2, B));

  o.d[3] = poly::multiply_linear(B, Cplx(1, 0), -(ca + cb + cg));
  o.d[4] = poly::multiply_linear(B, Cplx(0, 0), Cplx(1, 0));
  return o;
}

std::pair<bool, Order5Oracle> order5_exceptional(Cplx alpha, Cplx beta) {
  if (std::abs(alpha) >= 1.0 - kDiskMargin || std::abs(beta) >= 1.0 - kDiskMargin)
    throw ZeroOutsideDisk("order5_exceptional: parameter outside open disk");
  if (std::abs(alpha - beta) < 1e-12 || std::abs(alpha) < 1e-12 || std::abs(beta) < 1e-12)
    throw DegenerateParameters("order5_exceptional: needs alpha != beta, alpha*beta != 0");

  Cplx t = alpha / beta;
  bool real_ratio = std::abs(t.imag()) < 1e-10;
  bool fixed_value = std::abs(mobius_eval(beta, alpha) - alpha * alpha / beta) < 1e-8;

  Order5Oracle o;
  if (!(real_ratio && fixed_value)) return {false, o};

  Cplx ca = std::conj(alpha), cb = std::conj(beta);
  Cplx c1 = -1.0 - t;
  o.c1 = c1;
  o.has_p = true;

  // p1 = (1-ca z) w^2 + ([z-(2a+b)](1-ca z) - c1(b-z)) w - z(a-z)
  o.p1(2, 0) = 1.0;
  o.p1(2, 1) = -ca;
  o.p1(1, 0) = -(2.0 * alpha + beta) - c1 * beta;
  o.p1(1, 1) = 1.0 + ca * (2.0 * alpha + beta) + c1;
  o.p1(1, 2) = -ca;
  o.p1(0, 1) = -alpha;
  o.p1(0, 2) = 1.0;

  // p2 = (1-ca z)(cb z - 1) w^2 + c1 (cb z - 1)(b - z) w - (a-z)(b-z)
  o.p2(2, 0) = -1.0;
  o.p2(2, 1) = ca + cb;
  o.p2(2, 2) = -ca * cb;
  o.p2(1, 0) = -c1 * beta;
  o.p2(1, 1) = c1 * (1.0 + cb * beta);
  o.p2(1, 2) = -c1 * cb;
  o.p2(0, 0) = -alpha * beta;
  o.p2(0, 1) = alpha + beta;
  o.p2(0, 2) = -1.0;

  return {true, o};
}

}  // namespace blaschke
