#include "blaschke/poly.hpp"

namespace blaschke::poly {

Cplx eval(const Coeffs& p, Cplx z) {
  Cplx acc(0.0, 0.0);
  for (Eigen::Index i = p.size() - 1; i >= 0; --i) acc = acc * z + p(i);
  return acc;
}

Coeffs derivative(const Coeffs& p) {
  if (p.size() <= 1) return Coeffs::Zero(1);
  Coeffs d(p.size() - 1);
  for (Eigen::Index i = 1; i < p.size(); ++i) d(i - 1) = p(i) * double(i);
  return d;
}

Coeffs multiply(const Coeffs& a, const Coeffs& b) {
  if (a.size() == 0 || b.size() == 0) return Coeffs::Zero(1);
  Coeffs c = Coeffs::Zero(a.size() + b.size() - 1);
  for (Eigen::Index i = 0; i < a.size(); ++i)
    for (Eigen::Index j = 0; j < b.size(); ++j) c(i + j) += a(i) * b(j);
  return c;
}

Coeffs add(const Coeffs& a, const Coeffs& b) {
  Coeffs c = Coeffs::Zero(std::max(a.size(), b.size()));
  c.head(a.size()) += a;
  c.head(b.size()) += b;
  return c;
}

Coeffs scale(const Coeffs& a, Cplx s) { return a * s; }

Coeffs multiply_linear(const Coeffs& p, Cplx c0, Cplx c1) {
  Coeffs c = Coeffs::Zero(p.size() + 1);
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    c(i) += p(i) * c0;
    c(i + 1) += p(i) * c1;
  }
  return c;
}

Coeffs trim(const Coeffs& p, double rel_tol) {
  double scale = 0.0;
  for (Eigen::Index i = 0; i < p.size(); ++i) scale = std::max(scale, std::abs(p(i)));
  if (scale == 0.0) return Coeffs::Zero(1);
  Eigen::Index deg = p.size() - 1;
  while (deg > 0 && std::abs(p(deg)) <= rel_tol * scale) --deg;
  return p.head(deg + 1);
}

int degree(const Coeffs& p) { return int(p.size()) - 1; }

}  // namespace blaschke::poly
