#ifndef BLASCHKE_PRODUCT_HPP
#define BLASCHKE_PRODUCT_HPP

#include <array>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "blaschke/poly.hpp"
#include "blaschke/types.hpp"

namespace blaschke {

/// Mobius factor (a - z)/(1 - conj(a) z).
Cplx mobius_eval(Cplx a, Cplx z);
Cplx mobius_deriv(Cplx a, Cplx z);

struct MobiusZero {
  Cplx point;
  int multiplicity = 1;
};

/// A finite product  c * prod_j ((a_j - z)/(1 - conj(a_j) z))^{m_j}  with
/// |a_j| < 1 and |c| = 1. Zeros are kept in canonical form: sorted
/// lexicographically by (re, im), coincident points merged.
class BlaschkeProduct {
 public:
  const std::vector<MobiusZero>& zeros() const { return zeros_; }
  Cplx unimodular() const { return unimodular_; }
  int order() const { return order_; }

  friend BlaschkeProduct make_blaschke(const std::vector<std::pair<Cplx, int>>& zeros,
                                       Cplx unimodular);

 private:
  std::vector<MobiusZero> zeros_;
  Cplx unimodular_{1.0, 0.0};
  int order_ = 0;
};

BlaschkeProduct make_blaschke(const std::vector<std::pair<Cplx, int>>& zeros,
                              Cplx unimodular = Cplx(1.0, 0.0));

/// z^n exactly: the zero z=0 with multiplicity n and constant (-1)^n.
BlaschkeProduct power_product(int n);

/// The single factor (a - z)/(1 - conj(a) z).
BlaschkeProduct mobius_product(Cplx a);

/// Pointwise product of two Blaschke products (zeros concatenated).
BlaschkeProduct operator*(const BlaschkeProduct& lhs, const BlaschkeProduct& rhs);

/// Same product with the unimodular constant multiplied by s, |s| = 1.
BlaschkeProduct rotate(const BlaschkeProduct& b, Cplx s);

Cplx eval(const BlaschkeProduct& b, Cplx z);
Cplx eval_derivative(const BlaschkeProduct& b, Cplx z);

/// Numerator / denominator polynomials with Q(0) = 1.
struct RationalRep {
  poly::Coeffs p;  // numerator, ascending degree
  poly::Coeffs q;  // denominator, ascending degree
};

RationalRep rational_rep(const BlaschkeProduct& b);

/// P(w)Q(z) - P(z)Q(w); vanishes exactly on pairs with equal phi-value.
Cplx f_bivariate_eval(const BlaschkeProduct& b, Cplx w, Cplx z);
Cplx f_bivariate_eval(const RationalRep& rep, Cplx w, Cplx z);

/// outer(inner(.)) as a Blaschke product of order n1*n2.
BlaschkeProduct compose(const BlaschkeProduct& outer, const BlaschkeProduct& inner);

/// An equivalent product vanishing at the origin: mobius(b(0)) composed with b.
BlaschkeProduct normalize(const BlaschkeProduct& b);

/// True iff b equals a * mobius(w)(z^n) for some |a| = 1, w in the disk,
/// i.e. the fiber of b over b(0) is the origin with full multiplicity.
bool equivalent_to_power(const BlaschkeProduct& b);

/// Explicit coefficient data for order-5 products of the shape
/// z^2 * mobius(a) * mobius(b) * mobius(g) (d part) and the exceptional
/// two-factor splitting for z^2 * mobius(a)^2 * mobius(b) (p part).
struct Order5Oracle {
  // d[k](z) multiplies w^(4-k) in f(w,z)/(w-z).
  std::array<poly::Coeffs, 5> d;
  bool has_d = false;

  // Bivariate tables: entry (i,j) multiplies w^i z^j, degrees <= 2 each.
  Eigen::Matrix3cd p1 = Eigen::Matrix3cd::Zero();
  Eigen::Matrix3cd p2 = Eigen::Matrix3cd::Zero();
  Cplx c1{0.0, 0.0};
  bool has_p = false;

  /// (w - z) * sum_k d_k(z) w^(4-k)
  Cplx d_factored_eval(Cplx w, Cplx z) const;
  /// (w - z) * p1(w,z) * p2(w,z)
  Cplx p_factored_eval(Cplx w, Cplx z) const;
};

Cplx bivariate_table_eval(const Eigen::Matrix3cd& table, Cplx w, Cplx z);

Order5Oracle order5_d_coeffs(Cplx alpha, Cplx beta, Cplx gamma);

/// Tests the exceptional order-5 condition (alpha/beta real and
/// mobius(beta)(alpha) = alpha^2/beta); on success the returned oracle
/// carries the quadratic factors p1, p2.
std::pair<bool, Order5Oracle> order5_exceptional(Cplx alpha, Cplx beta);

}  // namespace blaschke

#endif
