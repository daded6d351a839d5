#ifndef BLASCHKE_POLY_HPP
#define BLASCHKE_POLY_HPP

#include <Eigen/Dense>

#include "blaschke/types.hpp"

namespace blaschke::poly {

using Coeffs = Eigen::VectorXcd;  // ascending degree

/// Horner evaluation. The zero polynomial is an empty vector.
Cplx eval(const Coeffs& p, Cplx z);

Coeffs derivative(const Coeffs& p);

/// Product of two coefficient vectors (linear convolution).
Coeffs multiply(const Coeffs& a, const Coeffs& b);

Coeffs add(const Coeffs& a, const Coeffs& b);

Coeffs scale(const Coeffs& a, Cplx s);

/// p(z) * (c0 + c1 z)
Coeffs multiply_linear(const Coeffs& p, Cplx c0, Cplx c1);

/// Drop high-degree coefficients below `rel_tol * max|coeff|`.
Coeffs trim(const Coeffs& p, double rel_tol = 1e-12);

int degree(const Coeffs& p);

}  // namespace blaschke::poly

#endif
