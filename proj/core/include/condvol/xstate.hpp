#pragma once

#include <Eigen/Dense>

#include "condvol/statespace.hpp"

namespace condvol {

// Seven real parameters of a two-qubit X-state,
//   rho = (1/4)(1 + a3 s3⊗1 + b3 1⊗t3 + c11 s1⊗t1 + c12 s1⊗t2
//              + c21 s2⊗t1 + c22 s2⊗t2 + c33 s3⊗t3),
// in the computational basis with the reduced Bloch vector along z.
struct XCoordinates {
  double a3 = 0, b3 = 0;
  double c11 = 0, c12 = 0, c21 = 0, c22 = 0, c33 = 0;
};

// Disk-product coordinates of the conditioned X body at fixed a3 < 1. The
// positivity region becomes {x^2 + y^2 <= (1+Z)(1-z), X^2 + Y^2 <= (1-Z)(1+z),
// z, Z in [-1, 1]}, with constant Jacobian (1/8)(1 - a3^2)^3.
struct XTransformed {
  double x = 0, y = 0, z = 0;
  double X = 0, Y = 0, Z = 0;
  double jacobian = 0;

  double r_sq() const { return (1.0 + Z) * (1.0 - z); }
  double R_sq() const { return (1.0 - Z) * (1.0 + z); }
};

Eigen::Matrix4cd x_to_density(const XCoordinates& xc);

// Closed-form positivity of the X matrix: both anti-diagonal 2x2 blocks are
// positive iff
//   sqrt((a3+b3)^2 + (c11-c22)^2 + (c12+c21)^2) <= 1 + c33  and
//   sqrt((a3-b3)^2 + (c11+c22)^2 + (c12-c21)^2) <= 1 - c33.
bool x_is_positive(const XCoordinates& xc);

// Signed slack of the binding inequality; positive inside the body. Used to
// exclude the floating-point boundary band in oracle comparisons.
double x_positivity_margin(const XCoordinates& xc);

// The partial transpose over the second qubit flips the signs of c12 and c22.
bool x_is_ppt(const XCoordinates& xc);
double x_ppt_margin(const XCoordinates& xc);
XCoordinates x_partial_transpose(const XCoordinates& xc);

// Requires |a3| < 1; throws std::domain_error otherwise (the slice at |a3| = 1
// is lower-dimensional and has zero volume).
XTransformed x_transform(const XCoordinates& xc);
XCoordinates x_untransform(const XTransformed& t, double a3);

// Euclidean volume of the conditioned X body, (2/9) pi^2 (1 - r^2)^3.
double x_cond_volume_euclid(double r);

// HS volume of the conditioned X body: pi^2/2304 (1-r^2)^3 under PaperUniform,
// pi^2/288 (1-r^2)^3 under TraceExact.
double x_cond_volume_hs(double r, MetricConvention convention);

// Integral over r of the conditioned volume: pi^2/5040 under PaperUniform.
double x_total_volume_hs(MetricConvention convention);

// Euclidean volume of the separable part, (4 pi^2 / 45)(1 - r^2)^3.
double x_sep_volume_euclid(double r);

// Separability probability in the conditioned X body: 2/5 for r < 1, 1 at r = 1.
double x_psep(double r);

}  // namespace condvol
