#include "condvol/xstate.hpp"

#include <cmath>
#include <stdexcept>

namespace condvol {

namespace {
constexpr double kPiSq = M_PI * M_PI;

void check_radius(double r) {
  if (!(r >= 0.0 && r <= 1.0)) throw std::domain_error("radius must lie in [0, 1]");
}
}  // namespace

Eigen::Matrix4cd x_to_density(const XCoordinates& xc) {
  using C = std::complex<double>;
  Eigen::Matrix4cd rho = Eigen::Matrix4cd::Zero();
  rho(0, 0) = C(0.25 * (1 + xc.a3 + xc.b3 + xc.c33), 0);
  rho(1, 1) = C(0.25 * (1 + xc.a3 - xc.b3 - xc.c33), 0);
  rho(2, 2) = C(0.25 * (1 - xc.a3 + xc.b3 - xc.c33), 0);
  rho(3, 3) = C(0.25 * (1 - xc.a3 - xc.b3 + xc.c33), 0);
  rho(0, 3) = 0.25 * C(xc.c11 - xc.c22, -(xc.c12 + xc.c21));
  rho(3, 0) = std::conj(rho(0, 3));
  rho(1, 2) = 0.25 * C(xc.c11 + xc.c22, xc.c12 - xc.c21);
  rho(2, 1) = std::conj(rho(1, 2));
  return rho;
}

double x_positivity_margin(const XCoordinates& xc) {
  const double lhs1 = std::sqrt((xc.a3 + xc.b3) * (xc.a3 + xc.b3) +
                                (xc.c11 - xc.c22) * (xc.c11 - xc.c22) +
                                (xc.c12 + xc.c21) * (xc.c12 + xc.c21));
  const double lhs2 = std::sqrt((xc.a3 - xc.b3) * (xc.a3 - xc.b3) +
                                (xc.c11 + xc.c22) * (xc.c11 + xc.c22) +
                                (xc.c12 - xc.c21) * (xc.c12 - xc.c21));
  return std::min((1.0 + xc.c33) - lhs1, (1.0 - xc.c33) - lhs2);
}

bool x_is_positive(const XCoordinates& xc) { return x_positivity_margin(xc) >= 0.0; }

XCoordinates x_partial_transpose(const XCoordinates& xc) {
  XCoordinates pt = xc;
  pt.c12 = -xc.c12;
  pt.c22 = -xc.c22;
  return pt;
}

double x_ppt_margin(const XCoordinates& xc) {
  return x_positivity_margin(x_partial_transpose(xc));
}

bool x_is_ppt(const XCoordinates& xc) { return x_ppt_margin(xc) >= 0.0; }

XTransformed x_transform(const XCoordinates& xc) {
  if (!(std::abs(xc.a3) < 1.0))
    throw std::domain_error("x_transform: singular for |a3| >= 1");
  const double s = std::sqrt(1.0 - xc.a3 * xc.a3);
  XTransformed t;
  t.x = (xc.c11 + xc.c22) / s;
  t.y = (xc.c12 - xc.c21) / s;
  t.X = (xc.c12 + xc.c21) / s;
  t.Y = (xc.c11 - xc.c22) / s;
  t.z = (xc.b3 + xc.c33) / (1.0 + xc.a3);
  t.Z = (xc.b3 - xc.c33) / (1.0 - xc.a3);
  const double w = 1.0 - xc.a3 * xc.a3;
  t.jacobian = 0.125 * w * w * w;
  return t;
}

XCoordinates x_untransform(const XTransformed& t, double a3) {
  if (!(std::abs(a3) < 1.0))
    throw std::domain_error("x_untransform: singular for |a3| >= 1");
  const double s = std::sqrt(1.0 - a3 * a3);
  XCoordinates xc;
  xc.a3 = a3;
  xc.c11 = 0.5 * s * (t.x + t.Y);
  xc.c22 = 0.5 * s * (t.x - t.Y);
  xc.c12 = 0.5 * s * (t.X + t.y);
  xc.c21 = 0.5 * s * (t.X - t.y);
  xc.b3 = 0.5 * (t.z * (1.0 + a3) + t.Z * (1.0 - a3));
  xc.c33 = 0.5 * (t.z * (1.0 + a3) - t.Z * (1.0 - a3));
  return xc;
}

double x_cond_volume_euclid(double r) {
  check_radius(r);
  const double w = 1.0 - r * r;
  return (2.0 / 9.0) * kPiSq * w * w * w;
}

double x_cond_volume_hs(double r, MetricConvention convention) {
  // Six slice coordinates: one b and five c.
  static constexpr CoordKind kinds[6] = {CoordKind::B, CoordKind::C, CoordKind::C,
                                         CoordKind::C, CoordKind::C, CoordKind::C};
  return euclid_to_hs_factor(2, 2, kinds, convention) * x_cond_volume_euclid(r);
}

double x_total_volume_hs(MetricConvention convention) {
  // int_0^1 (1 - r^2)^3 dr = 16/35.
  return x_cond_volume_hs(0.0, convention) * (16.0 / 35.0);
}

double x_sep_volume_euclid(double r) {
  check_radius(r);
  const double w = 1.0 - r * r;
  return (4.0 / 45.0) * kPiSq * w * w * w;
}

double x_psep(double r) {
  check_radius(r);
  return r < 1.0 ? 0.4 : 1.0;
}

}  // namespace condvol
