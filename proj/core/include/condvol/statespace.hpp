#pragma once

#include <Eigen/Dense>
#include <span>
#include <vector>

namespace condvol {

// Default tolerance on the smallest eigenvalue when deciding positivity of a
// trace-one matrix.
inline constexpr double kPsdTol = 1e-10;

// Orthogonal Hermitian traceless basis of su(n), Tr(A_k A_l) = 2 delta_kl.
// Fixed order: symmetric pair matrices E_jk + E_kj for j < k in lexicographic
// order, then the antisymmetric ones -i(E_jk - E_kj) in the same order, then
// the n-1 diagonal matrices sqrt(2/(l(l+1))) (sum_{i<=l} E_ii - l E_{l+1,l+1}).
struct GeneratorBasis {
  int dim = 0;
  std::vector<Eigen::MatrixXcd> matrices;
};

GeneratorBasis su_generators(int n);

// Shared immutable basis instance for repeated coefficient maps (n <= 16).
const GeneratorBasis& su_generators_cached(int n);

// Real coordinates (a, b, c) of a bipartite n x m state in the generator
// parametrization rho = (1/nm)(1 + a_i A_i ⊗ 1 + b_j 1 ⊗ B_j + c_kl A_k ⊗ B_l).
struct CoefficientVector {
  int n = 2;
  int m = 2;
  Eigen::VectorXd a;  // length n^2 - 1
  Eigen::VectorXd b;  // length m^2 - 1
  Eigen::MatrixXd c;  // (n^2 - 1) x (m^2 - 1)

  static CoefficientVector zero(int n, int m);
};

// Coordinate families of the parametrization; used for metric weights.
enum class CoordKind { A, B, C };

// Per-coordinate euclid -> HS conversion convention. PaperUniform applies the
// single constant sqrt(2)/(nm) to every coordinate; TraceExact applies
// sqrt(Tr(G^2))/(nm) with G the coordinate's generator tensor, i.e.
// sqrt(2m)/(nm) for a-, sqrt(2n)/(nm) for b- and 2/(nm) for c-coordinates.
// The two agree for n = m = 2 on b/c coordinates but not on a-coordinates.
enum class MetricConvention { PaperUniform, TraceExact };

double coordinate_weight(int n, int m, CoordKind kind, MetricConvention convention);
double euclid_to_hs_factor(int n, int m, std::span<const CoordKind> coords,
                           MetricConvention convention);

// Hermitian unit-trace reconstruction from coordinates; positivity is NOT
// enforced (the point may lie outside the state body).
Eigen::MatrixXcd from_coefficients(const CoefficientVector& mu);

// Inverse map, a_i = (n/2) Tr(rho A_i ⊗ 1) etc. Throws std::invalid_argument
// if rho is not Hermitian unit-trace within 1e-8.
CoefficientVector to_coefficients(const Eigen::MatrixXcd& rho, int n, int m);

// Partial traces of an (n m) x (n m) matrix with system-major index k = i*m + j.
Eigen::MatrixXcd partial_trace_R(const Eigen::MatrixXcd& rho, int n, int m);
Eigen::MatrixXcd partial_trace_S(const Eigen::MatrixXcd& rho, int n, int m);

// Partial transpose over the m-dimensional factor: ((i,j),(k,l)) -> ((i,l),(k,j)).
Eigen::MatrixXcd partial_transpose_R(const Eigen::MatrixXcd& rho, int n, int m);

// Smallest eigenvalue test: true iff lambda_min(H) >= -tol. Throws on clearly
// non-Hermitian input.
bool is_positive_semidefinite(const Eigen::MatrixXcd& hermitian, double tol = kPsdTol);
double min_eigenvalue(const Eigen::MatrixXcd& hermitian);

bool is_density_matrix(const Eigen::MatrixXcd& rho, double tol = kPsdTol);

// Bloch radius r = sqrt(sum_i Tr(eta sigma_i)^2) = sqrt(2 Tr(eta^2) - 1) of a
// qubit state, clamped to [0, 1].
double bloch_radius(const Eigen::Matrix2cd& eta);

// sqrt(Tr[(rho1 - rho2)^2]).
double hs_distance(const Eigen::MatrixXcd& rho1, const Eigen::MatrixXcd& rho2);

// Hilbert-Schmidt volume of the full nm x nm state body (Zyczkowski-Sommers),
// sqrt(nm) (2 pi)^{nm(nm-1)/2} prod_{k=1}^{nm} Gamma(k) / Gamma(n^2 m^2),
// evaluated in log space.
double zs_total_volume(int n, int m);

// Compensated log-factorial helper used by the closed-form volumes.
double log_factorial(int k);

}  // namespace condvol
