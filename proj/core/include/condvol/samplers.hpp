#pragma once

#include <Eigen/Dense>
#include <vector>

#include "condvol/rng.hpp"
#include "condvol/statespace.hpp"
#include "condvol/xstate.hpp"

namespace condvol {

// Fubini-Study uniform pure state: normalized vector of iid complex gaussians.
Eigen::VectorXcd sample_pure_state(int dim, RandomStream& stream);

// HS-uniform N x N density matrix: an N^2-dimensional pure state reshaped to
// an N x N coefficient matrix M (system index = row), rho = M M^dagger.
Eigen::MatrixXcd sample_hs_density(int N, RandomStream& stream);

// Haar unitary via QR of a Ginibre matrix with the phase-diagonal correction.
Eigen::MatrixXcd haar_unitary(int N, RandomStream& stream);

// Flat Dirichlet point on the (N-1)-simplex.
Eigen::VectorXd sample_simplex(int N, RandomStream& stream);

// Spectrum-eigenbasis pair (Lambda, U) of the product measure.
struct SpectralSample {
  Eigen::VectorXd lambdas;
  Eigen::MatrixXcd unitary;
};
SpectralSample sample_spectral(int N, RandomStream& stream);

// rho = U Lambda U^dagger with Lambda flat on the simplex and U Haar; the
// eigenvalue x eigenvector product measure, distinct from the HS measure.
Eigen::MatrixXcd sample_product_measure(int N, RandomStream& stream);

// Draws from the conditioned space M^(2xm)_eta under the HS measure: a Haar
// isometry V (rows orthonormal, from a 2 x 2m^2 Ginibre G via (GG*)^{-1/2} G)
// gives the purification M = eta^{1/2} V in C^2 ⊗ C^m ⊗ C^{2m}; tracing out
// the 2m-dimensional ancilla yields a 2m x 2m state with Tr_R rho = eta.
Eigen::MatrixXcd sample_conditioned_density(const Eigen::Matrix2cd& eta, int m,
                                            RandomStream& stream);

// Reusable workspace version for tight loops (no per-sample allocation).
class ConditionedSampler {
 public:
  ConditionedSampler(const Eigen::Matrix2cd& eta, int m);

  // Fills rho() with a fresh draw.
  void sample(RandomStream& stream);
  const Eigen::MatrixXcd& rho() const { return rho_; }

  // True iff the partial transpose over the m-dimensional factor of the
  // current draw is positive at tolerance tol.
  bool current_is_ppt(double tol = kPsdTol);

  int m() const { return m_; }

 private:
  int m_;
  Eigen::Matrix2cd sqrt_eta_;
  Eigen::MatrixXcd g_;       // 2 x 2m^2
  Eigen::MatrixXcd mpure_;   // 2 x 2m^2
  Eigen::MatrixXcd rho_;     // 2m x 2m
  Eigen::MatrixXcd pt_;      // partial transpose workspace
};

struct RejectionDraw {
  bool accepted = false;
  CoefficientVector mu;
};

// One cube proposal for the conditioned 2 x m body: a = (0, 0, r) fixed, the
// remaining 4m^2 - 4 coordinates uniform in [-1, 1], accepted iff the
// reconstructed matrix is positive semi-definite at tolerance kPsdTol.
RejectionDraw rejection_sample_conditioned(double r, int m, RandomStream& stream);

struct XRejectionDraw {
  bool accepted = false;
  XCoordinates xc;
};

// One cube proposal for the conditioned X body: a3 = r, the six remaining
// coordinates uniform in [-1, 1], accepted via the closed-form inequalities.
XRejectionDraw rejection_sample_x(double r, RandomStream& stream);

// Exact uniform draw from the conditioned X body at radius r < 1, sampled in
// the disk-product coordinates (z and Z with density ~ (1 - t^2), the two
// planar coordinates uniform in their disks) and mapped back. Same law as the
// accepted output of rejection_sample_x.
XCoordinates sample_x_conditioned(double r, RandomStream& stream);

// Uniform draws from the two-qubit conditioned body (m = 2). The proposal is
// uniform on a product region derived from necessary positivity conditions
// (diagonal and 2x2 minor bounds) that contains the body for every r, so the
// accepted law is identical to cube rejection while remaining usable at high
// r where the cube acceptance rate collapses.
std::vector<CoefficientVector> sample_conditioned_slice_batch(double r, int count,
                                                              RandomStream& stream);

// Number of proposals consumed by the last sample_conditioned_slice_batch call
// on this thread (for efficiency reporting in tests).
long long slice_batch_last_proposals();

// Allocation-free counting loops backing the Monte-Carlo estimators.
long long count_accepted_conditioned(double r, int m, long long n_proposals,
                                     RandomStream& stream, double tol = kPsdTol);
long long count_accepted_x(double r, long long n_proposals, RandomStream& stream);

// Proposals with a3 uniform in [0, 1] and the six slice coordinates uniform in
// [-1, 1]; acceptance fraction times 2^6 estimates the integral over r of the
// conditioned euclidean volume.
long long count_accepted_x_total(long long n_proposals, RandomStream& stream);

struct XPptCounts {
  long long accepted = 0;
  long long ppt = 0;
};
XPptCounts count_x_accepted_ppt(double r, long long n_proposals, RandomStream& stream);

// PPT hits among n direct draws from the conditioned X body (r < 1).
long long count_x_direct_ppt(double r, long long n_samples, RandomStream& stream);

namespace detail {
// Fast positivity check used by the hot loops: attempted Cholesky of H + tol*I
// on a column-packed Hermitian matrix of dimension N <= 8.
bool psd_shifted_cholesky(const std::complex<double>* h, int N, double tol);

// Membership test of the (b, c) proposal envelope used by the batch sampler;
// exposed for the containment unit test.
bool slice_envelope_contains(double r, const double* b, const double* c);
}  // namespace detail

}  // namespace condvol
