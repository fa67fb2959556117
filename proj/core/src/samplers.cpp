#include "condvol/samplers.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace condvol {

namespace {

using Complex = std::complex<double>;

thread_local long long g_slice_batch_proposals = 0;

// Hermitian square root of a 2x2 PSD matrix via the Cayley-Hamilton form
// sqrt(A) = (A + sqrt(det A) I) / sqrt(tr A + 2 sqrt(det A)).
Eigen::Matrix2cd sqrt_psd_2x2(const Eigen::Matrix2cd& a) {
  const double tr = a(0, 0).real() + a(1, 1).real();
  double det = (a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0)).real();
  if (det < 0.0) det = 0.0;
  const double s = std::sqrt(det);
  const double t = std::sqrt(tr + 2.0 * s);
  if (!(t > 0.0)) throw std::invalid_argument("sqrt_psd_2x2: zero matrix");
  Eigen::Matrix2cd out = a;
  out(0, 0) += s;
  out(1, 1) += s;
  return out / t;
}

// Inverse square root of a Hermitian positive definite 2x2 matrix.
Eigen::Matrix2cd inv_sqrt_pd_2x2(const Eigen::Matrix2cd& a) {
  const Eigen::Matrix2cd root = sqrt_psd_2x2(a);
  const double det = (root(0, 0) * root(1, 1) - root(0, 1) * root(1, 0)).real();
  Eigen::Matrix2cd inv;
  inv(0, 0) = root(1, 1) / det;
  inv(1, 1) = root(0, 0) / det;
  inv(0, 1) = -root(0, 1) / det;
  inv(1, 0) = -root(1, 0) / det;
  return inv;
}

// Upper-triangle assembly of 4 rho for a two-qubit state with a = (0, 0, a3),
// written into a row-major 4x4 buffer. Index (s, r) -> 2 s + r.
inline void assemble_two_qubit_4rho(double a3, const double* b, const double* c,
                                    Complex* h) {
  const double b1 = b[0], b2 = b[1], b3 = b[2];
  const double c11 = c[0], c12 = c[1], c13 = c[2];
  const double c21 = c[3], c22 = c[4], c23 = c[5];
  const double c31 = c[6], c32 = c[7], c33 = c[8];

  h[0 * 4 + 0] = Complex(1 + a3 + b3 + c33, 0);
  h[1 * 4 + 1] = Complex(1 + a3 - b3 - c33, 0);
  h[2 * 4 + 2] = Complex(1 - a3 + b3 - c33, 0);
  h[3 * 4 + 3] = Complex(1 - a3 - b3 + c33, 0);
  h[0 * 4 + 1] = Complex(b1 + c31, -(b2 + c32));
  h[2 * 4 + 3] = Complex(b1 - c31, -(b2 - c32));
  h[0 * 4 + 2] = Complex(c13, -c23);
  h[1 * 4 + 3] = Complex(-c13, c23);
  h[0 * 4 + 3] = Complex(c11 - c22, -(c12 + c21));
  h[1 * 4 + 2] = Complex(c11 + c22, c12 - c21);
  h[1 * 4 + 0] = std::conj(h[0 * 4 + 1]);
  h[3 * 4 + 2] = std::conj(h[2 * 4 + 3]);
  h[2 * 4 + 0] = std::conj(h[0 * 4 + 2]);
  h[3 * 4 + 1] = std::conj(h[1 * 4 + 3]);
  h[3 * 4 + 0] = std::conj(h[0 * 4 + 3]);
  h[2 * 4 + 1] = std::conj(h[1 * 4 + 2]);
}

// Two-qubit positivity at tolerance tol on the trace-one normalization; the
// buffer holds 4 rho, so the shift is 4 tol.
inline bool two_qubit_psd(Complex* h, double tol) {
  // Diagonal screen first: roughly half of uniform cube proposals die here.
  const double shift = 4.0 * tol;
  for (int i = 0; i < 4; ++i) {
    if (h[i * 4 + i].real() + shift <= 0.0) return false;
  }
  return detail::psd_shifted_cholesky(h, 4, shift);
}

struct SliceProposal {
  double b[3];
  double c[9];
};

// One proposal from the product envelope of the m = 2 conditioned body.
// Necessary positivity conditions bound the coordinate combinations:
//   diagonals:       |b3 + c33| <= 1 + r,             |b3 - c33| <= 1 - r
//   (1,2)/(3,4) min: |(b1, b2) + (c31, c32)| <= 1 + r, |(b1,b2) - (c31,c32)| <= 1 - r
//   (1,4)/(2,3) min: |(c11 - c22, c12 + c21)| and |(c11 + c22, c12 - c21)| <= 2 sqrt(1 - r^2)
//   (1,3)/(2,4) min: |(c13, c23)| <= min(1, 2 sqrt(1 - r^2))
// so uniform draws from the product of these regions cover the body exactly.
inline void draw_slice_proposal(double r, RandomStream& stream, SliceProposal& p) {
  const double rad_ct = 2.0 * std::sqrt(std::max(0.0, 1.0 - r * r));

  const double u = (1.0 + r) * stream.uniform_symmetric();
  const double v = (1.0 - r) * stream.uniform_symmetric();
  p.b[2] = 0.5 * (u + v);   // b3
  p.c[8] = 0.5 * (u - v);   // c33

  const auto q = stream.uniform_in_disk(1.0 + r);
  const auto pp = stream.uniform_in_disk(1.0 - r);
  p.b[0] = 0.5 * (q[0] + pp[0]);  // b1
  p.c[6] = 0.5 * (q[0] - pp[0]);  // c31
  p.b[1] = 0.5 * (q[1] + pp[1]);  // b2
  p.c[7] = 0.5 * (q[1] - pp[1]);  // c32

  const auto s = stream.uniform_in_disk(rad_ct);
  const auto t = stream.uniform_in_disk(rad_ct);
  p.c[0] = 0.5 * (t[0] + s[0]);  // c11
  p.c[4] = 0.5 * (t[0] - s[0]);  // c22
  p.c[1] = 0.5 * (s[1] + t[1]);  // c12
  p.c[3] = 0.5 * (s[1] - t[1]);  // c21

  const auto e = stream.uniform_in_disk(std::min(1.0, rad_ct));
  p.c[2] = e[0];  // c13
  p.c[5] = e[1];  // c23
}

inline bool slice_proposal_fast_reject(double r, const SliceProposal& p) {
  for (double x : p.b)
    if (std::abs(x) > 1.0) return true;
  for (double x : p.c)
    if (std::abs(x) > 1.0) return true;
  // Minor bounds that depend on drawn coordinates.
  if (p.c[2] * p.c[2] + p.c[5] * p.c[5] > (1.0 - std::abs(p.b[2])) * (1.0 - std::abs(p.b[2])))
    return true;
  const double s1 = p.c[0] - p.c[4], s2 = p.c[1] + p.c[3];
  if (s1 * s1 + s2 * s2 > (1.0 + p.c[8]) * (1.0 + p.c[8])) return true;
  const double t1 = p.c[0] + p.c[4], t2 = p.c[1] - p.c[3];
  if (t1 * t1 + t2 * t2 > (1.0 - p.c[8]) * (1.0 - p.c[8])) return true;
  (void)r;
  return false;
}

CoefficientVector make_mu_2x2(double r, const double* b, const double* c) {
  CoefficientVector mu = CoefficientVector::zero(2, 2);
  mu.a[2] = r;
  for (int j = 0; j < 3; ++j) mu.b[j] = b[j];
  for (int k = 0; k < 3; ++k)
    for (int l = 0; l < 3; ++l) mu.c(k, l) = c[k * 3 + l];
  return mu;
}

// Generic 2 x m assembly of rho from a = (0,0,r) and the (b, c) coordinates,
// using the 2x2 block structure of the Pauli factor.
Eigen::MatrixXcd assemble_conditioned(double r, int m, const Eigen::VectorXd& b,
                                      const Eigen::MatrixXd& c) {
  const GeneratorBasis& basis = su_generators_cached(m);
  const int d = m * m - 1;
  Eigen::MatrixXcd bsum = Eigen::MatrixXcd::Zero(m, m);
  Eigen::MatrixXcd c1 = Eigen::MatrixXcd::Zero(m, m);
  Eigen::MatrixXcd c2 = Eigen::MatrixXcd::Zero(m, m);
  Eigen::MatrixXcd c3 = Eigen::MatrixXcd::Zero(m, m);
  for (int l = 0; l < d; ++l) {
    bsum += b[l] * basis.matrices[l];
    c1 += c(0, l) * basis.matrices[l];
    c2 += c(1, l) * basis.matrices[l];
    c3 += c(2, l) * basis.matrices[l];
  }
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(m, m);
  Eigen::MatrixXcd rho(2 * m, 2 * m);
  rho.topLeftCorner(m, m) = (1.0 + r) * id + bsum + c3;
  rho.bottomRightCorner(m, m) = (1.0 - r) * id + bsum - c3;
  rho.topRightCorner(m, m) = c1 - Complex(0, 1) * c2;
  rho.bottomLeftCorner(m, m) = rho.topRightCorner(m, m).adjoint();
  return rho / (2.0 * m);
}

}  // namespace

namespace detail {

bool psd_shifted_cholesky(const Complex* h, int N, double tol) {
  // In-place lower Cholesky of H + tol*I with early exit on a nonpositive
  // pivot. N <= 8; h is row-major.
  std::array<Complex, 64> a;
  for (int i = 0; i < N; ++i)
    for (int j = 0; j <= i; ++j) a[i * 8 + j] = h[i * N + j];

  for (int k = 0; k < N; ++k) {
    double d = a[k * 8 + k].real() + tol;
    for (int j = 0; j < k; ++j) d -= std::norm(a[k * 8 + j]);
    if (d <= 0.0) return false;
    const double root = std::sqrt(d);
    a[k * 8 + k] = Complex(root, 0);
    const double inv = 1.0 / root;
    for (int i = k + 1; i < N; ++i) {
      Complex s = a[i * 8 + k];
      for (int j = 0; j < k; ++j) s -= a[i * 8 + j] * std::conj(a[k * 8 + j]);
      a[i * 8 + k] = s * inv;
    }
  }
  return true;
}

bool slice_envelope_contains(double r, const double* b, const double* c) {
  const double eps = 1e-12;
  const double rad_ct_sq = 4.0 * (1.0 - r * r);
  if (std::abs(b[2] + c[8]) > 1.0 + r + eps) return false;
  if (std::abs(b[2] - c[8]) > 1.0 - r + eps) return false;
  const double qp1 = b[0] + c[6], qp2 = b[1] + c[7];
  if (qp1 * qp1 + qp2 * qp2 > (1.0 + r) * (1.0 + r) + eps) return false;
  const double pm1 = b[0] - c[6], pm2 = b[1] - c[7];
  if (pm1 * pm1 + pm2 * pm2 > (1.0 - r) * (1.0 - r) + eps) return false;
  const double s1 = c[0] - c[4], s2 = c[1] + c[3];
  if (s1 * s1 + s2 * s2 > rad_ct_sq + eps) return false;
  const double t1 = c[0] + c[4], t2 = c[1] - c[3];
  if (t1 * t1 + t2 * t2 > rad_ct_sq + eps) return false;
  if (c[2] * c[2] + c[5] * c[5] > std::min(1.0, rad_ct_sq) + eps) return false;
  return true;
}

}  // namespace detail

Eigen::VectorXcd sample_pure_state(int dim, RandomStream& stream) {
  if (dim < 1) throw std::invalid_argument("sample_pure_state: dim must be >= 1");
  Eigen::VectorXcd psi(dim);
  for (int i = 0; i < dim; ++i) psi[i] = stream.complex_gaussian();
  const double norm = psi.norm();
  if (norm == 0.0) return sample_pure_state(dim, stream);
  return psi / norm;
}

Eigen::MatrixXcd sample_hs_density(int N, RandomStream& stream) {
  if (N < 2) throw std::invalid_argument("sample_hs_density: N must be >= 2");
  Eigen::MatrixXcd m(N, N);
  double norm_sq = 0.0;
  for (int j = 0; j < N; ++j)
    for (int i = 0; i < N; ++i) {
      const Complex z = stream.complex_gaussian();
      m(i, j) = z;
      norm_sq += std::norm(z);
    }
  return (m * m.adjoint()) / norm_sq;
}

Eigen::MatrixXcd haar_unitary(int N, RandomStream& stream) {
  if (N < 1) throw std::invalid_argument("haar_unitary: N must be >= 1");
  Eigen::MatrixXcd g(N, N);
  for (int j = 0; j < N; ++j)
    for (int i = 0; i < N; ++i) g(i, j) = stream.complex_gaussian();
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  Eigen::MatrixXcd q = qr.householderQ();
  const Eigen::MatrixXcd& qrmat = qr.matrixQR();
  // Fix the phase gauge so the distribution is exactly Haar.
  for (int i = 0; i < N; ++i) {
    const Complex rii = qrmat(i, i);
    const double mag = std::abs(rii);
    q.col(i) *= (mag > 0.0) ? rii / mag : Complex(1, 0);
  }
  return q;
}

Eigen::VectorXd sample_simplex(int N, RandomStream& stream) {
  if (N < 1) throw std::invalid_argument("sample_simplex: N must be >= 1");
  Eigen::VectorXd y(N);
  double sum = 0.0;
  for (int i = 0; i < N; ++i) {
    y[i] = -std::log1p(-stream.uniform());
    sum += y[i];
  }
  return y / sum;
}

SpectralSample sample_spectral(int N, RandomStream& stream) {
  SpectralSample s;
  s.lambdas = sample_simplex(N, stream);
  s.unitary = haar_unitary(N, stream);
  return s;
}

Eigen::MatrixXcd sample_product_measure(int N, RandomStream& stream) {
  const SpectralSample s = sample_spectral(N, stream);
  return s.unitary * s.lambdas.asDiagonal() * s.unitary.adjoint();
}

ConditionedSampler::ConditionedSampler(const Eigen::Matrix2cd& eta, int m) : m_(m) {
  if (m < 2) throw std::invalid_argument("ConditionedSampler: m must be >= 2");
  if (!is_density_matrix(eta, 1e-8))
    throw std::invalid_argument("ConditionedSampler: eta is not a qubit state");
  sqrt_eta_ = sqrt_psd_2x2(eta);
  const int k = 2 * m * m;
  g_.resize(2, k);
  mpure_.resize(2, k);
  rho_.resize(2 * m, 2 * m);
  pt_.resize(2 * m, 2 * m);
}

void ConditionedSampler::sample(RandomStream& stream) {
  const int k = 2 * m_ * m_;
  for (int attempt = 0; attempt < 100; ++attempt) {
    for (int j = 0; j < k; ++j) {
      g_(0, j) = stream.complex_gaussian();
      g_(1, j) = stream.complex_gaussian();
    }
    double w00 = 0, w11 = 0;
    Complex w01(0, 0);
    for (int j = 0; j < k; ++j) {
      w00 += std::norm(g_(0, j));
      w11 += std::norm(g_(1, j));
      w01 += g_(0, j) * std::conj(g_(1, j));
    }
    const double tr = w00 + w11;
    const double det = w00 * w11 - std::norm(w01);
    if (!(det > 1e-12 * tr * tr)) continue;  // numerically singular G G*: redraw

    Eigen::Matrix2cd w;
    w << Complex(w00, 0), w01, std::conj(w01), Complex(w11, 0);
    const Eigen::Matrix2cd t = sqrt_eta_ * inv_sqrt_pd_2x2(w);
    mpure_.noalias() = t * g_;

    const int two_m = 2 * m_;
    for (int s = 0; s < 2; ++s)
      for (int j = 0; j < m_; ++j) {
        const int row = s * m_ + j;
        for (int sp = 0; sp < 2; ++sp)
          for (int jp = 0; jp < m_; ++jp) {
            const int col = sp * m_ + jp;
            if (col < row) continue;
            Complex acc(0, 0);
            const Complex* left = mpure_.data() + (static_cast<std::ptrdiff_t>(j) * two_m) * 2 + s;
            const Complex* right = mpure_.data() + (static_cast<std::ptrdiff_t>(jp) * two_m) * 2 + sp;
            for (int a = 0; a < two_m; ++a)
              acc += left[2 * a] * std::conj(right[2 * a]);
            rho_(row, col) = acc;
            if (col != row) rho_(col, row) = std::conj(acc);
          }
      }
    return;
  }
  throw std::runtime_error("ConditionedSampler: repeated singular Ginibre draws");
}

bool ConditionedSampler::current_is_ppt(double tol) {
  const int n = 2, m = m_;
  for (int i = 0; i < n; ++i)
    for (int ip = 0; ip < n; ++ip)
      for (int j = 0; j < m; ++j)
        for (int jp = 0; jp < m; ++jp)
          pt_(i * m + j, ip * m + jp) = rho_(i * m + jp, ip * m + j);
  const int N = 2 * m;
  if (N <= 8) {
    // Pack row-major upper/lower into a contiguous buffer for the fast check.
    std::array<Complex, 64> buf;
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j) buf[i * N + j] = pt_(i, j);
    return detail::psd_shifted_cholesky(buf.data(), N, tol);
  }
  Eigen::MatrixXcd shifted = pt_ + tol * Eigen::MatrixXcd::Identity(N, N);
  return Eigen::LLT<Eigen::MatrixXcd>(shifted).info() == Eigen::Success;
}

Eigen::MatrixXcd sample_conditioned_density(const Eigen::Matrix2cd& eta, int m,
                                            RandomStream& stream) {
  ConditionedSampler sampler(eta, m);
  sampler.sample(stream);
  return sampler.rho();
}

RejectionDraw rejection_sample_conditioned(double r, int m, RandomStream& stream) {
  if (!(r >= 0.0 && r <= 1.0))
    throw std::domain_error("rejection_sample_conditioned: r must lie in [0, 1]");
  if (m < 2) throw std::invalid_argument("rejection_sample_conditioned: m must be >= 2");

  if (m == 2) {
    double b[3], c[9];
    for (double& x : b) x = stream.uniform_symmetric();
    for (double& x : c) x = stream.uniform_symmetric();
    Complex h[16];
    assemble_two_qubit_4rho(r, b, c, h);
    RejectionDraw draw;
    draw.accepted = two_qubit_psd(h, kPsdTol);
    draw.mu = make_mu_2x2(r, b, c);
    return draw;
  }

  const int d = m * m - 1;
  CoefficientVector mu = CoefficientVector::zero(2, m);
  mu.a[2] = r;
  for (int j = 0; j < d; ++j) mu.b[j] = stream.uniform_symmetric();
  for (int k = 0; k < 3; ++k)
    for (int l = 0; l < d; ++l) mu.c(k, l) = stream.uniform_symmetric();
  const Eigen::MatrixXcd rho = assemble_conditioned(r, m, mu.b, mu.c);
  RejectionDraw draw;
  draw.accepted = min_eigenvalue(rho) >= -kPsdTol;
  draw.mu = std::move(mu);
  return draw;
}

XRejectionDraw rejection_sample_x(double r, RandomStream& stream) {
  if (!(r >= 0.0 && r <= 1.0))
    throw std::domain_error("rejection_sample_x: r must lie in [0, 1]");
  XRejectionDraw draw;
  draw.xc.a3 = r;
  draw.xc.b3 = stream.uniform_symmetric();
  draw.xc.c11 = stream.uniform_symmetric();
  draw.xc.c12 = stream.uniform_symmetric();
  draw.xc.c21 = stream.uniform_symmetric();
  draw.xc.c22 = stream.uniform_symmetric();
  draw.xc.c33 = stream.uniform_symmetric();
  draw.accepted = x_is_positive(draw.xc);
  return draw;
}

XCoordinates sample_x_conditioned(double r, RandomStream& stream) {
  if (!(r >= 0.0 && r < 1.0))
    throw std::domain_error("sample_x_conditioned: r must lie in [0, 1)");
  // Uniform on the body <=> (z, Z) each with density 3/4 (1 - t^2) on [-1, 1]
  // and the planar pairs uniform in disks of radius r(z, Z) and R(z, Z).
  auto draw_semicircle_weight = [&stream] {
    for (;;) {
      const double t = stream.uniform_symmetric();
      if (stream.uniform() < 1.0 - t * t) return t;
    }
  };
  XTransformed t;
  t.z = draw_semicircle_weight();
  t.Z = draw_semicircle_weight();
  const auto xy = stream.uniform_in_disk(std::sqrt(t.r_sq()));
  const auto XY = stream.uniform_in_disk(std::sqrt(t.R_sq()));
  t.x = xy[0];
  t.y = xy[1];
  t.X = XY[0];
  t.Y = XY[1];
  return x_untransform(t, r);
}

std::vector<CoefficientVector> sample_conditioned_slice_batch(double r, int count,
                                                              RandomStream& stream) {
  if (!(r >= 0.0 && r < 1.0))
    throw std::domain_error("sample_conditioned_slice_batch: r must lie in [0, 1)");
  std::vector<CoefficientVector> out;
  out.reserve(static_cast<std::size_t>(count));
  g_slice_batch_proposals = 0;
  SliceProposal p;
  Complex h[16];
  while (static_cast<int>(out.size()) < count) {
    ++g_slice_batch_proposals;
    draw_slice_proposal(r, stream, p);
    if (slice_proposal_fast_reject(r, p)) continue;
    assemble_two_qubit_4rho(r, p.b, p.c, h);
    if (!two_qubit_psd(h, kPsdTol)) continue;
    out.push_back(make_mu_2x2(r, p.b, p.c));
  }
  return out;
}

long long slice_batch_last_proposals() { return g_slice_batch_proposals; }

long long count_accepted_conditioned(double r, int m, long long n_proposals,
                                     RandomStream& stream, double tol) {
  if (!(r >= 0.0 && r <= 1.0))
    throw std::domain_error("count_accepted_conditioned: r must lie in [0, 1]");
  long long accepted = 0;
  if (m == 2) {
    const double shift = 4.0 * tol;
    double b[3], c[9];
    Complex h[16];
    for (long long i = 0; i < n_proposals; ++i) {
      // b3 and c33 first: the four diagonal entries depend on them alone and
      // reject about half of all proposals before the rest is drawn.
      b[2] = stream.uniform_symmetric();
      c[8] = stream.uniform_symmetric();
      const double d0 = 1 + r + b[2] + c[8];
      const double d1 = 1 + r - b[2] - c[8];
      const double d2 = 1 - r + b[2] - c[8];
      const double d3 = 1 - r - b[2] + c[8];
      if (d0 + shift <= 0 || d1 + shift <= 0 || d2 + shift <= 0 || d3 + shift <= 0)
        continue;
      b[0] = stream.uniform_symmetric();
      b[1] = stream.uniform_symmetric();
      c[0] = stream.uniform_symmetric();
      c[1] = stream.uniform_symmetric();
      c[2] = stream.uniform_symmetric();
      c[3] = stream.uniform_symmetric();
      c[4] = stream.uniform_symmetric();
      c[5] = stream.uniform_symmetric();
      c[6] = stream.uniform_symmetric();
      c[7] = stream.uniform_symmetric();
      assemble_two_qubit_4rho(r, b, c, h);
      if (detail::psd_shifted_cholesky(h, 4, shift)) ++accepted;
    }
    return accepted;
  }
  const GeneratorBasis& basis = su_generators_cached(m);
  (void)basis;
  CoefficientVector mu = CoefficientVector::zero(2, m);
  mu.a[2] = r;
  const int d = m * m - 1;
  for (long long i = 0; i < n_proposals; ++i) {
    for (int j = 0; j < d; ++j) mu.b[j] = stream.uniform_symmetric();
    for (int k = 0; k < 3; ++k)
      for (int l = 0; l < d; ++l) mu.c(k, l) = stream.uniform_symmetric();
    const Eigen::MatrixXcd rho = assemble_conditioned(r, m, mu.b, mu.c);
    if (min_eigenvalue(rho) >= -tol) ++accepted;
  }
  return accepted;
}

long long count_accepted_x(double r, long long n_proposals, RandomStream& stream) {
  long long accepted = 0;
  XCoordinates xc;
  xc.a3 = r;
  for (long long i = 0; i < n_proposals; ++i) {
    xc.b3 = stream.uniform_symmetric();
    xc.c11 = stream.uniform_symmetric();
    xc.c12 = stream.uniform_symmetric();
    xc.c21 = stream.uniform_symmetric();
    xc.c22 = stream.uniform_symmetric();
    xc.c33 = stream.uniform_symmetric();
    if (x_is_positive(xc)) ++accepted;
  }
  return accepted;
}

long long count_accepted_x_total(long long n_proposals, RandomStream& stream) {
  long long accepted = 0;
  XCoordinates xc;
  for (long long i = 0; i < n_proposals; ++i) {
    xc.a3 = stream.uniform();
    xc.b3 = stream.uniform_symmetric();
    xc.c11 = stream.uniform_symmetric();
    xc.c12 = stream.uniform_symmetric();
    xc.c21 = stream.uniform_symmetric();
    xc.c22 = stream.uniform_symmetric();
    xc.c33 = stream.uniform_symmetric();
    if (x_is_positive(xc)) ++accepted;
  }
  return accepted;
}

XPptCounts count_x_accepted_ppt(double r, long long n_proposals, RandomStream& stream) {
  XPptCounts counts;
  for (long long i = 0; i < n_proposals; ++i) {
    const XRejectionDraw draw = rejection_sample_x(r, stream);
    if (!draw.accepted) continue;
    ++counts.accepted;
    if (x_is_ppt(draw.xc)) ++counts.ppt;
  }
  return counts;
}

long long count_x_direct_ppt(double r, long long n_samples, RandomStream& stream) {
  long long hits = 0;
  for (long long i = 0; i < n_samples; ++i) {
    if (x_is_ppt(sample_x_conditioned(r, stream))) ++hits;
  }
  return hits;
}

}  // namespace condvol
