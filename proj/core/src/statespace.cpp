#include "condvol/statespace.hpp"

#include <cmath>
#include <complex>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>

namespace condvol {

namespace {

using Complex = std::complex<double>;

void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

double hermiticity_defect(const Eigen::MatrixXcd& h) {
  return (h - h.adjoint()).cwiseAbs().maxCoeff();
}

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

}  // namespace

GeneratorBasis su_generators(int n) {
  require(n >= 2, "su_generators: dimension must be >= 2");
  GeneratorBasis basis;
  basis.dim = n;
  basis.matrices.reserve(static_cast<std::size_t>(n) * n - 1);

  for (int j = 0; j < n; ++j) {
    for (int k = j + 1; k < n; ++k) {
      Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(n, n);
      s(j, k) = Complex(1, 0);
      s(k, j) = Complex(1, 0);
      basis.matrices.push_back(std::move(s));
    }
  }
  for (int j = 0; j < n; ++j) {
    for (int k = j + 1; k < n; ++k) {
      Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(n, n);
      a(j, k) = Complex(0, -1);
      a(k, j) = Complex(0, 1);
      basis.matrices.push_back(std::move(a));
    }
  }
  for (int l = 1; l < n; ++l) {
    Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(n, n);
    const double scale = std::sqrt(2.0 / (l * (l + 1.0)));
    for (int i = 0; i < l; ++i) d(i, i) = scale;
    d(l, l) = -scale * l;
    basis.matrices.push_back(std::move(d));
  }
  return basis;
}

const GeneratorBasis& su_generators_cached(int n) {
  require(n >= 2 && n <= 16, "su_generators_cached: dimension out of range");
  static std::map<int, GeneratorBasis> cache;
  static std::mutex mutex;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, su_generators(n)).first;
  return it->second;
}

CoefficientVector CoefficientVector::zero(int n, int m) {
  CoefficientVector mu;
  mu.n = n;
  mu.m = m;
  mu.a = Eigen::VectorXd::Zero(n * n - 1);
  mu.b = Eigen::VectorXd::Zero(m * m - 1);
  mu.c = Eigen::MatrixXd::Zero(n * n - 1, m * m - 1);
  return mu;
}

double coordinate_weight(int n, int m, CoordKind kind, MetricConvention convention) {
  const double nm = static_cast<double>(n) * m;
  if (convention == MetricConvention::PaperUniform) return std::sqrt(2.0) / nm;
  switch (kind) {
    case CoordKind::A:
      return std::sqrt(2.0 * m) / nm;
    case CoordKind::B:
      return std::sqrt(2.0 * n) / nm;
    case CoordKind::C:
      return 2.0 / nm;
  }
  throw std::invalid_argument("coordinate_weight: unknown coordinate kind");
}

double euclid_to_hs_factor(int n, int m, std::span<const CoordKind> coords,
                           MetricConvention convention) {
  require(!coords.empty(), "euclid_to_hs_factor: empty coordinate list");
  double factor = 1.0;
  for (CoordKind kind : coords) factor *= coordinate_weight(n, m, kind, convention);
  return factor;
}

Eigen::MatrixXcd from_coefficients(const CoefficientVector& mu) {
  const int n = mu.n;
  const int m = mu.m;
  require(n >= 2 && m >= 2, "from_coefficients: dimensions must be >= 2");
  require(mu.a.size() == n * n - 1 && mu.b.size() == m * m - 1 &&
              mu.c.rows() == n * n - 1 && mu.c.cols() == m * m - 1,
          "from_coefficients: coefficient shapes do not match (n, m)");

  const GeneratorBasis& base_a = su_generators_cached(n);
  const GeneratorBasis& base_b = su_generators_cached(m);
  const int dim = n * m;

  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Identity(dim, dim);
  const Eigen::MatrixXcd id_n = Eigen::MatrixXcd::Identity(n, n);
  const Eigen::MatrixXcd id_m = Eigen::MatrixXcd::Identity(m, m);
  for (int i = 0; i < n * n - 1; ++i) {
    if (mu.a[i] != 0.0) rho += mu.a[i] * kron(base_a.matrices[i], id_m);
  }
  for (int j = 0; j < m * m - 1; ++j) {
    if (mu.b[j] != 0.0) rho += mu.b[j] * kron(id_n, base_b.matrices[j]);
  }
  for (int k = 0; k < n * n - 1; ++k) {
    for (int l = 0; l < m * m - 1; ++l) {
      if (mu.c(k, l) != 0.0)
        rho += mu.c(k, l) * kron(base_a.matrices[k], base_b.matrices[l]);
    }
  }
  rho /= static_cast<double>(dim);
  return rho;
}

CoefficientVector to_coefficients(const Eigen::MatrixXcd& rho, int n, int m) {
  const int dim = n * m;
  require(rho.rows() == dim && rho.cols() == dim, "to_coefficients: dimension mismatch");
  require(hermiticity_defect(rho) <= 1e-8, "to_coefficients: matrix is not Hermitian");
  require(std::abs(rho.trace().real() - 1.0) <= 1e-8 && std::abs(rho.trace().imag()) <= 1e-8,
          "to_coefficients: trace must be one");

  const GeneratorBasis& base_a = su_generators_cached(n);
  const GeneratorBasis& base_b = su_generators_cached(m);
  CoefficientVector mu = CoefficientVector::zero(n, m);

  // a_i = (n/2) Tr(rho A_i ⊗ 1): contract through the partial trace so the
  // inner products run over n x n matrices only.
  const Eigen::MatrixXcd rho_s = partial_trace_R(rho, n, m);
  const Eigen::MatrixXcd rho_r = partial_trace_S(rho, n, m);
  for (int i = 0; i < n * n - 1; ++i)
    mu.a[i] = 0.5 * n * (rho_s * base_a.matrices[i]).trace().real();
  for (int j = 0; j < m * m - 1; ++j)
    mu.b[j] = 0.5 * m * (rho_r * base_b.matrices[j]).trace().real();

  for (int k = 0; k < n * n - 1; ++k) {
    const Eigen::MatrixXcd& ak = base_a.matrices[k];
    for (int l = 0; l < m * m - 1; ++l) {
      const Eigen::MatrixXcd& bl = base_b.matrices[l];
      Complex tr(0, 0);
      for (int i = 0; i < n; ++i)
        for (int ip = 0; ip < n; ++ip) {
          if (ak(ip, i) == Complex(0, 0)) continue;
          for (int j = 0; j < m; ++j)
            for (int jp = 0; jp < m; ++jp) {
              if (bl(jp, j) == Complex(0, 0)) continue;
              tr += rho(i * m + j, ip * m + jp) * ak(ip, i) * bl(jp, j);
            }
        }
      mu.c(k, l) = 0.25 * dim * tr.real();
    }
  }
  return mu;
}

Eigen::MatrixXcd partial_trace_R(const Eigen::MatrixXcd& rho, int n, int m) {
  require(rho.rows() == n * m && rho.cols() == n * m, "partial_trace_R: dimension mismatch");
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int ip = 0; ip < n; ++ip) {
      Complex s(0, 0);
      for (int j = 0; j < m; ++j) s += rho(i * m + j, ip * m + j);
      out(i, ip) = s;
    }
  return out;
}

Eigen::MatrixXcd partial_trace_S(const Eigen::MatrixXcd& rho, int n, int m) {
  require(rho.rows() == n * m && rho.cols() == n * m, "partial_trace_S: dimension mismatch");
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(m, m);
  for (int j = 0; j < m; ++j)
    for (int jp = 0; jp < m; ++jp) {
      Complex s(0, 0);
      for (int i = 0; i < n; ++i) s += rho(i * m + j, i * m + jp);
      out(j, jp) = s;
    }
  return out;
}

Eigen::MatrixXcd partial_transpose_R(const Eigen::MatrixXcd& rho, int n, int m) {
  require(rho.rows() == n * m && rho.cols() == n * m,
          "partial_transpose_R: dimension mismatch");
  Eigen::MatrixXcd out(n * m, n * m);
  for (int i = 0; i < n; ++i)
    for (int ip = 0; ip < n; ++ip)
      for (int j = 0; j < m; ++j)
        for (int jp = 0; jp < m; ++jp)
          out(i * m + j, ip * m + jp) = rho(i * m + jp, ip * m + j);
  return out;
}

double min_eigenvalue(const Eigen::MatrixXcd& hermitian) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(hermitian,
                                                         Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

bool is_positive_semidefinite(const Eigen::MatrixXcd& hermitian, double tol) {
  require(hermitian.rows() == hermitian.cols(), "is_positive_semidefinite: not square");
  require(hermiticity_defect(hermitian) <= 1e-8,
          "is_positive_semidefinite: matrix is not Hermitian");
  const Eigen::MatrixXcd sym = 0.5 * (hermitian + hermitian.adjoint());
  return min_eigenvalue(sym) >= -tol;
}

bool is_density_matrix(const Eigen::MatrixXcd& rho, double tol) {
  if (rho.rows() != rho.cols()) return false;
  if (hermiticity_defect(rho) > 1e-10) return false;
  const Complex tr = rho.trace();
  if (std::abs(tr.real() - 1.0) > 1e-10 || std::abs(tr.imag()) > 1e-10) return false;
  return min_eigenvalue(0.5 * (rho + rho.adjoint())) >= -tol;
}

double bloch_radius(const Eigen::Matrix2cd& eta) {
  require(hermiticity_defect(eta) <= 1e-8, "bloch_radius: state is not Hermitian");
  require(std::abs(eta.trace().real() - 1.0) <= 1e-8, "bloch_radius: trace must be one");
  const double a1 = 2.0 * eta(0, 1).real();
  const double a2 = -2.0 * eta(0, 1).imag();
  const double a3 = eta(0, 0).real() - eta(1, 1).real();
  const double r = std::sqrt(a1 * a1 + a2 * a2 + a3 * a3);
  require(r <= 1.0 + 1e-8, "bloch_radius: not a state (radius > 1)");
  return std::min(r, 1.0);
}

double hs_distance(const Eigen::MatrixXcd& rho1, const Eigen::MatrixXcd& rho2) {
  require(rho1.rows() == rho2.rows() && rho1.cols() == rho2.cols(),
          "hs_distance: dimension mismatch");
  // For Hermitian differences Tr(D^2) equals the squared Frobenius norm.
  return (rho1 - rho2).norm();
}

double log_factorial(int k) {
  require(k >= 0, "log_factorial: negative argument");
  // Neumaier-compensated sum of log(i).
  double sum = 0.0, comp = 0.0;
  for (int i = 2; i <= k; ++i) {
    const double term = std::log(static_cast<double>(i));
    const double t = sum + term;
    if (std::abs(sum) >= std::abs(term))
      comp += (sum - t) + term;
    else
      comp += (term - t) + sum;
    sum = t;
  }
  return sum + comp;
}

double zs_total_volume(int n, int m) {
  require(n >= 2 && m >= 2, "zs_total_volume: dimensions must be >= 2");
  const int dim = n * m;
  double log_v = 0.5 * std::log(static_cast<double>(dim));
  log_v += 0.5 * dim * (dim - 1) * std::log(2.0 * M_PI);
  for (int k = 1; k <= dim; ++k) log_v += log_factorial(k - 1);
  log_v -= log_factorial(dim * dim - 1);
  const double v = std::exp(log_v);
  require(std::isfinite(v), "zs_total_volume: overflow in log-space evaluation");
  return v;
}

}  // namespace condvol
