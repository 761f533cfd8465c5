#include "simplexdecomp/blochspace.hpp"

#include <cmath>
#include <string>

#include "simplexdecomp/errors.hpp"

namespace simplexdecomp {

namespace {

void require_dimension(int n, const char* who) {
  if (n < 2) throw InvalidDimension(std::string(who) + ": N must be >= 2, got " + std::to_string(n));
}

}  // namespace

Generators su_generators(int n) {
  require_dimension(n, "su_generators");
  Generators g;
  g.dimension = n;
  g.matrices.reserve(static_cast<std::size_t>(n * n - 1));
  const Complex i_unit(0.0, 1.0);

  for (int j = 0; j < n; ++j)
    for (int k = j + 1; k < n; ++k) {
      CMatrix m = CMatrix::Zero(n, n);
      m(j, k) = 1.0;
      m(k, j) = 1.0;
      g.matrices.push_back(std::move(m));
    }
  for (int j = 0; j < n; ++j)
    for (int k = j + 1; k < n; ++k) {
      CMatrix m = CMatrix::Zero(n, n);
      m(j, k) = -i_unit;
      m(k, j) = i_unit;
      g.matrices.push_back(std::move(m));
    }
  for (int l = 1; l < n; ++l) {
    CMatrix m = CMatrix::Zero(n, n);
    const double scale = std::sqrt(2.0 / (l * (l + 1.0)));
    for (int d = 0; d < l; ++d) m(d, d) = scale;
    m(l, l) = -scale * l;
    g.matrices.push_back(std::move(m));
  }
  return g;
}

CMatrix generator_combination(const Eigen::Ref<const Eigen::VectorXd>& coeffs, const Generators& g) {
  if (static_cast<std::size_t>(coeffs.size()) != g.size())
    throw DimensionMismatch("generator_combination: expected " + std::to_string(g.size()) +
                            " coefficients, got " + std::to_string(coeffs.size()));
  CMatrix out = CMatrix::Zero(g.dimension, g.dimension);
  for (std::size_t mu = 0; mu < g.size(); ++mu) out += coeffs(static_cast<Eigen::Index>(mu)) * g[mu];
  return out;
}

CMatrix generator_correlator(const Generators& g) {
  const Eigen::Index nn = Eigen::Index(g.dimension) * g.dimension;
  CMatrix out = CMatrix::Zero(nn, nn);
  for (const auto& l : g.matrices) out += kron(l, l);
  return out;
}

Eigen::VectorXd BlochVector::direction() const {
  const double r = radius();
  if (r == 0.0) throw ContractViolation("BlochVector::direction: zero vector has no direction");
  return coords / r;
}

DensityMatrix::DensityMatrix(CMatrix entries, double herm_tol, double psd_tol)
    : entries_(std::move(entries)), herm_tol_(herm_tol), psd_tol_(psd_tol) {
  if (entries_.rows() != entries_.cols() || entries_.rows() == 0)
    throw DimensionMismatch("DensityMatrix: entries must be a non-empty square matrix");
  const double defect = hermiticity_defect(entries_);
  if (defect > herm_tol_)
    throw ContractViolation("DensityMatrix: not Hermitian (defect " + std::to_string(defect) + ")");
  const Complex tr = entries_.trace();
  if (std::abs(tr - Complex(1.0)) > herm_tol_)
    throw ContractViolation("DensityMatrix: trace " + std::to_string(tr.real()) + " != 1");
}

bool DensityMatrix::is_psd() const { return min_eigenvalue(*this) >= -psd_tol_; }

BlochVector bloch_from_density(const DensityMatrix& rho, const Generators& g) {
  if (rho.dim() != g.dimension)
    throw DimensionMismatch("bloch_from_density: density is " + std::to_string(rho.dim()) +
                            "-dimensional, generators are for N = " + std::to_string(g.dimension));
  BlochVector b;
  b.dimension = g.dimension;
  b.coords.resize(static_cast<Eigen::Index>(g.size()));
  for (std::size_t mu = 0; mu < g.size(); ++mu) {
    // Tr[rho l] as an elementwise sum avoids forming the product.
    const Complex t = (rho.entries().transpose().cwiseProduct(g[mu])).sum();
    if (std::abs(t.imag()) > rho.herm_tol())
      throw ContractViolation("bloch_from_density: complex Bloch coordinate");
    b.coords(static_cast<Eigen::Index>(mu)) = t.real();
  }
  return b;
}

DensityMatrix density_from_bloch(const BlochVector& b, const Generators& g) {
  if (b.dimension != g.dimension || static_cast<std::size_t>(b.coords.size()) != g.size())
    throw DimensionMismatch("density_from_bloch: Bloch vector does not match generators");
  CMatrix rho = CMatrix::Identity(g.dimension, g.dimension) / double(g.dimension);
  rho += 0.5 * generator_combination(b.coords, g);
  return DensityMatrix(std::move(rho));
}

double min_eigenvalue(const CMatrix& m, double herm_tol) {
  if (m.rows() != m.cols()) throw DimensionMismatch("min_eigenvalue: matrix is not square");
  const double defect = hermiticity_defect(m);
  if (defect > herm_tol)
    throw ContractViolation("min_eigenvalue: matrix is not Hermitian (defect " +
                            std::to_string(defect) + ")");
  Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian_part(m), Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

double min_eigenvalue(const DensityMatrix& m) { return min_eigenvalue(m.entries(), m.herm_tol()); }

RadiusBounds psd_radius_bounds(int n) {
  require_dimension(n, "psd_radius_bounds");
  return {-std::sqrt(2.0 / (n * (n - 1.0))), std::sqrt(2.0 * (n - 1.0) / n)};
}

}  // namespace simplexdecomp
