#include "qnd/fock_core.hpp"

#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "qnd/errors.hpp"

namespace qnd {

namespace {

void require_same_basis(const SectorBasis& a, const SectorBasis& b) {
  if (!(a == b)) {
    fail(ErrorKind::Dimension, "sector mismatch: N=" + std::to_string(a.total_quanta()) +
                                   " vs N=" + std::to_string(b.total_quanta()));
  }
}

}  // namespace

SectorBasis::SectorBasis(int total_quanta) : total_quanta_(total_quanta) {
  if (total_quanta < 0) {
    fail(ErrorKind::Domain, "total quanta must be nonnegative, got " + std::to_string(total_quanta));
  }
}

SectorOperator::SectorOperator(SectorBasis basis, ComplexMatrix matrix)
    : basis_(basis), matrix_(std::move(matrix)) {
  if (matrix_.rows() != basis_.dimension() || matrix_.cols() != basis_.dimension()) {
    fail(ErrorKind::Dimension, "operator matrix must be square with side " +
                                   std::to_string(basis_.dimension()));
  }
}

bool SectorOperator::is_hermitian(double tolerance) const {
  return (matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff() <= tolerance;
}

bool SectorOperator::is_unitary(double tolerance) const {
  const auto n = matrix_.rows();
  const ComplexMatrix gram = matrix_.adjoint() * matrix_;
  return (gram - ComplexMatrix::Identity(n, n)).cwiseAbs().maxCoeff() <= tolerance;
}

std::vector<double> SectorOperator::eigenvalues() const {
  if (!is_hermitian(1e-10)) {
    fail(ErrorKind::Domain, "eigenvalues requested for a non-Hermitian operator");
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(matrix_, Eigen::EigenvaluesOnly);
  const Eigen::VectorXd& values = solver.eigenvalues();
  return {values.data(), values.data() + values.size()};
}

SectorOperator SectorOperator::operator+(const SectorOperator& other) const {
  require_same_basis(basis_, other.basis_);
  return {basis_, matrix_ + other.matrix_};
}

SectorOperator SectorOperator::operator*(const SectorOperator& other) const {
  require_same_basis(basis_, other.basis_);
  return {basis_, matrix_ * other.matrix_};
}

TwoModeState::TwoModeState(SectorBasis basis, ComplexVector amplitudes)
    : basis_(basis), amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() != basis_.dimension()) {
    fail(ErrorKind::Dimension, "state length must equal sector dimension " +
                                   std::to_string(basis_.dimension()));
  }
  const double norm2 = amplitudes_.squaredNorm();
  if (std::abs(norm2 - 1.0) > 1e-10) {
    fail(ErrorKind::Domain, "state is not normalized (|psi|^2 = " + std::to_string(norm2) + ")");
  }
}

TwoModeState TwoModeState::normalized(SectorBasis basis, ComplexVector amplitudes) {
  const double norm = amplitudes.norm();
  if (norm == 0.0) fail(ErrorKind::Domain, "cannot normalize a zero vector");
  return {basis, amplitudes / norm};
}

Complex TwoModeState::inner(const TwoModeState& other) const {
  require_same_basis(basis_, other.basis_);
  return amplitudes_.dot(other.amplitudes_);  // conjugates the left operand
}

TwoModeState TwoModeState::evolve(const SectorOperator& unitary) const {
  require_same_basis(basis_, unitary.basis());
  return {basis_, unitary.matrix() * amplitudes_};
}

SectorOperator crossquadrature_operator(int total_quanta, double theta) {
  const SectorBasis basis(total_quanta);
  const int n = total_quanta;
  ComplexMatrix m = ComplexMatrix::Zero(basis.dimension(), basis.dimension());
  const Complex phase = std::polar(1.0, theta);
  // a1+ a2 |k, N-k> = sqrt((k+1)(N-k)) |k+1, N-k-1>
  for (int k = 0; k < n; ++k) {
    const double amp = std::sqrt(static_cast<double>(k + 1) * static_cast<double>(n - k));
    m(k + 1, k) = amp * phase;
    m(k, k + 1) = amp * std::conj(phase);
  }
  return {basis, std::move(m)};
}

SectorOperator number_difference_operator(int total_quanta) {
  const SectorBasis basis(total_quanta);
  ComplexMatrix m = ComplexMatrix::Zero(basis.dimension(), basis.dimension());
  for (int k = 0; k < basis.dimension(); ++k) m(k, k) = 2.0 * k - total_quanta;
  return {basis, std::move(m)};
}

SectorOperator total_number_operator(int total_quanta) {
  const SectorBasis basis(total_quanta);
  const auto dim = basis.dimension();
  return {basis, ComplexMatrix::Identity(dim, dim) * static_cast<double>(total_quanta)};
}

double commutator_norm(const SectorOperator& a, const SectorOperator& b) {
  require_same_basis(a.basis(), b.basis());
  const ComplexMatrix c = a.matrix() * b.matrix() - b.matrix() * a.matrix();
  return c.size() == 0 ? 0.0 : c.cwiseAbs().maxCoeff();
}

}  // namespace qnd
