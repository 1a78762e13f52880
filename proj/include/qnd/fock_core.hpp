#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace qnd {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// Fixed-total-quanta sector of two bosonic modes.
///
/// Basis index k is the occupation of mode 1; mode 2 holds the rest,
/// i.e. |k> = |n1 = k, n2 = N - k>, ordered by ascending k.
class SectorBasis {
 public:
  explicit SectorBasis(int total_quanta);

  int total_quanta() const noexcept { return total_quanta_; }
  int dimension() const noexcept { return total_quanta_ + 1; }
  int mode1_occupation(int k) const noexcept { return k; }
  int mode2_occupation(int k) const noexcept { return total_quanta_ - k; }

  friend bool operator==(const SectorBasis&, const SectorBasis&) = default;

 private:
  int total_quanta_;
};

/// Dense operator restricted to one sector. Immutable.
class SectorOperator {
 public:
  SectorOperator(SectorBasis basis, ComplexMatrix matrix);

  const SectorBasis& basis() const noexcept { return basis_; }
  const ComplexMatrix& matrix() const noexcept { return matrix_; }

  bool is_hermitian(double tolerance = 1e-12) const;
  bool is_unitary(double tolerance = 1e-12) const;

  /// Ascending eigenvalues of a Hermitian operator.
  std::vector<double> eigenvalues() const;

  SectorOperator operator+(const SectorOperator& other) const;
  SectorOperator operator*(const SectorOperator& other) const;

 private:
  SectorBasis basis_;
  ComplexMatrix matrix_;
};

/// Normalized amplitude vector over a sector.
class TwoModeState {
 public:
  /// Throws Domain if the squared norm differs from one by more than 1e-10.
  TwoModeState(SectorBasis basis, ComplexVector amplitudes);

  static TwoModeState normalized(SectorBasis basis, ComplexVector amplitudes);

  const SectorBasis& basis() const noexcept { return basis_; }
  const ComplexVector& amplitudes() const noexcept { return amplitudes_; }

  /// <this|other>
  Complex inner(const TwoModeState& other) const;

  /// Applies a unitary; the result is renormalization-checked, not renormalized.
  TwoModeState evolve(const SectorOperator& unitary) const;

 private:
  SectorBasis basis_;
  ComplexVector amplitudes_;
};

/// X_theta = a1+ a2 e^{i theta} + a2+ a1 e^{-i theta} on the N-quanta sector.
SectorOperator crossquadrature_operator(int total_quanta, double theta);

/// n1 - n2, diagonal with entries 2k - N.
SectorOperator number_difference_operator(int total_quanta);

/// n1 + n2, which is N times the identity on the sector.
SectorOperator total_number_operator(int total_quanta);

/// Max-absolute-entry of AB - BA.
double commutator_norm(const SectorOperator& a, const SectorOperator& b);

}  // namespace qnd
