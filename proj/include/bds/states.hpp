#pragma once

#include <array>
#include <cstddef>

#include "bds/qmath.hpp"

namespace bds {

/// Weights of the four Bell states, indexed (00, 01, 10, 11).
struct BdsSpec {
  double p00 = 0.25;
  double p01 = 0.25;
  double p10 = 0.25;
  double p11 = 0.25;

  std::array<double, 4> as_array() const { return {p00, p01, p10, p11}; }
  double operator()(int j, int k) const { return as_array()[2 * j + k]; }

  /// Throws kInvalidProbabilities unless every p is in [0,1] and they sum to 1.
  void validate() const;
};

/// Diagonal of the correlation matrix of a normal-form state.
struct CorrelationTriple {
  double c1 = 0.0;
  double c2 = 0.0;
  double c3 = 0.0;
};

/// Hermitian, unit-trace matrix on n qubits. The strict constructor also
/// requires a PSD spectrum; `allow_negative` skips only that check so raw
/// linear-inversion estimates can still be inspected.
class DensityMatrix {
 public:
  static constexpr double kTraceTolerance = 1e-9;
  static constexpr double kMinEigenvalue = -1e-8;

  explicit DensityMatrix(ComplexMatrix matrix);
  static DensityMatrix allow_negative(ComplexMatrix matrix);

  std::size_t n_qubits() const noexcept { return n_qubits_; }
  std::size_t dim() const noexcept { return matrix_.dim(); }
  const ComplexMatrix& matrix() const noexcept { return matrix_; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return matrix_(r, c); }
  double min_eigenvalue() const;

 private:
  DensityMatrix(ComplexMatrix matrix, bool require_psd);

  std::size_t n_qubits_ = 0;
  ComplexMatrix matrix_;
};

/// Pure projector onto |beta_jk> = (|0,k> + (-1)^j |1,k^1>)/sqrt(2).
DensityMatrix bell_state(int j, int k);
std::array<Complex, 4> bell_vector(int j, int k);

DensityMatrix bds_from_spec(const BdsSpec& spec);
BdsSpec spec_from_correlations(const CorrelationTriple& c);
CorrelationTriple correlations_from_spec(const BdsSpec& spec);

/// (1-w) I/4 + w |beta_11><beta_11|, w in [0,1].
DensityMatrix werner(double w);
BdsSpec werner_spec(double w);

/// Root fidelity Tr sqrt(sqrt(rho) sigma sqrt(rho)), clamped to [0,1].
double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);

/// Reduced state of one qubit of a two-qubit state (0 = a, 1 = b).
ComplexMatrix reduced_qubit(const DensityMatrix& rho, std::size_t qubit);

}  // namespace bds
