#include "bds/states.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>

namespace bds {

void BdsSpec::validate() const {
  double sum = 0.0;
  for (double p : as_array()) {
    if (!(p >= 0.0 && p <= 1.0)) {
      std::ostringstream msg;
      msg << "probability " << p << " outside [0,1]";
      throw Error(ErrorCode::kInvalidProbabilities, msg.str());
    }
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    std::ostringstream msg;
    msg << "probabilities sum to " << sum;
    throw Error(ErrorCode::kInvalidProbabilities, msg.str());
  }
}

DensityMatrix::DensityMatrix(ComplexMatrix matrix) : DensityMatrix(std::move(matrix), true) {}

DensityMatrix DensityMatrix::allow_negative(ComplexMatrix matrix) {
  return DensityMatrix(std::move(matrix), false);
}

DensityMatrix::DensityMatrix(ComplexMatrix matrix, bool require_psd) : matrix_(std::move(matrix)) {
  const std::size_t dim = matrix_.dim();
  if (dim < 2 || (dim & (dim - 1)) != 0) {
    throw Error(ErrorCode::kNotAState, "dimension is not a power of two");
  }
  n_qubits_ = static_cast<std::size_t>(std::countr_zero(dim));
  if (!matrix_.is_hermitian(Tolerance::kHermitian)) {
    throw Error(ErrorCode::kNotAState, "matrix is not Hermitian");
  }
  const Complex tr = matrix_.trace();
  if (std::abs(tr - 1.0) > kTraceTolerance) {
    std::ostringstream msg;
    msg << "trace is " << tr.real();
    throw Error(ErrorCode::kNotAState, msg.str());
  }
  if (require_psd) {
    const double lo = min_eigenvalue();
    if (lo < kMinEigenvalue) {
      std::ostringstream msg;
      msg << "min eigenvalue " << lo << " is negative";
      throw Error(ErrorCode::kNotAState, msg.str());
    }
  }
}

double DensityMatrix::min_eigenvalue() const { return hermitian_eigenvalues(matrix_).front(); }

std::array<Complex, 4> bell_vector(int j, int k) {
  if ((j != 0 && j != 1) || (k != 0 && k != 1)) {
    throw Error(ErrorCode::kOutOfRange, "Bell labels must be bits");
  }
  const double r = 1.0 / std::sqrt(2.0);
  std::array<Complex, 4> v{};
  v[static_cast<std::size_t>(k)] = r;                            // |0,k>
  v[static_cast<std::size_t>(2 + (k ^ 1))] = (j == 0 ? r : -r);  // (-1)^j |1,k^1>
  return v;
}

DensityMatrix bell_state(int j, int k) {
  const auto v = bell_vector(j, k);
  return DensityMatrix(ComplexMatrix::outer(v));
}

DensityMatrix bds_from_spec(const BdsSpec& spec) {
  spec.validate();
  ComplexMatrix rho(4);
  for (int j = 0; j < 2; ++j) {
    for (int k = 0; k < 2; ++k) {
      const auto v = bell_vector(j, k);
      rho += spec(j, k) * ComplexMatrix::outer(v);
    }
  }
  return DensityMatrix(std::move(rho));
}

BdsSpec spec_from_correlations(const CorrelationTriple& c) {
  auto weight = [&](int j, int k) {
    const double s1 = (j == 0) ? 1.0 : -1.0;
    const double s2 = ((j + k - 1) % 2 == 0) ? 1.0 : -1.0;
    const double s3 = (k == 0) ? 1.0 : -1.0;
    return 0.25 * (1.0 + s1 * c.c1 + s2 * c.c2 + s3 * c.c3);
  };
  BdsSpec spec{weight(0, 0), weight(0, 1), weight(1, 0), weight(1, 1)};
  for (double p : spec.as_array()) {
    if (p < -1e-12) {
      std::ostringstream msg;
      msg << "correlations (" << c.c1 << ", " << c.c2 << ", " << c.c3
          << ") give negative weight " << p;
      throw Error(ErrorCode::kUnphysical, msg.str());
    }
  }
  spec.p00 = std::max(spec.p00, 0.0);
  spec.p01 = std::max(spec.p01, 0.0);
  spec.p10 = std::max(spec.p10, 0.0);
  spec.p11 = std::max(spec.p11, 0.0);
  return spec;
}

CorrelationTriple correlations_from_spec(const BdsSpec& spec) {
  spec.validate();
  // Each Bell state is a +/-1 eigenvector of sigma_j (x) sigma_j.
  const double p00 = spec.p00, p01 = spec.p01, p10 = spec.p10, p11 = spec.p11;
  return {p00 + p01 - p10 - p11, -p00 + p01 + p10 - p11, p00 - p01 + p10 - p11};
}

BdsSpec werner_spec(double w) {
  if (!(w >= 0.0 && w <= 1.0)) {
    std::ostringstream msg;
    msg << "Werner weight " << w << " outside [0,1]";
    throw Error(ErrorCode::kOutOfRange, msg.str());
  }
  const double q = (1.0 - w) / 4.0;
  return {q, q, q, 1.0 - 3.0 * q};
}

DensityMatrix werner(double w) {
  werner_spec(w);  // range check
  ComplexMatrix rho = ComplexMatrix::identity(4) * Complex((1.0 - w) / 4.0);
  rho += bell_state(1, 1).matrix() * Complex(w);
  return DensityMatrix(std::move(rho));
}

double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim()) {
    throw Error(ErrorCode::kDimensionMismatch, "fidelity of states with different sizes");
  }
  const ComplexMatrix root = matrix_sqrt_psd(rho.matrix(), /*clip_negative=*/true);
  const ComplexMatrix inner = (root * sigma.matrix() * root).hermitian_part();
  double f = 0.0;
  for (double lambda : hermitian_eigenvalues(inner)) f += std::sqrt(std::max(lambda, 0.0));
  return std::clamp(f, 0.0, 1.0);
}

ComplexMatrix reduced_qubit(const DensityMatrix& rho, std::size_t qubit) {
  const std::size_t dims[] = {2, 2};
  const std::size_t keep[] = {qubit};
  if (rho.n_qubits() != 2) throw Error(ErrorCode::kDimensionMismatch, "expected two qubits");
  return partial_trace(rho.matrix(), dims, keep);
}

}  // namespace bds
