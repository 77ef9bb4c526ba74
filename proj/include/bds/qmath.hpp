#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "bds/error.hpp"

namespace bds {

using Complex = std::complex<double>;

/// Tolerances shared by the numerical routines.
struct Tolerance {
  static constexpr double kHermitian = 1e-9;
  static constexpr double kEigenClip = -1e-9;
  static constexpr double kEntropyFloor = 1e-12;
};

/// Dense square complex matrix stored row-major.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  explicit ComplexMatrix(std::size_t dim);
  ComplexMatrix(std::size_t dim, std::vector<Complex> entries);
  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static ComplexMatrix identity(std::size_t dim);
  static ComplexMatrix diagonal(std::span<const double> values);
  static ComplexMatrix diagonal(std::initializer_list<double> values);
  /// |v><v| for an amplitude vector v.
  static ComplexMatrix outer(std::span<const Complex> v);

  std::size_t dim() const noexcept { return dim_; }
  std::span<const Complex> entries() const noexcept { return entries_; }

  Complex& operator()(std::size_t row, std::size_t col) { return entries_[row * dim_ + col]; }
  const Complex& operator()(std::size_t row, std::size_t col) const {
    return entries_[row * dim_ + col];
  }

  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;
  Complex trace() const;
  bool is_hermitian(double tol = Tolerance::kHermitian) const;
  /// (m + m†)/2
  ComplexMatrix hermitian_part() const;

  ComplexMatrix& operator+=(const ComplexMatrix& rhs);
  ComplexMatrix& operator-=(const ComplexMatrix& rhs);
  ComplexMatrix& operator*=(Complex scalar);

  friend ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs += rhs; }
  friend ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs -= rhs; }
  friend ComplexMatrix operator*(ComplexMatrix lhs, Complex scalar) { return lhs *= scalar; }
  friend ComplexMatrix operator*(Complex scalar, ComplexMatrix rhs) { return rhs *= scalar; }
  friend ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs);
  friend std::vector<Complex> operator*(const ComplexMatrix& m, std::span<const Complex> v);

 private:
  std::size_t dim_ = 0;
  std::vector<Complex> entries_;
};

/// Largest entry-wise modulus of a - b.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

/// Pauli matrices indexed 0..3 (sigma_0 is the identity).
const ComplexMatrix& pauli(int index);

struct HermitianEigenResult {
  std::vector<double> eigenvalues;  // ascending
  ComplexMatrix eigenvectors;       // columns
};

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Cyclic complex Jacobi. Throws kNotHermitian past Tolerance::kHermitian.
HermitianEigenResult hermitian_eigen(const ComplexMatrix& m);
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m);

double trace_norm(const ComplexMatrix& m);

/// Square root of a PSD matrix. Eigenvalues in [kEigenClip, 0) are clipped;
/// anything lower throws kNegativeSpectrum unless `clip_negative` is set.
ComplexMatrix matrix_sqrt_psd(const ComplexMatrix& m, bool clip_negative = false);

/// Traces out every subsystem not listed in `keep`. Kept subsystems stay in
/// their original order.
ComplexMatrix partial_trace(const ComplexMatrix& m, std::span<const std::size_t> dims,
                            std::span<const std::size_t> keep);

enum class Subsystem { kA, kB };

ComplexMatrix partial_transpose(const ComplexMatrix& m, std::size_t dim_a, std::size_t dim_b,
                                Subsystem which);

/// Von Neumann entropy in bits.
double vn_entropy(const ComplexMatrix& rho);

/// Shannon entropy in bits of (x, 1 - x); x is clamped to [0, 1].
double binary_entropy(double x);

}  // namespace bds
