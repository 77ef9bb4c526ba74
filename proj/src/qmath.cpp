#include "bds/qmath.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace bds {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNotHermitian: return "NotHermitian";
    case ErrorCode::kNegativeSpectrum: return "NegativeSpectrum";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kNotAState: return "NotAState";
    case ErrorCode::kInvalidProbabilities: return "InvalidProbabilities";
    case ErrorCode::kUnphysical: return "Unphysical";
    case ErrorCode::kOutOfRange: return "OutOfRange";
    case ErrorCode::kNotNormalized: return "NotNormalized";
    case ErrorCode::kInvalidLayout: return "InvalidLayout";
    case ErrorCode::kOptimizerFailure: return "OptimizerFailure";
    case ErrorCode::kParse: return "Parse";
  }
  return "Unknown";
}

ComplexMatrix::ComplexMatrix(std::size_t dim) : dim_(dim), entries_(dim * dim) {}

ComplexMatrix::ComplexMatrix(std::size_t dim, std::vector<Complex> entries)
    : dim_(dim), entries_(std::move(entries)) {
  if (entries_.size() != dim_ * dim_) {
    throw Error(ErrorCode::kDimensionMismatch, "entry count is not dim^2");
  }
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows)
    : dim_(rows.size()) {
  entries_.reserve(dim_ * dim_);
  for (const auto& row : rows) {
    if (row.size() != dim_) throw Error(ErrorCode::kDimensionMismatch, "matrix is not square");
    entries_.insert(entries_.end(), row.begin(), row.end());
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
  ComplexMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> values) {
  ComplexMatrix m(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::initializer_list<double> values) {
  return diagonal(std::span<const double>(values.begin(), values.size()));
}

ComplexMatrix ComplexMatrix::outer(std::span<const Complex> v) {
  ComplexMatrix m(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    for (std::size_t j = 0; j < v.size(); ++j) m(i, j) = v[i] * std::conj(v[j]);
  }
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = 0; j < dim_; ++j) out(j, i) = std::conj((*this)(i, j));
  }
  return out;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix out(dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = 0; j < dim_; ++j) out(j, i) = (*this)(i, j);
  }
  return out;
}

Complex ComplexMatrix::trace() const {
  Complex t = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
  return t;
}

bool ComplexMatrix::is_hermitian(double tol) const {
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = i; j < dim_; ++j) {
      if (std::abs((*this)(i, j) - std::conj((*this)(j, i))) > tol) return false;
    }
  }
  return true;
}

ComplexMatrix ComplexMatrix::hermitian_part() const {
  ComplexMatrix out(dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = 0; j < dim_; ++j) {
      out(i, j) = 0.5 * ((*this)(i, j) + std::conj((*this)(j, i)));
    }
  }
  return out;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& rhs) {
  if (rhs.dim_ != dim_) throw Error(ErrorCode::kDimensionMismatch, "matrix sum");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += rhs.entries_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& rhs) {
  if (rhs.dim_ != dim_) throw Error(ErrorCode::kDimensionMismatch, "matrix difference");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= rhs.entries_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scalar) {
  for (auto& z : entries_) z *= scalar;
  return *this;
}

ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs) {
  if (lhs.dim_ != rhs.dim_) throw Error(ErrorCode::kDimensionMismatch, "matrix product");
  const std::size_t n = lhs.dim_;
  ComplexMatrix out(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      const Complex a = lhs(i, k);
      if (a == Complex{}) continue;
      for (std::size_t j = 0; j < n; ++j) out(i, j) += a * rhs(k, j);
    }
  }
  return out;
}

std::vector<Complex> operator*(const ComplexMatrix& m, std::span<const Complex> v) {
  if (v.size() != m.dim_) throw Error(ErrorCode::kDimensionMismatch, "matrix-vector product");
  std::vector<Complex> out(m.dim_);
  for (std::size_t i = 0; i < m.dim_; ++i) {
    Complex acc = 0.0;
    for (std::size_t j = 0; j < m.dim_; ++j) acc += m(i, j) * v[j];
    out[i] = acc;
  }
  return out;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() != b.dim()) throw Error(ErrorCode::kDimensionMismatch, "max_abs_diff");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.entries().size(); ++i) {
    worst = std::max(worst, std::abs(a.entries()[i] - b.entries()[i]));
  }
  return worst;
}

const ComplexMatrix& pauli(int index) {
  static const ComplexMatrix kPaulis[4] = {
      {{1.0, 0.0}, {0.0, 1.0}},
      {{0.0, 1.0}, {1.0, 0.0}},
      {{0.0, Complex(0.0, -1.0)}, {Complex(0.0, 1.0), 0.0}},
      {{1.0, 0.0}, {0.0, -1.0}},
  };
  if (index < 0 || index > 3) throw Error(ErrorCode::kOutOfRange, "pauli index");
  return kPaulis[index];
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const std::size_t na = a.dim();
  const std::size_t nb = b.dim();
  ComplexMatrix out(na * nb);
  for (std::size_t i = 0; i < na; ++i) {
    for (std::size_t j = 0; j < na; ++j) {
      const Complex aij = a(i, j);
      if (aij == Complex{}) continue;
      for (std::size_t k = 0; k < nb; ++k) {
        for (std::size_t l = 0; l < nb; ++l) out(i * nb + k, j * nb + l) = aij * b(k, l);
      }
    }
  }
  return out;
}

namespace {

void require_hermitian(const ComplexMatrix& m) {
  if (!m.is_hermitian(Tolerance::kHermitian)) {
    throw Error(ErrorCode::kNotHermitian, "matrix deviates from its adjoint");
  }
}

double off_diagonal_norm2(const ComplexMatrix& a) {
  double s = 0.0;
  for (std::size_t p = 0; p < a.dim(); ++p) {
    for (std::size_t q = p + 1; q < a.dim(); ++q) s += std::norm(a(p, q));
  }
  return s;
}

}  // namespace

HermitianEigenResult hermitian_eigen(const ComplexMatrix& m) {
  require_hermitian(m);
  const std::size_t n = m.dim();
  ComplexMatrix a = m.hermitian_part();
  ComplexMatrix v = ComplexMatrix::identity(n);

  double scale = 0.0;
  for (const auto& z : a.entries()) scale += std::norm(z);
  const double threshold = std::max(scale, 1e-300) * 1e-32;

  constexpr int kMaxSweeps = 100;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    if (off_diagonal_norm2(a) <= threshold) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double mag = std::abs(a(p, q));
        if (mag == 0.0) continue;
        // Rotate the phase of a(p,q) away, then apply a real Jacobi rotation.
        const Complex phase = a(p, q) / mag;
        const double tau = (a(q, q).real() - a(p, p).real()) / (2.0 * mag);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        const Complex cphase = std::conj(phase);

        for (std::size_t k = 0; k < n; ++k) {
          const Complex akp = a(k, p);
          const Complex akq = a(k, q);
          a(k, p) = c * akp - s * cphase * akq;
          a(k, q) = s * akp + c * cphase * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const Complex apk = a(p, k);
          const Complex aqk = a(q, k);
          a(p, k) = c * apk - s * phase * aqk;
          a(q, k) = s * apk + c * phase * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        for (std::size_t k = 0; k < n; ++k) {
          const Complex vkp = v(k, p);
          const Complex vkq = v(k, q);
          v(k, p) = c * vkp - s * cphase * vkq;
          v(k, q) = s * vkp + c * cphase * vkq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

  HermitianEigenResult result{std::vector<double>(n), ComplexMatrix(n)};
  for (std::size_t col = 0; col < n; ++col) {
    result.eigenvalues[col] = a(order[col], order[col]).real();
    for (std::size_t row = 0; row < n; ++row) {
      result.eigenvectors(row, col) = v(row, order[col]);
    }
  }
  return result;
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m) {
  return hermitian_eigen(m).eigenvalues;
}

double trace_norm(const ComplexMatrix& m) {
  double sum = 0.0;
  for (double lambda : hermitian_eigenvalues(m)) sum += std::abs(lambda);
  return sum;
}

ComplexMatrix matrix_sqrt_psd(const ComplexMatrix& m, bool clip_negative) {
  const auto eig = hermitian_eigen(m);
  const std::size_t n = m.dim();
  if (!clip_negative && n > 0 && eig.eigenvalues.front() < Tolerance::kEigenClip) {
    std::ostringstream msg;
    msg << "min eigenvalue " << eig.eigenvalues.front();
    throw Error(ErrorCode::kNegativeSpectrum, msg.str());
  }
  ComplexMatrix out(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double root = std::sqrt(std::max(eig.eigenvalues[k], 0.0));
    if (root == 0.0) continue;
    for (std::size_t i = 0; i < n; ++i) {
      const Complex vik = eig.eigenvectors(i, k) * root;
      for (std::size_t j = 0; j < n; ++j) out(i, j) += vik * std::conj(eig.eigenvectors(j, k));
    }
  }
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, std::span<const std::size_t> dims,
                            std::span<const std::size_t> keep) {
  const std::size_t total =
      std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>());
  if (dims.empty() || total != m.dim()) {
    throw Error(ErrorCode::kDimensionMismatch, "subsystem dims do not multiply to matrix dim");
  }
  if (keep.empty()) throw Error(ErrorCode::kDimensionMismatch, "keep set is empty");
  std::vector<bool> kept(dims.size(), false);
  for (std::size_t k : keep) {
    if (k >= dims.size() || kept[k]) {
      throw Error(ErrorCode::kDimensionMismatch, "invalid keep index");
    }
    kept[k] = true;
  }

  const std::size_t nsys = dims.size();
  std::size_t out_dim = 1;
  for (std::size_t s = 0; s < nsys; ++s) {
    if (kept[s]) out_dim *= dims[s];
  }
  ComplexMatrix out(out_dim);

  // Mixed-radix digits of a flat index; subsystem 0 is most significant.
  auto digits = [&](std::size_t flat) {
    std::vector<std::size_t> d(nsys);
    for (std::size_t s = nsys; s-- > 0;) {
      d[s] = flat % dims[s];
      flat /= dims[s];
    }
    return d;
  };
  auto kept_index = [&](const std::vector<std::size_t>& d) {
    std::size_t idx = 0;
    for (std::size_t s = 0; s < nsys; ++s) {
      if (kept[s]) idx = idx * dims[s] + d[s];
    }
    return idx;
  };

  for (std::size_t row = 0; row < total; ++row) {
    const auto dr = digits(row);
    for (std::size_t col = 0; col < total; ++col) {
      const auto dc = digits(col);
      bool diagonal_in_traced = true;
      for (std::size_t s = 0; s < nsys && diagonal_in_traced; ++s) {
        if (!kept[s] && dr[s] != dc[s]) diagonal_in_traced = false;
      }
      if (diagonal_in_traced) out(kept_index(dr), kept_index(dc)) += m(row, col);
    }
  }
  return out;
}

ComplexMatrix partial_transpose(const ComplexMatrix& m, std::size_t dim_a, std::size_t dim_b,
                                Subsystem which) {
  if (dim_a * dim_b != m.dim()) {
    throw Error(ErrorCode::kDimensionMismatch, "dim_a * dim_b != matrix dim");
  }
  ComplexMatrix out(m.dim());
  for (std::size_t i = 0; i < dim_a; ++i) {
    for (std::size_t k = 0; k < dim_b; ++k) {
      for (std::size_t j = 0; j < dim_a; ++j) {
        for (std::size_t l = 0; l < dim_b; ++l) {
          const Complex value = m(i * dim_b + k, j * dim_b + l);
          if (which == Subsystem::kA) {
            out(j * dim_b + k, i * dim_b + l) = value;
          } else {
            out(i * dim_b + l, j * dim_b + k) = value;
          }
        }
      }
    }
  }
  return out;
}

double vn_entropy(const ComplexMatrix& rho) {
  if (!rho.is_hermitian(Tolerance::kHermitian)) {
    throw Error(ErrorCode::kNotAState, "not Hermitian");
  }
  if (std::abs(rho.trace() - 1.0) > 1e-9) throw Error(ErrorCode::kNotAState, "trace != 1");
  const auto lambdas = hermitian_eigenvalues(rho);
  if (!lambdas.empty() && lambdas.front() < Tolerance::kEigenClip) {
    throw Error(ErrorCode::kNotAState, "negative eigenvalue");
  }
  double s = 0.0;
  for (double l : lambdas) {
    if (l > Tolerance::kEntropyFloor) s -= l * std::log2(l);
  }
  return s;
}

double binary_entropy(double x) {
  x = std::clamp(x, 0.0, 1.0);
  double h = 0.0;
  if (x > Tolerance::kEntropyFloor) h -= x * std::log2(x);
  const double y = 1.0 - x;
  if (y > Tolerance::kEntropyFloor) h -= y * std::log2(y);
  return h;
}

}  // namespace bds
