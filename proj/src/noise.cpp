#include "bds/noise.hpp"

#include <cmath>
#include <sstream>

namespace bds {

KrausChannel::KrausChannel(std::vector<ComplexMatrix> operators)
    : operators_(std::move(operators)) {
  if (operators_.empty()) throw Error(ErrorCode::kDimensionMismatch, "channel has no operators");
  for (const auto& k : operators_) {
    if (k.dim() != operators_.front().dim()) {
      throw Error(ErrorCode::kDimensionMismatch, "Kraus operators differ in size");
    }
  }
  const double err = completeness_error();
  if (err > kCompletenessTolerance) {
    std::ostringstream msg;
    msg << "sum K^dagger K deviates from identity by " << err;
    throw Error(ErrorCode::kOutOfRange, msg.str());
  }
}

double KrausChannel::completeness_error() const {
  ComplexMatrix sum(dim());
  for (const auto& k : operators_) sum += k.adjoint() * k;
  return max_abs_diff(sum, ComplexMatrix::identity(dim()));
}

ComplexMatrix KrausChannel::superoperator() const {
  const std::size_t d = dim();
  ComplexMatrix s(d * d);
  for (const auto& k : operators_) {
    ComplexMatrix conj_k(d);
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) conj_k(i, j) = std::conj(k(i, j));
    }
    s += kron(k, conj_k);
  }
  return s;
}

KrausChannel composite_damping(double a, double p) {
  if (!(a >= 0.0 && a <= 1.0) || !(p >= 0.0 && p <= 1.0)) {
    std::ostringstream msg;
    msg << "damping rates (" << a << ", " << p << ") outside [0,1]";
    throw Error(ErrorCode::kOutOfRange, msg.str());
  }
  ComplexMatrix k0(2), k1(2), k2(2);
  k0(1, 1) = std::sqrt(p * (1.0 - a));
  k1(0, 1) = std::sqrt(a);
  k2(0, 0) = 1.0;
  k2(1, 1) = std::sqrt((1.0 - p) * (1.0 - a));
  return KrausChannel({k0, k1, k2});
}

DensityMatrix apply_channel(const KrausChannel& channel, const DensityMatrix& rho,
                            std::size_t qubit) {
  if (channel.dim() != 2) throw Error(ErrorCode::kDimensionMismatch, "channel is not single-qubit");
  const std::size_t n = rho.n_qubits();
  if (qubit >= n) throw Error(ErrorCode::kDimensionMismatch, "target qubit outside the state");

  ComplexMatrix out(rho.dim());
  for (const auto& k : channel.operators()) {
    ComplexMatrix full = qubit == 0 ? k : ComplexMatrix::identity(2);
    for (std::size_t q = 1; q < n; ++q) full = kron(full, q == qubit ? k : ComplexMatrix::identity(2));
    out += full * rho.matrix() * full.adjoint();
  }
  return DensityMatrix(out.hermitian_part());
}

std::vector<SweepPoint> decohered_werner_sweep(double a, double p, const std::vector<double>& w_grid,
                                               std::size_t qubit, const DiscordOptions& opts) {
  if (w_grid.empty()) throw Error(ErrorCode::kOutOfRange, "empty w grid");
  const KrausChannel channel = composite_damping(a, p);
  std::vector<SweepPoint> out;
  out.reserve(w_grid.size());
  for (double w : w_grid) {
    out.push_back({w, full_report(apply_channel(channel, werner(w), qubit), opts)});
  }
  return out;
}

}  // namespace bds
