#include "bds/tomography.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace bds {

int MeasurementSetting::index() const {
  return 3 * (static_cast<int>(basis_a) - 1) + (static_cast<int>(basis_b) - 1);
}

MeasurementSetting MeasurementSetting::from_index(int index) {
  if (index < 0 || index >= kNumSettings) {
    throw Error(ErrorCode::kOutOfRange, "setting index " + std::to_string(index));
  }
  return {static_cast<PauliBasis>(index / 3 + 1), static_cast<PauliBasis>(index % 3 + 1)};
}

std::string MeasurementSetting::label() const {
  return {basis_letter(basis_a), basis_letter(basis_b)};
}

MeasurementSetting MeasurementSetting::from_label(const std::string& label) {
  for (int i = 0; i < kNumSettings; ++i) {
    const auto s = from_index(i);
    if (s.label() == label) return s;
  }
  throw Error(ErrorCode::kParse, "unknown measurement setting '" + label + "'");
}

void TomographyCounts::validate() const {
  if (shots_per_setting == 0) throw Error(ErrorCode::kParse, "shots must be positive");
  for (int i = 0; i < kNumSettings; ++i) {
    std::uint64_t sum = 0;
    for (auto n : counts[i]) sum += n;
    if (sum != shots_per_setting) {
      std::ostringstream msg;
      msg << "setting " << MeasurementSetting::from_index(i).label() << " counts sum to " << sum
          << ", expected " << shots_per_setting;
      throw Error(ErrorCode::kParse, msg.str());
    }
  }
}

SettingFrequencies TomographyCounts::frequencies() const {
  validate();
  SettingFrequencies f{};
  const double inv = 1.0 / static_cast<double>(shots_per_setting);
  for (int i = 0; i < kNumSettings; ++i) {
    for (int o = 0; o < 4; ++o) f[i][o] = static_cast<double>(counts[i][o]) * inv;
  }
  return f;
}

namespace {

// Eigenprojector of sigma_basis for eigenvalue sign (+1 or -1).
ComplexMatrix pauli_projector(PauliBasis basis, double sign) {
  ComplexMatrix p = pauli(0) + pauli(static_cast<int>(basis)) * Complex(sign);
  return p * Complex(0.5);
}

// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t stream_key(std::uint64_t seed, std::uint64_t stream) {
  return mix64(seed ^ mix64(stream + 0x9e3779b97f4a7c15ULL));
}

// Counter-based: draw i depends only on (key, i).
class CounterStream {
 public:
  CounterStream(std::uint64_t seed, std::uint64_t stream) : key_(stream_key(seed, stream)) {}

  double uniform() {
    const std::uint64_t bits = mix64(key_ + 0x9e3779b97f4a7c15ULL * ++counter_);
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
  }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  return mix64(stream_key(seed, stream));
}

OutcomeProbabilities born_probabilities(const DensityMatrix& rho, MeasurementSetting setting) {
  if (rho.n_qubits() != 2) throw Error(ErrorCode::kDimensionMismatch, "expected two qubits");
  OutcomeProbabilities probs{};
  double total = 0.0;
  int o = 0;
  for (double sa : {1.0, -1.0}) {
    for (double sb : {1.0, -1.0}) {
      const ComplexMatrix proj =
          kron(pauli_projector(setting.basis_a, sa), pauli_projector(setting.basis_b, sb));
      double p = 0.0;
      for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t k = 0; k < 4; ++k) p += (rho(i, k) * proj(k, i)).real();
      }
      probs[o++] = std::max(p, 0.0);
      total += std::max(p, 0.0);
    }
  }
  for (auto& p : probs) p /= total;
  return probs;
}

SettingFrequencies exact_frequencies(const DensityMatrix& rho) {
  SettingFrequencies f{};
  for (int i = 0; i < kNumSettings; ++i) {
    f[i] = born_probabilities(rho, MeasurementSetting::from_index(i));
  }
  return f;
}

TomographyCounts sample_counts(const DensityMatrix& rho, std::uint64_t shots, std::uint64_t seed) {
  if (shots == 0) throw Error(ErrorCode::kOutOfRange, "shots must be at least 1");
  TomographyCounts out;
  out.shots_per_setting = shots;
  for (int i = 0; i < kNumSettings; ++i) {
    const auto probs = born_probabilities(rho, MeasurementSetting::from_index(i));
    std::array<double, 3> cumulative{probs[0], probs[0] + probs[1],
                                     probs[0] + probs[1] + probs[2]};
    CounterStream stream(seed, static_cast<std::uint64_t>(i));
    OutcomeCounts counts{};
    for (std::uint64_t s = 0; s < shots; ++s) {
      const double u = stream.uniform();
      const auto outcome = static_cast<std::size_t>(
          std::upper_bound(cumulative.begin(), cumulative.end(), u) - cumulative.begin());
      ++counts[outcome];
    }
    out.counts[i] = counts;
  }
  return out;
}

CorrelationMatrix estimate_correlations(const SettingFrequencies& freqs) {
  CorrelationMatrix corr;
  corr.c[0][0] = 1.0;
  for (int i = 0; i < kNumSettings; ++i) {
    const auto setting = MeasurementSetting::from_index(i);
    const int j = static_cast<int>(setting.basis_a);
    const int k = static_cast<int>(setting.basis_b);
    const auto& f = freqs[i];
    corr.c[j][k] = f[0] + f[3] - f[1] - f[2];
    // Each marginal is available from three settings; average them.
    corr.c[j][0] += (f[0] + f[1] - f[2] - f[3]) / 3.0;
    corr.c[0][k] += (f[0] + f[2] - f[1] - f[3]) / 3.0;
  }
  for (auto& row : corr.c) {
    for (auto& v : row) v = std::clamp(v, -1.0, 1.0);
  }
  return corr;
}

CorrelationMatrix estimate_correlations(const TomographyCounts& counts) {
  return estimate_correlations(counts.frequencies());
}

CorrelationMatrix exact_correlations(const DensityMatrix& rho) {
  if (rho.n_qubits() != 2) throw Error(ErrorCode::kDimensionMismatch, "expected two qubits");
  CorrelationMatrix corr;
  for (int j = 0; j < 4; ++j) {
    for (int k = 0; k < 4; ++k) {
      corr.c[j][k] = (rho.matrix() * kron(pauli(j), pauli(k))).trace().real();
    }
  }
  corr.c[0][0] = 1.0;
  return corr;
}

Reconstruction reconstruct(const CorrelationMatrix& corr) {
  ComplexMatrix raw(4);
  for (int j = 0; j < 4; ++j) {
    for (int k = 0; k < 4; ++k) {
      const double c = (j == 0 && k == 0) ? 1.0 : corr.c[j][k];
      if (c != 0.0) raw += kron(pauli(j), pauli(k)) * Complex(0.25 * c);
    }
  }
  raw = raw.hermitian_part();

  const auto eig = hermitian_eigen(raw);
  if (eig.eigenvalues.front() >= DensityMatrix::kMinEigenvalue) {
    return {DensityMatrix(raw), raw, false};
  }

  double total = 0.0;
  std::array<double, 4> clipped{};
  for (std::size_t i = 0; i < 4; ++i) {
    clipped[i] = std::max(eig.eigenvalues[i], 0.0);
    total += clipped[i];
  }
  ComplexMatrix fixed(4);
  for (std::size_t n = 0; n < 4; ++n) {
    const double weight = clipped[n] / total;
    if (weight == 0.0) continue;
    for (std::size_t i = 0; i < 4; ++i) {
      for (std::size_t k = 0; k < 4; ++k) {
        fixed(i, k) += weight * eig.eigenvectors(i, n) * std::conj(eig.eigenvectors(k, n));
      }
    }
  }
  return {DensityMatrix(fixed.hermitian_part()), raw, true};
}

Reconstruction tomograph(const DensityMatrix& rho, std::uint64_t shots, std::uint64_t seed) {
  if (shots == 0) return reconstruct(estimate_correlations(exact_frequencies(rho)));
  return reconstruct(estimate_correlations(sample_counts(rho, shots, seed)));
}

}  // namespace bds
