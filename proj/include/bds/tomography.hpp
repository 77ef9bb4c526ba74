#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "bds/circuit.hpp"
#include "bds/states.hpp"

namespace bds {

/// Local Pauli bases measured on qubits a and b.
struct MeasurementSetting {
  PauliBasis basis_a = PauliBasis::kZ;
  PauliBasis basis_b = PauliBasis::kZ;

  /// Settings are numbered 0..8 as XX, XY, XZ, YX, ..., ZZ.
  int index() const;
  static MeasurementSetting from_index(int index);
  /// Two-letter label such as "XY".
  std::string label() const;
  static MeasurementSetting from_label(const std::string& label);

  friend bool operator==(const MeasurementSetting&, const MeasurementSetting&) = default;
};

inline constexpr int kNumSettings = 9;

/// Outcome order for a setting: (++), (+-), (-+), (--), where + is the +1
/// eigenvalue of the measured Pauli.
using OutcomeProbabilities = std::array<double, 4>;
using OutcomeCounts = std::array<std::uint64_t, 4>;
using SettingFrequencies = std::array<OutcomeProbabilities, kNumSettings>;

struct TomographyCounts {
  std::uint64_t shots_per_setting = 0;
  std::array<OutcomeCounts, kNumSettings> counts{};

  /// Throws kParse if any setting does not sum to shots_per_setting.
  void validate() const;
  SettingFrequencies frequencies() const;

  friend bool operator==(const TomographyCounts&, const TomographyCounts&) = default;
};

/// c[j][k] = <sigma_j (x) sigma_k>, with c[0][0] = 1.
struct CorrelationMatrix {
  std::array<std::array<double, 4>, 4> c{};
};

OutcomeProbabilities born_probabilities(const DensityMatrix& rho, MeasurementSetting setting);
SettingFrequencies exact_frequencies(const DensityMatrix& rho);

/// Independent 64-bit seed for sub-stream `stream` of `seed`.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

/// Multinomial draw of `shots` outcomes for every setting. Each setting has
/// its own random stream keyed by (seed, setting index).
TomographyCounts sample_counts(const DensityMatrix& rho, std::uint64_t shots, std::uint64_t seed);

CorrelationMatrix estimate_correlations(const SettingFrequencies& freqs);
CorrelationMatrix estimate_correlations(const TomographyCounts& counts);

/// Correlation matrix of a state by direct trace evaluation.
CorrelationMatrix exact_correlations(const DensityMatrix& rho);

struct Reconstruction {
  DensityMatrix state;  // always a valid density matrix
  ComplexMatrix raw;    // linear-inversion estimate before any projection
  bool projected = false;
};

/// Linear inversion rho = 1/4 sum c_jk sigma_j (x) sigma_k. A raw estimate
/// with min eigenvalue below -1e-8 has its negative eigenvalues clipped and
/// its trace renormalised.
Reconstruction reconstruct(const CorrelationMatrix& corr);

/// shots == 0 selects exact mode (Born probabilities, no sampling).
Reconstruction tomograph(const DensityMatrix& rho, std::uint64_t shots, std::uint64_t seed);

}  // namespace bds
