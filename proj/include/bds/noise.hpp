#pragma once

#include <utility>
#include <vector>

#include "bds/measures.hpp"
#include "bds/states.hpp"

namespace bds {

/// CPTP map rho -> sum K rho K^dagger. Construction checks that all operators
/// share one dimension and that sum K^dagger K = I within 1e-10.
class KrausChannel {
 public:
  static constexpr double kCompletenessTolerance = 1e-10;

  explicit KrausChannel(std::vector<ComplexMatrix> operators);

  const std::vector<ComplexMatrix>& operators() const noexcept { return operators_; }
  std::size_t dim() const noexcept { return operators_.front().dim(); }

  /// max |sum K^dagger K - I|
  double completeness_error() const;

  /// Row-major vectorisation: vec(K rho K^dagger) = (K (x) conj(K)) vec(rho).
  ComplexMatrix superoperator() const;

 private:
  std::vector<ComplexMatrix> operators_;
};

/// Combined amplitude (a) and phase (p) damping with Kraus operators
/// sqrt(p(1-a))|1><1|, sqrt(a)|0><1|, |0><0| + sqrt((1-p)(1-a))|1><1|.
KrausChannel composite_damping(double a, double p);

/// Applies a single-qubit channel to `qubit` (0 = leftmost factor).
DensityMatrix apply_channel(const KrausChannel& channel, const DensityMatrix& rho,
                            std::size_t qubit);

struct SweepPoint {
  double w = 0.0;
  ResourceReport report;
};

/// Werner states damped on `qubit` (qubit a by default), then measured.
std::vector<SweepPoint> decohered_werner_sweep(double a, double p, const std::vector<double>& w_grid,
                                               std::size_t qubit = 0,
                                               const DiscordOptions& opts = {});

}  // namespace bds
