#pragma once

#include <array>

#include "bds/states.hpp"

namespace bds {

struct ResourceReport {
  double coherence_l1 = 0.0;
  double nonlocal_coherence = 0.0;
  double discord = 0.0;
  double negativity = 0.0;
  double steering = 0.0;
  double nonlocality = 0.0;
};

using Vec3 = std::array<double, 3>;
using Mat3 = std::array<Vec3, 3>;

/// 4 rho = I + a.sigma (x) I + I (x) b.sigma + sum_jk corr_jk sigma_j (x) sigma_k
struct BlochDecomposition {
  Vec3 a_vec{};
  Vec3 b_vec{};
  Mat3 corr{};

  ComplexMatrix to_matrix() const;
};

struct DiscordOptions {
  int grid_theta = 64;
  int grid_phi = 128;
  int refine_starts = 3;
  double tolerance = 1e-8;
};

/// Direction of a projective measurement n = (sin t cos p, sin t sin p, cos t).
struct MeasurementDirection {
  double theta = 0.0;
  double phi = 0.0;
};

struct DiscordResult {
  double discord = 0.0;
  double mutual_information = 0.0;
  double classical_correlation = 0.0;  // max post-measurement mutual information
  MeasurementDirection best{};
};

double coherence_l1(const DensityMatrix& rho);
double coherence_l1(const ComplexMatrix& m);
double nonlocal_coherence(const DensityMatrix& rho);

double mutual_information(const DensityMatrix& rho);

/// Mutual information left after measuring qubit b along `direction`.
double measured_mutual_information(const BlochDecomposition& bloch, double entropy_a,
                                   MeasurementDirection direction);

DiscordResult discord_details(const DensityMatrix& rho, const DiscordOptions& opts = {});
double discord_oz(const DensityMatrix& rho, const DiscordOptions& opts = {});

double negativity(const DensityMatrix& rho);

BlochDecomposition bloch_decompose(const DensityMatrix& rho);

/// Singular values of the correlation matrix, descending.
Vec3 correlation_vector(const Mat3& corr);

double steering(const DensityMatrix& rho);
double nonlocality(const DensityMatrix& rho);

/// Steering and nonlocality from a correlation vector.
double steering_from_vector(const Vec3& c);
double nonlocality_from_vector(const Vec3& c);

ResourceReport full_report(const DensityMatrix& rho, const DiscordOptions& opts = {});

/// Checks N > 0 => S > 0 => E > 0 => D > 0 => C > 0 with "> 0" meaning
/// above `floor`; C is the non-local coherence.
bool satisfies_hierarchy(const ResourceReport& r, double floor = 1e-9);

}  // namespace bds
