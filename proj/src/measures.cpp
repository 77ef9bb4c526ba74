#include "bds/measures.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <tuple>
#include <vector>

#include "bds/optimize.hpp"

namespace bds {

namespace {

constexpr double kRoundOff = 1e-9;

double clamp_round_off(double v) { return (v < 0.0 && v > -kRoundOff) ? 0.0 : v; }

void require_two_qubits(const DensityMatrix& rho) {
  if (rho.n_qubits() != 2) throw Error(ErrorCode::kDimensionMismatch, "expected two qubits");
}

// Entropy over the spectrum, ignoring eigenvalues at or below the floor so
// that slightly non-positive estimates stay usable.
double spectral_entropy(const ComplexMatrix& m) {
  double s = 0.0;
  for (double l : hermitian_eigenvalues(m.hermitian_part())) {
    if (l > Tolerance::kEntropyFloor) s -= l * std::log2(l);
  }
  return s;
}

double norm3(const Vec3& v) { return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]); }

}  // namespace

ComplexMatrix BlochDecomposition::to_matrix() const {
  ComplexMatrix m = ComplexMatrix::identity(4);
  for (int j = 1; j <= 3; ++j) {
    m += kron(pauli(j), pauli(0)) * Complex(a_vec[j - 1]);
    m += kron(pauli(0), pauli(j)) * Complex(b_vec[j - 1]);
    for (int k = 1; k <= 3; ++k) m += kron(pauli(j), pauli(k)) * Complex(corr[j - 1][k - 1]);
  }
  return m * Complex(0.25);
}

double coherence_l1(const ComplexMatrix& m) {
  double sum = 0.0;
  for (std::size_t i = 0; i < m.dim(); ++i) {
    for (std::size_t j = 0; j < m.dim(); ++j) {
      if (i != j) sum += std::abs(m(i, j));
    }
  }
  return sum;
}

double coherence_l1(const DensityMatrix& rho) { return coherence_l1(rho.matrix()); }

double nonlocal_coherence(const DensityMatrix& rho) {
  require_two_qubits(rho);
  return coherence_l1(rho) -
         (coherence_l1(reduced_qubit(rho, 0)) + coherence_l1(reduced_qubit(rho, 1)));
}

double mutual_information(const DensityMatrix& rho) {
  require_two_qubits(rho);
  return spectral_entropy(reduced_qubit(rho, 0)) + spectral_entropy(reduced_qubit(rho, 1)) -
         spectral_entropy(rho.matrix());
}

BlochDecomposition bloch_decompose(const DensityMatrix& rho) {
  require_two_qubits(rho);
  auto expect = [&](int j, int k) {
    return (rho.matrix() * kron(pauli(j), pauli(k))).trace().real();
  };
  BlochDecomposition out;
  for (int j = 1; j <= 3; ++j) {
    out.a_vec[j - 1] = expect(j, 0);
    out.b_vec[j - 1] = expect(0, j);
    for (int k = 1; k <= 3; ++k) out.corr[j - 1][k - 1] = expect(j, k);
  }
  return out;
}

double measured_mutual_information(const BlochDecomposition& bloch, double entropy_a,
                                   MeasurementDirection direction) {
  const Vec3 n{std::sin(direction.theta) * std::cos(direction.phi),
               std::sin(direction.theta) * std::sin(direction.phi), std::cos(direction.theta)};
  Vec3 tn{};
  double bn = 0.0;
  for (int j = 0; j < 3; ++j) {
    bn += bloch.b_vec[j] * n[j];
    for (int k = 0; k < 3; ++k) tn[j] += bloch.corr[j][k] * n[k];
  }
  // Outcome s = +/-1 on b leaves a in (I + r.sigma)/2 with probability p.
  double conditional = 0.0;
  for (double s : {1.0, -1.0}) {
    const double weight = 1.0 + s * bn;
    const double p = 0.5 * weight;
    if (p < 1e-12) continue;
    const Vec3 r{(bloch.a_vec[0] + s * tn[0]) / weight, (bloch.a_vec[1] + s * tn[1]) / weight,
                 (bloch.a_vec[2] + s * tn[2]) / weight};
    conditional += p * binary_entropy(0.5 * (1.0 + norm3(r)));
  }
  return entropy_a - conditional;
}

DiscordResult discord_details(const DensityMatrix& rho, const DiscordOptions& opts) {
  require_two_qubits(rho);
  if (opts.grid_theta < 2 || opts.grid_phi < 1 || opts.refine_starts < 0) {
    throw Error(ErrorCode::kOutOfRange, "discord grid too small");
  }
  const BlochDecomposition bloch = bloch_decompose(rho);
  const double entropy_a = spectral_entropy(reduced_qubit(rho, 0));
  const double info = mutual_information(rho);

  auto objective = [&](MeasurementDirection d) {
    const double v = measured_mutual_information(bloch, entropy_a, d);
    if (!std::isfinite(v)) {
      throw Error(ErrorCode::kOptimizerFailure, "non-finite objective value");
    }
    return v;
  };

  constexpr double kPi = std::numbers::pi;
  const double dtheta = kPi / (opts.grid_theta - 1);
  const double dphi = 2.0 * kPi / opts.grid_phi;

  struct Sample {
    double value;
    MeasurementDirection dir;
  };
  // Larger value first; ties broken lexicographically on (theta, phi).
  auto better = [](const Sample& x, const Sample& y) {
    if (x.value != y.value) return x.value > y.value;
    return std::tie(x.dir.theta, x.dir.phi) < std::tie(y.dir.theta, y.dir.phi);
  };

  std::vector<Sample> grid;
  grid.reserve(static_cast<std::size_t>(opts.grid_theta) * opts.grid_phi);
  for (int i = 0; i < opts.grid_theta; ++i) {
    for (int j = 0; j < opts.grid_phi; ++j) {
      const MeasurementDirection d{i * dtheta, j * dphi};
      grid.push_back({objective(d), d});
    }
  }
  const auto starts = std::min<std::size_t>(static_cast<std::size_t>(opts.refine_starts),
                                            grid.size());
  std::partial_sort(grid.begin(), grid.begin() + static_cast<std::ptrdiff_t>(starts), grid.end(),
                    better);

  Sample best = grid.front();
  optimize::NelderMeadOptions nm;
  nm.tolerance = opts.tolerance;
  for (std::size_t s = 0; s < starts; ++s) {
    const auto found = optimize::nelder_mead<2>(
        [&](const std::array<double, 2>& x) { return -objective({x[0], x[1]}); },
        {grid[s].dir.theta, grid[s].dir.phi}, {dtheta, dphi}, nm);
    const Sample candidate{-found.value, {found.x[0], found.x[1]}};
    if (better(candidate, best)) best = candidate;
  }

  DiscordResult out;
  out.mutual_information = info;
  out.classical_correlation = best.value;
  out.best = best.dir;
  out.discord = std::max(0.0, info - best.value);
  return out;
}

double discord_oz(const DensityMatrix& rho, const DiscordOptions& opts) {
  return discord_details(rho, opts).discord;
}

double negativity(const DensityMatrix& rho) {
  require_two_qubits(rho);
  const ComplexMatrix pt = partial_transpose(rho.matrix(), 2, 2, Subsystem::kB);
  return std::max(0.0, trace_norm(pt) - 1.0);
}

Vec3 correlation_vector(const Mat3& corr) {
  ComplexMatrix gram(3);
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < 3; ++k) s += corr[k][i] * corr[k][j];
      gram(i, j) = s;
    }
  }
  const auto lambdas = hermitian_eigenvalues(gram);
  Vec3 out{};
  for (std::size_t i = 0; i < 3; ++i) out[i] = std::sqrt(std::max(lambdas[2 - i], 0.0));
  return out;
}

double steering_from_vector(const Vec3& c) {
  return std::max(0.0, (norm3(c) - 1.0) / (std::sqrt(3.0) - 1.0));
}

double nonlocality_from_vector(const Vec3& c) {
  const double min_sq = std::min({c[0] * c[0], c[1] * c[1], c[2] * c[2]});
  const double total_sq = c[0] * c[0] + c[1] * c[1] + c[2] * c[2];
  return std::max(0.0, (std::sqrt(std::max(total_sq - min_sq, 0.0)) - 1.0) /
                           (std::sqrt(2.0) - 1.0));
}

double steering(const DensityMatrix& rho) {
  return steering_from_vector(correlation_vector(bloch_decompose(rho).corr));
}

double nonlocality(const DensityMatrix& rho) {
  return nonlocality_from_vector(correlation_vector(bloch_decompose(rho).corr));
}

ResourceReport full_report(const DensityMatrix& rho, const DiscordOptions& opts) {
  require_two_qubits(rho);
  const Vec3 c = correlation_vector(bloch_decompose(rho).corr);
  ResourceReport r;
  r.coherence_l1 = coherence_l1(rho);
  r.nonlocal_coherence = clamp_round_off(nonlocal_coherence(rho));
  r.discord = discord_oz(rho, opts);
  r.negativity = negativity(rho);
  r.steering = steering_from_vector(c);
  r.nonlocality = nonlocality_from_vector(c);
  for (double v : {r.coherence_l1, r.nonlocal_coherence, r.discord, r.negativity, r.steering,
                   r.nonlocality}) {
    if (!std::isfinite(v)) throw Error(ErrorCode::kOptimizerFailure, "non-finite measure");
  }
  return r;
}

bool satisfies_hierarchy(const ResourceReport& r, double floor) {
  const double chain[] = {r.nonlocality, r.steering, r.negativity, r.discord,
                          std::max(r.nonlocal_coherence, 0.0)};
  for (std::size_t i = 0; i + 1 < std::size(chain); ++i) {
    if (chain[i] > floor && !(chain[i + 1] > floor)) return false;
  }
  return true;
}

}  // namespace bds
