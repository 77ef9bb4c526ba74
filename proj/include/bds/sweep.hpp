#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "bds/measures.hpp"
#include "bds/states.hpp"

namespace bds {

enum class StateFamily { kWerner, kCustomSpec };

/// Defaults follow the experimental protocol: eleven weights w in [0,1] and
/// 8192 shots per measurement setting.
struct SweepConfig {
  StateFamily family = StateFamily::kWerner;
  /// Endpoint for the custom family: row w is w*rho(spec) + (1-w) I/4.
  BdsSpec custom_spec{0.0, 0.0, 0.0, 1.0};
  int w_points = 11;
  std::uint64_t shots = 8192;  // 0 = exact mode
  std::uint64_t seed = 0;
  double noise_a = 0.0;
  double noise_p = 0.0;
  bool project_physical = true;
  DiscordOptions discord{};
  /// Worker threads for sweep points; 0 picks hardware concurrency.
  unsigned threads = 0;

  void validate() const;
};

struct SweepRow {
  double w = 0.0;
  double fidelity = 0.0;
  ResourceReport measured;
  ResourceReport theory;
  bool projected = false;
};

std::vector<double> w_grid(int points);

/// Target Bell-diagonal weights at grid value w.
BdsSpec sweep_target(const SweepConfig& config, double w);

/// One row: prepare via the circuit, damp qubit a, tomograph, reconstruct,
/// then measure; theory columns come from the noiseless target.
SweepRow run_sweep_point(const SweepConfig& config, double w, std::uint64_t row_index);

/// Rows ordered by w regardless of scheduling.
std::vector<SweepRow> run_sweep(const SweepConfig& config);

inline constexpr const char* kSweepCsvHeader = "w,F,C,D,E,S,N,C_th,D_th,E_th,S_th,N_th";

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);
std::string sweep_csv(const std::vector<SweepRow>& rows);

}  // namespace bds
