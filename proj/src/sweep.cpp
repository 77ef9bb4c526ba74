#include "bds/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

#include "bds/circuit.hpp"
#include "bds/noise.hpp"
#include "bds/tomography.hpp"

namespace bds {

void SweepConfig::validate() const {
  if (w_points < 1) throw Error(ErrorCode::kOutOfRange, "need at least one sweep point");
  if (!(noise_a >= 0.0 && noise_a <= 1.0) || !(noise_p >= 0.0 && noise_p <= 1.0)) {
    throw Error(ErrorCode::kOutOfRange, "noise rates must lie in [0,1]");
  }
  if (family == StateFamily::kCustomSpec) custom_spec.validate();
}

std::vector<double> w_grid(int points) {
  if (points < 1) throw Error(ErrorCode::kOutOfRange, "need at least one grid point");
  if (points == 1) return {1.0};
  std::vector<double> grid(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) grid[static_cast<std::size_t>(i)] = double(i) / (points - 1);
  return grid;
}

BdsSpec sweep_target(const SweepConfig& config, double w) {
  if (config.family == StateFamily::kWerner) return werner_spec(w);
  if (!(w >= 0.0 && w <= 1.0)) throw Error(ErrorCode::kOutOfRange, "w outside [0,1]");
  const auto p = config.custom_spec.as_array();
  const double q = (1.0 - w) / 4.0;
  return {w * p[0] + q, w * p[1] + q, w * p[2] + q, w * p[3] + q};
}

SweepRow run_sweep_point(const SweepConfig& config, double w, std::uint64_t row_index) {
  const BdsSpec spec = sweep_target(config, w);
  const DensityMatrix target = bds_from_spec(spec);

  DensityMatrix prepared = prepared_state(spec);
  if (config.noise_a > 0.0 || config.noise_p > 0.0) {
    prepared = apply_channel(composite_damping(config.noise_a, config.noise_p), prepared, 0);
  }

  const Reconstruction rec =
      tomograph(prepared, config.shots, derive_seed(config.seed, row_index));
  const DensityMatrix measured =
      config.project_physical ? rec.state : DensityMatrix::allow_negative(rec.raw);

  SweepRow row;
  row.w = w;
  row.projected = config.project_physical && rec.projected;
  row.fidelity = fidelity(target, measured);
  row.measured = full_report(measured, config.discord);
  row.theory = full_report(target, config.discord);
  return row;
}

std::vector<SweepRow> run_sweep(const SweepConfig& config) {
  config.validate();
  const std::vector<double> grid = w_grid(config.w_points);
  std::vector<SweepRow> rows(grid.size());

  unsigned workers = config.threads ? config.threads : std::thread::hardware_concurrency();
  workers = std::clamp<unsigned>(workers, 1u, static_cast<unsigned>(grid.size()));

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (std::size_t i = next++; i < grid.size(); i = next++) {
      try {
        rows[i] = run_sweep_point(config, grid[i], i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < workers; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return rows;
}

namespace {

std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  std::string s(buf);
  if (s == "-0.000000") s = "0.000000";
  return s;
}

}  // namespace

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << kSweepCsvHeader << '\n';
  for (const SweepRow& r : rows) {
    const double values[] = {r.w,
                             r.fidelity,
                             r.measured.nonlocal_coherence,
                             r.measured.discord,
                             r.measured.negativity,
                             r.measured.steering,
                             r.measured.nonlocality,
                             r.theory.nonlocal_coherence,
                             r.theory.discord,
                             r.theory.negativity,
                             r.theory.steering,
                             r.theory.nonlocality};
    for (std::size_t i = 0; i < std::size(values); ++i) {
      if (i) out << ',';
      out << fixed6(values[i]);
    }
    out << '\n';
  }
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream out;
  write_sweep_csv(out, rows);
  return out.str();
}

}  // namespace bds
