#pragma once

// Time evolution: free segments under the full Hamiltonian interleaved with
// instantaneous pulses at interval tau, a stroboscopic fast path for long
// pulse trains, multi-phase charging cycles and analytic Rabi oracles.

#include <vector>

#include "zenobat/model.hpp"

namespace zenobat {

struct Phase {
  enum class Kind { free, pulsed };
  Kind kind;
  double duration;
  double tau;  // inter-pulse interval; meaningful for pulsed phases only

  static Phase free_evolution(double duration) { return {Kind::free, duration, 0.0}; }
  static Phase pulsed(double duration, double tau) { return {Kind::pulsed, duration, tau}; }
};

/// Ordered phases of one run. Pulsed-phase durations are rounded down to an
/// integer number of inter-pulse intervals at execution time; the actual
/// durations are reported back in ScheduleResult.
class PulseSchedule {
 public:
  explicit PulseSchedule(std::vector<Phase> phases);
  const std::vector<Phase>& phases() const { return phases_; }

 private:
  std::vector<Phase> phases_;
};

struct EnergyTimeSeries {
  std::vector<double> times;     // units of 1/omega0, strictly increasing
  std::vector<double> ec;        // <H^mc (x) 1>
  std::vector<double> eb;        // <1 (x) H^b>
  std::vector<int> phase_index;  // schedule phase that produced each sample

  size_t size() const { return times.size(); }
};

struct ScheduleResult {
  EnergyTimeSeries series;
  StateVector final_state;
  std::vector<double> actual_durations;  // after pulse-train rounding
};

struct Sampling {
  long pulse_stride = 1;  // pulsed phases: record every N-th pulse boundary
  double free_dt = 0.0;   // free phases: sample interval; 0 -> pi/(200 g)
};

/// Exact piecewise-unitary evolution of the full three-qubit model from
/// |v3>|0>, sampling E^c and E^b.
ScheduleResult run_schedule(const ModelParams& p, const PulseSchedule& schedule,
                            const Sampling& sampling = {});

struct FloquetOperator {
  ComplexMatrix matrix;  // 4x4 on m(x)c, or 8x8 with the battery included
  double tau;
};

/// One-period evolution operator (pulse composed with free propagation over
/// tau): (P (x) 1) exp(-i H tau).
FloquetOperator floquet_operator(const ModelParams& p, double tau, bool include_battery);

/// Fast path for long pulse trains: diagonalizes the one-period step of the
/// full model once and advances by eigenphase powers. Samples at pulse
/// boundaries k = 0, stride, 2*stride, ..., always including k = n_pulses.
/// Agrees with run_schedule to 1e-9 per sample.
EnergyTimeSeries run_stroboscopic(const ModelParams& p, double tau, long n_pulses,
                                  long sample_stride = 1);

enum class RabiRegime { bare_resonant, pulsed_dense_resonant };

struct RabiEnergies {
  double ec;
  double eb;
};

/// Closed-form two-level transfer under the rotating-wave approximation:
/// eb(t) = 2 omega1 sin^2(g_eff t) with g_eff = g/sqrt(2) (bare resonance,
/// 2 omega1 = lambda3 - lambda1) or g (dense pulsing, 2 omega1 = lambda3),
/// and ec(t) = ec(0) - eb(t). Throws RegimeMismatch when omega1 is
/// inconsistent with the requested regime.
RabiEnergies rabi_oracle(const ModelParams& p, RabiRegime regime, double t);

}  // namespace zenobat
