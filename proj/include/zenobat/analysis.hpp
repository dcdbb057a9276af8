#pragma once

// Charging-curve analysis: extracts capacity A and charging time T via a
// cosine model, sweeps the inter-pulse interval, predicts and detects the
// singular peaks and fits the valley scaling of T against tau.

#include <vector>

#include "zenobat/engine.hpp"

namespace zenobat {

struct FitResult {
  double a = 0.0;         // charging capacity
  double t_charge = 0.0;  // first full-charge time
  double residual = 0.0;  // RMS misfit over the fit window, normalized by a
  bool resolved = true;   // false: first E^b maximum fell outside the window
};

struct ValleyFit {
  double slope = 0.0;     // least-squares T/tau through the valley minima
  double residual = 0.0;  // RMS of (T - slope*tau) normalized by mean valley T
  std::vector<int> valley_indices;
};

struct ScanResult {
  std::vector<double> taus;  // strictly increasing
  std::vector<FitResult> fits;
  std::vector<double> predicted_peaks;  // tau_n covered by the grid
  std::vector<int> detected_peaks;
  std::vector<int> valley_indices;
  double valley_slope;     // NaN when fewer than 3 valleys
  double valley_residual;  // NaN likewise
};

struct ChargePeak {
  double time;
  double energy;
};

/// First interior local maximum of E^b at or above 90% of the window
/// maximum, refined by a parabola through the three nearest samples.
/// Returns false when the window ends before the battery peaks.
bool first_full_charge(const EnergyTimeSeries& series, ChargePeak* peak);

/// Two-stage fit of E^c(t) ~ a/2 [cos(pi t / T) - 1] + lambda3: extremum
/// seeding on E^b with parabolic refinement, then coordinate-descent least
/// squares of (a, T) over the first half-period. Needs >= 50 samples.
/// An unresolved window is not an error; a censored result is returned with
/// t_charge = window end and a = window maximum of E^b.
FitResult fit_charging_curve(const EnergyTimeSeries& series, const ModelParams& p);

/// Quantized intervals tau_n = 2 pi n / lambda4, n = 1..n_max.
std::vector<double> predict_peaks(const ModelParams& p, int n_max);

/// Indices where T exceeds 3x the median of its 10-point neighborhood, or
/// where a censored point sits between resolved neighbors. Needs >= 5 points.
std::vector<int> detect_peaks(const ScanResult& scan);

/// Zero-intercept least-squares slope of T against tau through the strict
/// local minima of T (censored points excluded, prominence >= 5% of the
/// local median). Needs >= 3 valleys.
ValleyFit fit_valleys(const ScanResult& scan);

/// One stroboscopic run plus fit per grid point, evaluated with up to
/// `parallel` worker threads (<= 0: hardware concurrency). Output is
/// deterministic and ordered by the input grid.
ScanResult scan_tau(const ModelParams& p, const std::vector<double>& tau_grid, double window,
                    int parallel = 0);

/// Scan axis for tau in dimensionless units: (1000/pi) g tau.
double tau_scaled(const ModelParams& p, double tau);

/// Ascending tau grid over [start, stop] (in scaled units, step `step`),
/// refined by `refine_factor` within +-1 scaled unit of each predicted peak.
std::vector<double> make_scan_grid(const ModelParams& p, double start_scaled, double stop_scaled,
                                   double step_scaled, int refine_factor);

/// Default scan window 300 pi / (2 g).
double default_scan_window(const ModelParams& p);

}  // namespace zenobat
