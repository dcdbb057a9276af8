#include "zenobat/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <thread>

namespace zenobat {

namespace {

double median_of(std::vector<double> v) {
  const size_t n = v.size();
  std::sort(v.begin(), v.end());
  return (n % 2 == 1) ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

/// Median of up to 5 values on each side of i, i itself excluded.
double neighborhood_median(const std::vector<double>& v, size_t i) {
  std::vector<double> nb;
  const size_t n = v.size();
  const size_t lo = (i >= 5) ? i - 5 : 0;
  const size_t hi = std::min(n, i + 6);
  for (size_t j = lo; j < hi; ++j)
    if (j != i) nb.push_back(v[j]);
  return median_of(std::move(nb));
}

/// Median of values within +-half_width of tau_i, i itself excluded. A
/// fixed tau window keeps the comparison neighborhood meaningful where the
/// grid is locally refined.
double window_median(const std::vector<double>& taus, const std::vector<double>& v, size_t i,
                     double half_width) {
  std::vector<double> nb;
  for (size_t j = 0; j < taus.size(); ++j)
    if (j != i && std::abs(taus[j] - taus[i]) <= half_width) nb.push_back(v[j]);
  if (nb.empty()) return v[i];
  return median_of(std::move(nb));
}

double coarse_spacing(const std::vector<double>& taus) {
  double max_gap = 0.0;
  for (size_t i = 1; i < taus.size(); ++i) max_gap = std::max(max_gap, taus[i] - taus[i - 1]);
  return max_gap;
}

/// Vertex of the parabola through three samples; falls back to the middle
/// point when the points are collinear. Returns (t*, value).
std::pair<double, double> parabolic_peak(double t1, double y1, double t2, double y2, double t3,
                                         double y3) {
  const double d21 = t2 - t1, d23 = t2 - t3;
  const double num = d21 * d21 * (y2 - y3) - d23 * d23 * (y2 - y1);
  const double den = d21 * (y2 - y3) - d23 * (y2 - y1);
  if (std::abs(den) < 1e-300) return {t2, y2};
  double ts = t2 - 0.5 * num / den;
  ts = std::clamp(ts, t1, t3);
  // Lagrange evaluation at ts
  const double l1 = (ts - t2) * (ts - t3) / ((t1 - t2) * (t1 - t3));
  const double l2 = (ts - t1) * (ts - t3) / ((t2 - t1) * (t2 - t3));
  const double l3 = (ts - t1) * (ts - t2) / ((t3 - t1) * (t3 - t2));
  return {ts, y1 * l1 + y2 * l2 + y3 * l3};
}

double cosine_model(double t, double a, double t_charge, double offset) {
  return 0.5 * a * (std::cos(std::numbers::pi * t / t_charge) - 1.0) + offset;
}

double fit_ssr(const EnergyTimeSeries& s, size_t count, double a, double t_charge,
               double offset) {
  double ssr = 0.0;
  for (size_t i = 0; i < count; ++i) {
    const double r = s.ec[i] - cosine_model(s.times[i], a, t_charge, offset);
    ssr += r * r;
  }
  return ssr;
}

/// Closed-form least-squares amplitude for fixed T.
double best_amplitude(const EnergyTimeSeries& s, size_t count, double t_charge, double offset) {
  double num = 0.0, den = 0.0;
  for (size_t i = 0; i < count; ++i) {
    const double c = 0.5 * (std::cos(std::numbers::pi * s.times[i] / t_charge) - 1.0);
    num += c * (s.ec[i] - offset);
    den += c * c;
  }
  return (den > 0.0) ? num / den : 0.0;
}

template <class F>
double golden_min(F f, double lo, double hi, double rel_tol) {
  constexpr double gr = 0.6180339887498949;
  double a = lo, b = hi;
  double x1 = b - gr * (b - a);
  double x2 = a + gr * (b - a);
  double f1 = f(x1), f2 = f(x2);
  while (b - a > rel_tol * (std::abs(a) + std::abs(b))) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - gr * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + gr * (b - a);
      f2 = f(x2);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

bool first_full_charge(const EnergyTimeSeries& series, ChargePeak* peak) {
  const size_t n = series.size();
  if (n < 3) return false;
  const double eb_max = *std::max_element(series.eb.begin(), series.eb.end());
  for (size_t i = 1; i + 1 < n; ++i) {
    // >= on both sides so a flat-topped maximum resolves to its earliest time
    if (series.eb[i] >= series.eb[i - 1] && series.eb[i] >= series.eb[i + 1] &&
        series.eb[i] >= 0.9 * eb_max) {
      const auto [t, v] = parabolic_peak(series.times[i - 1], series.eb[i - 1], series.times[i],
                                         series.eb[i], series.times[i + 1], series.eb[i + 1]);
      *peak = {t, v};
      return true;
    }
  }
  return false;
}

FitResult fit_charging_curve(const EnergyTimeSeries& series, const ModelParams& p) {
  const size_t n = series.size();
  if (n < 50) throw TooFewSamples("need at least 50 samples to fit");
  const double offset = p.lambda3();

  ChargePeak seed;
  if (!first_full_charge(series, &seed)) {
    FitResult censored;
    censored.resolved = false;
    censored.a = *std::max_element(series.eb.begin(), series.eb.end());
    censored.t_charge = series.times.back();
    const double ssr = fit_ssr(series, n, censored.a, censored.t_charge, offset);
    censored.residual =
        (censored.a > 1e-300) ? std::sqrt(ssr / static_cast<double>(n)) / censored.a : 0.0;
    return censored;
  }
  const double t0 = seed.time;
  const double a0 = seed.energy;

  // Stage 2: coordinate-descent least squares over the first half-period.
  size_t count = 0;
  while (count < n && series.times[count] <= t0 * (1.0 + 1e-12)) ++count;
  count = std::min(n, std::max<size_t>(count, 8));

  double a = a0;
  double t_charge = t0;
  double prev_ssr = std::numeric_limits<double>::max();
  for (int iter = 0; iter < 60; ++iter) {
    const double a_new = best_amplitude(series, count, t_charge, offset);
    const double t_new = golden_min(
        [&](double tt) { return fit_ssr(series, count, a_new, tt, offset); }, 0.5 * t_charge,
        1.5 * t_charge, 1e-13);
    const double da = std::abs(a_new - a) / std::max(std::abs(a_new), 1e-12);
    const double dt = std::abs(t_new - t_charge) / std::max(t_new, 1e-12);
    a = a_new;
    t_charge = t_new;
    const double ssr = fit_ssr(series, count, a, t_charge, offset);
    const bool stalled = ssr >= prev_ssr * (1.0 - 1e-14);
    prev_ssr = ssr;
    if ((da < 1e-12 && dt < 1e-12) || stalled) break;
  }

  FitResult out;
  out.a = a;
  out.t_charge = t_charge;
  out.resolved = true;
  const double ssr = fit_ssr(series, count, a, t_charge, offset);
  out.residual =
      (std::abs(a) > 1e-300) ? std::sqrt(ssr / static_cast<double>(count)) / std::abs(a) : 0.0;
  return out;
}

std::vector<double> predict_peaks(const ModelParams& p, int n_max) {
  if (n_max < 1) throw InvalidArgument("n_max must be >= 1");
  std::vector<double> taus(static_cast<size_t>(n_max));
  for (int k = 1; k <= n_max; ++k)
    taus[static_cast<size_t>(k - 1)] = 2.0 * std::numbers::pi * k / p.lambda4();
  return taus;
}

std::vector<int> detect_peaks(const ScanResult& scan) {
  const size_t n = scan.taus.size();
  if (n < 5) throw TooFewPoints("need at least 5 scan points");
  std::vector<double> tvals(n);
  for (size_t i = 0; i < n; ++i) tvals[i] = scan.fits[i].t_charge;
  // the 10-point neighborhood of the coarse grid, expressed as a tau window
  const double half_width = 5.0 * coarse_spacing(scan.taus);

  std::vector<int> hits;
  for (size_t i = 0; i < n; ++i) {
    const double med = window_median(scan.taus, tvals, i, half_width);
    const bool spike = tvals[i] >= 3.0 * med;
    const bool censored_between_resolved = !scan.fits[i].resolved && i > 0 && i + 1 < n &&
                                           scan.fits[i - 1].resolved && scan.fits[i + 1].resolved;
    if (spike || censored_between_resolved) hits.push_back(static_cast<int>(i));
  }
  return hits;
}

ValleyFit fit_valleys(const ScanResult& scan) {
  const size_t n = scan.taus.size();

  // Valley identification runs on a uniform coarse subsample of the grid
  // (spacing taken from the largest grid gap) so that refinement clusters
  // around the singular peaks cannot inject flank micro-dips as minima.
  const double max_gap = coarse_spacing(scan.taus);
  std::vector<size_t> coarse;
  for (size_t i = 0; i < n; ++i)
    if (coarse.empty() || scan.taus[i] - scan.taus[coarse.back()] >= 0.8 * max_gap)
      coarse.push_back(i);

  const size_t m = coarse.size();
  std::vector<double> tvals(m);
  for (size_t k = 0; k < m; ++k) tvals[k] = scan.fits[coarse[k]].t_charge;

  // Operating points inside a singular-peak zone are not valleys, even when
  // the interval hits a narrow resonant notch within the suppressed region.
  const double peak_zone = 4.0 * max_gap;
  auto near_peak = [&](double tau) {
    for (double tn : scan.predicted_peaks)
      if (std::abs(tau - tn) <= peak_zone) return true;
    return false;
  };

  std::vector<int> valleys;
  for (size_t k = 1; k + 1 < m; ++k) {
    if (!scan.fits[coarse[k]].resolved) continue;
    if (near_peak(scan.taus[coarse[k]])) continue;
    if (!(tvals[k] < tvals[k - 1] && tvals[k] < tvals[k + 1])) continue;
    // prominence: lowest barrier separating this minimum from lower ground;
    // a walk that runs off the grid leaves that side unconstrained
    double barrier_left = std::numeric_limits<double>::infinity();
    double barrier = tvals[k];
    for (size_t j = k; j-- > 0;) {
      if (tvals[j] < tvals[k]) {
        barrier_left = barrier;
        break;
      }
      barrier = std::max(barrier, tvals[j]);
    }
    double barrier_right = std::numeric_limits<double>::infinity();
    barrier = tvals[k];
    for (size_t j = k + 1; j < m; ++j) {
      if (tvals[j] < tvals[k]) {
        barrier_right = barrier;
        break;
      }
      barrier = std::max(barrier, tvals[j]);
    }
    const double prominence = std::min(barrier_left, barrier_right) - tvals[k];
    if (prominence >= 0.05 * neighborhood_median(tvals, k))
      valleys.push_back(static_cast<int>(coarse[k]));
  }
  if (valleys.size() < 3) throw TooFewValleys("need at least 3 valley minima");

  double num = 0.0, den = 0.0;
  for (int i : valleys) {
    num += scan.fits[static_cast<size_t>(i)].t_charge * scan.taus[static_cast<size_t>(i)];
    den += scan.taus[static_cast<size_t>(i)] * scan.taus[static_cast<size_t>(i)];
  }
  ValleyFit out;
  out.slope = num / den;
  double ssr = 0.0, mean_t = 0.0;
  for (int i : valleys) {
    const double r =
        scan.fits[static_cast<size_t>(i)].t_charge - out.slope * scan.taus[static_cast<size_t>(i)];
    ssr += r * r;
    mean_t += scan.fits[static_cast<size_t>(i)].t_charge;
  }
  mean_t /= static_cast<double>(valleys.size());
  out.residual = std::sqrt(ssr / static_cast<double>(valleys.size())) / mean_t;
  out.valley_indices = std::move(valleys);
  return out;
}

double tau_scaled(const ModelParams& p, double tau) {
  return 1000.0 * p.g() * tau / std::numbers::pi;
}

double default_scan_window(const ModelParams& p) {
  return 300.0 * std::numbers::pi / (2.0 * p.g());
}

std::vector<double> make_scan_grid(const ModelParams& p, double start_scaled, double stop_scaled,
                                   double step_scaled, int refine_factor) {
  if (!(step_scaled > 0.0) || !(stop_scaled >= start_scaled) || !(start_scaled > 0.0))
    throw InvalidArgument("scan grid bounds must satisfy 0 < start <= stop, step > 0");
  if (refine_factor < 1) throw InvalidArgument("refine factor must be >= 1");
  const double to_tau = std::numbers::pi / (1000.0 * p.g());

  std::vector<double> scaled;
  for (double s = start_scaled; s <= stop_scaled + 1e-9 * step_scaled; s += step_scaled)
    scaled.push_back(s);

  const int n_peaks = static_cast<int>(std::floor(stop_scaled * to_tau / predict_peaks(p, 1)[0]));
  if (n_peaks >= 1 && refine_factor > 1) {
    const double fine = step_scaled / refine_factor;
    for (double tn : predict_peaks(p, n_peaks)) {
      const double sn = tau_scaled(p, tn);
      for (double s = sn - 1.0; s <= sn + 1.0 + 1e-9 * fine; s += fine)
        if (s >= start_scaled && s <= stop_scaled) scaled.push_back(s);
    }
  }
  std::sort(scaled.begin(), scaled.end());
  std::vector<double> taus;
  for (double s : scaled) {
    const double tau = s * to_tau;
    if (taus.empty() || tau - taus.back() > 1e-9 * to_tau * step_scaled / refine_factor)
      taus.push_back(tau);
  }
  return taus;
}

ScanResult scan_tau(const ModelParams& p, const std::vector<double>& tau_grid, double window,
                    int parallel) {
  if (tau_grid.empty()) throw InvalidArgument("tau grid is empty");
  if (!(window > 0.0)) throw InvalidArgument("window must be > 0");
  for (size_t i = 1; i < tau_grid.size(); ++i)
    if (!(tau_grid[i] > tau_grid[i - 1])) throw InvalidArgument("tau grid must be ascending");

  const size_t n = tau_grid.size();
  ScanResult out;
  out.taus = tau_grid;
  out.fits.resize(n);
  std::vector<std::exception_ptr> errors(n);

  std::atomic<size_t> next{0};
  auto run_point = [&](size_t i) {
    const double tau = tau_grid[i];
    const long n_pulses = std::max<long>(1, static_cast<long>(std::floor(window / tau)));
    const long stride = std::max<long>(1, n_pulses / 6000);
    const EnergyTimeSeries series = run_stroboscopic(p, tau, n_pulses, stride);
    out.fits[i] = fit_charging_curve(series, p);
  };

  int jobs = parallel > 0 ? parallel : static_cast<int>(std::thread::hardware_concurrency());
  jobs = std::max(1, std::min<int>(jobs, static_cast<int>(n)));
  if (jobs == 1) {
    for (size_t i = 0; i < n; ++i) {
      try {
        run_point(i);
      } catch (...) {
        errors[i] = std::current_exception();
        break;
      }
    }
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(jobs));
    for (int w = 0; w < jobs; ++w)
      pool.emplace_back([&] {
        for (;;) {
          const size_t i = next.fetch_add(1);
          if (i >= n) return;
          try {
            run_point(i);
          } catch (...) {
            errors[i] = std::current_exception();
          }
        }
      });
    for (std::thread& t : pool) t.join();
  }
  for (size_t i = 0; i < n; ++i)
    if (errors[i]) std::rethrow_exception(errors[i]);

  const double tau1 = predict_peaks(p, 1)[0];
  const int n_peaks = static_cast<int>(std::floor(tau_grid.back() / tau1));
  if (n_peaks >= 1) out.predicted_peaks = predict_peaks(p, n_peaks);

  if (n >= 5) out.detected_peaks = detect_peaks(out);
  out.valley_slope = std::numeric_limits<double>::quiet_NaN();
  out.valley_residual = std::numeric_limits<double>::quiet_NaN();
  try {
    ValleyFit vf = fit_valleys(out);
    out.valley_slope = vf.slope;
    out.valley_residual = vf.residual;
    out.valley_indices = std::move(vf.valley_indices);
  } catch (const TooFewValleys&) {
  }
  return out;
}

}  // namespace zenobat
