#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "zenobat/analysis.hpp"

using namespace zenobat;

namespace {

constexpr double kPi = std::numbers::pi;

ModelParams base_params() { return ModelParams(1.0, 0.01); }

EnergyTimeSeries synthetic_cosine(double a, double t_charge, double offset, double t_max,
                                  size_t n) {
  EnergyTimeSeries s;
  for (size_t i = 0; i < n; ++i) {
    const double t = t_max * static_cast<double>(i) / static_cast<double>(n - 1);
    const double ec = 0.5 * a * (std::cos(kPi * t / t_charge) - 1.0) + offset;
    s.times.push_back(t);
    s.ec.push_back(ec);
    s.eb.push_back(offset - ec);
    s.phase_index.push_back(0);
  }
  return s;
}

/// Compact spikes on top of an exactly linear baseline, so every valley
/// minimum lies exactly on T = slope * tau.
ScanResult synthetic_sawtooth(double slope, double spike_every, size_t n) {
  ScanResult scan;
  for (size_t i = 0; i < n; ++i) {
    const double tau = 0.5 + 0.1 * static_cast<double>(i);
    scan.taus.push_back(tau);
    FitResult f;
    f.a = 1.0;
    const double phase = std::fmod(tau, spike_every);
    const bool in_spike = phase < 0.25 || phase > spike_every - 0.05;
    f.t_charge = slope * tau * (in_spike ? 5.0 : 1.0);
    f.residual = 0.0;
    f.resolved = true;
    scan.fits.push_back(f);
  }
  return scan;
}

}  // namespace

TEST_CASE("fit recovers an exact cosine") {
  const ModelParams p = base_params();
  const double a_true = 1.234, t_true = 157.0;
  const EnergyTimeSeries s = synthetic_cosine(a_true, t_true, p.lambda3(), 2.0 * t_true, 400);
  const FitResult f = fit_charging_curve(s, p);
  CHECK(f.resolved);
  CHECK(std::abs(f.a - a_true) < 1e-9);
  CHECK(std::abs(f.t_charge - t_true) < 1e-9);
  CHECK(f.residual < 1e-9);
}

TEST_CASE("fit idempotence") {
  const ModelParams p = base_params();
  const EnergyTimeSeries s = synthetic_cosine(0.9, 200.0, p.lambda3(), 410.0, 500);
  const FitResult f1 = fit_charging_curve(s, p);
  const EnergyTimeSeries s2 =
      synthetic_cosine(f1.a, f1.t_charge, p.lambda3(), 410.0, 500);
  const FitResult f2 = fit_charging_curve(s2, p);
  CHECK(std::abs(f2.a - f1.a) < 1e-9);
  CHECK(std::abs(f2.t_charge - f1.t_charge) < 1e-9);
}

TEST_CASE("fit rejects short series and censors unresolved windows") {
  const ModelParams p = base_params();
  EnergyTimeSeries tiny = synthetic_cosine(1.0, 100.0, p.lambda3(), 10.0, 20);
  CHECK_THROWS_AS(fit_charging_curve(tiny, p), TooFewSamples);

  // window ends before the first maximum: censored, not an error
  const EnergyTimeSeries rising = synthetic_cosine(1.0, 400.0, p.lambda3(), 200.0, 300);
  const FitResult f = fit_charging_curve(rising, p);
  CHECK_FALSE(f.resolved);
  CHECK(f.t_charge == doctest::Approx(200.0));      // window end
  CHECK(f.a == doctest::Approx(rising.eb.back()));  // window maximum of E^b
}

TEST_CASE("fit reproduces the dense-pulsing charging curve") {
  const ModelParams p = base_params();
  const double tau = kPi / (1000.0 * p.g());
  const EnergyTimeSeries s = run_stroboscopic(p, tau, 1000, 1);
  const FitResult f = fit_charging_curve(s, p);
  const double cap = std::sqrt(2.0);
  const double t_fast = kPi / (2.0 * p.g());
  CHECK(f.resolved);
  CHECK(std::abs(f.a - cap) < 0.02 * cap);
  CHECK(std::abs(f.t_charge - t_fast) < 0.02 * t_fast);
  CHECK(f.residual < 0.02);
}

TEST_CASE("dense-pulsing limit of the fitted parameters") {
  const ModelParams p = base_params();
  const double t_fast = kPi / (2.0 * p.g());
  const double cap = 2.0 * p.omega1();
  // T(tau) approaches pi/(2g) from above, quadratically in tau: measured
  // deviations are 3.4% at k=500, 0.8% at k=1000, 0.2% at k=2000.
  double prev_dev = 1e9;
  for (double k : {500.0, 1000.0, 2000.0}) {
    const double tau = kPi / (k * p.g());
    const long n = static_cast<long>(std::floor(2.2 * t_fast / tau));
    const EnergyTimeSeries s = run_stroboscopic(p, tau, n, std::max<long>(1, n / 4000));
    const FitResult f = fit_charging_curve(s, p);
    CHECK(f.resolved);
    const double dev = std::abs(f.t_charge - t_fast) / t_fast;
    CHECK(dev < prev_dev);
    prev_dev = dev;
    if (k >= 1000.0) CHECK(dev < 0.02);
    CHECK(std::abs(f.a - cap) < 0.02 * cap);
    CHECK(f.a < cap * 1.02);  // capacity bound
  }
  CHECK(prev_dev < 0.005);
}

TEST_CASE("predicted peak positions") {
  const ModelParams p = base_params();
  const std::vector<double> peaks = predict_peaks(p, 3);
  REQUIRE(peaks.size() == 3);
  // tau_n = 2 pi n / lambda4 = sqrt(2) pi n at base parameters
  for (int n = 1; n <= 3; ++n)
    CHECK(peaks[static_cast<size_t>(n - 1)] ==
          doctest::Approx(std::sqrt(2.0) * kPi * n).epsilon(1e-12));
  CHECK(tau_scaled(p, peaks[0]) == doctest::Approx(10.0 * std::sqrt(2.0)).epsilon(1e-12));

  // quoted positions are rounded to two decimals; exact values are
  // 10 sqrt(1.49)/1.22... = 12.2066 and 10/sqrt(2) = 7.0711
  const ModelParams s3(1.0, 0.01, 0.7);
  CHECK(tau_scaled(s3, predict_peaks(s3, 1)[0]) == doctest::Approx(12.21).epsilon(1e-3));
  const ModelParams s4(1.0, 0.01, 1.0, 2.0);
  CHECK(tau_scaled(s4, predict_peaks(s4, 1)[0]) == doctest::Approx(7.07).epsilon(1e-3));

  CHECK_THROWS_AS(predict_peaks(p, 0), InvalidArgument);
  CHECK(predict_peaks(p, 1).size() == 1);
}

TEST_CASE("peak positions depend only on lambda4") {
  // hold mu / sqrt(1 + gamma^2) fixed while changing gamma and mu
  const ModelParams a(1.0, 0.01, 1.0, 1.0);
  const double scale = a.mu() / std::sqrt(1.0 + a.gamma() * a.gamma());
  const double gamma_b = 2.0;
  const ModelParams b(1.0, 0.01, gamma_b, scale * std::sqrt(1.0 + gamma_b * gamma_b));
  const auto pa = predict_peaks(a, 4);
  const auto pb = predict_peaks(b, 4);
  for (size_t i = 0; i < pa.size(); ++i) CHECK(pa[i] == doctest::Approx(pb[i]).epsilon(1e-12));
}

TEST_CASE("peak detection") {
  SUBCASE("flat scan detects nothing") {
    ScanResult scan;
    for (int i = 0; i < 30; ++i) {
      scan.taus.push_back(1.0 + i);
      FitResult f;
      f.a = 1.0;
      f.t_charge = 100.0;
      f.resolved = true;
      scan.fits.push_back(f);
    }
    CHECK(detect_peaks(scan).empty());
  }
  SUBCASE("an isolated spike is detected") {
    ScanResult scan;
    for (int i = 0; i < 30; ++i) {
      scan.taus.push_back(1.0 + i);
      FitResult f;
      f.a = 1.0;
      f.t_charge = (i == 14) ? 1000.0 : 100.0;
      f.resolved = true;
      scan.fits.push_back(f);
    }
    const auto hits = detect_peaks(scan);
    REQUIRE(hits.size() == 1);
    CHECK(hits[0] == 14);
  }
  SUBCASE("a censored point between resolved neighbors is detected") {
    ScanResult scan;
    for (int i = 0; i < 10; ++i) {
      scan.taus.push_back(1.0 + i);
      FitResult f;
      f.a = 1.0;
      f.t_charge = 100.0;
      f.resolved = (i != 4);
      scan.fits.push_back(f);
    }
    const auto hits = detect_peaks(scan);
    REQUIRE(hits.size() == 1);
    CHECK(hits[0] == 4);
  }
  SUBCASE("too few points") {
    ScanResult scan;
    scan.taus = {1.0, 2.0};
    scan.fits.resize(2);
    CHECK_THROWS_AS(detect_peaks(scan), TooFewPoints);
  }
}

TEST_CASE("valley regression") {
  SUBCASE("exact linear valleys recover the slope") {
    const ScanResult scan = synthetic_sawtooth(110.0, 3.0, 130);
    const ValleyFit vf = fit_valleys(scan);
    CHECK(vf.valley_indices.size() >= 3);
    CHECK(vf.slope == doctest::Approx(110.0).epsilon(1e-9));
    CHECK(vf.residual < 1e-9);
    CHECK(vf.slope > 0.0);
  }
  SUBCASE("too few valleys") {
    ScanResult scan;
    for (int i = 0; i < 10; ++i) {
      scan.taus.push_back(1.0 + i);
      FitResult f;
      f.a = 1.0;
      f.t_charge = 10.0 * (1.0 + i);  // strictly increasing, no minima
      f.resolved = true;
      scan.fits.push_back(f);
    }
    CHECK_THROWS_AS(fit_valleys(scan), TooFewValleys);
  }
}

TEST_CASE("scan over a small grid") {
  const ModelParams p = base_params();
  SUBCASE("single point reproduces the dense-pulsing fit") {
    const double tau = kPi / (1000.0 * p.g());
    const ScanResult scan = scan_tau(p, {tau}, default_scan_window(p), 1);
    REQUIRE(scan.fits.size() == 1);
    const double cap = std::sqrt(2.0);
    const double t_fast = kPi / (2.0 * p.g());
    CHECK(scan.fits[0].resolved);
    CHECK(std::abs(scan.fits[0].a - cap) < 0.02 * cap);
    CHECK(std::abs(scan.fits[0].t_charge - t_fast) < 0.02 * t_fast);
  }
  SUBCASE("deterministic across parallel degrees") {
    std::vector<double> grid;
    for (int i = 0; i < 8; ++i) grid.push_back((1.0 + i) * kPi / (1000.0 * p.g()));
    const ScanResult s1 = scan_tau(p, grid, default_scan_window(p), 1);
    const ScanResult s2 = scan_tau(p, grid, default_scan_window(p), 2);
    REQUIRE(s1.fits.size() == s2.fits.size());
    for (size_t i = 0; i < s1.fits.size(); ++i) {
      CHECK(s1.fits[i].a == s2.fits[i].a);
      CHECK(s1.fits[i].t_charge == s2.fits[i].t_charge);
      CHECK(s1.fits[i].resolved == s2.fits[i].resolved);
    }
  }
  SUBCASE("input validation") {
    CHECK_THROWS_AS(scan_tau(p, {}, 100.0, 1), InvalidArgument);
    CHECK_THROWS_AS(scan_tau(p, {2.0, 1.0}, 100.0, 1), InvalidArgument);
    CHECK_THROWS_AS(scan_tau(p, {1.0}, -5.0, 1), InvalidArgument);
  }
}

TEST_CASE("scan grid construction") {
  const ModelParams p = base_params();
  const std::vector<double> grid = make_scan_grid(p, 0.5, 50.0, 0.25, 5);
  // strictly increasing
  for (size_t i = 1; i < grid.size(); ++i) CHECK(grid[i] > grid[i - 1]);
  // denser near the first predicted peak than far from it
  const double tau1 = predict_peaks(p, 1)[0];
  int near = 0, far = 0;
  for (double t : grid) {
    if (std::abs(tau_scaled(p, t) - tau_scaled(p, tau1)) < 1.0) ++near;
    if (std::abs(tau_scaled(p, t) - 21.0) < 1.0) ++far;
  }
  CHECK(near > 3 * far);
  CHECK(grid.front() == doctest::Approx(0.5 * kPi / (1000.0 * p.g())));
}
