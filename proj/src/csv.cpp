#include "zenobat/csv.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

namespace zenobat::cli {

std::string format_sig(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

namespace {

void write_header(std::ostream& os, const RunConfig& cfg) {
  for (const auto& [k, v] : echo_config(cfg)) os << "# " << k << "=" << v << "\n";
}

}  // namespace

void write_series_csv(std::ostream& os, const RunConfig& cfg, const ModelParams& p,
                      const EnergyTimeSeries& series) {
  write_header(os, cfg);
  os << "t,gt_over_pi,E_c,E_b,phase_index\n";
  for (size_t i = 0; i < series.size(); ++i) {
    os << format_sig(series.times[i]) << ","
       << format_sig(p.g() * series.times[i] / std::numbers::pi) << ","
       << format_sig(series.ec[i]) << "," << format_sig(series.eb[i]) << ","
       << series.phase_index[i] << "\n";
  }
}

void write_scan_csv(std::ostream& os, const RunConfig& cfg, const ModelParams& p,
                    const ScanResult& scan) {
  write_header(os, cfg);
  os << "tau,tau_scaled,A,T,residual,resolved,is_detected_peak,nearest_predicted_peak\n";
  for (size_t i = 0; i < scan.taus.size(); ++i) {
    const bool detected = std::find(scan.detected_peaks.begin(), scan.detected_peaks.end(),
                                    static_cast<int>(i)) != scan.detected_peaks.end();
    double nearest = std::numeric_limits<double>::quiet_NaN();
    for (double tn : scan.predicted_peaks)
      if (std::isnan(nearest) || std::abs(tn - scan.taus[i]) < std::abs(nearest - scan.taus[i]))
        nearest = tn;
    os << format_sig(scan.taus[i]) << "," << format_sig(tau_scaled(p, scan.taus[i])) << ","
       << format_sig(scan.fits[i].a) << "," << format_sig(scan.fits[i].t_charge) << ","
       << format_sig(scan.fits[i].residual) << "," << (scan.fits[i].resolved ? 1 : 0) << ","
       << (detected ? 1 : 0) << "," << format_sig(nearest) << "\n";
  }
}

void write_peaks_csv(std::ostream& os, const RunConfig& cfg, const ModelParams& p,
                     const std::vector<double>& peaks) {
  write_header(os, cfg);
  os << "n,tau,tau_scaled\n";
  for (size_t i = 0; i < peaks.size(); ++i) {
    os << (i + 1) << "," << format_sig(peaks[i]) << "," << format_sig(tau_scaled(p, peaks[i]))
       << "\n";
  }
}

}  // namespace zenobat::cli
