#pragma once

// Deterministic CSV emission: fixed 12-significant-digit formatting, '\n'
// line endings, full config echoed into a '#' header block.

#include <ostream>
#include <string>

#include "zenobat/analysis.hpp"
#include "zenobat/config.hpp"

namespace zenobat::cli {

/// 12 significant digits, C locale, no trailing padding.
std::string format_sig(double v);

void write_series_csv(std::ostream& os, const RunConfig& cfg, const ModelParams& p,
                      const EnergyTimeSeries& series);

void write_scan_csv(std::ostream& os, const RunConfig& cfg, const ModelParams& p,
                    const ScanResult& scan);

void write_peaks_csv(std::ostream& os, const RunConfig& cfg, const ModelParams& p,
                     const std::vector<double>& peaks);

}  // namespace zenobat::cli
