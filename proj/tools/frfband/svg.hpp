#pragma once

#include <string>
#include <vector>

#include "frfbands/types.hpp"

namespace frfband_io {

/// Time-domain band figure: shaded band, mean line, optional overlaid PIRs.
std::string band_svg(const frfbands::BandEstimate& band,
                     const std::vector<std::vector<double>>& overlays);

/// Cumulative histogram of the bootstrap statistics with the selected
/// constant marked at the alpha level.
std::string histogram_svg(const std::vector<double>& sorted_values, double alpha,
                          double constant);

/// Plot-ready CSV: time, avg, lower, upper per row.
std::string band_csv(const frfbands::BandEstimate& band);

/// Plot-ready CSV: value, cumulative_fraction per row.
std::string histogram_csv(const std::vector<double>& sorted_values);

} // namespace frfband_io
