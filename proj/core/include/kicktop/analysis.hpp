#pragma once

// Time-series reductions shared by the experiment runners: equilibration
// time, growth-rate fits and plain least-squares lines.

#include <cstddef>
#include <span>

namespace kicktop {

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

/// Ordinary least squares y = slope * x + intercept. Throws
/// std::invalid_argument for fewer than 2 points or constant x.
LineFit fit_line(std::span<const double> x, std::span<const double> y);

/// Least-squares fit of series[t] against t over first..last inclusive.
LineFit fit_series_window(std::span<const double> series, std::size_t first, std::size_t last);

/// Mean of series[first..last] inclusive.
double window_mean(std::span<const double> series, std::size_t first, std::size_t last);

struct TeqResult {
  std::size_t teq = 0;      ///< first step reaching the threshold
  double tail_mean = 0.0;   ///< mean over the last 20% of the series
  double threshold = 0.0;   ///< 0.9 * tail_mean
};

inline constexpr double kTailFraction = 0.2;
inline constexpr double kTeqLevel = 0.9;

/// Throws AnalysisError if the series is empty or never reaches 90% of its
/// tail mean.
TeqResult estimate_teq(std::span<const double> series);

struct GrowthFit {
  double slope = 0.0;
  double intercept = 0.0;
  std::size_t first_step = 0;
  std::size_t last_step = 0;
  bool widened = false;  ///< bracketing samples were added to the window
};

inline constexpr double kGrowthLow = 0.2;
inline constexpr double kGrowthHigh = 0.8;
inline constexpr std::size_t kGrowthMinPoints = 4;
inline constexpr std::size_t kGrowthMinWidenedPoints = 3;

/// What to do when fewer than 4 steps fall inside the 20%-80% band.
enum class ShortWindow {
  kReject,  ///< throw AnalysisError
  kWiden,   ///< add the two bracketing steps and require at least 3
};

/// Slope of the rise from 20% to 80% of `equilibrium_value`. The window runs
/// from just after the last step below 20% to just before the first step at
/// or above 80%. Fast chaotic rises can cross the band in one or two steps;
/// `short_window` decides whether that is an error or the bracketing steps
/// are pulled in. Throws AnalysisError if the series never reaches 80% or
/// the window is too short.
GrowthFit fit_growth_rate(std::span<const double> series, double equilibrium_value,
                          ShortWindow short_window = ShortWindow::kReject);

}  // namespace kicktop
