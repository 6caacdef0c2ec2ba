#include "kicktop/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "kicktop/error.hpp"

namespace kicktop {

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw std::invalid_argument("fit_line: need at least two paired points");
  }
  const auto n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (!(sxx > 0.0)) throw std::invalid_argument("fit_line: abscissae are all equal");
  LineFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  f.r_squared = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
  return f;
}

LineFit fit_series_window(std::span<const double> series, std::size_t first, std::size_t last) {
  if (last >= series.size() || first >= last) {
    throw std::invalid_argument("fit_series_window: bad window");
  }
  std::vector<double> t;
  for (std::size_t i = first; i <= last; ++i) t.push_back(static_cast<double>(i));
  return fit_line(t, series.subspan(first, last - first + 1));
}

double window_mean(std::span<const double> series, std::size_t first, std::size_t last) {
  if (last >= series.size() || first > last) throw std::invalid_argument("window_mean: bad window");
  double s = 0.0;
  for (std::size_t i = first; i <= last; ++i) s += series[i];
  return s / static_cast<double>(last - first + 1);
}

TeqResult estimate_teq(std::span<const double> series) {
  if (series.empty()) throw AnalysisError("estimate_teq: empty series");
  const std::size_t n = series.size();
  const std::size_t tail =
      std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(kTailFraction * n)));
  TeqResult r;
  r.tail_mean = window_mean(series, n - tail, n - 1);
  r.threshold = kTeqLevel * r.tail_mean;
  const auto it = std::find_if(series.begin(), series.end(),
                               [&](double v) { return v >= r.threshold; });
  if (it == series.end()) {
    throw AnalysisError("series never reaches 90% of its tail mean (not equilibrated)");
  }
  r.teq = static_cast<std::size_t>(it - series.begin());
  return r;
}

GrowthFit fit_growth_rate(std::span<const double> series, double equilibrium_value,
                          ShortWindow short_window) {
  const double lo = kGrowthLow * equilibrium_value;
  const double hi = kGrowthHigh * equilibrium_value;
  const auto top_it = std::find_if(series.begin(), series.end(), [&](double v) { return v >= hi; });
  if (top_it == series.end()) {
    throw AnalysisError("series never reaches 80% of the equilibrium value");
  }
  const auto top = static_cast<std::size_t>(top_it - series.begin());

  // Last step below 20% before the crossing; -1 (as top + 1 wrap) if none.
  std::ptrdiff_t below = -1;
  for (std::size_t t = 0; t < top; ++t) {
    if (series[t] < lo) below = static_cast<std::ptrdiff_t>(t);
  }

  GrowthFit g;
  const auto first = static_cast<std::size_t>(below + 1);
  if (top >= first + kGrowthMinPoints) {
    g.first_step = first;
    g.last_step = top - 1;
  } else if (short_window == ShortWindow::kReject) {
    throw AnalysisError("growth window too short: " + std::to_string(top - first) +
                        " steps between 20% and 80%");
  } else {
    g.first_step = below >= 0 ? static_cast<std::size_t>(below) : 0;
    g.last_step = top;
    g.widened = true;
    if (g.last_step + 1 < g.first_step + kGrowthMinWidenedPoints) {
      throw AnalysisError("growth window too short: " +
                          std::to_string(g.last_step - g.first_step + 1) + " steps");
    }
  }
  const LineFit f = fit_series_window(series, g.first_step, g.last_step);
  g.slope = f.slope;
  g.intercept = f.intercept;
  return g;
}

}  // namespace kicktop
