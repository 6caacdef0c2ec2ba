#include "kicktop/mutual_info.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "kicktop/knn.hpp"
#include "kicktop/rng.hpp"
#include "kicktop/special.hpp"

namespace kicktop {

namespace {

double spread(std::span<const double> v) {
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  const double r = *hi - *lo;
  return r > 0.0 ? r : std::max(1.0, std::abs(*lo));
}

// Rescales v to unit standard deviation. The moments are summed over the
// sorted values so the result does not depend on sample order.
std::vector<double> unit_variance(std::span<const double> v) {
  std::vector<double> sorted(v.begin(), v.end());
  std::sort(sorted.begin(), sorted.end());
  double mean = 0.0;
  for (double x : sorted) mean += x;
  mean /= static_cast<double>(sorted.size());
  double ss = 0.0;
  for (double x : sorted) ss += (x - mean) * (x - mean);
  const double sd = std::sqrt(ss / static_cast<double>(sorted.size()));
  std::vector<double> out(v.begin(), v.end());
  if (sd > 0.0 && std::isfinite(sd)) {
    for (double& x : out) x /= sd;
  }
  return out;
}

// Number of entries of `sorted` strictly closer than eps to `centre`,
// excluding one copy of the centre itself. The predicates mirror
// |v - centre| < eps exactly, so the count matches a linear scan.
std::size_t count_within(const std::vector<double>& sorted, double centre, double eps) {
  const auto left = std::partition_point(sorted.begin(), sorted.end(),
                                         [&](double v) { return centre - v >= eps; });
  const auto right = std::partition_point(left, sorted.end(),
                                          [&](double v) { return v - centre < eps; });
  const auto inside = right - left;
  return inside > 0 ? static_cast<std::size_t>(inside - 1) : 0;
}

}  // namespace

double pair_jitter(double a, double b, std::uint64_t seed, int coordinate, double range) {
  std::uint64_t h = mix64(std::bit_cast<std::uint64_t>(a) ^ mix64(seed));
  h = mix64(h ^ std::bit_cast<std::uint64_t>(b));
  h = mix64(h + static_cast<std::uint64_t>(coordinate));
  const double u = static_cast<double>(h >> 11) * 0x1.0p-53;
  return (2.0 * u - 1.0) * kJitterScale * range;
}

MIEstimate ksg_mi(std::span<const double> a, std::span<const double> b, std::size_t k,
                  std::uint64_t jitter_seed) {
  if (k == 0) throw std::invalid_argument("ksg_mi: k must be at least 1");
  if (a.size() != b.size()) throw std::invalid_argument("ksg_mi: sample lengths differ");
  const std::size_t n = a.size();
  if (n < k + 2) throw std::invalid_argument("ksg_mi: need at least k + 2 samples");
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(a[i]) || !std::isfinite(b[i])) {
      throw std::invalid_argument("ksg_mi: non-finite sample");
    }
  }

  // The max-norm neighbourhood is only meaningful when both marginals live on
  // comparable scales; a subsystem a hundred times narrower would otherwise
  // never set the joint distance.
  const std::vector<double> sa = unit_variance(a);
  const std::vector<double> sb = unit_variance(b);
  const double range_a = spread(sa);
  const double range_b = spread(sb);
  std::vector<double> joint(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    joint[2 * i] = sa[i] + pair_jitter(a[i], b[i], jitter_seed, 0, range_a);
    joint[2 * i + 1] = sb[i] + pair_jitter(a[i], b[i], jitter_seed, 1, range_b);
  }

  std::vector<double> sorted_a(n), sorted_b(n);
  for (std::size_t i = 0; i < n; ++i) {
    sorted_a[i] = joint[2 * i];
    sorted_b[i] = joint[2 * i + 1];
  }
  std::sort(sorted_a.begin(), sorted_a.end());
  std::sort(sorted_b.begin(), sorted_b.end());

  const KnnIndex index(PointCloud(2, joint));
  const auto& pts = index.points();

  // Histogram of marginal counts; summing per count value keeps the result
  // independent of sample order down to the last bit.
  std::vector<std::size_t> hist(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const double eps = index.query(i, k).back().distance;
    ++hist[count_within(sorted_a, pts.coord(i, 0), eps)];
    ++hist[count_within(sorted_b, pts.coord(i, 1), eps)];
  }
  double acc = 0.0;
  for (std::size_t m = 0; m < n; ++m) {
    if (hist[m] != 0) acc += static_cast<double>(hist[m]) * digamma(static_cast<double>(m + 1));
  }

  MIEstimate est;
  est.k = k;
  est.n = n;
  est.value = digamma(static_cast<double>(k)) + digamma(static_cast<double>(n)) -
              acc / static_cast<double>(n);
  return est;
}

}  // namespace kicktop
