#pragma once

// Exact k-nearest-neighbour search under the max (Chebyshev) norm.

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace kicktop {

/// Points of a fixed dimension stored contiguously.
class PointCloud {
 public:
  PointCloud(std::size_t dim, std::vector<double> coords);

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return coords_.size() / dim_; }
  std::span<const double> point(std::size_t i) const { return {coords_.data() + i * dim_, dim_}; }
  double coord(std::size_t i, std::size_t d) const { return coords_[i * dim_ + d]; }

 private:
  std::size_t dim_;
  std::vector<double> coords_;
};

struct Neighbor {
  std::size_t index;
  double distance;

  friend bool operator<(const Neighbor& a, const Neighbor& b) {
    return a.distance < b.distance || (a.distance == b.distance && a.index < b.index);
  }
  friend bool operator==(const Neighbor&, const Neighbor&) = default;
};

double max_norm_distance(std::span<const double> a, std::span<const double> b);

/// Read-only search index. Below kBruteForceBelow points queries scan all
/// points; otherwise a k-d tree with bounding-box pruning is used. Both paths
/// return the same neighbours: sorted by distance, ties by index, excluding
/// the query point itself. Safe to query concurrently.
class KnnIndex {
 public:
  static constexpr std::size_t kBruteForceBelow = 200;

  explicit KnnIndex(PointCloud points);
  ~KnnIndex();
  KnnIndex(KnnIndex&&) noexcept;
  KnnIndex& operator=(KnnIndex&&) noexcept;

  /// Throws std::invalid_argument unless k < size() and query < size().
  std::vector<Neighbor> query(std::size_t query_index, std::size_t k) const;

  bool uses_tree() const { return tree_ != nullptr; }
  const PointCloud& points() const { return points_; }

 private:
  struct Tree;
  PointCloud points_;
  std::unique_ptr<Tree> tree_;
};

/// One-shot convenience wrapper around KnnIndex.
std::vector<Neighbor> knn_search(PointCloud points, std::size_t query_index, std::size_t k);

}  // namespace kicktop
