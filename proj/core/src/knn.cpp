#include "kicktop/knn.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <stdexcept>

namespace kicktop {

PointCloud::PointCloud(std::size_t dim, std::vector<double> coords)
    : dim_(dim), coords_(std::move(coords)) {
  if (dim_ == 0) throw std::invalid_argument("PointCloud: dimension must be positive");
  if (coords_.size() % dim_ != 0) {
    throw std::invalid_argument("PointCloud: coordinate count is not a multiple of dim");
  }
}

double max_norm_distance(std::span<const double> a, std::span<const double> b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(b[i] - a[i]));
  return d;
}

namespace {

using MaxHeap = std::priority_queue<Neighbor>;

void offer(MaxHeap& heap, std::size_t k, Neighbor cand) {
  if (heap.size() < k) {
    heap.push(cand);
  } else if (cand < heap.top()) {
    heap.pop();
    heap.push(cand);
  }
}

std::vector<Neighbor> drain(MaxHeap& heap) {
  std::vector<Neighbor> out(heap.size());
  for (std::size_t i = out.size(); i-- > 0;) {
    out[i] = heap.top();
    heap.pop();
  }
  return out;
}

}  // namespace

struct KnnIndex::Tree {
  static constexpr std::size_t kLeafSize = 8;

  struct Node {
    std::size_t begin;
    std::size_t end;
    std::size_t left = 0;  // 0 marks a leaf; the root is never a child
    std::size_t right = 0;
  };

  const PointCloud& pts;
  std::vector<std::size_t> order;
  std::vector<Node> nodes;
  std::vector<double> lo;  // per-node bounding box, nodes.size() * dim
  std::vector<double> hi;

  explicit Tree(const PointCloud& p) : pts(p), order(p.size()) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    nodes.reserve(2 * p.size() / kLeafSize + 2);
    build(0, order.size());
  }

  std::size_t build(std::size_t begin, std::size_t end) {
    const std::size_t dim = pts.dim();
    const std::size_t id = nodes.size();
    nodes.push_back({begin, end});
    lo.resize(lo.size() + dim, INFINITY);
    hi.resize(hi.size() + dim, -INFINITY);
    for (std::size_t i = begin; i < end; ++i) {
      for (std::size_t d = 0; d < dim; ++d) {
        const double v = pts.coord(order[i], d);
        lo[id * dim + d] = std::min(lo[id * dim + d], v);
        hi[id * dim + d] = std::max(hi[id * dim + d], v);
      }
    }
    if (end - begin <= kLeafSize) return id;

    std::size_t axis = 0;
    double widest = -1.0;
    for (std::size_t d = 0; d < dim; ++d) {
      const double w = hi[id * dim + d] - lo[id * dim + d];
      if (w > widest) {
        widest = w;
        axis = d;
      }
    }
    const std::size_t mid = begin + (end - begin) / 2;
    std::nth_element(order.begin() + static_cast<std::ptrdiff_t>(begin),
                     order.begin() + static_cast<std::ptrdiff_t>(mid),
                     order.begin() + static_cast<std::ptrdiff_t>(end),
                     [&](std::size_t a, std::size_t b) {
                       return pts.coord(a, axis) < pts.coord(b, axis);
                     });
    const std::size_t l = build(begin, mid);
    const std::size_t r = build(mid, end);
    nodes[id].left = l;
    nodes[id].right = r;
    return id;
  }

  double box_distance(std::size_t node, std::span<const double> q) const {
    const std::size_t dim = pts.dim();
    double d = 0.0;
    for (std::size_t k = 0; k < dim; ++k) {
      const double below = lo[node * dim + k] - q[k];
      const double above = q[k] - hi[node * dim + k];
      d = std::max({d, below, above});
    }
    return d;
  }

  void search(std::size_t node, std::size_t query, std::span<const double> q, std::size_t k,
              MaxHeap& heap) const {
    if (heap.size() == k && box_distance(node, q) > heap.top().distance) return;
    const Node& n = nodes[node];
    if (n.left == 0) {
      for (std::size_t i = n.begin; i < n.end; ++i) {
        const std::size_t idx = order[i];
        if (idx == query) continue;
        offer(heap, k, {idx, max_norm_distance(q, pts.point(idx))});
      }
      return;
    }
    const bool left_first = box_distance(n.left, q) <= box_distance(n.right, q);
    search(left_first ? n.left : n.right, query, q, k, heap);
    search(left_first ? n.right : n.left, query, q, k, heap);
  }
};

KnnIndex::KnnIndex(PointCloud points) : points_(std::move(points)) {
  if (points_.size() >= kBruteForceBelow) tree_ = std::make_unique<Tree>(points_);
}

KnnIndex::~KnnIndex() = default;

KnnIndex::KnnIndex(KnnIndex&& other) noexcept
    : points_(std::move(other.points_)), tree_(std::move(other.tree_)) {
  if (tree_) tree_ = std::make_unique<Tree>(points_);
}

KnnIndex& KnnIndex::operator=(KnnIndex&& other) noexcept {
  points_ = std::move(other.points_);
  tree_ = other.tree_ ? std::make_unique<Tree>(points_) : nullptr;
  other.tree_.reset();
  return *this;
}

std::vector<Neighbor> KnnIndex::query(std::size_t query_index, std::size_t k) const {
  const std::size_t n = points_.size();
  if (query_index >= n) throw std::invalid_argument("knn: query index out of range");
  if (k == 0 || k >= n) throw std::invalid_argument("knn: need 0 < k < number of points");

  const auto q = points_.point(query_index);
  MaxHeap heap;
  if (tree_) {
    tree_->search(0, query_index, q, k, heap);
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      if (i == query_index) continue;
      offer(heap, k, {i, max_norm_distance(q, points_.point(i))});
    }
  }
  return drain(heap);
}

std::vector<Neighbor> knn_search(PointCloud points, std::size_t query_index, std::size_t k) {
  return KnnIndex(std::move(points)).query(query_index, k);
}

}  // namespace kicktop
