#include "core/types.hpp"

#include <algorithm>
#include <numeric>

namespace clustrans {

DataSet::DataSet(std::vector<double> coords, int dim) : coords_(std::move(coords)), d_(dim) {
  if (d_ <= 0) throw InputError("dataset dimension must be positive");
  if (coords_.empty() || coords_.size() % d_ != 0)
    throw InputError("dataset coordinate count is not a multiple of the dimension");
  n_ = static_cast<int>(coords_.size()) / d_;
  // Exact comparison: duplicates are rejected, never perturbed.
  for (int a = 0; a < n_; ++a)
    for (int b = a + 1; b < n_; ++b)
      if (std::equal(point(a).begin(), point(a).end(), point(b).begin()))
        throw InputError("dataset contains duplicate points (items " + std::to_string(a + 1) +
                         " and " + std::to_string(b + 1) + ")");
}

bool DataSet::rank_deficient(double tol) const {
  // Gaussian elimination on a d x n working copy.
  std::vector<double> m(coords_);  // row j = point j; eliminate over columns
  int rank = 0;
  for (int col = 0; col < d_ && rank < n_; ++col) {
    int piv = -1;
    double best = tol;
    for (int row = rank; row < n_; ++row) {
      double v = std::abs(m[static_cast<std::size_t>(row) * d_ + col]);
      if (v > best) {
        best = v;
        piv = row;
      }
    }
    if (piv < 0) return true;  // this coordinate direction is not spanned
    for (int c2 = 0; c2 < d_; ++c2)
      std::swap(m[static_cast<std::size_t>(piv) * d_ + c2], m[static_cast<std::size_t>(rank) * d_ + c2]);
    double p = m[static_cast<std::size_t>(rank) * d_ + col];
    for (int row = 0; row < n_; ++row) {
      if (row == rank) continue;
      double f = m[static_cast<std::size_t>(row) * d_ + col] / p;
      if (f == 0.0) continue;
      for (int c2 = 0; c2 < d_; ++c2)
        m[static_cast<std::size_t>(row) * d_ + c2] -= f * m[static_cast<std::size_t>(rank) * d_ + c2];
    }
    ++rank;
  }
  return rank < d_;
}

int Shape::sum() const { return std::accumulate(sizes.begin(), sizes.end(), 0); }

Shape Clustering::shape() const {
  Shape s;
  s.sizes.assign(k, 0);
  for (int c : assignment) ++s.sizes[c];
  return s;
}

void Clustering::validate(int n_items) const {
  if (k <= 0) throw InputError("clustering needs at least one cluster");
  if (static_cast<int>(assignment.size()) != n_items)
    throw InputError("clustering assigns " + std::to_string(assignment.size()) + " items, dataset has " +
                     std::to_string(n_items));
  for (int c : assignment)
    if (c < 0 || c >= k) throw InputError("cluster index out of range in clustering");
}

void SizeBounds::validate(int n_items) const {
  if (lower.size() != upper.size() || lower.empty()) throw InputError("malformed size bounds");
  int lo = 0, hi = 0;
  for (int i = 0; i < k(); ++i) {
    if (lower[i] < 0 || lower[i] > upper[i] || upper[i] > n_items)
      throw InputError("size bounds must satisfy 0 <= lower <= upper <= n for cluster " +
                       std::to_string(i + 1));
    lo += lower[i];
    hi += upper[i];
  }
  if (lo > n_items || hi < n_items)
    throw InputError("size bounds admit no clustering: lower sums to " + std::to_string(lo) +
                     ", upper to " + std::to_string(hi) + ", n = " + std::to_string(n_items));
}

bool SizeBounds::contains(const Shape& s) const {
  if (s.k() != k()) return false;
  for (int i = 0; i < k(); ++i)
    if (s.sizes[i] < lower[i] || s.sizes[i] > upper[i]) return false;
  return true;
}

double dot(std::span<const double> a, std::span<const double> b) {
  double r = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) r += a[i] * b[i];
  return r;
}

double squared_norm(std::span<const double> a) { return dot(a, a); }

DataSet center_dataset(const DataSet& ds) {
  std::vector<double> mean(ds.dim(), 0.0);
  for (int j = 0; j < ds.size(); ++j)
    for (int c = 0; c < ds.dim(); ++c) mean[c] += ds.point(j)[c];
  for (double& m : mean) m /= ds.size();
  std::vector<double> shifted(ds.coords());
  for (int j = 0; j < ds.size(); ++j)
    for (int c = 0; c < ds.dim(); ++c) shifted[static_cast<std::size_t>(j) * ds.dim() + c] -= mean[c];
  return DataSet(std::move(shifted), ds.dim());
}

ObjectiveMatrix objective_from_sites(const DataSet& ds, const SiteVector& s) {
  if (s.d != ds.dim()) throw InputError("site dimension does not match dataset");
  ObjectiveMatrix obj;
  obj.k = s.k;
  obj.n = ds.size();
  obj.c.resize(static_cast<std::size_t>(s.k) * ds.size());
  for (int i = 0; i < s.k; ++i)
    for (int j = 0; j < ds.size(); ++j) obj.at(i, j) = dot(ds.point(j), s.site(i));
  return obj;
}

ClusteringVector clustering_vector(const DataSet& ds, const Clustering& c) {
  c.validate(ds.size());
  ClusteringVector w;
  w.k = c.k;
  w.d = ds.dim();
  w.w.assign(static_cast<std::size_t>(c.k) * ds.dim(), 0.0);
  for (int j = 0; j < ds.size(); ++j)
    for (int coord = 0; coord < ds.dim(); ++coord)
      w.w[static_cast<std::size_t>(c.assignment[j]) * ds.dim() + coord] += ds.point(j)[coord];
  return w;
}

double lsa_cost(const DataSet& ds, const Clustering& c, const SiteVector& s) {
  c.validate(ds.size());
  if (s.k != c.k || s.d != ds.dim()) throw InputError("site vector does not match clustering/dataset");
  double total = 0.0;
  for (int j = 0; j < ds.size(); ++j) {
    auto p = ds.point(j);
    auto site = s.site(c.assignment[j]);
    for (int coord = 0; coord < ds.dim(); ++coord) {
      double diff = p[coord] - site[coord];
      total += diff * diff;
    }
  }
  return total;
}

double clustering_objective(const ObjectiveMatrix& c, const Clustering& clustering) {
  double total = 0.0;
  for (int j = 0; j < c.n; ++j) total += c.at(clustering.assignment[j], j);
  return total;
}

SiteVector interpolate(const SiteVector& s, const SiteVector& t, double lambda) {
  if (s.k != t.k || s.d != t.d) throw InputError("site vectors of different shape cannot be interpolated");
  SiteVector r = s;
  for (std::size_t i = 0; i < r.coords.size(); ++i)
    r.coords[i] = (1.0 - lambda) * s.coords[i] + lambda * t.coords[i];
  return r;
}

SizeBounds bounds_from_endpoints(const Clustering& cs, const Clustering& ct) {
  if (cs.k != ct.k || cs.n() != ct.n())
    throw InputError("endpoint clusterings disagree on n or k");
  Shape a = cs.shape(), b = ct.shape();
  SizeBounds bounds;
  bounds.lower.resize(cs.k);
  bounds.upper.resize(cs.k);
  for (int i = 0; i < cs.k; ++i) {
    bounds.lower[i] = std::min(a.sizes[i], b.sizes[i]);
    bounds.upper[i] = std::max(a.sizes[i], b.sizes[i]);
  }
  return bounds;
}

}  // namespace clustrans
