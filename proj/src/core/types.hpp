#pragma once

#include <span>
#include <vector>

#include "core/common.hpp"

namespace clustrans {

// n distinct points in R^d, stored row-major.
class DataSet {
 public:
  DataSet(std::vector<double> coords, int dim);

  int size() const { return n_; }
  int dim() const { return d_; }
  std::span<const double> point(int j) const {
    return {coords_.data() + static_cast<std::size_t>(j) * d_, static_cast<std::size_t>(d_)};
  }
  const std::vector<double>& coords() const { return coords_; }

  /// Rank of the point matrix is below d (all points in a proper affine
  /// subspace through the origin). Callers may warn; we never project.
  bool rank_deficient(double tol = 1e-9) const;

 private:
  std::vector<double> coords_;
  int n_ = 0;
  int d_ = 0;
};

struct Shape {
  std::vector<int> sizes;

  int k() const { return static_cast<int>(sizes.size()); }
  int sum() const;
  bool operator==(const Shape&) const = default;
};

// Total assignment of the n items to k clusters, 0-based internally.
struct Clustering {
  std::vector<int> assignment;
  int k = 0;

  int n() const { return static_cast<int>(assignment.size()); }
  Shape shape() const;
  void validate(int n_items) const;
  bool operator==(const Clustering&) const = default;
};

struct SizeBounds {
  std::vector<int> lower;
  std::vector<int> upper;

  int k() const { return static_cast<int>(lower.size()); }
  void validate(int n_items) const;
  bool contains(const Shape& s) const;
  bool operator==(const SizeBounds&) const = default;
};

// k sites in R^d, concatenated.
struct SiteVector {
  std::vector<double> coords;
  int k = 0;
  int d = 0;

  std::span<const double> site(int i) const {
    return {coords.data() + static_cast<std::size_t>(i) * d, static_cast<std::size_t>(d)};
  }
  bool operator==(const SiteVector&) const = default;
};

// c[i][j] = x_j^T s_i, row-major k x n.
struct ObjectiveMatrix {
  std::vector<double> c;
  int k = 0;
  int n = 0;

  double at(int i, int j) const { return c[static_cast<std::size_t>(i) * n + j]; }
  double& at(int i, int j) { return c[static_cast<std::size_t>(i) * n + j]; }
};

// w_i = sum of the points assigned to cluster i.
struct ClusteringVector {
  std::vector<double> w;
  int k = 0;
  int d = 0;

  std::span<const double> part(int i) const {
    return {w.data() + static_cast<std::size_t>(i) * d, static_cast<std::size_t>(d)};
  }
};

DataSet center_dataset(const DataSet& ds);
ObjectiveMatrix objective_from_sites(const DataSet& ds, const SiteVector& s);
ClusteringVector clustering_vector(const DataSet& ds, const Clustering& c);
double lsa_cost(const DataSet& ds, const Clustering& c, const SiteVector& s);
double clustering_objective(const ObjectiveMatrix& c, const Clustering& clustering);

double dot(std::span<const double> a, std::span<const double> b);
double squared_norm(std::span<const double> a);

SiteVector interpolate(const SiteVector& s, const SiteVector& t, double lambda);
SizeBounds bounds_from_endpoints(const Clustering& cs, const Clustering& ct);

}  // namespace clustrans
