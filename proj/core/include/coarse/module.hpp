#pragma once

#include <memory>
#include <utility>
#include <vector>

#include "coarse/cmatrix.hpp"
#include "coarse/metric_space.hpp"
#include "coarse/relation.hpp"

namespace coarse {

/// Discrete geometric module: the Hilbert space sum over x of C^{m_x}, laid
/// out point by point in index order.
class GeometricModule {
 public:
  GeometricModule(SpacePtr space, std::vector<int> multiplicity);
  static GeometricModule uniform(SpacePtr space, int rank);

  const ExtMetricSpace& space() const noexcept { return *space_; }
  const SpacePtr& space_ptr() const noexcept { return space_; }
  const std::vector<int>& multiplicity() const noexcept { return mult_; }
  int multiplicity(int x) const { return mult_[x]; }
  std::size_t dim() const noexcept { return offsets_.back(); }
  std::size_t offset(int x) const { return offsets_[x]; }
  std::size_t point_count() const noexcept { return mult_.size(); }

  /// Global coordinates of the fibres over a point set.
  std::vector<std::size_t> coords(std::span<const int> points) const;
  /// Point owning a global coordinate.
  int point_of(std::size_t coord) const;

  bool faithful() const;
  bool is_ample(int kappa) const;

  bool operator==(const GeometricModule& other) const {
    return same_space(space_, other.space_) && mult_ == other.mult_;
  }

 private:
  SpacePtr space_;
  std::vector<int> mult_;
  std::vector<std::size_t> offsets_;
};

using ModulePtr = std::shared_ptr<const GeometricModule>;

inline ModulePtr share(GeometricModule m) {
  return std::make_shared<const GeometricModule>(std::move(m));
}

inline bool same_module(const ModulePtr& a, const ModulePtr& b) {
  return a == b || (a && b && *a == *b);
}

/// Bounded operator between two modules, carried as a dense matrix.
class ModuleOperator {
 public:
  ModuleOperator(CMatrix matrix, ModulePtr source, ModulePtr target);

  const CMatrix& matrix() const noexcept { return matrix_; }
  const ModulePtr& source() const noexcept { return source_; }
  const ModulePtr& target() const noexcept { return target_; }

  /// T_{yx}: the m_y x m_x block.
  CMatrix block(int y, int x) const;
  double block_norm(int y, int x) const;
  /// χ_B T χ_A compressed to the rows over B and columns over A.
  CMatrix cut(std::span<const int> target_points,
              std::span<const int> source_points) const;

  ModuleOperator adjoint() const;
  double norm(double tol = 1e-12) const;

  friend ModuleOperator operator*(const ModuleOperator& a, const ModuleOperator& b);
  friend ModuleOperator operator+(const ModuleOperator& a, const ModuleOperator& b);
  friend ModuleOperator operator-(const ModuleOperator& a, const ModuleOperator& b);

 private:
  CMatrix matrix_;
  ModulePtr source_;
  ModulePtr target_;
};

/// Diagonal projection onto the fibres over A.
ModuleOperator chi(std::span<const int> points, const ModulePtr& module);

/// 1e-10 * ||T||, the default cut-off separating true zeros from noise.
double default_support_tol(const ModuleOperator& t);

/// {(y, x) : ||T_{yx}|| > tol}.
Relation support_relation(const ModuleOperator& t, double tol);

/// Largest d(y, x) over the support; needs source and target over one space.
Radius propagation(const ModuleOperator& t, double tol);

/// Block split T = T_le + T_gt at distance r.
std::pair<ModuleOperator, ModuleOperator> far_truncation(const ModuleOperator& t,
                                                         Radius r);

/// e_{w,v}: h -> <v, h> w, from the module of v to the module of w.
ModuleOperator matrix_unit(std::span<const Complex> v, const ModulePtr& source,
                           std::span<const Complex> w, const ModulePtr& target);

/// Ad(T)(t) = T t T^*.
ModuleOperator ad_map(const ModuleOperator& big_t, const ModuleOperator& t);

}  // namespace coarse
