#include "coarse/module.hpp"

#include <algorithm>

#include "coarse/error.hpp"
#include "coarse/linalg.hpp"

namespace coarse {

GeometricModule::GeometricModule(SpacePtr space, std::vector<int> multiplicity)
    : space_(std::move(space)), mult_(std::move(multiplicity)) {
  if (!space_) throw Error("invalid_module", "module without a space");
  if (mult_.size() != space_->size())
    throw Error("invalid_module", "multiplicity length differs from point count");
  offsets_.assign(mult_.size() + 1, 0);
  for (std::size_t x = 0; x < mult_.size(); ++x) {
    if (mult_[x] < 0) throw Error("invalid_module", "negative multiplicity");
    offsets_[x + 1] = offsets_[x] + static_cast<std::size_t>(mult_[x]);
  }
}

GeometricModule GeometricModule::uniform(SpacePtr space, int rank) {
  const std::size_t n = space->size();
  return GeometricModule(std::move(space), std::vector<int>(n, rank));
}

std::vector<std::size_t> GeometricModule::coords(std::span<const int> points) const {
  std::vector<std::size_t> out;
  for (int x : points)
    for (std::size_t c = offsets_[x]; c < offsets_[x + 1]; ++c) out.push_back(c);
  return out;
}

int GeometricModule::point_of(std::size_t coord) const {
  const auto it = std::upper_bound(offsets_.begin(), offsets_.end(), coord);
  return static_cast<int>(it - offsets_.begin()) - 1;
}

bool GeometricModule::faithful() const { return is_ample(1); }

bool GeometricModule::is_ample(int kappa) const {
  return std::all_of(mult_.begin(), mult_.end(), [&](int m) { return m >= kappa; });
}

ModuleOperator::ModuleOperator(CMatrix matrix, ModulePtr source, ModulePtr target)
    : matrix_(std::move(matrix)), source_(std::move(source)), target_(std::move(target)) {
  if (!source_ || !target_) throw Error("invalid_operator", "operator without modules");
  if (matrix_.rows() != target_->dim() || matrix_.cols() != source_->dim())
    throw Error("dimension_mismatch", "matrix shape differs from module dimensions");
}

CMatrix ModuleOperator::block(int y, int x) const {
  const int ys[] = {y};
  const int xs[] = {x};
  return cut(ys, xs);
}

double ModuleOperator::block_norm(int y, int x) const {
  const CMatrix b = block(y, x);
  if (b.empty()) return 0.0;
  if (b.rows() == 1 || b.cols() == 1) return b.frobenius_norm();
  return op_norm(b).value;
}

CMatrix ModuleOperator::cut(std::span<const int> target_points,
                            std::span<const int> source_points) const {
  const auto rows = target_->coords(target_points);
  const auto cols = source_->coords(source_points);
  return matrix_.select(rows, cols);
}

ModuleOperator ModuleOperator::adjoint() const {
  return ModuleOperator(matrix_.adjoint(), target_, source_);
}

double ModuleOperator::norm(double tol) const { return op_norm(matrix_, tol).value; }

ModuleOperator operator*(const ModuleOperator& a, const ModuleOperator& b) {
  if (!same_module(a.source_, b.target_))
    throw Error("dimension_mismatch", "operator product across different modules");
  return ModuleOperator(a.matrix_ * b.matrix_, b.source_, a.target_);
}

ModuleOperator operator+(const ModuleOperator& a, const ModuleOperator& b) {
  if (!same_module(a.source_, b.source_) || !same_module(a.target_, b.target_))
    throw Error("dimension_mismatch", "operator sum across different modules");
  return ModuleOperator(a.matrix_ + b.matrix_, a.source_, a.target_);
}

ModuleOperator operator-(const ModuleOperator& a, const ModuleOperator& b) {
  if (!same_module(a.source_, b.source_) || !same_module(a.target_, b.target_))
    throw Error("dimension_mismatch", "operator difference across different modules");
  return ModuleOperator(a.matrix_ - b.matrix_, a.source_, a.target_);
}

ModuleOperator chi(std::span<const int> points, const ModulePtr& module) {
  CMatrix p(module->dim(), module->dim());
  for (std::size_t c : module->coords(points)) p(c, c) = 1.0;
  return ModuleOperator(std::move(p), module, module);
}

double default_support_tol(const ModuleOperator& t) { return 1e-10 * t.norm(); }

Relation support_relation(const ModuleOperator& t, double tol) {
  Relation out(t.source()->space_ptr(), t.target()->space_ptr());
  const int ny = static_cast<int>(t.target()->point_count());
  const int nx = static_cast<int>(t.source()->point_count());
  for (int y = 0; y < ny; ++y)
    for (int x = 0; x < nx; ++x)
      if (t.block_norm(y, x) > tol) out.insert(y, x);
  return out;
}

namespace {

void require_endomorphic_space(const ModuleOperator& t, const char* what) {
  if (!same_space(t.source()->space_ptr(), t.target()->space_ptr()))
    throw Error("space_mismatch",
                std::string(what) + " needs source and target over the same space");
}

}  // namespace

Radius propagation(const ModuleOperator& t, double tol) {
  require_endomorphic_space(t, "propagation");
  const ExtMetricSpace& X = t.source()->space();
  Radius out = 0.0;
  for (auto [y, x] : support_relation(t, tol).pairs()) out = std::max(out, X.d(x, y));
  return out;
}

std::pair<ModuleOperator, ModuleOperator> far_truncation(const ModuleOperator& t,
                                                         Radius r) {
  require_endomorphic_space(t, "far_truncation");
  const ExtMetricSpace& X = t.source()->space();
  CMatrix near(t.matrix().rows(), t.matrix().cols());
  CMatrix far(t.matrix().rows(), t.matrix().cols());
  for (std::size_t i = 0; i < near.rows(); ++i) {
    const int y = t.target()->point_of(i);
    for (std::size_t j = 0; j < near.cols(); ++j) {
      const int x = t.source()->point_of(j);
      (X.d(x, y) <= r ? near : far)(i, j) = t.matrix()(i, j);
    }
  }
  return {ModuleOperator(std::move(near), t.source(), t.target()),
          ModuleOperator(std::move(far), t.source(), t.target())};
}

ModuleOperator matrix_unit(std::span<const Complex> v, const ModulePtr& source,
                           std::span<const Complex> w, const ModulePtr& target) {
  if (v.size() != source->dim() || w.size() != target->dim())
    throw Error("dimension_mismatch", "matrix_unit vector sizes differ from modules");
  return ModuleOperator(CMatrix::outer(w, v), source, target);
}

ModuleOperator ad_map(const ModuleOperator& big_t, const ModuleOperator& t) {
  if (!same_module(t.source(), big_t.source()) || !same_module(t.target(), big_t.source()))
    throw Error("dimension_mismatch", "Ad(T) needs t to act on the source module of T");
  return big_t * t * big_t.adjoint();
}

}  // namespace coarse
