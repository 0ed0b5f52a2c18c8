#pragma once

#include <utility>
#include <vector>

#include "coarse/coarse_map.hpp"
#include "coarse/error.hpp"
#include "coarse/module.hpp"

namespace coarse {

/// A fibre slot: (point, index within the fibre).
using Slot = std::pair<int, int>;

/// Raised when no slot assignment exists: `source_slots` is a Hall violator
/// whose neighbourhood `target_slots` is strictly smaller.
class HallViolation : public Error {
 public:
  HallViolation(std::vector<Slot> source_slots, std::vector<Slot> target_slots,
                double spill);

  const std::vector<Slot>& source_slots() const noexcept { return source_slots_; }
  const std::vector<Slot>& target_slots() const noexcept { return target_slots_; }
  PointSet source_points() const;
  PointSet target_points() const;
  double spill() const noexcept { return spill_; }

 private:
  std::vector<Slot> source_slots_;
  std::vector<Slot> target_slots_;
  double spill_;
};

struct CoveringOptions {
  Radius spill = 0.0;
  /// On infeasibility, retry at the next realized target distance.
  bool auto_spill = false;
};

struct CoveringResult {
  ModuleOperator u;
  Radius spill = 0.0;
};

/// Isometry M -> N whose columns are standard basis vectors, sending each
/// source slot over x to a target slot within `spill` of f(x). The slot
/// matching is the lexicographically least source-saturating one.
CoveringResult build_covering_isometry(const CoarseMapRep& f, const ModulePtr& source,
                                       const ModulePtr& target,
                                       const CoveringOptions& options = {});

/// Unitary variant: needs equal total dimensions and f a desk-scale coarse
/// equivalence (finite transpose-inverse gaps).
CoveringResult build_covering_unitary(const CoarseMapRep& f, const ModulePtr& source,
                                      const ModulePtr& target,
                                      const CoveringOptions& options = {});

/// max |(U^*U - 1)_{ij}|
double isometry_residual(const ModuleOperator& u);
/// max of the U^*U and UU^* residuals.
double unitary_residual(const ModuleOperator& u);

}  // namespace coarse
