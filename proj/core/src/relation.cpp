#include "coarse/relation.hpp"

#include <algorithm>
#include <cmath>

#include "coarse/error.hpp"

namespace coarse {

std::string to_string(ProfileKind kind) {
  switch (kind) {
    case ProfileKind::expansion: return "expansion";
    case ProfileKind::properness: return "properness";
    case ProfileKind::ql: return "ql";
    case ProfileKind::app: return "app";
    case ProfileKind::qproper: return "qproper";
    case ProfileKind::closeness: return "closeness";
    case ProfileKind::uniformization: return "uniformization";
  }
  return "unknown";
}

std::string to_string(Exactness e) {
  switch (e) {
    case Exactness::exact: return "exact";
    case Exactness::lower_bound: return "lower-bound";
    case Exactness::upper_bound: return "upper-bound";
  }
  return "unknown";
}

bool Profile::is_monotone(double slack) const {
  const bool decreasing = kind == ProfileKind::ql || kind == ProfileKind::app;
  std::vector<ProfileSample> sorted = samples;
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const auto& a, const auto& b) { return a.radius < b.radius; });
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    const double prev = sorted[i - 1].value;
    const double cur = sorted[i].value;
    if (decreasing ? cur > prev + slack : cur < prev - slack) return false;
  }
  return true;
}

double Profile::value_at(double radius) const {
  for (const auto& s : samples)
    if (s.radius == radius) return s.value;
  throw Error("missing_sample", "profile has no sample at the given radius");
}

Relation::Relation(SpacePtr source, SpacePtr target)
    : source_(std::move(source)), target_(std::move(target)) {
  if (!source_ || !target_)
    throw Error("invalid_relation", "relation needs source and target spaces");
  nx_ = static_cast<int>(source_->size());
  ny_ = static_cast<int>(target_->size());
  mask_.assign(static_cast<std::size_t>(nx_) * ny_, 0);
}

Relation Relation::from_pairs(SpacePtr source, SpacePtr target,
                              std::span<const std::pair<int, int>> pairs) {
  Relation out(std::move(source), std::move(target));
  for (auto [y, x] : pairs) out.insert(y, x);
  return out;
}

void Relation::insert(int y, int x) {
  if (y < 0 || y >= ny_ || x < 0 || x >= nx_)
    throw Error("invalid_relation", "pair references a point outside its space");
  mask_[static_cast<std::size_t>(y) * nx_ + x] = 1;
}

std::size_t Relation::size() const {
  return static_cast<std::size_t>(std::count(mask_.begin(), mask_.end(), 1));
}

std::vector<std::pair<int, int>> Relation::pairs() const {
  std::vector<std::pair<int, int>> out;
  for (int y = 0; y < ny_; ++y)
    for (int x = 0; x < nx_; ++x)
      if (contains(y, x)) out.emplace_back(y, x);
  return out;
}

PointSet Relation::fiber(int x) const {
  PointSet out;
  for (int y = 0; y < ny_; ++y)
    if (contains(y, x)) out.push_back(y);
  return out;
}

PointSet Relation::preimage(int y) const {
  PointSet out;
  for (int x = 0; x < nx_; ++x)
    if (contains(y, x)) out.push_back(x);
  return out;
}

PointSet Relation::domain() const {
  PointSet out;
  for (int x = 0; x < nx_; ++x)
    for (int y = 0; y < ny_; ++y)
      if (contains(y, x)) {
        out.push_back(x);
        break;
      }
  return out;
}

PointSet Relation::image() const {
  PointSet out;
  for (int y = 0; y < ny_; ++y)
    for (int x = 0; x < nx_; ++x)
      if (contains(y, x)) {
        out.push_back(y);
        break;
      }
  return out;
}

Relation& Relation::operator|=(const Relation& other) {
  if (!same_space(source_, other.source_) || !same_space(target_, other.target_))
    throw Error("space_mismatch", "union of relations over different spaces");
  for (std::size_t i = 0; i < mask_.size(); ++i) mask_[i] |= other.mask_[i];
  return *this;
}

bool Relation::subset_of(const Relation& other) const {
  if (!same_space(source_, other.source_) || !same_space(target_, other.target_))
    throw Error("space_mismatch", "containment of relations over different spaces");
  for (std::size_t i = 0; i < mask_.size(); ++i)
    if (mask_[i] && !other.mask_[i]) return false;
  return true;
}

Relation diagonal(const SpacePtr& space) { return entourage_at(space, 0.0); }

Relation entourage_at(const SpacePtr& space, Radius r) {
  if (!(r >= 0.0) || !std::isfinite(r))
    throw Error("invalid_radius", "entourage radius must be finite and >= 0");
  Relation out(space, space);
  const int n = static_cast<int>(space->size());
  for (int y = 0; y < n; ++y)
    for (int x = 0; x < n; ++x)
      if (space->d(x, y) <= r) out.insert(y, x);
  return out;
}

Relation graph(const SpacePtr& source, const SpacePtr& target,
               std::span<const int> map) {
  if (map.size() != source->size())
    throw Error("invalid_map", "map length differs from source size");
  Relation out(source, target);
  for (std::size_t x = 0; x < map.size(); ++x)
    if (map[x] >= 0) out.insert(map[x], static_cast<int>(x));
  return out;
}

Relation compose(const Relation& r, const Relation& s) {
  if (!same_space(r.source(), s.target()))
    throw Error("space_mismatch", "compose: source(R) differs from target(S)");
  Relation out(s.source(), r.target());
  const int nz = r.target_size();
  const int ny = r.source_size();
  const int nx = s.source_size();
  for (int z = 0; z < nz; ++z)
    for (int y = 0; y < ny; ++y) {
      if (!r.contains(z, y)) continue;
      for (int x = 0; x < nx; ++x)
        if (s.contains(y, x)) out.insert(z, x);
    }
  return out;
}

Relation transpose(const Relation& r) {
  Relation out(r.target(), r.source());
  for (auto [y, x] : r.pairs()) out.insert(x, y);
  return out;
}

Profile expansion_profile(const Relation& rel, std::span<const double> radii) {
  const ExtMetricSpace& X = *rel.source();
  const ExtMetricSpace& Y = *rel.target();
  const int nx = rel.source_size();
  std::vector<PointSet> fibers(nx);
  for (int x = 0; x < nx; ++x) fibers[x] = rel.fiber(x);

  // spread[x][x'] = max d(y, y') over the two fibers, -1 when one is empty.
  std::vector<double> spread(static_cast<std::size_t>(nx) * nx, -1.0);
  for (int x = 0; x < nx; ++x)
    for (int xp = x; xp < nx; ++xp) {
      if (fibers[x].empty() || fibers[xp].empty()) continue;
      double m = 0.0;
      for (int y : fibers[x])
        for (int yp : fibers[xp]) m = std::max(m, Y.d(y, yp));
      spread[x * nx + xp] = spread[xp * nx + x] = m;
    }

  Profile out{ProfileKind::expansion, {}};
  for (double r : radii) {
    double value = 0.0;
    for (int x = 0; x < nx; ++x)
      for (int xp = 0; xp < nx; ++xp)
        if (X.d(x, xp) <= r) value = std::max(value, spread[x * nx + xp]);
    out.samples.push_back({r, value, Exactness::exact});
  }
  return out;
}

namespace {

Radius one_sided_gap(const Relation& a, const Relation& b) {
  const ExtMetricSpace& X = *a.source();
  const ExtMetricSpace& Y = *a.target();
  const auto bp = b.pairs();
  Radius worst = 0.0;
  for (auto [y, x] : a.pairs()) {
    Radius best = kInfinity;
    for (auto [yp, xp] : bp) {
      best = std::min(best, std::max(Y.d(y, yp), X.d(x, xp)));
      if (best == 0.0) break;
    }
    worst = std::max(worst, best);
    if (worst == kInfinity) break;
  }
  return worst;
}

}  // namespace

Radius closeness_gap(const Relation& a, const Relation& b) {
  if (!same_space(a.source(), b.source()) || !same_space(a.target(), b.target()))
    throw Error("space_mismatch", "closeness_gap needs relations on the same spaces");
  const bool ea = a.empty();
  const bool eb = b.empty();
  if (ea && eb) return 0.0;
  if (ea != eb) return kInfinity;
  return std::max(one_sided_gap(a, b), one_sided_gap(b, a));
}

Radius covering_radius(std::span<const int> set, const ExtMetricSpace& space) {
  Radius worst = 0.0;
  for (int x = 0; x < static_cast<int>(space.size()); ++x)
    worst = std::max(worst, space.distance_to(x, set));
  return worst;
}

Profile properness_profile(const Relation& rel, std::span<const double> radii) {
  // diam(op R(B)) over r-bounded B is attained on a pair {y, y'} with
  // d(y, y') <= r, so the curve is the expansion of the transpose.
  Profile out = expansion_profile(transpose(rel), radii);
  out.kind = ProfileKind::properness;
  return out;
}

Radius fiber_diameter(const Relation& rel) {
  Radius out = 0.0;
  for (int x = 0; x < rel.source_size(); ++x)
    out = std::max(out, rel.target()->diameter(rel.fiber(x)));
  return out;
}

}  // namespace coarse
