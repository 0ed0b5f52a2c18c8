#pragma once

#include <string>
#include <vector>

namespace coarse {

enum class ProfileKind {
  expansion,
  properness,
  ql,
  app,
  qproper,
  closeness,
  uniformization,
};
enum class Exactness { exact, lower_bound, upper_bound };

std::string to_string(ProfileKind kind);
std::string to_string(Exactness e);

struct ProfileSample {
  double radius = 0.0;
  double value = 0.0;
  Exactness exactness = Exactness::exact;
};

/// Radius-indexed curve. Samples are kept in the order they were requested.
struct Profile {
  ProfileKind kind = ProfileKind::expansion;
  std::vector<ProfileSample> samples;

  /// Expansion, properness, qproper and uniformization curves must be nondecreasing in
  /// radius; ql and app nonincreasing. `slack` absorbs solver tolerance.
  bool is_monotone(double slack = 0.0) const;
  double value_at(double radius) const;
};

}  // namespace coarse
