#pragma once

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "coarse/coarse.hpp"

namespace testing_support {

using namespace coarse;

inline SpacePtr path(int n) { return share(gen(SpaceKind::path, {n})); }
inline SpacePtr cycle(int n) { return share(gen(SpaceKind::cycle, {n})); }

/// Two-component space from explicit path lengths.
inline SpacePtr two_paths(int a, int b) {
  std::vector<std::string> labels;
  std::vector<WeightedEdge> edges;
  for (int i = 0; i < a + b; ++i) labels.push_back(std::to_string(i));
  for (int i = 0; i + 1 < a; ++i) edges.push_back({i, i + 1, 1.0});
  for (int i = a; i + 1 < a + b; ++i) edges.push_back({i, i + 1, 1.0});
  return share(ExtMetricSpace::from_edges(labels, edges));
}

/// Random connected-ish graph metric with integer weights in [1, 3];
/// components appear when `p_edge` is small.
inline SpacePtr random_space(int n, std::mt19937_64& rng, double p_edge = 0.35) {
  std::bernoulli_distribution keep(p_edge);
  std::uniform_int_distribution<int> w(1, 3);
  std::vector<std::string> labels;
  std::vector<WeightedEdge> edges;
  for (int i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (keep(rng)) edges.push_back({i, j, static_cast<double>(w(rng))});
  return share(ExtMetricSpace::from_edges(labels, edges));
}

inline Relation random_relation(const SpacePtr& src, const SpacePtr& tgt,
                                std::mt19937_64& rng, double p = 0.3) {
  std::bernoulli_distribution keep(p);
  Relation r(src, tgt);
  for (int y = 0; y < static_cast<int>(tgt->size()); ++y)
    for (int x = 0; x < static_cast<int>(src->size()); ++x)
      if (keep(rng)) r.insert(y, x);
  return r;
}

inline CMatrix random_matrix(std::size_t rows, std::size_t cols, std::mt19937_64& rng,
                             double density = 1.0) {
  std::normal_distribution<double> g;
  std::bernoulli_distribution keep(density);
  CMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      if (keep(rng)) m(i, j) = Complex(g(rng), g(rng));
  return m;
}

inline ModuleOperator random_operator(const ModulePtr& src, const ModulePtr& tgt,
                                      std::mt19937_64& rng, double density = 1.0) {
  return ModuleOperator(random_matrix(tgt->dim(), src->dim(), rng, density), src, tgt);
}

inline CVector random_vector(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  CVector v(n);
  for (auto& z : v) z = Complex(g(rng), g(rng));
  return v;
}

inline std::string fixture(const std::string& name) {
  return std::string(COARSEKIT_FIXTURES) + "/" + name;
}

}  // namespace testing_support
