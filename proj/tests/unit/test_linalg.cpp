#include "doctest.h"
#include "eigen_oracle.hpp"
#include "support.hpp"

using namespace testing_support;

TEST_CASE("operator norm, small cases") {
  CHECK(op_norm(CMatrix::identity(4)).value == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(op_norm(CMatrix(3, 5)).value == 0.0);
  CHECK(op_norm(CMatrix(3, 5)).residual == 0.0);
  CMatrix d(2, 2);
  d(0, 0) = 3.0;
  d(1, 1) = 1.0;
  auto pair = top_singular_pair(d);
  CHECK(pair.sigma == doctest::Approx(3.0));
  CHECK(std::abs(pair.u[0]) == doctest::Approx(1.0));
  CHECK(std::abs(pair.v[0]) == doctest::Approx(1.0));
  CHECK_THROWS_AS(top_singular_pair(CMatrix(2, 2)), Error);
}

TEST_CASE("rank one norm and directions") {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 10; ++trial) {
    auto v = random_vector(5, rng), w = random_vector(13, rng);
    auto e = CMatrix::outer(w, v);
    CHECK(op_norm(e).value == doctest::Approx(norm(v) * norm(w)).epsilon(1e-12));
    auto p = top_singular_pair(e);
    CHECK(std::abs(inner(p.v, v)) == doctest::Approx(norm(v)).epsilon(1e-9));
    CHECK(std::abs(inner(p.u, w)) == doctest::Approx(norm(w)).epsilon(1e-9));
  }
}

TEST_CASE("norms agree with an independent SVD") {
  std::mt19937_64 rng(2);
  for (auto [r, c] : {std::pair{6, 6}, {3, 9}, {12, 10}, {20, 7}, {15, 15}, {1, 30}}) {
    for (int trial = 0; trial < 5; ++trial) {
      auto m = random_matrix(r, c, rng, 0.7);
      const double truth = oracle_norm(m);
      auto est = op_norm(m, 1e-12);
      CHECK(est.value == doctest::Approx(truth).epsilon(1e-9));
      CHECK(op_norm(m.adjoint()).value == doctest::Approx(est.value).epsilon(1e-9));

      auto svd = singular_values(m);
      Eigen::JacobiSVD<Eigen::MatrixXcd> oracle(to_eigen(m));
      REQUIRE(svd.size() == static_cast<std::size_t>(oracle.singularValues().size()));
      for (std::size_t i = 0; i < svd.size(); ++i)
        CHECK(svd[i] == doctest::Approx(oracle.singularValues()(i)).epsilon(1e-9));

      auto p = top_singular_pair(m);
      CVector mv = m.apply(p.v);
      double res = 0.0;
      for (std::size_t i = 0; i < mv.size(); ++i) res += std::norm(mv[i] - p.sigma * p.u[i]);
      CHECK(std::sqrt(res) <= 1e-6 * std::max(1.0, p.sigma));
    }
  }
}

TEST_CASE("Jacobi SVD reconstructs the matrix") {
  std::mt19937_64 rng(3);
  for (auto [r, c] : {std::pair{5, 5}, {4, 7}, {9, 3}}) {
    auto m = random_matrix(r, c, rng);
    auto s = jacobi_svd(m);
    CMatrix back(r, c);
    for (std::size_t k = 0; k < s.sigma.size(); ++k)
      for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j)
          back(i, j) += s.u(i, k) * s.sigma[k] * std::conj(s.v(j, k));
    CHECK((back - m).max_abs() < 1e-10);
    for (std::size_t k = 1; k < s.sigma.size(); ++k) CHECK(s.sigma[k] <= s.sigma[k - 1]);
  }
}

TEST_CASE("submatrix norms are monotone") {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    auto m = random_matrix(10, 9, rng, 0.5);
    std::vector<std::size_t> rows, cols;
    std::bernoulli_distribution keep(0.5);
    for (std::size_t i = 0; i < 10; ++i)
      if (keep(rng)) rows.push_back(i);
    for (std::size_t j = 0; j < 9; ++j)
      if (keep(rng)) cols.push_back(j);
    CHECK(op_norm(m.select(rows, cols)).value <= op_norm(m).value + 2e-12);
  }
}

TEST_CASE("band nearness") {
  std::mt19937_64 rng(5);
  const std::size_t n = 8;
  Pattern band(n * n, 0), all(n * n, 1);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      band[i * n + j] = (i > j ? i - j : j - i) <= 1;

  SUBCASE("inside the pattern") {
    CMatrix t(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (band[i * n + j]) t(i, j) = Complex(1.0 + i, 0.5 * j);
    auto res = band_nearness(t, band, 50, 1e-12);
    CHECK(res.dist == doctest::Approx(0.0));
    CHECK((res.s - t).max_abs() == 0.0);
  }
  SUBCASE("full pattern") {
    auto t = random_matrix(n, n, rng);
    CHECK(band_nearness(t, all, 50, 1e-12).dist == doctest::Approx(0.0));
  }
  SUBCASE("band plus one far entry") {
    auto t = random_matrix(n, n, rng);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (!band[i * n + j]) t(i, j) = 0.0;
    const Complex c(0.3, -0.4);
    t(7, 1) = c;
    auto res = band_nearness(t, band, 200, 1e-12, std::abs(c));
    CHECK(res.dist == doctest::Approx(std::abs(c)).epsilon(1e-12));
    CHECK(res.converged);
    for (std::size_t k = 0; k < n * n; ++k)
      if (!band[k]) CHECK(res.s.data()[k] == Complex(0.0));
  }
  SUBCASE("larger patterns never do worse") {
    auto t = random_matrix(n, n, rng);
    Pattern wide(n * n, 0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        wide[i * n + j] = (i > j ? i - j : j - i) <= 3;
    auto narrow = band_nearness(t, band, 150, 1e-9);
    auto broad = band_nearness(t, wide, 150, 1e-9);
    CMatrix trunc = t;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (band[i * n + j]) trunc(i, j) = 0.0;
    CHECK(narrow.dist <= op_norm(trunc).value + 1e-12);
    // Both are upper bounds of convex minima; the wide one starts from a
    // feasible point at least as good.
    CHECK(broad.dist <= narrow.dist + 1e-2);
  }
}

TEST_CASE("adjoint and non-finite input") {
  std::mt19937_64 rng(6);
  auto m = random_matrix(4, 6, rng);
  CHECK(m.adjoint().adjoint() == m);
  std::vector<Complex> bad(4, Complex(std::nan(""), 0.0));
  CHECK_THROWS_AS(CMatrix(2, 2, bad), Error);
}
