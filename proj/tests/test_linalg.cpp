#include <catch_amalgamated.hpp>

#include <random>

#include "koszul/errors.hpp"
#include "koszul/linalg.hpp"
#include "oracle.hpp"

using namespace koszul;

namespace {

const FieldSpec QQ = FieldSpec::rationals();

Matrix from_dense(const oracle::Dense& d, FieldSpec f, std::size_t cols) {
  return Matrix::from_dense(f, cols, d);
}

Matrix antidiag(FieldSpec f) {
  return Matrix::from_rows(f, 3, {{0, 0, 1}, {0, -2, 0}, {1, 0, 0}});
}

}  // namespace

TEST_CASE("field construction checks primality") {
  CHECK_NOTHROW(FieldSpec(0));
  CHECK_NOTHROW(FieldSpec(2));
  CHECK_NOTHROW(FieldSpec(2147483647u));
  CHECK_THROWS_AS(FieldSpec(1), InputError);
  CHECK_THROWS_AS(FieldSpec(9), InputError);
}

TEST_CASE("scalars are canonical") {
  Scalar a(QQ, mpq_class(6, 4));
  CHECK(a.value() == mpq_class(3, 2));
  CHECK(a.value().get_den() == 2);
  Scalar b(QQ, mpq_class(1, -2));
  CHECK(b.value().get_den() > 0);
  FieldSpec f7(7);
  CHECK(Scalar(f7, -1LL).value() == 6);
  CHECK(Scalar(f7, mpq_class(1, 3)).value() == 5);
  CHECK((Scalar(f7, 3LL) * Scalar(f7, 5LL)).value() == 1);
  CHECK_THROWS_AS(Scalar(f7, 1LL) + Scalar(QQ, 1LL), InputError);
}

TEST_CASE("mixed-field matrix entries are rejected at construction") {
  MatrixBuilder b(FieldSpec(5), 2, 2);
  CHECK_THROWS_AS(b.add(0, 0, Scalar(QQ, 1LL)), InputError);
}

TEST_CASE("rank examples") {
  CHECK(rank(Matrix(QQ, 3, 3)) == 0);
  CHECK(rank(Matrix::identity(FieldSpec(5), 3)) == 3);
  CHECK(rank(antidiag(FieldSpec(2))) == 2);
  CHECK(rank(antidiag(QQ)) == 3);
}

TEST_CASE("kernel examples") {
  CHECK(kernel_basis(Matrix::identity(QQ, 3)).dim() == 0);
  const Subspace k = kernel_basis(Matrix::from_rows(QQ, 2, {{1, 1}}));
  REQUIRE(k.dim() == 1);
  CHECK(k.span() == Matrix::from_rows(QQ, 2, {{1, -1}}));
  CHECK(kernel_basis(antidiag(FieldSpec(2))).dim() == 1);
}

TEST_CASE("solve examples") {
  const Vector b{mpq_class(3), mpq_class(-1, 2)};
  auto x = solve(Matrix::identity(QQ, 2), b);
  REQUIRE(x);
  CHECK(*x == b);

  CHECK_FALSE(solve(Matrix(QQ, 2, 2), Vector{1, 0}).has_value());

  const Matrix m = Matrix::from_rows(QQ, 2, {{1, 1}});
  auto y = solve(m, Vector{2});
  REQUIRE(y);
  CHECK(m.apply(*y) == Vector{2});
  // Free variables are set to zero.
  CHECK(*y == Vector{2, 0});
  CHECK(solve(m, Vector{2}) == y);
}

TEST_CASE("solve_many flags inconsistent columns") {
  const Matrix m = Matrix::from_rows(QQ, 2, {{1, 0}, {0, 0}});
  const Matrix rhs = Matrix::from_rows(QQ, 3, {{1, 0, 2}, {0, 1, 0}});
  auto res = solve_many(m, rhs);
  CHECK(res.solvable == std::vector<bool>{true, false, true});
  CHECK(res.solutions.at(0, 0) == 1);
  CHECK(res.solutions.at(0, 2) == 2);
  CHECK(res.solutions.at(0, 1) == 0);
}

TEST_CASE("homology of zero differentials") {
  CHECK(homology_dim(Matrix(QQ, 5, 3), Matrix(QQ, 2, 5)) == 5);
}

TEST_CASE("homology_dim rejects non-complexes") {
  const Matrix f = Matrix::from_rows(QQ, 1, {{1}, {0}});
  const Matrix g = Matrix::from_rows(QQ, 2, {{1, 0}});
  CHECK_THROWS_AS(homology_dim(f, g), ComplexError);
}

TEST_CASE("subspace canonical form and membership") {
  const Matrix a = Matrix::from_rows(QQ, 3, {{1, 2, 3}, {2, 4, 7}});
  const Matrix b = Matrix::from_rows(QQ, 3, {{0, 0, 5}, {3, 6, 1}});
  CHECK(Subspace::row_span(a) == Subspace::row_span(b));
  const Subspace s = Subspace::row_span(a);
  CHECK(s.contains(Vector{1, 2, 0}));
  CHECK_FALSE(s.contains(Vector{0, 1, 0}));
  auto coords = s.coordinates(Vector{2, 4, 1});
  REQUIRE(coords);
  CHECK(*coords == Vector{2, 1});
  CHECK(s.annihilator().dim() == 1);
  CHECK(s.annihilator().span() ==
        Matrix::from_dense(QQ, 3, {{mpq_class(1), mpq_class(-1, 2), mpq_class(0)}}));
}

TEST_CASE("extending_rows picks a complement") {
  const Matrix base = Matrix::from_rows(QQ, 3, {{1, 0, 0}});
  const Matrix cand = Matrix::from_rows(QQ, 3, {{2, 0, 0}, {0, 1, 0}, {1, 1, 0}, {0, 0, 1}});
  CHECK(extending_rows(base, cand) == std::vector<std::size_t>{1, 3});
}

TEST_CASE("rank agrees with dense oracle on random matrices") {
  std::mt19937_64 rng(20240601);
  for (std::uint32_t p : {0u, 2u, 3u, 101u}) {
    const FieldSpec f(p);
    for (int trial = 0; trial < 40; ++trial) {
      std::uniform_int_distribution<std::size_t> dim(1, 24);
      const std::size_t rows = dim(rng), cols = dim(rng);
      std::uniform_int_distribution<std::size_t> rk(0, std::min(rows, cols));
      oracle::Dense d = trial % 2 ? oracle::random_low_rank(rng, rows, cols, rk(rng), p)
                                  : oracle::random_dense(rng, rows, cols, 4, 0.3, p);
      const Matrix m = from_dense(d, f, cols);
      const std::size_t expected = oracle::rank(d, p);
      INFO("p=" << p << " trial=" << trial);
      CHECK(rank(m) == expected);
      CHECK(rank(m.transpose()) == expected);
      CHECK(kernel_basis(m).dim() + expected == cols);
      // Canonical form equals naive Gauss-Jordan.
      CHECK(rref(m).rows == from_dense(oracle::rref(d, p), f, cols));
    }
  }
}

TEST_CASE("rational elimination matches naive elimination on 20x20 matrices") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    oracle::Dense d = trial < 5 ? oracle::random_dense(rng, 20, 20, 9, 0.6, 0)
                                : oracle::random_low_rank(rng, 20, 20, 12 + trial, 0);
    const Matrix m = from_dense(d, QQ, 20);
    CHECK(rank(m) == oracle::rank(d, 0));
    CHECK(rref(m).rows == from_dense(oracle::rref(d, 0), QQ, 20));
  }
}

TEST_CASE("kernel vectors are annihilated and solve is verified by substitution") {
  std::mt19937_64 rng(99);
  for (std::uint32_t p : {0u, 5u}) {
    const FieldSpec f(p);
    for (int trial = 0; trial < 20; ++trial) {
      const oracle::Dense d = oracle::random_low_rank(rng, 9, 14, 5, p);
      const Matrix m = from_dense(d, f, 14);
      const Subspace k = kernel_basis(m);
      CHECK((m * k.span().transpose()).is_zero());
      // b in the image of m is always solvable.
      std::uniform_int_distribution<int> val(-3, 3);
      Vector x0(14);
      for (auto& v : x0) v = f.normalize(mpq_class(val(rng)));
      const Vector b = m.apply(x0);
      auto x = solve(m, b);
      REQUIRE(x);
      CHECK(m.apply(*x) == b);
    }
  }
}

TEST_CASE("homology_dim agrees with the oracle on random complexes") {
  std::mt19937_64 rng(31337);
  for (std::uint32_t p : {0u, 3u}) {
    const FieldSpec f(p);
    for (int trial = 0; trial < 20; ++trial) {
      // g = h * proj, f = inclusion of part of ker(proj): a genuine complex.
      const std::size_t mid = 12, keep = 5;
      oracle::Dense proj(keep, std::vector<mpq_class>(mid));
      for (std::size_t i = 0; i < keep; ++i) proj[i][i] = 1;
      const oracle::Dense h = oracle::random_dense(rng, 7, keep, 3, 0.6, p);
      const oracle::Dense g = oracle::multiply(h, proj, mid, p);
      oracle::Dense fin(mid, std::vector<mpq_class>(6));
      const oracle::Dense rnd = oracle::random_dense(rng, mid - keep, 6, 3, 0.5, p);
      for (std::size_t i = keep; i < mid; ++i) fin[i] = rnd[i - keep];
      const Matrix fm = from_dense(fin, f, 6);
      const Matrix gm = from_dense(g, f, mid);
      const std::size_t expected = mid - oracle::rank(g, p) - oracle::rank(fin, p);
      CHECK(homology_dim(fm, gm) == expected);
    }
  }
}

TEST_CASE("block-diagonal matrices beyond the dense threshold") {
  // Many disjoint blocks exercise the component splitting; a large sparse
  // band exercises the sparse elimination path.
  std::mt19937_64 rng(5);
  const FieldSpec f(101);
  std::vector<Matrix> blocks;
  std::size_t expected = 0;
  for (int i = 0; i < 30; ++i) {
    const oracle::Dense d = oracle::random_low_rank(rng, 6, 7, static_cast<std::size_t>(i % 6), 101);
    expected += oracle::rank(d, 101);
    blocks.push_back(from_dense(d, f, 7));
  }
  CHECK(rank(block_diag(blocks)) == expected);

  const std::size_t n = 3000;
  MatrixBuilder band(f, n, n);
  for (std::size_t i = 0; i < n; ++i) {
    band.add(i, i, 1LL);
    band.add(i, (i + 1) % n, 1LL);
  }
  // The circulant I + shift is singular of corank one for even n.
  CHECK(rank(band.build()) == n - 1);
  MatrixBuilder band_q(QQ, n, n);
  for (std::size_t i = 0; i < n; ++i) {
    band_q.add(i, i, 1LL);
    band_q.add(i, (i + 1) % n, 1LL);
  }
  CHECK(rank(band_q.build()) == n - 1);
}
