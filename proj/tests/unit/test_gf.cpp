#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "qlc/gf.hpp"

using namespace qlc;

namespace {
FieldElement E(unsigned v, unsigned d) { return FieldElement(v, Field(d)); }
}  // namespace

TEST_CASE("field arithmetic examples") {
  CHECK(field_add(E(2, 3), E(2, 3)).value == 1);
  CHECK(field_mul(E(2, 3), E(2, 3)).value == 1);
  CHECK(field_inv(E(2, 3)).value == 2);
  CHECK(field_inv(E(3, 5)).value == 2);
  CHECK_THROWS_AS(field_inv(E(0, 3)), FieldError);
  CHECK_THROWS_AS(field_add(E(1, 3), E(1, 5)), FieldError);
}

TEST_CASE("non-prime modulus rejected") {
  CHECK_THROWS_AS(Field(4), FieldError);
  CHECK_THROWS_AS(Field(1), FieldError);
  CHECK(is_prime(2));
  CHECK(is_prime(13));
  CHECK_FALSE(is_prime(9));
}

TEST_CASE("inverse is an involution for small primes") {
  for (unsigned d : {2u, 3u, 5u, 7u, 11u, 13u}) {
    const Field f(d);
    for (unsigned a = 1; a < d; ++a) {
      CHECK(f.mul(a, f.inv(a)) == 1);
      CHECK(f.inv(f.inv(a)) == a);
    }
  }
}

TEST_CASE("rank examples") {
  const Field f3(3);
  const std::vector<unsigned> a{1, 2, 2, 1};
  CHECK(matrix_rank(FieldMatrix(f3, 2, 2, a)) == 1);
  const std::vector<unsigned> id{1, 0, 0, 1};
  CHECK(matrix_rank(FieldMatrix(f3, 2, 2, id)) == 2);
  CHECK(matrix_rank(FieldMatrix(f3, 3, 4)) == 0);
  const Field f2(2);
  const std::vector<unsigned> tri{0, 1, 1, 1, 0, 1, 1, 1, 0};
  CHECK(matrix_rank(FieldMatrix(f2, 3, 3, tri)) == 2);
  CHECK(matrix_rank(FieldMatrix(f3, 3, 3, tri)) == 3);
}

TEST_CASE("rank agrees with span enumeration and transpose") {
  std::mt19937 rng(7);
  for (unsigned d : {2u, 3u, 5u}) {
    const Field f(d);
    for (int trial = 0; trial < 60; ++trial) {
      const std::size_t r = 1 + rng() % 5, c = 1 + rng() % 5;
      std::vector<unsigned> e(r * c);
      std::vector<std::vector<unsigned>> rows(r, std::vector<unsigned>(c));
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) e[i * c + j] = rows[i][j] = rng() % d;
      const FieldMatrix m(f, r, c, e);
      const auto k = matrix_rank(m);
      CHECK(k == matrix_rank(m.transposed()));
      CHECK(k <= std::min(r, c));
      if (d == 3 || r * c <= 16) CHECK(k == oracle::rank_by_span(rows, d));
    }
  }
}
