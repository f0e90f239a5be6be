#include <catch2/catch_amalgamated.hpp>

#include <algorithm>

#include "randfib/tree.hpp"
#include "support.hpp"

using randfib::AggregatedRow;
using randfib::BigInt;
using randfib::EnumerateLimits;
using randfib::Rational;

namespace {

const Rational kOne(1);

bool row_has(const AggregatedRow<Rational>& row, const Rational& prev, const Rational& curr,
             long count) {
  for (const auto& st : row.states)
    if (st.prev == prev && st.curr == curr) return st.count == count;
  return false;
}

}  // namespace

TEST_CASE("root_row holds exactly the seed pair") {
  for (const auto& [x0, x1] : {std::pair<int, int>{1, 1}, {0, 1}, {1, 0}}) {
    const auto row = randfib::root_row(Rational(x0), Rational(x1), kOne);
    CHECK(row.level == 0);
    REQUIRE(row.states.size() == 1);
    CHECK(row_has(row, Rational(x0), Rational(x1), 1));
  }
  CHECK_THROWS_AS(randfib::root_row(Rational(0), Rational(0), kOne),
                  randfib::InvalidInputError);
  CHECK_THROWS_AS(randfib::root_row(Rational(1), Rational(1), Rational(0)),
                  randfib::InvalidInputError);
  CHECK_THROWS_AS(randfib::root_row(Rational(-1), Rational(1), kOne),
                  randfib::InvalidInputError);
}

TEST_CASE("step_row expands and merges states") {
  auto row = randfib::root_row(kOne, kOne, kOne);

  row = randfib::step_row(row);
  REQUIRE(row.states.size() == 2);
  CHECK(row_has(row, 1, 0, 1));
  CHECK(row_has(row, 1, 2, 1));

  row = randfib::step_row(row);
  REQUIRE(row.states.size() == 3);
  CHECK(row_has(row, 0, 1, 2));  // both children of (1, 0) merge here
  CHECK(row_has(row, 2, 1, 1));
  CHECK(row_has(row, 2, 3, 1));
}

TEST_CASE("step_row scales children by beta") {
  auto row = randfib::root_row(kOne, kOne, Rational(1, 2));
  row = randfib::step_row(row);
  REQUIRE(row.states.size() == 2);
  CHECK(row_has(row, 1, Rational(1, 2), 1));
  CHECK(row_has(row, 1, Rational(3, 2), 1));
}

TEST_CASE("row_stats matches hand-expanded levels for beta = 1, seed (1, 1)") {
  auto row = randfib::root_row(kOne, kOne, kOne);
  row = randfib::step_row(row);
  auto s1 = randfib::row_stats(row);  // leaves {0, 2}
  CHECK(s1.sum_abs == 2);
  CHECK(s1.sum_sq == 4);
  CHECK(s1.mean_abs == 1);
  CHECK(s1.raw_second == 2);

  row = randfib::step_row(row);
  auto s2 = randfib::row_stats(row);  // leaves {1, 1, 1, 3}
  CHECK(s2.sum_abs == 6);
  CHECK(s2.sum_sq == 12);
  CHECK(s2.mean_abs == Rational(3, 2));
  CHECK(s2.raw_second == 3);

  row = randfib::step_row(row);
  auto s3 = randfib::row_stats(row);  // leaves {1, 1, 1, 1, 1, 3, 1, 5}
  CHECK(s3.sum_abs == 14);
  CHECK(s3.sum_sq == 40);
  CHECK(s3.mean_abs == Rational(7, 4));
  CHECK(s3.raw_second == 5);
  CHECK(s3.variance == Rational(31, 16));
}

TEST_CASE("enumerate_rows reproduces the frozen S and SS sequences") {
  const auto rows = randfib::enumerate_rows(kOne, kOne, kOne, 3);
  REQUIRE(rows.size() == 4);
  const long expect_s[] = {1, 2, 6, 14};
  const long expect_ss[] = {1, 4, 12, 40};
  for (int n = 0; n <= 3; ++n) {
    CHECK(rows[n].sum_abs == expect_s[n]);
    CHECK(rows[n].sum_sq == expect_ss[n]);
  }
}

TEST_CASE("aggregated rows agree exactly with the naive 2^n walk") {
  const std::vector<Rational> betas = {Rational(1), Rational(1, 2), Rational(2)};
  const std::vector<std::pair<Rational, Rational>> seeds = {{1, 1}, {0, 1}};
  for (const auto& beta : betas)
    for (const auto& [x0, x1] : seeds) {
      const auto rows = randfib::enumerate_rows(x0, x1, beta, 10);
      for (int n = 0; n <= 10; n += 2) {
        const auto naive = randfib::test::naive_row_sums(x0, x1, beta, n);
        CHECK(rows[n].sum_abs == naive.sum_abs);
        CHECK(rows[n].sum_sq == naive.sum_sq);
      }
    }
}

TEST_CASE("multiplicity doubles at every level for arbitrary rational beta") {
  randfib::SplitMix64 rng(7);
  for (int iter = 0; iter < 5; ++iter) {
    Rational beta = randfib::random_rational(rng, 3, 10);
    if (beta == 0) beta = Rational(2, 3);
    auto row = randfib::root_row(kOne, Rational(2), beta);
    for (int level = 1; level <= 12; ++level) {
      row = randfib::step_row(row);
      CHECK(row.total_count() == BigInt(1) << level);
      for (const auto& st : row.states) {
        CHECK(st.prev >= 0);
        CHECK(st.curr >= 0);
        CHECK(st.count >= 1);
      }
    }
  }
}

TEST_CASE("signed recursion and normalized-pair walk agree per path") {
  randfib::SplitMix64 rng(99);
  for (const Rational beta : {Rational(1), Rational(2, 3)}) {
    for (int iter = 0; iter < 500; ++iter) {
      std::vector<bool> signs(14);
      for (auto&& s : signs) s = rng.next_bit();
      const auto [direct, walked] =
          randfib::test::signed_vs_normalized(kOne, kOne, beta, signs);
      CHECK(direct == walked);
    }
  }
}

TEST_CASE("normalized second moments satisfy the Fibonacci identity at beta = 1") {
  const auto rows = randfib::enumerate_rows(Rational(2), Rational(1), kOne, 20);
  for (int n = 2; n <= 20; ++n)
    CHECK(rows[n].raw_second == rows[n - 1].raw_second + rows[n - 2].raw_second);
}

TEST_CASE("zero values are ordinary states") {
  // (1, 1) -> (1, 0) at level 1; both children of (1, 0) are (0, 1).
  auto row = randfib::root_row(kOne, kOne, kOne);
  row = randfib::step_row(row);
  REQUIRE(row_has(row, 1, 0, 1));
  row = randfib::step_row(row);
  CHECK(row_has(row, 0, 1, 2));
}

TEST_CASE("exact summaries are identical for any partition count") {
  for (int partitions : {1, 3, 8}) {
    EnumerateLimits lim;
    const auto rows =
        randfib::enumerate_rows(kOne, kOne, Rational(3, 7), 13, lim, partitions);
    const auto base = randfib::enumerate_rows(kOne, kOne, Rational(3, 7), 13);
    REQUIRE(rows.size() == base.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      CHECK(rows[i].sum_abs == base[i].sum_abs);
      CHECK(rows[i].sum_sq == base[i].sum_sq);
      CHECK(rows[i].variance == base[i].variance);
    }
  }
}

TEST_CASE("float mode tracks exact mode closely at moderate depth") {
  const auto exact = randfib::enumerate_rows(kOne, kOne, Rational(7, 10), 12);
  const auto approx = randfib::enumerate_rows(1.0, 1.0, 0.7, 12);
  for (int n = 0; n <= 12; ++n) {
    const double want = randfib::to_double(exact[n].mean_abs);
    CHECK(approx[n].mean_abs == Catch::Approx(want).epsilon(1e-9));
    CHECK(approx[n].variance >= -1e-12);
  }
}

TEST_CASE("float summaries are identical for any partition count") {
  EnumerateLimits lim;
  const auto a = randfib::enumerate_rows(1.0, 1.0, 0.7, 14, lim, 1);
  const auto b = randfib::enumerate_rows(1.0, 1.0, 0.7, 14, lim, 5);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].sum_abs == b[i].sum_abs);
    CHECK(a[i].sum_sq == b[i].sum_sq);
    CHECK(a[i].variance == b[i].variance);
  }
}

TEST_CASE("resource guards refuse oversized requests") {
  CHECK_THROWS_AS(randfib::enumerate_rows(kOne, kOne, kOne, 40),
                  randfib::ResourceLimitError);
  EnumerateLimits tight;
  tight.max_states = 64;
  // beta = 5/7 rarely collides, so the row hits the cap quickly.
  CHECK_THROWS_AS(randfib::enumerate_rows(kOne, kOne, Rational(5, 7), 20, tight),
                  randfib::ResourceLimitError);
  CHECK_THROWS_AS(randfib::enumerate_rows(kOne, kOne, kOne, -1),
                  randfib::InvalidInputError);
}
