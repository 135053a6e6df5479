#include <cmath>
#include <random>
#include <sstream>

#include "doctest.h"
#include "survcor/errors.hpp"
#include "survcor/scorematrix.hpp"
#include "survcor/timeseries.hpp"
#include "test_util.hpp"

using namespace survcor;

TEST_CASE("compute_all on two identical rows scores their self-ccf") {
  SurveillanceTable table;
  table.weeks = 20;
  std::mt19937 rng(31);
  std::vector<std::optional<std::int64_t>> row;
  std::uniform_int_distribution<std::int64_t> count(0, 50);
  for (int w = 0; w < 20; ++w) {
    row.emplace_back(count(rng));
  }
  table.regions = {{1, "A", "P"}, {2, "B", "P"}};
  table.counts = {row, row};

  const auto m = compute_all(table);
  REQUIRE(m.raw_scores().size() == 1);
  const auto ts = region_series(table, 1);
  const double expected = weighted_score(ccf(ts, ts, 5));
  CHECK(*m.score(1, 2) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("compute_all matches an independent per-pair recomputation") {
  std::mt19937 rng(32);
  const auto table = testutil::random_table(rng, 3, 40, 0.1);
  const auto m = compute_all(table);
  REQUIRE(m.raw_scores().size() == 3);
  for (int i = 1; i <= 3; ++i) {
    for (int j = i + 1; j <= 3; ++j) {
      const auto x = region_series(table, i);
      const auto y = region_series(table, j);
      const auto expected = testutil::oracle_score(
          testutil::oracle_ccf(x.values, y.values, 5), 5);
      CHECK(*m.score(i, j) == doctest::Approx(expected).epsilon(1e-12));
    }
  }
}

TEST_CASE("score accessor is symmetric and rejects the diagonal") {
  std::mt19937 rng(33);
  const auto table = testutil::random_table(rng, 6, 30);
  const auto m = compute_all(table);
  for (int i = 1; i <= 6; ++i) {
    for (int j = 1; j <= 6; ++j) {
      if (i == j) {
        CHECK_THROWS_AS(m.score(i, j), DomainError);
      } else {
        CHECK(*m.score(i, j) == *m.score(j, i));  // single stored value
      }
    }
  }
  CHECK_THROWS_AS(m.score(0, 1), DomainError);
  CHECK_THROWS_AS(m.score(1, 7), DomainError);
  CHECK(m.raw_scores().size() == 15);
}

TEST_CASE("compute_all is schedule-independent") {
  std::mt19937 rng(34);
  const auto table = testutil::random_table(rng, 12, 60, 0.05);
  ComputeOptions opts;
  opts.threads = 1;
  const auto m1 = compute_all(table, opts);
  opts.threads = 5;
  const auto m5 = compute_all(table, opts);
  opts.threads = 64;  // more workers than pairs
  const auto m64 = compute_all(table, opts);
  CHECK(m1.raw_scores() == m5.raw_scores());
  CHECK(m1.raw_scores() == m64.raw_scores());
}

TEST_CASE("compute_all commutes with row permutation") {
  std::mt19937 rng(35);
  const auto table = testutil::random_table(rng, 5, 40);
  // Reverse the row order (indices relabeled to stay contiguous).
  SurveillanceTable reversed = table;
  for (int i = 0; i < 5; ++i) {
    reversed.regions[i] = table.regions[4 - i];
    reversed.regions[i].index = i + 1;
    reversed.counts[i] = table.counts[4 - i];
  }
  const auto m = compute_all(table);
  const auto mr = compute_all(reversed);
  for (int i = 1; i <= 5; ++i) {
    for (int j = 1; j <= 5; ++j) {
      if (i == j) {
        continue;
      }
      CHECK(*m.score(i, j) == *mr.score(6 - i, 6 - j));
    }
  }
}

TEST_CASE("compute_all skips constant rows with a reason") {
  SurveillanceTable table;
  table.weeks = 20;
  table.regions = {{1, "A", "P"}, {2, "B", "P"}, {3, "C", "P"}};
  std::mt19937 rng(36);
  std::uniform_int_distribution<std::int64_t> count(0, 90);
  for (int i = 0; i < 3; ++i) {
    std::vector<std::optional<std::int64_t>> row;
    for (int w = 0; w < 20; ++w) {
      row.emplace_back(i == 1 ? 4 : count(rng));
    }
    table.counts.push_back(std::move(row));
  }
  const auto m = compute_all(table);
  CHECK(m.score(1, 3).has_value());
  CHECK_FALSE(m.score(1, 2).has_value());
  CHECK_FALSE(m.score(2, 3).has_value());
  REQUIRE(m.skipped_pairs().size() == 2);
  CHECK(m.skipped_pairs()[0].i == 1);
  CHECK(m.skipped_pairs()[0].j == 2);
  CHECK(m.skipped_pairs()[0].reason == "region 2 constant in window");
  CHECK(m.stored_scores().size() == 1);
}

TEST_CASE("compute_all scores first differences under prewhiten") {
  std::mt19937 rng(45);
  SurveillanceTable table = testutil::random_table(rng, 3, 40);
  // A linear ramp is non-constant raw but constant after differencing.
  table.regions.push_back({4, "RAMP", "P"});
  std::vector<std::optional<std::int64_t>> ramp;
  for (int t = 0; t < 40; ++t) {
    ramp.emplace_back(3 * t);
  }
  table.counts.push_back(std::move(ramp));

  ComputeOptions opts;
  opts.prewhiten = true;
  const auto m = compute_all(table, opts);
  CHECK(m.prewhitened());

  for (int i = 1; i <= 3; ++i) {
    for (int j = i + 1; j <= 3; ++j) {
      const auto dx = difference(region_series(table, i));
      const auto dy = difference(region_series(table, j));
      const auto expected = testutil::oracle_score(
          testutil::oracle_ccf(dx.values, dy.values, 5), 5);
      CHECK(*m.score(i, j) == doctest::Approx(expected).epsilon(1e-12));
    }
  }
  // Every pair with the ramp is skipped, none scored.
  CHECK(m.skipped_pairs().size() == 3);
  for (const auto& sp : m.skipped_pairs()) {
    CHECK(sp.j == 4);
    CHECK(sp.reason == "region 4 constant in window");
  }
  CHECK_FALSE(m.score(1, 4).has_value());
}

TEST_CASE("compute_all error paths") {
  std::mt19937 rng(37);
  const auto table = testutil::random_table(rng, 4, 30);
  SurveillanceTable one = table;
  one.regions.resize(1);
  one.counts.resize(1);
  CHECK_THROWS_AS(compute_all(one), InsufficientDataError);

  ComputeOptions opts;
  opts.weeks = WeekRange{10, 50};  // beyond the table
  CHECK_THROWS_AS(compute_all(table, opts), DomainError);

  opts.weeks = WeekRange{1, 8};  // shorter than 2*5+2
  CHECK_THROWS_AS(compute_all(table, opts), DomainError);

  // All rows constant: nothing usable.
  SurveillanceTable flat = table;
  for (auto& row : flat.counts) {
    for (auto& cell : row) {
      cell = 9;
    }
  }
  CHECK_THROWS_AS(compute_all(flat), InsufficientDataError);
}

TEST_CASE("top_k ranks by score with index tie-breaks") {
  // Hand-built matrix: scores cs_12 = 5, cs_13 = 7, cs_23 = 5.
  std::vector<RegionRecord> regions = {
      {1, "A", "P"}, {2, "B", "P"}, {3, "C", "P"}};
  ScoreMatrix m(regions, 5, WeekRange{1, 20}, false, {5.0, 7.0, 5.0}, {});
  const auto top = top_k(m, 1, 2);
  REQUIRE(top.size() == 2);
  CHECK(top[0].region == 3);
  CHECK(top[0].score == 7.0);
  CHECK(top[1].region == 2);
  CHECK(top[1].score == 5.0);
  CHECK(top[0].district == "C");

  const auto single = top_k(m, 3, 1);
  REQUIRE(single.size() == 1);
  CHECK(single[0].region == 1);

  // Region 2 sees both partners at score 5: the tie breaks toward the
  // smaller index, and k = N-1 returns every partner.
  const auto tied = top_k(m, 2, 2);
  REQUIRE(tied.size() == 2);
  CHECK(tied[0].region == 1);
  CHECK(tied[1].region == 3);

  CHECK_THROWS_AS(top_k(m, 0, 1), DomainError);
  CHECK_THROWS_AS(top_k(m, 4, 1), DomainError);
  CHECK_THROWS_AS(top_k(m, 1, 0), DomainError);
  CHECK_THROWS_AS(top_k(m, 1, 3), DomainError);
}

TEST_CASE("summary_stats follows the documented conventions") {
  std::vector<RegionRecord> regions = {
      {1, "A", "P"}, {2, "B", "P"}, {3, "C", "P"}};

  ScoreMatrix single(regions, 5, WeekRange{1, 20}, false,
                     {2.0, std::nan(""), std::nan("")}, {});
  const auto s1 = summary_stats(single);
  CHECK(s1.mean == 2.0);
  CHECK(s1.sd == 0.0);  // single value: sd defined as 0
  CHECK(s1.min == 2.0);
  CHECK(s1.median == 2.0);
  CHECK(s1.max == 2.0);

  ScoreMatrix two(regions, 5, WeekRange{1, 20}, false,
                  {1.0, 3.0, std::nan("")}, {});
  const auto s2 = summary_stats(two);
  CHECK(s2.mean == 2.0);
  CHECK(s2.median == 2.0);
  CHECK(s2.sd == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));

  ScoreMatrix three(regions, 5, WeekRange{1, 20}, false,
                    {-24.22, 2.40, 29.96}, {});
  const auto s3 = summary_stats(three);
  CHECK(s3.min == -24.22);
  CHECK(s3.median == 2.40);
  CHECK(s3.max == 29.96);

  ScoreMatrix empty(regions, 5, WeekRange{1, 20}, false,
                    {std::nan(""), std::nan(""), std::nan("")}, {});
  CHECK_THROWS_AS(summary_stats(empty), InsufficientDataError);
}

TEST_CASE("compare_windows returns 1.0 on identical windows") {
  std::mt19937 rng(38);
  const auto table = testutil::random_table(rng, 8, 80, 0.05);
  const auto cmp =
      compare_windows(table, WeekRange{1, 80}, WeekRange{1, 80});
  CHECK(cmp.stability == 1.0);
  CHECK(cmp.matrix_a.raw_scores() == cmp.matrix_b.raw_scores());
}

TEST_CASE("compare_windows sees a repeated half as perfectly stable") {
  std::mt19937 rng(39);
  SurveillanceTable table = testutil::random_table(rng, 6, 40);
  // Second half equals the first half.
  for (auto& row : table.counts) {
    for (int w = 0; w < 20; ++w) {
      row[static_cast<std::size_t>(20 + w)] = row[static_cast<std::size_t>(w)];
    }
  }
  const auto cmp =
      compare_windows(table, WeekRange{1, 20}, WeekRange{21, 40});
  CHECK(cmp.stability == 1.0);
}

TEST_CASE("compare_windows finds a stationary process stable") {
  // Four groups of three regions share group signals with per-member
  // gains and small lags; the pairwise score pattern is a property of
  // the process, so two disjoint 100-week windows must agree on it.
  // With this seed the stability comes out near 0.80; the asserted 0.5
  // floor is the recorded outcome of that experiment.
  std::mt19937 rng(41);
  SurveillanceTable table;
  table.weeks = 200;
  const double periods[4] = {26.0, 52.0, 39.0, 18.0};
  for (int r = 0; r < 12; ++r) {
    const int group = r / 3;
    const int member = r % 3;
    table.regions.push_back({r + 1, "D" + std::to_string(r + 1), "P"});
    std::vector<std::optional<std::int64_t>> row;
    for (int t = 0; t < 200; ++t) {
      const double signal =
          30.0 * std::sin(2.0 * 3.14159265358979323846 *
                              (t - member) / periods[group] +
                          0.7 * group);
      const double v = 60.0 + (1.0 + 0.2 * member) * signal +
                       testutil::gaussian(rng, 6.0);
      row.emplace_back(
          static_cast<std::int64_t>(std::max(0.0, std::round(v))));
    }
    table.counts.push_back(std::move(row));
  }
  const auto cmp =
      compare_windows(table, WeekRange{1, 100}, WeekRange{101, 200});
  CHECK(cmp.stability > 0.5);
  CHECK(cmp.stability <= 1.0);
}

TEST_CASE("compare_windows error paths") {
  std::mt19937 rng(40);
  const auto table = testutil::random_table(rng, 4, 60);
  CHECK_THROWS_AS(
      compare_windows(table, WeekRange{1, 8}, WeekRange{9, 60}),
      DomainError);
  SurveillanceTable flat = table;
  for (auto& row : flat.counts) {
    for (auto& cell : row) {
      cell = 3;
    }
  }
  CHECK_THROWS_AS(
      compare_windows(flat, WeekRange{1, 30}, WeekRange{31, 60}),
      InsufficientDataError);
}

TEST_CASE("write_scores_csv emits 6 significant digits and skip rows") {
  std::vector<RegionRecord> regions = {
      {1, "A", "P"}, {2, "B", "P"}, {3, "C", "P"}};
  ScoreMatrix m(regions, 5, WeekRange{1, 20}, false,
                {1.234567891, std::nan(""), -0.000123456789},
                {{1, 3, "region 3 constant in window"}});
  std::ostringstream out;
  write_scores_csv(m, out);
  CHECK(out.str() ==
        "i,j,score\n"
        "1,2,1.23457\n"
        "2,3,-0.000123457\n"
        "1,3,SKIPPED:region 3 constant in window\n");
}
