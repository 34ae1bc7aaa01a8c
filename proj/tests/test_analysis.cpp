#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "antifrag/analysis.hpp"
#include "test_support.hpp"

using namespace antifrag;
using testing_support::date;

namespace {

const AnalysisWindow kYear{date("2014-01-01"), date("2014-12-31"), "2014"};

AntifragilityResult result(const std::string& id, double global) {
  AntifragilityResult r;
  r.agent_id = id;
  r.global = global;
  r.n_used = 1;
  r.periods = {date("2014-01-03")};
  r.instant_values = {global};
  return r;
}

double integral(const Distribution& d) {
  double total = 0.0;
  for (std::size_t j = 0; j < d.densities.size(); ++j) {
    total += d.densities[j] * (d.bin_edges[j + 1] - d.bin_edges[j]);
  }
  return total;
}

std::vector<BinInput> inputs(std::size_t n) {
  std::vector<BinInput> out;
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back({"AG" + std::to_string(100 + i), static_cast<double>((i * 7) % n),
                   static_cast<double>(i)});
  }
  return out;
}

}  // namespace

TEST_CASE("pearson") {
  const std::vector<double> x{1, 2, 3};
  CHECK(*pearson(x, std::vector<double>{2, 4, 6}) == doctest::Approx(1.0));
  CHECK(*pearson(x, std::vector<double>{3, 2, 1}) == doctest::Approx(-1.0));
  CHECK_FALSE(pearson(x, std::vector<double>{5, 5, 5}));
  CHECK_FALSE(pearson(std::vector<double>{1}, std::vector<double>{2}));

  const std::vector<std::optional<double>> ox{1.0, std::nullopt, 2.0, 3.0};
  const std::vector<std::optional<double>> oy{1.0, 9.0, 2.0, std::nullopt};
  CHECK(*pearson(ox, oy) == doctest::Approx(1.0));

  std::mt19937_64 rng(2);
  std::normal_distribution<double> n(0.0, 1.0);
  for (int t = 0; t < 100; ++t) {
    std::vector<double> xs(3 + t % 20), ys(xs.size()), lin(xs.size()), neg(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
      xs[i] = n(rng);
      ys[i] = n(rng);
      lin[i] = 2.5 * xs[i] + 3.0;
      neg[i] = -0.5 * xs[i] + 1.0;
    }
    CHECK(std::fabs(*pearson(xs, ys)) <= 1.0);
    CHECK(*pearson(xs, lin) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(*pearson(xs, neg) == doctest::Approx(-1.0).epsilon(1e-12));
  }
}

TEST_CASE("quantile bins") {
  auto sizes = [](const std::vector<BinSummary>& bins) {
    std::vector<std::size_t> s;
    for (const auto& b : bins) s.push_back(b.count);
    return s;
  };
  CHECK(sizes(quantile_bin_summary(inputs(10), "A", "age")) ==
        std::vector<std::size_t>{2, 2, 2, 2, 2});
  CHECK(sizes(quantile_bin_summary(inputs(11), "A", "age")) ==
        std::vector<std::size_t>{3, 2, 2, 2, 2});
  CHECK(sizes(quantile_bin_summary(inputs(14), "A", "age")) ==
        std::vector<std::size_t>{3, 3, 3, 3, 2});
  CHECK_THROWS_AS(quantile_bin_summary(inputs(4), "A", "age"), DataError);

  SUBCASE("ties broken by agent id") {
    std::vector<BinInput> tied;
    for (int i = 9; i >= 0; --i) tied.push_back({"A" + std::to_string(i), 0.0, static_cast<double>(i)});
    const auto bins = quantile_bin_summary(tied, "x", "y");
    CHECK(bins[0].min == 0.0);
    CHECK(bins[0].max == 1.0);
    CHECK(bins[4].min == 8.0);
  }
  SUBCASE("self binning gives non-decreasing means") {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (std::size_t n = 5; n < 60; n += 3) {
      std::vector<BinInput> in;
      for (std::size_t i = 0; i < n; ++i) {
        const double a = u(rng);
        in.push_back({"AG" + std::to_string(i), a, a});
      }
      const auto bins = quantile_bin_summary(in, "A", "A");
      std::size_t total = 0;
      for (std::size_t b = 0; b < bins.size(); ++b) {
        total += bins[b].count;
        if (b > 0) {
          CHECK(bins[b - 1].mean <= bins[b].mean);
          CHECK(bins[b - 1].max <= bins[b].min);
          CHECK(bins[b - 1].count - bins[b].count <= 1);
        }
      }
      CHECK(total == n);
    }
  }
}

TEST_CASE("distribution") {
  SUBCASE("constant sample") {
    const std::vector<double> zeros(100, 0.0);
    const auto d = distribution(zeros);
    std::size_t occupied = 0;
    for (double x : d.densities) occupied += x > 0 ? 1 : 0;
    CHECK(occupied == 1);
    CHECK(integral(d) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(d.bin_edges.front() < 0.0);
    CHECK(d.bin_edges.back() > 0.0);
  }
  SUBCASE("uniform grid") {
    std::vector<double> grid;
    for (int i = 0; i < 5000; ++i) grid.push_back((i + 0.5) / 5000.0);
    grid.push_back(0.0);
    grid.push_back(1.0);
    const auto d = distribution(grid, 50);
    REQUIRE(d.densities.size() == 50);
    for (double x : d.densities) CHECK(x == doctest::Approx(1.0).epsilon(0.01));
  }
  SUBCASE("integrates to one with increasing edges") {
    std::mt19937_64 rng(13);
    std::normal_distribution<double> n(0.0, 0.1);
    for (int t = 0; t < 50; ++t) {
      std::vector<double> v(1 + t * 7);
      for (auto& x : v) x = n(rng);
      const auto d = distribution(v, 1 + t % 60);
      CHECK(std::fabs(integral(d) - 1.0) <= 1e-9);
      CHECK(d.sample_count == v.size());
      for (std::size_t j = 1; j < d.bin_edges.size(); ++j) CHECK(d.bin_edges[j - 1] < d.bin_edges[j]);
      for (double x : d.densities) CHECK(x >= 0.0);
    }
  }
  SUBCASE("subset on population edges") {
    const std::vector<double> all{0.0, 0.25, 0.5, 0.75, 1.0};
    const auto d = distribution(all, 4);
    const std::vector<double> top{0.5, 1.0, 2.0};
    const auto t = distribution_on_edges(top, d.bin_edges);
    CHECK(t.bin_edges == d.bin_edges);
    CHECK(t.sample_count == 2);
    CHECK(integral(t) == doctest::Approx(1.0));
  }
}

TEST_CASE("top comparison") {
  const std::vector<AntifragilityResult> results{result("A", 0.2), result("B", 0.0)};
  const AntifragilityCase c{kYear, MeasureId::afp, TimeScale::daily, results};
  SUBCASE("single case") {
    const std::vector<TopPerformerList> top{{2014, {"A"}, ""}};
    const auto s = top_comparison(std::span(&c, 1), top);
    CHECK(s.cases_total == 1);
    CHECK(*s.fraction_top_greater == 1.0);
    CHECK(s.sum_diff_when_greater == doctest::Approx(0.1));
    CHECK(s.sum_diff_otherwise == 0.0);
    CHECK_FALSE(s.ratio.has_value());
  }
  SUBCASE("top set is everyone") {
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<AntifragilityResult> many;
    std::set<std::string> everyone;
    for (int i = 0; i < 37; ++i) {
      many.push_back(result("AG" + std::to_string(i), u(rng)));
      everyone.insert(many.back().agent_id);
    }
    std::vector<AntifragilityCase> cases;
    for (MeasureId m : {MeasureId::afp, MeasureId::afv}) cases.push_back({kYear, m, TimeScale::weekly, many});
    const std::vector<TopPerformerList> top{{2014, everyone, ""}};
    const auto s = top_comparison(cases, top);
    CHECK(s.cases_total == 2);
    CHECK(*s.fraction_top_greater == 0.0);
    CHECK(s.sum_diff_when_greater == 0.0);
    CHECK(s.sum_diff_otherwise == 0.0);
    for (const auto& cc : s.cases) CHECK(cc.mean_top == cc.mean_all);
  }
  SUBCASE("case without live top performer is skipped") {
    const std::vector<TopPerformerList> top{{2015, {"A"}, ""}};
    const auto s = top_comparison(std::span(&c, 1), top);
    CHECK(s.cases_total == 0);
    CHECK_FALSE(s.fraction_top_greater.has_value());
    CHECK(s.skipped.size() == 1);
  }
}

TEST_CASE("scatter export and correlations") {
  const std::vector<AntifragilityResult> results{result("A", 0.2), result("B", -0.1)};
  const AntifragilityCase c{kYear, MeasureId::afv, TimeScale::monthly, results};
  std::map<std::string, PerformanceRecord> perf;
  perf["A"].agent_id = "A";
  perf["A"].age_days = 100;
  perf["A"].pr_mea = 3.0;
  perf["B"].agent_id = "B";
  perf["B"].age_days = 50;
  perf["B"].pr_mea = 1.0;
  const std::vector<PerfVariable> vars{PerfVariable::age, PerfVariable::pr_mea};
  const auto rows = scatter_export(c, perf, vars);
  REQUIRE(rows.size() == 4);
  CHECK(rows[0].agent_id == "A");
  CHECK(rows[0].variable == PerfVariable::age);
  CHECK(rows[1].variable == PerfVariable::pr_mea);
  CHECK(rows[3].value == 1.0);

  perf["B"].pr_mea.reset();
  CHECK(scatter_export(c, perf, vars).size() == 3);

  const auto corr = correlations(c, perf, vars);
  REQUIRE(corr.size() == 2);
  CHECK(corr[0].n == 2);
  CHECK(*corr[0].r == doctest::Approx(1.0));
  CHECK(corr[1].n == 1);
  CHECK_FALSE(corr[1].r.has_value());
}
