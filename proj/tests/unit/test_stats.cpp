#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "qlc/stats.hpp"

using namespace qlc;

namespace {
std::vector<StatRow> table1_rows() {
  std::vector<StatRow> rows;
  for (const auto& t : oracle::read_table1(QLC_TABLE1)) {
    StatRow r;
    r.obs.chi_og = t.chi_og;
    r.obs.ln_loops = t.ln_loops;
    r.obs.self_loops = static_cast<std::uint64_t>(std::llround(std::exp(t.ln_loops) - 1));
    r.obs.chi_i = t.chi_i;
    r.obs.density = t.density;
    r.obs.aspl = t.aspl;
    r.obs.diameter = t.diameter;
    r.obs.deg_g_min = t.deg_g_min;
    r.obs.deg_og_max = t.deg_og_max;
    r.es = {t.es_lower, t.es_upper};
    rows.push_back(r);
  }
  return rows;
}

// printed value `p` with `dp` decimals, allowing for the rounding of Table I inputs
bool matches(double x, double p, int dp, double slack) {
  return std::fabs(x - p) <= 0.5 * std::pow(10.0, -dp) + slack;
}
}  // namespace

TEST_CASE("summary of a constant series") {
  const std::vector<double> x(5, 4.0);
  const auto s = summarize(x);
  CHECK(s.mean == 4.0);
  CHECK(s.std == 0.0);
  CHECK(s.median == 4.0);
  CHECK(s.mode == 4.0);
  CHECK(s.range == 0.0);
  CHECK(s.iqr == 0.0);
  CHECK(s.skewness == 0.0);
  CHECK(s.kurtosis == 0.0);
  CHECK_THROWS_AS(summarize(std::vector<double>{1.0}), StatsError);
}

TEST_CASE("summary examples") {
  const std::vector<double> x{1, 2, 2, 3, 4, 7, 9};
  const auto p = summarize(x);
  CHECK(p.mean == doctest::Approx(4.0));
  CHECK(p.variance == doctest::Approx(52.0 / 7.0));
  CHECK(summarize(x, Dispersion::Sample).variance == doctest::Approx(52.0 / 6.0));
  CHECK(p.median == 3.0);
  CHECK(p.mode == 2.0);
  CHECK(p.range == 8.0);
  CHECK(p.iqr == doctest::Approx(5.5 - 2.0));
  CHECK(percentile(x, 50) == 3.0);
  CHECK(percentile(x, 0) == 1.0);
  CHECK(percentile(x, 100) == 9.0);
  CHECK(p.skewness > 0);
  CHECK(summarize(std::vector<double>{1, 1, 2, 2}).mode == 1.0);
}

TEST_CASE("correlation identities") {
  const std::vector<double> x{1, 3, 2, 5, 4, 8};
  std::vector<double> neg, affine, cubed;
  for (double v : x) {
    neg.push_back(-v);
    affine.push_back(3 * v - 7);
    cubed.push_back(v * v * v);
  }
  CHECK(pearson(x, x) == doctest::Approx(1.0));
  CHECK(pearson(x, neg) == doctest::Approx(-1.0));
  CHECK(pearson(x, affine) == doctest::Approx(1.0));
  CHECK(kendall_tau(x, x) == doctest::Approx(1.0));
  CHECK(kendall_tau(x, neg) == doctest::Approx(-1.0));
  CHECK(kendall_tau(x, cubed) == doctest::Approx(1.0));
  const std::vector<double> c(6, 2.0);
  CHECK_THROWS_AS(pearson(x, c), StatsError);
  CHECK_THROWS_AS(kendall_tau(c, x), StatsError);
  CHECK_THROWS_AS(pearson(std::vector<double>{1}, std::vector<double>{2}), StatsError);
}

TEST_CASE("Kendall tau-b matches pairwise counting") {
  std::mt19937 rng(41);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 2 + rng() % 40;
    std::vector<double> x(n), y(n);
    for (auto& v : x) v = rng() % 5;
    for (auto& v : y) v = rng() % 4;
    const double ref = oracle::kendall_pairs(x, y);
    if (!std::isfinite(ref)) {
      CHECK_THROWS_AS(kendall_tau(x, y), StatsError);
      continue;
    }
    const double tau = kendall_tau(x, y);
    CHECK(tau == doctest::Approx(ref).epsilon(1e-12));
    CHECK(tau >= -1.0);
    CHECK(tau <= 1.0);
    const double r = pearson(x, y);
    CHECK(std::fabs(r) <= 1.0 + 1e-12);
  }
}

TEST_CASE("E_S interval modes") {
  const SchmidtBounds b{2, 3};
  CHECK(es_value(b, EsMode::Lower) == 2.0);
  CHECK(es_value(b, EsMode::Mid) == 2.5);
  CHECK(es_value(b, EsMode::Upper) == 3.0);
  CHECK(parse_es_mode("mid") == EsMode::Mid);
  CHECK_THROWS(parse_es_mode("middle"));
}

TEST_CASE("summary table from Table I data") {
  const auto rows = table1_rows();
  REQUIRE(rows.size() == 103);
  const auto table = summary_table(rows, EsMode::Mid);
  auto find = [&](Observable o) {
    for (const auto& l : table)
      if (l.observable == o) return l.summary;
    FAIL("missing observable");
    return Summary{};
  };
  const auto chi_i = find(Observable::ChiI);
  CHECK(matches(chi_i.mean, 2.40, 2, 0));
  CHECK(chi_i.median == 2.0);
  CHECK(chi_i.mode == 2.0);
  CHECK(chi_i.iqr == 1.0);
  const auto es = find(Observable::ES);
  CHECK(matches(es.mean, 2.84, 2, 0));
  CHECK(es.median == 3.0);

  struct Expect {
    Observable o;
    int dp;
    double v[9];  // mean std var median mode range iqr skew kurt
  };
  const Expect expected[] = {
      {Observable::ChiOG, 2, {9.12, 2.45, 6.01, 10.00, 10.00, 9.00, 3.00, -0.89, 0.14}},
      {Observable::ChiI, 2, {2.40, 0.49, 0.24, 2.00, 2.00, 1.00, 1.00, 0.42, -1.83}},
      {Observable::Density, 4, {0.0571, 0.1675, 0.0281, 0.0050, 0.0003, 1.1333, 0.0230, 4.5329, 21.8993}},
      {Observable::Aspl, 2, {3.85, 1.03, 1.05, 4.07, 2.84, 4.62, 1.53, -0.40, -0.37}},
      {Observable::Diameter, 2, {6.42, 1.55, 2.40, 7.00, 7.00, 7.00, 1.00, -0.67, 0.50}},
      {Observable::DegGMin, 2, {3.77, 0.80, 0.64, 4.00, 4.00, 4.00, 1.00, 0.56, 0.78}},
      {Observable::DegOGMax, 2, {17.96, 4.21, 17.69, 20.00, 21.00, 17.00, 4.00, -1.67, 2.23}},
      {Observable::ES, 2, {2.84, 0.65, 0.42, 3.00, 3.00, 2.50, 0.50, -1.24, 0.95}},
  };
  for (const auto& e : expected) {
    const auto s = find(e.o);
    const double got[9] = {s.mean, s.std, s.variance, s.median, s.mode, s.range, s.iqr, s.skewness, s.kurtosis};
    for (int k = 0; k < 9; ++k) {
      INFO(to_string(e.o), " statistic ", k, ": ", got[k], " vs ", e.v[k]);
      // ASPL and density enter already rounded; allow one unit of slack there
      const double slack = (e.o == Observable::Aspl || e.o == Observable::Density) ? std::pow(10.0, -e.dp) : 0.0;
      CHECK(matches(got[k], e.v[k], e.dp, slack));
    }
  }
}

TEST_CASE("correlation table from Table I data") {
  const auto lines = correlation_table(table1_rows(), default_correlation_pairs(), EsMode::Mid);
  const double expected[15][2] = {
      {0.86, 0.74},   {-0.82, -0.71}, {0.81, 0.67},  {0.81, 0.72},  {0.87, 0.72},
      {0.92, 0.81},   {-0.89, -0.76}, {0.85, 0.71},  {0.85, 0.74},  {0.94, 0.84},
      {-0.94, -0.84}, {-0.99, -0.90}, {0.85, 0.73},  {0.88, 0.69},  {-0.91, -0.78},
  };
  REQUIRE(lines.size() == 15);
  for (std::size_t i = 0; i < 15; ++i) {
    INFO(label(lines[i].pair.x), " vs ", label(lines[i].pair.y));
    CHECK(std::fabs(lines[i].pearson - expected[i][0]) <= 0.01);
    CHECK(std::fabs(lines[i].kendall - expected[i][1]) <= 0.01);
    CHECK(lines[i].strong);
  }
}

TEST_CASE("correlation errors name the pair") {
  std::vector<StatRow> rows(3);
  for (unsigned i = 0; i < 3; ++i) {
    rows[i].obs.chi_og = 2 + i;
    rows[i].obs.density = 0.0;
    rows[i].es = {i, i};
  }
  CHECK_THROWS_AS(correlation_table(rows, default_correlation_pairs(), EsMode::Lower), StatsError);
}
