// Acceptance criteria 1-8. Prints one line per criterion:
//   criterion <k>: PASS|FAIL|SKIP  <detail>
// Usage: qlc_acceptance [k ...]   (all criteria when none given)
// Criterion 4 (full n = 7) runs only with QLC_EXTENDED=1; QLC_EXTENDED_STORE
// names the store/checkpoint file it resumes from.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "qlc/atlas.hpp"
#include "qlc/canonical.hpp"
#include "qlc/enumerator.hpp"
#include "qlc/local_ops.hpp"
#include "qlc/observables.hpp"
#include "qlc/parallel.hpp"
#include "qlc/pipeline.hpp"
#include "qlc/schmidt.hpp"
#include "qlc/state.hpp"
#include "qlc/stats.hpp"
#include "qlc/store.hpp"

using namespace qlc;

namespace {

enum class Status { Pass, Fail, Skip };

struct Outcome {
  Status status = Status::Pass;
  std::string detail;
};

class Timer {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

// mismatch bookkeeping per column
struct Mismatches {
  std::vector<std::string> lines;
  std::map<std::string, int> per_column;

  void check(bool ok, unsigned orbit, const std::string& column, const std::string& got,
             const std::string& want) {
    if (ok) return;
    ++per_column[column];
    lines.push_back("  orbit " + std::to_string(orbit) + " " + column + ": got " + got + ", table " + want);
  }
  std::string summary() const {
    std::string s;
    for (const auto& [c, k] : per_column) s += (s.empty() ? "" : ", ") + c + " x" + std::to_string(k);
    return s;
  }
};

void compare_row(Mismatches& mm, const oracle::TableRow& t, const ObservableRow& r, bool exact_distances) {
  auto u = [](auto x) { return std::to_string(x); };
  mm.check(r.chi_og == t.chi_og, t.orbit, "chi_OG", u(r.chi_og), u(t.chi_og));
  mm.check(fmt("%.2f", r.ln_loops) == fmt("%.2f", t.ln_loops), t.orbit, "ln(N_L+1)", fmt("%.2f", r.ln_loops),
           fmt("%.2f", t.ln_loops));
  mm.check(r.chi_i == t.chi_i, t.orbit, "chi_i", u(r.chi_i), u(t.chi_i));
  mm.check(fmt("%.5f", r.density) == fmt("%.5f", t.density), t.orbit, "D", fmt("%.5f", r.density),
           fmt("%.5f", t.density));
  if (exact_distances || r.aspl_exact)
    mm.check(fmt("%.2f", r.aspl) == fmt("%.2f", t.aspl), t.orbit, "<d_OG>", fmt("%.2f", r.aspl), fmt("%.2f", t.aspl));
  else
    mm.check(std::fabs(r.aspl - t.aspl) <= 0.05, t.orbit, "<d_OG>~", fmt("%.3f", r.aspl), fmt("%.2f", t.aspl));
  mm.check(r.diameter == t.diameter, t.orbit, "d_OG^max", u(r.diameter), u(t.diameter));
  mm.check(r.deg_g_min == t.deg_g_min, t.orbit, "deg(g)_min", u(r.deg_g_min), u(t.deg_g_min));
  mm.check(r.deg_og_max == t.deg_og_max, t.orbit, "deg(OG)_max", u(r.deg_og_max), u(t.deg_og_max));
}

const std::vector<oracle::TableRow>& table1() {
  static const auto t = oracle::read_table1(QLC_TABLE1);
  return t;
}

OrbitStore store_3_6() {
  static const OrbitStore s = [] {
    OrbitsOptions o;
    o.n_min = 3;
    o.n = 6;
    o.d = 3;
    auto st = build_orbit_store(o);
    TableOptions t;
    compute_table(st, t);
    return st;
  }();
  return s;
}

// ---- 1
Outcome census() {
  Timer t;
  const std::vector<std::vector<std::size_t>> want = {
      {7}, {10, 37, 6}, {11, 88, 255, 219, 139}, {}};
  std::vector<std::size_t> n6;
  for (std::size_t i = 9; i < 30; ++i) n6.push_back(table1()[i].V);
  Outcome out;
  std::ostringstream d;
  for (unsigned n = 3; n <= 6; ++n) {
    std::vector<std::size_t> got;
    for (const auto& r : classify(n, n, 3, resolve_jobs(0))) got.push_back(r.og.size());
    const auto& expect = n == 6 ? n6 : want[n - 3];
    d << "n=" << n << ":" << got.size() << " ";
    if (got != expect) {
      out.status = Status::Fail;
      d << "(sizes differ) ";
    }
  }
  d << fmt("in %.1fs", t.seconds());
  if (t.seconds() > 600) out.status = Status::Fail;
  out.detail = d.str();
  return out;
}

// ---- 2
Outcome observable_table() {
  const auto s = store_3_6();
  Mismatches mm;
  for (std::size_t i = 0; i < 30; ++i) compare_row(mm, table1()[i], *s.orbits[i].observables, true);

  // rows 1-9 byte for byte against the shipped CSV
  std::istringstream csv(table_csv(s));
  std::string line;
  std::getline(csv, line);
  int identical = 0;
  for (std::size_t i = 0; i < 9 && std::getline(csv, line); ++i) {
    if (line == table1()[i].line) ++identical;
    else mm.lines.push_back("  csv row " + std::to_string(i + 1) + ": " + line + "  vs  " + table1()[i].line);
  }
  Outcome out;
  out.status = mm.per_column.empty() && identical == 9 ? Status::Pass : Status::Fail;
  out.detail = "30 rows; " + (mm.per_column.empty() ? std::string("all columns match") : "mismatches: " + mm.summary()) +
               "; csv rows 1-9 identical: " + std::to_string(identical) + "/9";
  for (const auto& l : mm.lines) out.detail += "\n" + l;
  return out;
}

// ---- 3
Outcome schmidt_column() {
  const auto s = store_3_6();
  Outcome out;
  int ok = 0;
  for (std::size_t i = 0; i < 30; ++i) {
    const auto& b = *s.orbits[i].schmidt;
    const auto& t = table1()[i];
    if (b.lower == t.es_lower && b.upper == t.es_upper) ++ok;
    else out.detail += "\n  orbit " + std::to_string(i + 1) + ": got " + b.to_string() + ", table " + t.es_text;
  }
  const bool o8 = s.orbits[7].schmidt->to_string() == "(2, 3)";
  const bool o29 = s.orbits[28].schmidt->to_string() == "(3, 4)";
  out.status = ok == 30 && o8 && o29 ? Status::Pass : Status::Fail;
  out.detail = std::to_string(ok) + "/30 rows match; orbit 8 " + s.orbits[7].schmidt->to_string() + ", orbit 29 " +
               s.orbits[28].schmidt->to_string() + out.detail;
  return out;
}

// ---- 4
Outcome extended() {
  const char* flag = std::getenv("QLC_EXTENDED");
  if (!flag || std::string(flag) != "1") return {Status::Skip, "set QLC_EXTENDED=1 for the full n=7 run"};
  Timer t;
  const char* sp = std::getenv("QLC_EXTENDED_STORE");
  const std::filesystem::path store_path = sp ? sp : "qlc_extended_n7.qlc";
  OrbitStore s;
  if (std::filesystem::exists(store_path)) {
    s = read_store(store_path);
  } else {
    OrbitsOptions o;
    o.n_min = 3;
    o.n = 7;
    o.d = 3;
    o.store = store_path;
    o.checkpoint = default_checkpoint_path(store_path);
    o.checkpoint_every = 200000;
    o.log = [](const std::string& m) { std::cerr << m << std::endl; };
    s = build_orbit_store(o);
  }
  bool missing = false;
  for (const auto& r : s.orbits) missing |= !r.observables || !r.schmidt;
  if (missing) {
    TableOptions to;
    to.log = [](const std::string& m) { std::cerr << m << std::endl; };
    compute_table(s, to);
    write_store(store_path, s);
  }
  Outcome out;
  std::ostringstream d;
  d << s.orbits.size() << " orbits";
  if (s.orbits.size() != 103) {
    out.status = Status::Fail;
    out.detail = d.str();
    return out;
  }
  Mismatches mm;
  int es_ok = 0;
  for (std::size_t i = 30; i < 103; ++i) {
    compare_row(mm, table1()[i], *s.orbits[i].observables, false);
    if (s.orbits[i].og.size() != table1()[i].V) mm.check(false, i + 1, "|V|", std::to_string(s.orbits[i].og.size()), std::to_string(table1()[i].V));
    if (s.orbits[i].representative_edges != table1()[i].e) mm.check(false, i + 1, "|e|", std::to_string(s.orbits[i].representative_edges), std::to_string(table1()[i].e));
    const auto& b = *s.orbits[i].schmidt;
    if (b.lower == table1()[i].es_lower && b.upper == table1()[i].es_upper) ++es_ok;
    else mm.check(false, i + 1, "E_S", b.to_string(), table1()[i].es_text);
  }
  d << "; rows 31-103 " << (mm.per_column.empty() ? std::string("match") : "mismatches: " + mm.summary());

  // Tables II and III under each interval mode
  const double t2[8][9] = {
      {9.12, 2.45, 6.01, 10.00, 10.00, 9.00, 3.00, -0.89, 0.14},
      {2674.96, 4912.78, 24135405.61, 507.00, 108.00, 22632.00, 2245.00, 2.77, 7.46},
      {2.40, 0.49, 0.24, 2.00, 2.00, 1.00, 1.00, 0.42, -1.83},
      {0.0571, 0.1675, 0.0281, 0.0050, 0.0003, 1.1333, 0.0230, 4.5329, 21.8993},
      {3.85, 1.03, 1.05, 4.07, 2.84, 4.62, 1.53, -0.40, -0.37},
      {6.42, 1.55, 2.40, 7.00, 7.00, 7.00, 1.00, -0.67, 0.50},
      {3.77, 0.80, 0.64, 4.00, 4.00, 4.00, 1.00, 0.56, 0.78},
      {17.96, 4.21, 17.69, 20.00, 21.00, 17.00, 4.00, -1.67, 2.23},
  };
  const double es2[9] = {2.84, 0.65, 0.42, 3.00, 3.00, 2.50, 0.50, -1.24, 0.95};
  const double t3[15][2] = {
      {0.86, 0.74},   {-0.82, -0.71}, {0.81, 0.67}, {0.81, 0.72}, {0.87, 0.72},
      {0.92, 0.81},   {-0.89, -0.76}, {0.85, 0.71}, {0.85, 0.74}, {0.94, 0.84},
      {-0.94, -0.84}, {-0.99, -0.90}, {0.85, 0.73}, {0.88, 0.69}, {-0.91, -0.78},
  };
  const auto rows = stat_rows(s);
  bool any_mode = false;
  for (EsMode m : {EsMode::Lower, EsMode::Mid, EsMode::Upper}) {
    int bad2 = 0, bad3 = 0;
    const auto summary = summary_table(rows, m);
    for (const auto& line : summary) {
      const double* want = nullptr;
      switch (line.observable) {
        case Observable::ChiOG: want = t2[0]; break;
        case Observable::SelfLoops: want = t2[1]; break;
        case Observable::ChiI: want = t2[2]; break;
        case Observable::Density: want = t2[3]; break;
        case Observable::Aspl: want = t2[4]; break;
        case Observable::Diameter: want = t2[5]; break;
        case Observable::DegGMin: want = t2[6]; break;
        case Observable::DegOGMax: want = t2[7]; break;
        case Observable::ES: want = es2; break;
      }
      const auto& v = line.summary;
      const double got[9] = {v.mean, v.std, v.variance, v.median, v.mode, v.range, v.iqr, v.skewness, v.kurtosis};
      for (int k = 0; k < 9; ++k)
        if (std::fabs(got[k] - want[k]) > 0.01) ++bad2;
    }
    const auto corr = correlation_table(rows, default_correlation_pairs(), m);
    for (std::size_t i = 0; i < corr.size(); ++i)
      if (std::fabs(corr[i].pearson - t3[i][0]) > 0.01 || std::fabs(corr[i].kendall - t3[i][1]) > 0.01) ++bad3;
    d << "; " << to_string(m) << ": table II off " << bad2 << "/81, table III off " << bad3 << "/15";
    any_mode |= bad2 == 0 && bad3 == 0;
  }
  d << fmt("; %.0fs", t.seconds());
  out.status = mm.per_column.empty() && any_mode ? Status::Pass : Status::Fail;
  out.detail = d.str();
  for (const auto& l : mm.lines) out.detail += "\n" + l;
  return out;
}

// ---- 5
Outcome verify() {
  Timer t;
  std::ostringstream d;
  bool ok = true;
  for (unsigned dd : {2u, 3u}) {
    const auto r = verify_sweep(3, dd, 1e-10);
    ok &= r.failures == 0 && r.max_deviation <= 1e-10;
    d << "d=" << dd << ": " << r.cases << " checks, " << r.failures << " failures, max 1-F "
      << fmt("%.1e", r.max_deviation) << "; ";
  }
  d << fmt("%.1fs", t.seconds());
  return {ok && t.seconds() <= 60 ? Status::Pass : Status::Fail, d.str()};
}

// ---- 6
Outcome schmidt_rank_oracle() {
  Timer t;
  std::size_t checks = 0, bad = 0;
  for (unsigned n = 2; n <= 4; ++n)
    for (const auto& c : enumerate_weighted_connected(n, 3).codes) {
      const auto g = decode(c);
      const auto state = build_graph_state(g);
      for (std::uint32_t a = 1; a + 1 < (1u << n); ++a) {
        std::vector<std::vector<unsigned>> block;
        for (unsigned u = 0; u < n; ++u) {
          if (!(a >> u & 1)) continue;
          std::vector<unsigned> row;
          for (unsigned v = 0; v < n; ++v)
            if (!(a >> v & 1)) row.push_back(g.weight(u, v));
          block.push_back(row);
        }
        unsigned rank = schmidt_rank_across(state, a), k = 0;
        while (rank > 1) {
          rank /= 3;
          ++k;
        }
        ++checks;
        bad += k != oracle::rank_by_span(block, 3);
      }
    }
  return {bad == 0 && t.seconds() <= 300 ? Status::Pass : Status::Fail,
          std::to_string(checks) + " bipartitions, " + std::to_string(bad) + " mismatches" + fmt(", %.1fs", t.seconds())};
}

// ---- 7
Outcome qubit() {
  const std::size_t want[] = {1, 1, 2, 4, 11, 26};
  Outcome out;
  std::ostringstream d;
  d << "counts";
  for (unsigned n = 2; n <= 7; ++n) {
    const auto o = classify(n, n, 2, resolve_jobs(0));
    d << ' ' << o.size();
    if (o.size() != want[n - 2]) out.status = Status::Fail;
    std::vector<std::size_t> sizes;
    std::size_t total = 0;
    for (const auto& r : o) {
      sizes.push_back(r.og.size());
      total += r.og.size();
    }
    std::sort(sizes.begin(), sizes.end());
    if (n <= 6 && sizes != oracle::lc_class_sizes(n, 2)) {
      out.status = Status::Fail;
      d << "(oracle differs)";
    }
    if (total != enumerate_weighted_connected(n, 2).codes.size()) {
      out.status = Status::Fail;
      d << "(partition incomplete)";
    }
  }
  d << "; oracle agrees for n <= 6";
  out.detail = d.str();
  return out;
}

// ---- 8
Outcome properties() {
  std::vector<std::string> failed;
  auto expect = [&](bool ok, const std::string& what) {
    if (!ok) failed.push_back(what);
  };
  std::mt19937 rng(2024);

  // field and matrix
  for (unsigned d : {2u, 3u, 5u, 7u, 11u, 13u}) {
    const Field f(d);
    for (unsigned a = 1; a < d; ++a) expect(f.inv(f.inv(a)) == a && f.mul(a, f.inv(a)) == 1, "field inverse");
  }
  for (int t = 0; t < 200; ++t) {
    const unsigned d = t % 2 ? 3 : 5;
    const std::size_t r = 1 + rng() % 4, c = 1 + rng() % 4;
    std::vector<unsigned> e(r * c);
    std::vector<std::vector<unsigned>> rows(r, std::vector<unsigned>(c));
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) e[i * c + j] = rows[i][j] = rng() % d;
    const FieldMatrix m(Field(d), r, c, e);
    expect(matrix_rank(m) == oracle::rank_by_span(rows, d), "rank oracle");
    expect(matrix_rank(m) == matrix_rank(m.transposed()), "rank transpose");
  }

  // canonical form
  for (unsigned d : {2u, 3u})
    for (unsigned n = 2; n <= 6; ++n)
      for (int t = 0; t < 20; ++t) {
        std::vector<unsigned> up(n * (n - 1) / 2);
        for (auto& w : up) w = rng() % d;
        const auto g = WeightedGraph::from_upper(n, Field(d), up);
        std::vector<unsigned> perm(n);
        std::iota(perm.begin(), perm.end(), 0u);
        std::shuffle(perm.begin(), perm.end(), rng);
        expect(canonical_code(g.permuted(perm)) == canonical_code(g), "canonical invariance");
        expect(canonical_code(g) == canonical_form_scan(g).code, "canonical vs scan");
      }

  // inverse pairs and connectedness, exhaustive for n <= 5, d = 3
  std::size_t graphs = 0;
  for (unsigned n = 2; n <= 5; ++n) {
    const oracle::Labeled L(n, 3);
    for (std::uint64_t id = 0; id < L.count(); ++id) {
      const auto g = WeightedGraph::from_upper(n, Field(3), L.unpack(id));
      const bool c = is_connected(g);
      ++graphs;
      for (unsigned w = 0; w < n; ++w)
        for (unsigned gamma = 1; gamma < 3; ++gamma) {
          const auto lc = local_complementation(g, w, gamma);
          const auto sc = local_scaling(g, w, gamma);
          expect(local_complementation(lc, w, 3 - gamma) == g, "complementation inverse");
          expect(local_scaling(sc, w, Field(3).inv(gamma)) == g, "scaling inverse");
          expect(is_connected(lc) == c && is_connected(sc) == c, "connectedness");
        }
    }
  }

  // Kendall
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 3 + rng() % 30;
    std::vector<double> x(n), y(n);
    for (auto& v : x) v = rng() % 4;
    for (auto& v : y) v = rng() % 6;
    const double ref = oracle::kendall_pairs(x, y);
    if (!std::isfinite(ref)) continue;
    expect(std::fabs(kendall_tau(x, y) - ref) < 1e-12, "kendall oracle");
  }

  // store round trip
  OrbitsOptions o;
  o.n_min = 3;
  o.n = 5;
  o.d = 3;
  const auto a = serialize_store(build_orbit_store(o));
  o.jobs = 2;
  const auto b = serialize_store(build_orbit_store(o));
  expect(a == b, "store determinism");
  expect(serialize_store(parse_store(a)) == a, "store round trip");

  std::string detail = std::to_string(graphs) + " labeled graphs swept; ";
  if (failed.empty()) return {Status::Pass, detail + "zero failures"};
  std::sort(failed.begin(), failed.end());
  failed.erase(std::unique(failed.begin(), failed.end()), failed.end());
  for (const auto& f : failed) detail += f + " ";
  return {Status::Fail, detail};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"orbit census n=3..6", census},
      {"observable table rows 1-30", observable_table},
      {"Schmidt column rows 1-30", schmidt_column},
      {"extended n=7 run", extended},
      {"unitary-graphical equivalence", verify},
      {"Schmidt-rank oracle", schmidt_rank_oracle},
      {"qubit regression", qubit},
      {"property suites", properties},
  };
  std::vector<int> which;
  for (int i = 1; i < argc; ++i) which.push_back(std::atoi(argv[i]));
  if (which.empty())
    for (int k = 1; k <= 8; ++k) which.push_back(k);

  int failures = 0;
  for (int k : which) {
    if (k < 1 || k > 8) {
      std::cerr << "unknown criterion " << k << '\n';
      return 2;
    }
    Outcome o;
    try {
      o = criteria[k - 1].second();
    } catch (const std::exception& e) {
      o = {Status::Fail, std::string("exception: ") + e.what()};
    }
    const char* tag = o.status == Status::Pass ? "PASS" : o.status == Status::Fail ? "FAIL" : "SKIP";
    std::cout << "criterion " << k << ": " << tag << "  " << criteria[k - 1].first << "; " << o.detail << std::endl;
    failures += o.status == Status::Fail;
  }
  return failures == 0 ? 0 : 1;
}
