#include "qlc/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qlc {

namespace {

void require_pairable(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw StatsError("series lengths differ");
  if (x.size() < 2) throw StatsError("correlation undefined: zero variance with fewer than two values");
}

double sorted_percentile(const std::vector<double>& s, double p) {
  const double h = (static_cast<double>(s.size()) - 1.0) * p / 100.0;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, s.size() - 1);
  return s[lo] + (h - static_cast<double>(lo)) * (s[hi] - s[lo]);
}

// tied pairs within runs of equal values of a sorted sequence
template <class Eq>
std::uint64_t tied_pairs(std::size_t n, Eq eq) {
  std::uint64_t t = 0, run = 1;
  for (std::size_t i = 1; i <= n; ++i) {
    if (i < n && eq(i - 1, i)) {
      ++run;
    } else {
      t += run * (run - 1) / 2;
      run = 1;
    }
  }
  return t;
}

std::uint64_t merge_count(std::vector<double>& v, std::vector<double>& buf, std::size_t lo,
                          std::size_t hi) {
  if (hi - lo < 2) return 0;
  const std::size_t mid = lo + (hi - lo) / 2;
  std::uint64_t swaps = merge_count(v, buf, lo, mid) + merge_count(v, buf, mid, hi);
  std::size_t i = lo, j = mid, k = lo;
  while (i < mid && j < hi) {
    if (v[j] < v[i]) {
      swaps += mid - i;
      buf[k++] = v[j++];
    } else {
      buf[k++] = v[i++];
    }
  }
  while (i < mid) buf[k++] = v[i++];
  while (j < hi) buf[k++] = v[j++];
  std::copy(buf.begin() + static_cast<std::ptrdiff_t>(lo), buf.begin() + static_cast<std::ptrdiff_t>(hi),
            v.begin() + static_cast<std::ptrdiff_t>(lo));
  return swaps;
}

}  // namespace

double percentile(std::span<const double> x, double p) {
  if (x.empty()) throw StatsError("percentile of an empty series");
  if (p < 0.0 || p > 100.0) throw StatsError("percentile outside [0, 100]");
  std::vector<double> s(x.begin(), x.end());
  std::sort(s.begin(), s.end());
  return sorted_percentile(s, p);
}

Summary summarize(std::span<const double> x, Dispersion dispersion) {
  if (x.size() < 2) throw StatsError("summary needs at least two values");
  const auto n = static_cast<double>(x.size());
  Summary s;
  s.mean = std::accumulate(x.begin(), x.end(), 0.0) / n;
  double m2 = 0.0, m3 = 0.0, m4 = 0.0;
  for (double v : x) {
    const double e = v - s.mean;
    m2 += e * e;
    m3 += e * e * e;
    m4 += e * e * e * e;
  }
  m2 /= n;
  m3 /= n;
  m4 /= n;
  s.variance = dispersion == Dispersion::Sample ? m2 * n / (n - 1.0) : m2;
  s.std = std::sqrt(s.variance);

  std::vector<double> sorted(x.begin(), x.end());
  std::sort(sorted.begin(), sorted.end());
  s.median = sorted_percentile(sorted, 50.0);
  s.iqr = sorted_percentile(sorted, 75.0) - sorted_percentile(sorted, 25.0);
  s.range = sorted.back() - sorted.front();

  std::size_t best = 0;
  for (std::size_t i = 0; i < sorted.size();) {
    std::size_t j = i;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    if (j - i > best) {
      best = j - i;
      s.mode = sorted[i];
    }
    i = j;
  }

  // relative guard so rounding noise on a constant series reads as constant
  const double scale = std::max(1.0, s.mean * s.mean);
  if (m2 > 1e-24 * scale) {
    s.skewness = m3 / std::pow(m2, 1.5);
    s.kurtosis = m4 / (m2 * m2) - 3.0;
  }
  return s;
}

double pearson(std::span<const double> x, std::span<const double> y) {
  require_pairable(x, y);
  const auto n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) throw StatsError("correlation undefined: zero variance");
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

double kendall_tau(std::span<const double> x, std::span<const double> y) {
  require_pairable(x, y);
  const std::size_t n = x.size();
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return x[a] != x[b] ? x[a] < x[b] : y[a] < y[b];
  });
  const std::uint64_t n0 = std::uint64_t{n} * (n - 1) / 2;
  const std::uint64_t tx = tied_pairs(n, [&](std::size_t a, std::size_t b) {
    return x[idx[a]] == x[idx[b]];
  });
  const std::uint64_t txy = tied_pairs(n, [&](std::size_t a, std::size_t b) {
    return x[idx[a]] == x[idx[b]] && y[idx[a]] == y[idx[b]];
  });
  std::vector<double> ys(n), buf(n);
  for (std::size_t i = 0; i < n; ++i) ys[i] = y[idx[i]];
  const std::uint64_t swaps = merge_count(ys, buf, 0, n);
  const std::uint64_t ty = tied_pairs(n, [&](std::size_t a, std::size_t b) { return ys[a] == ys[b]; });

  // P + Q + Tx = n0 - ty, P + Q + Ty = n0 - tx
  const double den = std::sqrt(static_cast<double>(n0 - tx)) * std::sqrt(static_cast<double>(n0 - ty));
  if (den == 0.0) throw StatsError("Kendall tau undefined: every pair is tied");
  const double diff = static_cast<double>(n0) - static_cast<double>(tx) - static_cast<double>(ty) +
                      static_cast<double>(txy) - 2.0 * static_cast<double>(swaps);
  return std::clamp(diff / den, -1.0, 1.0);
}

std::string_view to_string(EsMode m) {
  switch (m) {
    case EsMode::Lower: return "lower";
    case EsMode::Mid: return "mid";
    case EsMode::Upper: return "upper";
  }
  return "?";
}

EsMode parse_es_mode(std::string_view s) {
  if (s == "lower") return EsMode::Lower;
  if (s == "mid") return EsMode::Mid;
  if (s == "upper") return EsMode::Upper;
  throw StatsError("unknown E_S mode '" + std::string(s) + "' (lower|mid|upper)");
}

double es_value(const SchmidtBounds& b, EsMode mode) {
  switch (mode) {
    case EsMode::Lower: return b.lower;
    case EsMode::Mid: return 0.5 * (b.lower + b.upper);
    case EsMode::Upper: return b.upper;
  }
  return b.lower;
}

std::string_view to_string(Observable o) {
  switch (o) {
    case Observable::ChiOG: return "chi_OG";
    case Observable::SelfLoops: return "N_L";
    case Observable::ChiI: return "chi_i";
    case Observable::Density: return "D";
    case Observable::Aspl: return "<d_OG>";
    case Observable::Diameter: return "d_OG^max";
    case Observable::DegGMin: return "deg(g)_min";
    case Observable::DegOGMax: return "deg(OG)_max";
    case Observable::ES: return "E_S";
  }
  return "?";
}

std::vector<double> series(const std::vector<StatRow>& rows, Observable o, EsMode mode) {
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& r : rows) {
    switch (o) {
      case Observable::ChiOG: out.push_back(r.obs.chi_og); break;
      case Observable::SelfLoops: out.push_back(static_cast<double>(r.obs.self_loops)); break;
      case Observable::ChiI: out.push_back(r.obs.chi_i); break;
      case Observable::Density: out.push_back(r.obs.density); break;
      case Observable::Aspl: out.push_back(r.obs.aspl); break;
      case Observable::Diameter: out.push_back(r.obs.diameter); break;
      case Observable::DegGMin: out.push_back(r.obs.deg_g_min); break;
      case Observable::DegOGMax: out.push_back(r.obs.deg_og_max); break;
      case Observable::ES: out.push_back(es_value(r.es, mode)); break;
    }
  }
  return out;
}

std::vector<SummaryLine> summary_table(const std::vector<StatRow>& rows, EsMode mode,
                                       Dispersion dispersion) {
  std::vector<SummaryLine> out;
  for (auto o : {Observable::ChiOG, Observable::SelfLoops, Observable::ChiI, Observable::Density,
                 Observable::Aspl, Observable::Diameter, Observable::DegGMin, Observable::DegOGMax,
                 Observable::ES})
    out.push_back({o, summarize(series(rows, o, mode), dispersion)});
  return out;
}

std::vector<CorrelationPair> default_correlation_pairs() {
  using O = Observable;
  return {
      {{O::ES}, {O::ChiOG}},
      {{O::ES}, {O::Density, true}},
      {{O::ES}, {O::Aspl}},
      {{O::ES}, {O::Diameter}},
      {{O::ES}, {O::DegOGMax}},
      {{O::DegOGMax}, {O::ChiOG}},
      {{O::DegOGMax, true}, {O::Density}},
      {{O::DegOGMax}, {O::Aspl}},
      {{O::DegOGMax}, {O::Diameter}},
      {{O::Aspl}, {O::Diameter}},
      {{O::Density, true}, {O::Diameter}},
      {{O::Density, true}, {O::Aspl}},
      {{O::ChiOG}, {O::Diameter, true}},
      {{O::ChiOG}, {O::Aspl, true}},
      {{O::ChiOG}, {O::Density, true}},
  };
}

std::string label(const SeriesRef& s) {
  return (s.log ? "ln " : "") + std::string(to_string(s.observable));
}

namespace {

std::vector<double> resolve(const std::vector<StatRow>& rows, const SeriesRef& s, EsMode mode) {
  auto v = series(rows, s.observable, mode);
  if (s.log)
    for (double& x : v) {
      if (!(x > 0.0)) throw StatsError("log of non-positive value in " + label(s));
      x = std::log(x);
    }
  return v;
}

}  // namespace

std::vector<CorrelationLine> correlation_table(const std::vector<StatRow>& rows,
                                               const std::vector<CorrelationPair>& pairs,
                                               EsMode mode) {
  std::vector<CorrelationLine> out;
  for (const auto& p : pairs) {
    const auto x = resolve(rows, p.x, mode);
    const auto y = resolve(rows, p.y, mode);
    CorrelationLine line{p, 0.0, 0.0, false};
    try {
      line.pearson = pearson(x, y);
      line.kendall = kendall_tau(x, y);
    } catch (const StatsError& e) {
      throw StatsError(label(p.x) + " vs " + label(p.y) + ": " + e.what());
    }
    line.strong = std::abs(line.pearson) > 0.8;
    out.push_back(line);
  }
  return out;
}

}  // namespace qlc
