#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qlc/observables_types.hpp"

namespace qlc {

class StatsError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Divisor for std and variance: N (Population) or N - 1 (Sample).
enum class Dispersion : std::uint8_t { Population, Sample };

struct Summary {
  double mean = 0.0;
  double std = 0.0;
  double variance = 0.0;
  double median = 0.0;
  double mode = 0.0;  // smallest of the most frequent values
  double range = 0.0;
  double iqr = 0.0;   // linear-interpolated 75th minus 25th percentile
  double skewness = 0.0;  // g1 = m3 / m2^(3/2); 0 for a constant series
  double kurtosis = 0.0;  // excess, g2 = m4 / m2^2 - 3; 0 for a constant series
};

/// Needs at least two values.
Summary summarize(std::span<const double> x, Dispersion dispersion = Dispersion::Population);

/// Percentile with linear interpolation between closest ranks, p in [0, 100].
double percentile(std::span<const double> x, double p);

/// Throws StatsError on length mismatch, fewer than two values or zero variance.
double pearson(std::span<const double> x, std::span<const double> y);

/// Tau-b: (P - Q) / sqrt((P + Q + Tx)(P + Q + Ty)), Tx and Ty counting pairs
/// tied in one series only. O(N log N). Throws StatsError when the
/// denominator vanishes.
double kendall_tau(std::span<const double> x, std::span<const double> y);

/// How an interval-valued Schmidt measure enters a numeric series.
enum class EsMode : std::uint8_t { Lower, Mid, Upper };
std::string_view to_string(EsMode m);
EsMode parse_es_mode(std::string_view s);
double es_value(const SchmidtBounds& b, EsMode mode);

/// One orbit's values as consumed by the statistics.
struct StatRow {
  ObservableRow obs;
  SchmidtBounds es;
};

enum class Observable : std::uint8_t {
  ChiOG, SelfLoops, ChiI, Density, Aspl, Diameter, DegGMin, DegOGMax, ES
};
std::string_view to_string(Observable o);

/// Column of `rows`; SelfLoops is the raw count N_L.
std::vector<double> series(const std::vector<StatRow>& rows, Observable o, EsMode mode);

struct SummaryLine {
  Observable observable;
  Summary summary;
};

/// One summary per observable, in Observable order.
std::vector<SummaryLine> summary_table(const std::vector<StatRow>& rows, EsMode mode,
                                       Dispersion dispersion = Dispersion::Population);

struct SeriesRef {
  Observable observable;
  bool log = false;  // natural log of the values
};

struct CorrelationPair {
  SeriesRef x;
  SeriesRef y;
};

/// The fifteen compared pairs, with their log transforms.
std::vector<CorrelationPair> default_correlation_pairs();

std::string label(const SeriesRef& s);

struct CorrelationLine {
  CorrelationPair pair;
  double pearson = 0.0;
  double kendall = 0.0;
  bool strong = false;  // |r| > 0.8
};

/// Throws StatsError if a coefficient is undefined (e.g. one orbit, or a
/// constant series) or a log transform meets a non-positive value.
std::vector<CorrelationLine> correlation_table(const std::vector<StatRow>& rows,
                                               const std::vector<CorrelationPair>& pairs,
                                               EsMode mode);

}  // namespace qlc
