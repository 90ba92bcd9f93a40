#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qlc/observables.hpp"
#include "qlc/schmidt.hpp"
#include "qlc/state.hpp"
#include "qlc/stats.hpp"
#include "qlc/store.hpp"

namespace qlc {

/// Bad flags, files or input values; the CLI exits with status 2.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// ---- enumerate

std::string enumeration_json(const Enumeration& e);

// ---- orbits

struct CheckpointEvent {
  unsigned n = 0;
  std::size_t done = 0;   // atlas vertices finished at this n
  std::size_t total = 0;
};

struct OrbitsOptions {
  unsigned n_min = 0;  // 0: same as n
  unsigned n = 3;
  unsigned d = 3;
  unsigned jobs = 0;
  bool edges = false;
  /// Atlas vertices between checkpoints; 0 disables checkpointing.
  std::size_t checkpoint_every = 0;
  std::filesystem::path checkpoint;
  /// Written atomically before the checkpoint is removed; optional.
  std::filesystem::path store;
  /// Called after each checkpoint is on disk.
  std::function<void(const CheckpointEvent&)> on_checkpoint;
  std::function<void(const std::string&)> log;
};

std::filesystem::path default_checkpoint_path(const std::filesystem::path& store);

/// Classifies every n in [n_min, n]. With a checkpoint path, resumes from an
/// existing checkpoint (which must match n_min, n, d, edges and the op
/// policy) and removes it once the store is complete. The result does not
/// depend on jobs, checkpoint_every, or interruptions.
OrbitStore build_orbit_store(const OrbitsOptions& opt);

// ---- table

struct TableOptions {
  ObservableConfig observables{};
  SchmidtConfig schmidt{};
  unsigned jobs = 0;
  std::function<void(const std::string&)> log;
};

/// Fills observables and Schmidt bounds of every orbit. Adjacency rebuilt for
/// the computation is dropped again unless the store keeps edges.
void compute_table(OrbitStore& store, const TableOptions& opt);

std::string observable_config_json(const TableOptions& opt);

/// Table I columns with its rounding; approximate ASPL or diameter values
/// carry a leading '~'.
std::string table_csv(const OrbitStore& store);
inline constexpr const char* kTableCsvHeader =
    "orbit,n,V,e,chi_og,ln_loops,chi_i,density,aspl,diameter,deg_g_min,deg_og_max,es";
/// Unrounded values with exactness flags; see schema/table.schema.json.
std::string table_json(const OrbitStore& store);

// ---- stats

std::vector<StatRow> stat_rows(const OrbitStore& store);

struct StatsReport {
  EsMode mode = EsMode::Lower;
  Dispersion dispersion = Dispersion::Population;
  std::vector<SummaryLine> summary;
  std::vector<CorrelationLine> correlations;
};

/// Throws UsageError if an orbit lacks observables, StatsError if a
/// coefficient is undefined.
StatsReport compute_stats(const OrbitStore& store, EsMode mode,
                          Dispersion dispersion = Dispersion::Population);
std::string stats_text(const std::vector<StatsReport>& reports);
std::string stats_json(const std::vector<StatsReport>& reports);

// ---- verify

/// UsageError unless d^(n_max (n_max + 1) / 2), the amplitudes of all labeled
/// graphs at the largest n, stays within kMaxAmplitudes.
VerifyReport run_verify(unsigned n_max, unsigned d, double tol);
std::string verify_text(const VerifyReport& r, double tol);

// ---- equivalent

struct EquivalenceResult {
  bool equivalent = false;
  std::optional<unsigned> orbit_g1;  // store lookups
  std::optional<unsigned> orbit_g2;
};

/// Orbit containing canonical code `c`, if the store covers it.
std::optional<unsigned> find_orbit(const OrbitStore& store, const GraphCode& c);

EquivalenceResult check_equivalent(const WeightedGraph& g1, const WeightedGraph& g2,
                                   const OrbitStore* store = nullptr);

// ---- export

/// Writes orbit_<index>.dot for each orbit's representative; returns the
/// file paths in index order.
std::vector<std::filesystem::path> export_representatives(const OrbitStore& store,
                                                           const std::filesystem::path& out_dir);

}  // namespace qlc
