#include "qlc/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "qlc/canonical.hpp"
#include "qlc/enumerator.hpp"
#include "qlc/parallel.hpp"

namespace qlc {

namespace {

void say(const std::function<void(const std::string&)>& log, const std::string& msg) {
  if (log) log(msg);
}

template <class T>
void put_be(std::string& out, T v) {
  for (int shift = 8 * (static_cast<int>(sizeof(T)) - 1); shift >= 0; shift -= 8)
    out.push_back(static_cast<char>((v >> shift) & 0xFF));
}

template <class T>
T get_be(std::string_view b, std::size_t& pos) {
  if (b.size() - pos < sizeof(T)) throw StoreError("truncated checkpoint");
  T v = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) v = static_cast<T>((v << 8) | static_cast<std::uint8_t>(b[pos++]));
  return v;
}

std::string_view get_bytes(std::string_view b, std::size_t& pos, std::size_t len) {
  if (b.size() - pos < len) throw StoreError("truncated checkpoint");
  auto s = b.substr(pos, len);
  pos += len;
  return s;
}

constexpr std::string_view kCheckpointMagic = "QLCCKPT1";

struct Checkpoint {
  unsigned current_n = 0;
  std::size_t done = 0;
  OrbitStore finished;
  std::vector<std::uint32_t> slots;
};

nlohmann::json checkpoint_key(const OrbitsOptions& opt, unsigned n_min) {
  return {{"n_min", n_min}, {"n", opt.n}, {"d", opt.d}, {"edges", opt.edges},
          {"op_policy", op_policy_fingerprint(opt.d)}};
}

void write_checkpoint(const std::filesystem::path& path, const nlohmann::json& key,
                      const Checkpoint& c) {
  nlohmann::json h = key;
  h["current_n"] = c.current_n;
  h["done"] = c.done;
  const std::string text = h.dump();
  std::string out(kCheckpointMagic);
  put_be<std::uint32_t>(out, static_cast<std::uint32_t>(text.size()));
  out += text;
  const std::string finished = serialize_store(c.finished);
  put_be<std::uint64_t>(out, finished.size());
  out += finished;
  put_be<std::uint64_t>(out, c.slots.size());
  for (auto s : c.slots) put_be<std::uint32_t>(out, s);
  write_file_atomic(path, out);
}

Checkpoint read_checkpoint(const std::filesystem::path& path, const nlohmann::json& key) {
  const std::string bytes = read_file(path);
  std::size_t pos = 0;
  if (get_bytes(bytes, pos, kCheckpointMagic.size()) != kCheckpointMagic)
    throw StoreError("not a checkpoint file: " + path.string());
  Checkpoint c;
  nlohmann::json h;
  try {
    h = nlohmann::json::parse(get_bytes(bytes, pos, get_be<std::uint32_t>(bytes, pos)));
    for (const auto& [k, v] : key.items())
      if (h.at(k) != v)
        throw StoreError("checkpoint " + path.string() + " was written for a different run (" + k + ": " +
                         h.at(k).dump() + " vs " + v.dump() + ")");
    c.current_n = h.at("current_n").get<unsigned>();
    c.done = h.at("done").get<std::size_t>();
  } catch (const nlohmann::json::exception& e) {
    throw StoreError(std::string("bad checkpoint header: ") + e.what());
  }
  const auto len = get_be<std::uint64_t>(bytes, pos);
  c.finished = parse_store(get_bytes(bytes, pos, len));
  const auto count = get_be<std::uint64_t>(bytes, pos);
  c.slots.resize(count);
  for (auto& s : c.slots) s = get_be<std::uint32_t>(bytes, pos);
  if (pos != bytes.size()) throw StoreError("trailing bytes in checkpoint");
  return c;
}

void check_dimension(unsigned d) {
  if (!is_prime(d)) throw UsageError("d must be prime (got " + std::to_string(d) + ")");
}

std::string fixed(double x, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, round_to(x, decimals));
  return buf;
}

}  // namespace

std::string enumeration_json(const Enumeration& e) {
  nlohmann::json j;
  j["n"] = e.n;
  j["d"] = e.d;
  j["count"] = e.codes.size();
  auto& codes = j["codes"] = nlohmann::json::array();
  for (const auto& c : e.codes) codes.push_back(to_decimal(c.bits));
  auto& census = j["census"] = nlohmann::json::array();
  for (const auto& s : e.census)
    census.push_back({{"support", to_decimal(s.support.bits)}, {"edges", s.edges}, {"classes", s.classes}});
  return j.dump(1);
}

std::filesystem::path default_checkpoint_path(const std::filesystem::path& store) {
  auto p = store;
  p += ".ckpt";
  return p;
}

OrbitStore build_orbit_store(const OrbitsOptions& opt) {
  check_dimension(opt.d);
  const unsigned n_min = opt.n_min == 0 ? opt.n : opt.n_min;
  if (opt.n < 1 || opt.n > 8) throw UsageError("n must lie in [1, 8]");
  if (n_min > opt.n) throw UsageError("n-min exceeds n");
  const unsigned jobs = resolve_jobs(opt.jobs);
  const auto key = checkpoint_key(opt, n_min);
  const bool checkpointing = !opt.checkpoint.empty();

  Checkpoint state;
  state.current_n = n_min;
  state.finished.header = {1, n_min, opt.n, opt.d, op_policy_fingerprint(opt.d), opt.edges, {}};
  if (checkpointing && std::filesystem::exists(opt.checkpoint)) {
    state = read_checkpoint(opt.checkpoint, key);
    say(opt.log, "resuming at n=" + std::to_string(state.current_n) + ", " + std::to_string(state.done) +
                     " vertices done");
  }

  for (unsigned n = state.current_n; n <= opt.n; ++n) {
    const Enumeration e = enumerate_weighted_connected(n, opt.d, jobs);
    const std::size_t total = e.codes.size();
    const std::size_t k = op_count(n, opt.d);
    if (n != state.current_n) {
      state.current_n = n;
      state.done = 0;
      state.slots.clear();
    }
    if (state.slots.size() != state.done * k || state.done > total)
      throw StoreError("checkpoint slot table does not fit n=" + std::to_string(n));
    say(opt.log, "n=" + std::to_string(n) + ": " + std::to_string(total) + " graphs");
    const std::size_t step = opt.checkpoint_every ? opt.checkpoint_every : std::max<std::size_t>(total, 1);
    while (state.done < total) {
      const std::size_t end = std::min(total, state.done + step);
      auto part = atlas_slots(e.codes, state.done, end, jobs);
      state.slots.insert(state.slots.end(), part.begin(), part.end());
      state.done = end;
      if (checkpointing && opt.checkpoint_every && end < total) {
        write_checkpoint(opt.checkpoint, key, state);
        if (opt.on_checkpoint) opt.on_checkpoint({n, end, total});
      }
    }
    auto comps = connected_components(atlas_from_slots(n, opt.d, e.codes, state.slots));
    say(opt.log, "n=" + std::to_string(n) + ": " + std::to_string(comps.size()) + " orbits");
    for (auto& r : comps) {
      assign_representative(r);
      if (!opt.edges) r.og.adjacency = Csr{};
      state.finished.orbits.push_back(std::move(r));
    }
    state.slots.clear();
    state.slots.shrink_to_fit();
    if (checkpointing && opt.checkpoint_every && n < opt.n) {
      state.current_n = n + 1;
      state.done = 0;
      write_checkpoint(opt.checkpoint, key, state);
      if (opt.on_checkpoint) opt.on_checkpoint({n + 1, 0, 0});
      state.current_n = n;
    }
  }

  OrbitStore out = std::move(state.finished);
  sort_orbits(out.orbits);
  if (!opt.store.empty()) write_store(opt.store, out);
  if (checkpointing) std::filesystem::remove(opt.checkpoint);
  return out;
}

std::string observable_config_json(const TableOptions& opt) {
  const auto& c = opt.observables;
  nlohmann::json j = {
      {"exact_threshold", c.exact_threshold},
      {"diameter_seeds", c.diameter_seeds},
      {"aspl_pairs", c.aspl_pairs},
      {"aspl_rounds", c.aspl_rounds},
      {"seed", c.seed},
      {"loops", c.loops == LoopPolicy::AnySelfImage ? "any-self-image" : "changed-image"},
      {"coloring", {{"order", "largest-first"},
                    {"tie", c.coloring.tie == ColoringPolicy::Tie::AscendingCode ? "ascending" : "descending"},
                    {"loop_degree", c.coloring.loop_degree}}},
      {"og_degree_loop_weight", c.og_degree_loop_weight},
      {"schmidt_removal_budget", opt.schmidt.removal_budget},
  };
  return j.dump();
}

void compute_table(OrbitStore& store, const TableOptions& opt) {
  const unsigned jobs = resolve_jobs(opt.jobs);
  SchmidtConfig sc = opt.schmidt;
  sc.jobs = jobs;
  for (auto& r : store.orbits) {
    ensure_adjacency(r, jobs);
    r.observables = compute_observables(r.og, opt.observables);
    r.schmidt = orbit_schmidt_bounds(r.og, sc);
    if (!store.header.has_edges) r.og.adjacency = Csr{};
    say(opt.log, "orbit " + std::to_string(r.index) + " |V|=" + std::to_string(r.og.size()) +
                     " E_S=" + r.schmidt->to_string());
  }
  store.header.observable_config = observable_config_json(opt);
}

std::string table_csv(const OrbitStore& store) {
  std::ostringstream os;
  os << kTableCsvHeader << '\n';
  for (const auto& r : store.orbits) {
    if (!r.observables || !r.schmidt)
      throw UsageError("orbit " + std::to_string(r.index) + " has no observables; run the table step");
    const auto& o = *r.observables;
    os << r.index << ',' << r.n << ',' << r.og.size() << ',' << r.representative_edges << ',' << o.chi_og
       << ',' << fixed(o.ln_loops, 2) << ',' << o.chi_i << ',' << fixed(o.density, 5) << ','
       << (o.aspl_exact ? "" : "~") << fixed(o.aspl, 2) << ',' << (o.diameter_exact ? "" : "~")
       << o.diameter << ',' << o.deg_g_min << ',' << o.deg_og_max << ',';
    if (r.schmidt->exact())
      os << r.schmidt->lower;
    else
      os << '"' << r.schmidt->to_string() << '"';
    os << '\n';
  }
  return os.str();
}

std::string table_json(const OrbitStore& store) {
  nlohmann::json j;
  j["n_min"] = store.header.n_min;
  j["n"] = store.header.n;
  j["d"] = store.header.d;
  j["config"] = store.header.observable_config.empty()
                    ? nlohmann::json(nullptr)
                    : nlohmann::json::parse(store.header.observable_config);
  auto& rows = j["orbits"] = nlohmann::json::array();
  for (const auto& r : store.orbits) {
    if (!r.observables || !r.schmidt)
      throw UsageError("orbit " + std::to_string(r.index) + " has no observables; run the table step");
    const auto& o = *r.observables;
    rows.push_back({{"orbit", r.index},
                    {"n", r.n},
                    {"V", r.og.size()},
                    {"e", r.representative_edges},
                    {"representative", to_decimal(r.representative_code.bits)},
                    {"chi_og", o.chi_og},
                    {"self_loops", o.self_loops},
                    {"ln_loops", o.ln_loops},
                    {"chi_i", o.chi_i},
                    {"density", o.density},
                    {"aspl", o.aspl},
                    {"aspl_exact", o.aspl_exact},
                    {"diameter", o.diameter},
                    {"diameter_exact", o.diameter_exact},
                    {"deg_g_min", o.deg_g_min},
                    {"deg_og_max", o.deg_og_max},
                    {"es", {{"lower", r.schmidt->lower}, {"upper", r.schmidt->upper}, {"exact", r.schmidt->exact()}}}});
  }
  return j.dump(1);
}

std::vector<StatRow> stat_rows(const OrbitStore& store) {
  std::vector<StatRow> rows;
  rows.reserve(store.orbits.size());
  for (const auto& r : store.orbits) {
    if (!r.observables || !r.schmidt)
      throw UsageError("orbit " + std::to_string(r.index) + " has no observables; run the table step first");
    rows.push_back({*r.observables, *r.schmidt});
  }
  return rows;
}

StatsReport compute_stats(const OrbitStore& store, EsMode mode, Dispersion dispersion) {
  const auto rows = stat_rows(store);
  StatsReport rep;
  rep.mode = mode;
  rep.dispersion = dispersion;
  rep.correlations = correlation_table(rows, default_correlation_pairs(), mode);
  rep.summary = summary_table(rows, mode, dispersion);
  return rep;
}

std::string stats_text(const std::vector<StatsReport>& reports) {
  std::ostringstream os;
  char buf[256];
  for (const auto& rep : reports) {
    os << "[es-mode " << to_string(rep.mode) << ", "
       << (rep.dispersion == Dispersion::Population ? "population" : "sample") << " dispersion]\n";
    std::snprintf(buf, sizeof buf, "%-12s %10s %10s %12s %9s %9s %9s %9s %9s %9s\n", "", "mean", "std",
                  "variance", "median", "mode", "range", "IQR", "skew", "kurt");
    os << buf;
    for (const auto& line : rep.summary) {
      const auto& s = line.summary;
      std::snprintf(buf, sizeof buf, "%-12s %10.4f %10.4f %12.4f %9.4f %9.4f %9.4f %9.4f %9.4f %9.4f\n",
                    std::string(to_string(line.observable)).c_str(), s.mean, s.std, s.variance, s.median,
                    s.mode, s.range, s.iqr, s.skewness, s.kurtosis);
      os << buf;
    }
    os << '\n';
    for (const auto& c : rep.correlations) {
      const std::string name = label(c.pair.x) + " vs " + label(c.pair.y);
      std::snprintf(buf, sizeof buf, "%-32s r=%6.2f tau=%6.2f%s\n", name.c_str(), c.pearson, c.kendall,
                    c.strong ? "" : "  (|r| <= 0.8)");
      os << buf;
    }
    os << '\n';
  }
  return os.str();
}

std::string stats_json(const std::vector<StatsReport>& reports) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& rep : reports) {
    nlohmann::json j;
    j["es_mode"] = to_string(rep.mode);
    j["dispersion"] = rep.dispersion == Dispersion::Population ? "population" : "sample";
    auto& summary = j["summary"] = nlohmann::json::array();
    for (const auto& line : rep.summary) {
      const auto& s = line.summary;
      summary.push_back({{"observable", to_string(line.observable)},
                         {"mean", s.mean},
                         {"std", s.std},
                         {"variance", s.variance},
                         {"median", s.median},
                         {"mode", s.mode},
                         {"range", s.range},
                         {"iqr", s.iqr},
                         {"skewness", s.skewness},
                         {"kurtosis", s.kurtosis}});
    }
    auto& corr = j["correlations"] = nlohmann::json::array();
    for (const auto& c : rep.correlations)
      corr.push_back({{"x", label(c.pair.x)},
                      {"y", label(c.pair.y)},
                      {"pearson", c.pearson},
                      {"kendall", c.kendall},
                      {"pearson_2dp", round_to(c.pearson, 2)},
                      {"kendall_2dp", round_to(c.kendall, 2)},
                      {"strong", c.strong}});
    out.push_back(std::move(j));
  }
  return out.dump(1);
}

VerifyReport run_verify(unsigned n_max, unsigned d, double tol) {
  check_dimension(d);
  if (n_max < 1) throw UsageError("n-max must be at least 1");
  if (!(tol > 0.0)) throw UsageError("tol must be positive");
  // d^C(n,2) labeled graphs of d^n amplitudes each at the largest n
  double work = 1.0;
  for (unsigned i = 0; i < n_max * (n_max + 1) / 2; ++i) work *= d;
  if (work > static_cast<double>(kMaxAmplitudes))
    throw UsageError("size cap: the sweep at n=" + std::to_string(n_max) + " touches d^(n(n+1)/2) = " +
                     fixed(work, 0) + " amplitudes, above " + std::to_string(kMaxAmplitudes));
  return verify_sweep(n_max, d, tol);
}

std::string verify_text(const VerifyReport& r, double tol) {
  std::ostringstream os;
  os << "d=" << r.d << " n<=" << r.n_max << ": " << r.cases << " checks, " << r.failures
     << " below 1-" << tol << ", max deviation " << r.max_deviation << '\n';
  for (unsigned n = 1; n < r.canonical_cases.size(); ++n)
    os << "  n=" << n << ": " << r.canonical_cases[n] << " checks on canonical connected graphs\n";
  os << "  phase-free passes: " << r.phase_free << ", literal-phase complementation failures: "
     << r.literal_failures << '\n';
  for (const auto& c : r.failed)
    os << "  FAIL " << to_string(c.op) << " fidelity " << c.fidelity << '\n';
  os << (r.failures == 0 ? "PASS" : "FAIL") << '\n';
  return os.str();
}

std::optional<unsigned> find_orbit(const OrbitStore& store, const GraphCode& c) {
  for (const auto& r : store.orbits) {
    if (r.n != c.n || r.d != c.d) continue;
    if (std::binary_search(r.og.members.begin(), r.og.members.end(), c)) return r.index;
  }
  return std::nullopt;
}

EquivalenceResult check_equivalent(const WeightedGraph& g1, const WeightedGraph& g2, const OrbitStore* store) {
  if (g1.n() != g2.n()) throw UsageError("graphs have different vertex counts");
  if (g1.d() != g2.d()) throw UsageError("graphs have different dimensions");
  EquivalenceResult res;
  if (store && store->header.d == g1.d()) {
    res.orbit_g1 = find_orbit(*store, canonical_code(g1));
    res.orbit_g2 = find_orbit(*store, canonical_code(g2));
  }
  if (res.orbit_g1 && res.orbit_g2)
    res.equivalent = *res.orbit_g1 == *res.orbit_g2;
  else
    res.equivalent = are_lc_equivalent(g1, g2);
  return res;
}

std::vector<std::filesystem::path> export_representatives(const OrbitStore& store,
                                                           const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  std::vector<std::filesystem::path> files;
  for (const auto& r : store.orbits) {
    const std::string name = "orbit_" + std::to_string(r.index);
    const auto path = out_dir / (name + ".dot");
    write_file_atomic(path, to_dot(r.representative, name));
    files.push_back(path);
  }
  return files;
}

}  // namespace qlc
