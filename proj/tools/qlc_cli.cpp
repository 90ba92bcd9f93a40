// qlc: orbit classification of qudit graph states under local Clifford operations.
#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "qlc/canonical.hpp"
#include "qlc/enumerator.hpp"
#include "qlc/parallel.hpp"
#include "qlc/pipeline.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kFailure = 1;
constexpr int kUsage = 2;

void log_line(const std::string& s) { std::cerr << s << std::endl; }

qlc::WeightedGraph load_edge_list(const std::string& path, unsigned d) {
  try {
    return qlc::parse_edge_list(qlc::read_file(path), qlc::Field(d));
  } catch (const qlc::StoreError& e) {
    throw qlc::UsageError(e.what());
  } catch (const std::invalid_argument& e) {
    throw qlc::UsageError(path + ": " + e.what());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qlc: local-Clifford orbits of qudit graph states"};
  app.require_subcommand(1);

  unsigned jobs = 0;
  app.add_option("--jobs,-j", jobs, "worker threads (default: $QLC_JOBS or all cores)");

  // enumerate
  auto* enumerate = app.add_subcommand("enumerate", "connected weighted graphs up to isomorphism");
  unsigned en_n = 3, en_d = 3;
  std::string en_out;
  enumerate->add_option("--n", en_n, "vertex count")->required()->check(CLI::Range(1, 8));
  enumerate->add_option("--d", en_d, "prime dimension")->required();
  enumerate->add_option("--out", en_out, "write codes and census as JSON");

  // orbits
  auto* orbits = app.add_subcommand("orbits", "classify into local-Clifford orbits and write a store");
  qlc::OrbitsOptions oo;
  std::string store_path;
  orbits->add_option("--n", oo.n, "largest vertex count")->required()->check(CLI::Range(1, 8));
  orbits->add_option("--n-min", oo.n_min, "smallest vertex count (default: n)");
  orbits->add_option("--d", oo.d, "prime dimension")->required();
  orbits->add_option("--store", store_path, "orbit store file")->required();
  orbits->add_option("--checkpoint-every", oo.checkpoint_every, "atlas vertices between checkpoints");
  orbits->add_flag("--edges", oo.edges, "keep orbit-graph edges in the store");

  // table
  auto* table = app.add_subcommand("table", "observable table for every orbit in a store");
  qlc::TableOptions to;
  std::string table_store, table_format = "csv";
  table->add_option("--store", table_store, "orbit store file")->required();
  table->add_option("--exact-threshold", to.observables.exact_threshold,
                    "exact distances for orbits smaller than this");
  table->add_option("--seeds", to.observables.diameter_seeds, "diameter BFS start vertices");
  table->add_option("--samples", to.observables.aspl_pairs, "vertex pairs per ASPL round");
  table->add_option("--rounds", to.observables.aspl_rounds, "ASPL sampling rounds");
  table->add_option("--seed", to.observables.seed, "sampling seed");
  table->add_option("--format", table_format)->check(CLI::IsMember({"csv", "json"}));

  // stats
  auto* stats = app.add_subcommand("stats", "summary statistics and correlations");
  std::string stats_store, es_mode = "lower", stats_format = "text";
  bool sample_dispersion = false;
  stats->add_option("--store", stats_store, "orbit store with observables")->required();
  stats->add_option("--es-mode", es_mode, "interval E_S handling")
      ->check(CLI::IsMember({"lower", "mid", "upper", "all"}));
  stats->add_option("--format", stats_format)->check(CLI::IsMember({"text", "json"}));
  stats->add_flag("--sample", sample_dispersion, "N-1 divisor for std and variance");

  // verify
  auto* verify = app.add_subcommand("verify", "compare graph rules with state-vector simulation");
  unsigned v_n = 3, v_d = 3;
  double v_tol = 1e-10;
  verify->add_option("--n-max", v_n)->required();
  verify->add_option("--d", v_d)->required();
  verify->add_option("--tol", v_tol);

  // equivalent
  auto* equivalent = app.add_subcommand("equivalent", "decide local-Clifford equivalence of two graphs");
  unsigned eq_d = 3;
  std::string g1_path, g2_path, eq_store;
  equivalent->add_option("--d", eq_d)->required();
  equivalent->add_option("--g1", g1_path, "edge list: one 'u v w' per line")->required();
  equivalent->add_option("--g2", g2_path)->required();
  equivalent->add_option("--store", eq_store, "look orbits up in this store");

  // export-reps
  auto* exp = app.add_subcommand("export-reps", "write each orbit representative as DOT");
  std::string exp_store, exp_dir;
  exp->add_option("--store", exp_store)->required();
  exp->add_option("--out-dir", exp_dir)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*enumerate) {
      if (!qlc::is_prime(en_d)) throw qlc::UsageError("d must be prime (got " + std::to_string(en_d) + ")");
      const auto e = qlc::enumerate_weighted_connected(en_n, en_d, qlc::resolve_jobs(jobs));
      if (!en_out.empty()) qlc::write_file_atomic(en_out, qlc::enumeration_json(e));
      std::cout << e.codes.size() << '\n';
    } else if (*orbits) {
      oo.jobs = jobs;
      oo.store = store_path;
      oo.checkpoint = qlc::default_checkpoint_path(store_path);
      oo.log = log_line;
      const auto s = qlc::build_orbit_store(oo);
      std::cout << s.orbits.size() << " orbits";
      for (const auto& r : s.orbits) std::cout << (r.index == 1 ? ": " : " ") << r.og.size();
      std::cout << '\n';
    } else if (*table) {
      auto s = qlc::read_store(table_store);
      bool missing = false;
      for (const auto& r : s.orbits) missing |= !r.observables || !r.schmidt;
      to.jobs = jobs;
      to.log = log_line;
      if (missing || s.header.observable_config != qlc::observable_config_json(to)) {
        qlc::compute_table(s, to);
        qlc::write_store(table_store, s);
      }
      std::cout << (table_format == "json" ? qlc::table_json(s) + "\n" : qlc::table_csv(s));
    } else if (*stats) {
      const auto s = qlc::read_store(stats_store);
      const auto disp = sample_dispersion ? qlc::Dispersion::Sample : qlc::Dispersion::Population;
      std::vector<qlc::StatsReport> reports;
      if (es_mode == "all") {
        for (auto m : {qlc::EsMode::Lower, qlc::EsMode::Mid, qlc::EsMode::Upper})
          reports.push_back(qlc::compute_stats(s, m, disp));
      } else {
        reports.push_back(qlc::compute_stats(s, qlc::parse_es_mode(es_mode), disp));
      }
      std::cout << (stats_format == "json" ? qlc::stats_json(reports) + "\n" : qlc::stats_text(reports));
    } else if (*verify) {
      const auto rep = qlc::run_verify(v_n, v_d, v_tol);
      std::cout << qlc::verify_text(rep, v_tol);
      return rep.failures == 0 ? kOk : kFailure;
    } else if (*equivalent) {
      if (!qlc::is_prime(eq_d)) throw qlc::UsageError("d must be prime (got " + std::to_string(eq_d) + ")");
      const auto g1 = load_edge_list(g1_path, eq_d);
      const auto g2 = load_edge_list(g2_path, eq_d);
      std::optional<qlc::OrbitStore> s;
      if (!eq_store.empty()) s = qlc::read_store(eq_store);
      const auto res = qlc::check_equivalent(g1, g2, s ? &*s : nullptr);
      std::cout << (res.equivalent ? "true" : "false");
      if (res.orbit_g1 && res.equivalent) std::cout << " orbit " << *res.orbit_g1;
      if (s && !res.equivalent && (res.orbit_g1 || res.orbit_g2))
        std::cout << " orbits " << (res.orbit_g1 ? std::to_string(*res.orbit_g1) : "-") << ' '
                  << (res.orbit_g2 ? std::to_string(*res.orbit_g2) : "-");
      std::cout << '\n';
    } else if (*exp) {
      const auto s = qlc::read_store(exp_store);
      const auto files = qlc::export_representatives(s, exp_dir);
      std::cout << files.size() << " files\n";
    }
  } catch (const qlc::UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const qlc::StoreError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const qlc::StatsError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFailure;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFailure;
  }
  return kOk;
}
