#pragma once

#include <cstdint>
#include <string>

namespace qlc {

/// One orbit's row of orbit-graph and in-orbit observables.
struct ObservableRow {
  unsigned chi_og = 0;
  std::uint64_t self_loops = 0;
  double ln_loops = 0.0;  // ln(N_L + 1)
  unsigned chi_i = 0;
  double density = 0.0;
  double aspl = 0.0;
  unsigned diameter = 0;
  unsigned deg_g_min = 0;
  unsigned deg_og_max = 0;
  bool aspl_exact = true;
  bool diameter_exact = true;

  friend bool operator==(const ObservableRow&, const ObservableRow&) = default;
};

/// Schmidt measure in log_d units as an integer interval.
struct SchmidtBounds {
  unsigned lower = 0;
  unsigned upper = 0;

  bool exact() const noexcept { return lower == upper; }
  /// "3" when exact, "(3, 4)" otherwise.
  std::string to_string() const {
    return exact() ? std::to_string(lower)
                   : "(" + std::to_string(lower) + ", " + std::to_string(upper) + ")";
  }
  friend bool operator==(const SchmidtBounds&, const SchmidtBounds&) = default;
};

}  // namespace qlc
