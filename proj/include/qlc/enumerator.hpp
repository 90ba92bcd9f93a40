#pragma once

#include <cstddef>
#include <vector>

#include "qlc/wgraph.hpp"

namespace qlc {

/// One representative per isomorphism class of connected simple graphs on n
/// vertices, as weight-{0,1} graphs over F_2, sorted by canonical code.
/// Built by vertex extension: every graph on n vertices is a graph on n-1
/// vertices plus one vertex with some neighbourhood.
std::vector<WeightedGraph> enumerate_simple_connected(unsigned n);

/// All simple graphs (connected or not) on n vertices, canonical, sorted.
std::vector<WeightedGraph> enumerate_simple_all(unsigned n);

/// Brute force over all 2^C(n,2) edge masks. Test oracle for small n.
std::vector<WeightedGraph> enumerate_simple_connected_bruteforce(unsigned n);

struct SupportCensus {
  GraphCode support;   // canonical F_2 code of the simple support
  std::size_t edges;
  std::size_t classes; // weighted isomorphism classes on this support
};

struct Enumeration {
  unsigned n;
  unsigned d;
  std::vector<GraphCode> codes;  // globally sorted, deduplicated
  std::vector<SupportCensus> census;
};

/// Canonical codes of every connected F_d-weighted graph on n vertices up to
/// isomorphism. Work is sharded by simple support over `jobs` threads; the
/// output is identical for any job count.
Enumeration enumerate_weighted_connected(unsigned n, unsigned d, unsigned jobs = 1);

/// Canonical codes of all weightings of one support, sorted and deduplicated.
std::vector<GraphCode> weightings_of_support(const WeightedGraph& support, unsigned d);

}  // namespace qlc
