#pragma once

#include <vector>

#include "qlc/wgraph.hpp"

namespace qlc {

struct CanonicalForm {
  WeightedGraph graph;
  GraphCode code;
  /// perm[i] is the vertex of the input placed at position i.
  std::vector<unsigned> perm;
};

/// Relabeling of `g` with the minimum encode() value over all n! vertex
/// permutations. Uses an ordered-partition branch and bound: each level fixes
/// the next position from the first cell, sorts the remaining cells by their
/// weight to it, and prunes branches whose digits exceed the best so far.
/// Transpositions of twin vertices are skipped as automorphisms.
CanonicalForm canonical_form(const WeightedGraph& g);

/// Same result as canonical_form(g).code without materialising the graph.
GraphCode canonical_code(const WeightedGraph& g);

/// Reference implementation: encodes all n! relabelings and keeps the minimum.
CanonicalForm canonical_form_scan(const WeightedGraph& g);

/// Minimum over relabelings of the upper triangle packed with pair (0,1) in
/// the least significant digit. Equivalent to packing pairs in colex order
/// ((0,1),(0,2),(1,2),(0,3),...) most significant first. Only used to order orbits.
CodeBits colex_canonical_bits(const WeightedGraph& g);

/// n! reference for colex_canonical_bits.
CodeBits colex_canonical_bits_scan(const WeightedGraph& g);

}  // namespace qlc
