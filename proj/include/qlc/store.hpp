#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qlc/atlas.hpp"

namespace qlc {

class StoreError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Identifies the operation set, canonical labeling and orbit ordering a
/// store was built with. Stores carrying another fingerprint are rejected.
std::string op_policy_fingerprint(unsigned d);

struct StoreHeader {
  unsigned version = 1;
  unsigned n_min = 1;
  unsigned n = 1;
  unsigned d = 2;
  std::string op_policy;
  bool has_edges = false;
  /// Settings the observable rows were computed with; empty when none were.
  std::string observable_config;
};

/// Orbits of one classification run, in index order.
///
/// File layout (integers big-endian):
///   "QLCSTORE" | u32 len | header JSON | u32 orbit count | blocks
/// and per block, u32 payload length followed by
///   u32 index, u8 n, u32 members, member codes,
///   u16 loop counts and u16 identity counts per member,
///   representative code, ordering bits, u16 representative edges,
///   [u64 edges, u32 pairs when has_edges],
///   u32 len | row JSON {"observables", "schmidt"}.
/// Codes are variable-length big-endian integers: a length byte, then that
/// many bytes with no leading zero byte.
struct OrbitStore {
  StoreHeader header;
  std::vector<OrbitRecord> orbits;
};

std::string serialize_store(const OrbitStore& store);
OrbitStore parse_store(std::string_view bytes);

/// Writes to `path`.tmp, then renames over `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view bytes);
std::string read_file(const std::filesystem::path& path);

void write_store(const std::filesystem::path& path, const OrbitStore& store);
/// Throws StoreError on a malformed file or a fingerprint other than
/// op_policy_fingerprint(d).
OrbitStore read_store(const std::filesystem::path& path);

/// Rebuilds a record's orbit-graph adjacency from its members when the store
/// was written without edges. Loop and identity counts must agree with the
/// stored ones.
void ensure_adjacency(OrbitRecord& r, unsigned jobs = 1);
bool has_adjacency(const OrbitRecord& r);

/// Variable-length big-endian code bytes, exposed for tests.
void put_code(std::string& out, CodeBits v);
CodeBits get_code(std::string_view bytes, std::size_t& pos);

}  // namespace qlc
