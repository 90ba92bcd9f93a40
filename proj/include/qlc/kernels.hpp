#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace qlc::kernels {

/// One level of bit-parallel multi-source BFS over a CSR graph. Each vertex
/// owns `words` 64-bit lanes, one bit per BFS source:
///   next[v]     = (OR over neighbours u of frontier[u]) & ~visited[v]
///   visited[v] |= next[v]
/// Returns the total number of bits set in `next`, i.e. the number of
/// (source, vertex) pairs first reached at this level.
using BfsExpandFn = std::uint64_t (*)(std::size_t vertices, const std::uint64_t* offsets,
                                      const std::uint32_t* targets, const std::uint64_t* frontier,
                                      std::uint64_t* visited, std::uint64_t* next, std::size_t words);

std::uint64_t bfs_expand_scalar(std::size_t vertices, const std::uint64_t* offsets,
                                const std::uint32_t* targets, const std::uint64_t* frontier,
                                std::uint64_t* visited, std::uint64_t* next, std::size_t words);

/// AVX2 variant; `words` must be a multiple of 4. Only call when
/// avx2_available() is true.
std::uint64_t bfs_expand_avx2(std::size_t vertices, const std::uint64_t* offsets,
                              const std::uint32_t* targets, const std::uint64_t* frontier,
                              std::uint64_t* visited, std::uint64_t* next, std::size_t words);

bool avx2_compiled() noexcept;
bool avx2_available() noexcept;

enum class Isa { Scalar, Avx2 };

/// Chosen once per process: AVX2 when compiled in and supported by the CPU,
/// unless QLC_SIMD=scalar is set in the environment.
Isa active_isa() noexcept;
std::string_view isa_name(Isa isa) noexcept;

/// Words per vertex the active kernel wants (a multiple of 4 for AVX2).
std::size_t preferred_words(Isa isa) noexcept;

BfsExpandFn bfs_expand_for(Isa isa) noexcept;

}  // namespace qlc::kernels
