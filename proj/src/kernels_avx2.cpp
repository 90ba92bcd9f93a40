// Compiled with -mavx2 -mpopcnt when the toolchain supports it; callers go
// through active_isa(), which checks the running CPU first.
#include "qlc/kernels.hpp"

#if defined(__AVX2__)
#include <immintrin.h>
#endif

namespace qlc::kernels {

#if defined(__AVX2__)

bool avx2_compiled() noexcept { return true; }

bool avx2_available() noexcept {
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("popcnt");
}

std::uint64_t bfs_expand_avx2(std::size_t vertices, const std::uint64_t* offsets,
                              const std::uint32_t* targets, const std::uint64_t* frontier,
                              std::uint64_t* visited, std::uint64_t* next, std::size_t words) {
  std::uint64_t count = 0;
  for (std::size_t v = 0; v < vertices; ++v) {
    for (std::size_t w = 0; w < words; w += 4) {
      __m256i acc = _mm256_setzero_si256();
      for (std::uint64_t e = offsets[v]; e < offsets[v + 1]; ++e) {
        const auto* in = reinterpret_cast<const __m256i*>(frontier + std::size_t{targets[e]} * words + w);
        acc = _mm256_or_si256(acc, _mm256_loadu_si256(in));
      }
      auto* seen_ptr = reinterpret_cast<__m256i*>(visited + v * words + w);
      const __m256i seen = _mm256_loadu_si256(seen_ptr);
      acc = _mm256_andnot_si256(seen, acc);
      _mm256_storeu_si256(seen_ptr, _mm256_or_si256(seen, acc));
      _mm256_storeu_si256(reinterpret_cast<__m256i*>(next + v * words + w), acc);
      count += static_cast<std::uint64_t>(_mm_popcnt_u64(static_cast<std::uint64_t>(_mm256_extract_epi64(acc, 0)))) +
               static_cast<std::uint64_t>(_mm_popcnt_u64(static_cast<std::uint64_t>(_mm256_extract_epi64(acc, 1)))) +
               static_cast<std::uint64_t>(_mm_popcnt_u64(static_cast<std::uint64_t>(_mm256_extract_epi64(acc, 2)))) +
               static_cast<std::uint64_t>(_mm_popcnt_u64(static_cast<std::uint64_t>(_mm256_extract_epi64(acc, 3))));
    }
  }
  return count;
}

#else

bool avx2_compiled() noexcept { return false; }
bool avx2_available() noexcept { return false; }

std::uint64_t bfs_expand_avx2(std::size_t vertices, const std::uint64_t* offsets,
                              const std::uint32_t* targets, const std::uint64_t* frontier,
                              std::uint64_t* visited, std::uint64_t* next, std::size_t words) {
  return bfs_expand_scalar(vertices, offsets, targets, frontier, visited, next, words);
}

#endif

}  // namespace qlc::kernels
