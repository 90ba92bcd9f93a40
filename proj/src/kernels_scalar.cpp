#include <bit>
#include <cstdlib>
#include <cstring>

#include "qlc/kernels.hpp"

namespace qlc::kernels {

std::uint64_t bfs_expand_scalar(std::size_t vertices, const std::uint64_t* offsets,
                                const std::uint32_t* targets, const std::uint64_t* frontier,
                                std::uint64_t* visited, std::uint64_t* next, std::size_t words) {
  std::uint64_t count = 0;
  for (std::size_t v = 0; v < vertices; ++v) {
    std::uint64_t* out = next + v * words;
    std::memset(out, 0, words * sizeof(std::uint64_t));
    for (std::uint64_t e = offsets[v]; e < offsets[v + 1]; ++e) {
      const std::uint64_t* in = frontier + std::size_t{targets[e]} * words;
      for (std::size_t w = 0; w < words; ++w) out[w] |= in[w];
    }
    std::uint64_t* seen = visited + v * words;
    for (std::size_t w = 0; w < words; ++w) {
      out[w] &= ~seen[w];
      seen[w] |= out[w];
      count += static_cast<std::uint64_t>(std::popcount(out[w]));
    }
  }
  return count;
}

Isa active_isa() noexcept {
  static const Isa isa = [] {
    if (const char* env = std::getenv("QLC_SIMD"); env && std::strcmp(env, "scalar") == 0) return Isa::Scalar;
    return avx2_available() ? Isa::Avx2 : Isa::Scalar;
  }();
  return isa;
}

std::string_view isa_name(Isa isa) noexcept { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

std::size_t preferred_words(Isa isa) noexcept { return isa == Isa::Avx2 ? 4 : 2; }

BfsExpandFn bfs_expand_for(Isa isa) noexcept {
  return isa == Isa::Avx2 ? &bfs_expand_avx2 : &bfs_expand_scalar;
}

}  // namespace qlc::kernels
