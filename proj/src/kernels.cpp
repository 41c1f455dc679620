#include "depth2/kernels.hpp"

#include <cassert>
#include <cstdlib>
#include <cstring>

#if defined(__x86_64__) || defined(_M_X64)
#include <immintrin.h>
#define DEPTH2_X86 1
#else
#define DEPTH2_X86 0
#endif

namespace depth2::kernels {

void axpy_mod_scalar(std::span<std::uint32_t> dst, std::span<const std::uint32_t> src,
                     std::uint32_t c, std::uint32_t p) {
  assert(dst.size() == src.size());
  const std::uint64_t cc = c;
  for (std::size_t i = 0; i < dst.size(); ++i) {
    dst[i] = static_cast<std::uint32_t>((dst[i] + cc * src[i]) % p);
  }
}

void scale_mod_scalar(std::span<std::uint32_t> dst, std::uint32_t c, std::uint32_t p) {
  const std::uint64_t cc = c;
  for (auto& x : dst) x = static_cast<std::uint32_t>((cc * x) % p);
}

#if DEPTH2_X86

namespace {

// x mod p for 8 lanes with 0 <= x < 2^31, using a double-precision quotient
// estimate and one correction step in each direction.
__attribute__((target("avx2"))) inline __m256i reduce_lanes(__m256i x, __m256i vp,
                                                            __m256d inv_p) {
  const __m128i lo = _mm256_castsi256_si128(x);
  const __m128i hi = _mm256_extracti128_si256(x, 1);
  const __m256d qlo = _mm256_floor_pd(_mm256_mul_pd(_mm256_cvtepi32_pd(lo), inv_p));
  const __m256d qhi = _mm256_floor_pd(_mm256_mul_pd(_mm256_cvtepi32_pd(hi), inv_p));
  const __m256i q = _mm256_set_m128i(_mm256_cvttpd_epi32(qhi), _mm256_cvttpd_epi32(qlo));
  __m256i r = _mm256_sub_epi32(x, _mm256_mullo_epi32(q, vp));
  // r in (-p, 2p)
  const __m256i neg = _mm256_cmpgt_epi32(_mm256_setzero_si256(), r);
  r = _mm256_add_epi32(r, _mm256_and_si256(neg, vp));
  const __m256i big = _mm256_cmpgt_epi32(r, _mm256_sub_epi32(vp, _mm256_set1_epi32(1)));
  r = _mm256_sub_epi32(r, _mm256_and_si256(big, vp));
  return r;
}

}  // namespace

__attribute__((target("avx2"))) void axpy_mod_avx2(std::span<std::uint32_t> dst,
                                                   std::span<const std::uint32_t> src,
                                                   std::uint32_t c, std::uint32_t p) {
  assert(dst.size() == src.size());
  assert(p < kVectorModulusLimit);
  const std::size_t n = dst.size();
  const __m256i vc = _mm256_set1_epi32(static_cast<int>(c));
  const __m256i vp = _mm256_set1_epi32(static_cast<int>(p));
  const __m256d inv_p = _mm256_set1_pd(1.0 / static_cast<double>(p));
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256i d = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst.data() + i));
    const __m256i s = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src.data() + i));
    const __m256i x = _mm256_add_epi32(d, _mm256_mullo_epi32(vc, s));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst.data() + i), reduce_lanes(x, vp, inv_p));
  }
  axpy_mod_scalar(dst.subspan(i), src.subspan(i), c, p);
}

__attribute__((target("avx2"))) void scale_mod_avx2(std::span<std::uint32_t> dst,
                                                    std::uint32_t c, std::uint32_t p) {
  assert(p < kVectorModulusLimit);
  const std::size_t n = dst.size();
  const __m256i vc = _mm256_set1_epi32(static_cast<int>(c));
  const __m256i vp = _mm256_set1_epi32(static_cast<int>(p));
  const __m256d inv_p = _mm256_set1_pd(1.0 / static_cast<double>(p));
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256i d = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst.data() + i));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst.data() + i),
                        reduce_lanes(_mm256_mullo_epi32(vc, d), vp, inv_p));
  }
  scale_mod_scalar(dst.subspan(i), c, p);
}

bool cpu_has_avx2() { return __builtin_cpu_supports("avx2"); }

#else

bool cpu_has_avx2() { return false; }

#endif

Isa active_isa() {
  static const Isa isa = [] {
    const char* force = std::getenv("DEPTH2_FORCE_SCALAR");
    if (force != nullptr && std::strcmp(force, "1") == 0) return Isa::Scalar;
    return cpu_has_avx2() ? Isa::Avx2 : Isa::Scalar;
  }();
  return isa;
}

const char* isa_name(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

void axpy_mod(std::span<std::uint32_t> dst, std::span<const std::uint32_t> src,
              std::uint32_t c, std::uint32_t p) {
  if (c == 0) return;
#if DEPTH2_X86
  if (p < kVectorModulusLimit && active_isa() == Isa::Avx2) {
    axpy_mod_avx2(dst, src, c, p);
    return;
  }
#endif
  axpy_mod_scalar(dst, src, c, p);
}

void scale_mod(std::span<std::uint32_t> dst, std::uint32_t c, std::uint32_t p) {
#if DEPTH2_X86
  if (p < kVectorModulusLimit && active_isa() == Isa::Avx2) {
    scale_mod_avx2(dst, c, p);
    return;
  }
#endif
  scale_mod_scalar(dst, c, p);
}

}  // namespace depth2::kernels
