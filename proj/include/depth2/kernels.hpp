#pragma once
// Inner loops for arithmetic mod a prime p.
//
// Every kernel has a portable scalar reference and, on x86-64, an AVX2
// variant. The variant is picked once at runtime; the scalar path is always
// available for equivalence testing.

#include <cstddef>
#include <cstdint>
#include <span>

namespace depth2::kernels {

enum class Isa { Scalar, Avx2 };

// Largest modulus the vector paths accept. Products of two residues plus a
// residue must fit in a signed 32-bit lane.
inline constexpr std::uint32_t kVectorModulusLimit = 1u << 15;

// dst[i] = (dst[i] + c * src[i]) mod p
void axpy_mod_scalar(std::span<std::uint32_t> dst, std::span<const std::uint32_t> src,
                     std::uint32_t c, std::uint32_t p);
// dst[i] = (c * dst[i]) mod p
void scale_mod_scalar(std::span<std::uint32_t> dst, std::uint32_t c, std::uint32_t p);

#if defined(__x86_64__) || defined(_M_X64)
void axpy_mod_avx2(std::span<std::uint32_t> dst, std::span<const std::uint32_t> src,
                   std::uint32_t c, std::uint32_t p);
void scale_mod_avx2(std::span<std::uint32_t> dst, std::uint32_t c, std::uint32_t p);
#endif

bool cpu_has_avx2();

// ISA used by the dispatching entry points. Honors DEPTH2_FORCE_SCALAR=1.
Isa active_isa();
const char* isa_name(Isa isa);

// Dispatching entry points; fall back to scalar when p is too large for the
// vector path.
void axpy_mod(std::span<std::uint32_t> dst, std::span<const std::uint32_t> src,
              std::uint32_t c, std::uint32_t p);
void scale_mod(std::span<std::uint32_t> dst, std::uint32_t c, std::uint32_t p);

}  // namespace depth2::kernels
