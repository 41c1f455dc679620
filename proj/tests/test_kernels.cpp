#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <string>
#include <vector>

#include "depth2/kernels.hpp"

using namespace depth2::kernels;

namespace {

std::vector<std::uint32_t> random_residues(std::size_t n, std::uint32_t p, std::mt19937& rng) {
  std::uniform_int_distribution<std::uint32_t> d(0, p - 1);
  std::vector<std::uint32_t> v(n);
  for (auto& x : v) x = d(rng);
  return v;
}

}  // namespace

TEST_CASE("scalar axpy matches the naive formula") {
  std::vector<std::uint32_t> dst{1, 2, 3, 4}, src{4, 3, 2, 1};
  axpy_mod_scalar(dst, src, 3, 5);
  CHECK(dst == std::vector<std::uint32_t>{3, 1, 4, 2});
  scale_mod_scalar(dst, 2, 5);
  CHECK(dst == std::vector<std::uint32_t>{1, 2, 3, 4});
}

TEST_CASE("vector kernels agree with scalar reference") {
  if (!cpu_has_avx2()) {
    MESSAGE("AVX2 not available; only the scalar path is exercised");
    return;
  }
#if defined(__x86_64__)
  std::mt19937 rng(7);
  for (std::uint32_t p : {2u, 3u, 5u, 7u, 101u, 7919u, 32749u}) {
    for (std::size_t n : {0u, 1u, 7u, 8u, 9u, 31u, 64u, 257u}) {
      const auto src = random_residues(n, p, rng);
      const auto base = random_residues(n, p, rng);
      for (std::uint32_t c : {0u, 1u, p - 1, p / 2}) {
        auto a = base, b = base;
        axpy_mod_scalar(a, src, c, p);
        axpy_mod_avx2(b, src, c, p);
        REQUIRE(a == b);
        scale_mod_scalar(a, c, p);
        scale_mod_avx2(b, c, p);
        REQUIRE(a == b);
      }
    }
  }
#endif
}

TEST_CASE("dispatch falls back to scalar for large moduli") {
  const std::uint32_t p = 2147483647u;  // 2^31 - 1
  std::vector<std::uint32_t> dst{p - 1, 5}, src{p - 1, 7};
  axpy_mod(dst, src, p - 1, p);
  // (p-1) + (p-1)^2 = (p-1) + 1 = 0;  5 + (p-1)*7 = 5 - 7 = p - 2
  CHECK(dst[0] == 0);
  CHECK(dst[1] == p - 2);
  MESSAGE("active ISA: " << std::string(isa_name(active_isa())));
}
