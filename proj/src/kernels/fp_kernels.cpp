#include "hochbv/kernels/fp_kernels.hpp"

#include <atomic>

#if defined(__x86_64__) || defined(__i386__)
#include <immintrin.h>
#define HOCHBV_X86 1
#endif

namespace hochbv::kernels {

void axpy_mod_scalar(std::uint32_t* dst, const std::uint32_t* src,
                     std::size_t n, std::uint32_t c, std::uint32_t p) {
  for (std::size_t i = 0; i < n; ++i) {
    std::uint64_t v = dst[i] + static_cast<std::uint64_t>(c) * src[i];
    dst[i] = static_cast<std::uint32_t>(v % p);
  }
}

void scale_mod_scalar(std::uint32_t* v, std::size_t n, std::uint32_t c,
                      std::uint32_t p) {
  for (std::size_t i = 0; i < n; ++i)
    v[i] = static_cast<std::uint32_t>(static_cast<std::uint64_t>(c) * v[i] % p);
}

#ifdef HOCHBV_X86

namespace {

// c·x mod p for four lanes; c, x < p < 2^26 so c·x is exact in a double
// and the FMA residue is exact too.
__attribute__((target("avx2,fma"))) inline __m256d mulmod4(
    __m256d x, __m256d c, __m256d pd, __m256d pinv) {
  __m256d prod = _mm256_mul_pd(x, c);
  __m256d q = _mm256_floor_pd(_mm256_mul_pd(prod, pinv));
  __m256d r = _mm256_fnmadd_pd(q, pd, prod);
  // q can be off by one in either direction
  __m256d neg = _mm256_cmp_pd(r, _mm256_setzero_pd(), _CMP_LT_OQ);
  r = _mm256_add_pd(r, _mm256_and_pd(neg, pd));
  __m256d big = _mm256_cmp_pd(r, pd, _CMP_GE_OQ);
  return _mm256_sub_pd(r, _mm256_and_pd(big, pd));
}

}  // namespace

__attribute__((target("avx2,fma"))) void axpy_mod_avx2(
    std::uint32_t* dst, const std::uint32_t* src, std::size_t n,
    std::uint32_t c, std::uint32_t p) {
  const __m256d pd = _mm256_set1_pd(static_cast<double>(p));
  const __m256d pinv = _mm256_set1_pd(1.0 / static_cast<double>(p));
  const __m256d cd = _mm256_set1_pd(static_cast<double>(c));
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m128i xs = _mm_loadu_si128(reinterpret_cast<const __m128i*>(src + i));
    __m128i ds = _mm_loadu_si128(reinterpret_cast<const __m128i*>(dst + i));
    __m256d r = mulmod4(_mm256_cvtepi32_pd(xs), cd, pd, pinv);
    __m256d s = _mm256_add_pd(r, _mm256_cvtepi32_pd(ds));
    __m256d big = _mm256_cmp_pd(s, pd, _CMP_GE_OQ);
    s = _mm256_sub_pd(s, _mm256_and_pd(big, pd));
    _mm_storeu_si128(reinterpret_cast<__m128i*>(dst + i), _mm256_cvttpd_epi32(s));
  }
  axpy_mod_scalar(dst + i, src + i, n - i, c, p);
}

__attribute__((target("avx2,fma"))) void scale_mod_avx2(
    std::uint32_t* v, std::size_t n, std::uint32_t c, std::uint32_t p) {
  const __m256d pd = _mm256_set1_pd(static_cast<double>(p));
  const __m256d pinv = _mm256_set1_pd(1.0 / static_cast<double>(p));
  const __m256d cd = _mm256_set1_pd(static_cast<double>(c));
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m128i xs = _mm_loadu_si128(reinterpret_cast<const __m128i*>(v + i));
    __m256d r = mulmod4(_mm256_cvtepi32_pd(xs), cd, pd, pinv);
    _mm_storeu_si128(reinterpret_cast<__m128i*>(v + i), _mm256_cvttpd_epi32(r));
  }
  scale_mod_scalar(v + i, n - i, c, p);
}

bool avx2_available() noexcept {
  static const bool ok =
      __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return ok;
}

#else

void axpy_mod_avx2(std::uint32_t* dst, const std::uint32_t* src,
                   std::size_t n, std::uint32_t c, std::uint32_t p) {
  axpy_mod_scalar(dst, src, n, c, p);
}
void scale_mod_avx2(std::uint32_t* v, std::size_t n, std::uint32_t c,
                    std::uint32_t p) {
  scale_mod_scalar(v, n, c, p);
}
bool avx2_available() noexcept { return false; }

#endif

namespace {
std::atomic<Backend> g_backend{Backend::Auto};
}

void set_backend(Backend b) noexcept { g_backend.store(b); }

Backend active_backend(std::uint32_t p) noexcept {
  Backend b = g_backend.load();
  bool can = avx2_available() && p < kAvx2ModulusLimit;
  if (b == Backend::Scalar || !can) return Backend::Scalar;
  return Backend::Avx2;
}

void axpy_mod(std::uint32_t* dst, const std::uint32_t* src, std::size_t n,
              std::uint32_t c, std::uint32_t p) {
  if (active_backend(p) == Backend::Avx2)
    axpy_mod_avx2(dst, src, n, c, p);
  else
    axpy_mod_scalar(dst, src, n, c, p);
}

void scale_mod(std::uint32_t* v, std::size_t n, std::uint32_t c,
               std::uint32_t p) {
  if (active_backend(p) == Backend::Avx2)
    scale_mod_avx2(v, n, c, p);
  else
    scale_mod_scalar(v, n, c, p);
}

}  // namespace hochbv::kernels
