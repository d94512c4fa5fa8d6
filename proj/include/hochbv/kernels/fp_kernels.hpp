#pragma once

#include <cstddef>
#include <cstdint>

// Row operations on dense residue vectors over F_p. Every kernel has a
// portable reference version and an AVX2 version; the dispatching entry
// points pick one at runtime.

namespace hochbv::kernels {

enum class Backend { Auto, Scalar, Avx2 };

/// dst[i] = (dst[i] + c·src[i]) mod p, inputs already reduced.
void axpy_mod_scalar(std::uint32_t* dst, const std::uint32_t* src,
                     std::size_t n, std::uint32_t c, std::uint32_t p);
/// v[i] = c·v[i] mod p.
void scale_mod_scalar(std::uint32_t* v, std::size_t n, std::uint32_t c,
                      std::uint32_t p);

/// AVX2+FMA versions. They require p < 2^26 (products stay exact in a
/// double); callers must check avx2_available() first.
void axpy_mod_avx2(std::uint32_t* dst, const std::uint32_t* src,
                   std::size_t n, std::uint32_t c, std::uint32_t p);
void scale_mod_avx2(std::uint32_t* v, std::size_t n, std::uint32_t c,
                    std::uint32_t p);

bool avx2_available() noexcept;
constexpr std::uint32_t kAvx2ModulusLimit = 1u << 26;

/// Process-wide override, mostly for tests and benchmarks.
void set_backend(Backend b) noexcept;
Backend active_backend(std::uint32_t p) noexcept;

void axpy_mod(std::uint32_t* dst, const std::uint32_t* src, std::size_t n,
              std::uint32_t c, std::uint32_t p);
void scale_mod(std::uint32_t* v, std::size_t n, std::uint32_t c,
               std::uint32_t p);

}  // namespace hochbv::kernels
