#pragma once

#include <complex>
#include <cstddef>
#include <new>
#include <stdexcept>
#include <string>
#include <vector>

#include <fftw3.h>

namespace fwion {

using Complex = std::complex<double>;

/// Allocator handing out FFTW-aligned storage so every field can be
/// transformed in place by the same plan.
template <class T>
struct FftwAllocator {
  using value_type = T;

  FftwAllocator() noexcept = default;
  template <class U>
  FftwAllocator(const FftwAllocator<U>&) noexcept {}

  T* allocate(std::size_t n) {
    if (n == 0) return nullptr;
    void* p = fftw_malloc(n * sizeof(T));
    if (p == nullptr) throw std::bad_alloc();
    return static_cast<T*>(p);
  }
  void deallocate(T* p, std::size_t) noexcept { fftw_free(p); }

  template <class U>
  bool operator==(const FftwAllocator<U>&) const noexcept { return true; }
};

/// Complex scalar field on a Grid2D, x fastest: index = j*nx + i.
using Field = std::vector<Complex, FftwAllocator<Complex>>;

namespace constants {
/// Speed of light in atomic units.
inline constexpr double c = 137.036;
inline constexpr double hartree_eV = 27.211386;
/// Atomic unit of intensity, W/cm^2 (E = 1 a.u.).
inline constexpr double intensity_au_Wcm2 = 3.50945e16;
/// hbar*c in hartree*nm, so omega[a.u.] = this / lambda[nm].
inline constexpr double omega_nm = 45.5633;
}  // namespace constants

/// Invalid user input or inconsistent configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Propagation or post-processing produced non-finite or unusable numbers.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace fwion
