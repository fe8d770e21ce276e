#pragma once

#include <memory>
#include <mutex>
#include <vector>

#include "fwion/grid.hpp"
#include "fwion/types.hpp"

namespace fwion {

/// In-place FFTW transforms over a Grid2D field. The unitary variants carry
/// the 1/sqrt(N) factor in each direction so Parseval holds without
/// bookkeeping; the raw variants leave scaling to the caller (the propagator
/// folds it into its phase tables).
///
/// Plans are created with FFTW_ESTIMATE so the chosen algorithm, and hence
/// every rounding decision, is identical from run to run.
class Fourier {
 public:
  explicit Fourier(const Grid2D& grid);
  ~Fourier();
  Fourier(const Fourier&) = delete;
  Fourier& operator=(const Fourier&) = delete;

  /// Shared instance per grid shape.
  static std::shared_ptr<const Fourier> for_grid(const Grid2D& grid);

  const Grid2D& grid() const { return grid_; }

  // Unitary transforms.
  void forward_x(Field& f) const;
  void backward_x(Field& f) const;
  void forward_z(Field& f) const;
  void backward_z(Field& f) const;
  void forward_2d(Field& f) const;
  void backward_2d(Field& f) const;

  // Unnormalized transforms.
  void raw_forward_x(Complex* f) const;
  void raw_backward_x(Complex* f) const;
  void raw_forward_z(Complex* f) const;
  void raw_backward_z(Complex* f) const;
  void raw_forward_2d(Complex* f) const;
  void raw_backward_2d(Complex* f) const;

 private:
  void check(const Field& f) const;

  Grid2D grid_;
  fftw_plan fx_ = nullptr, bx_ = nullptr, fz_ = nullptr, bz_ = nullptr, f2_ = nullptr,
            b2_ = nullptr;
};

void scale(Field& f, double s);

/// Guards FFTW planner calls, which are not thread safe.
std::mutex& planner_mutex();

/// Unnormalized 1D transform (forward: exp(-i k n), backward: exp(+i k n)).
std::vector<Complex> fft_1d(std::vector<Complex> data, bool forward);

}  // namespace fwion
