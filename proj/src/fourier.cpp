#include "fwion/fourier.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <tuple>

namespace fwion {

namespace {

fftw_complex* as_fftw(Complex* p) { return reinterpret_cast<fftw_complex*>(p); }

}  // namespace

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

std::vector<Complex> fft_1d(std::vector<Complex> data, bool forward) {
  if (data.empty()) return data;
  std::vector<Complex, FftwAllocator<Complex>> buf(data.begin(), data.end());
  fftw_plan plan;
  {
    std::lock_guard lock(planner_mutex());
    plan = fftw_plan_dft_1d(static_cast<int>(buf.size()), as_fftw(buf.data()), as_fftw(buf.data()),
                            forward ? FFTW_FORWARD : FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan);
  }
  std::copy(buf.begin(), buf.end(), data.begin());
  return data;
}

Fourier::Fourier(const Grid2D& grid) : grid_(grid) {
  const int nx = static_cast<int>(grid.nx());
  const int nz = static_cast<int>(grid.nz());
  Field scratch(grid.size());
  auto* p = as_fftw(scratch.data());
  const unsigned flags = FFTW_ESTIMATE;

  std::lock_guard lock(planner_mutex());
  int nxa[] = {nx};
  int nza[] = {nz};
  fx_ = fftw_plan_many_dft(1, nxa, nz, p, nullptr, 1, nx, p, nullptr, 1, nx, FFTW_FORWARD, flags);
  bx_ = fftw_plan_many_dft(1, nxa, nz, p, nullptr, 1, nx, p, nullptr, 1, nx, FFTW_BACKWARD, flags);
  fz_ = fftw_plan_many_dft(1, nza, nx, p, nullptr, nx, 1, p, nullptr, nx, 1, FFTW_FORWARD, flags);
  bz_ = fftw_plan_many_dft(1, nza, nx, p, nullptr, nx, 1, p, nullptr, nx, 1, FFTW_BACKWARD, flags);
  f2_ = fftw_plan_dft_2d(nz, nx, p, p, FFTW_FORWARD, flags);
  b2_ = fftw_plan_dft_2d(nz, nx, p, p, FFTW_BACKWARD, flags);
}

Fourier::~Fourier() {
  std::lock_guard lock(planner_mutex());
  for (auto plan : {fx_, bx_, fz_, bz_, f2_, b2_})
    if (plan) fftw_destroy_plan(plan);
}

std::shared_ptr<const Fourier> Fourier::for_grid(const Grid2D& grid) {
  static std::mutex m;
  static std::map<std::tuple<std::size_t, std::size_t, double, double>,
                  std::weak_ptr<const Fourier>>
      cache;
  std::lock_guard lock(m);
  auto key = std::make_tuple(grid.nx(), grid.nz(), grid.dx(), grid.dz());
  if (auto it = cache.find(key); it != cache.end())
    if (auto sp = it->second.lock()) return sp;
  auto sp = std::make_shared<const Fourier>(grid);
  cache[key] = sp;
  return sp;
}

void Fourier::check(const Field& f) const {
  if (f.size() != grid_.size()) throw std::invalid_argument("field size does not match grid");
}

void Fourier::raw_forward_x(Complex* f) const { fftw_execute_dft(fx_, as_fftw(f), as_fftw(f)); }
void Fourier::raw_backward_x(Complex* f) const { fftw_execute_dft(bx_, as_fftw(f), as_fftw(f)); }
void Fourier::raw_forward_z(Complex* f) const { fftw_execute_dft(fz_, as_fftw(f), as_fftw(f)); }
void Fourier::raw_backward_z(Complex* f) const { fftw_execute_dft(bz_, as_fftw(f), as_fftw(f)); }
void Fourier::raw_forward_2d(Complex* f) const { fftw_execute_dft(f2_, as_fftw(f), as_fftw(f)); }
void Fourier::raw_backward_2d(Complex* f) const { fftw_execute_dft(b2_, as_fftw(f), as_fftw(f)); }

void scale(Field& f, double s) {
  for (auto& v : f) v *= s;
}

void Fourier::forward_x(Field& f) const {
  check(f);
  raw_forward_x(f.data());
  scale(f, 1.0 / std::sqrt(static_cast<double>(grid_.nx())));
}
void Fourier::backward_x(Field& f) const {
  check(f);
  raw_backward_x(f.data());
  scale(f, 1.0 / std::sqrt(static_cast<double>(grid_.nx())));
}
void Fourier::forward_z(Field& f) const {
  check(f);
  raw_forward_z(f.data());
  scale(f, 1.0 / std::sqrt(static_cast<double>(grid_.nz())));
}
void Fourier::backward_z(Field& f) const {
  check(f);
  raw_backward_z(f.data());
  scale(f, 1.0 / std::sqrt(static_cast<double>(grid_.nz())));
}
void Fourier::forward_2d(Field& f) const {
  check(f);
  raw_forward_2d(f.data());
  scale(f, 1.0 / std::sqrt(static_cast<double>(grid_.size())));
}
void Fourier::backward_2d(Field& f) const {
  check(f);
  raw_backward_2d(f.data());
  scale(f, 1.0 / std::sqrt(static_cast<double>(grid_.size())));
}

}  // namespace fwion
