#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "fwion/records.hpp"

namespace fwion {

/// |FFT(w(t) a(t))|^2 over the samples with t in [t_begin, t_end], using a
/// Hanning window and zero padding to at least pad_factor times the window
/// length. Frequencies are reported in units of `frequency_unit` (e.g. the
/// laser omega). Throws ConfigError if the window is not inside the record
/// or holds fewer than 8 samples.
SpectrumRecord radiation_spectrum(const std::vector<double>& times, const std::vector<double>& values,
                                  double t_begin, double t_end, double frequency_unit,
                                  const std::string& channel = "x", int pad_factor = 4);

struct Peak {
  double position = 0.0;  // interpolated, axis units
  double height = 0.0;    // interpolated power
  std::size_t bin = 0;
};

/// Local maxima in [lo, hi] whose power exceeds rel_threshold times the band
/// maximum. Positions come from a parabola through the log power of the
/// maximum and its two neighbours.
std::vector<Peak> find_peaks(const SpectrumRecord& s, double lo, double hi, double rel_threshold);

/// Dominant peak in [lo, hi]. Throws std::runtime_error if it does not rise
/// `prominence` times above the band median, or if a second, separate local
/// maximum is within 1% of it.
Peak dominant_peak(const SpectrumRecord& s, double lo, double hi, double prominence = 10.0);

struct LineShift {
  double position_a = 0.0;
  double position_b = 0.0;
  double delta = 0.0;  // a - b
};

/// Throws std::invalid_argument for spectra on different axes.
LineShift line_shift(const SpectrumRecord& a, const SpectrumRecord& b, double lo, double hi,
                     double prominence = 10.0);

struct SplittingResult {
  std::vector<Peak> peaks;
  /// Largest minus smallest peak position, or the resolution when fewer than
  /// two peaks are found (then an upper bound).
  double splitting = 0.0;
  bool resolved = false;
  double resolution = 0.0;
};

SplittingResult splitting_analysis(const SpectrumRecord& s, double lo, double hi,
                                   double rel_threshold = 0.1);

/// Largest power in [n - half_width, n + half_width] for n = 1..max_order.
/// Element n-1 belongs to order n.
std::vector<double> harmonic_strengths(const SpectrumRecord& s, int max_order, double half_width = 0.3);

/// Highest odd order whose strength is within `drop_decades` of the median
/// of the odd orders from `first_order` up to it.
int harmonic_cutoff(const std::vector<double>& strengths, int first_order = 5, double drop_decades = 2.0);

/// Mean log10 strength of odd orders minus that of even orders in
/// [first_order, last_order]; positive means the comb is odd.
double odd_even_contrast_decades(const std::vector<double>& strengths, int first_order, int last_order);

/// Second derivative of uniformly sampled data by central differences; the
/// end points copy their neighbours.
std::vector<double> second_derivative(const std::vector<double>& values, double dt);

}  // namespace fwion
