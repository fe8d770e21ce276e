#include "fwion/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "fwion/fourier.hpp"
#include "fwion/types.hpp"

namespace fwion {

SpectrumRecord radiation_spectrum(const std::vector<double>& times, const std::vector<double>& values,
                                  double t_begin, double t_end, double frequency_unit,
                                  const std::string& channel, int pad_factor) {
  if (times.size() != values.size()) throw std::invalid_argument("times and values differ in length");
  if (times.size() < 8) throw ConfigError("record too short for a spectrum");
  if (!(frequency_unit > 0)) throw ConfigError("frequency unit must be positive");
  const double dt = times[1] - times[0];
  const double eps = std::abs(dt);
  if (t_begin < times.front() - eps || t_end > times.back() + eps || !(t_end > t_begin))
    throw ConfigError("spectrum window [" + std::to_string(t_begin) + ", " + std::to_string(t_end) +
                      "] lies outside the recorded span");
  std::vector<double> seg;
  for (std::size_t k = 0; k < times.size(); ++k)
    if (times[k] >= t_begin - eps && times[k] <= t_end + eps) seg.push_back(values[k]);
  const std::size_t n = seg.size();
  if (n < 8) throw ConfigError("spectrum window holds fewer than 8 samples");
  std::size_t m = 1;
  while (m < n * static_cast<std::size_t>(std::max(1, pad_factor))) m <<= 1;
  std::vector<Complex> buf(m);
  for (std::size_t k = 0; k < n; ++k) {
    const double w = std::pow(std::sin(std::numbers::pi * static_cast<double>(k) / static_cast<double>(n - 1)), 2);
    buf[k] = w * seg[k];
  }
  buf = fft_1d(std::move(buf), true);
  SpectrumRecord s;
  s.channel = channel;
  s.axis_unit = "omega";
  s.window = "hann";
  const double df = 2.0 * std::numbers::pi / (static_cast<double>(m) * dt) / frequency_unit;
  for (std::size_t k = 0; k <= m / 2; ++k) {
    s.frequency.push_back(df * static_cast<double>(k));
    s.power.push_back(std::norm(buf[k]));
  }
  s.resolution = 2.0 * std::numbers::pi / (static_cast<double>(n) * dt) / frequency_unit;
  return s;
}

namespace {

double safe_log(double v) { return std::log(std::max(v, 1e-300)); }

Peak refine(const SpectrumRecord& s, std::size_t k) {
  Peak p{s.frequency[k], s.power[k], k};
  if (k == 0 || k + 1 >= s.power.size()) return p;
  const double a = safe_log(s.power[k - 1]), b = safe_log(s.power[k]), c = safe_log(s.power[k + 1]);
  const double den = a - 2.0 * b + c;
  if (den >= 0.0) return p;
  const double off = 0.5 * (a - c) / den;
  const double df = s.frequency[k + 1] - s.frequency[k];
  p.position = s.frequency[k] + off * df;
  p.height = std::exp(b - 0.25 * (a - c) * off);
  return p;
}

std::pair<std::size_t, std::size_t> band(const SpectrumRecord& s, double lo, double hi) {
  if (!(hi > lo)) throw std::invalid_argument("empty search band");
  auto b = std::lower_bound(s.frequency.begin(), s.frequency.end(), lo);
  auto e = std::upper_bound(s.frequency.begin(), s.frequency.end(), hi);
  if (e - b < 3) throw std::runtime_error("search band holds fewer than three bins");
  return {static_cast<std::size_t>(b - s.frequency.begin()), static_cast<std::size_t>(e - s.frequency.begin())};
}

bool is_local_max(const std::vector<double>& p, std::size_t k) {
  const bool left = k == 0 || p[k] > p[k - 1];
  const bool right = k + 1 >= p.size() || p[k] >= p[k + 1];
  return left && right;
}

}  // namespace

std::vector<Peak> find_peaks(const SpectrumRecord& s, double lo, double hi, double rel_threshold) {
  const auto [b, e] = band(s, lo, hi);
  const double top = *std::max_element(s.power.begin() + static_cast<long>(b), s.power.begin() + static_cast<long>(e));
  std::vector<Peak> out;
  for (std::size_t k = b; k < e; ++k)
    if (is_local_max(s.power, k) && s.power[k] >= rel_threshold * top && s.power[k] > 0) out.push_back(refine(s, k));
  return out;
}

Peak dominant_peak(const SpectrumRecord& s, double lo, double hi, double prominence) {
  const auto [b, e] = band(s, lo, hi);
  std::size_t best = b;
  for (std::size_t k = b; k < e; ++k)
    if (s.power[k] > s.power[best]) best = k;
  std::vector<double> inband(s.power.begin() + static_cast<long>(b), s.power.begin() + static_cast<long>(e));
  std::nth_element(inband.begin(), inband.begin() + static_cast<long>(inband.size() / 2), inband.end());
  const double median = inband[inband.size() / 2];
  if (!(s.power[best] > prominence * median))
    throw std::runtime_error("no peak rises above the prominence threshold in the search band");
  const Peak top = refine(s, best);
  for (std::size_t k = b; k < e; ++k) {
    if (k + 2 > best && k < best + 2) continue;
    if (is_local_max(s.power, k) && s.power[k] >= 0.5 * s.power[best] && refine(s, k).height >= 0.9 * top.height)
      throw std::runtime_error("several comparably strong peaks in the search band");
  }
  return top;
}

LineShift line_shift(const SpectrumRecord& a, const SpectrumRecord& b, double lo, double hi, double prominence) {
  if (a.frequency.size() != b.frequency.size()) throw std::invalid_argument("spectra have different axes");
  for (std::size_t k = 0; k < a.frequency.size(); ++k)
    if (std::abs(a.frequency[k] - b.frequency[k]) > 1e-12 * std::max(1.0, std::abs(a.frequency[k])))
      throw std::invalid_argument("spectra have different axes");
  const Peak pa = dominant_peak(a, lo, hi, prominence);
  const Peak pb = dominant_peak(b, lo, hi, prominence);
  return {pa.position, pb.position, pa.position - pb.position};
}

SplittingResult splitting_analysis(const SpectrumRecord& s, double lo, double hi, double rel_threshold) {
  SplittingResult r;
  r.resolution = s.resolution > 0 ? s.resolution : (s.frequency.size() > 1 ? s.frequency[1] - s.frequency[0] : 0.0);
  r.peaks = find_peaks(s, lo, hi, rel_threshold);
  if (r.peaks.size() >= 2) {
    r.splitting = r.peaks.back().position - r.peaks.front().position;
    r.resolved = true;
  } else {
    r.splitting = r.resolution;
  }
  return r;
}

std::vector<double> harmonic_strengths(const SpectrumRecord& s, int max_order, double half_width) {
  std::vector<double> out;
  for (int n = 1; n <= max_order; ++n) {
    double best = 0.0;
    for (std::size_t k = 0; k < s.frequency.size(); ++k)
      if (std::abs(s.frequency[k] - n) <= half_width) best = std::max(best, s.power[k]);
    out.push_back(best);
  }
  return out;
}

int harmonic_cutoff(const std::vector<double>& strengths, int first_order, double drop_decades) {
  int cutoff = 0;
  std::vector<double> logs;
  for (int n = first_order | 1; n <= static_cast<int>(strengths.size()); n += 2) {
    const double l = std::log10(std::max(strengths[static_cast<std::size_t>(n - 1)], 1e-300));
    logs.push_back(l);
    std::vector<double> tmp = logs;
    std::nth_element(tmp.begin(), tmp.begin() + static_cast<long>(tmp.size() / 2), tmp.end());
    if (l >= tmp[tmp.size() / 2] - drop_decades) cutoff = n;
  }
  return cutoff;
}

double odd_even_contrast_decades(const std::vector<double>& strengths, int first_order, int last_order) {
  double odd = 0, even = 0;
  int no = 0, ne = 0;
  for (int n = std::max(1, first_order); n <= std::min<int>(last_order, static_cast<int>(strengths.size())); ++n) {
    const double l = std::log10(std::max(strengths[static_cast<std::size_t>(n - 1)], 1e-300));
    if (n % 2) {
      odd += l;
      ++no;
    } else {
      even += l;
      ++ne;
    }
  }
  if (!no || !ne) throw std::invalid_argument("order range holds no odd or no even harmonics");
  return odd / no - even / ne;
}

std::vector<double> second_derivative(const std::vector<double>& v, double dt) {
  std::vector<double> out(v.size(), 0.0);
  if (v.size() < 3) return out;
  for (std::size_t k = 1; k + 1 < v.size(); ++k) out[k] = (v[k + 1] - 2.0 * v[k] + v[k - 1]) / (dt * dt);
  out.front() = out[1];
  out.back() = out[v.size() - 2];
  return out;
}

}  // namespace fwion
