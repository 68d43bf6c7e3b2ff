#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

#include "connsel/common.hpp"
#include "connsel/recording.hpp"

namespace connsel {

// One second-order IIR section, normalized so a0 = 1.
struct Biquad {
  double b0 = 1.0, b1 = 0.0, b2 = 0.0;
  double a1 = 0.0, a2 = 0.0;

  std::complex<double> response(double freq_hz, double fs) const {
    const std::complex<double> z = std::polar(1.0, -2.0 * std::numbers::pi * freq_hz / fs);
    return (b0 + b1 * z + b2 * z * z) / (1.0 + a1 * z + a2 * z * z);
  }

  double dc_gain() const { return (b0 + b1 + b2) / (1.0 + a1 + a2); }
};

using SosChain = std::vector<Biquad>;

inline void check_below_nyquist(double f, double fs, const std::string& what) {
  if (!(f > 0.0)) throw InvalidFrequencyError(what + ": frequency must be positive");
  if (!(f < fs / 2.0))
    throw InvalidFrequencyError(what + ": " + std::to_string(f) + " Hz is at or above Nyquist (fs=" +
                                std::to_string(fs) + ")");
}

// RBJ cookbook notch: unit gain away from f0, zero at f0, bandwidth f0/q.
inline Biquad design_notch(double f0, double q, double fs) {
  check_below_nyquist(f0, fs, "notch");
  if (q <= 0) throw ArgumentError("notch: q must be positive");
  const double w0 = 2.0 * std::numbers::pi * f0 / fs;
  const double alpha = std::sin(w0) / (2.0 * q);
  const double c = std::cos(w0);
  const double a0 = 1.0 + alpha;
  Biquad s;
  s.b0 = 1.0 / a0;
  s.b1 = -2.0 * c / a0;
  s.b2 = 1.0 / a0;
  s.a1 = -2.0 * c / a0;
  s.a2 = (1.0 - alpha) / a0;
  return s;
}

// Even-order Butterworth as cascaded biquads via pole-pair bilinear transform.
// The analog prototype pole pair k has quality factor 1/(2 cos theta_k).
inline SosChain design_butterworth(int order, double cutoff_hz, double fs, bool highpass) {
  if (order < 2 || order % 2 != 0) throw ArgumentError("butterworth: order must be even and >= 2");
  check_below_nyquist(cutoff_hz, fs, "butterworth");
  const double warp = std::tan(std::numbers::pi * cutoff_hz / fs);  // prewarped analog cutoff
  SosChain chain;
  for (int k = 0; k < order / 2; ++k) {
    const double theta = std::numbers::pi * (2.0 * k + 1.0) / (2.0 * order);
    const double q = 1.0 / (2.0 * std::cos(theta));
    // Analog section s^2 + (w/q) s + w^2 (lowpass) mapped by s = (1-z^-1)/(1+z^-1) / ... with w = warp.
    const double w = warp;
    const double norm = 1.0 + w / q + w * w;
    Biquad s;
    if (!highpass) {
      s.b0 = w * w / norm;
      s.b1 = 2.0 * s.b0;
      s.b2 = s.b0;
    } else {
      s.b0 = 1.0 / norm;
      s.b1 = -2.0 * s.b0;
      s.b2 = s.b0;
    }
    s.a1 = 2.0 * (w * w - 1.0) / norm;
    s.a2 = (1.0 - w / q + w * w) / norm;
    chain.push_back(s);
  }
  return chain;
}

namespace detail {

// Steady-state DF2T state for a unit constant input (lfilter_zi analogue).
inline void steady_state_init(const Biquad& s, double& z1, double& z2) {
  const double h1 = s.dc_gain();
  z1 = h1 - s.b0;
  z2 = s.b2 - s.a2 * h1;
}

inline void filter_in_place(const Biquad& s, std::vector<double>& x, double scale_init) {
  double z1, z2;
  steady_state_init(s, z1, z2);
  z1 *= scale_init;
  z2 *= scale_init;
  for (double& v : x) {
    const double y = s.b0 * v + z1;
    z1 = s.b1 * v - s.a1 * y + z2;
    z2 = s.b2 * v - s.a2 * y;
    v = y;
  }
}

}  // namespace detail

// Forward-backward (zero-phase) filtering of one channel through an SOS
// chain, with odd-reflection padding at both ends to absorb transients.
inline std::vector<double> filtfilt(const SosChain& chain, const std::vector<double>& x,
                                    std::size_t pad_len = 0) {
  if (x.empty()) return {};
  const std::size_t n = x.size();
  if (pad_len == 0) pad_len = std::min(n - 1, static_cast<std::size_t>(768));
  pad_len = std::min(pad_len, n - 1);

  std::vector<double> ext;
  ext.reserve(n + 2 * pad_len);
  for (std::size_t i = pad_len; i >= 1; --i) ext.push_back(2.0 * x.front() - x[i]);
  ext.insert(ext.end(), x.begin(), x.end());
  for (std::size_t i = 1; i <= pad_len; ++i) ext.push_back(2.0 * x.back() - x[n - 1 - i]);

  for (const Biquad& s : chain) detail::filter_in_place(s, ext, ext.front());
  std::reverse(ext.begin(), ext.end());
  for (const Biquad& s : chain) detail::filter_in_place(s, ext, ext.front());
  std::reverse(ext.begin(), ext.end());

  return {ext.begin() + static_cast<std::ptrdiff_t>(pad_len),
          ext.begin() + static_cast<std::ptrdiff_t>(pad_len + n)};
}

inline Recording apply_chain(const Recording& rec, const SosChain& chain) {
  rec.validate();
  Recording out = rec;
  parallel_for(out.data.size(), [&](std::size_t c) { out.data[c] = filtfilt(chain, rec.data[c]); });
  return out;
}

// Zero-phase 50/60 Hz-style notch. q defaults to 30 at the call sites.
inline Recording apply_notch(const Recording& rec, double f0, double q) {
  rec.validate();
  check_below_nyquist(f0, rec.fs, "apply_notch");
  return apply_chain(rec, {design_notch(f0, q, rec.fs)});
}

// Zero-phase band limiting: Butterworth high-pass at lo plus low-pass at hi.
inline Recording apply_bandpass(const Recording& rec, double lo, double hi, int order = 4) {
  rec.validate();
  if (!(0.0 < lo && lo < hi)) throw InvalidFrequencyError("apply_bandpass: need 0 < lo < hi");
  check_below_nyquist(hi, rec.fs, "apply_bandpass");
  SosChain chain = design_butterworth(order, lo, rec.fs, /*highpass=*/true);
  const SosChain low = design_butterworth(order, hi, rec.fs, /*highpass=*/false);
  chain.insert(chain.end(), low.begin(), low.end());
  return apply_chain(rec, chain);
}

}  // namespace connsel
