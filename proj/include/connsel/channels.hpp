#pragma once

#include <string>
#include <vector>

#include "connsel/common.hpp"

namespace connsel {

// One EEG frequency band. Connectivity is evaluated at mean_freq_hz.
struct BandSpec {
  std::string name;
  double lo_hz = 0.0;
  double hi_hz = 0.0;

  double mean_freq_hz() const { return 0.5 * (lo_hz + hi_hz); }
};

inline BandSpec make_band(std::string name, double lo, double hi) {
  if (!(0.0 < lo && lo < hi)) throw ArgumentError("band '" + name + "': need 0 < lo < hi");
  return BandSpec{std::move(name), lo, hi};
}

// The five canonical wavebands: delta, theta, alpha, beta, gamma.
inline const std::vector<BandSpec>& canonical_bands() {
  static const std::vector<BandSpec> bands = {
      make_band("delta", 1.0, 4.0),  make_band("theta", 4.0, 8.0), make_band("alpha", 8.0, 12.0),
      make_band("beta", 12.0, 30.0), make_band("gamma", 30.0, 40.0),
  };
  return bands;
}

// 19-electrode 10-20 montage, in the conventional listing order. This order
// defines channel indices used by feature ids and feature names.
inline const std::vector<std::string>& standard_1020_channels() {
  static const std::vector<std::string> ch = {"Fp1", "Fp2", "F7", "F3", "Fz", "F4", "F8", "T3", "C3", "Cz",
                                              "C4",  "T4",  "T5", "P3", "Pz", "P4", "T6", "O1", "O2"};
  return ch;
}

inline int band_index(const std::vector<BandSpec>& bands, const std::string& name) {
  for (std::size_t b = 0; b < bands.size(); ++b)
    if (bands[b].name == name) return static_cast<int>(b);
  throw ArgumentError("unknown band name: " + name);
}

inline int channel_index(const std::vector<std::string>& labels, const std::string& name) {
  for (std::size_t c = 0; c < labels.size(); ++c)
    if (labels[c] == name) return static_cast<int>(c);
  throw ArgumentError("unknown channel name: " + name);
}

}  // namespace connsel
