#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "connsel/common.hpp"

namespace connsel {

// Multichannel recording: data[ch][sample], one row per channel.
struct Recording {
  std::vector<std::vector<double>> data;
  double fs = 0.0;
  std::vector<std::string> labels;

  std::size_t channels() const { return data.size(); }
  std::size_t samples() const { return data.empty() ? 0 : data[0].size(); }
  double duration_s() const { return fs > 0 ? static_cast<double>(samples()) / fs : 0.0; }

  void validate() const {
    if (fs <= 0) throw ArgumentError("recording: fs must be positive");
    if (labels.size() != data.size()) throw ArgumentError("recording: label count != channel count");
    for (std::size_t c = 0; c < labels.size(); ++c)
      for (std::size_t d = c + 1; d < labels.size(); ++d)
        if (labels[c] == labels[d]) throw ArgumentError("recording: duplicate channel name " + labels[c]);
    if (samples() < 1) throw ArgumentError("recording: needs at least one sample");
    for (const auto& row : data)
      if (row.size() != samples()) throw ShapeError("recording: ragged channel data");
  }
};

// Fixed-length epochs cut from one recording: epochs[e][ch][sample].
struct EpochSet {
  std::vector<std::vector<std::vector<double>>> epochs;
  double fs = 0.0;
  double epoch_len_s = 0.0;

  std::size_t size() const { return epochs.size(); }
  std::size_t channels() const { return epochs.empty() ? 0 : epochs[0].size(); }
  std::size_t samples_per_epoch() const {
    return (epochs.empty() || epochs[0].empty()) ? 0 : epochs[0][0].size();
  }
};

// Cuts consecutive non-overlapping epochs after discarding the head of the
// recording; an incomplete trailing segment is dropped.
inline EpochSet epoch(const Recording& rec, double epoch_len_s, double discard_head_s) {
  rec.validate();
  if (epoch_len_s <= 0) throw ArgumentError("epoch: epoch_len_s must be positive");
  if (discard_head_s < 0) throw ArgumentError("epoch: discard_head_s must be non-negative");
  if (rec.duration_s() <= discard_head_s + epoch_len_s)
    throw InsufficientDataError("epoch: recording too short (" + std::to_string(rec.duration_s()) +
                                " s) for discard " + std::to_string(discard_head_s) + " s + epoch " +
                                std::to_string(epoch_len_s) + " s");

  const std::size_t head = static_cast<std::size_t>(std::llround(discard_head_s * rec.fs));
  const std::size_t len = static_cast<std::size_t>(std::llround(epoch_len_s * rec.fs));
  const std::size_t usable = rec.samples() - head;
  const std::size_t count = usable / len;
  if (count == 0) throw InsufficientDataError("epoch: no complete epoch after head discard");

  EpochSet es;
  es.fs = rec.fs;
  es.epoch_len_s = epoch_len_s;
  es.epochs.resize(count);
  for (std::size_t e = 0; e < count; ++e) {
    es.epochs[e].resize(rec.channels());
    const std::size_t start = head + e * len;
    for (std::size_t c = 0; c < rec.channels(); ++c)
      es.epochs[e][c].assign(rec.data[c].begin() + static_cast<std::ptrdiff_t>(start),
                             rec.data[c].begin() + static_cast<std::ptrdiff_t>(start + len));
  }
  return es;
}

inline double epoch_peak_to_peak(const std::vector<std::vector<double>>& epoch_data) {
  double worst = 0.0;
  for (const auto& ch : epoch_data) {
    const auto [lo, hi] = std::minmax_element(ch.begin(), ch.end());
    worst = std::max(worst, *hi - *lo);
  }
  return worst;
}

// Drops epochs whose worst-channel peak-to-peak amplitude exceeds the
// threshold. Order of the surviving epochs is preserved.
inline EpochSet reject_epochs(const EpochSet& es, double peak_to_peak_max) {
  if (peak_to_peak_max <= 0) throw ArgumentError("reject_epochs: threshold must be positive");
  EpochSet out;
  out.fs = es.fs;
  out.epoch_len_s = es.epoch_len_s;
  for (const auto& ep : es.epochs)
    if (epoch_peak_to_peak(ep) <= peak_to_peak_max) out.epochs.push_back(ep);
  if (out.epochs.empty()) throw EmptyEpochSetError("reject_epochs: every epoch exceeded the threshold");
  return out;
}

// Default epoch-rejection threshold: 8x the median per-epoch peak-to-peak.
inline double default_reject_threshold(const EpochSet& es, double multiple = 8.0) {
  if (es.epochs.empty()) throw EmptyEpochSetError("default_reject_threshold: empty epoch set");
  std::vector<double> p2p;
  p2p.reserve(es.size());
  for (const auto& ep : es.epochs) p2p.push_back(epoch_peak_to_peak(ep));
  std::sort(p2p.begin(), p2p.end());
  const std::size_t n = p2p.size();
  const double median = (n % 2 == 1) ? p2p[n / 2] : 0.5 * (p2p[n / 2 - 1] + p2p[n / 2]);
  return multiple * median;
}

// --- Recording file format -------------------------------------------------
//
// <stem>.f32  little-endian 32-bit floats, channel-major
// <stem>.json header: {"fs": ..., "channel_labels": [...], "n_samples": ...}

inline void save_recording(const Recording& rec, const std::string& stem) {
  rec.validate();
  nlohmann::ordered_json header;
  header["fs"] = rec.fs;
  header["channel_labels"] = rec.labels;
  header["n_samples"] = rec.samples();
  std::ofstream hf(stem + ".json");
  if (!hf) throw IoError("cannot write " + stem + ".json");
  hf << header.dump(2) << "\n";

  std::ofstream bf(stem + ".f32", std::ios::binary);
  if (!bf) throw IoError("cannot write " + stem + ".f32");
  for (const auto& ch : rec.data)
    for (double v : ch) {
      const float f = static_cast<float>(v);
      bf.write(reinterpret_cast<const char*>(&f), sizeof(float));
    }
}

inline Recording load_recording(const std::string& stem) {
  std::ifstream hf(stem + ".json");
  if (!hf) throw IoError("missing recording header: " + stem + ".json");
  nlohmann::json header;
  try {
    hf >> header;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("bad recording header " + stem + ".json: " + e.what());
  }
  Recording rec;
  try {
    rec.fs = header.at("fs").get<double>();
    rec.labels = header.at("channel_labels").get<std::vector<std::string>>();
    const std::size_t n_samples = header.at("n_samples").get<std::size_t>();
    rec.data.assign(rec.labels.size(), std::vector<double>(n_samples));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("bad recording header " + stem + ".json: " + e.what());
  }

  std::ifstream bf(stem + ".f32", std::ios::binary);
  if (!bf) throw IoError("missing recording data: " + stem + ".f32");
  for (auto& ch : rec.data)
    for (double& v : ch) {
      float f = 0.0f;
      bf.read(reinterpret_cast<char*>(&f), sizeof(float));
      if (!bf) throw ParseError(stem + ".f32 shorter than header's channels x n_samples");
      v = static_cast<double>(f);
    }
  char extra;
  if (bf.read(&extra, 1)) throw ParseError(stem + ".f32 longer than header's channels x n_samples");
  rec.validate();
  return rec;
}

}  // namespace connsel
