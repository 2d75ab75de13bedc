// Copyright 2026 The VISTA Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef VISTA_VOLUME_HPP_
#define VISTA_VOLUME_HPP_

#include <array>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "vista/common.hpp"
#include "vista/tensor.hpp"

namespace vista {

/// Co-registered S-sequence 3D volume, the unit of adaptation.
struct MultiSequenceVolume {
  Tensor4 data;  // S x H x W x D
  std::vector<std::string> sequence_names;
  std::array<double, 3> spacing{1.0, 1.0, 1.0};

  int sequences() const { return data.c(); }

  void validate() const {
    if (data.c() < 2) throw ShapeError("MultiSequenceVolume: need at least 2 sequences");
    if (data.h() < 8 || data.w() < 8 || data.d() < 8)
      throw ShapeError("MultiSequenceVolume: spatial dims must be >= 8");
    if (static_cast<int>(sequence_names.size()) != data.c())
      throw ShapeError("MultiSequenceVolume: name count != sequence count");
    std::set<std::string> uniq(sequence_names.begin(), sequence_names.end());
    if (static_cast<int>(uniq.size()) != data.c())
      throw ValueError("MultiSequenceVolume: sequence names must be distinct");
    for (double s : spacing)
      if (!(s > 0.0)) throw ValueError("MultiSequenceVolume: spacing must be positive");
    if (!data.all_finite()) throw ValueError("MultiSequenceVolume: non-finite values");
  }
};

/// Pre-sigmoid per-channel predictions, C x H x W x D.
struct LogitMap {
  Tensor4 data;
};

/// Sigmoid probabilities, C x H x W x D, values in [0, 1].
struct ProbabilityMap {
  Tensor4 data;

  void validate() const {
    for (std::size_t i = 0; i < data.size(); ++i)
      if (!(data[i] >= 0.0f && data[i] <= 1.0f))
        throw ValueError("ProbabilityMap: value outside [0,1]");
  }
};

/// {0,1} mask over H x W x D.
struct BinaryMask3D {
  int h = 0, w = 0, d = 0;
  std::vector<std::uint8_t> data;

  BinaryMask3D() = default;
  BinaryMask3D(int h_, int w_, int d_, std::uint8_t fill = 0)
      : h(h_), w(w_), d(d_), data(static_cast<std::size_t>(h_) * w_ * d_, fill) {}

  std::size_t idx(int hi, int wi, int di) const {
    return (static_cast<std::size_t>(hi) * w + wi) * d + di;
  }
  std::uint8_t& at(int hi, int wi, int di) { return data[idx(hi, wi, di)]; }
  std::uint8_t at(int hi, int wi, int di) const { return data[idx(hi, wi, di)]; }

  std::size_t count_ones() const {
    std::size_t n = 0;
    for (auto v : data) n += v;
    return n;
  }
};

/// {0,1} label channels, C x H x W x D. When `nested`, channel c+1 is a
/// subset of channel c.
struct LabelVolume {
  int c = 0, h = 0, w = 0, d = 0;
  std::vector<std::uint8_t> data;
  std::vector<std::string> channel_names;
  bool nested = false;

  LabelVolume() = default;
  LabelVolume(int c_, int h_, int w_, int d_)
      : c(c_), h(h_), w(w_), d(d_), data(static_cast<std::size_t>(c_) * h_ * w_ * d_, 0) {}

  std::size_t idx(int ci, int hi, int wi, int di) const {
    return ((static_cast<std::size_t>(ci) * h + hi) * w + wi) * d + di;
  }
  std::uint8_t& at(int ci, int hi, int wi, int di) { return data[idx(ci, hi, wi, di)]; }
  std::uint8_t at(int ci, int hi, int wi, int di) const { return data[idx(ci, hi, wi, di)]; }

  std::size_t voxels() const { return static_cast<std::size_t>(h) * w * d; }

  void validate() const {
    for (auto v : data)
      if (v > 1) throw ValueError("LabelVolume: values must be 0 or 1");
    if (nested) {
      for (int ci = 0; ci + 1 < c; ++ci) {
        const std::uint8_t* outer = data.data() + static_cast<std::size_t>(ci) * voxels();
        const std::uint8_t* inner = data.data() + static_cast<std::size_t>(ci + 1) * voxels();
        for (std::size_t i = 0; i < voxels(); ++i)
          if (inner[i] && !outer[i]) throw ValueError("LabelVolume: nesting violated");
      }
    }
  }
};

/// Per-sequence Z-score over all voxels. Throws ZeroVarianceSequence if a
/// sequence is (numerically) constant.
inline MultiSequenceVolume zscore_normalize(const MultiSequenceVolume& vol) {
  MultiSequenceVolume out = vol;
  const std::size_t n = vol.data.voxels();
  for (int s = 0; s < vol.data.c(); ++s) {
    const float* src = vol.data.data() + static_cast<std::size_t>(s) * n;
    float* dst = out.data.data() + static_cast<std::size_t>(s) * n;
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) sum += src[i];
    const double mu = sum / static_cast<double>(n);
    double ss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double dv = src[i] - mu;
      ss += dv * dv;
    }
    const double sigma = std::sqrt(ss / static_cast<double>(n));
    double scale = std::max(1.0, std::abs(mu));
    if (sigma <= 1e-12 * scale)
      throw ZeroVarianceSequence("zscore_normalize: sequence " + std::to_string(s) +
                                 " has zero variance");
    for (std::size_t i = 0; i < n; ++i)
      dst[i] = static_cast<float>((src[i] - mu) / sigma);
  }
  return out;
}

// ---------------------------------------------------------------------------
// On-disk container: ASCII header followed by raw little-endian f32 payloads.
//
//   MSVOL1
//   kind <token>
//   endian little
//   dtype f32
//   spacing <x> <y> <z>          (optional)
//   names <n0> <n1> ...          (optional)
//   meta <key> <value>           (repeated, optional)
//   tensor <name> <ndim> <d0> ...(repeated)
//   end
//   <payload bytes>
// ---------------------------------------------------------------------------

inline constexpr const char* kContainerMagic = "MSVOL1";

struct NamedTensor {
  std::string name;
  std::vector<int> dims;
  std::vector<float> values;

  std::size_t count() const {
    std::size_t n = 1;
    for (int d : dims) n *= static_cast<std::size_t>(d);
    return n;
  }
};

struct Container {
  std::string kind;
  std::array<double, 3> spacing{1.0, 1.0, 1.0};
  bool has_spacing = false;
  std::vector<std::string> names;
  std::map<std::string, std::string> meta;
  std::vector<NamedTensor> tensors;

  const NamedTensor& tensor(const std::string& name) const {
    for (const auto& t : tensors)
      if (t.name == name) return t;
    throw FormatError("container: missing tensor '" + name + "'");
  }
};

inline void write_container(const Container& c, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot open for writing: " + path);
  os << kContainerMagic << "\n";
  os << "kind " << c.kind << "\n";
  os << "endian little\n";
  os << "dtype f32\n";
  if (c.has_spacing)
    os << "spacing " << c.spacing[0] << " " << c.spacing[1] << " " << c.spacing[2] << "\n";
  if (!c.names.empty()) {
    os << "names";
    for (const auto& n : c.names) os << " " << n;
    os << "\n";
  }
  for (const auto& [k, v] : c.meta) os << "meta " << k << " " << v << "\n";
  for (const auto& t : c.tensors) {
    os << "tensor " << t.name << " " << t.dims.size();
    for (int d : t.dims) os << " " << d;
    os << "\n";
    if (t.values.size() != t.count()) throw ShapeError("container: tensor size mismatch");
  }
  os << "end\n";
  for (const auto& t : c.tensors)
    os.write(reinterpret_cast<const char*>(t.values.data()),
             static_cast<std::streamsize>(t.values.size() * sizeof(float)));
  if (!os) throw IoError("write failed: " + path);
}

inline Container read_container(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot open for reading: " + path);
  std::string line;
  if (!std::getline(is, line) || line != kContainerMagic)
    throw FormatError("bad magic in " + path);
  Container c;
  bool saw_end = false;
  while (std::getline(is, line)) {
    std::istringstream ls(line);
    std::string tok;
    ls >> tok;
    if (tok == "end") {
      saw_end = true;
      break;
    } else if (tok == "kind") {
      ls >> c.kind;
    } else if (tok == "endian") {
      std::string e;
      ls >> e;
      if (e != "little") throw FormatError("unsupported endianness: " + e);
    } else if (tok == "dtype") {
      std::string t;
      ls >> t;
      if (t != "f32") throw FormatError("unsupported dtype: " + t);
    } else if (tok == "spacing") {
      ls >> c.spacing[0] >> c.spacing[1] >> c.spacing[2];
      if (!ls) throw FormatError("bad spacing line");
      c.has_spacing = true;
    } else if (tok == "names") {
      std::string n;
      while (ls >> n) c.names.push_back(n);
    } else if (tok == "meta") {
      std::string k;
      ls >> k;
      std::string rest;
      std::getline(ls, rest);
      if (!rest.empty() && rest.front() == ' ') rest.erase(0, 1);
      c.meta[k] = rest;
    } else if (tok == "tensor") {
      NamedTensor t;
      std::size_t ndim = 0;
      ls >> t.name >> ndim;
      if (!ls || ndim == 0 || ndim > 8) throw FormatError("bad tensor line");
      t.dims.resize(ndim);
      for (auto& d : t.dims) {
        ls >> d;
        if (!ls || d <= 0) throw FormatError("bad tensor dims");
      }
      c.tensors.push_back(std::move(t));
    } else if (tok.empty()) {
      continue;
    } else {
      throw FormatError("unknown header line: " + line);
    }
  }
  if (!saw_end) throw FormatError("truncated header in " + path);
  for (auto& t : c.tensors) {
    t.values.resize(t.count());
    is.read(reinterpret_cast<char*>(t.values.data()),
            static_cast<std::streamsize>(t.values.size() * sizeof(float)));
    if (is.gcount() != static_cast<std::streamsize>(t.values.size() * sizeof(float)))
      throw FormatError("payload shorter than header declares in " + path);
  }
  return c;
}

inline void save_volume(const MultiSequenceVolume& vol, const std::string& path) {
  Container c;
  c.kind = "volume";
  c.spacing = vol.spacing;
  c.has_spacing = true;
  c.names = vol.sequence_names;
  NamedTensor t;
  t.name = "data";
  t.dims = {vol.data.c(), vol.data.h(), vol.data.w(), vol.data.d()};
  t.values.assign(vol.data.data(), vol.data.data() + vol.data.size());
  c.tensors.push_back(std::move(t));
  write_container(c, path);
}

inline MultiSequenceVolume load_volume(const std::string& path) {
  Container c = read_container(path);
  if (c.kind != "volume") throw FormatError("not a volume file: " + path);
  const NamedTensor& t = c.tensor("data");
  if (t.dims.size() != 4) throw FormatError("volume tensor must be 4-d");
  MultiSequenceVolume vol;
  vol.data = Tensor4(t.dims[0], t.dims[1], t.dims[2], t.dims[3]);
  std::copy(t.values.begin(), t.values.end(), vol.data.data());
  vol.sequence_names = c.names;
  vol.spacing = c.spacing;
  vol.validate();
  return vol;
}

inline void save_labels(const LabelVolume& lab, const std::string& path) {
  Container c;
  c.kind = "labels";
  c.names = lab.channel_names;
  c.meta["nested"] = lab.nested ? "1" : "0";
  NamedTensor t;
  t.name = "data";
  t.dims = {lab.c, lab.h, lab.w, lab.d};
  t.values.resize(lab.data.size());
  for (std::size_t i = 0; i < lab.data.size(); ++i) t.values[i] = lab.data[i];
  c.tensors.push_back(std::move(t));
  write_container(c, path);
}

inline LabelVolume load_labels(const std::string& path) {
  Container c = read_container(path);
  if (c.kind != "labels") throw FormatError("not a labels file: " + path);
  const NamedTensor& t = c.tensor("data");
  if (t.dims.size() != 4) throw FormatError("labels tensor must be 4-d");
  LabelVolume lab(t.dims[0], t.dims[1], t.dims[2], t.dims[3]);
  for (std::size_t i = 0; i < t.values.size(); ++i)
    lab.data[i] = t.values[i] != 0.0f ? 1 : 0;
  lab.channel_names = c.names;
  auto it = c.meta.find("nested");
  lab.nested = it != c.meta.end() && it->second == "1";
  lab.validate();
  return lab;
}

inline void save_probability_map(const ProbabilityMap& p, const std::string& path) {
  Container c;
  c.kind = "probmap";
  NamedTensor t;
  t.name = "data";
  t.dims = {p.data.c(), p.data.h(), p.data.w(), p.data.d()};
  t.values.assign(p.data.data(), p.data.data() + p.data.size());
  c.tensors.push_back(std::move(t));
  write_container(c, path);
}

inline ProbabilityMap load_probability_map(const std::string& path) {
  Container c = read_container(path);
  if (c.kind != "probmap") throw FormatError("not a probability map file: " + path);
  const NamedTensor& t = c.tensor("data");
  if (t.dims.size() != 4) throw FormatError("probmap tensor must be 4-d");
  ProbabilityMap p;
  p.data = Tensor4(t.dims[0], t.dims[1], t.dims[2], t.dims[3]);
  std::copy(t.values.begin(), t.values.end(), p.data.data());
  return p;
}

}  // namespace vista

#endif  // VISTA_VOLUME_HPP_
