// Copyright 2026 The VISTA Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef VISTA_TENSOR_HPP_
#define VISTA_TENSOR_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "vista/common.hpp"
#include "vista/rng.hpp"

namespace vista {

/// Dense float tensor of shape C x H x W x D, innermost dimension D.
class Tensor4 {
 public:
  Tensor4() = default;
  Tensor4(int c, int h, int w, int d, float fill = 0.0f)
      : c_(c), h_(h), w_(w), d_(d), v_(static_cast<std::size_t>(c) * h * w * d, fill) {
    if (c <= 0 || h <= 0 || w <= 0 || d <= 0) throw ShapeError("Tensor4: dims must be positive");
  }

  int c() const { return c_; }
  int h() const { return h_; }
  int w() const { return w_; }
  int d() const { return d_; }
  std::size_t size() const { return v_.size(); }
  std::size_t voxels() const { return static_cast<std::size_t>(h_) * w_ * d_; }

  float* data() { return v_.data(); }
  const float* data() const { return v_.data(); }

  float& at(int ci, int hi, int wi, int di) { return v_[idx(ci, hi, wi, di)]; }
  float at(int ci, int hi, int wi, int di) const { return v_[idx(ci, hi, wi, di)]; }

  float& operator[](std::size_t i) { return v_[i]; }
  float operator[](std::size_t i) const { return v_[i]; }

  std::size_t idx(int ci, int hi, int wi, int di) const {
    return ((static_cast<std::size_t>(ci) * h_ + hi) * w_ + wi) * d_ + di;
  }

  bool same_shape(const Tensor4& o) const {
    return c_ == o.c_ && h_ == o.h_ && w_ == o.w_ && d_ == o.d_;
  }

  bool same_spatial(const Tensor4& o) const { return h_ == o.h_ && w_ == o.w_ && d_ == o.d_; }

  void fill(float x) { std::fill(v_.begin(), v_.end(), x); }

  bool all_finite() const {
    for (float x : v_)
      if (!std::isfinite(x)) return false;
    return true;
  }

  static Tensor4 randn(int c, int h, int w, int d, Rng& rng, float stddev = 1.0f) {
    Tensor4 t(c, h, w, d);
    for (auto& x : t.v_) x = stddev * rng.normal_f();
    return t;
  }

  friend bool bitwise_equal(const Tensor4& a, const Tensor4& b) {
    return a.same_shape(b) && std::equal(a.v_.begin(), a.v_.end(), b.v_.begin(),
                                         [](float x, float y) {
                                           return std::bit_cast<std::uint32_t>(x) ==
                                                  std::bit_cast<std::uint32_t>(y);
                                         });
  }

 private:
  int c_ = 0, h_ = 0, w_ = 0, d_ = 0;
  std::vector<float> v_;
};

/// Dense float tensor of shape H x W x D.
class Tensor3 {
 public:
  Tensor3() = default;
  Tensor3(int h, int w, int d, float fill = 0.0f)
      : h_(h), w_(w), d_(d), v_(static_cast<std::size_t>(h) * w * d, fill) {
    if (h <= 0 || w <= 0 || d <= 0) throw ShapeError("Tensor3: dims must be positive");
  }

  int h() const { return h_; }
  int w() const { return w_; }
  int d() const { return d_; }
  std::size_t size() const { return v_.size(); }

  float* data() { return v_.data(); }
  const float* data() const { return v_.data(); }

  float& at(int hi, int wi, int di) { return v_[idx(hi, wi, di)]; }
  float at(int hi, int wi, int di) const { return v_[idx(hi, wi, di)]; }

  float& operator[](std::size_t i) { return v_[i]; }
  float operator[](std::size_t i) const { return v_[i]; }

  std::size_t idx(int hi, int wi, int di) const {
    return (static_cast<std::size_t>(hi) * w_ + wi) * d_ + di;
  }

 private:
  int h_ = 0, w_ = 0, d_ = 0;
  std::vector<float> v_;
};

inline double mean_of(const float* p, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += p[i];
  return s / static_cast<double>(n);
}

}  // namespace vista

#endif  // VISTA_TENSOR_HPP_
