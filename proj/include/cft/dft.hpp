#pragma once

#include <complex>
#include <numbers>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace cft {

// 1-d complex DFT, sum_j exp(sign * 2 pi i j k / N) a_j. Radix-2 when N is a
// power of two, direct summation with a precomputed root table otherwise
// (axis lengths only need to be even, and stay small enough that O(N^2) on
// the odd sizes is acceptable).
class Dft1d {
 public:
  Dft1d(int length, int sign) : n_(length), sign_(sign) {
    if (length < 1) throw std::invalid_argument("Dft1d: length must be positive");
    if (sign != 1 && sign != -1) throw std::invalid_argument("Dft1d: sign must be +-1");
    pow2_ = (n_ & (n_ - 1)) == 0;
    if (pow2_) {
      rev_.resize(n_);
      int bits = 0;
      while ((1 << bits) < n_) ++bits;
      for (int i = 0; i < n_; ++i) {
        int r = 0;
        for (int b = 0; b < bits; ++b)
          if (i & (1 << b)) r |= 1 << (bits - 1 - b);
        rev_[i] = r;
      }
      roots_.resize(n_ / 2);
      for (int k = 0; k < n_ / 2; ++k)
        roots_[k] = std::polar(1.0, sign_ * 2.0 * std::numbers::pi * k / n_);
    } else {
      roots_.resize(n_);
      for (int k = 0; k < n_; ++k)
        roots_[k] = std::polar(1.0, sign_ * 2.0 * std::numbers::pi * k / n_);
    }
  }

  int length() const { return n_; }

  void run(std::complex<double>* a) const {
    if (n_ == 1) return;
    if (pow2_) {
      for (int i = 0; i < n_; ++i)
        if (i < rev_[i]) std::swap(a[i], a[rev_[i]]);
      for (int len = 2; len <= n_; len <<= 1) {
        const int step = n_ / len;
        for (int start = 0; start < n_; start += len) {
          for (int k = 0; k < len / 2; ++k) {
            const std::complex<double> w = roots_[static_cast<std::size_t>(k) * step];
            const std::complex<double> u = a[start + k];
            const std::complex<double> v = a[start + k + len / 2] * w;
            a[start + k] = u + v;
            a[start + k + len / 2] = u - v;
          }
        }
      }
    } else {
      std::vector<std::complex<double>> out(n_, {0.0, 0.0});
      for (int k = 0; k < n_; ++k) {
        std::complex<double> acc{0.0, 0.0};
        for (int j = 0; j < n_; ++j)
          acc += a[j] * roots_[(static_cast<std::size_t>(j) * k) % n_];
        out[k] = acc;
      }
      for (int k = 0; k < n_; ++k) a[k] = out[k];
    }
  }

 private:
  int n_, sign_;
  bool pow2_;
  std::vector<int> rev_;
  std::vector<std::complex<double>> roots_;
};

// In-place n-dimensional DFT over a row-major array (axis 0 slowest).
inline void dft_nd(std::span<std::complex<double>> data, std::span<const int> dims, int sign) {
  std::size_t total = 1;
  for (int d : dims) total *= static_cast<std::size_t>(d);
  if (total != data.size()) throw std::invalid_argument("dft_nd: size mismatch");

  std::size_t stride = total;  // stride between consecutive entries along the axis
  for (std::size_t axis = 0; axis < dims.size(); ++axis) {
    const int len = dims[axis];
    stride /= static_cast<std::size_t>(len);
    const Dft1d dft(len, sign);
    std::vector<std::complex<double>> line(len);
    const std::size_t block = stride * static_cast<std::size_t>(len);
    for (std::size_t base = 0; base < total; base += block) {
      for (std::size_t off = 0; off < stride; ++off) {
        std::complex<double>* p = data.data() + base + off;
        for (int j = 0; j < len; ++j) line[j] = p[static_cast<std::size_t>(j) * stride];
        dft.run(line.data());
        for (int j = 0; j < len; ++j) p[static_cast<std::size_t>(j) * stride] = line[j];
      }
    }
  }
}

}  // namespace cft
