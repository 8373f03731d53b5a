#pragma once

// Dense square matrices over Z[i][1/2]: Gaussian-integer numerators with one
// shared power-of-two denominator. No floating point anywhere.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "qecc_forge/common.hpp"

namespace qforge {

namespace detail {

inline std::int64_t add_checked(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw OverflowError("int64 overflow in addition");
  return r;
}

inline std::int64_t sub_checked(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) throw OverflowError("int64 overflow in subtraction");
  return r;
}

inline std::int64_t mul_checked(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("int64 overflow in multiplication");
  return r;
}

inline std::int64_t shl_checked(std::int64_t a, int bits) {
  if (bits == 0 || a == 0) return a;
  if (bits >= 63) throw OverflowError("int64 overflow in denominator alignment");
  return mul_checked(a, std::int64_t{1} << bits);
}

}  // namespace detail

struct Gaussian {
  std::int64_t re = 0;
  std::int64_t im = 0;

  bool operator==(const Gaussian&) const = default;

  bool is_zero() const { return re == 0 && im == 0; }

  Gaussian conj() const { return {re, detail::sub_checked(0, im)}; }

  /// this * i^power
  Gaussian rotated(int power) const {
    switch (power & 3) {
      case 0: return *this;
      case 1: return {detail::sub_checked(0, im), re};
      case 2: return {detail::sub_checked(0, re), detail::sub_checked(0, im)};
      default: return {im, detail::sub_checked(0, re)};
    }
  }

  friend Gaussian operator+(Gaussian a, Gaussian b) {
    return {detail::add_checked(a.re, b.re), detail::add_checked(a.im, b.im)};
  }
  friend Gaussian operator-(Gaussian a, Gaussian b) {
    return {detail::sub_checked(a.re, b.re), detail::sub_checked(a.im, b.im)};
  }
  friend Gaussian operator*(Gaussian a, Gaussian b) {
    using namespace detail;
    return {sub_checked(mul_checked(a.re, b.re), mul_checked(a.im, b.im)),
            add_checked(mul_checked(a.re, b.im), mul_checked(a.im, b.re))};
  }
  Gaussian operator-() const { return rotated(2); }

  Gaussian shifted_left(int bits) const {
    return {detail::shl_checked(re, bits), detail::shl_checked(im, bits)};
  }

  /// "0", "2", "-i", "1+i", "3-2i"
  std::string to_string() const {
    if (im == 0) return std::to_string(re);
    std::string imag;
    if (im == 1) {
      imag = "i";
    } else if (im == -1) {
      imag = "-i";
    } else {
      imag = std::to_string(im) + "i";
    }
    if (re == 0) return imag;
    return std::to_string(re) + (im > 0 ? "+" : "") + imag;
  }
};

/// num / 2^log2den in canonical form (log2den minimal, >= 0).
struct Dyadic {
  Gaussian num;
  int log2den = 0;

  static Dyadic make(Gaussian num, int log2den) {
    while (log2den > 0 && num.re % 2 == 0 && num.im % 2 == 0) {
      num = {num.re / 2, num.im / 2};
      --log2den;
    }
    if (num.is_zero()) log2den = 0;
    return {num, log2den};
  }

  static Dyadic integer(std::int64_t v) { return {{v, 0}, 0}; }

  bool operator==(const Dyadic&) const = default;

  std::string to_string() const {
    if (log2den == 0) return num.to_string();
    return "(" + num.to_string() + ")/" + std::to_string(std::int64_t{1} << log2den);
  }
};

class ExactMatrix {
 public:
  static constexpr std::size_t kMaxDim = 4096;

  ExactMatrix() = default;

  static ExactMatrix zero(std::size_t dim) {
    check_dim(dim);
    ExactMatrix m;
    m.dim_ = dim;
    m.num_.assign(dim * dim, Gaussian{});
    return m;
  }

  static ExactMatrix identity(std::size_t dim) {
    ExactMatrix m = zero(dim);
    for (std::size_t i = 0; i < dim; ++i) m.num_[i * dim + i] = {1, 0};
    return m;
  }

  /// Matrix value numerators / 2^log2den, row-major; result is canonical.
  static ExactMatrix from_numerators(std::size_t dim, int log2den, std::vector<Gaussian> num) {
    check_dim(dim);
    if (num.size() != dim * dim) throw std::invalid_argument("numerator count != dim^2");
    if (log2den < 0) throw std::invalid_argument("negative denominator exponent");
    ExactMatrix m;
    m.dim_ = dim;
    m.log2den_ = log2den;
    m.num_ = std::move(num);
    m.canonicalize();
    return m;
  }

  std::size_t dim() const noexcept { return dim_; }
  int log2den() const noexcept { return log2den_; }
  const Gaussian& num(std::size_t r, std::size_t c) const { return num_[r * dim_ + c]; }
  const std::vector<Gaussian>& numerators() const noexcept { return num_; }
  Dyadic at(std::size_t r, std::size_t c) const { return Dyadic::make(num(r, c), log2den_); }

  bool operator==(const ExactMatrix&) const = default;

  friend ExactMatrix operator+(const ExactMatrix& a, const ExactMatrix& b) {
    return combine(a, b, false);
  }
  friend ExactMatrix operator-(const ExactMatrix& a, const ExactMatrix& b) {
    return combine(a, b, true);
  }
  friend ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b) {
    return multiply(a, b, 1);
  }

  /// a * b, parallel over row blocks. Identical result for any `jobs`.
  static ExactMatrix multiply(const ExactMatrix& a, const ExactMatrix& b, unsigned jobs) {
    a.same_dim(b);
    const std::size_t n = a.dim_;
    std::vector<Gaussian> out(n * n);
    parallel_for(n, jobs, [&](std::size_t begin, std::size_t end) {
      std::vector<std::int64_t> re(n), im(n);
      for (std::size_t r = begin; r < end; ++r) {
        std::fill(re.begin(), re.end(), 0);
        std::fill(im.begin(), im.end(), 0);
        for (std::size_t j = 0; j < n; ++j) {
          const Gaussian x = a.num_[r * n + j];
          if (x.is_zero()) continue;
          const Gaussian* brow = &b.num_[j * n];
          for (std::size_t c = 0; c < n; ++c) {
            const Gaussian y = brow[c];
            if (y.is_zero()) continue;
            const Gaussian p = x * y;
            re[c] = detail::add_checked(re[c], p.re);
            im[c] = detail::add_checked(im[c], p.im);
          }
        }
        for (std::size_t c = 0; c < n; ++c) out[r * n + c] = {re[c], im[c]};
      }
    });
    return from_numerators(n, a.log2den_ + b.log2den_, std::move(out));
  }

  /// (factor / 2^extra_log2den) * this
  ExactMatrix scaled(Gaussian factor, int extra_log2den = 0) const {
    std::vector<Gaussian> out(num_.size());
    for (std::size_t i = 0; i < num_.size(); ++i) out[i] = num_[i] * factor;
    return from_numerators(dim_, log2den_ + extra_log2den, std::move(out));
  }

  ExactMatrix adjoint() const {
    std::vector<Gaussian> out(num_.size());
    for (std::size_t r = 0; r < dim_; ++r) {
      for (std::size_t c = 0; c < dim_; ++c) out[c * dim_ + r] = num_[r * dim_ + c].conj();
    }
    return from_numerators(dim_, log2den_, std::move(out));
  }

  Dyadic trace() const {
    Gaussian t;
    for (std::size_t i = 0; i < dim_; ++i) t = t + num_[i * dim_ + i];
    return Dyadic::make(t, log2den_);
  }

  bool is_zero() const {
    return std::all_of(num_.begin(), num_.end(), [](const Gaussian& g) { return g.is_zero(); });
  }

  bool is_hermitian() const {
    for (std::size_t r = 0; r < dim_; ++r) {
      for (std::size_t c = r; c < dim_; ++c) {
        if (num_[r * dim_ + c] != num_[c * dim_ + r].conj()) return false;
      }
    }
    return true;
  }

  bool is_idempotent(unsigned jobs = 1) const { return multiply(*this, *this, jobs) == *this; }

  /// Hermitian and idempotent.
  bool is_projector(unsigned jobs = 1) const { return is_hermitian() && is_idempotent(jobs); }

 private:
  static void check_dim(std::size_t dim) {
    if (dim == 0 || dim > kMaxDim) {
      throw std::invalid_argument("matrix dimension must be in [1, " + std::to_string(kMaxDim) +
                                  "], got " + std::to_string(dim));
    }
  }

  void same_dim(const ExactMatrix& o) const {
    if (dim_ != o.dim_) {
      throw std::invalid_argument("matrix dimension mismatch: " + std::to_string(dim_) + " vs " +
                                  std::to_string(o.dim_));
    }
  }

  static ExactMatrix combine(const ExactMatrix& a, const ExactMatrix& b, bool subtract) {
    a.same_dim(b);
    const int p = std::max(a.log2den_, b.log2den_);
    const int sa = p - a.log2den_;
    const int sb = p - b.log2den_;
    std::vector<Gaussian> out(a.num_.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
      const Gaussian x = a.num_[i].shifted_left(sa);
      const Gaussian y = b.num_[i].shifted_left(sb);
      out[i] = subtract ? x - y : x + y;
    }
    return from_numerators(a.dim_, p, std::move(out));
  }

  void canonicalize() {
    std::uint64_t bits = 0;
    for (const auto& g : num_) {
      bits |= static_cast<std::uint64_t>(g.re) | static_cast<std::uint64_t>(g.im);
    }
    if (bits == 0) {
      log2den_ = 0;
      return;
    }
    const int shift = std::min(std::countr_zero(bits), log2den_);
    if (shift == 0) return;
    for (auto& g : num_) g = {g.re >> shift, g.im >> shift};
    log2den_ -= shift;
  }

  std::size_t dim_ = 0;
  int log2den_ = 0;
  std::vector<Gaussian> num_;
};

}  // namespace qforge
