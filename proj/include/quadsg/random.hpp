#pragma once

#include <cstdint>
#include <random>

#include "quadsg/scalar.hpp"

namespace quadsg {

/// Seeded PRNG (std::mt19937_64). Bounded draws use rejection sampling on
/// the raw 64-bit output so sequences are identical across standard
/// libraries, which is not guaranteed for std::uniform_int_distribution.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform in [0, n), n > 0.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do x = engine_();
    while (x >= limit);
    return x % n;
  }

  /// Uniform integer in [lo, hi].
  long range(long lo, long hi) {
    return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo) + 1));
  }

  bool coin() { return below(2) == 1; }

  /// Bernoulli(num/den).
  bool bernoulli(const Rational& p) {
    constexpr std::uint64_t kScale = 1ull << 40;
    Rational scaled = p * Rational(static_cast<unsigned long>(kScale));
    mpz_class cut = scaled.get_num() / scaled.get_den();
    return mpz_class(static_cast<unsigned long>(below(kScale))) < cut;
  }

  /// u/v with u, v uniform in {1, ..., 2^31 - 1}.
  Rational multiplier() {
    constexpr std::uint64_t kMax = (1ull << 31) - 1;
    Rational q(static_cast<unsigned long>(1 + below(kMax)), static_cast<unsigned long>(1 + below(kMax)));
    q.canonicalize();
    return q;
  }

  /// Integer scalar in [-bound, bound]; Gaussian when `gaussian` is set.
  Scalar small(long bound, bool gaussian = false) {
    long re = range(-bound, bound);
    long im = gaussian ? range(-bound, bound) : 0;
    return Scalar(Rational(re), Rational(im));
  }

  Scalar nonzero_small(long bound, bool gaussian = false) {
    Scalar s;
    do s = small(bound, gaussian);
    while (s.is_zero());
    return s;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace quadsg
