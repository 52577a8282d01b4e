#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>

namespace degdet {

using Residue = std::uint64_t;

/// Deterministic Miller-Rabin, exact for every 64-bit input.
bool is_prime(std::uint64_t n);

/// Modulus of GF(p). Construction validates primality; p must fit in 62 bits
/// so that sums of two residues never overflow.
class PrimeModulus {
 public:
  static constexpr std::uint64_t kMersenne31 = (std::uint64_t{1} << 31) - 1;
  static constexpr std::uint64_t kMaxPrime = (std::uint64_t{1} << 62);

  PrimeModulus() : p_(kMersenne31) {}
  explicit PrimeModulus(std::uint64_t p);

  std::uint64_t value() const noexcept { return p_; }

  Residue add(Residue a, Residue b) const noexcept {
    Residue s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Residue sub(Residue a, Residue b) const noexcept { return a >= b ? a - b : a + p_ - b; }
  Residue neg(Residue a) const noexcept { return a == 0 ? 0 : p_ - a; }
  Residue mul(Residue a, Residue b) const noexcept {
    return static_cast<Residue>((static_cast<unsigned __int128>(a) * b) % p_);
  }
  Residue pow(Residue a, std::uint64_t e) const noexcept;
  /// Inverse of a nonzero residue (Fermat).
  Residue inv(Residue a) const noexcept { return pow(a, p_ - 2); }

  /// Reduces a signed integer into [0, p).
  Residue reduce(std::int64_t v) const noexcept {
    auto r = v % static_cast<std::int64_t>(p_);
    return static_cast<Residue>(r < 0 ? r + static_cast<std::int64_t>(p_) : r);
  }

  friend bool operator==(PrimeModulus a, PrimeModulus b) { return a.p_ == b.p_; }

 private:
  std::uint64_t p_;
};

/// Integer degree extended by minus infinity (the degree of the zero
/// polynomial, or of an nc-singular matrix).
class Degree {
 public:
  Degree() = default;  // minus infinity
  Degree(std::int64_t v) : v_(v) {}  // NOLINT: implicit by intent

  static Degree minus_infinity() { return Degree{}; }

  bool is_finite() const noexcept { return v_.has_value(); }
  std::int64_t value() const { return v_.value(); }

  /// "-inf" or the decimal value.
  std::string to_string() const;

  friend bool operator==(const Degree&, const Degree&) = default;
  friend bool operator<(const Degree& a, const Degree& b) {
    if (!a.v_) return b.v_.has_value();
    return b.v_ && *a.v_ < *b.v_;
  }
  friend bool operator<=(const Degree& a, const Degree& b) { return !(b < a); }
  friend bool operator>(const Degree& a, const Degree& b) { return b < a; }
  friend bool operator>=(const Degree& a, const Degree& b) { return !(a < b); }
  friend Degree operator+(const Degree& a, std::int64_t b) {
    return a.v_ ? Degree{*a.v_ + b} : Degree{};
  }

 private:
  std::optional<std::int64_t> v_;
};

using Rng = std::mt19937_64;

/// splitmix64 finalizer; derives independent child seeds.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

inline Residue random_residue(Rng& rng, PrimeModulus mod) {
  return std::uniform_int_distribution<Residue>(0, mod.value() - 1)(rng);
}

}  // namespace degdet
