#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace mgtc {

/// Arbitrary-precision signed integer.
///
/// Quotients truncate toward zero (the convention used by ASP grounders),
/// and remainders satisfy a == b * (a / b) + (a % b), so the remainder
/// carries the sign of the dividend.
class BigInt {
 public:
  BigInt() = default;
  BigInt(long long value);

  /// Parses an optionally signed decimal string. Throws std::invalid_argument
  /// on anything else.
  static BigInt parse(std::string_view decimal);

  bool is_zero() const { return sign_ == 0; }
  bool is_negative() const { return sign_ < 0; }
  int sign() const { return sign_; }

  BigInt operator-() const;
  BigInt abs() const;

  BigInt operator+(const BigInt& other) const;
  BigInt operator-(const BigInt& other) const;
  BigInt operator*(const BigInt& other) const;
  /// Truncated toward zero. Throws std::domain_error on zero divisor.
  BigInt operator/(const BigInt& other) const;
  /// a % b == a - b * (a / b). Throws std::domain_error on zero divisor.
  BigInt operator%(const BigInt& other) const;

  BigInt& operator+=(const BigInt& other) { return *this = *this + other; }
  BigInt& operator-=(const BigInt& other) { return *this = *this - other; }
  BigInt& operator++() { return *this += BigInt(1); }

  std::strong_ordering operator<=>(const BigInt& other) const;
  bool operator==(const BigInt& other) const = default;

  bool fits_int64() const;
  std::int64_t to_int64() const;  // throws std::overflow_error if too large

  std::string to_string() const;

 private:
  // sign_ is -1, 0 or +1; mag_ is little-endian base 2^32 with no leading
  // zero limbs, and empty exactly when the value is zero.
  int sign_ = 0;
  std::vector<std::uint32_t> mag_;

  static int compare_mag(const std::vector<std::uint32_t>& a,
                         const std::vector<std::uint32_t>& b);
  static std::vector<std::uint32_t> add_mag(const std::vector<std::uint32_t>& a,
                                            const std::vector<std::uint32_t>& b);
  // Requires a >= b.
  static std::vector<std::uint32_t> sub_mag(const std::vector<std::uint32_t>& a,
                                            const std::vector<std::uint32_t>& b);
  static std::vector<std::uint32_t> mul_mag(const std::vector<std::uint32_t>& a,
                                            const std::vector<std::uint32_t>& b);
  // Magnitude division; returns quotient and leaves remainder in rem.
  static std::vector<std::uint32_t> divmod_mag(const std::vector<std::uint32_t>& a,
                                               const std::vector<std::uint32_t>& b,
                                               std::vector<std::uint32_t>& rem);
  static void trim(std::vector<std::uint32_t>& mag);
  void normalize();
};

}  // namespace mgtc
