#include "mgtc/bigint.hpp"

#include <algorithm>
#include <stdexcept>

namespace mgtc {

namespace {
constexpr std::uint64_t kBase = 1ull << 32;
}

BigInt::BigInt(long long value) {
  if (value == 0) return;
  sign_ = value < 0 ? -1 : 1;
  // Avoid overflow on LLONG_MIN by working in unsigned space.
  std::uint64_t mag = value < 0 ? ~static_cast<std::uint64_t>(value) + 1
                                : static_cast<std::uint64_t>(value);
  while (mag != 0) {
    mag_.push_back(static_cast<std::uint32_t>(mag & 0xffffffffu));
    mag >>= 32;
  }
}

BigInt BigInt::parse(std::string_view decimal) {
  std::size_t pos = 0;
  int sign = 1;
  if (pos < decimal.size() && (decimal[pos] == '+' || decimal[pos] == '-')) {
    sign = decimal[pos] == '-' ? -1 : 1;
    ++pos;
  }
  if (pos == decimal.size())
    throw std::invalid_argument("BigInt::parse: empty numeral");
  BigInt result;
  const BigInt ten(10);
  for (; pos < decimal.size(); ++pos) {
    char c = decimal[pos];
    if (c < '0' || c > '9')
      throw std::invalid_argument("BigInt::parse: bad digit in numeral");
    result = result * ten + BigInt(c - '0');
  }
  if (sign < 0) result = -result;
  return result;
}

void BigInt::trim(std::vector<std::uint32_t>& mag) {
  while (!mag.empty() && mag.back() == 0) mag.pop_back();
}

void BigInt::normalize() {
  trim(mag_);
  if (mag_.empty()) sign_ = 0;
}

int BigInt::compare_mag(const std::vector<std::uint32_t>& a,
                        const std::vector<std::uint32_t>& b) {
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  for (std::size_t i = a.size(); i-- > 0;) {
    if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
  }
  return 0;
}

std::vector<std::uint32_t> BigInt::add_mag(const std::vector<std::uint32_t>& a,
                                           const std::vector<std::uint32_t>& b) {
  std::vector<std::uint32_t> out;
  out.reserve(std::max(a.size(), b.size()) + 1);
  std::uint64_t carry = 0;
  for (std::size_t i = 0; i < std::max(a.size(), b.size()) || carry; ++i) {
    std::uint64_t sum = carry;
    if (i < a.size()) sum += a[i];
    if (i < b.size()) sum += b[i];
    out.push_back(static_cast<std::uint32_t>(sum & 0xffffffffu));
    carry = sum >> 32;
  }
  return out;
}

std::vector<std::uint32_t> BigInt::sub_mag(const std::vector<std::uint32_t>& a,
                                           const std::vector<std::uint32_t>& b) {
  std::vector<std::uint32_t> out;
  out.reserve(a.size());
  std::int64_t borrow = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    std::int64_t diff = static_cast<std::int64_t>(a[i]) - borrow -
                        (i < b.size() ? static_cast<std::int64_t>(b[i]) : 0);
    if (diff < 0) {
      diff += static_cast<std::int64_t>(kBase);
      borrow = 1;
    } else {
      borrow = 0;
    }
    out.push_back(static_cast<std::uint32_t>(diff));
  }
  trim(out);
  return out;
}

std::vector<std::uint32_t> BigInt::mul_mag(const std::vector<std::uint32_t>& a,
                                           const std::vector<std::uint32_t>& b) {
  if (a.empty() || b.empty()) return {};
  std::vector<std::uint32_t> out(a.size() + b.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    std::uint64_t carry = 0;
    for (std::size_t j = 0; j < b.size() || carry; ++j) {
      std::uint64_t cur = out[i + j] + carry;
      if (j < b.size())
        cur += static_cast<std::uint64_t>(a[i]) * b[j];
      out[i + j] = static_cast<std::uint32_t>(cur & 0xffffffffu);
      carry = cur >> 32;
    }
  }
  trim(out);
  return out;
}

std::vector<std::uint32_t> BigInt::divmod_mag(const std::vector<std::uint32_t>& a,
                                              const std::vector<std::uint32_t>& b,
                                              std::vector<std::uint32_t>& rem) {
  rem.clear();
  if (compare_mag(a, b) < 0) {
    rem = a;
    trim(rem);
    return {};
  }
  // Bitwise long division; operand sizes stay tiny in this code base.
  std::vector<std::uint32_t> quot(a.size(), 0);
  std::vector<std::uint32_t> cur;
  for (std::size_t bit = a.size() * 32; bit-- > 0;) {
    // cur = cur * 2 + bit(a, bit)
    std::uint32_t carry = 0;
    for (std::size_t i = 0; i < cur.size(); ++i) {
      std::uint32_t next = cur[i] >> 31;
      cur[i] = (cur[i] << 1) | carry;
      carry = next;
    }
    if (carry) cur.push_back(carry);
    if ((a[bit / 32] >> (bit % 32)) & 1u) {
      if (cur.empty()) cur.push_back(1);
      else cur[0] |= 1u;
    }
    if (compare_mag(cur, b) >= 0) {
      cur = sub_mag(cur, b);
      quot[bit / 32] |= (1u << (bit % 32));
    }
  }
  rem = cur;
  trim(rem);
  trim(quot);
  return quot;
}

BigInt BigInt::operator-() const {
  BigInt out = *this;
  out.sign_ = -out.sign_;
  return out;
}

BigInt BigInt::abs() const {
  BigInt out = *this;
  if (out.sign_ < 0) out.sign_ = 1;
  return out;
}

BigInt BigInt::operator+(const BigInt& other) const {
  if (sign_ == 0) return other;
  if (other.sign_ == 0) return *this;
  BigInt out;
  if (sign_ == other.sign_) {
    out.sign_ = sign_;
    out.mag_ = add_mag(mag_, other.mag_);
  } else {
    int cmp = compare_mag(mag_, other.mag_);
    if (cmp == 0) return BigInt();
    if (cmp > 0) {
      out.sign_ = sign_;
      out.mag_ = sub_mag(mag_, other.mag_);
    } else {
      out.sign_ = other.sign_;
      out.mag_ = sub_mag(other.mag_, mag_);
    }
  }
  out.normalize();
  return out;
}

BigInt BigInt::operator-(const BigInt& other) const { return *this + (-other); }

BigInt BigInt::operator*(const BigInt& other) const {
  BigInt out;
  out.sign_ = sign_ * other.sign_;
  out.mag_ = mul_mag(mag_, other.mag_);
  out.normalize();
  return out;
}

BigInt BigInt::operator/(const BigInt& other) const {
  if (other.sign_ == 0) throw std::domain_error("BigInt: division by zero");
  BigInt out;
  std::vector<std::uint32_t> rem;
  out.mag_ = divmod_mag(mag_, other.mag_, rem);
  out.sign_ = sign_ * other.sign_;
  out.normalize();
  return out;
}

BigInt BigInt::operator%(const BigInt& other) const {
  if (other.sign_ == 0) throw std::domain_error("BigInt: division by zero");
  BigInt out;
  std::vector<std::uint32_t> rem;
  divmod_mag(mag_, other.mag_, rem);
  out.mag_ = std::move(rem);
  out.sign_ = sign_;
  out.normalize();
  return out;
}

std::strong_ordering BigInt::operator<=>(const BigInt& other) const {
  if (sign_ != other.sign_)
    return sign_ < other.sign_ ? std::strong_ordering::less
                               : std::strong_ordering::greater;
  int cmp = compare_mag(mag_, other.mag_);
  if (sign_ < 0) cmp = -cmp;
  if (cmp < 0) return std::strong_ordering::less;
  if (cmp > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

bool BigInt::fits_int64() const {
  if (mag_.size() > 2) return false;
  std::uint64_t mag = 0;
  if (mag_.size() >= 1) mag = mag_[0];
  if (mag_.size() == 2) mag |= static_cast<std::uint64_t>(mag_[1]) << 32;
  if (sign_ < 0) return mag <= (1ull << 63);
  return mag < (1ull << 63);
}

std::int64_t BigInt::to_int64() const {
  if (!fits_int64()) throw std::overflow_error("BigInt: does not fit in int64");
  std::uint64_t mag = 0;
  if (mag_.size() >= 1) mag = mag_[0];
  if (mag_.size() == 2) mag |= static_cast<std::uint64_t>(mag_[1]) << 32;
  if (sign_ < 0) return static_cast<std::int64_t>(~mag + 1);
  return static_cast<std::int64_t>(mag);
}

std::string BigInt::to_string() const {
  if (sign_ == 0) return "0";
  std::vector<std::uint32_t> work = mag_;
  std::string digits;
  const std::vector<std::uint32_t> ten = {10};
  while (!work.empty()) {
    std::vector<std::uint32_t> rem;
    work = divmod_mag(work, ten, rem);
    digits.push_back(static_cast<char>('0' + (rem.empty() ? 0 : rem[0])));
  }
  if (sign_ < 0) digits.push_back('-');
  std::reverse(digits.begin(), digits.end());
  return digits;
}

}  // namespace mgtc
