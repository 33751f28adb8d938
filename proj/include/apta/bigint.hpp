// ============================================================================
// bigint.hpp — arbitrary-precision signed integers
// ============================================================================
//
// Sign-magnitude representation over 32-bit limbs (little endian). All
// polytope and simplex arithmetic in this project runs on exact rationals,
// whose numerators and denominators can outgrow any fixed-width type during
// pivoting, so we keep a small self-contained bignum here instead of pulling
// in an external multiprecision dependency.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace apta {

class BigInt {
public:
    BigInt() : sign_(0) {}
    BigInt(long long v);

    static BigInt from_string(const std::string& s);

    bool is_zero() const { return sign_ == 0; }
    bool is_negative() const { return sign_ < 0; }
    int sign() const { return sign_; }

    BigInt operator-() const;
    BigInt abs() const;

    BigInt operator+(const BigInt& o) const;
    BigInt operator-(const BigInt& o) const;
    BigInt operator*(const BigInt& o) const;
    // Truncated toward zero, like C++ integer division.
    BigInt operator/(const BigInt& o) const;
    BigInt operator%(const BigInt& o) const;

    BigInt& operator+=(const BigInt& o) { return *this = *this + o; }
    BigInt& operator-=(const BigInt& o) { return *this = *this - o; }
    BigInt& operator*=(const BigInt& o) { return *this = *this * o; }

    static void divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r);

    bool operator==(const BigInt& o) const;
    bool operator!=(const BigInt& o) const { return !(*this == o); }
    bool operator<(const BigInt& o) const;
    bool operator>(const BigInt& o) const { return o < *this; }
    bool operator<=(const BigInt& o) const { return !(o < *this); }
    bool operator>=(const BigInt& o) const { return !(*this < o); }

    static BigInt gcd(BigInt a, BigInt b);

    std::string to_string() const;

    // Value as long long; only valid when the magnitude fits.
    long long to_ll() const;
    bool fits_ll() const;

    size_t hash() const;

private:
    int sign_;                   // -1, 0, +1
    std::vector<uint32_t> mag_;  // little endian, no trailing zero limbs

    void trim();
    static int cmp_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b);
    static std::vector<uint32_t> add_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b);
    // Requires |a| >= |b|.
    static std::vector<uint32_t> sub_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b);
    static std::vector<uint32_t> mul_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b);
};

}  // namespace apta
