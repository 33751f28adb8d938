// ============================================================================
// rational.hpp — exact rational numbers
// ============================================================================
//
// Every probability, guard bound and linear coefficient in this project is a
// Rational. Verdicts (refinement, satisfaction, consistency) must not depend
// on floating-point tolerance, so there is deliberately no double anywhere in
// the core.

#pragma once

#include <string>
#include <vector>

#include "apta/bigint.hpp"

namespace apta {

class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(long long v) : num_(v), den_(1) {}
    Rational(long long n, long long d) : num_(n), den_(d) { normalize(); }
    Rational(BigInt n, BigInt d) : num_(std::move(n)), den_(std::move(d)) { normalize(); }

    // Accepts "7", "-3/4" and decimal literals such as "0.25".
    static Rational parse(const std::string& text);

    const BigInt& num() const { return num_; }
    const BigInt& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_negative() const { return num_.is_negative(); }
    bool is_integer() const { return den_ == BigInt(1); }

    Rational operator-() const { return Rational(-num_, den_, nocheck{}); }
    Rational operator+(const Rational& o) const;
    Rational operator-(const Rational& o) const;
    Rational operator*(const Rational& o) const;
    Rational operator/(const Rational& o) const;

    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const Rational& o) const { return !(*this == o); }
    bool operator<(const Rational& o) const;
    bool operator>(const Rational& o) const { return o < *this; }
    bool operator<=(const Rational& o) const { return !(o < *this); }
    bool operator>=(const Rational& o) const { return !(*this < o); }

    // Canonical text: "p" when integral, else "p/q" in lowest terms.
    std::string to_string() const;

    size_t hash() const { return num_.hash() * 31 + den_.hash(); }

    static Rational min(const Rational& a, const Rational& b) { return a < b ? a : b; }
    static Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

private:
    struct nocheck {};
    Rational(BigInt n, BigInt d, nocheck) : num_(std::move(n)), den_(std::move(d)) {}
    void normalize();

    BigInt num_;
    BigInt den_;  // > 0
};

// Least common multiple of the denominators, as a positive integer.
BigInt common_denominator(const std::vector<Rational>& values);

}  // namespace apta
