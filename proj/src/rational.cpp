#include "apta/rational.hpp"

#include <stdexcept>

namespace apta {

void Rational::normalize() {
    if (den_.is_zero()) throw std::domain_error("Rational: zero denominator");
    if (den_.is_negative()) {
        num_ = -num_;
        den_ = -den_;
    }
    if (num_.is_zero()) {
        den_ = BigInt(1);
        return;
    }
    BigInt g = BigInt::gcd(num_, den_);
    if (g != BigInt(1)) {
        num_ = num_ / g;
        den_ = den_ / g;
    }
}

Rational Rational::operator+(const Rational& o) const {
    return Rational(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

Rational Rational::operator-(const Rational& o) const {
    return Rational(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

Rational Rational::operator*(const Rational& o) const {
    return Rational(num_ * o.num_, den_ * o.den_);
}

Rational Rational::operator/(const Rational& o) const {
    if (o.num_.is_zero()) throw std::domain_error("Rational: division by zero");
    return Rational(num_ * o.den_, den_ * o.num_);
}

bool Rational::operator<(const Rational& o) const {
    return num_ * o.den_ < o.num_ * den_;
}

Rational Rational::parse(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("Rational: empty literal");
    size_t slash = text.find('/');
    if (slash != std::string::npos) {
        BigInt n = BigInt::from_string(text.substr(0, slash));
        BigInt d = BigInt::from_string(text.substr(slash + 1));
        return Rational(std::move(n), std::move(d));
    }
    size_t dot = text.find('.');
    if (dot != std::string::npos) {
        std::string digits = text.substr(0, dot) + text.substr(dot + 1);
        size_t frac_digits = text.size() - dot - 1;
        if (frac_digits == 0) throw std::invalid_argument("Rational: trailing dot");
        BigInt n = BigInt::from_string(digits);
        BigInt d(1);
        BigInt ten(10);
        for (size_t i = 0; i < frac_digits; ++i) d = d * ten;
        return Rational(std::move(n), std::move(d));
    }
    return Rational(BigInt::from_string(text), BigInt(1));
}

std::string Rational::to_string() const {
    if (is_integer()) return num_.to_string();
    return num_.to_string() + "/" + den_.to_string();
}

BigInt common_denominator(const std::vector<Rational>& values) {
    BigInt l(1);
    for (const Rational& v : values) {
        BigInt d = v.den();
        BigInt g = BigInt::gcd(l, d);
        l = l / g * d;
    }
    return l;
}

}  // namespace apta
