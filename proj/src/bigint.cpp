#include "apta/bigint.hpp"

#include <algorithm>
#include <stdexcept>

namespace apta {

BigInt::BigInt(long long v) {
    if (v == 0) {
        sign_ = 0;
        return;
    }
    sign_ = v < 0 ? -1 : 1;
    unsigned long long m = v < 0 ? -static_cast<unsigned long long>(v) : static_cast<unsigned long long>(v);
    while (m != 0) {
        mag_.push_back(static_cast<uint32_t>(m & 0xffffffffULL));
        m >>= 32;
    }
}

void BigInt::trim() {
    while (!mag_.empty() && mag_.back() == 0) mag_.pop_back();
    if (mag_.empty()) sign_ = 0;
}

int BigInt::cmp_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    for (size_t i = a.size(); i-- > 0;) {
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    }
    return 0;
}

std::vector<uint32_t> BigInt::add_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
    std::vector<uint32_t> r;
    r.reserve(std::max(a.size(), b.size()) + 1);
    uint64_t carry = 0;
    for (size_t i = 0; i < std::max(a.size(), b.size()); ++i) {
        uint64_t s = carry;
        if (i < a.size()) s += a[i];
        if (i < b.size()) s += b[i];
        r.push_back(static_cast<uint32_t>(s & 0xffffffffULL));
        carry = s >> 32;
    }
    if (carry) r.push_back(static_cast<uint32_t>(carry));
    return r;
}

std::vector<uint32_t> BigInt::sub_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
    std::vector<uint32_t> r;
    r.reserve(a.size());
    int64_t borrow = 0;
    for (size_t i = 0; i < a.size(); ++i) {
        int64_t s = static_cast<int64_t>(a[i]) - borrow - (i < b.size() ? static_cast<int64_t>(b[i]) : 0);
        if (s < 0) {
            s += (1LL << 32);
            borrow = 1;
        } else {
            borrow = 0;
        }
        r.push_back(static_cast<uint32_t>(s));
    }
    while (!r.empty() && r.back() == 0) r.pop_back();
    return r;
}

std::vector<uint32_t> BigInt::mul_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
    if (a.empty() || b.empty()) return {};
    std::vector<uint32_t> r(a.size() + b.size(), 0);
    for (size_t i = 0; i < a.size(); ++i) {
        uint64_t carry = 0;
        for (size_t j = 0; j < b.size(); ++j) {
            uint64_t cur = static_cast<uint64_t>(a[i]) * b[j] + r[i + j] + carry;
            r[i + j] = static_cast<uint32_t>(cur & 0xffffffffULL);
            carry = cur >> 32;
        }
        size_t k = i + b.size();
        while (carry) {
            uint64_t cur = r[k] + carry;
            r[k] = static_cast<uint32_t>(cur & 0xffffffffULL);
            carry = cur >> 32;
            ++k;
        }
    }
    while (!r.empty() && r.back() == 0) r.pop_back();
    return r;
}

BigInt BigInt::operator-() const {
    BigInt r = *this;
    r.sign_ = -r.sign_;
    return r;
}

BigInt BigInt::abs() const {
    BigInt r = *this;
    if (r.sign_ < 0) r.sign_ = 1;
    return r;
}

BigInt BigInt::operator+(const BigInt& o) const {
    if (sign_ == 0) return o;
    if (o.sign_ == 0) return *this;
    BigInt r;
    if (sign_ == o.sign_) {
        r.sign_ = sign_;
        r.mag_ = add_mag(mag_, o.mag_);
    } else {
        int c = cmp_mag(mag_, o.mag_);
        if (c == 0) return BigInt();
        if (c > 0) {
            r.sign_ = sign_;
            r.mag_ = sub_mag(mag_, o.mag_);
        } else {
            r.sign_ = o.sign_;
            r.mag_ = sub_mag(o.mag_, mag_);
        }
    }
    return r;
}

BigInt BigInt::operator-(const BigInt& o) const { return *this + (-o); }

BigInt BigInt::operator*(const BigInt& o) const {
    BigInt r;
    if (sign_ == 0 || o.sign_ == 0) return r;
    r.sign_ = sign_ * o.sign_;
    r.mag_ = mul_mag(mag_, o.mag_);
    return r;
}

void BigInt::divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r) {
    if (b.sign_ == 0) throw std::domain_error("BigInt: division by zero");
    if (cmp_mag(a.mag_, b.mag_) < 0) {
        q = BigInt();
        r = a;
        return;
    }
    // Single-limb fast path.
    if (b.mag_.size() == 1) {
        uint64_t d = b.mag_[0];
        std::vector<uint32_t> qm(a.mag_.size(), 0);
        uint64_t rem = 0;
        for (size_t i = a.mag_.size(); i-- > 0;) {
            uint64_t cur = (rem << 32) | a.mag_[i];
            qm[i] = static_cast<uint32_t>(cur / d);
            rem = cur % d;
        }
        q.mag_ = qm;
        q.trim();
        q.sign_ = q.mag_.empty() ? 0 : a.sign_ * b.sign_;
        r = BigInt(static_cast<long long>(rem));
        if (a.sign_ < 0) r.sign_ = -r.sign_;
        return;
    }
    // Binary long division over the magnitude bits.
    size_t nbits = a.mag_.size() * 32;
    BigInt rem;
    std::vector<uint32_t> qm((nbits + 31) / 32, 0);
    for (size_t i = nbits; i-- > 0;) {
        // rem = rem*2 + bit_i(a)
        uint64_t carry = (a.mag_[i / 32] >> (i % 32)) & 1u;
        for (size_t k = 0; k < rem.mag_.size(); ++k) {
            uint64_t cur = (static_cast<uint64_t>(rem.mag_[k]) << 1) | carry;
            rem.mag_[k] = static_cast<uint32_t>(cur & 0xffffffffULL);
            carry = cur >> 32;
        }
        if (carry) rem.mag_.push_back(static_cast<uint32_t>(carry));
        if (!rem.mag_.empty()) rem.sign_ = 1;
        if (cmp_mag(rem.mag_, b.mag_) >= 0) {
            rem.mag_ = sub_mag(rem.mag_, b.mag_);
            if (rem.mag_.empty()) rem.sign_ = 0;
            qm[i / 32] |= (1u << (i % 32));
        }
    }
    q.mag_ = qm;
    q.trim();
    q.sign_ = q.mag_.empty() ? 0 : a.sign_ * b.sign_;
    r = rem;
    r.trim();
    if (!r.mag_.empty()) r.sign_ = a.sign_;
}

BigInt BigInt::operator/(const BigInt& o) const {
    BigInt q, r;
    divmod(*this, o, q, r);
    return q;
}

BigInt BigInt::operator%(const BigInt& o) const {
    BigInt q, r;
    divmod(*this, o, q, r);
    return r;
}

bool BigInt::operator==(const BigInt& o) const {
    return sign_ == o.sign_ && mag_ == o.mag_;
}

bool BigInt::operator<(const BigInt& o) const {
    if (sign_ != o.sign_) return sign_ < o.sign_;
    int c = cmp_mag(mag_, o.mag_);
    return sign_ >= 0 ? c < 0 : c > 0;
}

BigInt BigInt::gcd(BigInt a, BigInt b) {
    a = a.abs();
    b = b.abs();
    while (!b.is_zero()) {
        BigInt q, r;
        divmod(a, b, q, r);
        a = b;
        b = r.abs();
    }
    return a;
}

BigInt BigInt::from_string(const std::string& s) {
    BigInt r;
    size_t i = 0;
    int sign = 1;
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) {
        if (s[i] == '-') sign = -1;
        ++i;
    }
    if (i >= s.size()) throw std::invalid_argument("BigInt: empty numeral");
    BigInt ten(10);
    for (; i < s.size(); ++i) {
        if (s[i] < '0' || s[i] > '9') throw std::invalid_argument("BigInt: bad digit");
        r = r * ten + BigInt(s[i] - '0');
    }
    if (sign < 0) r = -r;
    return r;
}

std::string BigInt::to_string() const {
    if (sign_ == 0) return "0";
    std::string digits;
    BigInt cur = abs();
    BigInt billion(1000000000LL);
    std::vector<uint32_t> chunks;
    while (!cur.is_zero()) {
        BigInt q, r;
        divmod(cur, billion, q, r);
        chunks.push_back(static_cast<uint32_t>(r.is_zero() ? 0 : r.to_ll()));
        cur = q;
    }
    std::string out = sign_ < 0 ? "-" : "";
    char buf[16];
    snprintf(buf, sizeof buf, "%u", chunks.back());
    out += buf;
    for (size_t i = chunks.size() - 1; i-- > 0;) {
        snprintf(buf, sizeof buf, "%09u", chunks[i]);
        out += buf;
    }
    return out;
}

bool BigInt::fits_ll() const {
    if (mag_.size() > 2) return false;
    unsigned long long m = 0;
    for (size_t i = mag_.size(); i-- > 0;) m = (m << 32) | mag_[i];
    if (sign_ >= 0) return m <= 0x7fffffffffffffffULL;
    return m <= 0x8000000000000000ULL;
}

long long BigInt::to_ll() const {
    unsigned long long m = 0;
    for (size_t i = mag_.size(); i-- > 0;) m = (m << 32) | mag_[i];
    return sign_ < 0 ? -static_cast<long long>(m) : static_cast<long long>(m);
}

size_t BigInt::hash() const {
    size_t h = static_cast<size_t>(sign_ + 1);
    for (uint32_t limb : mag_) h = h * 1000003u + limb;
    return h;
}

}  // namespace apta
