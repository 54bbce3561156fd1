#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>

namespace sfpd {

using BigInt = boost::multiprecision::cpp_int;

// Exact rational number, always kept in lowest terms with a positive
// denominator. All solver arithmetic goes through this type; floating
// point appears only in report output.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(long long n) : num_(n), den_(1) {}
    Rational(const BigInt& n) : num_(n), den_(1) {}
    Rational(BigInt n, BigInt d) : num_(std::move(n)), den_(std::move(d)) {
        if (den_ == 0)
            throw std::domain_error("Rational: zero denominator");
        normalize();
    }

    const BigInt& numerator() const { return num_; }
    const BigInt& denominator() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_negative() const { return num_ < 0; }
    bool is_positive() const { return num_ > 0; }
    bool is_integer() const { return den_ == 1; }

    friend Rational operator-(const Rational& x) {
        Rational r;
        r.num_ = -x.num_;
        r.den_ = x.den_;
        return r;
    }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return Rational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return Rational(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0)
            throw std::domain_error("Rational: division by zero");
        return Rational(a.num_ * b.den_, a.den_ * b.num_);
    }

    Rational& operator+=(const Rational& x) { return *this = *this + x; }
    Rational& operator-=(const Rational& x) { return *this = *this - x; }
    Rational& operator*=(const Rational& x) { return *this = *this * x; }
    Rational& operator/=(const Rational& x) { return *this = *this / x; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        return a.num_ * b.den_ < b.num_ * a.den_;
    }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

    // Canonical exact rendering, e.g. "3/2", "-1/4", "5/1".
    std::string str() const {
        return num_.str() + "/" + den_.str();
    }

    // Approximate value for human-readable annotations only.
    double to_double() const {
        return static_cast<double>(num_) / static_cast<double>(den_);
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& x) {
        return os << x.str();
    }

    // Accepts "p/q", plain integers, and finite decimals ("0.25" -> 1/4).
    static Rational parse(const std::string& text) {
        if (text.empty())
            throw std::invalid_argument("Rational: empty literal");
        auto slash = text.find('/');
        if (slash != std::string::npos) {
            BigInt p = parse_int(text.substr(0, slash));
            BigInt q = parse_int(text.substr(slash + 1));
            return Rational(p, q);
        }
        auto dot = text.find('.');
        if (dot != std::string::npos) {
            std::string whole = text.substr(0, dot);
            std::string frac = text.substr(dot + 1);
            if (frac.empty())
                throw std::invalid_argument("Rational: bad decimal '" + text + "'");
            bool neg = !whole.empty() && whole[0] == '-';
            BigInt w = whole.empty() || whole == "-" || whole == "+"
                           ? BigInt(0)
                           : parse_int(whole);
            BigInt f = parse_int(frac);
            if (f < 0)
                throw std::invalid_argument("Rational: bad decimal '" + text + "'");
            BigInt scale = 1;
            for (size_t i = 0; i < frac.size(); ++i) scale *= 10;
            BigInt n = abs(w) * scale + f;
            if (neg || w < 0) n = -n;
            return Rational(n, scale);
        }
        return Rational(parse_int(text));
    }

private:
    static BigInt parse_int(const std::string& s) {
        if (s.empty())
            throw std::invalid_argument("Rational: empty integer literal");
        size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
        if (i == s.size())
            throw std::invalid_argument("Rational: bad integer '" + s + "'");
        for (; i < s.size(); ++i)
            if (s[i] < '0' || s[i] > '9')
                throw std::invalid_argument("Rational: bad integer '" + s + "'");
        return BigInt(s);
    }

    void normalize() {
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        BigInt g = gcd(num_, den_);
        if (g > 1) {
            num_ /= g;
            den_ /= g;
        }
        if (num_ == 0) den_ = 1;
    }

    BigInt num_;
    BigInt den_;
};

inline Rational abs(const Rational& x) { return x.is_negative() ? -x : x; }

inline const Rational& min(const Rational& a, const Rational& b) { return b < a ? b : a; }
inline const Rational& max(const Rational& a, const Rational& b) { return a < b ? b : a; }

} // namespace sfpd
