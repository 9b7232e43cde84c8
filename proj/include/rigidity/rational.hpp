#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>

namespace rigidity {

// Exact rational arithmetic on int64 numerator/denominator, normalized with
// gcd after every operation. Intermediates use 128-bit integers; results that
// do not fit in int64 throw std::overflow_error rather than silently wrap.
class Rational {
public:
    constexpr Rational() = default;
    Rational(long long n) : num_(n), den_(1) {}
    Rational(long long n, long long d) {
        if (d == 0) throw std::invalid_argument("Rational: zero denominator");
        num_ = n;
        den_ = d;
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        const long long g = std::gcd(num_ < 0 ? -num_ : num_, den_);
        if (g > 1) {
            num_ /= g;
            den_ /= g;
        }
    }

    // Parses "3", "-5/7", "6.6" (decimal -> exact), "0.046".
    static Rational from_string(std::string_view s) {
        if (s.empty()) throw std::invalid_argument("Rational: empty string");
        const auto slash = s.find('/');
        if (slash != std::string_view::npos) {
            return Rational(parse_ll(s.substr(0, slash)), parse_ll(s.substr(slash + 1)));
        }
        const auto dot = s.find('.');
        if (dot == std::string_view::npos) return Rational(parse_ll(s), 1);
        bool neg = !s.empty() && s.front() == '-';
        std::string digits;
        for (char ch : s)
            if (ch >= '0' && ch <= '9') digits.push_back(ch);
        const std::size_t frac_len = s.size() - dot - 1;
        if (digits.empty() || frac_len > 18)
            throw std::invalid_argument("Rational: cannot parse '" + std::string(s) + "'");
        long long num = parse_ll(digits);
        long long den = 1;
        for (std::size_t i = 0; i < frac_len; ++i) den *= 10;
        return Rational(neg ? -num : num, den);
    }

    // Exact dyadic representation of a double (must fit in int64 num/den).
    static Rational from_double(double v) {
        if (!std::isfinite(v)) throw std::invalid_argument("Rational: non-finite double");
        int exp = 0;
        double m = std::frexp(v, &exp);  // v = m * 2^exp, |m| in [0.5, 1)
        long long num = static_cast<long long>(std::ldexp(m, 53));
        exp -= 53;
        while (num != 0 && num % 2 == 0) {
            num /= 2;
            ++exp;
        }
        if (exp >= 0) {
            __int128 n = static_cast<__int128>(num);
            for (int i = 0; i < exp; ++i) n *= 2;
            return Rational(checked(n), 1);
        }
        if (exp < -62) throw std::overflow_error("Rational: dyadic denominator too large");
        return Rational(num, 1LL << (-exp));
    }

    long long num() const { return num_; }
    long long den() const { return den_; }

    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

    std::string to_string() const {
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return make(static_cast<__int128>(a.num_) * b.den_ + static_cast<__int128>(b.num_) * a.den_,
                    static_cast<__int128>(a.den_) * b.den_);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return make(static_cast<__int128>(a.num_) * b.den_ - static_cast<__int128>(b.num_) * a.den_,
                    static_cast<__int128>(a.den_) * b.den_);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return make(static_cast<__int128>(a.num_) * b.num_,
                    static_cast<__int128>(a.den_) * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) throw std::invalid_argument("Rational: division by zero");
        return make(static_cast<__int128>(a.num_) * b.den_,
                    static_cast<__int128>(a.den_) * b.num_);
    }
    Rational operator-() const {
        Rational r;
        r.num_ = -num_;
        r.den_ = den_;
        return r;
    }
    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        return static_cast<__int128>(a.num_) * b.den_ < static_cast<__int128>(b.num_) * a.den_;
    }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

    int sign() const { return num_ > 0 ? 1 : (num_ < 0 ? -1 : 0); }

private:
    static long long parse_ll(std::string_view s) {
        if (s.empty()) throw std::invalid_argument("Rational: empty numeric field");
        std::size_t pos = 0;
        long long v = 0;
        try {
            v = std::stoll(std::string(s), &pos);
        } catch (const std::exception&) {
            throw std::invalid_argument("Rational: cannot parse '" + std::string(s) + "'");
        }
        if (pos != s.size())
            throw std::invalid_argument("Rational: trailing characters in '" + std::string(s) + "'");
        return v;
    }

    static long long checked(__int128 v) {
        if (v > static_cast<__int128>(INT64_MAX) || v < static_cast<__int128>(INT64_MIN))
            throw std::overflow_error("Rational: value exceeds 64-bit range");
        return static_cast<long long>(v);
    }

    static __int128 gcd128(__int128 a, __int128 b) {
        if (a < 0) a = -a;
        if (b < 0) b = -b;
        while (b != 0) {
            const __int128 t = a % b;
            a = b;
            b = t;
        }
        return a;
    }

    static Rational make(__int128 n, __int128 d) {
        if (d == 0) throw std::invalid_argument("Rational: zero denominator");
        if (d < 0) {
            n = -n;
            d = -d;
        }
        const __int128 g = gcd128(n, d);
        if (g > 1) {
            n /= g;
            d /= g;
        }
        Rational r;
        r.num_ = checked(n);
        r.den_ = checked(d);
        return r;
    }

    long long num_ = 0;
    long long den_ = 1;
};

}  // namespace rigidity
