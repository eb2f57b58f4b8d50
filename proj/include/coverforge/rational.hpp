#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <string>

#include "coverforge/errors.hpp"

namespace coverforge {

using BigInt = boost::multiprecision::cpp_int;

/// Exact rational number with arbitrary-precision numerator and denominator.
/// Always stored reduced, denominator positive. Thin wrapper over
/// boost::multiprecision::cpp_rational, which maintains exactly that canonical
/// form; the wrapper adds the parsing/printing and floor/fractional-part
/// operations the rest of the library needs.
class Rational {
public:
    Rational() : v_(0) {}
    Rational(long n) : v_(n) {}  // NOLINT: implicit by design
    Rational(const BigInt& n) : v_(n) {}
    Rational(const BigInt& num, const BigInt& den) {
        if (den == 0) throw DomainError("Rational: zero denominator");
        // Divide rather than use the component constructor: division reduces
        // and normalizes the sign into the numerator.
        v_ = boost::multiprecision::cpp_rational(num) /
             boost::multiprecision::cpp_rational(den);
    }

    BigInt numerator() const { return boost::multiprecision::numerator(v_); }
    BigInt denominator() const { return boost::multiprecision::denominator(v_); }

    bool is_zero() const { return v_ == 0; }
    bool is_integer() const { return denominator() == 1; }

    /// Largest integer <= *this.
    BigInt floor() const {
        BigInt n = numerator(), d = denominator();
        BigInt q = n / d;  // truncates toward zero
        if (n < 0 && q * d != n) --q;
        return q;
    }

    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw DomainError("Rational: division by zero");
        v_ /= o.v_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    friend Rational operator-(const Rational& a) { Rational r; r.v_ = -a.v_; return r; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

    double to_double() const { return v_.convert_to<double>(); }

    /// "5", "-1/2"; denominator omitted when 1.
    std::string str() const {
        std::string s = numerator().str();
        if (denominator() != 1) s += "/" + denominator().str();
        return s;
    }

    /// Parses the str() grammar: optional sign, digits, optional "/digits".
    static Rational parse(const std::string& text) {
        std::size_t pos = 0;
        Rational r = parse_prefix(text, pos);
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos != text.size()) throw ParseError("Rational: trailing characters in '" + text + "'");
        return r;
    }

    /// Parses a rational starting at text[pos], advancing pos past it.
    static Rational parse_prefix(const std::string& text, std::size_t& pos) {
        auto skip_ws = [&] {
            while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
        };
        skip_ws();
        bool neg = false;
        if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
            neg = text[pos] == '-';
            ++pos;
            skip_ws();
        }
        BigInt num = parse_digits(text, pos);
        BigInt den = 1;
        if (pos < text.size() && text[pos] == '/') {
            ++pos;
            den = parse_digits(text, pos);
        }
        if (neg) num = -num;
        return Rational(num, den);
    }

private:
    static BigInt parse_digits(const std::string& text, std::size_t& pos) {
        std::size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos == start) throw ParseError("Rational: expected digits in '" + text + "'");
        return BigInt(text.substr(start, pos - start));
    }

    boost::multiprecision::cpp_rational v_;
};

/// Fractional part <q> in [0, 1): q minus its floor.
inline Rational fractional_part(const Rational& q) {
    return q - Rational(q.floor());
}

}  // namespace coverforge
