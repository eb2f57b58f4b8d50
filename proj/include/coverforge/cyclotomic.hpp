#pragma once

#include <cctype>
#include <complex>
#include <map>
#include <mutex>
#include <numeric>
#include <utility>
#include <vector>

#include "coverforge/rational.hpp"

namespace coverforge {

namespace detail {

inline long euler_phi(long n) {
    long result = n, m = n;
    for (long p = 2; p * p <= m; ++p) {
        if (m % p == 0) {
            result -= result / p;
            while (m % p == 0) m /= p;
        }
    }
    if (m > 1) result -= result / m;
    return result;
}

inline std::vector<long> divisors(long n) {
    std::vector<long> small, large;
    for (long d = 1; d * d <= n; ++d) {
        if (n % d == 0) {
            small.push_back(d);
            if (d != n / d) large.push_back(n / d);
        }
    }
    small.insert(small.end(), large.rbegin(), large.rend());
    return small;
}

// Integer polynomials as coefficient vectors, index = exponent.
inline void poly_trim(std::vector<BigInt>& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

// Exact division q / d, d monic. Throws on inexact division.
inline std::vector<BigInt> poly_divexact(std::vector<BigInt> q, const std::vector<BigInt>& d) {
    poly_trim(q);
    std::vector<BigInt> out(q.size() >= d.size() ? q.size() - d.size() + 1 : 0, BigInt(0));
    internal_check(!d.empty() && d.back() == 1, "poly_divexact wants a monic divisor");
    while (q.size() >= d.size()) {
        BigInt c = q.back();
        std::size_t shift = q.size() - d.size();
        out[shift] = c;
        for (std::size_t j = 0; j < d.size(); ++j) q[shift + j] -= c * d[j];
        poly_trim(q);
    }
    internal_check(q.empty(), "poly_divexact: nonzero remainder");
    return out;
}

/// Coefficients of the N-th cyclotomic polynomial, computed by repeatedly
/// dividing x^N - 1 by the cyclotomic polynomials of the proper divisors.
/// Cached; safe for concurrent callers.
inline const std::vector<BigInt>& cyclotomic_polynomial(long n) {
    static std::map<long, std::vector<BigInt>> cache;
    static std::mutex mutex;
    std::lock_guard<std::mutex> lock(mutex);

    // Everything under one lock; the recursion fills the cache bottom-up.
    auto compute = [&](auto&& self, long m) -> const std::vector<BigInt>& {
        auto it = cache.find(m);
        if (it != cache.end()) return it->second;
        std::vector<BigInt> f(m + 1, BigInt(0));
        f[0] = -1;
        f[m] = 1;  // x^m - 1
        for (long d : divisors(m)) {
            if (d == m) continue;
            f = poly_divexact(std::move(f), self(self, d));
        }
        internal_check(static_cast<long>(f.size()) == euler_phi(m) + 1,
                       "cyclotomic polynomial has degree phi(n)");
        return cache.emplace(m, std::move(f)).first->second;
    };
    return compute(compute, n);
}

// Reduces a dense coefficient vector (exponents already below n) modulo the
// n-th cyclotomic polynomial, leaving degree < phi(n).
inline void reduce_mod_cyclotomic(std::vector<Rational>& c, long n) {
    const auto& phi = cyclotomic_polynomial(n);
    const long deg = static_cast<long>(phi.size()) - 1;
    for (long e = static_cast<long>(c.size()) - 1; e >= deg; --e) {
        if (c[e].is_zero()) continue;
        Rational lead = c[e];
        for (long j = 0; j <= deg; ++j) c[e - deg + j] -= lead * Rational(phi[j]);
    }
    c.resize(deg);
}

}  // namespace detail

/// An exact element of the field Q(zeta_N) for a primitive N-th root of unity
/// zeta_N. Stored on the power basis {zeta_N^k : 0 <= k < phi(N)}, reduced
/// modulo the N-th cyclotomic polynomial, with only the nonzero rational
/// coefficients kept. Values of different conductors compare and combine by
/// lifting to the least common conductor, so equality is sound and complete.
class Cyclotomic {
public:
    Cyclotomic() = default;                                    // zero
    Cyclotomic(const Rational& r) { if (!r.is_zero()) coeffs_[0] = r; }  // NOLINT
    Cyclotomic(long v) : Cyclotomic(Rational(v)) {}            // NOLINT

    /// zeta_N^k (k may be any integer; it is folded mod N). N >= 1.
    static Cyclotomic root_of_unity(long n, long k) {
        if (n < 1) throw DomainError("root_of_unity: conductor must be >= 1");
        k %= n;
        if (k < 0) k += n;
        std::vector<Rational> dense(n, Rational(0));
        dense[static_cast<std::size_t>(k)] = Rational(1);
        return from_dense(n, std::move(dense));
    }

    long conductor() const { return conductor_; }
    const std::map<long, Rational>& coefficients() const { return coeffs_; }

    bool is_zero() const { return coeffs_.empty(); }
    bool is_rational() const {
        return coeffs_.empty() || (coeffs_.size() == 1 && coeffs_.begin()->first == 0);
    }
    Rational rational_value() const {
        if (coeffs_.empty()) return Rational(0);
        if (!is_rational()) throw DomainError("cyclotomic value is not rational: " + str());
        return coeffs_.begin()->second;
    }
    bool is_one() const { return is_rational() && rational_value() == Rational(1); }

    /// Rewrites the value at conductor m (m must be a multiple of the current
    /// conductor); the value itself is unchanged.
    Cyclotomic lifted_to(long m) const {
        internal_check(m % conductor_ == 0, "lift target must be a conductor multiple");
        if (m == conductor_) return *this;
        long scale = m / conductor_;
        std::vector<Rational> dense(m, Rational(0));
        for (const auto& [e, c] : coeffs_) dense[static_cast<std::size_t>(e * scale)] = c;
        return from_dense(m, std::move(dense));
    }

    friend Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b) {
        long m = std::lcm(a.conductor_, b.conductor_);
        Cyclotomic x = a.lifted_to(m), y = b.lifted_to(m);
        std::vector<Rational> dense(m, Rational(0));
        for (const auto& [e, c] : x.coeffs_) dense[static_cast<std::size_t>(e)] += c;
        for (const auto& [e, c] : y.coeffs_) dense[static_cast<std::size_t>(e)] += c;
        return from_dense(m, std::move(dense));
    }

    friend Cyclotomic operator-(const Cyclotomic& a) {
        Cyclotomic r = a;
        for (auto& [e, c] : r.coeffs_) c = -c;
        return r;
    }

    friend Cyclotomic operator-(const Cyclotomic& a, const Cyclotomic& b) { return a + (-b); }

    friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
        if (a.is_zero() || b.is_zero()) return Cyclotomic();
        long m = std::lcm(a.conductor_, b.conductor_);
        Cyclotomic x = a.lifted_to(m), y = b.lifted_to(m);
        std::vector<Rational> dense(m, Rational(0));
        for (const auto& [e1, c1] : x.coeffs_)
            for (const auto& [e2, c2] : y.coeffs_)
                dense[static_cast<std::size_t>((e1 + e2) % m)] += c1 * c2;
        return from_dense(m, std::move(dense));
    }

    Cyclotomic& operator+=(const Cyclotomic& o) { return *this = *this + o; }
    Cyclotomic& operator-=(const Cyclotomic& o) { return *this = *this - o; }
    Cyclotomic& operator*=(const Cyclotomic& o) { return *this = *this * o; }

    /// Complex conjugate: zeta_N^k -> zeta_N^(N-k).
    Cyclotomic conjugate() const {
        std::vector<Rational> dense(conductor_, Rational(0));
        for (const auto& [e, c] : coeffs_)
            dense[static_cast<std::size_t>(e == 0 ? 0 : conductor_ - e)] += c;
        return from_dense(conductor_, std::move(dense));
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against the
    /// (irreducible) cyclotomic polynomial. Throws on zero.
    Cyclotomic inverse() const {
        if (is_zero()) throw DomainError("cyclotomic inverse of zero");
        if (is_rational()) return Cyclotomic(Rational(1) / rational_value());
        const long n = conductor_;
        const auto& phi_int = detail::cyclotomic_polynomial(n);
        std::vector<Rational> r0(phi_int.size());
        for (std::size_t i = 0; i < phi_int.size(); ++i) r0[i] = Rational(phi_int[i]);
        std::vector<Rational> r1(detail::euler_phi(n), Rational(0));
        for (const auto& [e, c] : coeffs_) r1[static_cast<std::size_t>(e)] = c;
        trim(r1);
        // Invariant: s_i * (*this) == r_i  (mod Phi_n); once r_i is a nonzero
        // constant, s_i / r_i is the inverse. s0 = 0, s1 = 1.
        std::vector<Rational> s0, s1{Rational(1)};
        while (true) {
            internal_check(!r1.empty(), "cyclotomic inverse: unexpected zero remainder");
            if (r1.size() == 1) break;
            auto [q, rem] = poly_divmod(r0, r1);
            std::vector<Rational> s2 = poly_sub(s0, poly_mul(q, s1));
            r0 = std::move(r1);
            r1 = std::move(rem);
            s0 = std::move(s1);
            s1 = std::move(s2);
        }
        Rational unit = r1[0];
        std::vector<Rational> dense(n, Rational(0));
        for (std::size_t i = 0; i < s1.size(); ++i) dense[i] = s1[i] / unit;
        Cyclotomic inv = from_dense(n, std::move(dense));
        internal_check((inv * *this).is_one(), "cyclotomic inverse check");
        return inv;
    }

    Cyclotomic pow(long k) const {
        if (k < 0) return inverse().pow(-k);
        Cyclotomic result(Rational(1)), base = *this;
        while (k > 0) {
            if (k & 1) result *= base;
            base *= base;
            k >>= 1;
        }
        return result;
    }

    friend bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
        return compare(a, b) == 0;
    }
    friend bool operator!=(const Cyclotomic& a, const Cyclotomic& b) { return !(a == b); }

    /// Deterministic total order used only for canonical sorting: lift both to
    /// the common conductor and compare coefficient vectors exponent by
    /// exponent. Returns <0, 0, >0.
    static int compare(const Cyclotomic& a, const Cyclotomic& b) {
        long m = std::lcm(a.conductor_, b.conductor_);
        Cyclotomic x = a.lifted_to(m), y = b.lifted_to(m);
        auto ia = x.coeffs_.begin(), ib = y.coeffs_.begin();
        for (long e = 0; e < detail::euler_phi(m); ++e) {
            Rational ca = (ia != x.coeffs_.end() && ia->first == e) ? (ia++)->second : Rational(0);
            Rational cb = (ib != y.coeffs_.end() && ib->first == e) ? (ib++)->second : Rational(0);
            if (ca < cb) return -1;
            if (cb < ca) return 1;
        }
        return 0;
    }

    /// Double-precision embedding zeta_N -> exp(2*pi*i/N).
    std::complex<double> to_complex() const {
        std::complex<double> z(0.0, 0.0);
        const double tau = 6.283185307179586476925286766559;
        for (const auto& [e, c] : coeffs_)
            z += c.to_double() * std::polar(1.0, tau * static_cast<double>(e) / conductor_);
        return z;
    }

    /// Text form: "0", "1", "-1/2", "z5^2 - z5", "2/3*z8^3 + 1".
    /// Terms in descending exponent order at the stored conductor.
    std::string str() const {
        if (coeffs_.empty()) return "0";
        std::string out;
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
            const auto& [e, c] = *it;
            bool neg = c < Rational(0);
            Rational mag = neg ? -c : c;
            if (out.empty()) {
                if (neg) out += "-";
            } else {
                out += neg ? " - " : " + ";
            }
            std::string mono = e == 0 ? "" : monomial(conductor_, e);
            if (mono.empty()) {
                out += mag.str();
            } else if (mag == Rational(1)) {
                out += mono;
            } else {
                out += mag.str() + "*" + mono;
            }
        }
        return out;
    }

    /// Parses the str() grammar; terms may mix conductors ("z6 + z4 - 1/2").
    static Cyclotomic parse(const std::string& text) {
        std::size_t pos = 0;
        auto skip_ws = [&] {
            while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
        };
        Cyclotomic total;
        bool first = true;
        while (true) {
            skip_ws();
            if (pos == text.size()) {
                if (first) throw ParseError("cyclotomic: empty input");
                break;
            }
            bool neg = false;
            if (text[pos] == '+' || text[pos] == '-') {
                neg = text[pos] == '-';
                ++pos;
                skip_ws();
            } else if (!first) {
                throw ParseError("cyclotomic: expected '+' or '-' in '" + text + "'");
            }
            Rational coef(1);
            bool have_coef = false;
            if (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
                coef = Rational::parse_prefix(text, pos);
                have_coef = true;
                skip_ws();
                if (pos < text.size() && text[pos] == '*') {
                    ++pos;
                    skip_ws();
                }
            }
            Cyclotomic term(coef);
            if (pos < text.size() && text[pos] == 'z') {
                ++pos;
                long n = parse_long(text, pos);
                long e = 1;
                if (pos < text.size() && text[pos] == '^') {
                    ++pos;
                    bool eneg = pos < text.size() && text[pos] == '-';
                    if (eneg) ++pos;
                    e = parse_long(text, pos);
                    if (eneg) e = -e;
                }
                term = term * root_of_unity(n, e);
            } else if (!have_coef) {
                throw ParseError("cyclotomic: expected term in '" + text + "'");
            }
            total += neg ? -term : term;
            first = false;
        }
        return total;
    }

private:
    static std::string monomial(long n, long e) {
        std::string m = "z" + std::to_string(n);
        if (e != 1) m += "^" + std::to_string(e);
        return m;
    }

    static long parse_long(const std::string& text, std::size_t& pos) {
        std::size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos == start) throw ParseError("cyclotomic: expected integer in '" + text + "'");
        return std::stol(text.substr(start, pos - start));
    }

    static void trim(std::vector<Rational>& p) {
        while (!p.empty() && p.back().is_zero()) p.pop_back();
    }

    static std::vector<Rational> poly_mul(const std::vector<Rational>& a,
                                          const std::vector<Rational>& b) {
        if (a.empty() || b.empty()) return {};
        std::vector<Rational> out(a.size() + b.size() - 1, Rational(0));
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
        trim(out);
        return out;
    }

    static std::vector<Rational> poly_sub(const std::vector<Rational>& a,
                                          const std::vector<Rational>& b) {
        std::vector<Rational> out(std::max(a.size(), b.size()), Rational(0));
        for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
        for (std::size_t i = 0; i < b.size(); ++i) out[i] -= b[i];
        trim(out);
        return out;
    }

    static std::pair<std::vector<Rational>, std::vector<Rational>> poly_divmod(
        std::vector<Rational> num, const std::vector<Rational>& den) {
        internal_check(!den.empty(), "poly_divmod by zero");
        std::vector<Rational> q(num.size() >= den.size() ? num.size() - den.size() + 1 : 0,
                                Rational(0));
        while (num.size() >= den.size()) {
            Rational c = num.back() / den.back();
            std::size_t shift = num.size() - den.size();
            q[shift] = c;
            for (std::size_t j = 0; j < den.size(); ++j) num[shift + j] -= c * den[j];
            trim(num);
        }
        return {q, num};
    }

    // Folds exponents mod n, reduces mod the cyclotomic polynomial, compresses.
    static Cyclotomic from_dense(long n, std::vector<Rational> dense) {
        detail::reduce_mod_cyclotomic(dense, n);
        Cyclotomic r;
        r.conductor_ = n;
        for (std::size_t e = 0; e < dense.size(); ++e)
            if (!dense[e].is_zero()) r.coeffs_.emplace(static_cast<long>(e), dense[e]);
        if (r.coeffs_.empty()) r.conductor_ = 1;
        return r;
    }

    long conductor_ = 1;
    std::map<long, Rational> coeffs_;
};

}  // namespace coverforge
