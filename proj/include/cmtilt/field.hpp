#pragma once

#include <cassert>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace cmtilt {

// Exact rational scalar backed by GMP. Immutable value semantics; every
// operation is exact.
class Rat {
public:
    Rat() : v_(0) {}
    Rat(long n) : v_(n) {}
    Rat(long num, long den) : v_(num, den) { canon(); }
    explicit Rat(const mpq_class& v) : v_(v) { canon(); }

    // Accepts "num" or "num/den" in decimal.
    static Rat parse(const std::string& s) {
        mpq_class v;
        if (v.set_str(s, 10) != 0)
            throw std::invalid_argument("bad rational literal: " + s);
        v.canonicalize();
        if (v.get_den() == 0)
            throw std::invalid_argument("zero denominator: " + s);
        return Rat(v);
    }

    bool is_zero() const { return v_ == 0; }
    bool is_one() const { return v_ == 1; }

    Rat operator+(const Rat& o) const { return Rat(mpq_class(v_ + o.v_)); }
    Rat operator-(const Rat& o) const { return Rat(mpq_class(v_ - o.v_)); }
    Rat operator*(const Rat& o) const { return Rat(mpq_class(v_ * o.v_)); }
    Rat operator/(const Rat& o) const {
        if (o.is_zero()) throw std::domain_error("division by zero");
        return Rat(mpq_class(v_ / o.v_));
    }
    Rat operator-() const { return Rat(mpq_class(-v_)); }
    Rat inv() const {
        if (is_zero()) throw std::domain_error("inverse of zero");
        return Rat(mpq_class(1 / v_));
    }

    Rat& operator+=(const Rat& o) { v_ += o.v_; canon(); return *this; }
    Rat& operator-=(const Rat& o) { v_ -= o.v_; canon(); return *this; }
    Rat& operator*=(const Rat& o) { v_ *= o.v_; canon(); return *this; }

    bool operator==(const Rat& o) const { return v_ == o.v_; }
    bool operator!=(const Rat& o) const { return v_ != o.v_; }

    std::string str() const { return v_.get_str(); }
    static const char* field_name() { return "q"; }
    const mpq_class& raw() const { return v_; }

private:
    void canon() { v_.canonicalize(); }
    mpq_class v_;
};

// Prime field F_p with a process-wide runtime modulus (p < 2^61). The CLI
// selects one field per run, so a global modulus keeps elements at one word.
class Fp {
public:
    static void set_modulus(std::uint64_t p) {
        if (p < 2 || p >= (1ull << 61))
            throw std::invalid_argument("modulus out of range");
        if (!probably_prime(p))
            throw std::invalid_argument("modulus is not prime");
        modulus_ref() = p;
    }
    static std::uint64_t modulus() { return modulus_ref(); }

    Fp() : v_(0) {}
    Fp(long n) {
        const std::uint64_t p = modulus();
        long long r = static_cast<long long>(n % static_cast<long long>(p));
        if (r < 0) r += static_cast<long long>(p);
        v_ = static_cast<std::uint64_t>(r);
    }

    static Fp parse(const std::string& s) {
        // "num" or "num/den", arbitrary size, reduced mod p
        auto slash = s.find('/');
        if (slash == std::string::npos) return from_decimal(s);
        Fp num = from_decimal(s.substr(0, slash));
        Fp den = from_decimal(s.substr(slash + 1));
        return num / den;
    }

    bool is_zero() const { return v_ == 0; }
    bool is_one() const { return v_ == 1; }

    Fp operator+(const Fp& o) const {
        std::uint64_t p = modulus(), s = v_ + o.v_;
        return raw(s >= p ? s - p : s);
    }
    Fp operator-(const Fp& o) const {
        std::uint64_t p = modulus();
        return raw(v_ >= o.v_ ? v_ - o.v_ : v_ + p - o.v_);
    }
    Fp operator*(const Fp& o) const {
        return raw(static_cast<std::uint64_t>(
            static_cast<unsigned __int128>(v_) * o.v_ % modulus()));
    }
    Fp operator/(const Fp& o) const { return *this * o.inv(); }
    Fp operator-() const { return v_ == 0 ? *this : raw(modulus() - v_); }
    Fp inv() const {
        if (v_ == 0) throw std::domain_error("inverse of zero");
        // extended euclid on (v, p)
        std::int64_t t = 0, newt = 1;
        std::int64_t r = static_cast<std::int64_t>(modulus());
        std::int64_t newr = static_cast<std::int64_t>(v_);
        while (newr != 0) {
            std::int64_t q = r / newr;
            std::int64_t tmp = t - q * newt; t = newt; newt = tmp;
            tmp = r - q * newr; r = newr; newr = tmp;
        }
        assert(r == 1);
        if (t < 0) t += static_cast<std::int64_t>(modulus());
        return raw(static_cast<std::uint64_t>(t));
    }

    Fp& operator+=(const Fp& o) { *this = *this + o; return *this; }
    Fp& operator-=(const Fp& o) { *this = *this - o; return *this; }
    Fp& operator*=(const Fp& o) { *this = *this * o; return *this; }

    bool operator==(const Fp& o) const { return v_ == o.v_; }
    bool operator!=(const Fp& o) const { return v_ != o.v_; }

    std::string str() const { return std::to_string(v_); }
    static std::string field_name() { return "p:" + std::to_string(modulus()); }

    std::uint64_t value() const { return v_; }

private:
    static Fp raw(std::uint64_t v) { Fp x; x.v_ = v; return x; }
    static std::uint64_t& modulus_ref() {
        static std::uint64_t p = 2;
        return p;
    }
    static Fp from_decimal(const std::string& s) {
        Fp acc(0);
        bool neg = false;
        std::size_t i = 0;
        if (i < s.size() && (s[i] == '-' || s[i] == '+')) { neg = s[i] == '-'; ++i; }
        if (i == s.size()) throw std::invalid_argument("bad integer literal: " + s);
        for (; i < s.size(); ++i) {
            if (s[i] < '0' || s[i] > '9')
                throw std::invalid_argument("bad integer literal: " + s);
            acc = acc * Fp(10) + Fp(s[i] - '0');
        }
        return neg ? -acc : acc;
    }
    static bool probably_prime(std::uint64_t n) {
        if (n < 4) return n >= 2;
        if (n % 2 == 0) return false;
        // deterministic Miller-Rabin for 64-bit range
        auto mulmod = [n](std::uint64_t a, std::uint64_t b) {
            return static_cast<std::uint64_t>(
                static_cast<unsigned __int128>(a) * b % n);
        };
        auto powmod = [&](std::uint64_t a, std::uint64_t e) {
            std::uint64_t r = 1;
            a %= n;
            while (e) {
                if (e & 1) r = mulmod(r, a);
                a = mulmod(a, a);
                e >>= 1;
            }
            return r;
        };
        std::uint64_t d = n - 1;
        int s = 0;
        while (d % 2 == 0) { d /= 2; ++s; }
        for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull,
                                19ull, 23ull, 29ull, 31ull, 37ull}) {
            if (a % n == 0) continue;
            std::uint64_t x = powmod(a, d);
            if (x == 1 || x == n - 1) continue;
            bool witness = true;
            for (int i = 0; i < s - 1; ++i) {
                x = mulmod(x, x);
                if (x == n - 1) { witness = false; break; }
            }
            if (witness) return false;
        }
        return true;
    }

    std::uint64_t v_;
};

template <class K>
concept exact_field = requires(K a, K b) {
    { K(0) } -> std::convertible_to<K>;
    { a + b } -> std::convertible_to<K>;
    { a - b } -> std::convertible_to<K>;
    { a * b } -> std::convertible_to<K>;
    { a / b } -> std::convertible_to<K>;
    { -a } -> std::convertible_to<K>;
    { a.inv() } -> std::convertible_to<K>;
    { a.is_zero() } -> std::convertible_to<bool>;
    { a == b } -> std::convertible_to<bool>;
    { a.str() } -> std::convertible_to<std::string>;
};

}  // namespace cmtilt
