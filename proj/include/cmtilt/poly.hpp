#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cmtilt/field.hpp"

namespace cmtilt {

// Monomial x^i y^j in the weighted polynomial ring with deg x = m, deg y = n.
struct WeightedMonomial {
    long i = 0;
    long j = 0;

    long degree(long m, long n) const { return i * m + j * n; }
    bool divisible_by(const WeightedMonomial& o) const { return i >= o.i && j >= o.j; }
    WeightedMonomial operator*(const WeightedMonomial& o) const { return {i + o.i, j + o.j}; }
    WeightedMonomial operator/(const WeightedMonomial& o) const { return {i - o.i, j - o.j}; }
    auto operator<=>(const WeightedMonomial&) const = default;
};

inline std::string monomial_str(const WeightedMonomial& mo) {
    std::string s;
    auto pow = [&](const char* v, long e) {
        if (e == 0) return;
        s += v;
        if (e != 1) s += "^" + std::to_string(e);
    };
    pow("x", mo.i);
    pow("y", mo.j);
    return s.empty() ? "1" : s;
}

// All nonnegative solutions (i, j) of i*m + j*n = d, sorted by descending i.
inline std::vector<WeightedMonomial> graded_monomials(long d, long m, long n) {
    if (std::gcd(m, n) != 1 || m <= 0 || n <= 0)
        throw std::invalid_argument("weights must be coprime positive");
    std::vector<WeightedMonomial> out;
    if (d < 0) return out;
    for (long i = d / m; i >= 0; --i) {
        long rem = d - i * m;
        if (rem % n == 0) out.push_back({i, rem / n});
    }
    return out;
}

// Homogeneous polynomial of one weighted degree. Terms are kept sorted with
// descending x-exponent (lex with x > y); the zero polynomial has no terms.
template <exact_field K>
struct HomogeneousPoly {
    long m = 1, n = 1;
    long degree = 0;
    std::vector<std::pair<WeightedMonomial, K>> terms;  // descending i

    static HomogeneousPoly zero(long m, long n) { return {m, n, 0, {}}; }

    static HomogeneousPoly from_terms(long m, long n,
                                      std::vector<std::pair<WeightedMonomial, K>> t) {
        HomogeneousPoly p;
        p.m = m;
        p.n = n;
        std::map<WeightedMonomial, K, std::greater<WeightedMonomial>> acc;
        for (auto& [mo, c] : t) {
            if (c.is_zero()) continue;
            auto it = acc.find(mo);
            if (it == acc.end()) acc.emplace(mo, c);
            else {
                it->second += c;
                if (it->second.is_zero()) acc.erase(it);
            }
        }
        long deg = -1;
        for (auto& [mo, c] : acc) {
            long d = mo.degree(m, n);
            if (deg < 0) deg = d;
            else if (deg != d) throw std::invalid_argument("terms are not homogeneous");
            p.terms.emplace_back(mo, c);
        }
        p.degree = deg < 0 ? 0 : deg;
        return p;
    }

    static HomogeneousPoly monomial(long m, long n, WeightedMonomial mo, K c = K(1)) {
        return from_terms(m, n, {{mo, c}});
    }

    bool is_zero() const { return terms.empty(); }

    // Leading monomial: maximal x-exponent.
    const WeightedMonomial& lead() const {
        if (is_zero()) throw std::domain_error("leading term of zero");
        return terms.front().first;
    }
    const K& lead_coeff() const { return terms.front().second; }
    bool is_monic() const { return !is_zero() && lead_coeff().is_one(); }

    HomogeneousPoly operator*(const HomogeneousPoly& o) const {
        std::vector<std::pair<WeightedMonomial, K>> t;
        t.reserve(terms.size() * o.terms.size());
        for (auto& [a, ca] : terms)
            for (auto& [b, cb] : o.terms) t.emplace_back(a * b, ca * cb);
        return from_terms(m, n, std::move(t));
    }
    HomogeneousPoly operator+(const HomogeneousPoly& o) const {
        auto t = terms;
        t.insert(t.end(), o.terms.begin(), o.terms.end());
        return from_terms(m, n, std::move(t));
    }
    HomogeneousPoly operator-(const HomogeneousPoly& o) const {
        auto t = terms;
        for (auto& [mo, c] : o.terms) t.emplace_back(mo, -c);
        return from_terms(m, n, std::move(t));
    }
    HomogeneousPoly scaled(const K& c) const {
        std::vector<std::pair<WeightedMonomial, K>> t = terms;
        for (auto& [mo, cc] : t) cc = cc * c;
        return from_terms(m, n, std::move(t));
    }

    bool operator==(const HomogeneousPoly& o) const {
        return m == o.m && n == o.n && terms == o.terms;
    }

    std::string str() const {
        if (is_zero()) return "0";
        std::string s;
        bool first = true;
        for (auto& [mo, c] : terms) {
            std::string cs = c.str();
            if (!first) s += cs.size() && cs[0] == '-' ? " - " + cs.substr(1) + "*" : " + " + cs + "*";
            else s += cs + "*";
            first = false;
            s += monomial_str(mo);
        }
        return s;
    }
};

// Division with remainder by a single monic divisor: p = q*f + r where no
// term of r is divisible by lead(f). A principal ideal's generator is a
// Groebner basis for any order, so r is the canonical normal form mod (f).
template <exact_field K>
std::pair<HomogeneousPoly<K>, HomogeneousPoly<K>> divmod(const HomogeneousPoly<K>& p,
                                                         const HomogeneousPoly<K>& f) {
    if (f.is_zero()) throw std::domain_error("zero modulus");
    if (!f.is_monic()) throw std::invalid_argument("modulus must be monic");
    HomogeneousPoly<K> q = HomogeneousPoly<K>::zero(p.m, p.n);
    HomogeneousPoly<K> r = p;
    const WeightedMonomial lm = f.lead();
    for (;;) {
        auto it = std::find_if(r.terms.begin(), r.terms.end(),
                               [&](auto& t) { return t.first.divisible_by(lm); });
        if (it == r.terms.end()) break;
        WeightedMonomial quot = it->first / lm;
        K c = it->second;
        auto step = HomogeneousPoly<K>::monomial(p.m, p.n, quot, c);
        q = q + step;
        r = r - step * f;
    }
    return {q, r};
}

template <exact_field K>
HomogeneousPoly<K> normal_form(const HomogeneousPoly<K>& p, const HomogeneousPoly<K>& f) {
    return divmod(p, f).second;
}

// Univariate polynomial over K, dense coefficients, coeffs[k] is the t^k term.
template <exact_field K>
struct UPoly {
    std::vector<K> c;

    static UPoly zero() { return {}; }
    static UPoly constant(K v) {
        UPoly p;
        if (!v.is_zero()) p.c = {v};
        return p;
    }
    static UPoly t_power(int k, K v = K(1)) {
        UPoly p;
        if (v.is_zero()) return p;
        p.c.assign(k + 1, K(0));
        p.c[k] = v;
        return p;
    }

    int deg() const { return static_cast<int>(c.size()) - 1; }  // -1 for zero
    bool is_zero() const { return c.empty(); }
    void trim() {
        while (!c.empty() && c.back().is_zero()) c.pop_back();
    }
    K coeff(int k) const { return k >= 0 && k < static_cast<int>(c.size()) ? c[k] : K(0); }

    UPoly operator+(const UPoly& o) const {
        UPoly r;
        r.c.resize(std::max(c.size(), o.c.size()), K(0));
        for (std::size_t k = 0; k < r.c.size(); ++k) r.c[k] = coeff(k) + o.coeff(k);
        r.trim();
        return r;
    }
    UPoly operator-(const UPoly& o) const {
        UPoly r;
        r.c.resize(std::max(c.size(), o.c.size()), K(0));
        for (std::size_t k = 0; k < r.c.size(); ++k) r.c[k] = coeff(k) - o.coeff(k);
        r.trim();
        return r;
    }
    UPoly operator*(const UPoly& o) const {
        if (is_zero() || o.is_zero()) return zero();
        UPoly r;
        r.c.assign(c.size() + o.c.size() - 1, K(0));
        for (std::size_t a = 0; a < c.size(); ++a)
            for (std::size_t b = 0; b < o.c.size(); ++b)
                r.c[a + b] = r.c[a + b] + c[a] * o.c[b];
        r.trim();
        return r;
    }
    UPoly scaled(const K& v) const {
        UPoly r = *this;
        for (auto& x : r.c) x = x * v;
        r.trim();
        return r;
    }

    // Remainder and quotient by a nonzero divisor.
    std::pair<UPoly, UPoly> divmod(const UPoly& d) const {
        if (d.is_zero()) throw std::domain_error("division by zero polynomial");
        UPoly q, r = *this;
        K lead_inv = d.c.back().inv();
        while (!r.is_zero() && r.deg() >= d.deg()) {
            int k = r.deg() - d.deg();
            K f = r.c.back() * lead_inv;
            q = q + t_power(k, f);
            r = r - d * t_power(k, f);
        }
        return {q, r};
    }

    UPoly pow(int e) const {
        UPoly r = constant(K(1));
        for (int k = 0; k < e; ++k) r = r * *this;
        return r;
    }

    K eval(const K& x) const {
        K acc(0);
        for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    bool operator==(const UPoly& o) const { return c == o.c; }

    std::string str(const std::string& var = "t") const {
        if (is_zero()) return "0";
        std::string s;
        for (int k = deg(); k >= 0; --k) {
            if (c[k].is_zero()) continue;
            if (!s.empty()) s += " + ";
            s += c[k].str();
            if (k > 0) s += "*" + var + (k > 1 ? "^" + std::to_string(k) : "");
        }
        return s;
    }
};

// g_j(t) obtained from a homogeneous f_j by x^{cn} y^e -> t^c. Requires every
// x-exponent to be a multiple of n.
template <exact_field K>
UPoly<K> dehomogenize(const HomogeneousPoly<K>& fj, long n) {
    UPoly<K> g;
    for (auto& [mo, c] : fj.terms) {
        if (mo.i % n != 0) throw std::invalid_argument("not dehomogenizable");
        g = g + UPoly<K>::t_power(static_cast<int>(mo.i / n), c);
    }
    return g;
}

// Inverse of dehomogenize for a fixed total degree: t^c -> x^{cn} y^{(d-cnm)/n}.
template <exact_field K>
HomogeneousPoly<K> rehomogenize(const UPoly<K>& g, long d, long m, long n) {
    std::vector<std::pair<WeightedMonomial, K>> terms;
    for (int k = 0; k <= g.deg(); ++k) {
        if (g.coeff(k).is_zero()) continue;
        long i = static_cast<long>(k) * n;
        long rem = d - i * m;
        if (rem % n != 0 || rem < 0) throw std::invalid_argument("rehomogenize: bad degree");
        terms.push_back({{i, rem / n}, g.coeff(k)});
    }
    return HomogeneousPoly<K>::from_terms(m, n, std::move(terms));
}

}  // namespace cmtilt
