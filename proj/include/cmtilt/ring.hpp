#pragma once

#include <numeric>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "cmtilt/poly.hpp"

namespace cmtilt {

// One factor f_j^{n_j} of f, together with its dehomogenization g_j.
template <exact_field K>
struct Factor {
    HomogeneousPoly<K> poly;  // monic irreducible, distinct from x and y
    int multiplicity = 1;     // n_j
    UPoly<K> g;               // g_j(t) = f_j(t^{1/n}, 1)
    bool irreducibility_verified = false;
};

// The input record R = k[x,y]/(f) with f = x^{n_x} y^{n_y} prod f_j^{n_j}.
template <exact_field K>
struct HypersurfaceSpec {
    long m = 1, n = 1;  // deg x = m, deg y = n, coprime, m <= n
    int n_x = 0, n_y = 0;
    std::vector<Factor<K>> factors;

    long deg_f() const {
        long d = static_cast<long>(n_x) * m + static_cast<long>(n_y) * n;
        for (auto& f : factors) d += f.multiplicity * f.poly.degree;
        return d;
    }
    long a_invariant() const { return deg_f() - m - n; }

    // Expanded f as one homogeneous polynomial.
    HomogeneousPoly<K> expand_f() const {
        auto f = HomogeneousPoly<K>::monomial(m, n, {n_x, n_y});
        for (auto& fac : factors)
            for (int t = 0; t < fac.multiplicity; ++t) f = f * fac.poly;
        return f;
    }

    // Monomial basis of R_d: weighted monomials not divisible by lead(f).
    std::vector<WeightedMonomial> ring_piece_basis(long d) const {
        auto lm = expand_f().lead();
        std::vector<WeightedMonomial> out;
        for (auto& mo : graded_monomials(d, m, n))
            if (!mo.divisible_by(lm)) out.push_back(mo);
        return out;
    }

    long dim_ring_piece(long d) const {
        return static_cast<long>(ring_piece_basis(d).size());
    }

    // Coefficient of t^d in (1 - t^{deg f}) / ((1 - t^m)(1 - t^n)).
    long hilbert_coefficient(long d) const {
        auto count = [&](long e) {
            return e < 0 ? 0L : static_cast<long>(graded_monomials(e, m, n).size());
        };
        return count(d) - count(d - deg_f());
    }
};

enum class RingCase { Regular, PureXPower, NonNegative };

// Trichotomy for the a-invariant: first case analysis behind the two
// structure theorems. The negative-a case splits into a regular ring (f not
// in (x,y)^2) and the pure power f = x^{n_x} with (n_x-1)m < n.
template <exact_field K>
RingCase classify_negative(const HypersurfaceSpec<K>& spec) {
    if (spec.a_invariant() >= 0) return RingCase::NonNegative;
    bool pure_x = spec.n_y == 0 && spec.factors.empty() && spec.n_x > 1;
    if (pure_x && (spec.n_x - 1) * spec.m < spec.n) return RingCase::PureXPower;
    // regular iff f has a term of total exponent 1
    auto f = spec.expand_f();
    for (auto& [mo, c] : f.terms)
        if (mo.i + mo.j <= 1) return RingCase::Regular;
    throw std::logic_error("negative a-invariant with no matching case; invalid spec");
}

// Graded pieces of the total-quotient components K^x = k[x, y^{+-1}]/(x^{n_x}),
// K^y = k[x^{+-1}, y]/(y^{n_y}), K^j = k[x^{+-1}, y^{+-1}]/(f_j^{n_j}).
struct ComponentX { int n_x; };
struct ComponentY { int n_y; };
struct ComponentJ { int index; };  // 1-based j
using QuotientComponent = std::variant<ComponentX, ComponentY, ComponentJ>;

// Monomial of a quotient component piece. For X/Y components (i, j) are the
// plain exponents (one may be negative); for J components the pair is
// (e, d) in the degree-0 variable z = x^n y^{-m} and degree-1 unit w = x^r y^s.
struct ComponentMonomial {
    long i = 0, j = 0;
};

template <exact_field K>
std::vector<ComponentMonomial> component_piece_basis(const HypersurfaceSpec<K>& spec,
                                                     const QuotientComponent& c, long d) {
    std::vector<ComponentMonomial> out;
    if (auto* cx = std::get_if<ComponentX>(&c)) {
        for (long i = 0; i < cx->n_x; ++i) {
            long rem = d - i * spec.m;
            if (rem % spec.n == 0) out.push_back({i, rem / spec.n});
        }
    } else if (auto* cy = std::get_if<ComponentY>(&c)) {
        for (long j = 0; j < cy->n_y; ++j) {
            long rem = d - j * spec.n;
            if (rem % spec.m == 0) out.push_back({rem / spec.m, j});
        }
    } else {
        auto& fac = spec.factors.at(std::get<ComponentJ>(c).index - 1);
        long e_max = static_cast<long>(fac.multiplicity) * fac.g.deg();
        for (long e = 0; e < e_max; ++e) out.push_back({e, d});
    }
    return out;
}

template <exact_field K>
long component_piece_dim(const HypersurfaceSpec<K>& spec, const QuotientComponent& c, long d) {
    return static_cast<long>(component_piece_basis(spec, c, d).size());
}

// Rational-root based irreducibility screen for g of degree <= 3 over Q; over
// F_p by exhaustive evaluation. Degree >= 4 is trusted (reported unverified).
inline bool upoly_has_root(const UPoly<Rat>& g) {
    // rational root test on the integer-cleared polynomial
    mpz_class lcm_den = 1;
    for (auto& c : g.c)
        lcm_den = lcm_den / gcd(lcm_den, c.raw().get_den()) * c.raw().get_den();
    std::vector<mpz_class> zc;
    for (auto& c : g.c) {
        mpq_class q = c.raw() * lcm_den;
        q.canonicalize();
        zc.push_back(q.get_num());
    }
    while (!zc.empty() && zc.back() == 0) zc.pop_back();
    if (zc.empty()) return true;
    if (zc.front() == 0) return true;  // t = 0 root
    mpz_class a0 = abs(zc.front()), an = abs(zc.back());
    for (mpz_class p = 1; p <= a0; ++p) {
        if (a0 % p != 0) continue;
        for (mpz_class q = 1; q <= an; ++q) {
            if (an % q != 0) continue;
            for (int sgn : {1, -1}) {
                Rat cand = Rat::parse((sgn < 0 ? "-" : "") + p.get_str() + "/" + q.get_str());
                if (g.eval(cand).is_zero()) return true;
            }
        }
    }
    return false;
}

inline bool upoly_has_root(const UPoly<Fp>& g) {
    if (Fp::modulus() > 1'000'000)
        throw std::domain_error("root search impractical for large modulus");
    for (std::uint64_t v = 0; v < Fp::modulus(); ++v)
        if (g.eval(Fp(static_cast<long>(v))).is_zero()) return true;
    return false;
}

// Validates the factored input; fills g_j and the irreducibility flags.
// Throws std::invalid_argument with a diagnostic on malformed input.
template <exact_field K>
void validate_spec(HypersurfaceSpec<K>& spec) {
    if (spec.m <= 0 || spec.n <= 0 || spec.m > spec.n)
        throw std::invalid_argument("weights must satisfy 0 < m <= n");
    if (std::gcd(spec.m, spec.n) != 1)
        throw std::invalid_argument("weights must be coprime");
    if (spec.n_x < 0 || spec.n_y < 0)
        throw std::invalid_argument("n_x, n_y must be nonnegative");
    for (std::size_t j = 0; j < spec.factors.size(); ++j) {
        auto& fac = spec.factors[j];
        if (fac.multiplicity <= 0)
            throw std::invalid_argument("factor multiplicity must be positive");
        auto& p = fac.poly;
        if (p.m != spec.m || p.n != spec.n)
            throw std::invalid_argument("factor weights disagree with spec");
        if (p.is_zero()) throw std::invalid_argument("zero factor");
        if (!p.is_monic())
            throw std::invalid_argument("factor " + std::to_string(j + 1) + " is not monic");
        if (p.terms.size() == 1)
            throw std::invalid_argument("factors must be distinct from x and y powers");
        bool all_y = true;
        for (auto& [mo, c] : p.terms) all_y = all_y && mo.j >= 1;
        if (all_y)
            throw std::invalid_argument("factor divisible by y (split it off into n_y)");
        fac.g = dehomogenize(p, spec.n);  // throws when the factor is divisible by x
        if (fac.g.coeff(0).is_zero())
            throw std::invalid_argument("factor divisible by x (split it off into n_x)");
        for (std::size_t j2 = 0; j2 < j; ++j2)
            if (spec.factors[j2].poly == p)
                throw std::invalid_argument("duplicate factors (merge multiplicities)");
        if (fac.g.deg() == 1) {
            fac.irreducibility_verified = true;
        } else if (fac.g.deg() <= 3) {
            try {
                if (upoly_has_root(fac.g))
                    throw std::invalid_argument("factor " + std::to_string(j + 1) +
                                                " is reducible (root found)");
                fac.irreducibility_verified = true;
            } catch (const std::domain_error&) {
                fac.irreducibility_verified = false;  // search impractical; trusted
            }
        } else {
            fac.irreducibility_verified = false;
        }
    }
    if (spec.deg_f() <= 0) throw std::invalid_argument("deg f must be positive");
}

}  // namespace cmtilt
