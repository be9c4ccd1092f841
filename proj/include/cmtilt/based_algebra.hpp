#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "cmtilt/linalg.hpp"

namespace cmtilt {

// Sparse k-linear combination of basis indices, kept sorted by index.
template <exact_field K>
struct LinComb {
    std::vector<std::pair<int, K>> terms;

    static LinComb single(int idx, K c = K(1)) {
        LinComb l;
        if (!c.is_zero()) l.terms = {{idx, c}};
        return l;
    }
    bool is_zero() const { return terms.empty(); }

    void add_term(int idx, const K& c) {
        if (c.is_zero()) return;
        auto it = std::lower_bound(terms.begin(), terms.end(), idx,
                                   [](auto& t, int v) { return t.first < v; });
        if (it != terms.end() && it->first == idx) {
            it->second += c;
            if (it->second.is_zero()) terms.erase(it);
        } else {
            terms.insert(it, {idx, c});
        }
    }
    LinComb operator+(const LinComb& o) const {
        LinComb r = *this;
        for (auto& [i, c] : o.terms) r.add_term(i, c);
        return r;
    }
    LinComb operator-(const LinComb& o) const {
        LinComb r = *this;
        for (auto& [i, c] : o.terms) r.add_term(i, -c);
        return r;
    }
    LinComb scaled(const K& c) const {
        if (c.is_zero()) return {};
        LinComb r = *this;
        for (auto& [i, cc] : r.terms) cc = cc * c;
        return r;
    }
    Vec<K> dense(int dim) const {
        Vec<K> v(dim, K(0));
        for (auto& [i, c] : terms) v[i] = c;
        return v;
    }
    static LinComb from_dense(const Vec<K>& v) {
        LinComb l;
        for (int i = 0; i < static_cast<int>(v.size()); ++i)
            if (!v[i].is_zero()) l.terms.emplace_back(i, v[i]);
        return l;
    }
    bool operator==(const LinComb& o) const { return terms == o.terms; }
};

// A finite-dimensional basic algebra presented by a tagged basis and a
// multiplication oracle. Products are memoized sparsely; we never store the
// full dim^2 table. Composition is written right-to-left: mul(p, q) is
// "p after q" and requires source(p) == target(q).
template <exact_field K>
class BasedAlgebra {
public:
    struct BasisElem {
        int source = 0, target = 0;
        std::string label;
        bool radical = false;  // true iff the element lies in rad(A)
    };

    using MulFn = std::function<LinComb<K>(int, int)>;

    BasedAlgebra() = default;
    BasedAlgebra(int vertices, std::vector<BasisElem> basis, std::vector<int> idempotent,
                 MulFn mul, std::vector<LinComb<K>> radical_gens)
        : vertices_(vertices),
          basis_(std::move(basis)),
          idempotent_(std::move(idempotent)),
          mul_(std::move(mul)),
          radical_gens_(std::move(radical_gens)),
          memo_(std::make_shared<std::unordered_map<std::uint64_t, LinComb<K>>>()) {}

    int vertices() const { return vertices_; }
    int dim() const { return static_cast<int>(basis_.size()); }
    const BasisElem& elem(int b) const { return basis_[b]; }
    int idempotent(int v) const { return idempotent_[v]; }
    const std::vector<LinComb<K>>& radical_generators() const { return radical_gens_; }

    LinComb<K> mul(int p, int q) const {
        if (basis_[p].source != basis_[q].target) return {};
        std::uint64_t key = (static_cast<std::uint64_t>(p) << 32) | static_cast<std::uint32_t>(q);
        auto it = memo_->find(key);
        if (it != memo_->end()) return it->second;
        LinComb<K> r = mul_(p, q);
        memo_->emplace(key, r);
        return r;
    }

    LinComb<K> mul(const LinComb<K>& p, const LinComb<K>& q) const {
        LinComb<K> r;
        for (auto& [bp, cp] : p.terms)
            for (auto& [bq, cq] : q.terms) {
                auto prod = mul(bp, bq);
                for (auto& [b, c] : prod.terms) r.add_term(b, cp * cq * c);
            }
        return r;
    }

    // Number of basis elements u -> v.
    int hom_dim(int u, int v) const {
        int c = 0;
        for (auto& b : basis_)
            if (b.source == u && b.target == v) ++c;
        return c;
    }

    BasedAlgebra opposite() const {
        std::vector<BasisElem> ob = basis_;
        for (auto& b : ob) std::swap(b.source, b.target);
        BasedAlgebra self = *this;
        return BasedAlgebra(vertices_, std::move(ob), idempotent_,
                            [self](int p, int q) { return self.mul_raw(q, p); },
                            radical_gens_);
    }

    // Associativity on all basis triples; intended for small algebras in tests.
    bool associative() const {
        for (int a = 0; a < dim(); ++a)
            for (int b = 0; b < dim(); ++b) {
                if (basis_[b].target != basis_[a].source) continue;
                LinComb<K> ab = mul(a, b);
                for (int c = 0; c < dim(); ++c) {
                    if (basis_[c].target != basis_[b].source) continue;
                    LinComb<K> left = mul(ab, LinComb<K>::single(c));
                    LinComb<K> right = mul(LinComb<K>::single(a), mul(b, c));
                    if (!(left == right)) return false;
                }
            }
        return true;
    }

    // Identity axioms: e_{target} * b = b = b * e_{source}, idempotents orthogonal.
    bool unital() const {
        for (int b = 0; b < dim(); ++b) {
            if (!(mul(idempotent_[basis_[b].target], b) == LinComb<K>::single(b))) return false;
            if (!(mul(b, idempotent_[basis_[b].source]) == LinComb<K>::single(b))) return false;
        }
        for (int u = 0; u < vertices_; ++u)
            for (int v = 0; v < vertices_; ++v) {
                auto p = mul(idempotent_[u], idempotent_[v]);
                if (u == v ? !(p == LinComb<K>::single(idempotent_[u])) : !p.is_zero())
                    return false;
            }
        return true;
    }

private:
    LinComb<K> mul_raw(int p, int q) const {
        if (basis_[p].source != basis_[q].target) return {};
        return mul(p, q);
    }

    int vertices_ = 0;
    std::vector<BasisElem> basis_;
    std::vector<int> idempotent_;
    MulFn mul_;
    std::vector<LinComb<K>> radical_gens_;
    std::shared_ptr<std::unordered_map<std::uint64_t, LinComb<K>>> memo_;
};

// Radical layer data: rad, rad^2 and the nilpotency index.
template <exact_field K>
struct RadicalLayers {
    int dim_rad = 0;
    int dim_rad2 = 0;
    int nilpotency = 0;  // minimal L with rad^L = 0
    std::vector<int> rad_basis;          // radical-tagged basis indices
    RowSpace<K> rad2_space;              // span of products of two radicals
};

// rad(A) is the span of the radical-tagged basis elements (valid for the
// based algebras in this project: maps between distinct indecomposables plus
// the tagged nilpotent part of each local endomorphism ring).
template <exact_field K>
RadicalLayers<K> radical_layers(const BasedAlgebra<K>& A) {
    RadicalLayers<K> out;
    const int d = A.dim();
    for (int b = 0; b < d; ++b)
        if (A.elem(b).radical) out.rad_basis.push_back(b);
    out.dim_rad = static_cast<int>(out.rad_basis.size());

    // rad^k spans, multiplying layer by layer until zero
    RowSpace<K> layer(d);
    for (int b : out.rad_basis) layer.add(LinComb<K>::single(b).dense(d));
    int L = 1;
    RowSpace<K> prev = layer;
    while (prev.rank() > 0) {
        RowSpace<K> next(d);
        for (auto& row : prev.rows()) {
            LinComb<K> rc = LinComb<K>::from_dense(row);
            for (int b : out.rad_basis) {
                auto prod = A.mul(LinComb<K>::single(b), rc);
                if (!prod.is_zero()) next.add(prod.dense(d));
            }
        }
        if (L == 1) {
            out.rad2_space = next;
            out.dim_rad2 = next.rank();
        }
        if (next.rank() == 0) break;
        prev = std::move(next);
        ++L;
    }
    out.nilpotency = (out.dim_rad == 0) ? 1 : L + 1;
    return out;
}

}  // namespace cmtilt
