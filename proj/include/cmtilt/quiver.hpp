#pragma once

#include <array>
#include <map>
#include <set>
#include <sstream>

#include "cmtilt/cm_hom.hpp"

namespace cmtilt {

// Arrow families of the presentation quiver.
enum class ArrowFamily { XInt, YInt, AX, AY, AJ, BX, BY, BJ };

struct QuiverArrow {
    ArrowFamily family;
    int i = 0;        // family index (vertex offset); 0 for BJ
    int j = 0;        // factor index for AJ/BJ
    int source = -1;  // vertex ids (= Gamma summand ids)
    int target = -1;
    std::string name;
};

struct Quiver {
    int num_vertices = 0;
    std::vector<std::string> vertex_names;
    std::vector<QuiverArrow> arrows;

    int find_arrow(ArrowFamily f, int i, int j = 0) const {
        for (int k = 0; k < static_cast<int>(arrows.size()); ++k)
            if (arrows[k].family == f && arrows[k].i == i && arrows[k].j == j) return k;
        return -1;
    }
};

// The quiver of the structure theorem for a >= 0. Families whose summands
// vanish (n_x = 0 / n_y = 0) are omitted, as are arrows whose images are zero
// (b_x with n_x <= 1, b_y with n_y <= 1) or scalar multiples of an idempotent
// (the f_j loop when dim K^j_0 = 1); this matches the drawn quivers.
template <exact_field K>
Quiver build_quiver(const Gamma<K>& G) {
    const auto& spec = G.spec();
    const long a = G.a_invariant(), m = spec.m, n = spec.n;
    Quiver Q;
    Q.num_vertices = G.num_summands();
    for (int v = 0; v < Q.num_vertices; ++v) Q.vertex_names.push_back(G.summand_name(v));

    auto vid = [&](Summand s) {
        int idx = G.summand_index(s);
        if (idx < 0) throw std::logic_error("missing summand vertex");
        return idx;
    };
    auto add = [&](ArrowFamily f, int i, int j, Summand src, Summand tgt, std::string name) {
        Q.arrows.push_back({f, i, j, vid(src), vid(tgt), std::move(name)});
    };

    for (long i = 1; i <= a - m; ++i)
        add(ArrowFamily::XInt, i, 0, {Summand::Interior, (int)i}, {Summand::Interior, (int)(i + m)},
            "x_" + std::to_string(i));
    for (long i = 1; i <= a - n; ++i)
        add(ArrowFamily::YInt, i, 0, {Summand::Interior, (int)i}, {Summand::Interior, (int)(i + n)},
            "y_" + std::to_string(i));
    if (spec.n_x >= 1)
        for (long i = std::max(n - a, 0L); i < n; ++i)
            add(ArrowFamily::AX, i, 0, {Summand::Interior, (int)(a - n + 1 + i)}, {Summand::X, (int)i},
                "a_{" + std::to_string(i) + ",x}");
    if (spec.n_y >= 1)
        for (long i = std::max(m - a, 0L); i < m; ++i)
            add(ArrowFamily::AY, i, 0, {Summand::Interior, (int)(a - m + 1 + i)}, {Summand::Y, (int)i},
                "a_{" + std::to_string(i) + ",y}");
    for (int j = 1; j <= static_cast<int>(spec.factors.size()); ++j)
        for (long i = std::max(m - a, 0L); i < m; ++i)
            add(ArrowFamily::AJ, i, j, {Summand::Interior, (int)(a - m + 1 + i)}, {Summand::F, j},
                "a_{" + std::to_string(i) + "," + std::to_string(j) + "}");
    if (spec.n_x >= 2)
        for (long i = 0; i < n; ++i)
            add(ArrowFamily::BX, i, 0, {Summand::X, (int)i}, {Summand::X, (int)((i + m) % n)},
                "b_{" + std::to_string(i) + ",x}");
    if (spec.n_y >= 2)
        for (long i = 0; i < m; ++i)
            add(ArrowFamily::BY, i, 0, {Summand::Y, (int)i}, {Summand::Y, (int)((i + n) % m)},
                "b_{" + std::to_string(i) + ",y}");
    for (int j = 1; j <= static_cast<int>(spec.factors.size()); ++j) {
        const auto& fac = spec.factors[j - 1];
        if (fac.multiplicity * fac.g.deg() >= 2)
            add(ArrowFamily::BJ, 0, j, {Summand::F, j}, {Summand::F, j},
                "b_{0," + std::to_string(j) + "}");
    }
    return Q;
}

template <exact_field K>
struct PathMap {
    long r = 0, s = 0;
    std::vector<int> vertex_idem;          // vertex -> Gamma basis index
    std::vector<LinComb<K>> arrow_image;   // arrow -> element of Gamma
};

// Arrow images of phi_{r,s}. The pair (r, s) may be overridden; it only
// affects the a_{i,j} arrows (scaled by powers of the degree-one unit).
template <exact_field K>
PathMap<K> build_phi(const Gamma<K>& G, const Quiver& Q, long r, long s) {
    const auto& spec = G.spec();
    const long m = spec.m, n = spec.n;
    if (r * m + s * n != 1) throw std::invalid_argument("override (r,s) must satisfy rm+sn=1");
    auto [r0, s0] = G.canonical_rs();

    PathMap<K> phi;
    phi.r = r;
    phi.s = s;
    for (int v = 0; v < Q.num_vertices; ++v) phi.vertex_idem.push_back(G.idempotent_index(v));

    for (const auto& ar : Q.arrows) {
        LinComb<K> img;
        switch (ar.family) {
            case ArrowFamily::XInt:
                img = LinComb<K>::single(G.basis_index(ar.source, ar.target, {1, 0, 0}));
                break;
            case ArrowFamily::YInt:
                img = LinComb<K>::single(G.basis_index(ar.source, ar.target, {0, 1, 0}));
                break;
            case ArrowFamily::AX:  // multiplication by y
                img = LinComb<K>::single(G.basis_index(ar.source, ar.target, {0, 1, 0}));
                break;
            case ArrowFamily::AY:  // multiplication by x
                img = LinComb<K>::single(G.basis_index(ar.source, ar.target, {1, 0, 0}));
                break;
            case ArrowFamily::AJ: {
                // multiplication by (x^r y^s)^{m-i} = z^{u(m-i)} w^{m-i}
                long u = r * s0 - s * r0;
                long pw = m - ar.i;
                for (auto& [ce, c] : G.gadic_after_zshift(ar.j - 1, 0, 0, u * pw)) {
                    int b = G.basis_index(ar.source, ar.target, {ce.first, ce.second, pw});
                    if (b < 0) throw std::logic_error("phi(a_j) escaped basis");
                    img.add_term(b, c);
                }
                break;
            }
            case ArrowFamily::BX: {
                long t = (ar.i + m) / n;
                img = LinComb<K>::single(G.basis_index(ar.source, ar.target, {1, -t, 0}));
                break;
            }
            case ArrowFamily::BY: {
                long t = (ar.i + n) / m;
                img = LinComb<K>::single(G.basis_index(ar.source, ar.target, {-t, 1, 0}));
                break;
            }
            case ArrowFamily::BJ: {
                for (auto& [ce, c] : G.gadic_after_zshift(ar.j - 1, 0, 0, 1)) {
                    int b = G.basis_index(ar.source, ar.target, {ce.first, ce.second, 0});
                    if (b < 0) throw std::logic_error("phi(b_j) escaped basis");
                    img.add_term(b, c);
                }
                break;
            }
        }
        for (auto& [b, c] : img.terms)
            if (b < 0) throw std::logic_error("phi image missing basis element");
        phi.arrow_image.push_back(std::move(img));
    }
    return phi;
}

// Formal k-linear combination of parallel paths. Paths store arrow ids in
// application order (index 0 acts first); the printed form is right-to-left.
template <exact_field K>
struct Relation {
    std::vector<std::pair<std::vector<int>, K>> terms;
    int source = -1, target = -1;
    int maxlen = 0;
    std::string provenance;  // listed-I | intersection-Ij | kernel-computed

    void add(std::vector<int> path, K c) {
        if (c.is_zero()) return;
        maxlen = std::max(maxlen, static_cast<int>(path.size()));
        terms.emplace_back(std::move(path), std::move(c));
    }
    bool empty() const { return terms.empty(); }

    std::string display(const Quiver& Q) const {
        std::string out;
        for (std::size_t t = 0; t < terms.size(); ++t) {
            const auto& [p, c] = terms[t];
            std::string cs = c.str();
            if (t) out += " + ";
            if (cs != "1") out += "(" + cs + ")";
            if (p.empty()) out += "e";
            for (auto it = p.rbegin(); it != p.rend(); ++it)
                out += (it == p.rbegin() ? "" : "*") + Q.arrows[*it].name;
        }
        return out;
    }
};

template <exact_field K>
struct RelationSet {
    std::vector<Relation<K>> generators;
};

// Enumerates paths of the quiver by length and evaluates phi on them.
// Used for kernel computations, padded ideal spans and dimension tables.
template <exact_field K>
class PathContext {
public:
    PathContext(const Gamma<K>& G, const Quiver& Q, const PathMap<K>& phi)
        : G_(&G), Q_(&Q), phi_(&phi) {
        const int dim = G.algebra().dim();
        for (int v = 0; v < Q.num_vertices; ++v) {
            paths_.push_back({{}, v, v, 0});
            phi_rows_.push_back(LinComb<K>::single(phi.vertex_idem[v]).dense(dim));
            index_by_key_[key(paths_.back().arrows, v)] = static_cast<int>(paths_.size()) - 1;
        }
        len_end_.push_back(static_cast<int>(paths_.size()));
    }

    struct Path {
        std::vector<int> arrows;
        int source, target;
        int len;
    };

    int max_len() const { return static_cast<int>(len_end_.size()) - 1; }
    int num_paths_up_to(int len) const { return len_end_[std::min(len, max_len())]; }
    const Path& path(int id) const { return paths_[id]; }
    const Vec<K>& phi_row(int id) const { return phi_rows_[id]; }

    void ensure_len(int len) {
        const auto& A = G_->algebra();
        while (max_len() < len) {
            int lo = max_len() == 0 ? 0 : len_end_[max_len() - 1];
            int hi = len_end_[max_len()];
            for (int p = lo; p < hi; ++p) {
                for (int g = 0; g < static_cast<int>(Q_->arrows.size()); ++g) {
                    if (Q_->arrows[g].source != paths_[p].target) continue;
                    Path np;
                    np.arrows = paths_[p].arrows;
                    np.arrows.push_back(g);
                    np.source = paths_[p].source;
                    np.target = Q_->arrows[g].target;
                    np.len = paths_[p].len + 1;
                    Vec<K> row(A.dim(), K(0));
                    LinComb<K> img = A.mul(phi_->arrow_image[g], LinComb<K>::from_dense(phi_rows_[p]));
                    for (auto& [b, c] : img.terms) row[b] = c;
                    index_by_key_[key(np.arrows, np.source)] = static_cast<int>(paths_.size());
                    paths_.push_back(std::move(np));
                    phi_rows_.push_back(std::move(row));
                    if (paths_.size() > 4'000'000)
                        throw std::runtime_error("path enumeration exploded");
                }
            }
            len_end_.push_back(static_cast<int>(paths_.size()));
        }
    }

    int path_id(const std::vector<int>& arrows, int source_vertex) const {
        auto it = index_by_key_.find(key(arrows, source_vertex));
        return it == index_by_key_.end() ? -1 : it->second;
    }

    // phi of a relation, as coordinates in Gamma.
    Vec<K> phi_of(const Relation<K>& rel) const {
        Vec<K> out(G_->algebra().dim(), K(0));
        for (auto& [p, c] : rel.terms) {
            int id = path_id(p, p.empty() ? rel.source : Q_->arrows[p.front()].source);
            if (id < 0) throw std::logic_error("relation path not enumerated");
            for (int k = 0; k < static_cast<int>(out.size()); ++k)
                out[k] += phi_rows_[id][k] * c;
        }
        return out;
    }

    // Span of { p * r * q } with the length budget len(p)+maxlen(r)+len(q) <= len,
    // as vectors over path ids < num_paths_up_to(len).
    void add_padded(RowSpace<K>& span, const Relation<K>& rel, int len) {
        if (rel.maxlen > len) return;
        int budget = len - rel.maxlen;
        for (int q = 0; q < len_end_[std::min<int>(budget, max_len())]; ++q) {
            if (paths_[q].target != rel.source || paths_[q].len > budget) continue;
            int budget_p = budget - paths_[q].len;
            for (int p = 0; p < len_end_[std::min<int>(budget_p, max_len())]; ++p) {
                if (paths_[p].source != rel.target || paths_[p].len > budget_p) continue;
                Vec<K> row(span.cols(), K(0));
                for (auto& [mid, c] : rel.terms) {
                    std::vector<int> whole = paths_[q].arrows;
                    whole.insert(whole.end(), mid.begin(), mid.end());
                    whole.insert(whole.end(), paths_[p].arrows.begin(), paths_[p].arrows.end());
                    int id = path_id(whole, paths_[q].source);
                    if (id < 0 || id >= span.cols())
                        throw std::logic_error("padded path not enumerated");
                    row[id] += c;
                }
                span.add(std::move(row));
            }
        }
    }

    const Gamma<K>& gamma() const { return *G_; }
    const Quiver& quiver() const { return *Q_; }
    const PathMap<K>& phi() const { return *phi_; }

private:
    static std::string key(const std::vector<int>& arrows, int source) {
        std::string k = std::to_string(source);
        for (int a : arrows) k += "," + std::to_string(a);
        return k;
    }

    const Gamma<K>* G_;
    const Quiver* Q_;
    const PathMap<K>* phi_;
    std::vector<Path> paths_;
    std::vector<Vec<K>> phi_rows_;
    std::vector<int> len_end_;  // len_end_[l] = #paths of length <= l
    std::map<std::string, int> index_by_key_;
};

// Minimal-by-length generators of ker(phi): for each length l, a basis of
// ker(phi | paths of length <= l) modulo the ideal generated by the shorter
// generators. Iterates until the quotient dimension table stabilizes at
// dim Gamma (certifying that the generators cut out exactly ker phi).
template <exact_field K>
RelationSet<K> kernel_relations(PathContext<K>& ctx, int nilpotency, int hard_cap = 40) {
    const auto& A = ctx.gamma().algebra();
    const int dim = A.dim();
    RelationSet<K> out;

    int stable_runs = 0;
    for (int len = 0; len <= hard_cap; ++len) {
        ctx.ensure_len(len);
        const int np = ctx.num_paths_up_to(len);

        RowSpace<K> jspan(np);
        for (auto& rel : out.generators) ctx.add_padded(jspan, rel, len);

        // kernel of phi on paths <= len: right kernel of the (dim x np) matrix
        Mat<K> M(dim, np);
        for (int p = 0; p < np; ++p) {
            const Vec<K>& row = ctx.phi_row(p);
            for (int k = 0; k < dim; ++k) M.at(k, p) = row[k];
        }
        int phirank = 0;
        {
            Mat<K> copy = M;
            phirank = rank(copy);
        }
        for (auto& kv : kernel_basis(M)) {
            if (jspan.contains(kv)) continue;
            Relation<K> rel;
            rel.provenance = "kernel-computed";
            for (int p = 0; p < np; ++p) {
                if (kv[p].is_zero()) continue;
                if (rel.terms.empty()) {
                    rel.source = ctx.path(p).source;
                    rel.target = ctx.path(p).target;
                }
                rel.add(ctx.path(p).arrows, kv[p]);
            }
            out.generators.push_back(rel);
            ctx.add_padded(jspan, out.generators.back(), len);
        }
        // after adoption the padded span equals ker(phi | F_len), so the
        // quotient dimension is exactly phirank; two consecutive saturated
        // lengths certify stability at all longer lengths.
        bool saturated = phirank == dim;
        stable_runs = saturated ? stable_runs + 1 : 0;
        if (stable_runs >= 2 && len >= nilpotency) return out;
    }
    throw std::runtime_error("kernel_relations: no stabilization below hard cap");
}

struct PresentationRow {
    int len;
    long quotient_dim;  // dim kQ_{<=len} / J_len
    long phi_dim;       // dim phi(kQ_{<=len})
};

struct PresentationReport {
    bool pass = false;
    bool generators_in_kernel = false;
    bool reached_dim_gamma = false;
    long dim_gamma = 0;
    std::vector<PresentationRow> table;
    std::string failure;
};

// Checks that the relations lie in ker phi and that kQ modulo the ideal they
// generate has the dimension of Gamma, length by length.
template <exact_field K>
PresentationReport verify_presentation(PathContext<K>& ctx, const RelationSet<K>& rels,
                                       int hard_cap = 40) {
    const auto& A = ctx.gamma().algebra();
    const int dim = A.dim();
    PresentationReport rep;
    rep.dim_gamma = dim;

    rep.generators_in_kernel = true;
    int maxgenlen = 0;
    for (auto& rel : rels.generators) maxgenlen = std::max(maxgenlen, rel.maxlen);
    ctx.ensure_len(maxgenlen);
    for (auto& rel : rels.generators) {
        Vec<K> v = ctx.phi_of(rel);
        for (auto& c : v)
            if (!c.is_zero()) {
                rep.generators_in_kernel = false;
                rep.failure = "relation not in ker(phi)";
            }
    }

    int stable_runs = 0;
    for (int len = 0; len <= hard_cap; ++len) {
        ctx.ensure_len(len);
        const int np = ctx.num_paths_up_to(len);
        RowSpace<K> jspan(np);
        for (auto& rel : rels.generators) ctx.add_padded(jspan, rel, len);
        long qdim = np - jspan.rank();

        RowSpace<K> phispan(dim);
        for (int p = 0; p < np; ++p) phispan.add(ctx.phi_row(p));
        long pdim = phispan.rank();

        rep.table.push_back({len, qdim, pdim});
        if (qdim == pdim && pdim == dim)
            ++stable_runs;
        else
            stable_runs = 0;
        if (stable_runs >= 2) {
            rep.reached_dim_gamma = true;
            break;
        }
        if (qdim < pdim) {
            rep.failure = "relations cut below dim Gamma (not contained in ker phi)";
            break;
        }
    }
    if (!rep.reached_dim_gamma && rep.failure.empty())
        rep.failure = "quotient dimension did not stabilize at dim Gamma";
    rep.pass = rep.generators_in_kernel && rep.reached_dim_gamma;
    return rep;
}

// Subspace-equality of the padded spans of two generating sets at each
// length; with both sets inside ker phi and both passing verify_presentation
// this certifies equality of the generated ideals up to the cap.
template <exact_field K>
bool same_ideal(PathContext<K>& ctx, const RelationSet<K>& lhs, const RelationSet<K>& rhs,
                int len_cap) {
    ctx.ensure_len(len_cap);
    for (int len = 0; len <= len_cap; ++len) {
        const int np = ctx.num_paths_up_to(len);
        RowSpace<K> a(np), b(np);
        for (auto& rel : lhs.generators) ctx.add_padded(a, rel, len);
        for (auto& rel : rhs.generators) ctx.add_padded(b, rel, len);
        if (a.rank() != b.rank()) return false;
        RowSpace<K> both = a;
        for (auto& row : b.rows()) both.add(row);
        if (both.rank() != a.rank()) return false;
    }
    return true;
}

}  // namespace cmtilt
