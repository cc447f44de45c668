/*
   Copyright 2026 The charp Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

// Finite-length Dieudonne modules over F_{p^m} with semilinear F and V,
// height-one group schemes over the projective line as restricted Lie
// algebra bundles, kernels, constancy descent, and the distinguished
// non-constant line subgroup of the alpha_p x alpha_p fixture.
//
// Conventions (fixed here, documented in the README): contravariant
// p-torsion modules; alpha_p = (k, F=0, V=0); the etale datum has F
// bijective, the multiplicative datum has V bijective. F acts by
// v -> Fmat . v^(p) (sigma-semilinear), V by v -> Vmat . v^(1/p).

#ifndef CHARP_GROUPSCHEMES_HPP
#define CHARP_GROUPSCHEMES_HPP

#include <optional>
#include <string>
#include <vector>

#include "charp/sheafmaps.hpp"

namespace charp {

struct DieudonneModule {
    FqPtr field;
    int dim = 0;
    FMatrix Fmat;  // sigma-semilinear action
    FMatrix Vmat;  // sigma^{-1}-semilinear action
};

inline DieudonneModule make_dieudonne(const FqPtr& f, FMatrix F, FMatrix V) {
    DieudonneModule m{f, static_cast<int>(F.size()), std::move(F), std::move(V)};
    for (const auto& row : m.Fmat)
        if (static_cast<int>(row.size()) != m.dim) throw Error("Fmat must be square");
    if (static_cast<int>(m.Vmat.size()) != m.dim) throw Error("Vmat must match dim");
    for (const auto& row : m.Vmat)
        if (static_cast<int>(row.size()) != m.dim) throw Error("Vmat must be square");
    // FV = 0: F(V v) = Fmat . (Vmat . v^(1/p))^(p) = Fmat . Vmat^(p) . v
    FieldElem z(f, 0);
    if (!fmat_is_zero(mat_mul(m.Fmat, fmat_frobenius(m.Vmat, 1), z)))
        throw FVNotZero("F after V is nonzero");
    // VF = 0: V(F v) = Vmat . (Fmat . v^(p))^(1/p) = Vmat . Fmat^(1/p) . v
    if (!fmat_is_zero(mat_mul(m.Vmat, fmat_frobenius(m.Fmat, -1), z)))
        throw FVNotZero("V after F is nonzero");
    return m;
}

inline DieudonneModule alpha_p(const FqPtr& f) {
    return make_dieudonne(f, fmat_zero(f, 1, 1), fmat_zero(f, 1, 1));
}

namespace detail {

// Matrix of the e-fold composite of the sigma-semilinear action v -> A v^(p):
// A . A^(p) . ... . A^(p^{e-1}), acting on v^(p^e). dir = +1 for F, -1 for V.
inline FMatrix semilinear_power(const FMatrix& a, int e, int dir, const FqPtr& f) {
    FMatrix acc = fmat_identity(f, static_cast<int>(a.size()));
    FieldElem z(f, 0);
    for (int k = 0; k < e; ++k) acc = mat_mul(acc, fmat_frobenius(a, dir * k), z);
    return acc;
}

// Basis of the kernel of the semilinear action v -> A v^(p^dir): the
// entrywise p^{-dir} twist of the linear kernel of A.
inline std::vector<std::vector<FieldElem>> semilinear_kernel(const FMatrix& a, int dir,
                                                             const FqPtr& f) {
    auto lin = nullspace(a, FieldElem(f, 0), FieldElem(f, 1));
    for (auto& v : lin)
        for (auto& x : v) {
            if (dir >= 0) {
                for (int k = 0; k < dir; ++k) x = x.proot();
            } else {
                x = x.frobenius(-dir);
            }
        }
    return lin;
}

// Intersection of two subspaces given by bases, as a deterministic
// (rref-canonical) basis.
inline std::vector<std::vector<FieldElem>> subspace_intersection(
    const std::vector<std::vector<FieldElem>>& a, const std::vector<std::vector<FieldElem>>& b,
    int n, const FqPtr& f) {
    if (a.empty() || b.empty()) return {};
    // x in span(a) cap span(b): solve [A^T | -B^T] (s;t) = 0
    FMatrix sys(n, std::vector<FieldElem>(a.size() + b.size(), FieldElem(f, 0)));
    for (int i = 0; i < n; ++i) {
        for (size_t j = 0; j < a.size(); ++j) sys[i][j] = a[j][i];
        for (size_t j = 0; j < b.size(); ++j) sys[i][a.size() + j] = -b[j][i];
    }
    auto sols = nullspace(sys, FieldElem(f, 0), FieldElem(f, 1));
    FMatrix vecs;
    for (const auto& st : sols) {
        std::vector<FieldElem> x(n, FieldElem(f, 0));
        for (size_t j = 0; j < a.size(); ++j)
            for (int i = 0; i < n; ++i) x[i] = x[i] + st[j] * a[j][i];
        vecs.push_back(std::move(x));
    }
    if (vecs.empty()) return {};
    rref(vecs);
    FMatrix out;
    for (auto& v : vecs) {
        bool nz = false;
        for (const auto& x : v)
            if (!x.is_zero()) nz = true;
        if (nz) out.push_back(std::move(v));
    }
    return out;
}

}  // namespace detail

// True iff both F and V are nilpotent, i.e. the module is a successive
// extension of alpha_p.
inline bool local_local_test(const DieudonneModule& m) {
    if (m.dim == 0) return true;
    FMatrix fe = detail::semilinear_power(m.Fmat, m.dim, 1, m.field);
    FMatrix ve = detail::semilinear_power(m.Vmat, m.dim, -1, m.field);
    return fmat_is_zero(fe) && fmat_is_zero(ve);
}

// Full flag 0 < M_1 < ... < M_dim with one-dimensional alpha_p graded
// pieces, built by iterating N = Ker F cap Ker V. Bases are given in the
// original coordinates, one basis (list of vectors) per filtration step.
inline std::vector<FMatrix> alpha_filtration(const DieudonneModule& m) {
    const FqPtr& f = m.field;
    if (m.dim == 0) return {};
    if (!local_local_test(m)) throw NotLocalLocal();
    // Work recursively with explicit coordinates: P maps current-module
    // coordinates to original ones.
    std::vector<FMatrix> steps;
    FMatrix P = fmat_identity(f, m.dim);  // columns: current basis in original coords
    FMatrix Fc = m.Fmat, Vc = m.Vmat;
    int n = m.dim;
    FMatrix flag;  // accumulated filtration vectors in original coordinates
    FieldElem z(f, 0);
    while (n > 0) {
        auto kf = detail::semilinear_kernel(Fc, 1, f);
        auto kv = detail::semilinear_kernel(Vc, -1, f);
        auto nbasis = detail::subspace_intersection(kf, kv, n, f);
        if (nbasis.empty()) throw NotLocalLocal();
        // push the flag inside N one vector at a time
        for (const auto& v : nbasis) {
            std::vector<FieldElem> orig(m.dim, z);
            for (int i = 0; i < m.dim; ++i)
                for (int j = 0; j < n; ++j) orig[i] = orig[i] + P[i][j] * v[j];
            flag.push_back(std::move(orig));
            steps.push_back(flag);
        }
        const int s = static_cast<int>(nbasis.size());
        if (s == n) break;
        // complete N to a basis of the current module, change coordinates,
        // and pass to the quotient (the lower-right block)
        FMatrix basis = nbasis;
        FMatrix probe = nbasis;
        for (int j = 0; j < n && static_cast<int>(basis.size()) < n; ++j) {
            std::vector<FieldElem> e(n, z);
            e[j] = FieldElem(f, 1);
            probe.push_back(e);
            if (rank(probe) > static_cast<int>(basis.size()))
                basis.push_back(std::move(e));
            else
                probe.pop_back();
        }
        FMatrix Q(n, std::vector<FieldElem>(n, z));  // columns = new basis
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i) Q[i][j] = basis[j][i];
        FMatrix Qi = fmat_inverse(Q, f);
        FMatrix Fn = mat_mul(Qi, mat_mul(Fc, fmat_frobenius(Q, 1), z), z);
        FMatrix Vn = mat_mul(Qi, mat_mul(Vc, fmat_frobenius(Q, -1), z), z);
        int q = n - s;
        FMatrix Fq(q, std::vector<FieldElem>(q, z)), Vq(q, std::vector<FieldElem>(q, z));
        for (int i = 0; i < q; ++i)
            for (int j = 0; j < q; ++j) {
                Fq[i][j] = Fn[s + i][s + j];
                Vq[i][j] = Vn[s + i][s + j];
            }
        // update P to the quotient coordinates (columns s..n-1 of P.Q)
        FMatrix PQ(m.dim, std::vector<FieldElem>(n, z));
        for (int i = 0; i < m.dim; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k) PQ[i][j] = PQ[i][j] + P[i][k] * Q[k][j];
        FMatrix Pn(m.dim, std::vector<FieldElem>(q, z));
        for (int i = 0; i < m.dim; ++i)
            for (int j = 0; j < q; ++j) Pn[i][j] = PQ[i][s + j];
        P = std::move(Pn);
        Fc = std::move(Fq);
        Vc = std::move(Vq);
        n = q;
    }
    return steps;
}

// --- Height-one group schemes over the projective line ---

struct RestrictedLieBundle {
    FqPtr field;
    SplitBundle bundle;   // twists a_1..a_n
    Matrix<Form> pmap;    // entry (i,j) of degree a_i - p a_j, the map F_C^*L -> L
};

// The p-map as a graded matrix from the Frobenius pullback.
inline GradedMatrix pmap_matrix(const RestrictedLieBundle& l) {
    GradedMatrix m = graded_zero(l.field, frobenius_pullback(l.bundle, l.field->p, 1), l.bundle);
    m.entries = l.pmap;
    validate(m);
    return m;
}

inline RestrictedLieBundle make_lie_bundle(const FqPtr& f, SplitBundle b, Matrix<Form> pmap) {
    RestrictedLieBundle l{f, std::move(b), std::move(pmap)};
    pmap_matrix(l);  // degree validation
    return l;
}

inline RestrictedLieBundle trivial_lie_bundle(const FqPtr& f, int n) {
    RestrictedLieBundle l{f, SplitBundle(std::vector<int>(n, 0)), {}};
    l.pmap.assign(n, std::vector<Form>(n, Form::zero(f)));
    return l;
}

struct ConstantGroupDatum {
    FqPtr field;
    int dim = 0;
    FMatrix pmat;  // p-linear endomorphism x -> pmat . x^(p)
};

// Frobenius pullback of a graded matrix: twists stretched by p, entries
// raised to the p-th power.
inline GradedMatrix frobenius_pullback(const GradedMatrix& m, long long p) {
    GradedMatrix r = graded_zero(m.field, frobenius_pullback(m.source, p, 1),
                                 frobenius_pullback(m.target, p, 1));
    for (size_t i = 0; i < m.entries.size(); ++i)
        for (size_t j = 0; j < m.entries[i].size(); ++j)
            r.entries[i][j] = m.entries[i][j].frobenius_twist(1);
    validate(r);
    return r;
}

struct LieMorphism {
    RestrictedLieBundle source, target;
    GradedMatrix map;  // source.bundle -> target.bundle
};

namespace detail {

// Solves A x = b over k(t) for A of full column rank; throws if unsolvable.
inline std::vector<RatFn> rat_solve(const RatMatrix& a, const std::vector<RatFn>& b,
                                    const FqPtr& f) {
    const int rows = static_cast<int>(a.size());
    const int cols = rows ? static_cast<int>(a[0].size()) : 0;
    RatMatrix aug = a;
    for (int i = 0; i < rows; ++i) aug[i].push_back(b[i]);
    auto pivots = rref(aug);
    std::vector<RatFn> x(cols, RatFn(f));
    for (size_t r = 0; r < pivots.size(); ++r) {
        if (pivots[r] == cols) throw Error("inconsistent linear system over k(t)");
        x[pivots[r]] = aug[r][cols];
    }
    return x;
}

}  // namespace detail

// Kernel of a morphism of restricted Lie bundles, with its induced p-map.
inline RestrictedLieBundle lie_kernel(const LieMorphism& mor) {
    const FqPtr& f = mor.map.field;
    const long long p = f->p;
    validate(mor.map);
    // equivariance: map . phi_src = phi_tgt . F_C^* map
    GradedMatrix lhs = compose(mor.map, pmap_matrix(mor.source));
    GradedMatrix rhs = compose(pmap_matrix(mor.target), frobenius_pullback(mor.map, p));
    for (int i = 0; i < lhs.target.rank(); ++i)
        for (int j = 0; j < lhs.source.rank(); ++j)
            if (lhs.entries[i][j] != rhs.entries[i][j])
                throw NotEquivariant("morphism does not intertwine the p-maps");
    Subsheaf k = kernel_bundle(mor.map);
    const int r = k.generic_rank;
    SplitBundle ktype = r ? splitting_type_from_generators(k.generators)
                          : SplitBundle(std::vector<int>{});
    RestrictedLieBundle out{f, k.generators.source, {}};
    out.pmap.assign(r, std::vector<Form>(r, Form::zero(f)));
    if (r == 0) return out;
    // induced p-map: solve G . X = phi_src . F_C^* G over k(t), columnwise
    RatMatrix g = dehomogenize(k.generators);
    GradedMatrix img = compose(pmap_matrix(mor.source), frobenius_pullback(k.generators, p));
    RatMatrix img_chart = dehomogenize(img);
    const auto& ct = k.generators.source.twists();
    RatFn zero(f);
    for (int j = 0; j < r; ++j) {
        std::vector<RatFn> b;
        b.reserve(img_chart.size());
        for (const auto& row : img_chart) b.push_back(row[j]);
        std::vector<RatFn> x = detail::rat_solve(g, b, f);
        for (int i = 0; i < r; ++i) {
            if (x[i].is_zero()) continue;
            if (!x[i].is_polynomial())
                throw Error("induced p-map is not regular");
            const Poly& q = x[i].num();
            int dmax = ct[i] - static_cast<int>(p) * ct[j];
            if (q.degree() > dmax) throw Error("induced p-map violates degree bounds");
            out.pmap[i][j] = Form::homogenize(q, dmax);
        }
    }
    pmap_matrix(out);  // validate
    (void)ktype;
    return out;
}

// Descends a trivially-split Lie bundle to a constant height-one datum.
inline ConstantGroupDatum constancy_descend(const RestrictedLieBundle& l) {
    pmap_matrix(l);
    for (int t : l.bundle.twists())
        if (t != 0) throw NotConstant(l.bundle.canonical().twists());
    const int n = l.bundle.rank();
    ConstantGroupDatum d{l.field, n, fmat_zero(l.field, n, n)};
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) d.pmat[i][j] = l.pmap[i][j].coeff(0);
    return d;
}

struct Slope0Split {
    FMatrix generators;  // n x r constant generators of S
    FMatrix complement;  // n x (n-r) constant complement
};

// A saturated degree-0 subsheaf of a trivial bundle is free with constant
// generators and splits off by a constant complement.
inline Slope0Split free_slope0_split(const Subsheaf& s) {
    const FqPtr& f = s.generators.field;
    if (!s.saturated) throw NotSaturated();
    for (int t : s.ambient.twists())
        if (t != 0) throw Error("ambient bundle must be trivial");
    if (s.degree != 0) throw NotSlopeZero();
    const int n = s.ambient.rank();
    const int r = s.generic_rank;
    auto ann = detail::annihilator_rows(s.generators);
    auto space = detail::sections(f, s.ambient.twists(), ann, 0, true);
    if (space.dim != r) throw NotSlopeZero();
    Slope0Split out;
    out.generators = fmat_zero(f, n, r);
    for (int j = 0; j < r; ++j)
        for (int i = 0; i < n; ++i) out.generators[i][j] = space.basis[j][i].coeff(0);
    // complete to a constant basis
    FMatrix probe;
    for (int j = 0; j < r; ++j) {
        std::vector<FieldElem> col(n, FieldElem(f, 0));
        for (int i = 0; i < n; ++i) col[i] = out.generators[i][j];
        probe.push_back(std::move(col));
    }
    out.complement = fmat_zero(f, n, n - r);
    int added = 0;
    for (int j = 0; j < n && added < n - r; ++j) {
        std::vector<FieldElem> e(n, FieldElem(f, 0));
        e[j] = FieldElem(f, 1);
        probe.push_back(e);
        if (rank(probe) == static_cast<int>(probe.size())) {
            for (int i = 0; i < n; ++i) out.complement[i][added] = e[i];
            ++added;
        } else {
            probe.pop_back();
        }
    }
    if (added != n - r) throw Error("failed to complete constant complement");
    return out;
}

struct MoretBaillyH {
    RestrictedLieBundle lie;   // O(-1) with zero p-map
    Subsheaf embedding;        // the line inside the trivial rank-2 bundle
};

// The non-constant height-one line subgroup of alpha_p x alpha_p over the
// projective line: Lie algebra O(-1) embedded by (V, -U), zero p-map.
inline MoretBaillyH moret_bailly_H(long long p) {
    if (!is_prime_i64(p)) throw Error("p must be prime");
    FqPtr f = make_field(p, 1);
    MoretBaillyH h;
    GradedMatrix gens = graded_zero(f, SplitBundle(std::vector<int>{-1}),
                                    SplitBundle(std::vector<int>{0, 0}));
    gens.entries[0][0] = Form::V(f);
    gens.entries[1][0] = -Form::U(f);
    validate(gens);
    h.embedding = make_subsheaf(gens);
    h.lie = make_lie_bundle(f, gens.source,
                            Matrix<Form>(1, std::vector<Form>(1, Form::zero(f))));
    return h;
}

}  // namespace charp

#endif
