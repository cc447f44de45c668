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

// Morphisms of split bundles as graded matrices, and the coherent-sheaf
// calculus on top of them: kernel subbundles, saturation, splitting-type
// recovery by section counting, exact-triple degree bookkeeping.
//
// Saturated subsheaves of split bundles are split, so everything reduces to
// generic-fiber linear algebra over k(t) plus exact section counting over
// the base field.

#ifndef CHARP_SHEAFMAPS_HPP
#define CHARP_SHEAFMAPS_HPP

#include <algorithm>
#include <functional>
#include <string>
#include <vector>

#include "charp/bundles.hpp"
#include "charp/form.hpp"
#include "charp/ratfun.hpp"

namespace charp {

struct GradedMatrix {
    FqPtr field;
    SplitBundle source;  // twists a_1..a_s, storage order is meaningful
    SplitBundle target;  // twists b_1..b_n
    Matrix<Form> entries;  // n x s, entry (i,j) of degree b_i - a_j or zero
};

inline GradedMatrix graded_zero(const FqPtr& f, SplitBundle source, SplitBundle target) {
    GradedMatrix m{f, std::move(source), std::move(target), {}};
    m.entries.assign(m.target.rank(), std::vector<Form>(m.source.rank(), Form::zero(f)));
    return m;
}

inline void validate(const GradedMatrix& m) {
    const auto& a = m.source.twists();
    const auto& b = m.target.twists();
    if (static_cast<int>(m.entries.size()) != m.target.rank())
        throw Error("graded matrix has wrong row count");
    for (int i = 0; i < m.target.rank(); ++i) {
        if (static_cast<int>(m.entries[i].size()) != m.source.rank())
            throw Error("graded matrix has wrong column count");
        for (int j = 0; j < m.source.rank(); ++j) {
            const Form& e = m.entries[i][j];
            if (e.is_zero()) continue;
            int want = b[i] - a[j];
            if (want < 0)
                throw DegreeMismatch(i, j,
                    "entry (" + std::to_string(i) + "," + std::to_string(j) +
                    ") must vanish: degree bound " + std::to_string(want) + " is negative");
            if (e.degree() != want)
                throw DegreeMismatch(i, j,
                    "entry (" + std::to_string(i) + "," + std::to_string(j) + ") has degree " +
                    std::to_string(e.degree()) + ", expected " + std::to_string(want));
        }
    }
}

inline bool is_zero(const GradedMatrix& m) {
    for (const auto& row : m.entries)
        for (const auto& e : row)
            if (!e.is_zero()) return false;
    return true;
}

// Composite a∘b (apply b, then a).
inline GradedMatrix compose(const GradedMatrix& a, const GradedMatrix& b) {
    if (!(a.source.twists() == b.target.twists()))
        throw Error("graded matrix composition: middle twists do not match");
    GradedMatrix r = graded_zero(a.field, b.source, a.target);
    for (int i = 0; i < a.target.rank(); ++i)
        for (int j = 0; j < b.source.rank(); ++j) {
            Form acc = Form::zero(a.field);
            for (int k = 0; k < a.source.rank(); ++k) {
                const Form& x = a.entries[i][k];
                const Form& y = b.entries[k][j];
                if (x.is_zero() || y.is_zero()) continue;
                Form prod = x * y;
                acc = acc.is_zero() ? prod : acc + prod;
            }
            r.entries[i][j] = acc;
        }
    return r;
}

// Chart matrix at U = 1 over k(t).
inline RatMatrix dehomogenize(const GradedMatrix& m) {
    RatMatrix r(m.entries.size());
    for (size_t i = 0; i < m.entries.size(); ++i) {
        r[i].reserve(m.entries[i].size());
        for (const auto& e : m.entries[i]) r[i].emplace_back(e.dehomogenize());
    }
    return r;
}

inline int generic_rank(const GradedMatrix& m) {
    if (m.source.rank() == 0 || m.target.rank() == 0) return 0;
    return rank(dehomogenize(m));
}

struct Subsheaf {
    SplitBundle ambient;
    GradedMatrix generators;  // columns generate; generators.target == ambient
    int generic_rank = 0;
    long long degree = 0;  // degree of the generated image sheaf
    bool saturated = false;
};

namespace detail {

// Incremental generic-fiber rank tracking via row reduction over k(t).
class RankTracker {
   public:
    explicit RankTracker(FqPtr f) : fld_(std::move(f)) {}
    int rank() const { return static_cast<int>(rows_.size()); }
    // Adds v to the span if independent; returns whether the rank grew.
    bool try_add(std::vector<RatFn> v) {
        reduce(v);
        for (const auto& x : v)
            if (!x.is_zero()) {
                // normalize on leading entry
                int lead = 0;
                while (v[lead].is_zero()) ++lead;
                RatFn inv = v[lead].inv();
                for (auto& y : v) y = inv * y;
                rows_.push_back(std::move(v));
                std::sort(rows_.begin(), rows_.end(),
                          [](const auto& a, const auto& b) { return lead_of(a) < lead_of(b); });
                return true;
            }
        return false;
    }
    bool contains(std::vector<RatFn> v) const {
        reduce(v);
        for (const auto& x : v)
            if (!x.is_zero()) return false;
        return true;
    }

   private:
    static int lead_of(const std::vector<RatFn>& v) {
        for (size_t i = 0; i < v.size(); ++i)
            if (!v[i].is_zero()) return static_cast<int>(i);
        return static_cast<int>(v.size());
    }
    void reduce(std::vector<RatFn>& v) const {
        for (const auto& row : rows_) {
            int l = lead_of(row);
            if (l >= static_cast<int>(v.size()) || v[l].is_zero()) continue;
            RatFn f = v[l];
            for (size_t j = 0; j < v.size(); ++j) v[j] = v[j] - f * row[j];
        }
    }
    FqPtr fld_;
    std::vector<std::vector<RatFn>> rows_;
};

inline std::vector<RatFn> poly_vec_to_rat(const std::vector<Poly>& v) {
    std::vector<RatFn> r;
    r.reserve(v.size());
    for (const auto& q : v) r.emplace_back(q);
    return r;
}

// Polynomial rows spanning the annihilator of the generic column span:
// a vector lies in the span iff every row pairs to zero with it.
inline std::vector<std::vector<Poly>> annihilator_rows(const GradedMatrix& gens) {
    const FqPtr& f = gens.field;
    const int n = gens.target.rank();
    if (n == 0) return {};
    RatMatrix mt(gens.source.rank(), std::vector<RatFn>(n, RatFn(f)));
    RatMatrix m = dehomogenize(gens);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < gens.source.rank(); ++j) mt[j][i] = m[i][j];
    if (gens.source.rank() == 0) {
        // zero subsheaf: annihilator is everything
        std::vector<std::vector<Poly>> rows;
        for (int i = 0; i < n; ++i) {
            std::vector<Poly> row(n, Poly(f));
            row[i] = Poly::constant(FieldElem(f, 1));
            rows.push_back(std::move(row));
        }
        return rows;
    }
    auto left = rat_kernel(mt, f);
    std::vector<std::vector<Poly>> rows;
    rows.reserve(left.size());
    for (const auto& v : left) rows.push_back(clear_denominators(v));
    return rows;
}

// Dimension (and optionally a basis) of the space of degree-d sections of
// the saturation: form vectors with component j homogeneous of degree
// ambient_twist[j] + d, constrained to the generic span.
struct SectionSpace {
    int dim = 0;
    std::vector<std::vector<Form>> basis;  // filled only when requested
};

inline SectionSpace sections(const FqPtr& f, const std::vector<int>& ambient_twists,
                             const std::vector<std::vector<Poly>>& ann, int d,
                             bool want_basis) {
    const int n = static_cast<int>(ambient_twists.size());
    std::vector<int> comp_deg(n), offset(n, -1);
    int unknowns = 0;
    for (int j = 0; j < n; ++j) {
        comp_deg[j] = ambient_twists[j] + d;
        if (comp_deg[j] >= 0) {
            offset[j] = unknowns;
            unknowns += comp_deg[j] + 1;
        }
    }
    SectionSpace out;
    if (unknowns == 0) return out;
    // One constraint per annihilator row per power of t.
    FMatrix sys;
    for (const auto& row : ann) {
        int maxdeg = 0;
        for (int j = 0; j < n; ++j)
            if (offset[j] >= 0 && !row[j].is_zero())
                maxdeg = std::max(maxdeg, row[j].degree() + comp_deg[j]);
        for (int k = 0; k <= maxdeg; ++k) {
            std::vector<FieldElem> eq(unknowns, FieldElem(f, 0));
            bool nonzero = false;
            for (int j = 0; j < n; ++j) {
                if (offset[j] < 0 || row[j].is_zero()) continue;
                for (int i = 0; i <= comp_deg[j]; ++i) {
                    FieldElem c = row[j].coeff(k - i);
                    if (c.is_zero()) continue;
                    eq[offset[j] + i] = eq[offset[j] + i] + c;
                    nonzero = true;
                }
            }
            if (nonzero) sys.push_back(std::move(eq));
        }
    }
    std::vector<std::vector<FieldElem>> null;
    if (sys.empty()) {
        // no constraints: all of Gamma(ambient(d)) restricted to components
        out.dim = unknowns;
        if (want_basis) {
            for (int c = 0; c < unknowns; ++c) {
                std::vector<FieldElem> v(unknowns, FieldElem(f, 0));
                v[c] = FieldElem(f, 1);
                null.push_back(std::move(v));
            }
        }
    } else {
        null = nullspace(sys, FieldElem(f, 0), FieldElem(f, 1));
        out.dim = static_cast<int>(null.size());
        if (!want_basis) return out;
    }
    for (const auto& v : null) {
        std::vector<Form> vec;
        vec.reserve(n);
        for (int j = 0; j < n; ++j) {
            if (offset[j] < 0) {
                vec.push_back(Form::zero(f));
                continue;
            }
            std::vector<FieldElem> pc(v.begin() + offset[j],
                                      v.begin() + offset[j] + comp_deg[j] + 1);
            vec.push_back(Form::homogenize(Poly(f, std::move(pc)), comp_deg[j]));
        }
        out.basis.push_back(std::move(vec));
    }
    return out;
}

}  // namespace detail

// Splitting type of the saturation of the subsheaf generated by `gens`,
// recovered from section counts: h(d) - h(d-1) = #{b_j >= -d}.
inline SplitBundle splitting_type_from_generators(const GradedMatrix& gens) {
    const FqPtr& f = gens.field;
    const int r = generic_rank(gens);
    if (r == 0) return SplitBundle(std::vector<int>{});
    auto ann = detail::annihilator_rows(gens);
    const auto& at = gens.target.twists();
    int amax = *std::max_element(at.begin(), at.end());
    int amin = *std::min_element(at.begin(), at.end());
    int max_entry_deg = 0;
    for (const auto& row : gens.entries)
        for (const auto& e : row)
            if (!e.is_zero()) max_entry_deg = std::max(max_entry_deg, e.degree());
    // Generous eventual-linearity bound for the section counts.
    int dcap = std::max(std::abs(amax), std::abs(amin)) + max_entry_deg +
               gens.target.rank() + 2;
    std::vector<int> twists;
    int prev_cnt = 0;
    for (int d = -amax; static_cast<int>(twists.size()) < r; ++d) {
        if (d > dcap) throw Error("splitting-type recovery exceeded degree cap");
        int h = detail::sections(f, at, ann, d, false).dim;
        int hm1 = detail::sections(f, at, ann, d - 1, false).dim;
        int cnt = h - hm1;
        for (int k = prev_cnt; k < cnt; ++k) twists.push_back(-d);
        prev_cnt = cnt;
    }
    return SplitBundle(std::move(twists));
}

// Saturation: the unique saturated subsheaf with the same generic fiber.
// Generators are sections realizing the recovered splitting type.
inline Subsheaf saturate_generators(const GradedMatrix& gens) {
    const FqPtr& f = gens.field;
    SplitBundle type = splitting_type_from_generators(gens);
    const int r = type.rank();
    Subsheaf out;
    out.ambient = gens.target;
    out.generic_rank = r;
    out.degree = type.degree();
    out.saturated = true;
    if (r == 0) {
        out.generators = graded_zero(f, SplitBundle(std::vector<int>{}), gens.target);
        return out;
    }
    auto ann = detail::annihilator_rows(gens);
    const auto& at = gens.target.twists();
    detail::RankTracker tracker(f);
    std::vector<int> col_twists;
    Matrix<Form> cols;  // one inner vector per generator column
    std::vector<int> sorted = type.canonical().twists();
    size_t idx = 0;
    while (idx < sorted.size()) {
        int b = sorted[idx];
        size_t mult = 0;
        while (idx + mult < sorted.size() && sorted[idx + mult] == b) ++mult;
        auto space = detail::sections(f, at, ann, -b, true);
        size_t added = 0;
        for (const auto& vec : space.basis) {
            if (added == mult) break;
            std::vector<RatFn> chart;
            chart.reserve(vec.size());
            for (const auto& e : vec) chart.emplace_back(e.dehomogenize());
            if (tracker.try_add(std::move(chart))) {
                cols.push_back(vec);
                col_twists.push_back(b);
                ++added;
            }
        }
        if (added != mult) throw Error("saturation: section space failed to realize type");
        idx += mult;
    }
    GradedMatrix g = graded_zero(f, SplitBundle(col_twists), gens.target);
    for (int i = 0; i < g.target.rank(); ++i)
        for (int j = 0; j < r; ++j) g.entries[i][j] = cols[j][i];
    validate(g);
    out.generators = g;
    return out;
}

// Chart vectors in an ambient split bundle, made into a graded generator
// matrix of primitive form columns.
inline GradedMatrix columns_to_graded(const FqPtr& f, const SplitBundle& ambient,
                                      const std::vector<std::vector<RatFn>>& vecs) {
    const auto& a = ambient.twists();
    std::vector<int> col_twists;
    Matrix<Form> cols;
    for (const auto& v : vecs) {
        auto pv = clear_denominators(v);
        int c = 0;
        bool first = true;
        for (size_t j = 0; j < pv.size(); ++j) {
            if (pv[j].is_zero()) continue;
            int cj = a[j] - pv[j].degree();
            c = first ? cj : std::min(c, cj);
            first = false;
        }
        if (first) continue;  // zero vector
        std::vector<Form> col;
        col.reserve(pv.size());
        for (size_t j = 0; j < pv.size(); ++j)
            col.push_back(pv[j].is_zero() ? Form::zero(f)
                                          : Form::homogenize(pv[j], a[j] - c));
        Form g = form_gcd(col);
        if (!g.is_zero() && g.degree() > 0) {
            for (auto& e : col) e = e.is_zero() ? e : e / g;
            c += g.degree();
        }
        cols.push_back(std::move(col));
        col_twists.push_back(c);
    }
    GradedMatrix gens = graded_zero(f, SplitBundle(col_twists), ambient);
    for (int i = 0; i < ambient.rank(); ++i)
        for (size_t j = 0; j < cols.size(); ++j) gens.entries[i][j] = cols[j][i];
    validate(gens);
    return gens;
}

// Kernel of a bundle map: always a saturated subbundle of the source.
inline Subsheaf kernel_bundle(const GradedMatrix& m) {
    validate(m);
    const FqPtr& f = m.field;
    if (m.source.rank() == 0) {
        Subsheaf out;
        out.ambient = m.source;
        out.generators = graded_zero(f, SplitBundle(std::vector<int>{}), m.source);
        out.saturated = true;
        return out;
    }
    std::vector<std::vector<RatFn>> ker;
    if (m.target.rank() == 0 || is_zero(m)) {
        for (int j = 0; j < m.source.rank(); ++j) {
            std::vector<RatFn> v(m.source.rank(), RatFn(f));
            v[j] = RatFn::constant(FieldElem(f, 1));
            ker.push_back(std::move(v));
        }
    } else {
        ker = rat_kernel(dehomogenize(m), f);
    }
    if (ker.empty()) {
        Subsheaf out;
        out.ambient = m.source;
        out.generators = graded_zero(f, SplitBundle(std::vector<int>{}), m.source);
        out.saturated = true;
        return out;
    }
    return saturate_generators(columns_to_graded(f, m.source, ker));
}

// Degree of the image sheaf of a generator matrix (before saturation).
inline long long image_degree(const GradedMatrix& gens) {
    long long src = gens.source.degree();
    Subsheaf k = kernel_bundle(gens);
    return src - k.degree;
}

inline Subsheaf make_subsheaf(const GradedMatrix& gens) {
    validate(gens);
    Subsheaf s;
    s.ambient = gens.target;
    s.generators = gens;
    s.generic_rank = generic_rank(gens);
    s.degree = image_degree(gens);
    s.saturated = (s.degree == splitting_type_from_generators(gens).degree()) ||
                  s.generic_rank == 0;
    return s;
}

inline Subsheaf saturate(const Subsheaf& s) {
    if (s.generic_rank == 0) return s;
    return saturate_generators(s.generators);
}

inline SplitBundle splitting_type_of(const Subsheaf& s) {
    if (!s.saturated) throw NotSaturated();
    return splitting_type_from_generators(s.generators);
}

// Independent saturation-degree route: for an injective generator matrix of
// full column rank s, deg(saturation) = sum of column twists + deg(gcd of
// all s x s minors).
inline long long saturation_degree_via_minors(const GradedMatrix& gens) {
    const FqPtr& f = gens.field;
    const int s = gens.source.rank();
    const int n = gens.target.rank();
    if (s == 0) return 0;
    if (generic_rank(gens) != s)
        throw Error("minors rule needs an injective generator matrix");
    // all s-subsets of rows
    std::vector<Form> minors;
    std::vector<int> pick(s);
    std::function<void(int, int)> rec = [&](int pos, int start) {
        if (pos == s) {
            // determinant by cofactor expansion
            std::function<Form(std::vector<int>, std::vector<int>)> det =
                [&](std::vector<int> rows, std::vector<int> cols) -> Form {
                if (rows.size() == 1) return gens.entries[rows[0]][cols[0]];
                Form acc = Form::zero(f);
                for (size_t k = 0; k < rows.size(); ++k) {
                    const Form& e = gens.entries[rows[k]][cols[0]];
                    if (e.is_zero()) continue;
                    std::vector<int> r2, c2(cols.begin() + 1, cols.end());
                    for (size_t i = 0; i < rows.size(); ++i)
                        if (i != k) r2.push_back(rows[i]);
                    Form sub = det(r2, c2);
                    if (sub.is_zero()) continue;
                    Form term = e * sub;
                    if (k % 2 == 1) term = -term;
                    acc = acc.is_zero() ? term : acc + term;
                }
                return acc;
            };
            std::vector<int> cols(s);
            for (int j = 0; j < s; ++j) cols[j] = j;
            minors.push_back(det(pick, cols));
            return;
        }
        for (int i = start; i < n; ++i) {
            pick[pos] = i;
            rec(pos + 1, i + 1);
        }
    };
    rec(0, 0);
    Form g = form_gcd(minors);
    return gens.source.degree() + g.degree();
}

struct ExactTriple {
    SplitBundle kernel;
    SplitBundle image_sat;
    SplitBundle cokernel;
    long long image_degree = 0;    // degree of the image sheaf before saturation
    long long torsion_degree = 0;  // length of the torsion of the cokernel
    Subsheaf kernel_sub;
    Subsheaf image_sub;  // saturated
};

inline ExactTriple exact_triple_analyze(const GradedMatrix& m) {
    validate(m);
    ExactTriple out;
    out.kernel_sub = kernel_bundle(m);
    out.kernel = splitting_type_from_generators(out.kernel_sub.generators);
    out.image_degree = m.source.degree() - out.kernel_sub.degree;
    if (generic_rank(m) == 0) {
        out.image_sub.ambient = m.target;
        out.image_sub.generators = graded_zero(m.field, SplitBundle(std::vector<int>{}), m.target);
        out.image_sub.saturated = true;
        out.image_sat = SplitBundle(std::vector<int>{});
        out.cokernel = m.target;
        out.torsion_degree = 0;
        return out;
    }
    out.image_sub = saturate_generators(m);
    out.image_sat = splitting_type_from_generators(out.image_sub.generators);
    out.torsion_degree = out.image_sub.degree - out.image_degree;
    // Cokernel bundle: dual of the kernel of the transposed inclusion.
    const int r = out.image_sub.generic_rank;
    if (r == m.target.rank()) {
        out.cokernel = SplitBundle(std::vector<int>{});
    } else {
        const auto& g = out.image_sub.generators;
        std::vector<int> dual_src, dual_tgt;
        for (int t : g.target.twists()) dual_src.push_back(-t);
        for (int t : g.source.twists()) dual_tgt.push_back(-t);
        GradedMatrix gt = graded_zero(m.field, SplitBundle(dual_src), SplitBundle(dual_tgt));
        for (int i = 0; i < g.target.rank(); ++i)
            for (int j = 0; j < g.source.rank(); ++j) gt.entries[j][i] = g.entries[i][j];
        validate(gt);
        Subsheaf qdual = kernel_bundle(gt);
        out.cokernel = dual_bundle(splitting_type_from_generators(qdual.generators));
    }
    return out;
}

// Generic-fiber membership of a chart vector in a subsheaf's span.
inline bool spans_contain(const GradedMatrix& gens, const std::vector<RatFn>& v) {
    auto ann = detail::annihilator_rows(gens);
    FqPtr f = gens.field;
    for (const auto& row : ann) {
        RatFn acc(f);
        for (size_t j = 0; j < v.size(); ++j) acc = acc + RatFn(row[j]) * v[j];
        if (!acc.is_zero()) return false;
    }
    return true;
}

}  // namespace charp

#endif
