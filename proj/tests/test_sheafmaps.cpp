#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "charp/sheafmaps.hpp"

using namespace charp;

namespace {

GradedMatrix euler_map(const FqPtr& f) {
    GradedMatrix m = graded_zero(f, SplitBundle({-1, -1}), SplitBundle({0}));
    m.entries[0][0] = Form::U(f);
    m.entries[0][1] = Form::V(f);
    return m;
}

Form random_form(std::mt19937& rng, const FqPtr& f, int d) {
    if (d < 0) return Form::zero(f);
    std::uniform_int_distribution<i64> coef(0, f->order() - 1);
    std::vector<FieldElem> c;
    for (int i = 0; i <= d; ++i) c.emplace_back(f, coef(rng));
    return Form(f, d, std::move(c));
}

}  // namespace

TEST_CASE("graded matrix validation") {
    auto f = make_field(5, 1);
    GradedMatrix m = graded_zero(f, SplitBundle({0}), SplitBundle({2}));
    m.entries[0][0] = Form::U(f);  // degree 1, expected 2
    CHECK_THROWS_AS(validate(m), DegreeMismatch);
    m.entries[0][0] = Form::U(f) * Form::V(f);
    CHECK_NOTHROW(validate(m));
    // negative-degree slots must stay zero
    GradedMatrix n = graded_zero(f, SplitBundle({2}), SplitBundle({0}));
    n.entries[0][0] = Form::constant(FieldElem(f, 1));
    CHECK_THROWS_AS(validate(n), DegreeMismatch);
}

TEST_CASE("kernel of the euler-type map") {
    auto f = make_field(5, 1);
    Subsheaf k = kernel_bundle(euler_map(f));
    CHECK(k.saturated);
    CHECK(k.generic_rank == 1);
    CHECK(splitting_type_from_generators(k.generators) == SplitBundle({-2}));
    CHECK(k.degree == -2);
    // (V, -U) spans the kernel
    CHECK(saturation_degree_via_minors(k.generators) == -2);
}

TEST_CASE("saturation recovers the primitive generator") {
    auto f = make_field(5, 1);
    // column U * (U, V) inside O(2)^2
    GradedMatrix g = graded_zero(f, SplitBundle({0}), SplitBundle({2, 2}));
    g.entries[0][0] = Form::U(f) * Form::U(f);
    g.entries[1][0] = Form::U(f) * Form::V(f);
    Subsheaf s = make_subsheaf(g);
    CHECK(s.degree == 0);
    CHECK_FALSE(s.saturated);
    Subsheaf sat = saturate(s);
    CHECK(sat.saturated);
    CHECK(splitting_type_of(sat) == SplitBundle({1}));
    CHECK(sat.degree == 1);
    CHECK(saturation_degree_via_minors(g) == 1);
}

TEST_CASE("torsion of a multiplication map") {
    auto f = make_field(5, 1);
    GradedMatrix g = graded_zero(f, SplitBundle({-2}), SplitBundle({0}));
    g.entries[0][0] = Form::U(f) * Form::U(f);
    ExactTriple t = exact_triple_analyze(g);
    CHECK(t.kernel.rank() == 0);
    CHECK(t.image_degree == -2);
    CHECK(t.image_sat == SplitBundle({0}));
    CHECK(t.torsion_degree == 2);
    CHECK(t.cokernel.rank() == 0);
}

TEST_CASE("exact triple of the euler-type map") {
    auto f = make_field(5, 1);
    ExactTriple t = exact_triple_analyze(euler_map(f));
    CHECK(t.kernel == SplitBundle({-2}));
    CHECK(t.image_sat == SplitBundle({0}));
    CHECK(t.image_degree == 0);
    CHECK(t.torsion_degree == 0);
}

TEST_CASE("cokernel of a line inclusion") {
    auto f = make_field(5, 1);
    // (V, -U): O(-1) -> O^2, cokernel O(1)
    GradedMatrix g = graded_zero(f, SplitBundle({-1}), SplitBundle({0, 0}));
    g.entries[0][0] = Form::V(f);
    g.entries[1][0] = -Form::U(f);
    ExactTriple t = exact_triple_analyze(g);
    CHECK(t.kernel.rank() == 0);
    CHECK(t.image_sat == SplitBundle({-1}));
    CHECK(t.torsion_degree == 0);
    CHECK(t.cokernel == SplitBundle({1}));
}

TEST_CASE("zero and full maps") {
    auto f = make_field(3, 1);
    GradedMatrix z = graded_zero(f, SplitBundle({-1, 0}), SplitBundle({1}));
    ExactTriple t = exact_triple_analyze(z);
    CHECK(t.kernel == SplitBundle({-1, 0}));
    CHECK(t.image_sat.rank() == 0);
    CHECK(t.cokernel == SplitBundle({1}));
    GradedMatrix id = graded_zero(f, SplitBundle({0, 0}), SplitBundle({0, 0}));
    id.entries[0][0] = Form::constant(FieldElem(f, 1));
    id.entries[1][1] = Form::constant(FieldElem(f, 1));
    ExactTriple t2 = exact_triple_analyze(id);
    CHECK(t2.kernel.rank() == 0);
    CHECK(t2.image_sat == SplitBundle({0, 0}));
    CHECK(t2.cokernel.rank() == 0);
    CHECK(t2.torsion_degree == 0);
}

TEST_CASE("composition degrees") {
    auto f = make_field(5, 1);
    GradedMatrix a = graded_zero(f, SplitBundle({0}), SplitBundle({1}));
    a.entries[0][0] = Form::U(f);
    GradedMatrix b = graded_zero(f, SplitBundle({-1}), SplitBundle({0}));
    b.entries[0][0] = Form::V(f);
    GradedMatrix c = compose(a, b);
    CHECK(c.entries[0][0] == Form::U(f) * Form::V(f));
    CHECK_NOTHROW(validate(c));
}

TEST_CASE("random exact triples balance degrees") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> tw(-3, 3), rk(1, 3), keep(0, 2);
    auto f = make_field(3, 1);
    for (int iter = 0; iter < 60; ++iter) {
        std::vector<int> src(rk(rng)), tgt(rk(rng));
        for (int& x : src) x = tw(rng);
        for (int& x : tgt) x = tw(rng);
        GradedMatrix m = graded_zero(f, SplitBundle(src), SplitBundle(tgt));
        for (size_t i = 0; i < tgt.size(); ++i)
            for (size_t j = 0; j < src.size(); ++j) {
                int d = tgt[i] - src[j];
                if (d >= 0 && keep(rng) != 0) m.entries[i][j] = random_form(rng, f, d);
            }
        ExactTriple t = exact_triple_analyze(m);
        // rank additivity
        CHECK(t.kernel.rank() + t.image_sat.rank() == m.source.rank());
        CHECK(t.image_sat.rank() + t.cokernel.rank() == m.target.rank());
        // degree additivity through the triple
        CHECK(t.kernel.degree() + t.image_degree == m.source.degree());
        CHECK(t.image_degree + t.torsion_degree == t.image_sat.degree());
        CHECK(t.image_degree + t.cokernel.degree() + t.torsion_degree == m.target.degree());
        CHECK(t.torsion_degree >= 0);
        // independent saturation-degree route
        if (t.kernel.rank() == 0 && m.source.rank() > 0)
            CHECK(saturation_degree_via_minors(m) == t.image_sat.degree());
    }
}

TEST_CASE("membership in the generic span") {
    auto f = make_field(5, 1);
    GradedMatrix g = graded_zero(f, SplitBundle({-1}), SplitBundle({0, 0}));
    g.entries[0][0] = Form::V(f);
    g.entries[1][0] = -Form::U(f);
    Poly t = Poly::t(f);
    std::vector<RatFn> inside{RatFn(t), RatFn::constant(FieldElem(f, 4))};  // t*(1) , -1*1
    CHECK(spans_contain(g, inside));
    std::vector<RatFn> outside{RatFn::constant(FieldElem(f, 1)), RatFn(f)};
    CHECK_FALSE(spans_contain(g, outside));
}
