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

// JSON documents with a "kind" discriminator for every value type the CLI
// accepts. Field elements serialize as integers in [0, p^m) against the
// fixed lexicographically-first modulus, so round trips are bit-exact;
// keys are emitted sorted for golden-file stability.

#ifndef CHARP_IO_HPP
#define CHARP_IO_HPP

#include <string>
#include <vector>

#include <json.hpp>

#include "charp/engine.hpp"

namespace charp {

using Json = nlohmann::json;

inline Json emit_field(const FqPtr& f) {
    Json j;
    j["p"] = f->p;
    j["m"] = f->m;
    if (f->m >= 2) j["modulus"] = f->modulus;
    return j;
}

inline FqPtr parse_field(const Json& j) {
    if (!j.is_object() || !j.contains("p")) throw ParseError("field needs p");
    i64 p = j.at("p").get<i64>();
    int m = j.value("m", 1);
    FqPtr f;
    try {
        f = make_field(p, m);
    } catch (const Error& e) {
        throw ParseError(e.what());
    }
    if (j.contains("modulus") && j.at("modulus").get<std::vector<i64>>() != f->modulus)
        throw ParseError("modulus does not match the canonical irreducible");
    return f;
}

inline Json emit_form(const Form& fm) {
    Json j;
    j["degree"] = fm.degree();
    std::vector<i64> c;
    for (const auto& x : fm.coeffs()) c.push_back(x.to_int());
    j["coeffs"] = c;
    return j;
}

inline Form parse_form(const Json& j, const FqPtr& f) {
    if (!j.is_object() || !j.contains("degree")) throw ParseError("form needs degree");
    int d = j.at("degree").get<int>();
    if (d < 0) return Form::zero(f);
    auto ints = j.value("coeffs", std::vector<i64>{});
    if (static_cast<int>(ints.size()) != d + 1)
        throw ParseError("form needs degree+1 coefficients");
    std::vector<FieldElem> c;
    c.reserve(ints.size());
    for (i64 v : ints) {
        if (v < 0 || v >= f->order()) throw ParseError("coefficient out of range");
        c.emplace_back(f, v);
    }
    return Form(f, d, std::move(c));
}

inline Json emit_form_matrix(const Matrix<Form>& m) {
    Json rows = Json::array();
    for (const auto& row : m) {
        Json r = Json::array();
        for (const auto& e : row) r.push_back(emit_form(e));
        rows.push_back(std::move(r));
    }
    return rows;
}

inline Matrix<Form> parse_form_matrix(const Json& j, const FqPtr& f) {
    if (!j.is_array()) throw ParseError("entries must be an array of rows");
    Matrix<Form> m;
    for (const auto& row : j) {
        if (!row.is_array()) throw ParseError("matrix row must be an array");
        std::vector<Form> r;
        for (const auto& e : row) r.push_back(parse_form(e, f));
        m.push_back(std::move(r));
    }
    return m;
}

inline std::vector<int> parse_twists(const Json& j, const char* what) {
    if (!j.is_array()) throw ParseError(std::string(what) + " must be an integer array");
    std::vector<int> t;
    for (const auto& x : j) {
        if (!x.is_number_integer()) throw ParseError(std::string(what) + " must be integers");
        t.push_back(x.get<int>());
    }
    return t;
}

inline std::string kind_of(const Json& j) {
    if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string())
        throw ParseError("document needs a string \"kind\"");
    return j.at("kind").get<std::string>();
}

// --- bundle ---

inline Json emit_bundle(const SplitBundle& b) {
    Json j;
    j["kind"] = "bundle";
    j["twists"] = b.twists();
    return j;
}

inline SplitBundle parse_bundle(const Json& j) {
    return SplitBundle(parse_twists(j.at("twists"), "twists"));
}

// --- graded_matrix ---

inline Json emit_graded_matrix(const GradedMatrix& m) {
    Json j;
    j["kind"] = "graded_matrix";
    j["field"] = emit_field(m.field);
    j["source"] = m.source.twists();
    j["target"] = m.target.twists();
    j["entries"] = emit_form_matrix(m.entries);
    return j;
}

inline GradedMatrix parse_graded_matrix(const Json& j) {
    FqPtr f = parse_field(j.at("field"));
    GradedMatrix m = graded_zero(f, SplitBundle(parse_twists(j.at("source"), "source")),
                                 SplitBundle(parse_twists(j.at("target"), "target")));
    Matrix<Form> e = parse_form_matrix(j.at("entries"), f);
    if (e.size() != m.entries.size()) throw ParseError("entry rows do not match target rank");
    for (const auto& row : e)
        if (row.size() != (m.entries.empty() ? 0 : m.entries[0].size()))
            throw ParseError("entry columns do not match source rank");
    m.entries = std::move(e);
    validate(m);
    return m;
}

// --- higgs / graded_higgs ---

inline Json emit_higgs(const HiggsBundle& h) {
    Json j;
    j["kind"] = "higgs";
    j["field"] = emit_field(h.field);
    j["bundle"] = h.bundle.twists();
    j["theta"] = emit_form_matrix(h.theta.entries);
    return j;
}

inline HiggsBundle parse_higgs(const Json& j) {
    FqPtr f = parse_field(j.at("field"));
    SplitBundle b(parse_twists(j.at("bundle"), "bundle"));
    Matrix<Form> th = parse_form_matrix(j.at("theta"), f);
    if (static_cast<int>(th.size()) != b.rank()) throw ParseError("theta must be n x n");
    for (const auto& row : th)
        if (static_cast<int>(row.size()) != b.rank()) throw ParseError("theta must be n x n");
    return make_higgs(f, std::move(b), std::move(th));
}

inline Json emit_graded_higgs(const GradedHiggs& g) {
    Json j;
    j["kind"] = "graded_higgs";
    j["field"] = emit_field(g.field);
    j["hodge"] = g.hodge.twists();
    j["ks"] = emit_form_matrix(g.ks);
    if (!g.symmetric) j["skip_symmetry"] = true;
    return j;
}

inline GradedHiggs parse_graded_higgs(const Json& j) {
    FqPtr f = parse_field(j.at("field"));
    SplitBundle h(parse_twists(j.at("hodge"), "hodge"));
    Matrix<Form> ks = parse_form_matrix(j.at("ks"), f);
    return graded_from_hodge(f, std::move(h), std::move(ks), j.value("skip_symmetry", false));
}

// --- dieudonne ---

inline Json emit_int_matrix(const FMatrix& m) {
    Json rows = Json::array();
    for (const auto& row : m) {
        std::vector<i64> r;
        for (const auto& x : row) r.push_back(x.to_int());
        rows.push_back(r);
    }
    return rows;
}

inline FMatrix parse_int_matrix(const Json& j, const FqPtr& f, int dim) {
    if (!j.is_array() || static_cast<int>(j.size()) != dim)
        throw ParseError("matrix must have dim rows");
    FMatrix m;
    for (const auto& row : j) {
        auto ints = row.get<std::vector<i64>>();
        if (static_cast<int>(ints.size()) != dim) throw ParseError("matrix must be square");
        std::vector<FieldElem> r;
        for (i64 v : ints) {
            if (v < 0 || v >= f->order()) throw ParseError("entry out of range");
            r.emplace_back(f, v);
        }
        m.push_back(std::move(r));
    }
    return m;
}

inline Json emit_dieudonne(const DieudonneModule& m) {
    Json j;
    j["kind"] = "dieudonne";
    j["field"] = emit_field(m.field);
    j["dim"] = m.dim;
    j["F"] = emit_int_matrix(m.Fmat);
    j["V"] = emit_int_matrix(m.Vmat);
    return j;
}

inline DieudonneModule parse_dieudonne(const Json& j) {
    FqPtr f = parse_field(j.at("field"));
    int dim = j.at("dim").get<int>();
    if (dim < 0) throw ParseError("dim must be >= 0");
    return make_dieudonne(f, parse_int_matrix(j.at("F"), f, dim),
                          parse_int_matrix(j.at("V"), f, dim));
}

// --- lie_bundle ---

inline Json emit_lie_bundle(const RestrictedLieBundle& l) {
    Json j;
    j["kind"] = "lie_bundle";
    j["field"] = emit_field(l.field);
    j["twists"] = l.bundle.twists();
    j["pmap"] = emit_form_matrix(l.pmap);
    return j;
}

inline RestrictedLieBundle parse_lie_bundle(const Json& j) {
    FqPtr f = parse_field(j.at("field"));
    SplitBundle b(parse_twists(j.at("twists"), "twists"));
    Matrix<Form> pm = parse_form_matrix(j.at("pmap"), f);
    if (static_cast<int>(pm.size()) != b.rank()) throw ParseError("pmap must be n x n");
    for (const auto& row : pm)
        if (static_cast<int>(row.size()) != b.rank()) throw ParseError("pmap must be n x n");
    return make_lie_bundle(f, std::move(b), std::move(pm));
}

// --- family ---

inline Json emit_family(const FamilyDescriptor& d) {
    Json j;
    j["kind"] = "family";
    j["g"] = d.g;
    j["genus"] = d.genus;
    j["prime"] = d.prime;
    if (d.field) j["field"] = emit_field(d.field);
    if (d.hodge_split) j["hodge"] = d.hodge_split->twists();
    if (d.hodge_abstract) {
        Json a;
        a["rank"] = d.hodge_abstract->rank;
        a["degree"] = d.hodge_abstract->degree;
        a["genus"] = d.hodge_abstract->genus;
        a["prime"] = d.hodge_abstract->prime;
        j["hodge_abstract"] = std::move(a);
    }
    if (d.ks) j["ks"] = emit_form_matrix(*d.ks);
    j["non_isotrivial"] = d.non_isotrivial;
    if (d.trace_nontrivial) j["trace_nontrivial"] = *d.trace_nontrivial;
    return j;
}

inline FamilyDescriptor parse_family(const Json& j) {
    FamilyDescriptor d;
    d.g = j.at("g").get<int>();
    d.genus = j.at("genus").get<int>();
    d.prime = j.at("prime").get<i64>();
    if (j.contains("field")) d.field = parse_field(j.at("field"));
    if (j.contains("hodge")) d.hodge_split = SplitBundle(parse_twists(j.at("hodge"), "hodge"));
    if (j.contains("hodge_abstract")) {
        const Json& a = j.at("hodge_abstract");
        AbstractBundle b;
        b.rank = a.at("rank").get<int>();
        b.degree = a.at("degree").get<i64>();
        b.genus = a.at("genus").get<int>();
        b.prime = a.at("prime").get<i64>();
        d.hodge_abstract = b;
    }
    if (j.contains("ks")) {
        if (!d.field) throw ParseError("ks needs a field");
        d.ks = parse_form_matrix(j.at("ks"), d.field);
    }
    d.non_isotrivial = j.value("non_isotrivial", false);
    if (j.contains("trace_nontrivial")) d.trace_nontrivial = j.at("trace_nontrivial").get<bool>();
    try {
        validate_family(d);
    } catch (const InconsistentDescriptor&) {
        throw;
    }
    return d;
}

// --- reduction ---

struct ReductionDocument {
    ReductionState state;
    std::vector<GradedMatrix> oracle;  // replayed; last matrix repeats
};

inline Json emit_reduction(const ReductionDocument& d) {
    Json j;
    j["kind"] = "reduction";
    j["field"] = emit_field(d.state.lie_phi.field);
    j["g"] = d.state.g;
    j["budget"] = d.state.budget_exp;
    j["lie_target"] = d.state.lie_target.twists();
    j["lie_phi"] = emit_form_matrix(d.state.lie_phi.entries);
    Json o = Json::array();
    for (const auto& m : d.oracle) o.push_back(emit_form_matrix(m.entries));
    j["oracle"] = std::move(o);
    return j;
}

inline ReductionDocument parse_reduction(const Json& j) {
    FqPtr f = parse_field(j.at("field"));
    ReductionDocument d;
    d.state.g = j.at("g").get<int>();
    d.state.budget_exp = j.at("budget").get<i64>();
    d.state.lie_target = SplitBundle(parse_twists(j.at("lie_target"), "lie_target"));
    d.state.lie_phi = graded_zero(f, SplitBundle(std::vector<int>(d.state.g, 0)),
                                  d.state.lie_target);
    Matrix<Form> e = parse_form_matrix(j.at("lie_phi"), f);
    if (static_cast<int>(e.size()) != d.state.lie_target.rank())
        throw ParseError("lie_phi rows must match lie_target");
    d.state.lie_phi.entries = std::move(e);
    validate_state(d.state);
    for (const auto& om : j.value("oracle", Json::array())) {
        GradedMatrix m = graded_zero(f, d.state.lie_phi.source, d.state.lie_target);
        m.entries = parse_form_matrix(om, f);
        d.oracle.push_back(std::move(m));  // validated per-step by the engine
    }
    return d;
}

}  // namespace charp

#endif
