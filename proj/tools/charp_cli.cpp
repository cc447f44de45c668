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

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "charp/io.hpp"

namespace {

using namespace charp;

Json read_document(const std::string& path) {
    std::string text;
    if (path.empty() || path == "-") {
        std::stringstream ss;
        ss << std::cin.rdbuf();
        text = ss.str();
    } else {
        std::ifstream in(path);
        if (!in) throw ParseError("cannot open " + path);
        std::stringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    }
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
}

std::string rat_str(const Rat& r) {
    std::ostringstream os;
    os << r.numerator();
    if (r.denominator() != 1) os << "/" << r.denominator();
    return os.str();
}

Json rat_json(const Rat& r) {
    Json j;
    j["num"] = r.numerator();
    j["den"] = r.denominator();
    return j;
}

Json hn_json(const HNProfile& prof) {
    Json arr = Json::array();
    for (const auto& b : prof) {
        Json e;
        e["slope"] = rat_json(b.slope);
        e["rank"] = b.rank;
        arr.push_back(std::move(e));
    }
    return arr;
}

std::string bundle_str(const SplitBundle& b) {
    std::ostringstream os;
    os << b;
    return os.str();
}

void emit(const Json& j, bool as_json, const std::string& human) {
    if (as_json)
        std::cout << j.dump(2) << "\n";
    else
        std::cout << human;
}

int cmd_bundle_report(const std::string& path, bool as_json, bool hn_only) {
    Json doc = read_document(path);
    if (kind_of(doc) != "bundle") throw ParseError("expected kind=bundle");
    SplitBundle b = parse_bundle(doc);
    Json out;
    out["kind"] = "bundle_report";
    out["twists"] = b.canonical().twists();
    out["slope"] = rat_json(slope(b));
    out["hn"] = hn_json(hn_filtration(b));
    out["mu_max"] = rat_json(mu_max(b));
    out["mu_min"] = rat_json(mu_min(b));
    out["positivity"] = to_string(positivity_verdict(b));
    std::ostringstream os;
    os << "bundle " << b << "\n";
    os << "slope " << rat_str(slope(b)) << "\n";
    if (hn_only || true) {
        os << "hn";
        for (const auto& blk : hn_filtration(b))
            os << " (" << rat_str(blk.slope) << " x" << blk.rank << ")";
        os << "\n";
    }
    os << "mu_max " << rat_str(mu_max(b)) << "  mu_min " << rat_str(mu_min(b)) << "\n";
    os << "positivity " << to_string(positivity_verdict(b)) << "\n";
    emit(out, as_json, os.str());
    return 0;
}

Json witness_json(const DestabWitness& w) {
    Json j;
    j["type"] = splitting_type_from_generators(w.sub.generators).canonical().twists();
    j["slope"] = rat_json(w.sub_slope);
    j["candidate"] = w.candidate;
    return j;
}

Json arakelov_json(const ArakelovReport& r) {
    Json j;
    j["g"] = r.g;
    j["genus"] = r.genus;
    j["deg_hodge"] = r.deg_hodge;
    j["kernel"] = r.kernel_type.canonical().twists();
    j["deg_kernel"] = r.deg_kernel;
    j["deg_image"] = r.deg_image;
    j["image_sat"] = r.image_sat_type.canonical().twists();
    j["deg_image_sat"] = r.deg_image_sat;
    j["cokernel"] = r.coker_type.canonical().twists();
    j["deg_cokernel"] = r.deg_coker;
    j["chain_lhs"] = r.chain_lhs;
    j["chain_rhs"] = r.chain_rhs;
    j["chain_holds"] = r.chain_holds;
    j["kernel_inequality_holds"] = r.ineq_kernel_holds;
    j["cokernel_inequality_holds"] = r.ineq_coker_holds;
    j["symmetry_checked"] = r.symmetry_checked;
    j["symmetry_identified"] = r.symmetry_identified;
    j["final_bound"] = r.final_bound;
    j["final_holds"] = r.final_holds;
    j["broken"] = r.broken;
    return j;
}

int cmd_higgs(const std::string& path, bool as_json, int genus) {
    Json doc = read_document(path);
    std::string kind = kind_of(doc);
    Json out;
    std::ostringstream os;
    if (kind == "higgs") {
        HiggsBundle h = parse_higgs(doc);
        VerdictResult v = semistability_verdict(h);
        out["kind"] = "higgs_report";
        out["verdict"] = to_string(v.verdict);
        if (v.witness) out["witness"] = witness_json(*v.witness);
        os << "verdict " << to_string(v.verdict) << "\n";
        if (v.witness)
            os << "witness " << splitting_type_from_generators(v.witness->sub.generators)
               << " slope " << rat_str(v.witness->sub_slope) << "\n";
    } else if (kind == "graded_higgs") {
        GradedHiggs g = parse_graded_higgs(doc);
        VerdictResult v = semistability_verdict(g);
        W2Result w2 = w2_rule(g);
        ArakelovReport ar = arakelov_pipeline(g, genus);
        out["kind"] = "graded_higgs_report";
        out["verdict"] = to_string(v.verdict);
        if (v.witness) out["witness"] = witness_json(*v.witness);
        out["w2_obstruction"] = w2.obstruction;
        out["arakelov"] = arakelov_json(ar);
        os << "verdict " << to_string(v.verdict) << "\n";
        if (v.witness)
            os << "witness " << splitting_type_from_generators(v.witness->sub.generators)
               << " slope " << rat_str(v.witness->sub_slope) << "\n";
        os << "w2_obstruction " << (w2.obstruction ? "yes" : "no") << "\n";
        os << "arakelov chain " << ar.chain_lhs << " <= " << ar.chain_rhs
           << (ar.chain_holds ? " holds" : " broken") << "\n";
        os << "arakelov final deg " << ar.deg_hodge << " <= " << ar.final_bound
           << (ar.final_holds ? " holds" : " violated") << "\n";
    } else {
        throw ParseError("expected kind=higgs or kind=graded_higgs");
    }
    emit(out, as_json, os.str());
    return 0;
}

int cmd_dieudonne(const std::string& path, bool as_json) {
    Json doc = read_document(path);
    if (kind_of(doc) != "dieudonne") throw ParseError("expected kind=dieudonne");
    DieudonneModule m = parse_dieudonne(doc);
    bool ll = local_local_test(m);
    Json out;
    out["kind"] = "dieudonne_report";
    out["local_local"] = ll;
    std::ostringstream os;
    os << "local_local " << (ll ? "yes" : "no") << "\n";
    if (ll) {
        auto flag = alpha_filtration(m);
        Json steps = Json::array();
        for (const auto& basis : flag) steps.push_back(emit_int_matrix(basis));
        out["alpha_filtration"] = std::move(steps);
        os << "alpha_filtration length " << flag.size() << "\n";
        for (size_t i = 0; i < flag.size(); ++i) {
            os << "  M_" << (i + 1) << ":";
            for (const auto& v : flag[i]) {
                os << " (";
                for (size_t k = 0; k < v.size(); ++k) os << (k ? "," : "") << v[k];
                os << ")";
            }
            os << "\n";
        }
    }
    emit(out, as_json, os.str());
    return 0;
}

int cmd_moret_bailly(long long p, bool as_json) {
    FamilyDescriptor d = moret_bailly_family(p);
    W2Report rep = w2_obstruction_report(d);
    GradedHiggs gh = graded_from_hodge(d.field, *d.hodge_split, *d.ks);
    ArakelovReport ar = arakelov_pipeline(gh, d.genus);
    ReductionRun run = reduction_run(moret_bailly_state(p), replay_oracle({}), 4);
    SplitBundle lie = dual_bundle(*d.hodge_split);
    MoretBaillyH h = moret_bailly_H(p);

    Json out;
    out["kind"] = "moret_bailly_report";
    out["prime"] = p;
    out["family"] = emit_family(d);
    out["hodge"] = d.hodge_split->canonical().twists();
    out["lie"] = lie.canonical().twists();
    out["mu_min_hodge"] = rat_json(rep.mu_min_hodge);
    out["positivity"] = to_string(rep.positivity);
    out["higgs_obstruction"] = rep.higgs->obstruction;
    if (rep.higgs->certificate) out["higgs_witness"] = witness_json(*rep.higgs->certificate);
    out["arakelov"] = arakelov_json(ar);
    out["arakelov_deg"] = rep.arakelov_deg;
    out["arakelov_bound"] = rep.arakelov_bound;
    out["arakelov_violated"] = rep.arakelov_violated;
    out["reduction_verdict"] = to_string(run.verdict);
    out["reduction_steps"] = run.trace.size();
    out["subgroup_H"] = emit_lie_bundle(h.lie);
    out["verdict"] = to_string(rep.verdict);

    std::ostringstream os;
    os << "prime " << p << "\n";
    os << "hodge " << *d.hodge_split << "  lie " << lie << "\n";
    os << "mu_min(hodge) " << rat_str(rep.mu_min_hodge) << " -> "
       << to_string(rep.positivity) << "\n";
    os << "higgs_obstruction " << (rep.higgs->obstruction ? "yes" : "no");
    if (rep.higgs->certificate)
        os << " witness "
           << splitting_type_from_generators(rep.higgs->certificate->sub.generators)
           << " slope " << rat_str(rep.higgs->certificate->sub_slope);
    os << "\n";
    os << "arakelov deg " << rep.arakelov_deg << " vs bound " << rep.arakelov_bound
       << (rep.arakelov_violated ? " violated" : " satisfied") << "\n";
    os << "reduction " << to_string(run.verdict) << " in " << run.trace.size()
       << " step(s)\n";
    os << "verdict " << to_string(rep.verdict) << "\n";
    emit(out, as_json, os.str());
    return 0;
}

int cmd_reduce(const std::string& path, bool as_json, int max_steps) {
    Json doc = read_document(path);
    if (kind_of(doc) != "reduction") throw ParseError("expected kind=reduction");
    ReductionDocument d = parse_reduction(doc);
    ReductionRun run = reduction_run(d.state, replay_oracle(d.oracle), max_steps);
    Json out;
    out["kind"] = "reduction_report";
    out["verdict"] = to_string(run.verdict);
    Json trace = Json::array();
    std::ostringstream os;
    for (const auto& t : run.trace) {
        Json e;
        e["step"] = t.step;
        e["case"] = t.case_taken;
        e["kernel_rank"] = t.kernel_rank;
        e["consumed"] = t.consumed;
        e["budget_after"] = t.budget_after;
        e["verdict"] = to_string(t.verdict);
        trace.push_back(std::move(e));
        os << "step " << t.step << " case " << t.case_taken << " kernel_rank "
           << t.kernel_rank << " consumed " << t.consumed << " budget " << t.budget_after
           << "\n";
    }
    out["trace"] = std::move(trace);
    os << "verdict " << to_string(run.verdict) << "\n";
    emit(out, as_json, os.str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact calculator for bundles, Higgs data, and height-one group schemes "
                 "over the projective line in characteristic p"};
    app.require_subcommand(1);
    bool as_json = false;
    app.add_flag("--json", as_json, "machine-readable output");

    std::string slope_path, hn_path, higgs_path, dd_path, red_path;
    int genus = 0, max_steps = 32;
    long long prime = 0;

    auto* c_slope = app.add_subcommand("slope", "slope and positivity of a bundle document");
    c_slope->add_option("doc", slope_path, "document path or - for stdin");
    auto* c_hn = app.add_subcommand("hn", "Harder-Narasimhan profile of a bundle document");
    c_hn->add_option("doc", hn_path, "document path or - for stdin");
    auto* c_higgs = app.add_subcommand("higgs", "semistability / lifting report");
    c_higgs->add_option("doc", higgs_path, "document path or - for stdin");
    c_higgs->add_option("--genus", genus, "base-curve genus for the Arakelov chain");
    auto* c_dd = app.add_subcommand("dieudonne", "local-local test and alpha filtration");
    c_dd->add_option("doc", dd_path, "document path or - for stdin");
    auto* c_mb = app.add_subcommand("moret-bailly", "full fixture-family report");
    c_mb->add_option("--prime", prime, "characteristic")->required();
    auto* c_red = app.add_subcommand("reduce", "run the isogeny reduction loop");
    c_red->add_option("doc", red_path, "document path or - for stdin");
    c_red->add_option("--max-steps", max_steps, "step cap");

    CLI11_PARSE(app, argc, argv);

    try {
        if (c_slope->parsed()) return cmd_bundle_report(slope_path, as_json, false);
        if (c_hn->parsed()) return cmd_bundle_report(hn_path, as_json, true);
        if (c_higgs->parsed()) return cmd_higgs(higgs_path, as_json, genus);
        if (c_dd->parsed()) return cmd_dieudonne(dd_path, as_json);
        if (c_mb->parsed()) return cmd_moret_bailly(prime, as_json);
        if (c_red->parsed()) return cmd_reduce(red_path, as_json, max_steps);
    } catch (const charp::HomVanishingViolated& e) {
        std::cerr << "internal invariant violation: " << e.what() << "\n";
        return 3;
    } catch (const charp::ParseError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const charp::OracleDegreeMismatch& e) {
        std::cerr << "input error at step " << e.step << ": " << e.what() << "\n";
        return 2;
    } catch (const charp::Error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
