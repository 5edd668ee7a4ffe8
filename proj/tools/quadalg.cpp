#include <quadalg/canon.hpp>
#include <quadalg/contract.hpp>
#include <quadalg/errors.hpp>
#include <quadalg/io.hpp>
#include <quadalg/poisson.hpp>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <fstream>
#include <iostream>

using namespace quadalg;
using nlohmann::json;

namespace {

// exit codes: 0 verified/success, 1 refuted/mismatch, 2 input or library error
constexpr int kOk = 0, kRefuted = 1, kError = 2;

std::string g_format = "json";

void emit(const json& j, const std::string& markdown) {
    if (g_format == "json")
        std::cout << j.dump(2) << "\n";
    else
        std::cout << markdown;
}

// A form argument is either a system name or a path to a form JSON file.
SymForm resolve_form(const std::string& arg) {
    if (auto id = parse_system(arg)) {
        if (*id == SystemId::S5)
            std::cerr << "note: S5 resolves to the E14 form (the two quadratic "
                         "algebras coincide)\n";
        return catalog().get(*id).form;
    }
    return form_from_json(load_json_file(arg));
}

json label_report(const SymForm& B) {
    ClassifyResult res = classify(B);
    json j = label_to_json(res.label);
    auto [rB, rb] = rank_invariants(B);
    j["rank_B"] = rB;
    j["rank_b"] = rb;
    if (res.witness) {
        j["witness"] = group_elem_to_json(*res.witness);
        j["witness_note"] = "group_act(witness, form) equals the canonical matrix";
    } else {
        j["witness_note"] =
            "witness omitted: a required square root leaves Q(i,s2,s3)";
    }
    try {
        RealizabilityStatus st = realizability(res.label);
        json sys = json::array();
        for (auto s : st.systems) sys.push_back(system_name(s));
        switch (st.kind) {
            case RealizabilityStatus::Kind::RealizedBySystem:
                j["realizability"] = {{"status", "RealizedBySystem"},
                                      {"systems", sys},
                                      {"note", st.note}};
                break;
            case RealizabilityStatus::Kind::HeisenbergOnly:
                j["realizability"] = {{"status", "HeisenbergOnly"}, {"note", st.note}};
                break;
            case RealizabilityStatus::Kind::NotPhaseSpaceRealizable:
                j["realizability"] = {{"status", "NotPhaseSpaceRealizable"},
                                      {"case", st.case_number},
                                      {"note", st.note}};
                break;
        }
    } catch (const UnknownLabel& e) {
        j["realizability"] = {{"status", "UnknownLabel"}, {"note", e.what()}};
    }
    return j;
}

json verdict_to_json(const ContractionVerdict& v) {
    json j{{"status", verdict_name(v.status)}};
    if (v.limit_form) j["limit"] = form_to_json(*v.limit_form);
    if (v.limit_label) j["limit_label"] = v.limit_label->to_string();
    if (!v.detail.empty()) j["detail"] = v.detail;
    return j;
}

json certificate_to_json(const ObstructionCertificate& c) {
    json j{{"kind", certificate_name(c.kind)}, {"detail", c.detail}};
    if (!c.anchor.empty()) j["anchor"] = c.anchor;
    if (c.kind == ObstructionCertificate::Kind::AnsatzExhausted)
        j["bound"] = c.bound;
    return j;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"quadalg — exact classification and contraction toolkit for "
                 "degenerate quadratic algebras"};
    app.require_subcommand(1);

    std::string form_arg, source_arg, target_arg, witness_path, casimir_arg,
        system_arg, c_matrix_arg, out_path;
    int bound = 3;
    unsigned long seed = 0;
    bool certificates = false;

    app.add_option("--format", g_format, "output format: json, markdown, csv")
        ->default_val("json");
    app.add_option("--seed", seed, "seed for randomized self-checks")
        ->default_val("0");

    auto* classify_cmd = app.add_subcommand(
        "classify", "canonical form, witness and realizability of a Casimir form");
    classify_cmd->add_option("--form", form_arg, "form JSON file or system name")
        ->required();

    auto* ranks_cmd = app.add_subcommand("ranks", "rank invariants of a form");
    ranks_cmd->add_option("--form", form_arg, "form JSON file or system name")
        ->required();

    auto* equiv_cmd = app.add_subcommand(
        "equiv", "decide whether two forms lie on the same group orbit");
    equiv_cmd->add_option("--source", source_arg, "form or system")->required();
    equiv_cmd->add_option("--target", target_arg, "form or system")->required();

    auto* cv_cmd = app.add_subcommand("contract-verify",
                                      "verify an eps-family against a target");
    cv_cmd->add_option("--witness", witness_path,
                       "witness JSON file (omit to use the bundled witness)");
    cv_cmd->add_option("--source", source_arg, "form or system")->required();
    cv_cmd->add_option("--target", target_arg, "form or system")->required();

    auto* cs_cmd =
        app.add_subcommand("contract-search", "monomial-ansatz witness search");
    cs_cmd->add_option("--source", source_arg, "form or system")->required();
    cs_cmd->add_option("--target", target_arg, "form or system")->required();
    cs_cmd->add_option("--bound", bound, "exponent bound (<= 16)")->default_val("3");

    auto* t6_cmd = app.add_subcommand(
        "table6", "verify every cell of the contraction grid");
    t6_cmd->add_flag("--certificates", certificates,
                     "include per-cell certificates in the report");
    t6_cmd->add_option("--bound", bound, "ansatz bound for '-' fallbacks")
        ->default_val("3");
    t6_cmd->add_option("--out", out_path, "also write the report to a file");

    auto* catalog_cmd =
        app.add_subcommand("catalog", "list the bundled systems (or one of them)");
    catalog_cmd->add_option("--system", system_arg, "system name");

    auto* structure_cmd = app.add_subcommand(
        "structure", "structure equations {X,L1}, {X,L2}, {L1,L2} from a Casimir");
    structure_cmd->add_option("--system", system_arg, "system name");
    structure_cmd->add_option("--casimir", casimir_arg, "Casimir polynomial");

    auto* realize_cmd = app.add_subcommand(
        "realize", "verify a bundled phase-space realization");
    realize_cmd->add_option("--system", system_arg, "system name")->required();

    auto* stackel_cmd = app.add_subcommand(
        "stackel", "Stäckel equivalence-class Casimir of a parametrized system");
    stackel_cmd->add_option("--system", system_arg, "system name")->required();
    stackel_cmd->add_option("--c-matrix", c_matrix_arg,
                            "numeric 2x2 transform 'c11,c12,c21,c22' "
                            "(default: symbolic)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*classify_cmd) {
            SymForm B = resolve_form(form_arg);
            emit(label_report(B), "label: " + classify(B).label.to_string() + "\n");
            return kOk;
        }
        if (*ranks_cmd) {
            SymForm B = resolve_form(form_arg);
            auto [rB, rb] = rank_invariants(B);
            emit(json{{"rank_B", rB}, {"rank_b", rb}},
                 "rank(B) = " + std::to_string(rB) + ", rank(b) = " +
                     std::to_string(rb) + "\n");
            return kOk;
        }
        if (*equiv_cmd) {
            CanonicalLabel a = classify(resolve_form(source_arg)).label;
            CanonicalLabel b = classify(resolve_form(target_arg)).label;
            bool same = a == b;
            emit(json{{"source_label", a.to_string()},
                      {"target_label", b.to_string()},
                      {"equivalent", same}},
                 std::string(same ? "equivalent" : "not equivalent") + " (" +
                     a.to_string() + " vs " + b.to_string() + ")\n");
            return same ? kOk : kRefuted;
        }
        if (*cv_cmd) {
            SymForm S = resolve_form(source_arg);
            SymForm T = resolve_form(target_arg);
            std::optional<ContractionFamily> F;
            if (!witness_path.empty()) {
                F = family_from_json(load_json_file(witness_path));
            } else {
                auto src = parse_system(source_arg);
                auto tgt = parse_system(target_arg);
                if (src && tgt) {
                    const WitnessRecord* w = find_witness(*src, *tgt);
                    if (w && w->family) F = w->family;
                }
            }
            if (!F)
                throw MissingWitness("no --witness file given and no bundled "
                                     "witness for this pair");
            auto v = verify_contraction(*F, S, T);
            emit(verdict_to_json(v), std::string(verdict_name(v.status)) + "\n");
            return (v.status == VerdictStatus::VerifiedStrict ||
                    v.status == VerdictStatus::VerifiedUpToClassification)
                       ? kOk
                       : kRefuted;
        }
        if (*cs_cmd) {
            SymForm S = resolve_form(source_arg);
            SymForm T = resolve_form(target_arg);
            auto outcome = search_contraction(S, T, bound);
            if (outcome.family) {
                auto v = verify_contraction(*outcome.family, S, T);
                json j{{"found", true},
                       {"witness", family_to_json(*outcome.family)},
                       {"verdict", verdict_name(v.status)}};
                emit(j, "found witness (" + std::string(verdict_name(v.status)) +
                            ")\n");
                return kOk;
            }
            json j{{"found", false},
                   {"certificate",
                    json{{"kind", "AnsatzExhausted"},
                         {"bound", outcome.bound},
                         {"detail", outcome.ansatz_note},
                         {"leaves", outcome.leaves_tried}}}};
            if (auto rank = rank_obstruction(S, T))
                j["rank_obstruction"] = certificate_to_json(*rank);
            emit(j, "AnsatzExhausted (bound " + std::to_string(bound) + ")\n");
            return kRefuted;
        }
        if (*t6_cmd) {
            Table6Report rep = reproduce_table6({bound});
            std::string text = g_format == "csv" ? rep.to_csv()
                                                 : rep.to_markdown(certificates);
            if (g_format == "json") {
                json cells = json::array();
                for (const auto& c : rep.cells) {
                    json cj{{"source", system_name(c.source)},
                            {"target", system_name(c.target)},
                            {"cell", std::string(1, c.truth)},
                            {"printed", std::string(1, c.printed)},
                            {"ok", c.ok}};
                    if (c.verdict) cj["verdict"] = verdict_name(*c.verdict);
                    if (c.certificate && certificates)
                        cj["certificate"] = certificate_to_json(*c.certificate);
                    if (!c.detail.empty()) cj["detail"] = c.detail;
                    cells.push_back(cj);
                }
                json j{{"ok", rep.ok},
                       {"verified_strict", rep.verified_strict},
                       {"verified_up_to_classification", rep.verified_class},
                       {"certified_minus_cells", rep.certified},
                       {"corrections", rep.corrections},
                       {"cells", cells}};
                std::cout << j.dump(2) << "\n";
            } else {
                std::cout << text;
            }
            if (!out_path.empty()) {
                std::ofstream out(out_path);
                out << text;
            }
            return rep.ok ? kOk : kRefuted;
        }
        if (*catalog_cmd) {
            json out = json::array();
            for (const auto& rec : catalog().systems) {
                if (!system_arg.empty() &&
                    parse_system(system_arg) != std::optional<SystemId>(rec.id))
                    continue;
                json j{{"name", rec.name},
                       {"casimir", rec.casimir.to_string()},
                       {"form", form_to_json(rec.form)},
                       {"rank_B", rec.ranks.first},
                       {"rank_b", rec.ranks.second},
                       {"printed_label", rec.printed_label},
                       {"label", rec.strict_label},
                       {"stackel_class", std::string(1, rec.stackel_class)},
                       {"space", rec.space},
                       {"potential", rec.potential}};
                if (!rec.erratum.empty()) j["erratum"] = rec.erratum;
                if (rec.casimir_param)
                    j["casimir_param"] = rec.casimir_param->to_string();
                if (rec.realization) j["has_realization"] = true;
                out.push_back(j);
            }
            if (out.empty()) throw ValidationError("unknown system " + system_arg);
            std::cout << out.dump(2) << "\n";
            return kOk;
        }
        if (*structure_cmd) {
            Poly G(Chart::Abstract);
            if (!system_arg.empty()) {
                auto id = parse_system(system_arg);
                if (!id) throw ValidationError("unknown system " + system_arg);
                G = catalog().get(*id).casimir;
            } else if (!casimir_arg.empty()) {
                G = parse_poly(Chart::Abstract, casimir_arg);
            } else {
                throw ValidationError("structure needs --system or --casimir");
            }
            auto eq = structure_equations(G, {FieldElem::one()});
            emit(json{{"casimir", G.to_string()},
                      {"bracket_X_L1", eq.x_l1.to_string()},
                      {"bracket_X_L2", eq.x_l2.to_string()},
                      {"bracket_L1_L2", eq.l1_l2.to_string()}},
                 "{X,L1} = " + eq.x_l1.to_string() + "\n{X,L2} = " +
                     eq.x_l2.to_string() + "\n{L1,L2} = " + eq.l1_l2.to_string() +
                     "\n");
            return kOk;
        }
        if (*realize_cmd) {
            auto id = parse_system(system_arg);
            if (!id) throw ValidationError("unknown system " + system_arg);
            const auto& rec = catalog().get(*id);
            if (!rec.realization)
                throw ValidationError(rec.name +
                                      " has no bundled phase-space realization");
            const auto& r = *rec.realization;
            GeneratorQuadruple gens{r.X, r.L1, r.L2, r.H};
            auto rep = verify_realization(gens, r.casimir);
            emit(json{{"system", rec.name},
                      {"casimir", r.casimir.to_string()},
                      {"closure_ok", rep.closure_ok},
                      {"casimir_ok", rep.casimir_ok},
                      {"structure_ok", rep.structure_ok},
                      {"K", to_string(rep.K)},
                      {"diagnostic", rep.diagnostic}},
                 std::string("realization ") + (rep.ok() ? "verified" : "FAILED") +
                     " (K = " + to_string(rep.K) + ")\n");
            return rep.ok() ? kOk : kRefuted;
        }
        if (*stackel_cmd) {
            auto id = parse_system(system_arg);
            if (!id) throw ValidationError("unknown system " + system_arg);
            const auto& rec = catalog().get(*id);
            if (!rec.casimir_param)
                throw ValidationError(rec.name +
                                      " has no parametrized Casimir bundled "
                                      "(not a Stäckel class representative)");
            StackelMatrix C;
            if (!c_matrix_arg.empty()) {
                std::array<FieldElem, 4> m;
                size_t pos = 0;
                for (int k = 0; k < 4; k++) {
                    size_t comma = c_matrix_arg.find(',', pos);
                    std::string piece =
                        comma == std::string::npos
                            ? c_matrix_arg.substr(pos)
                            : c_matrix_arg.substr(pos, comma - pos);
                    m[k] = parse_field_elem(piece);
                    pos = comma + 1;
                }
                C.numeric = m;
            }
            Poly result = stackel_class(*rec.casimir_param, C);
            emit(json{{"system", rec.name},
                      {"casimir_param", rec.casimir_param->to_string()},
                      {"class", std::string(1, rec.stackel_class)},
                      {"class_casimir", result.to_string()}},
                 "[" + std::string(1, rec.stackel_class) + "] " +
                     result.to_string() + "\n");
            return kOk;
        }
    } catch (const Error& e) {
        json err{{"error", {{"kind", e.kind()}, {"message", e.what()}}}};
        std::cerr << err.dump(2) << "\n";
        return kError;
    } catch (const std::exception& e) {
        json err{{"error", {{"kind", "Internal"}, {"message", e.what()}}}};
        std::cerr << err.dump(2) << "\n";
        return kError;
    }
    return kError;
}
