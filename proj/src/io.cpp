#include <quadalg/io.hpp>

#include <quadalg/errors.hpp>

#include <nlohmann/json.hpp>

#include <cstdlib>
#include <fstream>

#ifndef QUADALG_DATA_DIR
#define QUADALG_DATA_DIR "data"
#endif

namespace quadalg {

std::string data_dir() {
    if (const char* env = std::getenv("QUADALG_DATA")) return env;
    return QUADALG_DATA_DIR;
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
    return j;
}

json form_to_json(const SymForm& B) {
    json entries = json::array();
    for (int i = 0; i < 4; i++) {
        json row = json::array();
        for (int j = 0; j < 4; j++) row.push_back(to_string(B.at(i, j)));
        entries.push_back(row);
    }
    return json{{"basis", {"L1", "L2", "H", "X2"}}, {"entries", entries}};
}

SymForm form_from_json(const json& j) {
    if (!j.contains("entries")) throw ParseError("form JSON needs \"entries\"");
    const json& e = j.at("entries");
    if (!e.is_array() || e.size() != 4)
        throw ParseError("form entries must be a 4x4 grid");
    if (j.contains("basis")) {
        const json expected = {"L1", "L2", "H", "X2"};
        if (j.at("basis") != expected)
            throw ParseError("form basis must be [L1, L2, H, X2]");
    }
    std::array<FieldElem, 16> m{};
    for (int i = 0; i < 4; i++) {
        if (!e[i].is_array() || e[i].size() != 4)
            throw ParseError("form entries must be a 4x4 grid");
        for (int k = 0; k < 4; k++)
            m[i * 4 + k] = parse_field_elem(e[i][k].get<std::string>());
    }
    return SymForm::from_entries(m);  // symmetry validated here
}

json group_elem_to_json(const ScaledGroupElem& g) {
    json entries = json::array();
    for (int i = 0; i < 5; i++) {
        json row = json::array();
        for (int j = 0; j < 5; j++) row.push_back(to_string(g.A.at(i, j)));
        entries.push_back(row);
    }
    return json{{"entries", entries}, {"z", to_string(g.z)}};
}

ScaledGroupElem group_elem_from_json(const json& j) {
    const json& e = j.at("entries");
    if (!e.is_array() || e.size() != 5)
        throw ParseError("group element needs a 5x5 grid");
    std::array<FieldElem, 25> m{};
    for (int i = 0; i < 5; i++)
        for (int k = 0; k < 5; k++)
            m[i * 5 + k] = parse_field_elem(e[i][k].get<std::string>());
    FieldElem z = FieldElem::one();
    if (j.contains("z")) z = parse_field_elem(j.at("z").get<std::string>());
    if (z.is_zero()) throw ValidationError("group element rescaling z must be nonzero");
    return {GroupElem::from_entries(m), z};
}

json laurent_to_json(const LaurentScalar& v) {
    json terms = json::array();
    for (const auto& [e, c] : v.coefficients())
        terms.push_back(json::array({e, to_string(c)}));
    return terms;
}

LaurentScalar laurent_from_json(const json& j) {
    if (!j.is_array()) throw ParseError("Laurent value must be a list of terms");
    LaurentScalar v;
    for (const auto& term : j) {
        if (!term.is_array() || term.size() != 2)
            throw ParseError("Laurent term must be [exponent, coefficient]");
        v += LaurentScalar::monomial(term[0].get<int>(),
                                     parse_field_elem(term[1].get<std::string>()));
    }
    return v;
}

json family_to_json(const ContractionFamily& F) {
    json rows = json::array();
    for (int i = 0; i < 4; i++) {
        json row = json::array();
        for (int j = 0; j < 4; j++) row.push_back(laurent_to_json(F.at(i, j)));
        rows.push_back(row);
    }
    json out{{"hat_A", rows}};
    if (F.z() != LaurentScalar::one()) out["z"] = laurent_to_json(F.z());
    return out;
}

ContractionFamily family_from_json(const json& j) {
    const json& rows = j.at("hat_A");
    if (!rows.is_array() || rows.size() != 4)
        throw ParseError("hat_A must be a 4x4 grid of Laurent values");
    std::array<LaurentScalar, 16> hat{};
    for (int i = 0; i < 4; i++)
        for (int k = 0; k < 4; k++)
            hat[i * 4 + k] = laurent_from_json(rows[i][k]);
    LaurentScalar z = LaurentScalar::one();
    if (j.contains("z")) z = laurent_from_json(j.at("z"));
    return ContractionFamily::from_entries(hat, z);
}

json label_to_json(const CanonicalLabel& label) {
    json params = json::array();
    for (const auto& p : label.params) params.push_back(to_string(p));
    return json{{"family", family_name(label.family)},
                {"params", params},
                {"text", label.to_string()}};
}

// ----------------------------------------------------------- catalog

namespace {

Catalog load_catalog() {
    json j = load_json_file(data_dir() + "/systems.json");
    Catalog cat;
    for (const auto& sj : j.at("systems")) {
        SystemRecord rec;
        std::string name = sj.at("name").get<std::string>();
        auto id = parse_system(name);
        if (!id) throw ValidationError("unknown system name " + name);
        rec.id = *id;
        rec.name = system_name(*id);
        rec.casimir = parse_poly(Chart::Abstract, sj.at("casimir").get<std::string>());
        rec.form = form_from_json(sj);
        rec.ranks = {sj.at("rank_B").get<int>(), sj.at("rank_b").get<int>()};
        rec.printed_label = sj.at("printed_label").get<std::string>();
        rec.strict_label = sj.at("strict_label").get<std::string>();
        rec.stackel_class = sj.at("stackel_class").get<std::string>().at(0);
        rec.space = sj.at("space").get<std::string>();
        rec.potential = sj.at("potential").get<std::string>();
        rec.erratum = sj.value("erratum", "");
        if (sj.contains("casimir_param"))
            rec.casimir_param = parse_poly(
                Chart::Abstract, sj.at("casimir_param").get<std::string>());
        if (sj.contains("realization")) {
            const json& rj = sj.at("realization");
            Chart chart = rj.at("chart").get<std::string>() == "flat"
                              ? Chart::Flat
                              : Chart::Ambient3;
            RealizationSpec spec{
                chart,
                parse_poly(chart, rj.at("X").get<std::string>()),
                parse_poly(chart, rj.at("L1").get<std::string>()),
                parse_poly(chart, rj.at("L2").get<std::string>()),
                parse_poly(chart, rj.at("H").get<std::string>()),
                parse_poly(Chart::Abstract, rj.at("casimir").get<std::string>()),
            };
            rec.realization = std::move(spec);
        }
        // cross-validation: polynomial vs matrix vs ranks vs classification
        if (casimir_matrix(rec.casimir) != rec.form)
            throw ValidationError(name + ": casimir polynomial and matrix disagree");
        if (rank_invariants(rec.form) != rec.ranks)
            throw ValidationError(name + ": stored ranks are wrong");
        if (classify(rec.form).label.to_string() != rec.strict_label)
            throw ValidationError(name + ": stored strict label is wrong");
        cat.systems.push_back(std::move(rec));
    }
    if (cat.systems.size() != kNumSystems)
        throw ValidationError("systems.json must list all 15 systems");
    return cat;
}

} // namespace

const Catalog& catalog() {
    static const Catalog cat = load_catalog();
    return cat;
}

// ---------------------------------------------------------- witnesses

namespace {

std::vector<WitnessRecord> load_witnesses() {
    json j = load_json_file(data_dir() + "/witnesses.json");
    std::vector<WitnessRecord> out;
    for (const auto& wj : j.at("witnesses")) {
        WitnessRecord rec;
        auto src = parse_system(wj.at("source").get<std::string>());
        auto tgt = parse_system(wj.at("target").get<std::string>());
        if (!src || !tgt) throw ValidationError("witness with unknown system name");
        rec.source = *src;
        rec.target = *tgt;
        rec.refuted = wj.value("refuted", false);
        rec.provenance = wj.value("provenance", "");
        rec.note = wj.value("note", "");
        rec.printed_invalid = wj.value("printed_invalid", "");
        if (wj.contains("hat_A")) rec.family = family_from_json(wj);
        if (wj.contains("printed_hat_A"))
            rec.printed_family =
                family_from_json(json{{"hat_A", wj.at("printed_hat_A")}});
        if (!rec.family && !rec.refuted)
            throw ValidationError("witness without matrix must be marked refuted");
        out.push_back(std::move(rec));
    }
    return out;
}

} // namespace

const std::vector<WitnessRecord>& witnesses() {
    static const std::vector<WitnessRecord> w = load_witnesses();
    return w;
}

const WitnessRecord* find_witness(SystemId source, SystemId target) {
    for (const auto& w : witnesses())
        if (w.source == source && w.target == target) return &w;
    return nullptr;
}

// ------------------------------------------------------------ table 6

namespace {

Table6Data load_table6() {
    json j = load_json_file(data_dir() + "/table6.json");
    Table6Data data;
    for (const auto& name : j.at("order")) {
        auto id = parse_system(name.get<std::string>());
        if (!id) throw ValidationError("table6 order has unknown system");
        data.order.push_back(*id);
    }
    int n = static_cast<int>(data.order.size());
    auto load_grid = [&](const char* key,
                         std::map<std::pair<int, int>, char>& grid) {
        const json& rows = j.at(key);
        if (static_cast<int>(rows.size()) != n)
            throw ValidationError("table6 grid has wrong row count");
        for (int r = 0; r < n; r++) {
            std::string row = rows[r].get<std::string>();
            if (static_cast<int>(row.size()) != n)
                throw ValidationError("table6 grid has wrong column count");
            for (int c = 0; c < n; c++) {
                if (row[c] != '+' && row[c] != '-')
                    throw ValidationError("table6 grid entries must be + or -");
                grid[{r, c}] = row[c];
            }
        }
    };
    load_grid("grid", data.truth);
    load_grid("printed_grid", data.printed);
    for (int r = 0; r < n; r++)
        if (data.truth.at({r, r}) != '+')
            throw ValidationError("table6 diagonal must be '+'");
    if (j.contains("paper_anchors"))
        for (const auto& [key, value] : j.at("paper_anchors").items()) {
            auto sep = key.find(':');
            auto src = parse_system(key.substr(0, sep));
            auto tgt = parse_system(key.substr(sep + 1));
            if (!src || !tgt) throw ValidationError("bad anchor key " + key);
            int r = -1, c = -1;
            for (int k = 0; k < n; k++) {
                if (data.order[k] == *src) r = k;
                if (data.order[k] == *tgt) c = k;
            }
            data.anchors[{r, c}] = value.get<std::string>();
        }
    if (j.contains("corrections"))
        for (const auto& s : j.at("corrections"))
            data.corrections.push_back(s.get<std::string>());
    return data;
}

} // namespace

const Table6Data& table6_data() {
    static const Table6Data data = load_table6();
    return data;
}

} // namespace quadalg
