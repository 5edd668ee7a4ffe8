#include <quadalg/poisson.hpp>

#include <quadalg/errors.hpp>

#include <cctype>
#include <sstream>

namespace quadalg {

namespace {

const char* kFlatNames[] = {"x", "y", "px", "py"};
const int kFlatPairs[][2] = {{0, 2}, {1, 3}};
const char* kAmbientNames[] = {"s1", "s2", "s3", "ps1", "ps2", "ps3"};
const int kAmbientPairs[][2] = {{0, 3}, {1, 4}, {2, 5}};
const char* kAbstractNames[] = {"L1", "L2", "H", "X",  "a1",  "a2",
                                "b1", "b2", "c11", "c12", "c21", "c22"};

const ChartInfo kCharts[] = {
    {4, kFlatNames, 2, kFlatPairs},
    {6, kAmbientNames, 3, kAmbientPairs},
    {12, kAbstractNames, 0, nullptr},
};

} // namespace

const ChartInfo& chart_info(Chart chart) {
    return kCharts[static_cast<int>(chart)];
}

int chart_var(Chart chart, const std::string& name) {
    const ChartInfo& info = chart_info(chart);
    for (int v = 0; v < info.nvars; v++)
        if (name == info.names[v]) return v;
    return -1;
}

Poly Poly::var(Chart chart, int v, int power) {
    if (v < 0 || v >= chart_info(chart).nvars)
        throw Error("Internal", "variable index out of range");
    Poly p(chart);
    Mono m{};
    m[v] = power;
    p.terms_[m] = FieldElem::one();
    return p;
}

void Poly::add_term(const Mono& m, const FieldElem& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_[m] = c;
    } else {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

Poly operator+(const Poly& a, const Poly& b) {
    if (a.chart_ != b.chart_) throw ChartMismatch("adding polynomials from different charts");
    Poly r = a;
    for (const auto& [m, c] : b.terms_) r.add_term(m, c);
    return r;
}

Poly operator-(const Poly& a, const Poly& b) {
    if (a.chart_ != b.chart_) throw ChartMismatch("subtracting polynomials from different charts");
    Poly r = a;
    for (const auto& [m, c] : b.terms_) r.add_term(m, -c);
    return r;
}

Poly Poly::operator-() const {
    Poly r(chart_);
    for (const auto& [m, c] : terms_) r.terms_[m] = -c;
    return r;
}

Poly operator*(const Poly& a, const Poly& b) {
    if (a.chart_ != b.chart_) throw ChartMismatch("multiplying polynomials from different charts");
    Poly r(a.chart_);
    for (const auto& [ma, ca] : a.terms_)
        for (const auto& [mb, cb] : b.terms_) {
            Poly::Mono m;
            for (int v = 0; v < Poly::kMaxVars; v++) m[v] = ma[v] + mb[v];
            r.add_term(m, ca * cb);
        }
    return r;
}

Poly operator*(const FieldElem& s, const Poly& a) {
    Poly r(a.chart());
    if (s.is_zero()) return r;
    for (const auto& [m, c] : a.terms()) r.add_term(m, s * c);
    return r;
}

Poly Poly::pow(int e) const {
    if (e < 0) throw Error("Internal", "negative polynomial power");
    Poly r = Poly::constant(chart_, FieldElem::one());
    for (int k = 0; k < e; k++) r *= *this;
    return r;
}

Poly Poly::derivative(int v) const {
    Poly r(chart_);
    for (const auto& [m, c] : terms_) {
        if (m[v] == 0) continue;
        Mono d = m;
        d[v] -= 1;
        r.add_term(d, FieldElem(static_cast<long>(m[v])) * c);
    }
    return r;
}

bool Poly::depends_on(int v) const {
    for (const auto& [m, c] : terms_)
        if (m[v] != 0) return true;
    return false;
}

int Poly::degree_in(int v) const {
    int d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m[v]);
    return d;
}

Poly Poly::substitute(const std::map<int, Poly>& repl, Chart target) const {
    for (const auto& [v, p] : repl)
        if (p.chart() != target)
            throw ChartMismatch("replacement polynomial lives in the wrong chart");
    Poly r(target);
    for (const auto& [m, c] : terms_) {
        Poly t = Poly::constant(target, c);
        for (int v = 0; v < kMaxVars; v++) {
            if (m[v] == 0) continue;
            auto it = repl.find(v);
            if (it != repl.end()) {
                t *= it->second.pow(m[v]);
            } else {
                if (chart_ != target)
                    throw ChartMismatch("unreplaced variable " +
                                        std::string(chart_info(chart_).names[v]) +
                                        " while changing chart");
                t *= Poly::var(target, v, m[v]);
            }
        }
        r += t;
    }
    return r;
}

int Poly::degree_in_vars(const std::vector<int>& vars) const {
    int d = 0;
    for (const auto& [m, c] : terms_) {
        int t = 0;
        for (int v : vars) t += m[v];
        d = std::max(d, t);
    }
    return d;
}

bool Poly::homogeneous_in_vars(const std::vector<int>& vars, int degree) const {
    for (const auto& [m, c] : terms_) {
        int t = 0;
        for (int v : vars) t += m[v];
        if (t != degree) return false;
    }
    return true;
}

std::string Poly::to_string() const {
    if (terms_.empty()) return "0";
    const ChartInfo& info = chart_info(chart_);
    // spell units so they cannot collide with chart variables
    bool shadowed = chart_var(chart_, "s2") >= 0;
    auto coeff_str = [&](const FieldElem& c) {
        std::string cs = quadalg::to_string(c);
        if (!shadowed) return cs;
        std::string out;
        for (size_t k = 0; k < cs.size(); k++) {
            if (cs[k] == 's' && k + 1 < cs.size() &&
                (cs[k + 1] == '2' || cs[k + 1] == '3' || cs[k + 1] == '6')) {
                out += "sqrt";
                out += cs[k + 1];
                k++;
            } else {
                out += cs[k];
            }
        }
        return out;
    };
    std::ostringstream out;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [m, c] = *it;
        std::string cs = coeff_str(c);
        bool negated = false;
        if (cs.size() > 1 && cs[0] == '-' && cs.find('+', 1) == std::string::npos &&
            cs.find('-', 1) == std::string::npos) {
            negated = true;
            cs = cs.substr(1);
        }
        out << (first ? (negated ? "-" : "") : (negated ? "-" : "+"));
        first = false;
        bool composite = cs.find('+') != std::string::npos ||
                         cs.find('-', 1) != std::string::npos;
        std::ostringstream mono;
        bool has_vars = false;
        for (int v = 0; v < kMaxVars; v++) {
            if (m[v] == 0) continue;
            if (has_vars) mono << "*";
            mono << info.names[v];
            if (m[v] > 1) mono << "^" << m[v];
            has_vars = true;
        }
        if (!has_vars) {
            out << (composite ? "(" + cs + ")" : cs);
        } else if (cs == "1") {
            out << mono.str();
        } else {
            out << (composite ? "(" + cs + ")" : cs) << "*" << mono.str();
        }
    }
    return out.str();
}

// ---------------------------------------------------------------- parsing

namespace {

struct PolyParser {
    Chart chart;
    const std::string& s;
    size_t p = 0;

    void skip_ws() {
        while (p < s.size() && std::isspace(static_cast<unsigned char>(s[p]))) p++;
    }
    char peek() {
        skip_ws();
        return p < s.size() ? s[p] : '\0';
    }
    bool eat(char c) {
        if (peek() == c) {
            p++;
            return true;
        }
        return false;
    }

    Poly parse_expr() {
        Poly r = parse_term();
        for (;;) {
            char c = peek();
            if (c == '+') {
                p++;
                r += parse_term();
            } else if (c == '-') {
                p++;
                r -= parse_term();
            } else {
                return r;
            }
        }
    }

    Poly parse_term() {
        Poly r = parse_factor();
        while (peek() == '*') {
            p++;
            r *= parse_factor();
        }
        return r;
    }

    Poly parse_factor() {
        if (eat('-')) return -parse_factor();
        if (eat('+')) return parse_factor();
        Poly base = parse_base();
        if (eat('^')) {
            skip_ws();
            size_t start = p;
            while (p < s.size() && std::isdigit(static_cast<unsigned char>(s[p]))) p++;
            if (p == start) throw ParseError("expected exponent in '" + s + "'");
            int e = std::stoi(s.substr(start, p - start));
            return base.pow(e);
        }
        return base;
    }

    Poly parse_base() {
        char c = peek();
        if (c == '(') {
            p++;
            Poly r = parse_expr();
            if (!eat(')')) throw ParseError("missing ')' in '" + s + "'");
            return r;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t start = p;
            while (p < s.size() && std::isdigit(static_cast<unsigned char>(s[p]))) p++;
            std::string num = s.substr(start, p - start);
            std::string den = "1";
            if (p < s.size() && s[p] == '/') {
                // only treat as a fraction if a digit follows
                size_t save = p;
                p++;
                size_t ds = p;
                while (p < s.size() && std::isdigit(static_cast<unsigned char>(s[p]))) p++;
                if (p == ds) {
                    p = save;
                } else {
                    den = s.substr(ds, p - ds);
                }
            }
            Rational q(num + "/" + den);
            q.canonicalize();
            return Poly::constant(chart, FieldElem(q));
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            size_t start = p;
            while (p < s.size() &&
                   (std::isalnum(static_cast<unsigned char>(s[p])) || s[p] == '_'))
                p++;
            std::string name = s.substr(start, p - start);
            int v = chart_var(chart, name);
            if (v >= 0) return Poly::var(chart, v);
            // chart variables shadow the short unit names (s2/s3 on the
            // sphere chart); the sqrt* aliases are never shadowed
            if (name == "i") return Poly::constant(chart, FieldElem::i());
            if (name == "s2" || name == "sqrt2")
                return Poly::constant(chart, FieldElem::s2());
            if (name == "s3" || name == "sqrt3")
                return Poly::constant(chart, FieldElem::s3());
            if (name == "s6" || name == "sqrt6")
                return Poly::constant(chart, FieldElem::s6());
            throw ParseError("unknown symbol '" + name + "' in this chart");
        }
        throw ParseError("unexpected character '" + std::string(1, c) + "' in '" + s + "'");
    }
};

} // namespace

Poly parse_poly(Chart chart, const std::string& text) {
    PolyParser parser{chart, text};
    Poly r = parser.parse_expr();
    parser.skip_ws();
    if (parser.p != text.size())
        throw ParseError("trailing input at '" + text.substr(parser.p) + "'");
    return r;
}

// ------------------------------------------------------------- brackets

Poly pbracket(const Poly& f, const Poly& g) {
    if (f.chart() != g.chart())
        throw ChartMismatch("bracket of polynomials from different charts");
    const ChartInfo& info = chart_info(f.chart());
    if (info.npairs == 0)
        throw ChartMismatch("the abstract chart has no canonical bracket");
    Poly r(f.chart());
    for (int k = 0; k < info.npairs; k++) {
        int q = info.pairs[k][0], p = info.pairs[k][1];
        r += f.derivative(q) * g.derivative(p) - f.derivative(p) * g.derivative(q);
    }
    return r;
}

StructureEquations structure_equations(const Poly& G, const StructureConstant& K) {
    if (G.chart() != Chart::Abstract)
        throw ChartMismatch("Casimir must live in the abstract chart");
    int deps = (G.depends_on(sym::L1) ? 1 : 0) + (G.depends_on(sym::L2) ? 1 : 0) +
               (G.depends_on(sym::X) ? 1 : 0);
    if (deps < 2)
        throw DegenerateCasimir(
            "Casimir depends on fewer than two of L1, L2, X^2");
    FieldElem k = K.K;
    StructureEquations eq{
        k * G.derivative(sym::L2),
        -(k * G.derivative(sym::L1)),
        k * G.derivative(sym::X),
    };
    return eq;
}

// -------------------------------------------------------- realizations

namespace {

std::vector<int> momentum_vars(Chart chart) {
    const ChartInfo& info = chart_info(chart);
    std::vector<int> vars;
    for (int k = 0; k < info.npairs; k++) vars.push_back(info.pairs[k][1]);
    return vars;
}

// Rank of the span of the given polynomials (coefficient vectors over the
// union of their monomials).
int poly_span_rank(const std::vector<Poly>& polys) {
    std::map<Poly::Mono, int> cols;
    for (const auto& p : polys)
        for (const auto& [m, c] : p.terms())
            cols.emplace(m, static_cast<int>(cols.size()));
    int n = static_cast<int>(polys.size());
    int m = static_cast<int>(cols.size());
    int dim = std::max(n, m);
    std::vector<FieldElem> mat(dim * dim);
    for (int r = 0; r < n; r++)
        for (const auto& [mono, c] : polys[r].terms())
            mat[r * dim + cols[mono]] = c;
    return exact_rank(mat.data(), dim);
}

} // namespace

RealizationReport verify_realization(const GeneratorQuadruple& gens, const Poly& G) {
    RealizationReport rep;
    Chart chart = gens.X.chart();
    if (gens.L1.chart() != chart || gens.L2.chart() != chart || gens.H.chart() != chart)
        throw ChartMismatch("generators live in different charts");
    if (chart == Chart::Abstract)
        throw ChartMismatch("generators must be phase-space polynomials");
    for (int v = sym::a1; v < Poly::kMaxVars; v++)
        if (G.depends_on(v))
            throw ValidationError("verify_realization needs a parameter-free Casimir");

    auto pvars = momentum_vars(chart);
    if (gens.X.is_zero() || !gens.X.homogeneous_in_vars(pvars, 1))
        throw GradingViolation("X must have momentum degree 1");
    if (gens.L1.is_zero() || !gens.L1.homogeneous_in_vars(pvars, 2) ||
        gens.L2.is_zero() || !gens.L2.homogeneous_in_vars(pvars, 2) ||
        gens.H.is_zero() || !gens.H.homogeneous_in_vars(pvars, 2))
        throw GradingViolation("L1, L2, H must have momentum degree 2");
    if (poly_span_rank({gens.L1, gens.L2, gens.H, gens.X * gens.X}) != 4)
        throw GradingViolation("generators (L1, L2, H, X^2) are linearly dependent");

    rep.closure_ok = pbracket(gens.H, gens.X).is_zero() &&
                     pbracket(gens.H, gens.L1).is_zero() &&
                     pbracket(gens.H, gens.L2).is_zero();
    rep.casimir_ok = eval_on_generators(G, gens).is_zero();

    Poly lhs[3] = {pbracket(gens.X, gens.L1), pbracket(gens.X, gens.L2),
                   pbracket(gens.L1, gens.L2)};
    Poly rhs[3] = {eval_on_generators(G.derivative(sym::L2), gens),
                   eval_on_generators(-G.derivative(sym::L1), gens),
                   eval_on_generators(G.derivative(sym::X), gens)};
    // K from the leading monomial of the first nonzero right-hand side,
    // then confirmed on all three identities.
    FieldElem K;
    bool have_k = false;
    for (int t = 0; t < 3 && !have_k; t++) {
        if (rhs[t].is_zero()) continue;
        auto lead = rhs[t].terms().begin();
        auto it = lhs[t].terms().find(lead->first);
        if (it == lhs[t].terms().end()) {
            rep.diagnostic = "bracket " + std::to_string(t) +
                             " is missing the leading monomial of K*rhs";
            return rep;
        }
        K = it->second / lead->second;
        have_k = true;
    }
    if (!have_k || K.is_zero()) {
        rep.diagnostic = "no nonzero K exists (all structure gradients vanish)";
        return rep;
    }
    for (int t = 0; t < 3; t++) {
        if (lhs[t] != K * rhs[t]) {
            rep.diagnostic = "bracket identity " + std::to_string(t) +
                             " fails for K = " + to_string(K);
            return rep;
        }
    }
    rep.K = K;
    rep.structure_ok = true;
    return rep;
}

// ------------------------------------------------------------- Stäckel

Poly stackel_class(const Poly& G_param, const StackelMatrix& C) {
    if (G_param.chart() != Chart::Abstract)
        throw ChartMismatch("parametrized Casimir must be abstract");
    for (int v = sym::b1; v < Poly::kMaxVars; v++)
        if (G_param.depends_on(v))
            throw ValidationError("parametrized Casimir may only use a1, a2");
    // Casimir degree bookkeeping: a monomial of generator grade 2s carries a
    // parameter coefficient of degree at most 2 - s.
    for (const auto& [m, c] : G_param.terms()) {
        if (m[sym::X] % 2 != 0)
            throw ValidationError("odd power of X in a classical Casimir");
        int s = m[sym::L1] + m[sym::L2] + m[sym::H] + m[sym::X] / 2;
        int pa = m[sym::a1] + m[sym::a2];
        if (pa > 2 - s)
            throw ValidationError("parameter degree violates the Casimir degree rules");
    }

    Poly c11, c12, c21, c22;
    if (C.numeric) {
        const auto& m = *C.numeric;
        if ((m[0] * m[3] - m[1] * m[2]).is_zero())
            throw SingularStackelMatrix("transform matrix has zero determinant");
        c11 = Poly::constant(Chart::Abstract, m[0]);
        c12 = Poly::constant(Chart::Abstract, m[1]);
        c21 = Poly::constant(Chart::Abstract, m[2]);
        c22 = Poly::constant(Chart::Abstract, m[3]);
    } else {
        c11 = Poly::var(Chart::Abstract, sym::c11);
        c12 = Poly::var(Chart::Abstract, sym::c12);
        c21 = Poly::var(Chart::Abstract, sym::c21);
        c22 = Poly::var(Chart::Abstract, sym::c22);
    }
    Poly b1 = Poly::var(Chart::Abstract, sym::b1);
    Poly b2 = Poly::var(Chart::Abstract, sym::b2);

    // 1) a_j = sum_k c_jk b_k
    Poly step1 = G_param.substitute(
        {{sym::a1, c11 * b1 + c12 * b2}, {sym::a2, c21 * b1 + c22 * b2}},
        Chart::Abstract);
    // 2) simultaneous swap H -> -b2, b2 -> -H
    Poly step2 = step1.substitute(
        {{sym::H, -b2}, {sym::b2, -Poly::var(Chart::Abstract, sym::H)}},
        Chart::Abstract);
    // 3) kill the new parameters
    Poly zero = Poly::zero(Chart::Abstract);
    return step2.substitute({{sym::b1, zero}, {sym::b2, zero}}, Chart::Abstract);
}

// ------------------------------------------------- Casimir <-> matrix

SymForm casimir_matrix(const Poly& G) {
    if (G.chart() != Chart::Abstract)
        throw ChartMismatch("Casimir must be abstract");
    std::array<FieldElem, 16> m{};
    const FieldElem half(1, 2);
    for (const auto& [mono, c] : G.terms()) {
        for (int v = sym::a1; v < Poly::kMaxVars; v++)
            if (mono[v] != 0)
                throw ValidationError("Casimir matrix requires a parameter-free Casimir");
        if (mono[sym::X] % 2 != 0)
            throw ValidationError("odd power of X in Casimir");
        int e[4] = {mono[sym::L1], mono[sym::L2], mono[sym::H], mono[sym::X] / 2};
        int total = e[0] + e[1] + e[2] + e[3];
        if (total != 2)
            throw ValidationError("Casimir must be homogeneous of degree 2 in "
                                  "(L1, L2, H, X^2); offending term " +
                                  G.to_string());
        int i = -1, j = -1;
        for (int v = 0; v < 4; v++) {
            if (e[v] == 2) i = j = v;
            if (e[v] == 1) (i < 0 ? i : j) = v;
        }
        if (i == j) {
            m[i * 4 + i] = c;
        } else {
            m[i * 4 + j] = half * c;
            m[j * 4 + i] = half * c;
        }
    }
    return SymForm::from_entries(m);
}

Poly casimir_poly(const SymForm& B) {
    Poly G(Chart::Abstract);
    Poly gen[4] = {Poly::var(Chart::Abstract, sym::L1),
                   Poly::var(Chart::Abstract, sym::L2),
                   Poly::var(Chart::Abstract, sym::H),
                   Poly::var(Chart::Abstract, sym::X, 2)};
    for (int i = 0; i < 4; i++)
        for (int j = i; j < 4; j++) {
            if (B.at(i, j).is_zero()) continue;
            FieldElem c = (i == j) ? B.at(i, j) : FieldElem(2L) * B.at(i, j);
            G += c * (gen[i] * gen[j]);
        }
    return G;
}

Poly eval_on_generators(const Poly& G, const GeneratorQuadruple& gens) {
    return G.substitute({{sym::L1, gens.L1},
                         {sym::L2, gens.L2},
                         {sym::H, gens.H},
                         {sym::X, gens.X}},
                        gens.X.chart());
}

} // namespace quadalg
