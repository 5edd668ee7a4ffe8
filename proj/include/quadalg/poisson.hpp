#ifndef QUADALG_POISSON_HPP
#define QUADALG_POISSON_HPP

#include <quadalg/field.hpp>
#include <quadalg/forms.hpp>

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace quadalg {

// Variable charts. Flat and Ambient3 are phase-space charts with canonical
// symplectic pairs; Abstract holds the generator symbols L1, L2, H, X plus
// the parameter symbols used by the Stäckel procedure.
enum class Chart { Flat, Ambient3, Abstract };

struct ChartInfo {
    int nvars;
    const char* const* names;
    int npairs;                       // symplectic (q, p) pairs
    const int (*pairs)[2];
};

const ChartInfo& chart_info(Chart chart);
int chart_var(Chart chart, const std::string& name); // -1 if absent

// Sparse exact multivariate polynomial over FieldElem.
class Poly {
public:
    static constexpr int kMaxVars = 12;
    using Mono = std::array<int, kMaxVars>;

    explicit Poly(Chart chart = Chart::Abstract) : chart_(chart) {}

    static Poly constant(Chart chart, const FieldElem& c) {
        Poly p(chart);
        if (!c.is_zero()) p.terms_[Mono{}] = c;
        return p;
    }
    static Poly zero(Chart chart) { return Poly(chart); }
    static Poly var(Chart chart, int v, int power = 1);

    Chart chart() const { return chart_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<Mono, FieldElem>& terms() const { return terms_; }
    int nterms() const { return static_cast<int>(terms_.size()); }

    friend Poly operator+(const Poly& a, const Poly& b);
    friend Poly operator-(const Poly& a, const Poly& b);
    friend Poly operator*(const Poly& a, const Poly& b);
    friend Poly operator*(const FieldElem& s, const Poly& a);
    Poly operator-() const;
    Poly pow(int e) const;
    Poly& operator+=(const Poly& o) { return *this = *this + o; }
    Poly& operator-=(const Poly& o) { return *this = *this - o; }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }

    friend bool operator==(const Poly& a, const Poly& b) {
        return a.chart_ == b.chart_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    Poly derivative(int v) const;
    bool depends_on(int v) const;
    int degree_in(int v) const;

    // Simultaneous substitution; vars absent from the map stay themselves.
    // Replacements must live in `target` (which may equal chart()).
    Poly substitute(const std::map<int, Poly>& repl, Chart target) const;

    // Total degree counting only the listed variables.
    int degree_in_vars(const std::vector<int>& vars) const;
    bool homogeneous_in_vars(const std::vector<int>& vars, int degree) const;

    void add_term(const Mono& m, const FieldElem& c);

    std::string to_string() const;

private:
    Chart chart_;
    std::map<Mono, FieldElem> terms_;
};

Poly parse_poly(Chart chart, const std::string& text);

// Abstract chart symbol indices.
namespace sym {
inline constexpr int L1 = 0, L2 = 1, H = 2, X = 3;
inline constexpr int a1 = 4, a2 = 5, b1 = 6, b2 = 7;
inline constexpr int c11 = 8, c12 = 9, c21 = 10, c22 = 11;
} // namespace sym

// Canonical Poisson bracket on a phase chart.
Poly pbracket(const Poly& f, const Poly& g);

struct GeneratorQuadruple {
    Poly X, L1, L2, H;
};

struct StructureEquations {
    Poly x_l1;  // {X, L1} =  K dG/dL2
    Poly x_l2;  // {X, L2} = -K dG/dL1
    Poly l1_l2; // {L1, L2} = K dG/dX
};

// Structure-equation brackets from a Casimir. X is differentiated as a degree-1
// symbol, so d(X^4)/dX = 4 X^3.
StructureEquations structure_equations(const Poly& G, const StructureConstant& K);

struct RealizationReport {
    bool closure_ok = false;
    bool casimir_ok = false;
    bool structure_ok = false;
    FieldElem K;
    std::string diagnostic;
    bool ok() const { return closure_ok && casimir_ok && structure_ok; }
};

// Checks a phase-space quadruple against a parameter-free Casimir:
// centrality of H, G(gens) = 0, and existence of a single nonzero K
// matching all three structure-equation brackets exactly.
RealizationReport verify_realization(const GeneratorQuadruple& gens, const Poly& G);

struct StackelMatrix {
    // Entries c11, c12, c21, c22; nullopt means "keep the symbols".
    std::optional<std::array<FieldElem, 4>> numeric;
};

// Stäckel transform procedure: a_j -> sum_k c_jk b_k, then the simultaneous swap
// H -> -b2, b2 -> -H, then b_j -> 0.
Poly stackel_class(const Poly& G_param, const StackelMatrix& C);

// Casimir polynomial <-> symmetric matrix over (L1, L2, H, X^2); cross terms
// are halved in the matrix.
SymForm casimir_matrix(const Poly& G);
Poly casimir_poly(const SymForm& B);

// Evaluate a parameter-free abstract polynomial on a generator quadruple.
Poly eval_on_generators(const Poly& G, const GeneratorQuadruple& gens);

} // namespace quadalg

#endif
