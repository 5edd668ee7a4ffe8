#ifndef QUADALG_CANON_HPP
#define QUADALG_CANON_HPP

#include <quadalg/forms.hpp>
#include <quadalg/poisson.hpp>

#include <optional>
#include <string>
#include <vector>

namespace quadalg {

// The ten canonical-form families. Parameter arities:
//   B21(b34, b44)  B22(b34, b44)  B11(b33, b34, b44)  B15(b34)  B16(b44)
//   B17(b33)  B05(b34)  B06()  B07(b33)  B08()
// b44 of B21 is a genuine continuous invariant; so is the third parameter of
// B11 when b33 = b34 = 1 (the printed family only lists its {0,1} slice).
enum class Family { B21, B22, B11, B15, B16, B17, B05, B06, B07, B08 };

struct CanonicalLabel {
    Family family;
    std::vector<FieldElem> params;

    friend bool operator==(const CanonicalLabel& a, const CanonicalLabel& b) {
        return a.family == b.family && a.params == b.params;
    }
    friend bool operator!=(const CanonicalLabel& a, const CanonicalLabel& b) {
        return !(a == b);
    }
    std::string to_string() const;
};

const char* family_name(Family f);
SymForm canonical_matrix(const CanonicalLabel& label);

struct ClassifyResult {
    CanonicalLabel label;
    // Group element carrying the input onto canonical_matrix(label); omitted
    // when a required square root leaves Q(i, sqrt2, sqrt3).
    std::optional<ScaledGroupElem> witness;
};

// Orbit classification per the rank(b) case split. The label needs only
// exact zero tests and field ratios; the witness is best effort.
ClassifyResult classify(const SymForm& B);

// ----------------------------------------------------------- catalog

enum class SystemId {
    S6, E18, D3E, D4bD, S3, E3, E12, D1D, D2D, E6, E5, E14, S5, E13, E4
};

constexpr int kNumSystems = 15;
const char* system_name(SystemId s);
// Accepts case-insensitive names and aliases ("D4(b)D", "d4bd"); S5 parses to
// SystemId::S5, whose catalog row shares E14's form.
std::optional<SystemId> parse_system(const std::string& name);

struct RealizationSpec {
    Chart chart;
    Poly X, L1, L2, H;
    Poly casimir;  // Casimir in the realization's generator basis
};

struct SystemRecord {
    SystemId id;
    std::string name;
    Poly casimir;                  // canonical-form Casimir (abstract chart)
    SymForm form;                  // its matrix over (L1, L2, H, X^2)
    std::pair<int, int> ranks;     // verified (rank B, rank b)
    std::string printed_label;     // label as printed in the source catalog
    std::string strict_label;      // classify() label of the form
    char stackel_class;            // 'A'..'F'
    std::string space;
    std::string potential;
    std::string erratum;           // nonempty when the print disagrees
    std::optional<Poly> casimir_param;  // parametrized Casimir (class representatives)
    std::optional<RealizationSpec> realization;
};

struct Catalog {
    std::vector<SystemRecord> systems;
    const SystemRecord& get(SystemId id) const;
};

// Loads and caches data/systems.json (see io.hpp for path resolution); every
// record is cross-validated on load (polynomial vs matrix vs ranks).
const Catalog& catalog();

// (form, polynomial) for one system.
std::pair<SymForm, Poly> catalog_form(SystemId id);

// ------------------------------------------------------- realizability

struct RealizabilityStatus {
    enum class Kind { RealizedBySystem, HeisenbergOnly, NotPhaseSpaceRealizable };
    Kind kind;
    std::vector<SystemId> systems;  // for RealizedBySystem (may be empty)
    // printed impossibility case 1..5; 0 = the B05 rows, which the printed
    // matching marks unrealizable outside those five cases.
    int case_number = -1;
    std::string note;
};

RealizabilityStatus realizability(const CanonicalLabel& label);

} // namespace quadalg

#endif
