#ifndef QUADALG_CONTRACT_HPP
#define QUADALG_CONTRACT_HPP

#include <quadalg/canon.hpp>
#include <quadalg/forms.hpp>
#include <quadalg/laurent.hpp>

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace quadalg {

// eps-parametrized family of hat group elements: a 4x4 Laurent matrix with
// the hat zero pattern (rows 1,2 free; row 3 = A33 e3; row 4 = A44 e4) and an
// optional Laurent rescaling z (default 1, per the z-elimination reduction).
class ContractionFamily {
public:
    static ContractionFamily identity();
    static ContractionFamily from_entries(const std::array<LaurentScalar, 16>& hat,
                                          const LaurentScalar& z = LaurentScalar::one());

    const LaurentScalar& at(int i, int j) const { return hat_[i * 4 + j]; }
    const LaurentScalar& z() const { return z_; }

    // det as a Laurent polynomial: det(r) * A33 * A44
    LaurentScalar det() const;

    // matrix product (this first, then g): action composes left-to-right
    ContractionFamily then(const ContractionFamily& g) const;

    std::array<FieldElem, 16> hat_at_eps(const FieldElem& eps) const;
    FieldElem z_at_eps(const FieldElem& eps) const;

private:
    ContractionFamily() = default;
    std::array<LaurentScalar, 16> hat_;
    LaurentScalar z_ = LaurentScalar::one();
};

// z(eps) * hat^t B hat, exact in the Laurent ring.
std::array<LaurentScalar, 16> evaluate_family(const ContractionFamily& F,
                                              const SymForm& B);

enum class VerdictStatus {
    VerifiedStrict,
    VerifiedUpToClassification,
    LimitUndefined,
    WrongTarget,
};
const char* verdict_name(VerdictStatus s);

struct ContractionVerdict {
    VerdictStatus status;
    std::optional<SymForm> limit_form;
    std::optional<CanonicalLabel> limit_label;
    std::string detail;
};

ContractionVerdict verify_contraction(const ContractionFamily& F,
                                      const SymForm& source, const SymForm& target);

struct ObstructionCertificate {
    enum class Kind { RankBIncrease, RankbIncrease, PaperCertified, AnsatzExhausted };
    Kind kind;
    std::string anchor;  // literature section tag for PaperCertified
    std::string detail;
    int bound = 0;       // for AnsatzExhausted
};
const char* certificate_name(ObstructionCertificate::Kind k);

// Rank hierarchy check only; nullopt when ranks do not obstruct.
std::optional<ObstructionCertificate> rank_obstruction(const SymForm& source,
                                                       const SymForm& target);

// Strongest certificate for a no-contraction claim: rank hierarchy first,
// then the machine-checked necessary conditions (tagged PaperCertified
// with their anchor), then paper-certified data, then an ansatz sweep at
// `bound`. nullopt means the sweep found a witness, i.e. no obstruction.
std::optional<ObstructionCertificate> try_obstruction(const SymForm& source,
                                                      const SymForm& target,
                                                      const std::string& anchor_hint,
                                                      int bound);

// Same, but throws ValidationError when no obstruction exists.
ObstructionCertificate obstruction_certificate(const SymForm& source,
                                               const SymForm& target,
                                               const std::string& anchor_hint,
                                               int bound);

// Proposition-5.3 clearing of the first two rows/columns of the congruence
// image; requires the image limit to exist with identity b block.
ContractionFamily normalize_family(const ContractionFamily& F, const SymForm& source);

struct SearchOutcome {
    std::optional<ContractionFamily> family;  // nullopt = AnsatzExhausted
    int bound = 0;
    long leaves_tried = 0;
    std::string ansatz_note;
};

// Monomial-ansatz search (one Laurent term per active hat entry); any family
// returned has already re-verified. Exhaustion is evidence for the swept
// ansatz class only, never a non-existence proof.
SearchOutcome search_contraction(const SymForm& source, const SymForm& target,
                                 int exponent_bound);

// ------------------------------------------------------------ witnesses

struct WitnessRecord {
    SystemId source;
    SystemId target;
    std::optional<ContractionFamily> family;          // bundled working witness
    std::optional<ContractionFamily> printed_family;  // paper matrix, when distinct
    std::string printed_invalid;  // set when the printed matrix breaks the pattern
    bool refuted = false;         // printed '+' cell disproven (see table6 data)
    std::string provenance;
    std::string note;
};

const std::vector<WitnessRecord>& witnesses();
const WitnessRecord* find_witness(SystemId source, SystemId target);

// -------------------------------------------------------------- table 6

struct Table6Data {
    std::vector<SystemId> order;                     // 14 systems, E14/S5 merged
    std::map<std::pair<int, int>, char> truth;       // corrected ground truth
    std::map<std::pair<int, int>, char> printed;     // grid as printed
    std::map<std::pair<int, int>, std::string> anchors;
    std::vector<std::string> corrections;
};
const Table6Data& table6_data();

struct Table6Cell {
    SystemId source, target;
    char truth;
    char printed;
    bool ok = false;
    std::optional<VerdictStatus> verdict;              // for '+' cells
    std::optional<ObstructionCertificate> certificate; // for '-' cells
    std::string detail;
};

struct Table6Report {
    std::vector<Table6Cell> cells;
    bool ok = false;
    int plus_cells = 0, verified_strict = 0, verified_class = 0, certified = 0;
    std::vector<std::string> corrections;
    std::string to_markdown(bool certificates) const;
    std::string to_csv() const;
};

struct Table6Options {
    int bound = 3;
};

Table6Report reproduce_table6(const Table6Options& opt = {});

} // namespace quadalg

#endif
