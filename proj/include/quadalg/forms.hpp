#ifndef QUADALG_FORMS_HPP
#define QUADALG_FORMS_HPP

#include <quadalg/field.hpp>

#include <array>
#include <utility>

namespace quadalg {

// Symmetric 4x4 Casimir matrix B(G) over the ordered generator basis
// (L1, L2, H, X^2), with the block split [[b, c], [c^t, d]].
class SymForm {
public:
    SymForm() : m_{} {}

    static SymForm from_entries(const std::array<FieldElem, 16>& entries,
                                bool validate = true);
    static SymForm zero() { return SymForm(); }

    const FieldElem& at(int i, int j) const { return m_[i * 4 + j]; }
    void set(int i, int j, const FieldElem& v) {
        m_[i * 4 + j] = v;
        m_[j * 4 + i] = v;
    }

    std::array<FieldElem, 4> block_b() const {
        return {at(0, 0), at(0, 1), at(1, 0), at(1, 1)};
    }
    std::array<FieldElem, 4> block_c() const {
        return {at(0, 2), at(0, 3), at(1, 2), at(1, 3)};
    }
    std::array<FieldElem, 4> block_d() const {
        return {at(2, 2), at(2, 3), at(3, 2), at(3, 3)};
    }

    friend bool operator==(const SymForm& a, const SymForm& b) {
        return a.m_ == b.m_;
    }
    friend bool operator!=(const SymForm& a, const SymForm& b) {
        return !(a == b);
    }

private:
    std::array<FieldElem, 16> m_;
};

// Change-of-basis matrix of the symmetry group: 5x5 with the fixed zero
// pattern (rows 1,2 free; row 3 = A33 e3; row 4 = A44 e4; row 5 = A55 e5)
// and A44 = A55^2. hat() drops row/column 5.
class GroupElem {
public:
    static GroupElem from_entries(const std::array<FieldElem, 25>& entries);
    // Builds the 5x5 from a hat 4x4 (zero pattern enforced); A55 must be a
    // square root of A44 inside the field.
    static GroupElem from_hat(const std::array<FieldElem, 16>& hat);
    static GroupElem identity();

    const FieldElem& at(int i, int j) const { return m_[i * 5 + j]; }
    std::array<FieldElem, 16> hat() const;

private:
    GroupElem() : m_{} {}
    std::array<FieldElem, 25> m_;
};

struct ScaledGroupElem {
    GroupElem A;
    FieldElem z;

    static ScaledGroupElem identity() {
        return {GroupElem::identity(), FieldElem::one()};
    }
};

struct StructureConstant {
    FieldElem K;
};

// B(G') = z * hat(A)^t B hat(A)
SymForm group_act(const ScaledGroupElem& g, const SymForm& B);

// K' = z^-1 K (A11 A22 - A12 A21)^-1 A55^-1
StructureConstant k_transform(const ScaledGroupElem& g, const StructureConstant& K);

// Acting with compose(g1, g2) equals acting with g1 first, then g2.
ScaledGroupElem compose(const ScaledGroupElem& g1, const ScaledGroupElem& g2);

// (rank B, rank of the upper-left 2x2 block), exact.
std::pair<int, int> rank_invariants(const SymForm& B);

// Exact rank of an n x n matrix held row-major, by Gaussian elimination with
// first-nonzero pivoting (division is exact in the field).
int exact_rank(const FieldElem* m, int n);

} // namespace quadalg

#endif
