#include <quadalg/forms.hpp>

#include <quadalg/errors.hpp>

#include <vector>

namespace quadalg {

SymForm SymForm::from_entries(const std::array<FieldElem, 16>& entries,
                              bool validate) {
    SymForm B;
    B.m_ = entries;
    if (validate) {
        for (int i = 0; i < 4; i++)
            for (int j = i + 1; j < 4; j++)
                if (B.at(i, j) != B.at(j, i))
                    throw ValidationError("form is not symmetric at (" +
                                          std::to_string(i + 1) + "," +
                                          std::to_string(j + 1) + ")");
    }
    return B;
}

GroupElem GroupElem::from_entries(const std::array<FieldElem, 25>& e) {
    GroupElem g;
    g.m_ = e;
    static const bool allowed[5][5] = {
        {true, true, true, true, false},
        {true, true, true, true, false},
        {false, false, true, false, false},
        {false, false, false, true, false},
        {false, false, false, false, true},
    };
    for (int i = 0; i < 5; i++)
        for (int j = 0; j < 5; j++)
            if (!allowed[i][j] && !g.at(i, j).is_zero())
                throw ValidationError("group element breaks the zero pattern at (" +
                                      std::to_string(i + 1) + "," +
                                      std::to_string(j + 1) + ")");
    if (g.at(3, 3) != g.at(4, 4) * g.at(4, 4))
        throw ValidationError("group element needs A44 = A55^2");
    FieldElem detr = g.at(0, 0) * g.at(1, 1) - g.at(0, 1) * g.at(1, 0);
    if (detr.is_zero() || g.at(2, 2).is_zero() || g.at(4, 4).is_zero())
        throw ValidationError("group element is singular");
    return g;
}

GroupElem GroupElem::from_hat(const std::array<FieldElem, 16>& hat) {
    auto root = try_sqrt(hat[3 * 4 + 3]);
    if (!root || root->is_zero())
        throw SquareRootOutsideField("A55 = sqrt(A44) not in Q(i,s2,s3) for A44 = " +
                                     to_string(hat[3 * 4 + 3]));
    std::array<FieldElem, 25> e{};
    for (int i = 0; i < 4; i++)
        for (int j = 0; j < 4; j++) e[i * 5 + j] = hat[i * 4 + j];
    e[4 * 5 + 4] = *root;
    return from_entries(e);
}

GroupElem GroupElem::identity() {
    std::array<FieldElem, 25> e{};
    for (int i = 0; i < 5; i++) e[i * 5 + i] = FieldElem::one();
    GroupElem g;
    g.m_ = e;
    return g;
}

std::array<FieldElem, 16> GroupElem::hat() const {
    std::array<FieldElem, 16> h{};
    for (int i = 0; i < 4; i++)
        for (int j = 0; j < 4; j++) h[i * 4 + j] = at(i, j);
    return h;
}

SymForm group_act(const ScaledGroupElem& g, const SymForm& B) {
    auto A = g.A.hat();
    // z A^t B A
    std::array<FieldElem, 16> BA{};
    for (int i = 0; i < 4; i++)
        for (int j = 0; j < 4; j++) {
            FieldElem s;
            for (int k = 0; k < 4; k++) s += B.at(i, k) * A[k * 4 + j];
            BA[i * 4 + j] = s;
        }
    std::array<FieldElem, 16> R{};
    for (int i = 0; i < 4; i++)
        for (int j = 0; j < 4; j++) {
            FieldElem s;
            for (int k = 0; k < 4; k++) s += A[k * 4 + i] * BA[k * 4 + j];
            R[i * 4 + j] = g.z * s;
        }
    return SymForm::from_entries(R);
}

StructureConstant k_transform(const ScaledGroupElem& g, const StructureConstant& K) {
    FieldElem detr = g.A.at(0, 0) * g.A.at(1, 1) - g.A.at(0, 1) * g.A.at(1, 0);
    return {g.z.inverse() * K.K * detr.inverse() * g.A.at(4, 4).inverse()};
}

ScaledGroupElem compose(const ScaledGroupElem& g1, const ScaledGroupElem& g2) {
    std::array<FieldElem, 25> p{};
    for (int i = 0; i < 5; i++)
        for (int j = 0; j < 5; j++) {
            FieldElem s;
            for (int k = 0; k < 5; k++) s += g1.A.at(i, k) * g2.A.at(k, j);
            p[i * 5 + j] = s;
        }
    return {GroupElem::from_entries(p), g1.z * g2.z};
}

// Fraction-free (Bareiss) elimination with first-nonzero pivoting; divisions
// are by the previous pivot and stay exact.
int exact_rank(const FieldElem* m, int n) {
    std::vector<FieldElem> a(m, m + n * n);
    FieldElem prev = FieldElem::one();
    int rank = 0;
    for (int col = 0; col < n && rank < n; col++) {
        int pivot = -1;
        for (int r = rank; r < n; r++)
            if (!a[r * n + col].is_zero()) {
                pivot = r;
                break;
            }
        if (pivot < 0) continue;
        for (int j = 0; j < n; j++) std::swap(a[rank * n + j], a[pivot * n + j]);
        const FieldElem p = a[rank * n + col];
        for (int r = rank + 1; r < n; r++) {
            for (int j = col + 1; j < n; j++)
                a[r * n + j] =
                    (p * a[r * n + j] - a[r * n + col] * a[rank * n + j]) / prev;
            a[r * n + col] = FieldElem::zero();
        }
        prev = p;
        rank++;
    }
    return rank;
}

std::pair<int, int> rank_invariants(const SymForm& B) {
    std::array<FieldElem, 16> full{};
    for (int i = 0; i < 4; i++)
        for (int j = 0; j < 4; j++) full[i * 4 + j] = B.at(i, j);
    auto b = B.block_b();
    return {exact_rank(full.data(), 4), exact_rank(b.data(), 2)};
}

} // namespace quadalg
