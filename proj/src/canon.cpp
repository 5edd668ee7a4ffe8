#include <quadalg/canon.hpp>

#include <quadalg/errors.hpp>

#include <algorithm>
#include <cctype>

namespace quadalg {

const char* family_name(Family f) {
    switch (f) {
        case Family::B21: return "B21";
        case Family::B22: return "B22";
        case Family::B11: return "B11";
        case Family::B15: return "B15";
        case Family::B16: return "B16";
        case Family::B17: return "B17";
        case Family::B05: return "B05";
        case Family::B06: return "B06";
        case Family::B07: return "B07";
        case Family::B08: return "B08";
    }
    return "?";
}

std::string CanonicalLabel::to_string() const {
    std::string s = family_name(family);
    if (params.empty()) return s;
    s += "(";
    for (size_t k = 0; k < params.size(); k++) {
        if (k) s += ",";
        s += quadalg::to_string(params[k]);
    }
    return s + ")";
}

SymForm canonical_matrix(const CanonicalLabel& label) {
    const FieldElem zero, one = FieldElem::one();
    auto build = [](std::initializer_list<FieldElem> vals) {
        std::array<FieldElem, 16> m{};
        int k = 0;
        for (const auto& v : vals) m[k++] = v;
        return SymForm::from_entries(m);
    };
    const auto& p = label.params;
    switch (label.family) {
        case Family::B21:
            return build({one, zero, zero, zero, zero, one, zero, zero,
                          zero, zero, one, p[0], zero, zero, p[0], p[1]});
        case Family::B22:
            return build({one, zero, zero, zero, zero, one, zero, zero,
                          zero, zero, zero, p[0], zero, zero, p[0], p[1]});
        case Family::B11:
            return build({one, zero, zero, zero, zero, zero, zero, zero,
                          zero, zero, p[0], p[1], zero, zero, p[1], p[2]});
        case Family::B15:
            return build({one, zero, zero, zero, zero, zero, one, one,
                          zero, one, zero, p[0], zero, one, p[0], zero});
        case Family::B16:
            return build({one, zero, zero, zero, zero, zero, one, zero,
                          zero, one, zero, zero, zero, zero, zero, p[0]});
        case Family::B17:
            return build({one, zero, zero, zero, zero, zero, zero, one,
                          zero, zero, p[0], zero, zero, one, zero, zero});
        case Family::B05:
            return build({zero, zero, zero, zero, zero, zero, one, one,
                          zero, one, zero, p[0], zero, one, p[0], zero});
        case Family::B06:
            return build({zero, zero, zero, zero, zero, zero, one, zero,
                          zero, one, zero, zero, zero, zero, zero, one});
        case Family::B07:
            return build({zero, zero, zero, zero, zero, zero, zero, one,
                          zero, zero, p[0], zero, zero, one, zero, zero});
        case Family::B08:
            return build({zero, zero, one, zero, zero, zero, zero, one,
                          one, zero, zero, zero, zero, one, zero, zero});
    }
    throw Error("Internal", "bad family");
}

namespace {

FieldElem indicator(const FieldElem& v) {
    return v.is_zero() ? FieldElem::zero() : FieldElem::one();
}

// ---------------------------------------------------------------- label

CanonicalLabel label_of(const SymForm& B) {
    const FieldElem zero, one = FieldElem::one(), two(2L);
    auto b = B.block_b();  // [b11 b12; b12 b22]
    auto c = B.block_c();  // rows (L1, L2) x cols (H, X^2)
    auto d = B.block_d();
    int rb = exact_rank(b.data(), 2);

    if (rb == 2) {
        // Schur complement S = d - c^t b^{-1} c
        FieldElem det = b[0] * b[3] - b[1] * b[2];
        FieldElem inv[4] = {b[3] / det, -b[1] / det, -b[2] / det, b[0] / det};
        FieldElem S[4];
        // S = d - c^t (b^{-1} c)
        FieldElem bc[4];
        for (int i = 0; i < 2; i++)
            for (int j = 0; j < 2; j++)
                bc[i * 2 + j] = inv[i * 2] * c[j] + inv[i * 2 + 1] * c[2 + j];
        for (int i = 0; i < 2; i++)
            for (int j = 0; j < 2; j++)
                S[i * 2 + j] =
                    d[i * 2 + j] - (c[i] * bc[j] + c[2 + i] * bc[2 + j]);
        FieldElem S33 = S[0], S34 = S[1], S44 = S[3];
        if (!S33.is_zero()) {
            if (!S34.is_zero())
                return {Family::B21, {one, S33 * S44 / (S34 * S34)}};
            return {Family::B21, {zero, indicator(S44)}};
        }
        return {Family::B22, {indicator(S34), indicator(S44)}};
    }

    if (rb == 1) {
        // u with u^t b u != 0 and v spanning ker b; with rank 1, b11 = 0
        // forces b12 = 0.
        FieldElem u[2], v[2], sigma;
        if (!b[0].is_zero()) {
            u[0] = one, u[1] = zero;
            v[0] = b[1], v[1] = -b[0];
            sigma = b[0];
        } else {
            u[0] = zero, u[1] = one;
            v[0] = one, v[1] = zero;
            sigma = b[3];
        }
        FieldElem gammaH = u[0] * c[0] + u[1] * c[2];
        FieldElem gammaX = u[0] * c[1] + u[1] * c[3];
        FieldElem kH = v[0] * c[0] + v[1] * c[2];
        FieldElem kX = v[0] * c[1] + v[1] * c[3];
        // clear the u-row of c; d picks up the Schur correction
        FieldElem d33 = d[0] - gammaH * gammaH / sigma;
        FieldElem d34 = d[1] - gammaH * gammaX / sigma;
        FieldElem d44 = d[3] - gammaX * gammaX / sigma;
        bool hH = !kH.is_zero(), hX = !kX.is_zero();
        if (!hH && !hX) {
            if (!d33.is_zero() && !d34.is_zero())
                return {Family::B11, {one, one, d33 * d44 / (d34 * d34)}};
            CanonicalLabel lbl{Family::B11,
                               {indicator(d33), indicator(d34), indicator(d44)}};
            if (lbl.params[1].is_zero() && lbl.params[2].is_zero())
                throw NotAQuadraticAlgebra(
                    "form reduces to L1^2 + b33 H^2 (depends on only one of "
                    "L1, L2, X^2)");
            return lbl;
        }
        if (hH && hX) {
            FieldElem resid = d34 - d33 * kX / (two * kH) - d44 * kH / (two * kX);
            return {Family::B15, {indicator(resid)}};
        }
        if (hH) return {Family::B16, {indicator(d44)}};
        return {Family::B17, {indicator(d33)}};
    }

    // rank(b) = 0
    int rc = exact_rank(c.data(), 2);
    if (rc == 0)
        throw NotAQuadraticAlgebra("form depends on H and X^2 only");
    if (rc == 2) return {Family::B08, {}};
    // rank(c) = 1: branch on which columns of c survive
    bool hasH = !(c[0].is_zero() && c[2].is_zero());
    bool hasX = !(c[1].is_zero() && c[3].is_zero());
    // the (proportional) nonzero row gives the kappa ratios
    FieldElem kH = c[0], kX = c[1];
    if (kH.is_zero() && kX.is_zero()) kH = c[2], kX = c[3];
    FieldElem d33 = d[0], d34 = d[1], d44 = d[3];
    if (hasH && hasX) {
        FieldElem resid =
            d34 - d33 * kX / (FieldElem(2L) * kH) - d44 * kH / (FieldElem(2L) * kX);
        return {Family::B05, {indicator(resid)}};
    }
    if (hasH) {
        if (d44.is_zero())
            throw NotAQuadraticAlgebra(
                "form reduces to 2 L2 H (depends on only one of L1, L2, X^2)");
        return {Family::B06, {}};
    }
    return {Family::B07, {indicator(d33)}};
}

// -------------------------------------------------------------- witness

// Accumulates group elements; every stage acts on the running form so stage
// formulas can read current entries.
struct Reducer {
    SymForm cur;
    ScaledGroupElem acc = ScaledGroupElem::identity();

    explicit Reducer(const SymForm& B) : cur(B) {}

    void apply_hat(const std::array<FieldElem, 16>& hat, const FieldElem& z) {
        ScaledGroupElem g{GroupElem::from_hat(hat), z};
        cur = group_act(g, cur);
        acc = compose(acc, g);
    }
    // hat from r (2x2), s (2x2), t = diag(t3, t4)
    void apply_blocks(const FieldElem r[4], const FieldElem s[4],
                      const FieldElem& t3, const FieldElem& t4,
                      const FieldElem& z) {
        std::array<FieldElem, 16> h{};
        h[0] = r[0], h[1] = r[1], h[4] = r[2], h[5] = r[3];
        h[2] = s[0], h[3] = s[1], h[6] = s[2], h[7] = s[3];
        h[10] = t3;
        h[15] = t4;
        apply_hat(h, z);
    }
    void apply_r(const FieldElem r[4]) {
        FieldElem s[4] = {};
        apply_blocks(r, s, FieldElem::one(), FieldElem::one(), FieldElem::one());
    }
    void apply_s(const FieldElem s[4]) {
        FieldElem r[4] = {FieldElem::one(), FieldElem(), FieldElem(), FieldElem::one()};
        apply_blocks(r, s, FieldElem::one(), FieldElem::one(), FieldElem::one());
    }
    void apply_diag(const FieldElem& l1, const FieldElem& l2, const FieldElem& t3,
                    const FieldElem& t4, const FieldElem& z) {
        FieldElem r[4] = {l1, FieldElem(), FieldElem(), l2};
        FieldElem s[4] = {};
        apply_blocks(r, s, t3, t4, z);
    }
};

FieldElem sqrt_or_throw(const FieldElem& v) {
    auto r = try_sqrt(v);
    if (!r)
        throw SquareRootOutsideField("sqrt(" + to_string(v) +
                                     ") is not in Q(i,s2,s3)");
    return *r;
}

// Diagonalize the b block to the identity (rank 2 entry point).
void reduce_b_to_identity(Reducer& red) {
    const FieldElem one = FieldElem::one(), zero;
    auto b = red.cur.block_b();
    if (b[0].is_zero() && !b[3].is_zero()) {
        FieldElem r[4] = {zero, one, one, zero};
        red.apply_r(r);
    } else if (b[0].is_zero() && b[3].is_zero()) {
        FieldElem r[4] = {one, one, one, -one};
        red.apply_r(r);
    }
    b = red.cur.block_b();
    if (!b[1].is_zero()) {
        FieldElem r[4] = {one, -b[1] / b[0], zero, one};
        red.apply_r(r);
    }
    b = red.cur.block_b();
    FieldElem r[4] = {sqrt_or_throw(b[0]).inverse(), zero, zero,
                      sqrt_or_throw(b[3]).inverse()};
    red.apply_r(r);
}

std::optional<ScaledGroupElem> try_witness(const SymForm& B,
                                           const CanonicalLabel& label) {
    const FieldElem zero, one = FieldElem::one(), two(2L);
    try {
        Reducer red(B);
        switch (label.family) {
            case Family::B21:
            case Family::B22: {
                reduce_b_to_identity(red);
                auto c = red.cur.block_c();
                FieldElem s[4] = {-c[0], -c[1], -c[2], -c[3]};
                red.apply_s(s);
                auto d = red.cur.block_d();
                FieldElem S33 = d[0], S34 = d[1], S44 = d[3];
                FieldElem t3 = one, t4 = one;
                if (label.family == Family::B21) {
                    t3 = sqrt_or_throw(S33).inverse();
                    if (!S34.is_zero())
                        t4 = (t3 * S34).inverse();
                    else if (!S44.is_zero())
                        t4 = sqrt_or_throw(S44).inverse();
                } else {
                    if (!S44.is_zero()) {
                        t4 = sqrt_or_throw(S44).inverse();
                        if (!S34.is_zero()) t3 = (t4 * S34).inverse();
                    } else if (!S34.is_zero()) {
                        t3 = S34.inverse();
                    }
                }
                red.apply_diag(one, one, t3, t4, one);
                break;
            }
            case Family::B11:
            case Family::B15:
            case Family::B16:
            case Family::B17: {
                auto b = red.cur.block_b();
                if (b[0].is_zero()) {
                    // with rank 1 this means b = diag(0, b22)
                    FieldElem r[4] = {zero, one, one, zero};
                    red.apply_r(r);
                    b = red.cur.block_b();
                }
                if (!b[1].is_zero()) {
                    FieldElem r[4] = {one, -b[1] / b[0], zero, one};
                    red.apply_r(r);
                    b = red.cur.block_b();
                }
                {
                    FieldElem r[4] = {sqrt_or_throw(b[0]).inverse(), zero, zero, one};
                    red.apply_r(r);
                }
                // clear the L1 row of c
                auto c = red.cur.block_c();
                FieldElem s[4] = {-c[0], -c[1], zero, zero};
                red.apply_s(s);
                c = red.cur.block_c();
                FieldElem kH = c[2], kX = c[3];
                auto d = red.cur.block_d();
                if (label.family == Family::B11) {
                    FieldElem d33 = d[0], d34 = d[1], d44 = d[3];
                    FieldElem t3 = one, t4 = one;
                    if (!d33.is_zero() && !d34.is_zero()) {
                        t3 = sqrt_or_throw(d33).inverse();
                        t4 = (t3 * d34).inverse();
                    } else if (!d33.is_zero()) {
                        t3 = sqrt_or_throw(d33).inverse();
                        if (!d44.is_zero()) t4 = sqrt_or_throw(d44).inverse();
                    } else if (!d34.is_zero()) {
                        if (!d44.is_zero()) {
                            t4 = sqrt_or_throw(d44).inverse();
                            t3 = (t4 * d34).inverse();
                        } else {
                            t3 = d34.inverse();
                        }
                    } else if (!d44.is_zero()) {
                        t4 = sqrt_or_throw(d44).inverse();
                    }
                    red.apply_diag(one, one, t3, t4, one);
                } else if (label.family == Family::B15) {
                    FieldElem s2[4] = {zero, zero, -d[0] / (two * kH),
                                       -d[3] / (two * kX)};
                    red.apply_s(s2);
                    d = red.cur.block_d();
                    FieldElem resid = d[1];
                    FieldElem z = one;
                    if (!resid.is_zero()) z = resid / (kH * kX);
                    FieldElem lambda = sqrt_or_throw(z).inverse();
                    FieldElem t3 = (z * kH).inverse(), t4 = (z * kX).inverse();
                    red.apply_diag(lambda, one, t3, t4, z);
                } else if (label.family == Family::B16) {
                    FieldElem s2[4] = {zero, zero, -d[0] / (two * kH), zero};
                    red.apply_s(s2);
                    d = red.cur.block_d();
                    FieldElem s3[4] = {zero, zero, zero, -d[1] / kH};
                    red.apply_s(s3);
                    d = red.cur.block_d();
                    FieldElem t4 = d[3].is_zero() ? one : sqrt_or_throw(d[3]).inverse();
                    FieldElem t3 = kH.inverse();
                    red.apply_diag(one, one, t3, t4, one);
                } else { // B17
                    FieldElem s2[4] = {zero, zero, zero, -d[3] / (two * kX)};
                    red.apply_s(s2);
                    d = red.cur.block_d();
                    FieldElem s3[4] = {zero, zero, -d[1] / kX, zero};
                    red.apply_s(s3);
                    d = red.cur.block_d();
                    FieldElem t3 = d[0].is_zero() ? one : sqrt_or_throw(d[0]).inverse();
                    FieldElem t4 = kX.inverse();
                    red.apply_diag(one, one, t3, t4, one);
                }
                break;
            }
            case Family::B08: {
                // clear d via s with c^t s + s^t c = -d, then c -> identity
                auto c = red.cur.block_c();
                FieldElem det = c[0] * c[3] - c[1] * c[2];
                FieldElem cit[4] = {c[3] / det, -c[2] / det, -c[1] / det,
                                    c[0] / det}; // c^{-t}
                auto d = red.cur.block_d();
                FieldElem half(1, 2);
                FieldElem m[4] = {-half * d[0], -half * d[1], -half * d[2],
                                  -half * d[3]};
                FieldElem s[4] = {cit[0] * m[0] + cit[1] * m[2],
                                  cit[0] * m[1] + cit[1] * m[3],
                                  cit[2] * m[0] + cit[3] * m[2],
                                  cit[2] * m[1] + cit[3] * m[3]};
                red.apply_s(s);
                c = red.cur.block_c();
                det = c[0] * c[3] - c[1] * c[2];
                FieldElem r[4] = {c[3] / det, -c[2] / det, -c[1] / det, c[0] / det};
                red.apply_r(r);
                break;
            }
            case Family::B05:
            case Family::B06:
            case Family::B07: {
                auto c = red.cur.block_c();
                // basis (n, m): n in the left kernel of c, m hitting it
                FieldElem r[4];
                if (c[0].is_zero() && c[1].is_zero()) {
                    FieldElem id[4] = {one, zero, zero, one};
                    std::copy(id, id + 4, r);
                } else {
                    // row2 = lambda * row1
                    FieldElem lambda = c[0].is_zero() ? c[3] / c[1] : c[2] / c[0];
                    FieldElem cols[4] = {lambda, one, -one, zero};
                    std::copy(cols, cols + 4, r);
                }
                red.apply_r(r);
                c = red.cur.block_c();
                FieldElem kH = c[2], kX = c[3];
                auto d = red.cur.block_d();
                if (label.family == Family::B05) {
                    FieldElem s2[4] = {zero, zero, -d[0] / (two * kH),
                                       -d[3] / (two * kX)};
                    red.apply_s(s2);
                    d = red.cur.block_d();
                    FieldElem resid = d[1];
                    FieldElem z = one;
                    if (!resid.is_zero()) z = resid / (kH * kX);
                    FieldElem t3 = (z * kH).inverse(), t4 = (z * kX).inverse();
                    red.apply_diag(one, one, t3, t4, z);
                } else if (label.family == Family::B06) {
                    FieldElem s2[4] = {zero, zero, -d[0] / (two * kH), zero};
                    red.apply_s(s2);
                    d = red.cur.block_d();
                    FieldElem s3[4] = {zero, zero, zero, -d[1] / kH};
                    red.apply_s(s3);
                    d = red.cur.block_d();
                    FieldElem t4 = sqrt_or_throw(d[3]).inverse();
                    FieldElem z = one;
                    FieldElem t3 = kH.inverse();
                    red.apply_diag(one, one, t3, t4, z);
                } else { // B07
                    FieldElem s2[4] = {zero, zero, zero, -d[3] / (two * kX)};
                    red.apply_s(s2);
                    d = red.cur.block_d();
                    FieldElem s3[4] = {zero, zero, -d[1] / kX, zero};
                    red.apply_s(s3);
                    d = red.cur.block_d();
                    FieldElem t3 = d[0].is_zero() ? one : sqrt_or_throw(d[0]).inverse();
                    FieldElem t4 = kX.inverse();
                    red.apply_diag(one, one, t3, t4, one);
                }
                break;
            }
        }
        if (red.cur != canonical_matrix(label)) return std::nullopt;
        return red.acc;
    } catch (const SquareRootOutsideField&) {
        return std::nullopt;
    }
}

} // namespace

ClassifyResult classify(const SymForm& B) {
    int involved = 0;
    for (int row : {0, 1, 3}) {
        for (int j = 0; j < 4; j++)
            if (!B.at(row, j).is_zero()) {
                involved++;
                break;
            }
    }
    if (involved < 2)
        throw NotAQuadraticAlgebra(
            "Casimir depends on fewer than two of L1, L2, X^2");
    CanonicalLabel label = label_of(B);
    return {label, try_witness(B, label)};
}

// ------------------------------------------------------------ systems

namespace {
const char* kSystemNames[kNumSystems] = {"S6",  "E18", "D3E", "D4(b)D", "S3",
                                         "E3",  "E12", "D1D", "D2D",    "E6",
                                         "E5",  "E14", "S5",  "E13",    "E4"};
}

const char* system_name(SystemId s) { return kSystemNames[static_cast<int>(s)]; }

std::optional<SystemId> parse_system(const std::string& name) {
    std::string n;
    for (char c : name)
        if (c != '(' && c != ')')
            n += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    for (int k = 0; k < kNumSystems; k++) {
        std::string cand;
        for (char c : std::string(kSystemNames[k]))
            if (c != '(' && c != ')')
                cand += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        if (n == cand) return static_cast<SystemId>(k);
    }
    return std::nullopt;
}

const SystemRecord& Catalog::get(SystemId id) const {
    for (const auto& rec : systems)
        if (rec.id == id) return rec;
    throw Error("Internal", "catalog is missing a system");
}

std::pair<SymForm, Poly> catalog_form(SystemId id) {
    const SystemRecord& rec = catalog().get(id);
    return {rec.form, rec.casimir};
}

// ------------------------------------------------------- realizability

namespace {

bool is01(const FieldElem& v) {
    return v.is_zero() || v == FieldElem::one();
}

RealizabilityStatus realized(std::vector<SystemId> systems, std::string note = "") {
    return {RealizabilityStatus::Kind::RealizedBySystem, std::move(systems), -1,
            std::move(note)};
}
RealizabilityStatus heisenberg(std::string note) {
    return {RealizabilityStatus::Kind::HeisenbergOnly, {}, -1, std::move(note)};
}
RealizabilityStatus impossible(int case_number, std::string note) {
    return {RealizabilityStatus::Kind::NotPhaseSpaceRealizable, {}, case_number,
            std::move(note)};
}

} // namespace

RealizabilityStatus realizability(const CanonicalLabel& label) {
    const FieldElem zero, one = FieldElem::one();
    const auto& p = label.params;
    switch (label.family) {
        case Family::B21: {
            if (!is01(p[0]))
                throw UnknownLabel("B21 with b34 outside {0,1}");
            if (p[0].is_zero() && p[1].is_zero()) return realized({SystemId::E3});
            if (p[0] == one && p[1].is_zero()) return realized({SystemId::D3E});
            if (p[0] == one && p[1] == FieldElem(-2L))
                return realized({SystemId::D4bD});
            if (p[0] == one && p[1] == one)
                return realized({SystemId::S3},
                                "the printed catalog lists S3 via the K-fixing-"
                                "subgroup representative B21(s2*e^{i3pi/4},-2i)");
            return realized({}, "all B21 parameter choices admit geometric realizations");
        }
        case Family::B22: {
            if (p[0] == one && p[1] == one) return realized({SystemId::S6});
            if (p[0] == one && p[1].is_zero()) return realized({SystemId::E18});
            return realized({}, "all B22 parameter choices admit geometric realizations");
        }
        case Family::B11: {
            if (!is01(p[0]) || !is01(p[1]) || !is01(p[2]))
                throw UnknownLabel("B11 with parameters outside {0,1} (orbit "
                                   "outside the printed canonical family)");
            bool b33 = p[0] == one, b34 = p[1] == one, b44 = p[2] == one;
            if (!b33 && b34 && b44) return realized({SystemId::E5});
            if (!b33 && b34 && !b44)
                return heisenberg("realized only in Heisenberg-type algebras "
                                  "(generators px, x py, py)");
            if (b33 && b34 && b44)
                return impossible(1, "L1^2+(H+X^2)^2 = 0 factors into two "
                                     "first-order constraints");
            if (b33 && b34 && !b44)
                return impossible(3, "L1^2+H^2+2HX^2 = 0 forces H ~ X^2");
            if (!b33 && !b34 && b44)
                return impossible(2, "L1^2+X^4 = 0 forces L1 = ±i X^2");
            return realized({}, "not among the printed impossibility cases; no "
                                "catalog system carries this form");
        }
        case Family::B15:
            return realized({p[0].is_zero() ? SystemId::E6 : SystemId::D2D});
        case Family::B16:
            if (p[0].is_zero())
                return heisenberg("realized only in Heisenberg-type algebras "
                                  "(generators px, x py, py)");
            return realized({SystemId::D1D});
        case Family::B17:
            if (p[0].is_zero()) return realized({SystemId::E14, SystemId::S5});
            return realized({SystemId::E12});
        case Family::B05:
            return impossible(0, "the printed matching lists B05 as unrealizable, "
                                 "outside its five argued impossibility cases");
        case Family::B06:
            return impossible(4, "2L2H+X^4 = 0 forces L2, H ~ X^2");
        case Family::B07:
            if (p[0].is_zero())
                return impossible(5, "2L2X^2 = 0 forces a generator to vanish");
            return realized({SystemId::E4});
        case Family::B08:
            return realized({SystemId::E13});
    }
    throw UnknownLabel("label outside the canonical families");
}

} // namespace quadalg
