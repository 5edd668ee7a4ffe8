#include <doctest.h>

#include <quadalg/canon.hpp>
#include <quadalg/contract.hpp>
#include <quadalg/errors.hpp>

#include "support.hpp"

using namespace quadalg;
using quadalg::testing::Rng;
using quadalg::testing::random_form;

namespace {

LaurentScalar eps(int p) { return LaurentScalar::eps(p); }
LaurentScalar lconst(const std::string& s) {
    return LaurentScalar(parse_field_elem(s));
}

ContractionFamily diag_family(const LaurentScalar& a, const LaurentScalar& b,
                              const LaurentScalar& c, const LaurentScalar& d) {
    std::array<LaurentScalar, 16> hat{};
    hat[0] = a;
    hat[5] = b;
    hat[10] = c;
    hat[15] = d;
    return ContractionFamily::from_entries(hat);
}

const SymForm& form_of(SystemId id) { return catalog().get(id).form; }

} // namespace

TEST_CASE("evaluate_family") {
    Rng rng(71);
    ContractionFamily id = ContractionFamily::identity();
    for (int k = 0; k < 10; k++) {
        SymForm B = random_form(rng);
        auto image = evaluate_family(id, B);
        for (int i = 0; i < 4; i++)
            for (int j = 0; j < 4; j++)
                CHECK(image[i * 4 + j] == LaurentScalar(B.at(i, j)));
    }

    // the E13 -> E4 witness on B08: (1,3) = eps, (2,4) = 1, (3,3) = 1, rest 0
    std::array<LaurentScalar, 16> hat{};
    hat[0] = eps(1);
    hat[2] = lconst("1/2");
    hat[5] = LaurentScalar::one();
    hat[10] = LaurentScalar::one();
    hat[15] = LaurentScalar::one();
    auto F = ContractionFamily::from_entries(hat);
    auto image = evaluate_family(F, form_of(SystemId::E13));
    CHECK(image[0 * 4 + 2] == eps(1));
    CHECK(image[1 * 4 + 3] == LaurentScalar::one());
    CHECK(image[2 * 4 + 2] == LaurentScalar::one());
    CHECK(image[0 * 4 + 0].is_zero());
    CHECK(image[0 * 4 + 1].is_zero());
    CHECK(image[0 * 4 + 3].is_zero());
    CHECK(image[1 * 4 + 1].is_zero());
    CHECK(image[1 * 4 + 2].is_zero());
    CHECK(image[2 * 4 + 3].is_zero());
    CHECK(image[3 * 4 + 3].is_zero());

    // the S6 -> E18 diagonal witness: b34 entry 1, b44 entry eps^2
    auto F2 = diag_family(LaurentScalar::one(), LaurentScalar::one(), eps(-1), eps(1));
    auto image2 = evaluate_family(F2, form_of(SystemId::S6));
    CHECK(image2[2 * 4 + 3] == LaurentScalar::one());
    CHECK(image2[3 * 4 + 3] == eps(2));
    CHECK(image2[2 * 4 + 2].is_zero());
}

TEST_CASE("verify_contraction verdicts") {
    const WitnessRecord* w = find_witness(SystemId::E13, SystemId::E4);
    REQUIRE(w);
    REQUIRE(w->family);
    auto v = verify_contraction(*w->family, form_of(SystemId::E13),
                                form_of(SystemId::E4));
    CHECK(v.status == VerdictStatus::VerifiedStrict);

    // reversed direction with the same witness must not verify
    auto rev = verify_contraction(*w->family, form_of(SystemId::E4),
                                  form_of(SystemId::E13));
    CHECK(rev.status != VerdictStatus::VerifiedStrict);
    CHECK(rev.status != VerdictStatus::VerifiedUpToClassification);

    const WitnessRecord* s6 = find_witness(SystemId::S6, SystemId::E18);
    REQUIRE(s6);
    CHECK(verify_contraction(*s6->family, form_of(SystemId::S6),
                             form_of(SystemId::E18))
              .status == VerdictStatus::VerifiedStrict);

    // divergent: eps^-1 * identity on a rank-4 form
    auto bad = diag_family(eps(-1), LaurentScalar::one(), LaurentScalar::one(),
                           LaurentScalar::one());
    CHECK(verify_contraction(bad, form_of(SystemId::S6), form_of(SystemId::E18))
              .status == VerdictStatus::LimitUndefined);
}

TEST_CASE("bundled witnesses all verify; one-directionality holds") {
    int strict = 0, classified = 0, refuted = 0;
    for (const auto& w : witnesses()) {
        const SymForm& S = form_of(w.source);
        const SymForm& T = form_of(w.target);
        if (w.refuted) {
            refuted++;
            REQUIRE(w.printed_family);
            auto v = verify_contraction(*w.printed_family, S, T);
            CHECK(v.status != VerdictStatus::VerifiedStrict);
            CHECK(v.status != VerdictStatus::VerifiedUpToClassification);
            continue;
        }
        REQUIRE(w.family);
        auto v = verify_contraction(*w.family, S, T);
        if (v.status == VerdictStatus::VerifiedStrict)
            strict++;
        else if (v.status == VerdictStatus::VerifiedUpToClassification)
            classified++;
        // one-directionality: the same family never works backwards
        auto rev = verify_contraction(*w.family, T, S);
        CHECK(rev.status != VerdictStatus::VerifiedStrict);
        // rank-hierarchy soundness of the verified limit
        if (v.status == VerdictStatus::VerifiedStrict) {
            auto [sB, sb] = rank_invariants(S);
            auto [lB, lb] = rank_invariants(*v.limit_form);
            CHECK(lB <= sB);
            CHECK(lb <= sb);
        }
    }
    CHECK(strict == 49);
    CHECK(classified == 1);
    CHECK(refuted == 2);
}

TEST_CASE("evaluation at eps = 1 matches the plain group action") {
    FieldElem one = FieldElem::one();
    for (const auto& w : witnesses()) {
        if (!w.family) continue;
        const SymForm& S = form_of(w.source);
        auto image = evaluate_family(*w.family, S);
        auto hat = w.family->hat_at_eps(one);
        FieldElem z = w.family->z_at_eps(one);
        // z A(1)^t B A(1), computed with plain field arithmetic
        std::array<FieldElem, 16> expect{};
        for (int i = 0; i < 4; i++)
            for (int j = 0; j < 4; j++) {
                FieldElem sum;
                for (int a = 0; a < 4; a++)
                    for (int b = 0; b < 4; b++)
                        sum += hat[a * 4 + i] * S.at(a, b) * hat[b * 4 + j];
                expect[i * 4 + j] = z * sum;
            }
        for (int k = 0; k < 16; k++) CHECK(image[k].evaluate(one) == expect[k]);
    }
}

TEST_CASE("float cross-check of every witness limit") {
    // independent route: evaluate the congruence in complex doubles at a
    // small eps and compare against the exact limit form. eps = 1e-3 keeps
    // the convergence error O(eps) above the double-precision cancellation
    // noise of eps^-4 terms.
    const FieldElem eps_val(1, 1000);
    for (const auto& w : witnesses()) {
        if (!w.family) continue;
        const SymForm& S = form_of(w.source);
        const SymForm& T = form_of(w.target);
        auto verdict = verify_contraction(*w.family, S, T);
        REQUIRE(verdict.limit_form);
        auto hat = w.family->hat_at_eps(eps_val);
        std::complex<double> A[4][4], B[4][4], Z;
        for (int i = 0; i < 4; i++)
            for (int j = 0; j < 4; j++) {
                A[i][j] = hat[i * 4 + j].to_complex();
                B[i][j] = S.at(i, j).to_complex();
            }
        Z = w.family->z_at_eps(eps_val).to_complex();
        for (int i = 0; i < 4; i++)
            for (int j = 0; j < 4; j++) {
                std::complex<double> sum(0.0, 0.0);
                for (int a = 0; a < 4; a++)
                    for (int b = 0; b < 4; b++)
                        sum += A[a][i] * B[a][b] * A[b][j];
                sum *= Z;
                std::complex<double> limit = verdict.limit_form->at(i, j).to_complex();
                CHECK(std::abs(sum - limit) < 1e-2);
            }
    }
}

TEST_CASE("normalize_family clears every rank-2-target witness") {
    for (const auto& w : witnesses()) {
        if (!w.family) continue;
        const SymForm& S = form_of(w.source);
        const SymForm& T = form_of(w.target);
        if (rank_invariants(T).second != 2) continue;  // hypothesis needs I block
        auto before = evaluate_family(*w.family, S);
        auto norm = normalize_family(*w.family, S);
        auto after = evaluate_family(norm, S);
        for (int j = 1; j < 4; j++) CHECK(after[0 * 4 + j].is_zero());
        CHECK(after[1 * 4 + 2].is_zero());
        CHECK(after[1 * 4 + 3].is_zero());
        for (int k = 0; k < 16; k++) CHECK(after[k].limit() == before[k].limit());
    }
}

TEST_CASE("rank obstructions") {
    auto c = rank_obstruction(form_of(SystemId::E4), form_of(SystemId::E13));
    REQUIRE(c);
    CHECK(c->kind == ObstructionCertificate::Kind::RankBIncrease);
    CHECK(!rank_obstruction(form_of(SystemId::S6), form_of(SystemId::E18)));
    CHECK(!rank_obstruction(form_of(SystemId::E18), form_of(SystemId::D1D)));
    auto cb = rank_obstruction(form_of(SystemId::E13), form_of(SystemId::E12));
    REQUIRE(cb);
    CHECK(cb->kind == ObstructionCertificate::Kind::RankbIncrease);
    // the corrected S3 cells are rank-certified
    auto s3 = rank_obstruction(form_of(SystemId::S3), form_of(SystemId::D1D));
    REQUIRE(s3);
    CHECK(s3->kind == ObstructionCertificate::Kind::RankBIncrease);
}

TEST_CASE("normalize_family") {
    // already cleared: normalization keeps the image cleared and the limit
    auto cleared = diag_family(LaurentScalar::one(), LaurentScalar::one(),
                               eps(-1), eps(1));
    const SymForm& s6 = form_of(SystemId::S6);
    auto norm = normalize_family(cleared, s6);
    auto image = evaluate_family(norm, s6);
    for (int j = 1; j < 4; j++) {
        CHECK(image[0 * 4 + j].is_zero());
        if (j >= 2) CHECK(image[1 * 4 + j].is_zero());
    }

    // a family that dirties (1,2): clearing kills it without moving the limit
    std::array<LaurentScalar, 16> hat{};
    hat[0] = LaurentScalar::one();
    hat[1] = eps(1); // (1,2) image entry becomes eps
    hat[5] = LaurentScalar::one();
    hat[10] = eps(-1);
    hat[15] = eps(1);
    auto dirty = ContractionFamily::from_entries(hat);
    auto before = evaluate_family(dirty, s6);
    CHECK(before[0 * 4 + 1] == eps(1));
    auto fixed = normalize_family(dirty, s6);
    auto after = evaluate_family(fixed, s6);
    CHECK(after[0 * 4 + 1].is_zero());
    for (int k = 0; k < 16; k++) CHECK(after[k].limit() == before[k].limit());

    // the E13 -> E4 witness has (1,1) -> 0: the clearing hypothesis fails
    const WitnessRecord* w = find_witness(SystemId::E13, SystemId::E4);
    CHECK_THROWS_AS(normalize_family(*w->family, form_of(SystemId::E13)),
                    HypothesisNotMet);
}

TEST_CASE("search") {
    // self-contraction: identity witness
    auto self = search_contraction(form_of(SystemId::S6), form_of(SystemId::S6), 1);
    REQUIRE(self.family);
    CHECK(verify_contraction(*self.family, form_of(SystemId::S6),
                             form_of(SystemId::S6))
              .status == VerdictStatus::VerifiedStrict);

    // S6 -> E18 found at bound 1, diagonal effect
    auto s6e18 = search_contraction(form_of(SystemId::S6), form_of(SystemId::E18), 1);
    REQUIRE(s6e18.family);
    CHECK(verify_contraction(*s6e18.family, form_of(SystemId::S6),
                             form_of(SystemId::E18))
              .status == VerdictStatus::VerifiedStrict);

    // E3 -> E5 needs the coefficient relation 1 + i^2 = 0 in the solver
    auto e3e5 = search_contraction(form_of(SystemId::E3), form_of(SystemId::E5), 3);
    REQUIRE(e3e5.family);
    CHECK(verify_contraction(*e3e5.family, form_of(SystemId::E3),
                             form_of(SystemId::E5))
              .status == VerdictStatus::VerifiedStrict);

    // E4 -> E13: exhausted, with the rank certificate available independently
    auto e4e13 = search_contraction(form_of(SystemId::E4), form_of(SystemId::E13), 2);
    CHECK(!e4e13.family);
    CHECK(rank_obstruction(form_of(SystemId::E4), form_of(SystemId::E13)));

    CHECK_THROWS_AS(search_contraction(form_of(SystemId::S6),
                                       form_of(SystemId::E18), 17),
                    ValidationError);
}

TEST_CASE("transitivity evidence: S6 -> E18 -> E5 composes") {
    const WitnessRecord* w1 = find_witness(SystemId::S6, SystemId::E18);
    const WitnessRecord* w2 = find_witness(SystemId::E18, SystemId::E5);
    REQUIRE(w1);
    REQUIRE(w2);
    auto composed = w1->family->then(*w2->family);
    auto v = verify_contraction(composed, form_of(SystemId::S6),
                                form_of(SystemId::E5));
    bool ok = v.status == VerdictStatus::VerifiedStrict ||
              v.status == VerdictStatus::VerifiedUpToClassification;
    CHECK(ok);
}

TEST_CASE("family validation") {
    std::array<LaurentScalar, 16> hat{};
    for (int i = 0; i < 4; i++) hat[i * 4 + i] = LaurentScalar::one();
    hat[2 * 4 + 3] = eps(1); // H row may not touch X^2
    CHECK_THROWS_AS(ContractionFamily::from_entries(hat), ValidationError);

    std::array<LaurentScalar, 16> singular{};
    singular[0] = LaurentScalar::one();
    singular[5] = LaurentScalar::one();
    singular[10] = LaurentScalar::one();
    CHECK_THROWS_AS(ContractionFamily::from_entries(singular), ValidationError);
}

TEST_CASE("table 6 reproduces") {
    Table6Report rep = reproduce_table6({3});
    CHECK(rep.ok);
    CHECK(rep.plus_cells == 50);
    CHECK(rep.verified_strict == 49);
    CHECK(rep.verified_class == 1);
    CHECK(rep.certified == 132);
    CHECK(rep.corrections.size() == 2);
    // cell examples from the contract operation table
    for (const auto& cell : rep.cells) {
        if (cell.source == SystemId::E4 && cell.target == SystemId::E13) {
            REQUIRE(cell.certificate);
            CHECK(cell.certificate->kind ==
                  ObstructionCertificate::Kind::RankBIncrease);
        }
        if (cell.source == SystemId::E12 && cell.target == SystemId::D1D) {
            REQUIRE(cell.certificate);
            CHECK(cell.certificate->kind ==
                  ObstructionCertificate::Kind::PaperCertified);
            CHECK(cell.certificate->anchor.find("5.2.7") != std::string::npos);
        }
        if (cell.source == SystemId::E18 && cell.target == SystemId::D1D) {
            REQUIRE(cell.certificate);
            CHECK(cell.certificate->kind ==
                  ObstructionCertificate::Kind::PaperCertified);
        }
    }
    std::string csv = rep.to_csv();
    CHECK(csv.find("S6,E18,+,ok,VerifiedStrict") != std::string::npos);
}

TEST_CASE("the search rediscovers every '+' cell at bound 2") {
    const Table6Data& data = table6_data();
    int n = static_cast<int>(data.order.size());
    for (int r = 0; r < n; r++)
        for (int c = 0; c < n; c++) {
            if (r == c || data.truth.at({r, c}) != '+') continue;
            const SymForm& S = form_of(data.order[r]);
            const SymForm& T = form_of(data.order[c]);
            auto outcome = search_contraction(S, T, 2);
            REQUIRE(outcome.family);
            auto v = verify_contraction(*outcome.family, S, T);
            bool ok = v.status == VerdictStatus::VerifiedStrict ||
                      v.status == VerdictStatus::VerifiedUpToClassification;
            CHECK(ok);
        }
}

TEST_CASE("every '-' cell survives an ansatz sweep at bound 1") {
    const Table6Data& data = table6_data();
    int n = static_cast<int>(data.order.size());
    for (int r = 0; r < n; r++)
        for (int c = 0; c < n; c++) {
            if (r == c || data.truth.at({r, c}) == '+') continue;
            const SymForm& S = form_of(data.order[r]);
            const SymForm& T = form_of(data.order[c]);
            auto sweep = search_contraction(S, T, 1);
            CHECK(!sweep.family);
        }
}
