#ifndef QUADALG_TESTS_SUPPORT_HPP
#define QUADALG_TESTS_SUPPORT_HPP

#include <quadalg/field.hpp>
#include <quadalg/forms.hpp>
#include <quadalg/poisson.hpp>

#include <random>
#include <vector>

namespace quadalg::testing {

using Rng = std::mt19937_64;

// Small palette of field elements for reproducible property tests.
inline const std::vector<FieldElem>& palette() {
    static const std::vector<FieldElem> p = [] {
        const FieldElem one = FieldElem::one(), i = FieldElem::i(),
                        s2 = FieldElem::s2(), s3 = FieldElem::s3();
        const FieldElem half(1, 2);
        return std::vector<FieldElem>{
            FieldElem::zero(), one,      -one,     FieldElem(2L), FieldElem(-2L),
            half,              -half,    i,        -i,            half * i,
            one + i,           one - i,  s2,       half * s2,     s3,
            i * s2,            i - one,  half * (one + i),
            FieldElem::s6(),   FieldElem(1, 3),   FieldElem(1, 3) * s3};
    }();
    return p;
}

inline FieldElem random_elem(Rng& rng) {
    return palette()[rng() % palette().size()];
}

inline FieldElem random_nonzero(Rng& rng) {
    for (;;) {
        FieldElem e = random_elem(rng);
        if (!e.is_zero()) return e;
    }
}

inline ScaledGroupElem random_group_elem(Rng& rng) {
    for (;;) {
        std::array<FieldElem, 25> m{};
        for (int j = 0; j < 4; j++) {
            m[0 * 5 + j] = random_elem(rng);
            m[1 * 5 + j] = random_elem(rng);
        }
        m[2 * 5 + 2] = random_elem(rng);
        FieldElem a55 = random_elem(rng);
        m[4 * 5 + 4] = a55;
        m[3 * 5 + 3] = a55 * a55;
        FieldElem detr = m[0] * m[6] - m[1] * m[5];
        if (detr.is_zero() || m[12].is_zero() || a55.is_zero()) continue;
        return {GroupElem::from_entries(m), random_nonzero(rng)};
    }
}

inline SymForm random_form(Rng& rng) {
    std::array<FieldElem, 16> m{};
    for (int i = 0; i < 4; i++)
        for (int j = i; j < 4; j++) {
            FieldElem v = random_elem(rng);
            m[i * 4 + j] = v;
            m[j * 4 + i] = v;
        }
    return SymForm::from_entries(m);
}

inline Poly random_phase_poly(Rng& rng, Chart chart, int max_degree,
                              int nterms = 4) {
    int nv = chart_info(chart).nvars;
    Poly p(chart);
    for (int t = 0; t < nterms; t++) {
        Poly::Mono m{};
        int degree = static_cast<int>(rng() % (max_degree + 1));
        for (int d = 0; d < degree; d++) m[rng() % nv]++;
        p.add_term(m, random_elem(rng));
    }
    return p;
}

} // namespace quadalg::testing

#endif
