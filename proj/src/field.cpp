#include <quadalg/field.hpp>

#include <cctype>
#include <cmath>
#include <sstream>
#include <vector>

namespace quadalg {

std::complex<double> FieldElem::to_complex() const {
    static const double u[8] = {1.0,          1.0,
                                std::sqrt(2.0), std::sqrt(2.0),
                                std::sqrt(3.0), std::sqrt(3.0),
                                std::sqrt(6.0), std::sqrt(6.0)};
    std::complex<double> z(0.0, 0.0);
    for (int k = 0; k < kBasis; k++) {
        if (coord(k) == 0) continue;
        double v = coord(k).get_d() * u[k];
        if (k & 1)
            z += std::complex<double>(0.0, v);
        else
            z += std::complex<double>(v, 0.0);
    }
    return z;
}

namespace {

struct Cursor {
    const std::string& s;
    size_t p = 0;
    bool done() const { return p >= s.size(); }
    char peek() const { return done() ? '\0' : s[p]; }
    void skip_ws() {
        while (!done() && std::isspace(static_cast<unsigned char>(s[p]))) p++;
    }
};

Rational parse_rational(Cursor& c) {
    c.skip_ws();
    size_t start = c.p;
    while (!c.done() && std::isdigit(static_cast<unsigned char>(c.peek()))) c.p++;
    if (c.p == start) throw ParseError("expected number at '" + c.s.substr(start) + "'");
    std::string num = c.s.substr(start, c.p - start);
    std::string den = "1";
    c.skip_ws();
    if (c.peek() == '/') {
        c.p++;
        c.skip_ws();
        size_t ds = c.p;
        while (!c.done() && std::isdigit(static_cast<unsigned char>(c.peek()))) c.p++;
        if (c.p == ds) throw ParseError("expected denominator in '" + c.s + "'");
        den = c.s.substr(ds, c.p - ds);
    }
    Rational r(num + "/" + den);
    r.canonicalize();
    if (r.get_den() == 0) throw DivisionByZero("zero denominator in '" + c.s + "'");
    return r;
}

int parse_unit(Cursor& c) {
    if (c.peek() == 'i') {
        c.p++;
        return 1;
    }
    if (c.peek() == 's' && c.p + 1 < c.s.size()) {
        char d = c.s[c.p + 1];
        if (d == '2' || d == '3' || d == '6') {
            c.p += 2;
            return d == '2' ? 2 : d == '3' ? 4 : 6;
        }
    }
    throw ParseError("expected unit i/s2/s3/s6 in '" + c.s + "'");
}

} // namespace

FieldElem parse_field_elem(const std::string& text) {
    Cursor c{text};
    FieldElem result;
    bool any = false;
    c.skip_ws();
    while (!c.done()) {
        int sign = 1;
        if (c.peek() == '+' || c.peek() == '-') {
            if (c.peek() == '-') sign = -1;
            c.p++;
            c.skip_ws();
        } else if (any) {
            throw ParseError("expected '+' or '-' between terms in '" + text + "'");
        }
        Rational coeff = 1;
        int unit = 0;
        bool have_coeff = false;
        if (std::isdigit(static_cast<unsigned char>(c.peek()))) {
            coeff = parse_rational(c);
            have_coeff = true;
        }
        c.skip_ws();
        while (!c.done() && (c.peek() == '*' || (!have_coeff && (c.peek() == 'i' || c.peek() == 's')))) {
            if (c.peek() == '*') {
                c.p++;
                c.skip_ws();
            }
            int u = parse_unit(c);
            // units combine by the same bit rule as FieldElem multiplication
            long f = 1;
            int shared = unit & u;
            if (shared & 1) f = -f;
            if (shared & 2) f *= 2;
            if (shared & 4) f *= 3;
            coeff *= f;
            unit ^= u;
            have_coeff = true;
            c.skip_ws();
        }
        if (!have_coeff) throw ParseError("empty term in '" + text + "'");
        result.coord(unit) += sign * coeff;
        any = true;
        c.skip_ws();
    }
    if (!any) throw ParseError("empty field element");
    return result;
}

std::string to_string(const FieldElem& e) {
    static const char* unit_name[8] = {"",  "i",    "s2", "i*s2",
                                       "s3", "i*s3", "s6", "i*s6"};
    std::ostringstream out;
    bool first = true;
    for (int k = 0; k < FieldElem::kBasis; k++) {
        const Rational& q = e.coord(k);
        if (q == 0) continue;
        Rational a = abs(q);
        if (first) {
            if (q < 0) out << "-";
            first = false;
        } else {
            out << (q < 0 ? "-" : "+");
        }
        if (k == 0) {
            out << a.get_str();
        } else if (a == 1) {
            out << unit_name[k];
        } else {
            out << a.get_str() << "*" << unit_name[k];
        }
    }
    if (first) return "0";
    return out.str();
}

namespace {

bool rational_sqrt(const Rational& q, Rational& out) {
    if (q < 0) return false;
    mpz_class num = q.get_num(), den = q.get_den();
    if (mpz_perfect_square_p(num.get_mpz_t()) == 0) return false;
    if (mpz_perfect_square_p(den.get_mpz_t()) == 0) return false;
    mpz_class rn, rd;
    mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
    out = Rational(rn, rd);
    out.canonicalize();
    return true;
}

} // namespace

std::optional<FieldElem> try_sqrt(const FieldElem& e) {
    if (e.is_zero()) return FieldElem::zero();
    const FieldElem one = FieldElem::one();
    const FieldElem i = FieldElem::i();
    const FieldElem s2 = FieldElem::s2();
    const FieldElem s3 = FieldElem::s3();
    const FieldElem s6 = FieldElem::s6();
    const FieldElem half(1, 2);
    // (mu, sqrt(mu)) pairs with sqrt(mu) inside the field.
    const std::pair<FieldElem, FieldElem> table[] = {
        {one, one},
        {-one, i},
        {FieldElem(2L), s2},
        {FieldElem(-2L), i * s2},
        {FieldElem(3L), s3},
        {FieldElem(-3L), i * s3},
        {FieldElem(6L), s6},
        {FieldElem(-6L), i * s6},
        {i, (s2 + i * s2) * half},
        {-i, (s2 - i * s2) * half},
        {FieldElem(2L) * i, one + i},
        {FieldElem(-2L) * i, one - i},
        {FieldElem(3L) * i, (s6 + i * s6) * half},
        {FieldElem(-3L) * i, (s6 - i * s6) * half},
        {FieldElem(6L) * i, s3 + i * s3},
        {FieldElem(-6L) * i, s3 - i * s3},
    };
    for (const auto& [mu, root] : table) {
        FieldElem q = e / mu;
        if (!q.is_rational()) continue;
        Rational rs;
        if (!rational_sqrt(q.rational_part(), rs)) continue;
        return FieldElem(rs) * root;
    }
    return std::nullopt;
}

} // namespace quadalg
