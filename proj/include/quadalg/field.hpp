#ifndef QUADALG_FIELD_HPP
#define QUADALG_FIELD_HPP

#include <quadalg/errors.hpp>

#include <gmpxx.h>

#include <array>
#include <complex>
#include <optional>
#include <string>

namespace quadalg {

using Rational = mpq_class;

// Exact element of Q(i, sqrt2, sqrt3), stored as rational coordinates over
// the basis {1, i, s2, i*s2, s3, i*s3, s6, i*s6} where s2 = sqrt(2) etc.
// Basis index bits: 1 = i, 2 = s2, 4 = s3 (s6 = s2*s3 has index 6).
class FieldElem {
public:
    static constexpr int kBasis = 8;

    FieldElem() : c_{} {}
    explicit FieldElem(const Rational& r) : c_{} { c_[0] = r; }
    FieldElem(long num, long den) : c_{} {
        if (den == 0) throw DivisionByZero("rational with zero denominator");
        c_[0] = Rational(num, den);
        c_[0].canonicalize();
    }
    explicit FieldElem(long n) : c_{} { c_[0] = n; }

    static FieldElem zero() { return FieldElem(); }
    static FieldElem one() { return FieldElem(1L); }
    static FieldElem i() { return unit(1); }
    static FieldElem s2() { return unit(2); }
    static FieldElem s3() { return unit(4); }
    static FieldElem s6() { return unit(6); }
    static FieldElem unit(int k) {
        FieldElem e;
        e.c_[k] = 1;
        return e;
    }

    const Rational& coord(int k) const { return c_[k]; }
    Rational& coord(int k) { return c_[k]; }

    bool is_zero() const {
        for (const auto& q : c_)
            if (q != 0) return false;
        return true;
    }
    bool is_rational() const {
        for (int k = 1; k < kBasis; k++)
            if (c_[k] != 0) return false;
        return true;
    }
    const Rational& rational_part() const { return c_[0]; }

    friend FieldElem operator+(const FieldElem& a, const FieldElem& b) {
        FieldElem r;
        for (int k = 0; k < kBasis; k++) r.c_[k] = a.c_[k] + b.c_[k];
        return r;
    }
    friend FieldElem operator-(const FieldElem& a, const FieldElem& b) {
        FieldElem r;
        for (int k = 0; k < kBasis; k++) r.c_[k] = a.c_[k] - b.c_[k];
        return r;
    }
    FieldElem operator-() const {
        FieldElem r;
        for (int k = 0; k < kBasis; k++) r.c_[k] = -c_[k];
        return r;
    }

    // Basis products: u_a * u_b = f * u_{a xor b} with f collecting i^2 = -1,
    // s2^2 = 2, s3^2 = 3 from the shared bits.
    friend FieldElem operator*(const FieldElem& a, const FieldElem& b) {
        FieldElem r;
        for (int p = 0; p < kBasis; p++) {
            if (a.c_[p] == 0) continue;
            for (int q = 0; q < kBasis; q++) {
                if (b.c_[q] == 0) continue;
                long f = 1;
                int shared = p & q;
                if (shared & 1) f = -f;
                if (shared & 2) f *= 2;
                if (shared & 4) f *= 3;
                r.c_[p ^ q] += f * a.c_[p] * b.c_[q];
            }
        }
        return r;
    }

    FieldElem& operator+=(const FieldElem& o) { return *this = *this + o; }
    FieldElem& operator-=(const FieldElem& o) { return *this = *this - o; }
    FieldElem& operator*=(const FieldElem& o) { return *this = *this * o; }

    // Inverse via the full Galois norm: multiply the 7 nontrivial conjugates
    // (independent sign flips of i, s2, s3); the product with *this is a
    // nonzero rational.
    FieldElem inverse() const {
        if (is_zero()) throw DivisionByZero("inverse of zero field element");
        FieldElem p = FieldElem::one();
        for (int mask = 1; mask < 8; mask++) p *= conjugate(mask);
        FieldElem n = *this * p;
        // n is rational by Galois theory; guard against implementation bugs.
        if (!n.is_rational() || n.c_[0] == 0)
            throw Error("Internal", "field norm is not a nonzero rational");
        Rational inv_n = 1 / n.c_[0];
        FieldElem r;
        for (int k = 0; k < kBasis; k++) r.c_[k] = p.c_[k] * inv_n;
        return r;
    }

    friend FieldElem operator/(const FieldElem& a, const FieldElem& b) {
        return a * b.inverse();
    }

    friend bool operator==(const FieldElem& a, const FieldElem& b) {
        return a.c_ == b.c_;
    }
    friend bool operator!=(const FieldElem& a, const FieldElem& b) {
        return !(a == b);
    }
    // Arbitrary strict order, used only for deterministic containers/sorting.
    friend bool operator<(const FieldElem& a, const FieldElem& b) {
        for (int k = 0; k < kBasis; k++) {
            int c = cmp(a.c_[k], b.c_[k]);
            if (c != 0) return c < 0;
        }
        return false;
    }

    // Conjugate flipping the units selected by mask bits (1=i, 2=s2, 4=s3).
    FieldElem conjugate(int mask) const {
        FieldElem r;
        for (int k = 0; k < kBasis; k++) {
            int flips = 0;
            if ((mask & 1) && (k & 1)) flips++;
            if ((mask & 2) && (k & 2)) flips++;
            if ((mask & 4) && (k & 4)) flips++;
            r.c_[k] = (flips % 2) ? -c_[k] : c_[k];
        }
        return r;
    }

    FieldElem pow(long e) const {
        if (e < 0) return inverse().pow(-e);
        FieldElem r = FieldElem::one();
        FieldElem base = *this;
        while (e > 0) {
            if (e & 1) r *= base;
            base *= base;
            e >>= 1;
        }
        return r;
    }

    std::complex<double> to_complex() const;

private:
    std::array<Rational, kBasis> c_;
};

// Text syntax (used in JSON and on the CLI): sum of signed terms
//   term := rational [ '*' unit ]... | unit
//   unit := 'i' | 's2' | 's3' | 's6'
// e.g. "-1/2+1/2*i", "1/2*s2", "1-i", "i*s2".
FieldElem parse_field_elem(const std::string& text);
std::string to_string(const FieldElem& e);

// Square root within Q(i,sqrt2,sqrt3) when one exists (e.g. sqrt(-2i) = 1-i).
// Complete for elements of the form (rational square) * mu with mu in
// {±1,±2,±3,±6,±i,±2i,±3i,±6i}; returns nullopt otherwise.
std::optional<FieldElem> try_sqrt(const FieldElem& e);

} // namespace quadalg

#endif
