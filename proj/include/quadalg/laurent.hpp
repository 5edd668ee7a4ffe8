#ifndef QUADALG_LAURENT_HPP
#define QUADALG_LAURENT_HPP

#include <quadalg/field.hpp>

#include <map>
#include <string>

namespace quadalg {

// Laurent polynomial in the contraction parameter eps, with exponents
// confined to [-16, 16]. Entries of contraction families live here; products
// that overflow the bound fail loudly rather than truncate.
class LaurentScalar {
public:
    static constexpr int kMaxExp = 16;

    LaurentScalar() = default;
    explicit LaurentScalar(const FieldElem& constant) {
        if (!constant.is_zero()) coef_[0] = constant;
    }

    static LaurentScalar eps(int power = 1) {
        return monomial(power, FieldElem::one());
    }
    static LaurentScalar monomial(int exp, const FieldElem& c) {
        check_exp(exp);
        LaurentScalar p;
        if (!c.is_zero()) p.coef_[exp] = c;
        return p;
    }
    static LaurentScalar one() { return LaurentScalar(FieldElem::one()); }

    bool is_zero() const { return coef_.empty(); }
    const std::map<int, FieldElem>& coefficients() const { return coef_; }

    FieldElem coefficient(int exp) const {
        auto it = coef_.find(exp);
        return it == coef_.end() ? FieldElem::zero() : it->second;
    }

    // Lowest exponent with nonzero coefficient; only valid for nonzero values.
    int valuation() const {
        if (is_zero()) throw Error("Internal", "valuation of zero Laurent value");
        return coef_.begin()->first;
    }
    int degree() const {
        if (is_zero()) throw Error("Internal", "degree of zero Laurent value");
        return coef_.rbegin()->first;
    }

    friend LaurentScalar operator+(const LaurentScalar& a, const LaurentScalar& b) {
        LaurentScalar r = a;
        for (const auto& [e, c] : b.coef_) r.add_term(e, c);
        return r;
    }
    friend LaurentScalar operator-(const LaurentScalar& a, const LaurentScalar& b) {
        LaurentScalar r = a;
        for (const auto& [e, c] : b.coef_) r.add_term(e, -c);
        return r;
    }
    LaurentScalar operator-() const {
        LaurentScalar r;
        for (const auto& [e, c] : coef_) r.coef_[e] = -c;
        return r;
    }
    friend LaurentScalar operator*(const LaurentScalar& a, const LaurentScalar& b) {
        LaurentScalar r;
        for (const auto& [ea, ca] : a.coef_)
            for (const auto& [eb, cb] : b.coef_) {
                check_exp(ea + eb);
                r.add_term(ea + eb, ca * cb);
            }
        return r;
    }
    friend LaurentScalar operator*(const FieldElem& s, const LaurentScalar& a) {
        return LaurentScalar(s) * a;
    }
    LaurentScalar& operator+=(const LaurentScalar& o) { return *this = *this + o; }
    LaurentScalar& operator*=(const LaurentScalar& o) { return *this = *this * o; }

    friend bool operator==(const LaurentScalar& a, const LaurentScalar& b) {
        return a.coef_ == b.coef_;
    }
    friend bool operator!=(const LaurentScalar& a, const LaurentScalar& b) {
        return !(a == b);
    }

    // eps -> 0 limit: the eps^0 coefficient, defined only when no negative
    // exponent survives.
    FieldElem limit() const {
        if (!is_zero() && valuation() < 0)
            throw DivergentLimit("negative eps power survives: " + to_string());
        return coefficient(0);
    }
    bool has_limit() const { return is_zero() || valuation() >= 0; }

    FieldElem evaluate(const FieldElem& x) const {
        FieldElem r;
        for (const auto& [e, c] : coef_) r += c * x.pow(e);
        return r;
    }

    std::string to_string() const;

private:
    static void check_exp(int e) {
        if (e < -kMaxExp || e > kMaxExp)
            throw ExponentOverflow("eps exponent " + std::to_string(e) +
                                   " outside [-16,16]");
    }
    void add_term(int e, const FieldElem& c) {
        auto it = coef_.find(e);
        if (it == coef_.end()) {
            if (!c.is_zero()) coef_[e] = c;
        } else {
            it->second += c;
            if (it->second.is_zero()) coef_.erase(it);
        }
    }

    std::map<int, FieldElem> coef_;
};

} // namespace quadalg

#endif
