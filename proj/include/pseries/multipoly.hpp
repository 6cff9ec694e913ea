#pragma once

#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "rational.hpp"
#include "varset.hpp"

namespace pseries {

// Sparse multivariate polynomial over Q in canonical expanded form.
// Invariants: no stored zero coefficients; all monomials have exponent vectors
// of length |var_set|. Immutable in practice: every operation returns a fresh
// value. Equality is structural.
class MultiPoly {
public:
    using TermMap = std::map<Monomial, Rational, GradedLexDescending>;

    MultiPoly() = default;
    explicit MultiPoly(VarSet vars) : vars_(std::move(vars)) {}

    static MultiPoly zero(const VarSet& vars) { return MultiPoly(vars); }

    static MultiPoly constant(const VarSet& vars, const Rational& c) {
        MultiPoly p(vars);
        p.add_term(Monomial{std::vector<unsigned>(vars.size(), 0u)}, c);
        return p;
    }

    static MultiPoly one(const VarSet& vars) { return constant(vars, 1); }

    // The monomial X_i as a polynomial.
    static MultiPoly variable(const VarSet& vars, const std::string& name) {
        std::size_t i = vars.index_of(name);
        MultiPoly p(vars);
        Monomial m{std::vector<unsigned>(vars.size(), 0u)};
        m.exps[i] = 1;
        p.add_term(m, 1);
        return p;
    }

    const VarSet& vars() const { return vars_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    // Accumulate c into the coefficient of m, erasing exact cancellations.
    void add_term(const Monomial& m, const Rational& c) {
        if (pseries::is_zero(c)) return;
        auto [it, inserted] = terms_.try_emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (pseries::is_zero(it->second)) terms_.erase(it);
        }
    }

    // nullopt encodes degree -infinity (the zero polynomial).
    std::optional<int> total_degree() const {
        if (terms_.empty()) return std::nullopt;
        // Descending graded order: the first key has maximal degree.
        return static_cast<int>(terms_.begin()->first.total_degree());
    }

    Rational constant_term() const {
        Monomial zero_m{std::vector<unsigned>(vars_.size(), 0u)};
        auto it = terms_.find(zero_m);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    Rational coefficient(const Monomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    // Visit the terms of total degree exactly d. Keys are ordered by
    // descending degree, so the degree-d bucket is one contiguous range.
    template <typename F>
    void for_each_of_degree(unsigned d, F&& fn) const {
        for (const auto& [m, c] : terms_) {
            unsigned md = m.total_degree();
            if (md > d) continue;
            if (md < d) break;
            fn(m, c);
        }
    }

    MultiPoly homogeneous_component(unsigned d) const {
        MultiPoly r(vars_);
        for_each_of_degree(d, [&](const Monomial& m, const Rational& c) { r.add_term(m, c); });
        return r;
    }

    friend MultiPoly operator+(const MultiPoly& a, const MultiPoly& b) {
        require_same_vars(a.vars_, b.vars_, "poly_add");
        MultiPoly r = a;
        for (const auto& [m, c] : b.terms_) r.add_term(m, c);
        return r;
    }

    friend MultiPoly operator-(const MultiPoly& a) {
        MultiPoly r(a.vars_);
        for (const auto& [m, c] : a.terms_) r.terms_.emplace(m, -c);
        return r;
    }

    friend MultiPoly operator-(const MultiPoly& a, const MultiPoly& b) {
        require_same_vars(a.vars_, b.vars_, "poly_sub");
        MultiPoly r = a;
        for (const auto& [m, c] : b.terms_) r.add_term(m, -c);
        return r;
    }

    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
        require_same_vars(a.vars_, b.vars_, "poly_mul");
        MultiPoly r(a.vars_);
        for (const auto& [ma, ca] : a.terms_) {
            for (const auto& [mb, cb] : b.terms_) {
                Monomial m = ma;
                for (std::size_t i = 0; i < m.exps.size(); ++i) m.exps[i] += mb.exps[i];
                r.add_term(m, ca * cb);
            }
        }
        return r;
    }

    MultiPoly scaled(const Rational& c) const {
        MultiPoly r(vars_);
        if (pseries::is_zero(c)) return r;
        for (const auto& [m, coeff] : terms_) r.terms_.emplace(m, coeff * c);
        return r;
    }

    MultiPoly div_scalar(const Rational& c) const {
        if (pseries::is_zero(c)) throw DivisionByZero("poly_div_scalar: division by zero");
        return scaled(1 / c);
    }

    MultiPoly pow(unsigned n) const {
        MultiPoly result = one(vars_);
        MultiPoly base = *this;
        while (n > 0) {
            if (n & 1u) result = result * base;
            if (n >>= 1u) base = base * base;
        }
        return result;
    }

    friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
        return a.vars_ == b.vars_ && a.terms_ == b.terms_;
    }

    // Canonical text: terms in descending graded-lex order,
    // e.g. "x^2 + 2*x*y + y^2 - 1/3". Bit-exact across runs.
    std::string render() const {
        if (terms_.empty()) return "0";
        std::ostringstream out;
        bool first = true;
        for (const auto& [m, c] : terms_) {
            Rational a = abs(c);
            if (first) {
                if (sgn(c) < 0) out << "-";
                first = false;
            } else {
                out << (sgn(c) < 0 ? " - " : " + ");
            }
            bool constant_mono = m.total_degree() == 0;
            bool unit_coeff = a == 1;
            if (constant_mono || !unit_coeff) out << to_string(a);
            bool need_star = !constant_mono && !unit_coeff;
            for (std::size_t i = 0; i < m.exps.size(); ++i) {
                if (m.exps[i] == 0) continue;
                if (need_star) out << "*";
                out << vars_.name(i);
                if (m.exps[i] > 1) out << "^" << m.exps[i];
                need_star = true;
            }
        }
        return out.str();
    }

private:
    VarSet vars_;
    TermMap terms_;
};

// A homogeneous slice: every monomial has total degree exactly `degree`, or
// the polynomial is zero.
struct HomPoly {
    unsigned degree = 0;
    MultiPoly poly;

    bool well_formed() const {
        for (const auto& [m, c] : poly.terms())
            if (m.total_degree() != degree) return false;
        return true;
    }
};

inline HomPoly homogeneous_component(const MultiPoly& p, unsigned d) {
    return HomPoly{d, p.homogeneous_component(d)};
}

}  // namespace pseries
