#pragma once

#include <algorithm>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "errors.hpp"
#include "series.hpp"

namespace pseries {

// Univariate polynomial over power series: a dense array of lazy series
// coefficients a_0..a_k plus a main variable distinct from the coefficient
// variables. An empty coefficient array is the zero polynomial.
class Upops {
public:
    Upops(std::string main_var, VarSet coeff_vars, std::vector<SeriesHandle> coeffs)
        : main_var_(std::move(main_var)), vars_(std::move(coeff_vars)), coeffs_(std::move(coeffs)) {
        if (vars_.contains(main_var_))
            throw VariableClash("Upops: main variable '" + main_var_ +
                                "' appears in the coefficient variable set");
        for (const auto& c : coeffs_) require_same_vars(vars_, c->vars(), "Upops");
    }

    const std::string& main_variable() const { return main_var_; }
    const VarSet& coeff_vars() const { return vars_; }
    const std::vector<SeriesHandle>& coefficients() const { return coeffs_; }

    std::optional<int> degree() const {
        if (coeffs_.empty()) return std::nullopt;
        return static_cast<int>(coeffs_.size()) - 1;
    }

    const SeriesHandle& coefficient(std::size_t i) const {
        if (i >= coeffs_.size())
            throw IndexOutOfRange("Upops: coefficient index " + std::to_string(i) +
                                  " beyond degree");
        return coeffs_[i];
    }

    // Coefficient variables followed by the main variable.
    VarSet combined_vars() const {
        std::vector<std::string> names = vars_.names();
        names.push_back(main_var_);
        return VarSet(std::move(names));
    }

private:
    std::string main_var_;
    VarSet vars_;
    std::vector<SeriesHandle> coeffs_;
};

using UpopsCoeff = std::variant<SeriesHandle, MultiPoly>;

// Dense construction; MultiPoly entries are coerced via from_polynomial.
// Trailing coefficients given as the zero polynomial are trimmed so degree is
// meaningful; lazily-zero series coefficients are kept as given.
inline Upops upops_from_coefficients(const std::string& main_var, const VarSet& vars,
                                     std::vector<UpopsCoeff> coeffs) {
    while (!coeffs.empty()) {
        const auto* p = std::get_if<MultiPoly>(&coeffs.back());
        if (p && p->is_zero())
            coeffs.pop_back();
        else
            break;
    }
    std::vector<SeriesHandle> out;
    out.reserve(coeffs.size());
    for (auto& c : coeffs) {
        if (auto* h = std::get_if<SeriesHandle>(&c))
            out.push_back(std::move(*h));
        else
            out.push_back(from_polynomial(std::get<MultiPoly>(c)));
    }
    return Upops(main_var, vars, std::move(out));
}

// Split a polynomial by powers of the main variable; the remaining variables
// become the coefficient VarSet (declaration order preserved).
inline Upops upops_from_polynomial(const MultiPoly& p, const std::string& main_var) {
    const VarSet& all = p.vars();
    std::size_t mv = all.index_of(main_var);
    std::vector<std::string> rest;
    for (std::size_t i = 0; i < all.size(); ++i)
        if (i != mv) rest.push_back(all.name(i));
    VarSet vars(rest);

    std::vector<MultiPoly> by_power;
    for (const auto& [m, c] : p.terms()) {
        unsigned e = m.exps[mv];
        if (by_power.size() <= e) by_power.resize(e + 1, MultiPoly::zero(vars));
        Monomial rm{std::vector<unsigned>{}};
        rm.exps.reserve(all.size() - 1);
        for (std::size_t i = 0; i < m.exps.size(); ++i)
            if (i != mv) rm.exps.push_back(m.exps[i]);
        by_power[e].add_term(rm, c);
    }
    std::vector<UpopsCoeff> coeffs(by_power.begin(), by_power.end());
    return upops_from_coefficients(main_var, vars, std::move(coeffs));
}

inline void require_compatible(const Upops& f, const Upops& g, const char* op) {
    if (f.main_variable() != g.main_variable())
        throw VariableClash(std::string(op) + ": different main variables");
    require_same_vars(f.coeff_vars(), g.coeff_vars(), op);
}

inline Upops upops_add(const Upops& f, const Upops& g) {
    require_compatible(f, g, "upops_add");
    std::size_t n = std::max(f.coefficients().size(), g.coefficients().size());
    std::vector<SeriesHandle> coeffs;
    coeffs.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        bool hf = i < f.coefficients().size();
        bool hg = i < g.coefficients().size();
        if (hf && hg)
            coeffs.push_back(add_many({f.coefficients()[i], g.coefficients()[i]}));
        else
            coeffs.push_back(hf ? f.coefficients()[i] : g.coefficients()[i]);
    }
    return Upops(f.main_variable(), f.coeff_vars(), std::move(coeffs));
}

inline Upops upops_negate(const Upops& f) {
    std::vector<SeriesHandle> coeffs;
    coeffs.reserve(f.coefficients().size());
    for (const auto& c : f.coefficients()) coeffs.push_back(negate(c));
    return Upops(f.main_variable(), f.coeff_vars(), std::move(coeffs));
}

inline Upops upops_mul(const Upops& f, const Upops& g) {
    require_compatible(f, g, "upops_mul");
    if (f.coefficients().empty() || g.coefficients().empty())
        return Upops(f.main_variable(), f.coeff_vars(), {});
    std::size_t kf = f.coefficients().size() - 1, kg = g.coefficients().size() - 1;
    std::vector<SeriesHandle> coeffs;
    coeffs.reserve(kf + kg + 1);
    for (std::size_t l = 0; l <= kf + kg; ++l) {
        std::vector<SeriesHandle> terms;
        for (std::size_t i = 0; i <= l && i <= kf; ++i) {
            std::size_t j = l - i;
            if (j > kg) continue;
            terms.push_back(multiply(f.coefficients()[i], g.coefficients()[j]));
        }
        coeffs.push_back(add_many(std::move(terms)));
    }
    return Upops(f.main_variable(), f.coeff_vars(), std::move(coeffs));
}

inline Upops scale_by_series(const Upops& f, const SeriesHandle& s) {
    require_same_vars(f.coeff_vars(), s->vars(), "scale_by_series");
    std::vector<SeriesHandle> coeffs;
    coeffs.reserve(f.coefficients().size());
    for (const auto& c : f.coefficients()) coeffs.push_back(multiply(c, s));
    return Upops(f.main_variable(), f.coeff_vars(), std::move(coeffs));
}

inline Upops divide_upops_by_unit_series(const Upops& f, const SeriesHandle& u) {
    require_same_vars(f.coeff_vars(), u->vars(), "divide_upops_by_unit_series");
    std::vector<SeriesHandle> coeffs;
    coeffs.reserve(f.coefficients().size());
    for (const auto& c : f.coefficients()) coeffs.push_back(divide(c, u));
    return Upops(f.main_variable(), f.coeff_vars(), std::move(coeffs));
}

inline MultiPoly upops_truncate(const Upops& f, unsigned d) {
    VarSet all = f.combined_vars();
    MultiPoly acc(all);
    std::size_t mv = all.size() - 1;
    for (std::size_t i = 0; i < f.coefficients().size(); ++i) {
        MultiPoly ci = truncate(f.coefficients()[i], d);
        for (const auto& [m, c] : ci.terms()) {
            Monomial em = m;
            em.exps.push_back(static_cast<unsigned>(i));
            (void)mv;
            acc.add_term(em, c);
        }
    }
    return acc;
}

inline void upops_update_precision(const Upops& f, unsigned d) {
    for (const auto& c : f.coefficients()) update_precision(c, d);
}

inline std::optional<int> upops_precision(const Upops& f) {
    std::optional<int> p;
    for (const auto& c : f.coefficients()) {
        int cp = c->precision();
        p = p ? std::min(*p, cp) : cp;
    }
    return p;
}

// f(0,...,0, X_{n+1}): forces only degree 0 of each coefficient.
inline MultiPoly evaluate_at_origin(const Upops& f) {
    VarSet uv(std::vector<std::string>{f.main_variable()});
    MultiPoly r(uv);
    for (std::size_t i = 0; i < f.coefficients().size(); ++i) {
        Rational c = homogeneous_part(f.coefficients()[i], 0).constant_term();
        r.add_term(Monomial{{static_cast<unsigned>(i)}}, c);
    }
    return r;
}

// Descending powers of the main variable, each coefficient parenthesized in
// series render() format.
inline std::string upops_render(const Upops& f, const DisplayStyle& style) {
    if (f.coefficients().empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (std::size_t i = f.coefficients().size(); i-- > 0;) {
        if (!first) out << " + ";
        first = false;
        out << "(" << render(f.coefficients()[i], style) << ")";
        if (i >= 1) {
            out << "*" << f.main_variable();
            if (i >= 2) out << "^" << i;
        }
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// Weierstrass preparation
// ---------------------------------------------------------------------------

// Shared state of one preparation: the b's and c's advance simultaneously,
// one whole degree per round. After round r every b_i and every non-aliased
// c_i has cache filled through degree r.
struct WeierstrassState {
    VarSet vars;
    std::vector<SeriesHandle> a;  // input coefficients a_0..a_{d+m}
    std::vector<SeriesHandle> b;  // d entries, each with b_i(0) = 0
    std::vector<SeriesHandle> c;  // m+1 entries; c[m] aliases a[d+m]
    std::vector<SeriesHandle> F;  // helpers F_i = a_i - sum_{j<i} b_j c_{i-j}
    Rational c0_const;            // c_0(0), nonzero
    unsigned d = 0, m = 0;
    unsigned next_r = 1;  // all b's and c's cached through next_r - 1
    bool advancing = false;

    void advance_to(unsigned target) {
        if (advancing)
            throw GeneratorDegreeMismatch(
                "weierstrass update requested a degree at or above the active round");
        advancing = true;
        try {
            run_rounds(target);
        } catch (...) {
            advancing = false;
            throw;
        }
        advancing = false;
    }

private:
    void run_rounds(unsigned target) {
        while (next_r <= target) {
            unsigned r = next_r;
            // First phase: b_i(r) in ascending i. F_i reads b_j(r) only for
            // j < i, which this order has already produced.
            for (unsigned i = 0; i < d; ++i) {
                MultiPoly s(vars);
                for (unsigned k = 1; k + 1 <= r; ++k) {
                    MultiPoly c0k = homogeneous_part(c[0], k);
                    if (c0k.is_zero()) continue;
                    s = s + b[i]->cache()[r - k] * c0k;
                }
                MultiPoly fir = homogeneous_part(F[i], r);
                b[i]->append_part((fir - s).div_scalar(c0_const));
            }
            // Second phase: c_i(r). Each reads b's at degrees <= r and c's at
            // degrees <= r-1 only, so any order works; ascending for
            // determinism. c[m] aliases a[d+m] and is simply forced.
            for (unsigned i = 0; i <= m; ++i) {
                if (i == m) {
                    homogeneous_part(c[m], r);
                    continue;
                }
                MultiPoly s = homogeneous_part(a[d + i], r);
                for (unsigned j = 0; j < d; ++j) {
                    unsigned idx = d + i - j;
                    if (idx > m) continue;
                    for (unsigned k = 1; k <= r; ++k) {
                        MultiPoly bjk = b[j]->cache()[k];
                        if (bjk.is_zero()) continue;
                        s = s - bjk * homogeneous_part(c[idx], r - k);
                    }
                }
                c[i]->append_part(std::move(s));
            }
            next_r = r + 1;
        }
    }
};

// Unique factorization f = alpha * p with p monic of degree d (the index of
// the first unit coefficient), the non-leading coefficients of p of order
// >= 1, and alpha a unit. Both parts are lazy and share one update.
inline std::pair<Upops, Upops> weierstrass_preparation(const Upops& f) {
    const auto& a = f.coefficients();
    const VarSet& vars = f.coeff_vars();
    std::optional<unsigned> dopt;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!is_zero(homogeneous_part(a[i], 0).constant_term())) {
            dopt = static_cast<unsigned>(i);
            break;
        }
    }
    if (!dopt)
        throw NotPrepared(
            "weierstrass_preparation: no coefficient with a nonzero constant term");
    unsigned d = *dopt;
    if (d == 0) {
        Upops p(f.main_variable(), vars, {series_one(vars)});
        return {std::move(p), f};
    }
    unsigned k = static_cast<unsigned>(a.size()) - 1;
    unsigned m = k - d;

    auto state = std::make_shared<WeierstrassState>();
    state->vars = vars;
    state->a = a;
    state->d = d;
    state->m = m;

    auto ensure = [state](unsigned deg) { state->advance_to(deg); };
    auto dead_gen = [](SeriesNode&, unsigned) -> MultiPoly {
        throw GeneratorDegreeMismatch("weierstrass series must be driven by the shared update");
    };

    // b_i: order >= 1, driven by the update.
    for (unsigned i = 0; i < d; ++i) {
        auto node = std::make_shared<SeriesNode>(vars, dead_gen, std::vector<SeriesHandle>{});
        node->seed_part(MultiPoly::zero(vars));
        node->set_ensure(ensure);
        node->set_keepalive(state);
        state->b.push_back(std::move(node));
    }
    // c_i for i < m: driven by the update, seeded with a_{d+i}(0) (the b's
    // contribute nothing at degree 0). c_m aliases a_{d+m} directly.
    state->c.resize(m + 1);
    for (unsigned i = 0; i < m; ++i) {
        auto node = std::make_shared<SeriesNode>(vars, dead_gen, std::vector<SeriesHandle>{});
        node->seed_part(homogeneous_part(a[d + i], 0));
        node->set_ensure(ensure);
        node->set_keepalive(state);
        state->c[i] = std::move(node);
    }
    state->c[m] = a[d + m];
    homogeneous_part(state->c[m], 0);
    state->c0_const = homogeneous_part(state->c[0], 0).constant_term();

    // F_i = a_i - sum_{j<i} b_j c_{i-j}, as ordinary lazy m-ary sums. The b
    // factor is on the left so its zero degree-0 part skips forcing the c's
    // at the round's top degree.
    for (unsigned i = 0; i < d; ++i) {
        std::vector<SeriesHandle> terms{a[i]};
        std::vector<MultiPoly> coeffs{MultiPoly::one(vars)};
        for (unsigned j = 0; j < i; ++j) {
            unsigned idx = i - j;
            if (idx > m) continue;
            terms.push_back(multiply(state->b[j], state->c[idx]));
            coeffs.push_back(MultiPoly::constant(vars, -1));
        }
        state->F.push_back(add_many(std::move(terms), std::move(coeffs)));
    }

    std::vector<SeriesHandle> p_coeffs = state->b;
    p_coeffs.push_back(series_one(vars));
    Upops p(f.main_variable(), vars, std::move(p_coeffs));
    Upops alpha(f.main_variable(), vars, state->c);
    return {std::move(p), std::move(alpha)};
}

// ---------------------------------------------------------------------------
// Taylor shift
// ---------------------------------------------------------------------------

// f(main_var + c), lazily: coefficient j of the result is the m-ary sum
// sum_{i>=j} binom(i,j) c^{i-j} a_i.
inline Upops taylor_shift(const Upops& f, const Rational& c) {
    const auto& a = f.coefficients();
    if (a.empty()) return f;
    const VarSet& vars = f.coeff_vars();
    unsigned k = static_cast<unsigned>(a.size()) - 1;
    std::vector<SeriesHandle> out;
    out.reserve(k + 1);
    for (unsigned j = 0; j <= k; ++j) {
        std::vector<SeriesHandle> terms;
        std::vector<MultiPoly> coeffs;
        for (unsigned i = j; i <= k; ++i) {
            Rational t = Rational(binomial(i, j)) * rat_pow(c, i - j);
            terms.push_back(a[i]);
            coeffs.push_back(MultiPoly::constant(vars, t));
        }
        out.push_back(add_many(std::move(terms), std::move(coeffs)));
    }
    return Upops(f.main_variable(), vars, std::move(out));
}

// ---------------------------------------------------------------------------
// Rational roots and Hensel factorization
// ---------------------------------------------------------------------------

struct RationalRoots {
    std::vector<std::pair<Rational, unsigned>> roots;  // ascending by root
    MultiPoly residual;  // monic; constant 1 iff p splits over Q
    Rational leading;    // p = leading * prod (X - root)^mult * residual
};

namespace detail {

inline std::vector<Integer> positive_divisors(Integer n) {
    n = abs(n);
    std::vector<Integer> divs;
    for (Integer i = 1; i * i <= n; ++i) {
        if (n % i == 0) {
            divs.push_back(i);
            if (i * i != n) divs.push_back(n / i);
        }
    }
    std::sort(divs.begin(), divs.end());
    return divs;
}

// Evaluate then deflate: divides coeffs (low to high) by (X - r) in place,
// returning true when the remainder is zero.
inline bool deflate_at(std::vector<Rational>& coeffs, const Rational& r) {
    std::vector<Rational> q(coeffs.size() - 1);
    Rational carry = coeffs.back();
    for (std::size_t i = coeffs.size() - 1; i-- > 0;) {
        q[i] = carry;
        carry = coeffs[i] + r * carry;
    }
    if (!is_zero(carry)) return false;
    coeffs = std::move(q);
    return true;
}

}  // namespace detail

// All rational roots with multiplicities, via rational-root candidates plus
// synthetic-division deflation. No error on splitting failure: the residual
// carries the non-constant part.
inline RationalRoots rational_roots(const MultiPoly& p) {
    if (p.vars().size() != 1)
        throw VarSetMismatch("rational_roots: expected a univariate polynomial");
    if (p.is_zero()) throw DivisionByZero("rational_roots: zero polynomial");
    unsigned n = static_cast<unsigned>(*p.total_degree());
    std::vector<Rational> coeffs(n + 1, Rational(0));
    for (const auto& [m, c] : p.terms()) coeffs[m.exps[0]] = c;

    RationalRoots out;
    out.leading = coeffs[n];
    for (auto& c : coeffs) c /= out.leading;  // monic normalization

    std::vector<std::pair<Rational, unsigned>>& roots = out.roots;

    // Root 0: strip the power of X.
    unsigned v = 0;
    while (v < coeffs.size() - 1 && is_zero(coeffs[v])) ++v;
    if (v > 0) {
        roots.emplace_back(Rational(0), v);
        coeffs.erase(coeffs.begin(), coeffs.begin() + v);
    }

    if (coeffs.size() > 1) {
        // Clear denominators to get integer candidates p/q, p | a0, q | a_n.
        Integer lcm = 1;
        for (const auto& c : coeffs) {
            Integer den = c.get_den();
            lcm = lcm / gcd(lcm, den) * den;
        }
        Integer a0 = Rational(coeffs.front() * lcm).get_num();
        Integer an = Rational(coeffs.back() * lcm).get_num();
        std::vector<Rational> candidates;
        for (const Integer& num : detail::positive_divisors(a0)) {
            for (const Integer& den : detail::positive_divisors(an)) {
                Rational cand = rational(num, den);
                candidates.push_back(cand);
                candidates.push_back(-cand);
            }
        }
        std::sort(candidates.begin(), candidates.end());
        candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
        for (const Rational& cand : candidates) {
            unsigned mult = 0;
            while (coeffs.size() > 1 && detail::deflate_at(coeffs, cand)) ++mult;
            if (mult > 0) roots.emplace_back(cand, mult);
        }
    }
    std::sort(roots.begin(), roots.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });

    MultiPoly residual(p.vars());
    for (unsigned i = 0; i < coeffs.size(); ++i)
        residual.add_term(Monomial{{i}}, coeffs[i]);
    out.residual = std::move(residual);
    return out;
}

struct HenselFactor {
    Upops factor;
    Rational root;
    unsigned multiplicity;
};

struct FactorizationResult {
    SeriesHandle leading_unit;
    std::vector<HenselFactor> factors;
};

// Factorization via iterated Taylor shift + Weierstrass preparation:
// f = a_k * f_1 ... f_r with each f_i monic of degree k_i and
// evaluate_at_origin(f_i) = (X - c_i)^{k_i}. Factors are returned at
// precision 0 and resumable through upops_update_precision.
inline FactorizationResult hensel_factorize(const Upops& f) {
    const auto& a = f.coefficients();
    if (a.empty()) throw LeadingCoefficientNotUnit("hensel_factorize: zero polynomial");
    SeriesHandle lead = a.back();
    if (is_zero(homogeneous_part(lead, 0).constant_term()))
        throw LeadingCoefficientNotUnit("hensel_factorize: leading coefficient is not a unit");

    Upops fstar = divide_upops_by_unit_series(f, lead);
    MultiPoly fbar = evaluate_at_origin(fstar);
    RationalRoots rr = rational_roots(fbar);
    if (rr.residual.total_degree().value_or(0) > 0)
        throw RootsNotRational("hensel_factorize: origin evaluation has no rational splitting",
                               rr.residual.render());

    FactorizationResult out;
    out.leading_unit = lead;
    for (const auto& [root, mult] : rr.roots) {
        Upops g = taylor_shift(fstar, root);
        auto [p, alpha] = weierstrass_preparation(g);
        Upops fi = taylor_shift(p, -root);
        fstar = taylor_shift(alpha, -root);
        upops_update_precision(fi, 0);
        out.factors.push_back(HenselFactor{std::move(fi), root, mult});
    }
    return out;
}

}  // namespace pseries
