#pragma once

#include <cassert>
#include <functional>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "multipoly.hpp"

namespace pseries {

class SeriesNode;
using SeriesHandle = std::shared_ptr<SeriesNode>;

struct DisplayStyle {
    unsigned max_terms = 1000000;
    unsigned max_degree_shown = 10;
};

// A lazily evaluated power series: a generator recipe, shared references to
// the operand series (ancestors), and an append-only cache of homogeneous
// parts. cache[d] is the degree-d part; precision is the highest cached
// degree (-1 when nothing is cached yet). Cache entries are never rewritten.
//
// Single-threaded use: all cache mutation happens inside homogeneous_part /
// update_precision calls on the owning thread.
class SeriesNode {
public:
    // gen(self, d) produces the degree-d part. It may read self.cache() at
    // degrees < d (self-referential recipes such as quotients) and may force
    // ancestor series, but must never request degree >= d of this node.
    using Generator = std::function<MultiPoly(SeriesNode&, unsigned)>;
    // Bulk driver that fills the cache through degree d by external means
    // (used by the Weierstrass update, which advances several series at once).
    using Ensure = std::function<void(unsigned)>;

    SeriesNode(VarSet vars, Generator gen, std::vector<SeriesHandle> ancestors,
               std::optional<std::string> label = std::nullopt)
        : vars_(std::move(vars)),
          gen_(std::move(gen)),
          ancestors_(std::move(ancestors)),
          label_(std::move(label)) {}

    const VarSet& vars() const { return vars_; }
    int precision() const { return static_cast<int>(cache_.size()) - 1; }
    const std::vector<MultiPoly>& cache() const { return cache_; }
    const std::vector<SeriesHandle>& ancestors() const { return ancestors_; }
    const std::optional<std::string>& label() const { return label_; }
    long generator_invocations() const { return invocations_; }

    void set_check_homogeneous(bool b) { check_homogeneous_ = b; }
    void set_ensure(Ensure e) { ensure_ = std::move(e); }
    void set_keepalive(std::shared_ptr<void> k) { keepalive_ = std::move(k); }

    // Seed the cache during construction (eager parts of from_polynomial,
    // the degree-0 part of a quotient, the zero part of a Weierstrass b).
    void seed_part(MultiPoly part) {
        assert(well_formed_part(part, static_cast<unsigned>(cache_.size())));
        cache_.push_back(std::move(part));
    }

    // Append the next part from outside the generator path (Weierstrass
    // update rounds). The part must be the one at degree precision()+1.
    void append_part(MultiPoly part) {
        assert(well_formed_part(part, static_cast<unsigned>(cache_.size())));
        cache_.push_back(std::move(part));
    }

    const MultiPoly& part(unsigned d) {
        if (static_cast<int>(d) <= precision()) return cache_[d];
        if (ensure_) {
            ensure_(d);
            assert(static_cast<int>(d) <= precision());
            return cache_[d];
        }
        if (generating_ >= 0)
            throw GeneratorDegreeMismatch(
                "recursive generation requested an uncomputed part of the node "
                "currently generating");
        for (unsigned i = static_cast<unsigned>(precision()) + 1; i <= d; ++i) {
            generating_ = static_cast<int>(i);
            ++invocations_;
            MultiPoly p;
            try {
                p = gen_(*this, i);
            } catch (...) {
                generating_ = -1;
                throw;
            }
            generating_ = -1;
            if (check_homogeneous_ && !well_formed_part(p, i))
                throw GeneratorDegreeMismatch(
                    "generator returned a non-homogeneous part at degree " + std::to_string(i));
            assert(well_formed_part(p, i));
            cache_.push_back(std::move(p));
        }
        return cache_[d];
    }

private:
    static bool well_formed_part(const MultiPoly& p, unsigned d) {
        return HomPoly{d, p}.well_formed();
    }

    VarSet vars_;
    std::vector<MultiPoly> cache_;
    Generator gen_;
    Ensure ensure_;
    std::vector<SeriesHandle> ancestors_;
    std::optional<std::string> label_;
    long invocations_ = 0;
    bool check_homogeneous_ = false;
    int generating_ = -1;
    std::shared_ptr<void> keepalive_;
};

inline const MultiPoly& homogeneous_part(const SeriesHandle& f, unsigned d) {
    return f->part(d);
}

inline int precision(const SeriesHandle& f) { return f->precision(); }

inline void update_precision(const SeriesHandle& f, unsigned d) { f->part(d); }

namespace detail {

inline std::optional<std::string> compose_label(
    const std::vector<SeriesHandle>& ops,
    const std::function<std::string(const std::vector<std::string>&)>& join) {
    std::vector<std::string> labels;
    labels.reserve(ops.size());
    for (const auto& h : ops) {
        if (!h->label()) return std::nullopt;
        labels.push_back(*h->label());
    }
    return join(labels);
}

}  // namespace detail

inline SeriesHandle from_polynomial(const MultiPoly& p) {
    auto node = std::make_shared<SeriesNode>(
        p.vars(),
        [p](SeriesNode&, unsigned d) { return p.homogeneous_component(d); },
        std::vector<SeriesHandle>{}, p.render());
    // Eagerly cache parts 0..deg(p); higher parts are generated as zero.
    int deg = p.total_degree().value_or(0);
    for (int d = 0; d <= deg; ++d) node->seed_part(p.homogeneous_component(static_cast<unsigned>(d)));
    return node;
}

inline SeriesHandle from_generator(std::function<MultiPoly(unsigned)> g, const VarSet& vars,
                                   std::optional<std::string> label = std::nullopt) {
    auto node = std::make_shared<SeriesNode>(
        vars, [g = std::move(g)](SeriesNode&, unsigned d) { return g(d); },
        std::vector<SeriesHandle>{}, std::move(label));
    node->set_check_homogeneous(true);
    return node;
}

inline SeriesHandle geometric_series(const VarSet& vars) {
    if (vars.size() == 0) throw EmptyVarSet("geometric_series: empty variable set");
    MultiPoly lin(vars);
    for (const auto& name : vars.names()) lin = lin + MultiPoly::variable(vars, name);
    return std::make_shared<SeriesNode>(
        vars, [lin](SeriesNode&, unsigned d) { return lin.pow(d); },
        std::vector<SeriesHandle>{});
}

inline SeriesHandle sum_of_all_monomials(const VarSet& vars) {
    if (vars.size() == 0) throw EmptyVarSet("sum_of_all_monomials: empty variable set");
    return std::make_shared<SeriesNode>(
        vars,
        [vars](SeriesNode&, unsigned d) {
            MultiPoly r(vars);
            // Enumerate all exponent vectors of total degree d.
            std::vector<unsigned> exps(vars.size(), 0u);
            auto rec = [&](auto&& self, std::size_t i, unsigned rem) -> void {
                if (i + 1 == exps.size()) {
                    exps[i] = rem;
                    r.add_term(Monomial{exps}, 1);
                    return;
                }
                for (unsigned e = 0; e <= rem; ++e) {
                    exps[i] = e;
                    self(self, i + 1, rem - e);
                }
            };
            rec(rec, 0, d);
            return r;
        },
        std::vector<SeriesHandle>{});
}

// c_1*f_1 + ... + c_m*f_m with polynomial coefficients, or the plain sum when
// no coefficients are given. Fully lazy.
inline SeriesHandle add_many(std::vector<SeriesHandle> terms,
                             std::vector<MultiPoly> coeffs = {}) {
    if (terms.empty()) throw EmptyList("add_many: empty term list");
    const VarSet& vars = terms[0]->vars();
    for (const auto& t : terms) require_same_vars(vars, t->vars(), "add_many");
    if (!coeffs.empty()) {
        if (coeffs.size() != terms.size())
            throw LengthMismatch("add_many: coefficient count differs from term count");
        for (const auto& c : coeffs) require_same_vars(vars, c.vars(), "add_many");
    }
    auto label = detail::compose_label(terms, [&](const std::vector<std::string>& ls) {
        std::ostringstream out;
        for (std::size_t i = 0; i < ls.size(); ++i) {
            if (i) out << " + ";
            if (!coeffs.empty()) out << "(" << coeffs[i].render() << ")*";
            out << "(" << ls[i] << ")";
        }
        return out.str();
    });
    auto node = std::make_shared<SeriesNode>(
        vars,
        [terms, coeffs, vars](SeriesNode&, unsigned d) {
            MultiPoly acc(vars);
            for (std::size_t i = 0; i < terms.size(); ++i) {
                if (coeffs.empty()) {
                    acc = acc + homogeneous_part(terms[i], d);
                } else {
                    int cdeg_opt = coeffs[i].total_degree().value_or(-1);
                    if (cdeg_opt < 0) continue;  // zero coefficient
                    unsigned kmax = std::min(d, static_cast<unsigned>(cdeg_opt));
                    for (unsigned k = 0; k <= kmax; ++k) {
                        MultiPoly ck = coeffs[i].homogeneous_component(k);
                        if (ck.is_zero()) continue;  // skip: do not force the operand
                        acc = acc + ck * homogeneous_part(terms[i], d - k);
                    }
                }
            }
            return acc;
        },
        terms, std::move(label));
    return node;
}

inline SeriesHandle negate(const SeriesHandle& f) {
    std::optional<std::string> label;
    if (f->label()) label = "-(" + *f->label() + ")";
    return std::make_shared<SeriesNode>(
        f->vars(), [f](SeriesNode&, unsigned d) { return -homogeneous_part(f, d); },
        std::vector<SeriesHandle>{f}, std::move(label));
}

inline SeriesHandle subtract(const SeriesHandle& f, const SeriesHandle& g) {
    require_same_vars(f->vars(), g->vars(), "subtract");
    std::optional<std::string> label;
    if (f->label() && g->label()) label = "(" + *f->label() + ") - (" + *g->label() + ")";
    return std::make_shared<SeriesNode>(
        f->vars(),
        [f, g](SeriesNode&, unsigned d) {
            return homogeneous_part(f, d) - homogeneous_part(g, d);
        },
        std::vector<SeriesHandle>{f, g}, std::move(label));
}

// Binary lazy product. The left part at each convolution index is inspected
// first; a zero left part skips forcing the right operand at the mirrored
// degree. The Weierstrass update relies on this: products b_j * c_i never
// force c_i at the round's top degree because b_j has order >= 1.
inline SeriesHandle multiply(const SeriesHandle& f, const SeriesHandle& g) {
    require_same_vars(f->vars(), g->vars(), "multiply");
    std::optional<std::string> label;
    if (f->label() && g->label()) label = "(" + *f->label() + ")*(" + *g->label() + ")";
    return std::make_shared<SeriesNode>(
        f->vars(),
        [f, g](SeriesNode&, unsigned d) {
            MultiPoly acc(f->vars());
            for (unsigned k = 0; k <= d; ++k) {
                MultiPoly lf = homogeneous_part(f, k);  // copy: forcing g may grow f's cache
                if (lf.is_zero()) continue;
                acc = acc + lf * homogeneous_part(g, d - k);
            }
            return acc;
        },
        std::vector<SeriesHandle>{f, g}, std::move(label));
}

inline SeriesHandle mul_many(const std::vector<SeriesHandle>& factors) {
    if (factors.empty()) throw EmptyList("mul_many: empty factor list");
    SeriesHandle acc = factors[0];
    for (std::size_t i = 1; i < factors.size(); ++i) acc = multiply(acc, factors[i]);
    return acc;
}

// Lazy quotient. Forces exactly degree 0 of both operands at construction and
// seeds cache[0] of the result; later parts satisfy
//   q_(d) = (f_(d) - sum_{i=1..d} g_(i) q_(d-i)) / g_(0).
inline SeriesHandle divide(const SeriesHandle& f, const SeriesHandle& g) {
    require_same_vars(f->vars(), g->vars(), "divide");
    Rational g0 = homogeneous_part(g, 0).constant_term();
    if (is_zero(g0)) throw NotInvertible("divide: divisor has zero constant term");
    std::optional<std::string> label;
    if (f->label() && g->label()) label = "(" + *f->label() + ")/(" + *g->label() + ")";
    auto node = std::make_shared<SeriesNode>(
        f->vars(),
        [f, g, g0](SeriesNode& self, unsigned d) {
            MultiPoly s = homogeneous_part(f, d);
            for (unsigned i = 1; i <= d; ++i) {
                MultiPoly gi = homogeneous_part(g, i);
                if (gi.is_zero()) continue;
                s = s - gi * self.cache()[d - i];
            }
            return s.div_scalar(g0);
        },
        std::vector<SeriesHandle>{f, g}, std::move(label));
    node->seed_part(homogeneous_part(f, 0).div_scalar(g0));
    return node;
}

inline SeriesHandle series_one(const VarSet& vars) {
    return from_polynomial(MultiPoly::one(vars));
}

inline SeriesHandle inverse(const SeriesHandle& f) {
    return divide(series_one(f->vars()), f);
}

inline SeriesHandle exponentiate(const SeriesHandle& f, long n) {
    if (n < 0) return exponentiate(inverse(f), -n);
    if (n == 0) return series_one(f->vars());
    // Binary powering over lazy products.
    SeriesHandle result;
    SeriesHandle base = f;
    unsigned long e = static_cast<unsigned long>(n);
    while (e > 0) {
        if (e & 1ul) result = result ? multiply(result, base) : base;
        if (e >>= 1ul) base = multiply(base, base);
    }
    return result;
}

inline MultiPoly truncate(const SeriesHandle& f, unsigned d) {
    MultiPoly acc(f->vars());
    for (unsigned k = 0; k <= d; ++k) acc = acc + homogeneous_part(f, k);
    return acc;
}

inline Rational get_coefficient(const SeriesHandle& f, const Monomial& m) {
    return homogeneous_part(f, m.total_degree()).coefficient(m);
}

// Smallest d <= bound with a nonzero part; nullopt means the series is zero
// through the bound (lazy series cannot prove ord = infinity).
inline std::optional<unsigned> order(const SeriesHandle& f, unsigned bound) {
    for (unsigned d = 0; d <= bound; ++d)
        if (!homogeneous_part(f, d).is_zero()) return d;
    return std::nullopt;
}

// Truncated rendering with an explicit big-O tail, e.g. "1 + x + y + O(deg 2)".
// Terms appear by ascending degree; within a degree, descending graded-lex.
inline std::string render(const SeriesHandle& f, const DisplayStyle& style,
                          bool show_label = false) {
    std::ostringstream out;
    unsigned printed = 0;
    bool first = true;
    for (unsigned d = 0; d <= style.max_degree_shown && printed < style.max_terms; ++d) {
        const MultiPoly part = homogeneous_part(f, d);
        for (const auto& [m, c] : part.terms()) {
            if (printed >= style.max_terms) break;
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
                out << f->vars().name(i);
                if (m.exps[i] > 1) out << "^" << m.exps[i];
                need_star = true;
            }
            ++printed;
        }
    }
    if (first) out << "0";
    out << " + O(deg " << (style.max_degree_shown + 1) << ")";
    if (show_label && f->label()) out << " = " << *f->label();
    return out.str();
}

}  // namespace pseries
