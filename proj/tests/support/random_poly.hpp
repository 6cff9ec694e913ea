#pragma once

// Seeded random polynomial generation shared by the property suites.

#include <random>
#include <vector>

#include <pseries/multipoly.hpp>

namespace pseries::testsupport {

inline VarSet vars_xy() { return VarSet({"x", "y"}); }
inline VarSet vars_xyz() { return VarSet({"x", "y", "z"}); }

// Random sparse polynomial with total degree <= max_deg and small rational
// coefficients (possibly zero overall).
inline MultiPoly random_poly(std::mt19937& rng, const VarSet& vars, unsigned max_deg,
                             unsigned max_terms = 6) {
    std::uniform_int_distribution<unsigned> nterms(0, max_terms);
    std::uniform_int_distribution<unsigned> expo(0, max_deg);
    std::uniform_int_distribution<int> num(-9, 9);
    std::uniform_int_distribution<int> den(1, 4);
    MultiPoly p(vars);
    unsigned n = nterms(rng);
    for (unsigned t = 0; t < n; ++t) {
        Monomial m{std::vector<unsigned>(vars.size(), 0u)};
        unsigned remaining = max_deg;
        for (std::size_t i = 0; i < vars.size(); ++i) {
            unsigned e = expo(rng) % (remaining + 1);
            m.exps[i] = e;
            remaining -= e;
        }
        p.add_term(m, rational(num(rng), den(rng)));
    }
    return p;
}

// Random polynomial with a guaranteed nonzero constant term.
inline MultiPoly random_unit_poly(std::mt19937& rng, const VarSet& vars, unsigned max_deg) {
    MultiPoly p = random_poly(rng, vars, max_deg);
    Rational c = p.constant_term();
    if (is_zero(c)) {
        std::uniform_int_distribution<int> num(1, 9);
        p.add_term(Monomial{std::vector<unsigned>(vars.size(), 0u)}, rational(num(rng), 1));
    }
    return p;
}

}  // namespace pseries::testsupport
