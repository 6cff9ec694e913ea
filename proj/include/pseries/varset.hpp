#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <numeric>
#include <string>
#include <vector>

#include "errors.hpp"

namespace pseries {

// Ordered list of distinct variable names. The declaration order is fixed at
// creation and induces the canonical (graded-lex) term order everywhere.
class VarSet {
public:
    VarSet() = default;

    explicit VarSet(std::vector<std::string> names) : names_(std::move(names)) {
        for (std::size_t i = 0; i < names_.size(); ++i)
            for (std::size_t j = i + 1; j < names_.size(); ++j)
                if (names_[i] == names_[j])
                    throw VarSetMismatch("VarSet: duplicate variable '" + names_[i] + "'");
    }

    std::size_t size() const { return names_.size(); }
    const std::string& name(std::size_t i) const { return names_.at(i); }
    const std::vector<std::string>& names() const { return names_; }

    bool contains(const std::string& v) const {
        return std::find(names_.begin(), names_.end(), v) != names_.end();
    }

    // Index of a variable name; throws UnknownVariable if absent.
    std::size_t index_of(const std::string& v) const {
        auto it = std::find(names_.begin(), names_.end(), v);
        if (it == names_.end()) throw UnknownVariable("unknown variable '" + v + "'");
        return static_cast<std::size_t>(it - names_.begin());
    }

    friend bool operator==(const VarSet&, const VarSet&) = default;

private:
    std::vector<std::string> names_;
};

inline void require_same_vars(const VarSet& a, const VarSet& b, const char* op) {
    if (!(a == b))
        throw VarSetMismatch(std::string(op) + ": operands have different variable sets");
}

// Exponent vector over one VarSet.
struct Monomial {
    std::vector<unsigned> exps;

    unsigned total_degree() const {
        return std::accumulate(exps.begin(), exps.end(), 0u);
    }

    friend bool operator==(const Monomial&, const Monomial&) = default;
};

// Graded-lex, descending: higher total degree first; within a degree, a larger
// exponent on an earlier variable sorts first. Map iteration in this order is
// the canonical rendering order.
struct GradedLexDescending {
    bool operator()(const Monomial& a, const Monomial& b) const {
        unsigned da = a.total_degree(), db = b.total_degree();
        if (da != db) return da > db;
        return a.exps > b.exps;
    }
};

}  // namespace pseries
