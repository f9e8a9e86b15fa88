#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace simfrac {

// Domain-level failure (bad point id, unbuilt level, violated precondition...).
// Parse failures use ParseError from io.hpp instead.
struct SchemeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Ordered list of distinct tokens. Ids are positions in declaration order;
// declaration order is the tie-breaking order everywhere downstream.
class TokenSet {
public:
    TokenSet() = default;
    explicit TokenSet(std::vector<std::string> tokens);

    int size() const { return static_cast<int>(toks.size()); }
    const std::string& token(int id) const { return toks.at(id); }
    const std::vector<std::string>& tokens() const { return toks; }

    std::optional<int> find(const std::string& tok) const;
    int require(const std::string& tok) const; // throws SchemeError if unknown

    bool operator==(const TokenSet& other) const { return toks == other.toks; }

private:
    std::vector<std::string> toks;
    std::map<std::string, int> index;
};

using SymbolSet = TokenSet; // the space Y
using PointSet = TokenSet;  // X0, X1, Z ...

// The similarity scheme (X0, X1, Y) with phi: X0 -> X1 and pi: Y x X0 -> X1.
// The constructor enforces structural well-formedness (every map entry names
// a declared point); the mathematical invariants (phi injective, pi onto X1)
// are checked by validate(), which reports rather than throws.
struct FiniteScheme {
    SymbolSet Y;
    PointSet x0;
    PointSet x1;
    std::vector<int> phi;              // x0 id -> x1 id
    std::vector<std::vector<int>> pi;  // [y id][x0 id] -> x1 id

    FiniteScheme() = default;
    FiniteScheme(SymbolSet Y, PointSet x0, PointSet x1, std::vector<int> phi,
                 std::vector<std::vector<int>> pi);

    int pi_at(int y, int x0_id) const { return pi.at(y).at(x0_id); }

    friend bool operator==(const FiniteScheme&, const FiniteScheme&) = default;
};

struct Violation {
    std::string rule;    // e.g. "phi-not-injective"
    std::string witness; // human-readable witness
};

struct ValidationReport {
    bool ok = true;
    std::vector<Violation> violations;
};

// Checks that phi is injective and pi is surjective onto X1, reporting every
// violated rule with a concrete witness.
ValidationReport validate(const FiniteScheme& scheme);

// The essential part S: points of X0 taking part in an identification across
// two distinct symbols, i.e. x0 with pi(y,x0) = pi(y',x0') for some y != y'.
// Returned sorted by id.
std::vector<int> essential_part(const FiniteScheme& scheme);

struct DiscreteWitness {
    int symbol;  // y whose cell breaks discreteness
    int point_a; // two distinct X1 points of that cell
    int point_b; // lying in phi(X0)
};

// A scheme is discrete when each depth-1 cell {pi(y,x0) : x0 in X0} meets
// phi(X0) in at most one point. Sufficient for full injectivity.
std::pair<bool, std::optional<DiscreteWitness>> is_discrete(const FiniteScheme& scheme);

} // namespace simfrac
