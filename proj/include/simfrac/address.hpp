#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "simfrac/tower.hpp"

namespace simfrac {

// u . v^omega over Y, normalized so that equal sequences have equal fields:
// the period is reduced to its primitive root, then the prefix is shortened
// as far as possible by absorbing rotations of the period.
struct UltimatelyPeriodicAddress {
    Word prefix;  // u, possibly empty
    Word period;  // v, nonempty

    static UltimatelyPeriodicAddress make(Word u, Word v);

    int at(int i) const; // i-th symbol, 0-based
    Word truncate(int p) const;
    UltimatelyPeriodicAddress tail() const;

    friend bool operator==(const UltimatelyPeriodicAddress&,
                           const UltimatelyPeriodicAddress&) = default;
};

// Witness subset of X0: the points x0 with pi_{p,0}(prefix, x0) equal to the
// embedded base point, evolved one symbol at a time.
struct TransferState {
    std::vector<bool> witnesses;

    static TransferState none(int n) { return TransferState{std::vector<bool>(n, false)}; }
    static TransferState single(int n, int x0);

    bool empty() const;
    int count() const;
    bool test(int x0) const { return witnesses[x0]; }

    friend bool operator==(const TransferState&, const TransferState&) = default;
    friend bool operator<(const TransferState& a, const TransferState& b) {
        return a.witnesses < b.witnesses;
    }
};

// One transfer step: {x0 : pi(y, x0) in phi(V)}. Monotone in V; step of the
// empty set is empty.
TransferState step(const FiniteScheme& scheme, const TransferState& v, int y);

// The witness set at depth |prefix| for base point x in X_n, computed from
// the tower directly: {x0 : pi_{|prefix|,0}(prefix, x0) = phi_{|prefix|,n}(x)}.
// Iterated step reproduces this set symbol by symbol.
TransferState witness_set(const Tower& tower, int n, int x, const Word& prefix);

// Depth-p truncation of the address set Gamma_n(x): the prefix tree of all
// words w, n <= |w| <= p, whose cell contains the embedded base point.
// layers[k] holds the depth-(n+k) words in lexicographic order.
struct ShadowTree {
    int base_level = 0;
    int base_point = 0;
    int depth = 0;
    std::vector<std::vector<std::pair<Word, TransferState>>> layers;

    const std::vector<std::pair<Word, TransferState>>& leaves() const { return layers.back(); }
    std::size_t node_count() const;
    bool contains(const Word& w) const;
    std::vector<Word> words_at_depth(int d) const;
};

ShadowTree shadow(const Tower& tower, int n, int x, int p);

// Exact decision of addr in Gamma_n(x) by iterating the transfer automaton
// through the period with cycle detection on (phase, witness set).
bool gamma_contains(const Tower& tower, int n, int x, const UltimatelyPeriodicAddress& addr);

enum class Verdict { RELATED, UNRELATED, UNKNOWN_UP_TO_BOUND };

struct RelationEvidence {
    Verdict verdict = Verdict::UNKNOWN_UP_TO_BOUND;
    bool reflexive = false;                        // RELATED because a1 == a2
    std::optional<std::pair<int, int>> witness;    // (level, point), both addresses in Gamma
    int bound = 0;                                 // maxlevel used
    int hat_case = 0;                              // 1 or 2 for hat_related routes
    std::optional<std::pair<int, int>> case2_pair; // (x0, x0') for hat case 2
    std::optional<int> disjoint_depth;             // cells provably disjoint here (UNRELATED)
};

// Semidecision of the relation R: searches levels n <= maxlevel for a point
// whose Gamma-set contains both addresses. Candidates are the shared depth-n
// cells; an empty candidate set at any depth proves unrelatedness outright
// (relatedness at any level forces nonempty shared cells at every depth).
RelationEvidence related(const Tower& tower, const UltimatelyPeriodicAddress& a1,
                         const UltimatelyPeriodicAddress& a2, int maxlevel);

// The two-case relation whose equivalence closure matches R's: same first
// symbol with related tails, or a depth-1 gluing pi(y,x0) = pi(y',x0') with
// each tail in the Gamma-set of its gluing point.
RelationEvidence hat_related(const Tower& tower, const UltimatelyPeriodicAddress& a1,
                             const UltimatelyPeriodicAddress& a2, int maxlevel);

} // namespace simfrac
