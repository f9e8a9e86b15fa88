#pragma once

#include <optional>
#include <string>
#include <vector>

#include "simfrac/scheme.hpp"

namespace simfrac {

// A word over Y, as symbol ids. Words compare lexicographically in
// declaration order; all comparisons happen between words of equal length.
using Word = std::vector<int>;

// Representative of a point of X_n: the lexicographically least (word, x0)
// in Y^n x X0 projecting onto it under pi_{n,0}.
struct RepWord {
    Word word;
    int x0 = 0;

    friend bool operator<(const RepWord& a, const RepWord& b) {
        if (a.word != b.word)
            return a.word < b.word;
        return a.x0 < b.x0;
    }
    friend bool operator==(const RepWord& a, const RepWord& b) = default;
};

// One floor of the approximation tower. Point ids are 0..size-1; at levels
// 0 and 1 they follow the declaration order of X0/X1, from level 2 on they
// follow the lexicographic order of the representatives.
struct Level {
    int index = 0;
    int size = 0;
    std::vector<RepWord> representative;  // per point
    std::vector<int> emb;                 // X_{n-1} -> X_n, empty at level 0
    std::vector<std::vector<int>> proj;   // [y][x in X_{n-1}] -> X_n, empty at level 0
};

// The chain X0 -> X1 -> ... built by iterated application of the scheme.
// Immutable once built; extend() returns a new value with one more level.
class Tower {
public:
    // Builds levels 0 and 1. Throws SchemeError if the scheme does not validate.
    explicit Tower(FiniteScheme scheme);

    const FiniteScheme& scheme() const { return scheme_; }
    int depth() const { return static_cast<int>(levels_.size()) - 1; }
    const Level& level(int n) const;
    const std::vector<Level>& levels() const { return levels_; }

    friend Tower extend(Tower tower);

private:
    FiniteScheme scheme_;
    std::vector<Level> levels_;
};

// Quotients Y x X_N by the scheme action and appends the result as level N+1.
Tower extend(Tower tower);
Tower extend_to(Tower tower, int depth);

// phi_{n,m}: composition of the one-step embeddings; identity when m == n.
int embed(const Tower& tower, int m, int n, int p);

// pi_{p,q}(w, x): folds the one-step projections, last symbol first. The
// result is independent of the fold split (Eq. p-q-equation); tests check all
// splits explicitly.
int project_word(const Tower& tower, const Word& w, int q, int x);

// The cell C(w) in X_|w|: image of {w} x X0 under pi. Members sorted by id.
struct CellSet {
    Word word;
    std::vector<int> members;
};
CellSet cell(const Tower& tower, const Word& w);

// Witness produced by decompose(): position k and the X0 points whose depth-1
// gluing explains why two distinct (word, point) pairs project equally.
struct BasicEquivalenceWitness {
    int k = 0;          // 1-based position in the words
    int xi0 = 0;        // X0 points with pi(w[k], xi0) == pi(w'[k], xi0')
    int xi0_prime = 0;
};

// For (w, xi) != (w', xi') in Y^m x X_q with equal projection to X_{m+q},
// peels common prefix symbols until the gluing step is exposed. Throws
// SchemeError("pair equal") / SchemeError("projections differ") when the
// preconditions fail. Engaged for every valid input.
std::optional<BasicEquivalenceWitness> decompose(const Tower& tower, const Word& w, int q,
                                                 int xi, const Word& w_prime, int xi_prime);

struct LemmaCheck {
    std::string lemma;
    long instances = 0;
    std::vector<std::string> counterexamples;
    bool skipped = false;
};

struct LemmaAuditReport {
    int maxdepth = 0;
    std::vector<LemmaCheck> checks;
    bool pass() const;
    const LemmaCheck& check(const std::string& lemma) const;
};

// Exhaustively instantiates the structural lemmas of the construction over
// all tuples up to maxdepth and confirms their conclusions. A counterexample
// indicates an implementation bug. Requires tower.depth() >= maxdepth.
//
// Checks:
//   decomposition      every colliding pair splits, after a common prefix,
//                      into a depth-1 gluing of embedded base points
//   base-descent       words landing on an embedded X0 point carry an
//                      embedded X0 point at their base
//   level-descent      same with the embedded copy of any X_m
//   fresh-ancestry     points outside the previous floor have exactly one
//                      one-step ancestor (and agree on all full addresses);
//                      checked for levels >= 2
//   embedded-step      one projection step lands in the previous floor only
//                      from the floor below
//   floor-intersection on discrete schemes, each cell meets the previous
//                      floor at most once (skipped otherwise)
LemmaAuditReport lemma_audit(const Tower& tower, int maxdepth);

// All words of the given length in lexicographic order.
std::vector<Word> all_words(int alphabet, int length);

// Word text: single-character symbols concatenate, otherwise comma-separated.
std::string format_word(const SymbolSet& Y, const Word& w);

// Canonical point names: X0/X1 tokens at levels 0 and 1, "word@x0" from the
// representative above that.
std::string point_name(const Tower& tower, int level, int point);

} // namespace simfrac
