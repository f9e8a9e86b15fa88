#pragma once

#include <string>

#include "simfrac/io.hpp"

// The recurring example schemes, as scheme-file text so the tests exercise
// the parser on every construction.
namespace fixtures {

// Folding Y x Y along the diagonal, |Y| = 2: the unit interval.
inline const std::string diag2_text = R"(# diagonal folding, |Y| = 2
[Y]
0 1
[X0]
0 1
[X1]
d00 m01 d11
[phi]
0 d00
1 d11
[pi]
0 0 d00
0 1 m01
1 0 m01
1 1 d11
)";

// Not fully injective: (0,a) ~ (1,a), so a's address set is everything.
inline const std::string nfi_text = R"(# not fully injective
[Y]
0 1
[X0]
a b
[X1]
A b0 b1
[phi]
a A
b b0
[pi]
0 a A
1 a A
0 b b0
1 b b1
)";

// Two glued columns; the functor has a second fixed point (Z = {a,c}).
inline const std::string nonunique_text = R"(# more than one fixed point
[Y]
0 1
[X0]
a b c
[X1]
A b0 b1 C
[phi]
a A
b b0
c C
[pi]
0 a A
1 a A
0 b b0
1 b b1
0 c C
1 c C
)";

inline const std::string zac_pair_text = R"(# the pair (Z = {a,c}, phiZ)
[Z]
a c
[phiZ]
a a
b a
c c
)";

// Not discrete (cell(0) holds two embedded points) yet every address set is
// a singleton and they are pairwise disjoint: p goes 0 1 1 1..., q goes
// 0 2 2 2..., u and v self-loop on their own symbol, everything else is free.
inline const std::string divergent_text = R"(
[Y]
0 1 2
[X0]
p q u v
[X1]
P Q U V f1 f2 f3 f4 f5 f6 f7 f8
[phi]
p P
q Q
u U
v V
[pi]
0 u P
0 v Q
1 u U
2 v V
0 p f1
0 q f2
1 p f3
1 q f4
1 v f5
2 p f6
2 q f7
2 u f8
)";

inline simfrac::FiniteScheme diag2() { return simfrac::parse_scheme(diag2_text); }
inline simfrac::FiniteScheme nfi() { return simfrac::parse_scheme(nfi_text); }
inline simfrac::FiniteScheme nonunique() { return simfrac::parse_scheme(nonunique_text); }
inline simfrac::FiniteScheme divergent() { return simfrac::parse_scheme(divergent_text); }

// Diagonal scheme for any |Y| = k: X0 = Y, X1 = unordered pairs, phi(y) = {y,y}.
inline simfrac::FiniteScheme diagonal(int k) {
    std::vector<std::string> y;
    for (int i = 0; i < k; ++i)
        y.push_back(std::to_string(i));
    std::vector<std::string> pairs;
    std::vector<std::vector<int>> pair_id(k, std::vector<int>(k));
    for (int i = 0; i < k; ++i)
        for (int j = i; j < k; ++j) {
            pair_id[i][j] = pair_id[j][i] = static_cast<int>(pairs.size());
            pairs.push_back(std::to_string(i) + std::to_string(j));
        }
    std::vector<int> phi(k);
    for (int i = 0; i < k; ++i)
        phi[i] = pair_id[i][i];
    std::vector<std::vector<int>> pi(k, std::vector<int>(k));
    for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b)
            pi[a][b] = pair_id[a][b];
    return simfrac::FiniteScheme{simfrac::SymbolSet{y}, simfrac::PointSet{y},
                                 simfrac::PointSet{pairs}, std::move(phi), std::move(pi)};
}

} // namespace fixtures
