#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include "simfrac/address.hpp"
#include "simfrac/fixedpoint.hpp"
#include "simfrac/scheme.hpp"
#include "simfrac/tower.hpp"

namespace simfrac {

// Text-level failure; line is 1-based, 0 when no single line is to blame.
struct ParseError : std::runtime_error {
    int line;
    ParseError(int line_, const std::string& msg)
        : std::runtime_error(line_ > 0 ? "line " + std::to_string(line_) + ": " + msg : msg),
          line(line_) {}
};

// Scheme file: '#' comments, section headers [Y] [X0] [X1] [phi] [pi], plus
// optional [Z] [phiZ] for a pair. Tokens are whitespace-separated; [phi]
// entries are "x0 x1", [pi] entries "y x0 x1", [phiZ] entries "x0 z".
struct SchemeFile {
    FiniteScheme scheme;
    std::optional<Pair> pair;
};

SchemeFile parse_scheme_file(const std::string& text);
FiniteScheme parse_scheme(const std::string& text);

// Pair from a file holding [Z] and [phiZ]; x0 tokens resolve against the
// given scheme. Scheme sections in the same file are allowed and ignored.
Pair parse_pair(const std::string& text, const FiniteScheme& scheme);

// Canonical text form; parse(serialize(s)) reproduces s token for token.
std::string serialize(const FiniteScheme& scheme);

// Address syntax "u(v)": empty u allowed, v nonempty; symbols concatenate
// when every Y token is a single character, otherwise comma-separated.
UltimatelyPeriodicAddress parse_address(const std::string& text, const SymbolSet& Y);
std::string format_address(const UltimatelyPeriodicAddress& addr, const SymbolSet& Y);

Word parse_word(const std::string& text, const SymbolSet& Y);

// Point id syntax: an X0/X1 token at levels 0/1, or "w@x0" with |w| == level,
// resolved through pi.
int parse_point(const Tower& tower, int level, const std::string& text);

// Graph on X_n joining points that share a cell; edge labels list the
// witnessing words.
struct ApproxGraph {
    struct Edge {
        int a = 0;
        int b = 0;
        std::vector<Word> words;
    };
    int level = 0;
    std::vector<Edge> edges;
};
ApproxGraph build_approx_graph(const Tower& tower, int n);

enum class GraphFormat { dot, structured };
std::string export_graph(const Tower& tower, int n, GraphFormat format);

// Seeded valid scheme with |Y|, |X0| <= 4: injective phi, surjective pi.
// Identical seeds produce identical schemes on every platform.
FiniteScheme generate_random_scheme(std::uint64_t seed);

} // namespace simfrac
