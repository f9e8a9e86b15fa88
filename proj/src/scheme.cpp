#include "simfrac/scheme.hpp"

#include <algorithm>

namespace simfrac {

TokenSet::TokenSet(std::vector<std::string> tokens) : toks(std::move(tokens)) {
    if (toks.empty())
        throw SchemeError("token set must be nonempty");
    for (int i = 0; i < static_cast<int>(toks.size()); ++i) {
        if (toks[i].empty())
            throw SchemeError("empty token");
        auto [it, fresh] = index.emplace(toks[i], i);
        if (!fresh)
            throw SchemeError("duplicate token '" + toks[i] + "'");
    }
}

std::optional<int> TokenSet::find(const std::string& tok) const {
    auto it = index.find(tok);
    if (it == index.end())
        return std::nullopt;
    return it->second;
}

int TokenSet::require(const std::string& tok) const {
    auto id = find(tok);
    if (!id)
        throw SchemeError("unknown token '" + tok + "'");
    return *id;
}

FiniteScheme::FiniteScheme(SymbolSet Y_, PointSet x0_, PointSet x1_,
                           std::vector<int> phi_, std::vector<std::vector<int>> pi_)
    : Y(std::move(Y_)), x0(std::move(x0_)), x1(std::move(x1_)),
      phi(std::move(phi_)), pi(std::move(pi_)) {
    if (static_cast<int>(phi.size()) != x0.size())
        throw SchemeError("phi must be total on X0");
    if (static_cast<int>(pi.size()) != Y.size())
        throw SchemeError("pi must be total on Y x X0");
    for (int v : phi)
        if (v < 0 || v >= x1.size())
            throw SchemeError("phi image out of range");
    for (const auto& row : pi) {
        if (static_cast<int>(row.size()) != x0.size())
            throw SchemeError("pi must be total on Y x X0");
        for (int v : row)
            if (v < 0 || v >= x1.size())
                throw SchemeError("pi image out of range");
    }
}

ValidationReport validate(const FiniteScheme& scheme) {
    ValidationReport report;

    // phi injective
    std::map<int, int> phi_preimage;
    for (int a = 0; a < scheme.x0.size(); ++a) {
        auto [it, fresh] = phi_preimage.emplace(scheme.phi[a], a);
        if (!fresh) {
            report.violations.push_back(
                {"phi-not-injective",
                 "phi(" + scheme.x0.token(it->second) + ") = phi(" + scheme.x0.token(a) +
                     ") = " + scheme.x1.token(scheme.phi[a])});
        }
    }

    // pi surjective onto X1
    std::vector<bool> hit(scheme.x1.size(), false);
    for (int y = 0; y < scheme.Y.size(); ++y)
        for (int a = 0; a < scheme.x0.size(); ++a)
            hit[scheme.pi_at(y, a)] = true;
    for (int p = 0; p < scheme.x1.size(); ++p)
        if (!hit[p])
            report.violations.push_back(
                {"pi-not-surjective", "X1 point " + scheme.x1.token(p) + " has no pi preimage"});

    report.ok = report.violations.empty();
    return report;
}

std::vector<int> essential_part(const FiniteScheme& scheme) {
    std::vector<bool> in_s(scheme.x0.size(), false);
    for (int y = 0; y < scheme.Y.size(); ++y)
        for (int y2 = 0; y2 < scheme.Y.size(); ++y2) {
            if (y == y2)
                continue;
            for (int a = 0; a < scheme.x0.size(); ++a)
                for (int a2 = 0; a2 < scheme.x0.size(); ++a2)
                    if (scheme.pi_at(y, a) == scheme.pi_at(y2, a2))
                        in_s[a] = true;
        }
    std::vector<int> result;
    for (int a = 0; a < scheme.x0.size(); ++a)
        if (in_s[a])
            result.push_back(a);
    return result;
}

std::pair<bool, std::optional<DiscreteWitness>> is_discrete(const FiniteScheme& scheme) {
    std::vector<bool> in_phi_image(scheme.x1.size(), false);
    for (int a = 0; a < scheme.x0.size(); ++a)
        in_phi_image[scheme.phi[a]] = true;

    for (int y = 0; y < scheme.Y.size(); ++y) {
        int first = -1;
        for (int a = 0; a < scheme.x0.size(); ++a) {
            int p = scheme.pi_at(y, a);
            if (!in_phi_image[p])
                continue;
            if (first == -1)
                first = p;
            else if (p != first)
                return {false, DiscreteWitness{y, std::min(first, p), std::max(first, p)}};
        }
    }
    return {true, std::nullopt};
}

} // namespace simfrac
