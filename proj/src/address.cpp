#include "simfrac/address.hpp"

#include <algorithm>
#include <set>

namespace simfrac {

namespace {

// Smallest d dividing |v| with v = (v_1..v_d)^(|v|/d).
int primitive_period(const Word& v) {
    const int k = static_cast<int>(v.size());
    for (int d = 1; d <= k; ++d) {
        if (k % d != 0)
            continue;
        bool ok = true;
        for (int i = d; i < k && ok; ++i)
            ok = v[i] == v[i - d];
        if (ok)
            return d;
    }
    return k;
}

} // namespace

UltimatelyPeriodicAddress UltimatelyPeriodicAddress::make(Word u, Word v) {
    if (v.empty())
        throw SchemeError("address period must be nonempty");
    v.resize(primitive_period(v));
    // Absorb trailing prefix symbols into the period: u.back == v.back means
    // u (v)^w == u' (v rotated right)^w with u' one shorter.
    while (!u.empty() && u.back() == v.back()) {
        std::rotate(v.begin(), v.end() - 1, v.end());
        u.pop_back();
    }
    return UltimatelyPeriodicAddress{std::move(u), std::move(v)};
}

int UltimatelyPeriodicAddress::at(int i) const {
    if (i < static_cast<int>(prefix.size()))
        return prefix[i];
    return period[(i - prefix.size()) % period.size()];
}

Word UltimatelyPeriodicAddress::truncate(int p) const {
    Word w(p);
    for (int i = 0; i < p; ++i)
        w[i] = at(i);
    return w;
}

UltimatelyPeriodicAddress UltimatelyPeriodicAddress::tail() const {
    if (!prefix.empty())
        return make(Word(prefix.begin() + 1, prefix.end()), period);
    Word rotated = period;
    std::rotate(rotated.begin(), rotated.begin() + 1, rotated.end());
    return make({}, std::move(rotated));
}

TransferState TransferState::single(int n, int x0) {
    TransferState v = none(n);
    v.witnesses[x0] = true;
    return v;
}

bool TransferState::empty() const {
    return std::none_of(witnesses.begin(), witnesses.end(), [](bool b) { return b; });
}

int TransferState::count() const {
    return static_cast<int>(std::count(witnesses.begin(), witnesses.end(), true));
}

TransferState step(const FiniteScheme& scheme, const TransferState& v, int y) {
    std::vector<bool> phi_of_v(scheme.x1.size(), false);
    for (int a = 0; a < scheme.x0.size(); ++a)
        if (v.witnesses[a])
            phi_of_v[scheme.phi[a]] = true;
    TransferState next = TransferState::none(scheme.x0.size());
    for (int a = 0; a < scheme.x0.size(); ++a)
        if (phi_of_v[scheme.pi_at(y, a)])
            next.witnesses[a] = true;
    return next;
}

TransferState witness_set(const Tower& tower, int n, int x, const Word& prefix) {
    const FiniteScheme& s = tower.scheme();
    if (static_cast<int>(prefix.size()) < n)
        throw SchemeError("witness_set: prefix shorter than base level");
    int target = embed(tower, n, static_cast<int>(prefix.size()), x);
    TransferState v = TransferState::none(s.x0.size());
    for (int a = 0; a < s.x0.size(); ++a)
        if (project_word(tower, prefix, 0, a) == target)
            v.witnesses[a] = true;
    return v;
}

ShadowTree shadow(const Tower& tower, int n, int x, int p) {
    if (p < n)
        throw SchemeError("shadow: depth below base level");
    const FiniteScheme& s = tower.scheme();
    if (x < 0 || x >= tower.level(n).size)
        throw SchemeError("shadow: unknown point id");

    ShadowTree tree;
    tree.base_level = n;
    tree.base_point = x;
    tree.depth = p;

    // Roots: the depth-n words whose cell contains x.
    std::vector<std::pair<Word, TransferState>> layer;
    for (const Word& w : all_words(s.Y.size(), n)) {
        TransferState v = witness_set(tower, n, x, w);
        if (!v.empty())
            layer.push_back({w, v});
    }
    tree.layers.push_back(std::move(layer));

    for (int d = n + 1; d <= p; ++d) {
        std::vector<std::pair<Word, TransferState>> next;
        for (const auto& [word, v] : tree.layers.back())
            for (int y = 0; y < s.Y.size(); ++y) {
                TransferState child = step(s, v, y);
                if (child.empty())
                    continue;
                Word cw = word;
                cw.push_back(y);
                next.push_back({std::move(cw), std::move(child)});
            }
        tree.layers.push_back(std::move(next));
    }
    return tree;
}

std::size_t ShadowTree::node_count() const {
    std::size_t total = 0;
    for (const auto& layer : layers)
        total += layer.size();
    return total;
}

bool ShadowTree::contains(const Word& w) const {
    int d = static_cast<int>(w.size()) - base_level;
    if (d < 0 || d >= static_cast<int>(layers.size()))
        return false;
    for (const auto& [word, v] : layers[d])
        if (word == w)
            return true;
    return false;
}

std::vector<Word> ShadowTree::words_at_depth(int d) const {
    std::vector<Word> words;
    for (const auto& [word, v] : layers.at(d - base_level))
        words.push_back(word);
    return words;
}

bool gamma_contains(const Tower& tower, int n, int x,
                    const UltimatelyPeriodicAddress& addr) {
    const FiniteScheme& s = tower.scheme();
    const int np = static_cast<int>(addr.prefix.size());
    const int d0 = std::max(n, np);

    TransferState v = witness_set(tower, n, x, addr.truncate(d0));
    if (v.empty())
        return false;

    int phase = (d0 - np) % static_cast<int>(addr.period.size());
    std::set<std::pair<int, TransferState>> seen;
    while (seen.insert({phase, v}).second) {
        v = step(s, v, addr.period[phase]);
        if (v.empty())
            return false;
        phase = (phase + 1) % static_cast<int>(addr.period.size());
    }
    return true; // state repeated without ever emptying
}

RelationEvidence related(const Tower& tower, const UltimatelyPeriodicAddress& a1,
                         const UltimatelyPeriodicAddress& a2, int maxlevel) {
    RelationEvidence ev;
    ev.bound = maxlevel;
    if (a1 == a2) {
        ev.verdict = Verdict::RELATED;
        ev.reflexive = true;
        return ev;
    }
    for (int n = 0; n <= maxlevel; ++n) {
        CellSet c1 = cell(tower, a1.truncate(n));
        CellSet c2 = cell(tower, a2.truncate(n));
        std::vector<int> candidates;
        std::set_intersection(c1.members.begin(), c1.members.end(), c2.members.begin(),
                              c2.members.end(), std::back_inserter(candidates));
        if (candidates.empty()) {
            ev.verdict = Verdict::UNRELATED;
            ev.disjoint_depth = n;
            return ev;
        }
        for (int x : candidates)
            if (gamma_contains(tower, n, x, a1) && gamma_contains(tower, n, x, a2)) {
                ev.verdict = Verdict::RELATED;
                ev.witness = {n, x};
                return ev;
            }
    }
    ev.verdict = Verdict::UNKNOWN_UP_TO_BOUND;
    return ev;
}

RelationEvidence hat_related(const Tower& tower, const UltimatelyPeriodicAddress& a1,
                             const UltimatelyPeriodicAddress& a2, int maxlevel) {
    RelationEvidence ev;
    ev.bound = maxlevel;
    if (a1 == a2) {
        ev.verdict = Verdict::RELATED;
        ev.reflexive = true;
        return ev;
    }
    const FiniteScheme& s = tower.scheme();
    const int y1 = a1.at(0);
    const int y2 = a2.at(0);

    bool case1_unknown = false;
    if (y1 == y2) {
        RelationEvidence tails = related(tower, a1.tail(), a2.tail(), maxlevel);
        if (tails.verdict == Verdict::RELATED) {
            ev.verdict = Verdict::RELATED;
            ev.hat_case = 1;
            if (tails.witness) {
                auto [n, x] = *tails.witness;
                if (n + 1 <= tower.depth())
                    ev.witness = {n + 1, tower.level(n + 1).proj[y1][x]};
            }
            return ev;
        }
        case1_unknown = tails.verdict == Verdict::UNKNOWN_UP_TO_BOUND;
    }

    // Depth-1 gluing route: decided exactly per (x0, x0') pair.
    UltimatelyPeriodicAddress t1 = a1.tail();
    UltimatelyPeriodicAddress t2 = a2.tail();
    for (int a = 0; a < s.x0.size(); ++a)
        for (int b = 0; b < s.x0.size(); ++b) {
            if (s.pi_at(y1, a) != s.pi_at(y2, b))
                continue;
            if (gamma_contains(tower, 0, a, t1) && gamma_contains(tower, 0, b, t2)) {
                ev.verdict = Verdict::RELATED;
                ev.hat_case = 2;
                ev.case2_pair = {a, b};
                ev.witness = {1, s.pi_at(y1, a)};
                return ev;
            }
        }

    ev.verdict = case1_unknown ? Verdict::UNKNOWN_UP_TO_BOUND : Verdict::UNRELATED;
    return ev;
}

} // namespace simfrac
