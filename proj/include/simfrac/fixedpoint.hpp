#pragma once

#include <optional>
#include <string>
#include <vector>

#include "simfrac/address.hpp"
#include "simfrac/scheme.hpp"
#include "simfrac/tower.hpp"

namespace simfrac {

// An object (Z, phi_Z) of the category the scheme acts on. phi_Z need not be
// injective (the extended category); injective_flag records whether it is.
struct Pair {
    PointSet Z;
    std::vector<int> phiZ; // x0 id -> Z id
    bool injective_flag = true;

    Pair() = default;
    Pair(PointSet Z, std::vector<int> phiZ);
};

// Result of one functor application: the new pair plus the quotient map from
// Y x Z onto it (class_of[y * |Z| + z]).
struct FunctorImage {
    Pair pair;
    std::vector<int> class_of;
};

// Glues |Y| copies of Z along the scheme's overlap data: quotient of Y x Z by
// the closure of (y, phi_Z(a)) ~ (y', phi_Z(a')) for pi(y,a) = pi(y',a').
FunctorImage apply_functor(const FiniteScheme& scheme, const Pair& p);

struct IsoWitness {
    std::vector<int> theta; // Z id -> Zhat id, bijective, phi_Zhat = theta . phi_Z
};

// Bijection theta: A.Z -> B.Z with B.phiZ = theta . A.phiZ, if one exists.
// Fixed on the phi image, then first extension in declaration order.
std::optional<IsoWitness> find_pair_iso(const Pair& a, const Pair& b);

// Whether p is (isomorphic to) its own functor image.
std::optional<IsoWitness> is_fixed_point(const FiniteScheme& scheme, const Pair& p);

// The level-n floor of the tower as a pair (X_n, phi_{n,0}), with canonical
// point names.
Pair level_pair(const Tower& tower, int n);

// The finite realization x -> pi_{1,n}(y, x) of the shift f_y.
std::vector<int> shift_map(const Tower& tower, int y, int n);
bool shift_injective(const Tower& tower, int y, int n);

enum class InjectivityStatus { CERTIFIED_FULLY_INJECTIVE, VIOLATION, NO_VIOLATION_UP_TO_DEPTH };

struct InjectivityViolation {
    int level = 0;
    int point_a = 0;
    int point_b = 0;
    Word shared_word;                      // a shared shadow word reaching the cycle
    UltimatelyPeriodicAddress shared_address; // lies in both Gamma-sets
};

struct InjectivityReport {
    InjectivityStatus status = InjectivityStatus::NO_VIOLATION_UP_TO_DEPTH;
    int depth = 0;
    std::optional<DiscreteWitness> discrete_failure; // why the certificate route closed
    std::optional<InjectivityViolation> violation;
};

// Discrete schemes are certified fully injective outright. Otherwise scans
// levels below `depth` for two distinct points whose shadow trees share a
// cycle of the product transfer automaton: such a cycle yields an ultimately
// periodic address in both Gamma-sets, a sound violation certificate. Mere
// depth exhaustion never reports VIOLATION.
InjectivityReport injectivity_report(const Tower& tower, int depth);

} // namespace simfrac
