#pragma once

#include <optional>
#include <string>
#include <vector>

#include "coverforge/local_system.hpp"

namespace coverforge {

enum class DihedralInertiaKind { Rotation, Reflection, CentralInvolution };

struct DihedralBranchClassification {
    std::string label;
    DihedralInertiaKind kind = DihedralInertiaKind::Rotation;
    long exponent = 0;  // d for a^d, k for a^k*b, n/2 for the central involution
};

/// Numerical profile of a dihedral datum: which branches are reflections
/// (and with which exponents), which are rotations. The central involution
/// a^(n/2) of even n counts as a rotation with exponent n/2.
struct DihedralBranchProfile {
    long n = 0;
    std::vector<long> reflection_exponents;             // branch order
    std::vector<long> rotation_exponents;               // branch order
    std::optional<long> common_reflection_exponent;     // set when all agree
    std::optional<long> reflection_parity;              // 0/1, even n, uniform parity only

    long reflection_count() const { return static_cast<long>(reflection_exponents.size()); }
};

struct DihedralClassification {
    DihedralBranchProfile profile;
    std::vector<DihedralBranchClassification> branches;
};

/// Tags every branch of a dihedral datum as rotation / reflection / central
/// involution and assembles the profile. Verifies on the way that branches of
/// order != 2 have a single inertia subgroup along the fiber and that
/// conjugate reflections share exponent parity when n is even.
inline DihedralClassification classify_branch_inertia(const BranchDatum& d) {
    const FiniteGroup& g = d.group();
    if (g.kind() != GroupKind::Dihedral)
        throw NotDihedral("classify_branch_inertia wants a dihedral datum");
    require_valid(d, "classify_branch_inertia");
    const long n = g.parameter_n();

    DihedralClassification out;
    out.profile.n = n;
    for (const auto& b : d.branches()) {
        auto [k, eps] = g.dihedral_normal_form(b.monodromy);
        DihedralBranchClassification c;
        c.label = b.label;
        c.exponent = k;
        if (eps == 1) {
            c.kind = DihedralInertiaKind::Reflection;
            out.profile.reflection_exponents.push_back(k);
        } else {
            c.kind = (n % 2 == 0 && k == n / 2) ? DihedralInertiaKind::CentralInvolution
                                                : DihedralInertiaKind::Rotation;
            out.profile.rotation_exponents.push_back(k);
        }
        if (b.order != 2) {
            // Rotation of order > 2: all inertia subgroups along the fiber agree.
            Subgroup h = g.subgroup_generated({b.monodromy});
            for (int s = 0; s < g.size(); ++s)
                internal_check(h.contains(g.conjugate(b.monodromy, {s})),
                               "inertia subgroup of an order != 2 branch is fiber-constant");
        }
        out.branches.push_back(std::move(c));
    }

    const auto& refl = out.profile.reflection_exponents;
    if (!refl.empty()) {
        bool all_same = true;
        for (long k : refl) all_same = all_same && k == refl.front();
        if (all_same) out.profile.common_reflection_exponent = refl.front();
        if (n % 2 == 0) {
            bool same_parity = true;
            for (long k : refl) same_parity = same_parity && (k % 2 == refl.front() % 2);
            if (same_parity) out.profile.reflection_parity = refl.front() % 2;
            // Conjugate reflections always share parity when n is even.
            for (std::size_t i = 0; i < refl.size(); ++i)
                for (std::size_t j = i + 1; j < refl.size(); ++j) {
                    bool conjugate = (refl[i] % 2) == (refl[j] % 2);
                    bool found = false;
                    for (int s = 0; s < g.size(); ++s)
                        found = found ||
                                g.conjugate({static_cast<int>(n + refl[i])}, {s}) ==
                                    GroupElement{static_cast<int>(n + refl[j])};
                    internal_check(found == conjugate,
                                   "reflection conjugacy matches exponent parity");
                }
        }
    }
    return out;
}

/// Whether a datum with this numerical profile (all reflection branches in
/// the class of a single reflection a^k*b, rotations a^(d_i)) can avoid
/// ramification at infinity: true iff the reflection count l is even and
/// >= 2 and n divides the rotation exponent sum. Profiles that mix reflection
/// representatives are outside the criterion's hypothesis and are rejected;
/// the general product check on the datum covers those.
inline bool infinity_ramification_check(const DihedralBranchProfile& profile) {
    const long l = profile.reflection_count();
    if (l > 0 && !profile.common_reflection_exponent)
        throw AssumptionViolated(
            "profile mixes reflection representatives; use the direct product check");
    long sum = 0;
    for (long di : profile.rotation_exponents) {
        if (di < 1 || di > profile.n - 1)
            throw DomainError("rotation exponent out of range [1, n-1]");
        sum += di;
    }
    return l >= 2 && l % 2 == 0 && sum % profile.n == 0;
}

/// The witness tuple for a profile: the reflection a^k*b repeated l times,
/// then the rotations a^(d_1), ..., a^(d_s). Used by tests as the independent
/// oracle for the infinity criterion.
inline std::vector<GroupElement> profile_witness_tuple(const FiniteGroup& g,
                                                       const DihedralBranchProfile& profile) {
    internal_check(g.kind() == GroupKind::Dihedral && g.parameter_n() == profile.n,
                   "witness tuple wants the matching dihedral group");
    const long n = profile.n;
    std::vector<GroupElement> tuple;
    long k = profile.common_reflection_exponent.value_or(0);
    for (long t = 0; t < profile.reflection_count(); ++t)
        tuple.push_back({static_cast<int>(n + (k % n))});
    for (long di : profile.rotation_exponents) tuple.push_back({static_cast<int>(di % n)});
    return tuple;
}

/// Closed-form multiplicity of the two-dimensional representation rho_h:
///   mu_h = 2(g' - 1) + l/2 + sum_i (<-h k_i / n> + <h k_i / n>)
/// with l the number of reflection branches and k_i the rotation exponents.
/// Checked against the generic Chevalley-Weil evaluation; a mismatch is a
/// hard error, and the generic value would win.
inline long dihedral_multiplicity_mu_h(const BranchDatum& d, long h) {
    const FiniteGroup& g = d.group();
    if (g.kind() != GroupKind::Dihedral)
        throw NotDihedral("dihedral_multiplicity_mu_h wants a dihedral datum");
    const long n = g.parameter_n();
    const long hmax = n % 2 == 1 ? (n - 1) / 2 : n / 2 - 1;
    if (h < 1 || h > hmax)
        throw HOutOfRange("h = " + std::to_string(h) + " outside [1, " + std::to_string(hmax) +
                          "] for dihedral(" + std::to_string(n) + ")");

    DihedralClassification cls = classify_branch_inertia(d);
    const long l = cls.profile.reflection_count();
    Rational mu = Rational(2) * Rational(d.base_genus() - 1) + Rational(BigInt(l), BigInt(2));
    for (long k : cls.profile.rotation_exponents) {
        mu += fractional_part(Rational(BigInt(-h * k), BigInt(n)));
        mu += fractional_part(Rational(BigInt(h * k), BigInt(n)));
    }
    if (!mu.is_integer() || mu < Rational(0))
        throw NonIntegerMultiplicity("mu_" + std::to_string(h) + " came out as " + mu.str());
    long value = static_cast<long>(mu.numerator());

    CharacterTable t = character_table(g);
    long generic = chevalley_weil_multiplicity(d, t, t.index_of("rho" + std::to_string(h)));
    if (value != generic)
        throw MismatchWithGenericCW("closed form gives " + std::to_string(value) +
                                    " but the general formula gives " + std::to_string(generic));
    return value;
}

}  // namespace coverforge
