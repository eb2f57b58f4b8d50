#pragma once

#include <vector>

#include "coverforge/character_table.hpp"
#include "coverforge/matrix.hpp"

namespace coverforge {

/// Explicit matrix form of a representation: one square matrix per group
/// element, indexed by element index.
struct MatrixRep {
    long degree = 0;
    std::vector<CycloMatrix> images;

    const CycloMatrix& image(GroupElement g) const {
        return images.at(static_cast<std::size_t>(g.index));
    }
};

namespace detail {

inline void verify_multiplicative(const MatrixRep& rep, const FiniteGroup& g, bool exhaustive) {
    internal_check(rep.image(g.identity()).is_identity(), "identity maps to the identity matrix");
    auto check = [&](int a, int b) {
        if (rep.image({a}) * rep.image({b}) != rep.image(g.product({a}, {b})))
            throw DomainError("representation is not multiplicative");
    };
    if (exhaustive || g.size() <= 12) {
        for (int a = 0; a < g.size(); ++a)
            for (int b = 0; b < g.size(); ++b) check(a, b);
    } else {
        std::mt19937 rng(777);
        std::uniform_int_distribution<int> pick(0, g.size() - 1);
        for (int t = 0; t < 200; ++t) check(pick(rng), pick(rng));
    }
}

}  // namespace detail

/// Explicit irreducible matrices for the catalog groups. Cyclic characters
/// and dihedral linear characters come back as 1x1 matrices; the
/// two-dimensional dihedral representation rho_h sends
///   a^k   -> [[z^hk, 0], [0, z^-hk]]
///   a^k*b -> [[0, z^hk], [z^-hk, 0]]
/// with z a primitive n-th root of unity. Permutation-generated groups have
/// no matrix catalog (the character table is still available).
inline MatrixRep irreducible_matrices(const CharacterTable& t, std::size_t irrep) {
    const FiniteGroup& g = t.group();
    const CatalogTag tag = t.irreducibles().at(irrep).tag;
    MatrixRep rep;
    rep.degree = t.degree(irrep);
    rep.images.reserve(g.size());

    switch (tag.kind) {
        case CatalogTag::CyclicPower: {
            const long n = g.parameter_n();
            for (int e = 0; e < g.size(); ++e) {
                CycloMatrix m(1, 1);
                m.at(0, 0) = Cyclotomic::root_of_unity(n, tag.param * e);
                rep.images.push_back(std::move(m));
            }
            break;
        }
        case CatalogTag::DihedralLinear: {
            for (int e = 0; e < g.size(); ++e) {
                auto [k, eps] = g.dihedral_normal_form({e});
                long sign = 1;
                if ((tag.param & 2) && k % 2 != 0) sign = -sign;
                if ((tag.param & 1) && eps == 1) sign = -sign;
                CycloMatrix m(1, 1);
                m.at(0, 0) = Cyclotomic(sign);
                rep.images.push_back(std::move(m));
            }
            break;
        }
        case CatalogTag::DihedralTwoDim: {
            const long n = g.parameter_n();
            const long h = tag.param;
            for (int e = 0; e < g.size(); ++e) {
                auto [k, eps] = g.dihedral_normal_form({e});
                CycloMatrix m(2, 2);
                if (eps == 0) {
                    m.at(0, 0) = Cyclotomic::root_of_unity(n, h * k);
                    m.at(1, 1) = Cyclotomic::root_of_unity(n, -h * k);
                } else {
                    m.at(0, 1) = Cyclotomic::root_of_unity(n, h * k);
                    m.at(1, 0) = Cyclotomic::root_of_unity(n, -h * k);
                }
                rep.images.push_back(std::move(m));
            }
            break;
        }
        case CatalogTag::None:
            throw UnsupportedGroupKind(
                "explicit irreducible matrices exist only for cyclic and dihedral groups");
    }

    detail::verify_multiplicative(rep, g, g.size() <= 24);
    for (int e = 0; e < g.size(); ++e) {
        Cyclotomic trace;
        for (long i = 0; i < rep.degree; ++i) trace += rep.images[e].at(i, i);
        internal_check(trace == t.value_at(irrep, {e}), "matrix trace matches the character");
    }
    return rep;
}

/// Left-regular representation: R(g) permutes basis vectors e_h -> e_(g h).
inline MatrixRep regular_representation(const FiniteGroup& g) {
    MatrixRep rep;
    rep.degree = g.size();
    for (int e = 0; e < g.size(); ++e) {
        CycloMatrix m(g.size(), g.size());
        for (int h = 0; h < g.size(); ++h)
            m.at(g.product({e}, {h}).index, h) = Cyclotomic(1);
        rep.images.push_back(std::move(m));
    }
    return rep;
}

struct IsotypicProjectors {
    std::vector<CycloMatrix> projectors;  // one per irreducible, table order
    std::vector<std::size_t> ranks;
};

/// Projections onto the isotypic components of a representation R:
/// p_i = (d_i/|G|) sum_g conj(chi_i(g)) R(g). Verified exactly: idempotent,
/// mutually annihilating, summing to the identity.
inline IsotypicProjectors isotypic_projectors(const MatrixRep& rep, const CharacterTable& t) {
    const FiniteGroup& g = t.group();
    internal_check(static_cast<int>(rep.images.size()) == g.size(),
                   "representation indexed by the group's elements");
    detail::verify_multiplicative(rep, g, false);

    IsotypicProjectors out;
    const std::size_t dim = static_cast<std::size_t>(rep.degree);
    for (std::size_t i = 0; i < t.count(); ++i) {
        CycloMatrix p(dim, dim);
        for (int e = 0; e < g.size(); ++e)
            p = p + t.value_at(i, {e}).conjugate() * rep.images[e];
        p = Cyclotomic(Rational(BigInt(t.degree(i)), BigInt(g.size()))) * p;
        out.projectors.push_back(std::move(p));
    }

    CycloMatrix sum(dim, dim);
    for (std::size_t i = 0; i < out.projectors.size(); ++i) {
        const CycloMatrix& p = out.projectors[i];
        internal_check(p * p == p, "isotypic projector is idempotent");
        for (std::size_t j = 0; j < i; ++j)
            internal_check((p * out.projectors[j]).is_zero(),
                           "distinct isotypic projectors annihilate each other");
        sum = sum + p;
        out.ranks.push_back(p.rank());
    }
    internal_check(sum.is_identity(), "isotypic projectors sum to the identity");
    return out;
}

}  // namespace coverforge
