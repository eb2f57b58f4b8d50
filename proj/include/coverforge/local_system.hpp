#pragma once

#include <string>
#include <utility>
#include <vector>

#include "coverforge/cover.hpp"
#include "coverforge/matrix_rep.hpp"

namespace coverforge {

/// Multiplicity of the irreducible `irrep` in the space of holomorphic
/// differentials of the cover:
///   mu = d (g' - 1) + sum_i sum_alpha N_(i,alpha) <-alpha/m_i> + [irrep trivial].
/// Evaluated with exact rationals and asserted to be a nonnegative integer.
inline long chevalley_weil_multiplicity(const BranchDatum& d, const CharacterTable& t,
                                        std::size_t irrep) {
    if (!(t.group() == d.group()))
        throw DomainError("character table belongs to a different group than the datum");
    require_valid(d, "chevalley_weil_multiplicity");

    Rational mu = Rational(t.degree(irrep)) * Rational(d.base_genus() - 1);
    for (const auto& b : d.branches()) {
        std::vector<long> counts = eigenvalue_counts(t, irrep, b.monodromy);
        for (long alpha = 0; alpha < b.order; ++alpha) {
            if (counts[alpha] == 0) continue;
            mu += Rational(counts[alpha]) *
                  fractional_part(Rational(BigInt(-alpha), BigInt(b.order)));
        }
    }
    if (t.is_trivial(irrep)) mu += Rational(1);

    if (!mu.is_integer() || mu < Rational(0))
        throw NonIntegerMultiplicity("multiplicity of " + t.irreducibles()[irrep].label +
                                     " came out as " + mu.str());
    return static_cast<long>(mu.numerator());
}

/// Branch labels where the monodromy of the eigensheaf of `irrep` is
/// nontrivial, i.e. some eigenvalue count N_alpha with alpha != 0 is positive.
inline std::vector<std::string> local_system_support(const BranchDatum& d,
                                                     const CharacterTable& t,
                                                     std::size_t irrep) {
    if (!(t.group() == d.group()))
        throw DomainError("character table belongs to a different group than the datum");
    require_valid(d, "local_system_support");
    std::vector<std::string> support;
    for (const auto& b : d.branches()) {
        std::vector<long> counts = eigenvalue_counts(t, irrep, b.monodromy);
        for (std::size_t alpha = 1; alpha < counts.size(); ++alpha)
            if (counts[alpha] > 0) {
                support.push_back(b.label);
                break;
            }
    }
    return support;
}

/// Hodge pair of the eigenspace of `irrep` in first cohomology:
/// (d mu_rho, d mu_conj(rho)).
inline std::pair<long, long> eigenspace_type(const BranchDatum& d, const CharacterTable& t,
                                             std::size_t irrep) {
    std::size_t bar = conjugate_character(t, irrep);
    long mu = chevalley_weil_multiplicity(d, t, irrep);
    long mu_bar = bar == irrep ? mu : chevalley_weil_multiplicity(d, t, bar);
    return {t.degree(irrep) * mu, t.degree(irrep) * mu_bar};
}

struct IrreducibleSummand {
    std::string label;
    long rank = 0;                        // = degree of the irreducible
    std::vector<std::string> support;    // branch labels with nontrivial monodromy
    long mu = 0;                          // Chevalley-Weil multiplicity
    std::pair<long, long> hodge_type{0, 0};
};

struct LocalSystemDecomposition {
    long genus = 0;  // genus of the covering curve
    std::vector<IrreducibleSummand> summands;  // table order
};

/// Decomposes the direct image of the constant sheaf into one summand per
/// irreducible, each carrying its rank, support, multiplicity and Hodge type.
/// The central cross-check sum_rho d_rho mu_rho = g is asserted.
inline LocalSystemDecomposition decompose_direct_image(const BranchDatum& d,
                                                       const CharacterTable& t) {
    if (!(t.group() == d.group()))
        throw DomainError("character table belongs to a different group than the datum");
    require_valid(d, "decompose_direct_image");

    LocalSystemDecomposition out;
    out.genus = riemann_hurwitz_genus(d);

    std::vector<long> mus(t.count());
    for (std::size_t i = 0; i < t.count(); ++i)
        mus[i] = chevalley_weil_multiplicity(d, t, i);

    long total = 0;
    for (std::size_t i = 0; i < t.count(); ++i) {
        IrreducibleSummand s;
        s.label = t.irreducibles()[i].label;
        s.rank = t.degree(i);
        s.support = local_system_support(d, t, i);
        s.mu = mus[i];
        s.hodge_type = {s.rank * mus[i], s.rank * mus[conjugate_character(t, i)]};
        total += s.rank * s.mu;
        out.summands.push_back(std::move(s));
    }
    internal_check(total == out.genus,
                   "sum of d_rho * mu_rho equals the Riemann-Hurwitz genus");
    return out;
}

/// Monodromy of the full direct-image local system around branch point k:
/// block diagonal with one block rho(h_k) per irreducible, in table order.
/// Explicit matrices exist for the catalog (cyclic/dihedral) groups only.
inline std::vector<CycloMatrix> monodromy_blocks(const BranchDatum& d, const CharacterTable& t,
                                                 std::size_t k) {
    if (!(t.group() == d.group()))
        throw DomainError("character table belongs to a different group than the datum");
    require_valid(d, "monodromy_blocks");
    const Branch& b = d.branch(k);
    std::vector<CycloMatrix> blocks;
    for (std::size_t i = 0; i < t.count(); ++i)
        blocks.push_back(irreducible_matrices(t, i).image(b.monodromy));
    return blocks;
}

inline CycloMatrix monodromy_matrix(const BranchDatum& d, const CharacterTable& t,
                                    std::size_t k) {
    auto blocks = monodromy_blocks(d, t, k);
    return CycloMatrix::block_diagonal(blocks);
}

inline CycloMatrix monodromy_matrix(const BranchDatum& d, std::size_t k) {
    return monodromy_matrix(d, character_table(d.group()), k);
}

/// Monodromy of the quotient cover's local system around surviving branch k:
/// blocks only for irreducibles whose kernel contains N. Throws BranchDropped
/// when branch k becomes unramified (and invisible) downstairs.
inline std::vector<CycloMatrix> quotient_monodromy_blocks(const BranchDatum& d,
                                                          const Subgroup& n, std::size_t k) {
    CharacterTable t = character_table(d.group());
    QuotientDatumResult q = quotient_datum(d, n);
    const std::string& label = d.branch(k).label;
    bool survives = false;
    for (const auto& entry : q.report)
        if (entry.label == label) survives = entry.kept;
    if (!survives)
        throw BranchDropped("branch '" + label + "' is unramified in the quotient cover");

    std::vector<CycloMatrix> blocks;
    for (std::size_t i = 0; i < t.count(); ++i) {
        if (!t.kernel_contains(i, n)) continue;
        blocks.push_back(irreducible_matrices(t, i).image(d.branch(k).monodromy));
    }
    return blocks;
}

inline CycloMatrix quotient_monodromy(const BranchDatum& d, const Subgroup& n, std::size_t k) {
    auto blocks = quotient_monodromy_blocks(d, n, k);
    return CycloMatrix::block_diagonal(blocks);
}

struct PathBasisReport {
    std::vector<std::pair<long, long>> labels;  // (i, k), 1-based grid
    long claimed_dim = 0;   // d_rho * |support|
    long cw_dim = 0;        // d_rho * (mu_rho + mu_conj(rho))
    bool consistent = false;
};

/// The path-basis grid for the eigenspace of `irrep` over a genus-0 base,
/// compared against the dimension that Chevalley-Weil forces. The two counts
/// disagree on easy data; the mismatch is reported, not raised.
inline PathBasisReport path_basis_report(const BranchDatum& d, const CharacterTable& t,
                                         std::size_t irrep) {
    if (d.base_genus() != 0)
        throw BaseNotRational("path basis report needs a genus-0 base");
    require_valid(d, "path_basis_report");

    PathBasisReport rep;
    const long degree = t.degree(irrep);
    const long support = static_cast<long>(local_system_support(d, t, irrep).size());
    for (long i = 1; i <= degree; ++i)
        for (long k = 1; k <= support; ++k) rep.labels.push_back({i, k});
    rep.claimed_dim = degree * support;
    auto [h10, h01] = eigenspace_type(d, t, irrep);
    rep.cw_dim = h10 + h01;
    rep.consistent = rep.claimed_dim == rep.cw_dim;
    return rep;
}

}  // namespace coverforge
