#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "coverforge/cyclotomic.hpp"
#include "coverforge/group.hpp"

namespace coverforge {

/// How an irreducible row was constructed. Catalog tags let the explicit
/// matrix construction find its way back from a table row to a formula;
/// rows produced by the generic algorithm carry None.
struct CatalogTag {
    enum Kind { None, CyclicPower, DihedralLinear, DihedralTwoDim } kind = None;
    // CyclicPower: chi_j with chi_j(g^k) = zeta_n^(jk), param = j.
    // DihedralLinear: param bit 0 = sends b to -1, bit 1 = sends a to -1.
    // DihedralTwoDim: param = h of the two-dimensional representation rho_h.
    long param = 0;
};

struct Irreducible {
    std::string label;
    long degree = 0;
    CatalogTag tag;
};

/// Classes x irreducibles grid of exact character values. Rows are ordered by
/// degree, then by descending lexicographic comparison of the value vectors,
/// so a table's layout is a deterministic function of the group. All the
/// classical invariants (orthogonality, sum of squared degrees, degree column)
/// are asserted exactly on construction.
class CharacterTable {
public:
    CharacterTable(FiniteGroup group, std::vector<Irreducible> irreducibles,
                   std::vector<std::vector<Cyclotomic>> values)
        : group_(std::move(group)),
          classes_(group_.conjugacy_classes()),
          irreducibles_(std::move(irreducibles)),
          values_(std::move(values)) {
        class_of_.assign(group_.size(), -1);
        for (std::size_t c = 0; c < classes_.size(); ++c)
            for (GroupElement m : classes_[c].members) class_of_[m.index] = static_cast<int>(c);
        sort_rows();
        validate();
    }

    const FiniteGroup& group() const { return group_; }
    const std::vector<ConjugacyClass>& classes() const { return classes_; }
    const std::vector<Irreducible>& irreducibles() const { return irreducibles_; }
    std::size_t count() const { return irreducibles_.size(); }

    long degree(std::size_t i) const { return irreducibles_[i].degree; }

    int class_index_of(GroupElement g) const { return class_of_[g.index]; }

    const Cyclotomic& value(std::size_t irrep, std::size_t cls) const {
        return values_[irrep][cls];
    }

    const Cyclotomic& value_at(std::size_t irrep, GroupElement g) const {
        return values_[irrep][class_of_[g.index]];
    }

    std::size_t index_of(const std::string& label) const {
        for (std::size_t i = 0; i < irreducibles_.size(); ++i)
            if (irreducibles_[i].label == label) return i;
        throw DomainError("no irreducible labeled '" + label + "'");
    }

    bool is_trivial(std::size_t irrep) const {
        if (irreducibles_[irrep].degree != 1) return false;
        for (const auto& v : values_[irrep])
            if (!v.is_one()) return false;
        return true;
    }

    std::size_t trivial_index() const {
        for (std::size_t i = 0; i < count(); ++i)
            if (is_trivial(i)) return i;
        throw std::logic_error("character table has no trivial character");
    }

    /// N is in the kernel of rho iff chi(h) = deg(rho) for every h in N.
    bool kernel_contains(std::size_t irrep, const Subgroup& n) const {
        for (GroupElement h : n.members)
            if (value_at(irrep, h) != Cyclotomic(degree(irrep))) return false;
        return true;
    }

private:
    void sort_rows() {
        std::vector<std::size_t> perm(irreducibles_.size());
        std::iota(perm.begin(), perm.end(), 0);
        std::sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) {
            if (irreducibles_[a].degree != irreducibles_[b].degree)
                return irreducibles_[a].degree < irreducibles_[b].degree;
            for (std::size_t c = 0; c < classes_.size(); ++c) {
                int cmp = Cyclotomic::compare(values_[a][c], values_[b][c]);
                if (cmp != 0) return cmp > 0;  // larger value vector first
            }
            return false;
        });
        std::vector<Irreducible> irr;
        std::vector<std::vector<Cyclotomic>> vals;
        for (std::size_t p : perm) {
            irr.push_back(std::move(irreducibles_[p]));
            vals.push_back(std::move(values_[p]));
        }
        irreducibles_ = std::move(irr);
        values_ = std::move(vals);
    }

    void validate() const {
        const long n = group_.size();
        internal_check(irreducibles_.size() == classes_.size(),
                       "number of irreducibles equals number of classes");
        long sq = 0;
        for (std::size_t i = 0; i < count(); ++i) {
            internal_check(values_[i].size() == classes_.size(), "table row length");
            internal_check(value_at(i, group_.identity()) == Cyclotomic(degree(i)),
                           "character at identity equals the degree");
            sq += degree(i) * degree(i);
        }
        internal_check(sq == n, "sum of squared degrees equals |G|");
        for (std::size_t i = 0; i < count(); ++i)
            for (std::size_t j = i; j < count(); ++j) {
                Cyclotomic s;
                for (std::size_t c = 0; c < classes_.size(); ++c)
                    s += Cyclotomic(static_cast<long>(classes_[c].members.size())) *
                         values_[i][c] * values_[j][c].conjugate();
                internal_check(s == (i == j ? Cyclotomic(n) : Cyclotomic()),
                               "row orthogonality");
            }
    }

    FiniteGroup group_;
    std::vector<ConjugacyClass> classes_;
    std::vector<Irreducible> irreducibles_;
    std::vector<std::vector<Cyclotomic>> values_;
    std::vector<int> class_of_;
};

namespace detail {

// ---- closed-form tables ----

inline CharacterTable cyclic_character_table(const FiniteGroup& g) {
    const long n = g.parameter_n();
    auto classes = g.conjugacy_classes();  // singletons, element index order
    std::vector<Irreducible> irr;
    std::vector<std::vector<Cyclotomic>> vals;
    for (long j = 0; j < n; ++j) {
        irr.push_back({"chi" + std::to_string(j), 1, {CatalogTag::CyclicPower, j}});
        std::vector<Cyclotomic> row;
        for (const auto& c : classes)
            row.push_back(Cyclotomic::root_of_unity(n, j * c.representative.index));
        vals.push_back(std::move(row));
    }
    return CharacterTable(g, std::move(irr), std::move(vals));
}

inline CharacterTable dihedral_character_table(const FiniteGroup& g) {
    const long n = g.parameter_n();
    auto classes = g.conjugacy_classes();
    std::vector<Irreducible> irr;
    std::vector<std::vector<Cyclotomic>> vals;

    auto linear_row = [&](bool flip_b, bool flip_a) {
        std::vector<Cyclotomic> row;
        for (const auto& c : classes) {
            auto [k, eps] = g.dihedral_normal_form(c.representative);
            long sign = 1;
            if (flip_a && k % 2 != 0) sign = -sign;
            if (flip_b && eps == 1) sign = -sign;
            row.push_back(Cyclotomic(sign));
        }
        return row;
    };

    irr.push_back({"triv", 1, {CatalogTag::DihedralLinear, 0}});
    vals.push_back(linear_row(false, false));
    irr.push_back({"sign", 1, {CatalogTag::DihedralLinear, 1}});
    vals.push_back(linear_row(true, false));
    if (n % 2 == 0) {
        irr.push_back({"sign_a", 1, {CatalogTag::DihedralLinear, 2}});
        vals.push_back(linear_row(false, true));
        irr.push_back({"sign_ab", 1, {CatalogTag::DihedralLinear, 3}});
        vals.push_back(linear_row(true, true));
    }
    const long hmax = n % 2 == 1 ? (n - 1) / 2 : n / 2 - 1;
    for (long h = 1; h <= hmax; ++h) {
        irr.push_back({"rho" + std::to_string(h), 2, {CatalogTag::DihedralTwoDim, h}});
        std::vector<Cyclotomic> row;
        for (const auto& c : classes) {
            auto [k, eps] = g.dihedral_normal_form(c.representative);
            row.push_back(eps == 1 ? Cyclotomic()
                                   : Cyclotomic::root_of_unity(n, h * k) +
                                         Cyclotomic::root_of_unity(n, -h * k));
        }
        vals.push_back(std::move(row));
    }
    return CharacterTable(g, std::move(irr), std::move(vals));
}

// ---- Burnside-Dixon over a prime field ----

inline std::uint64_t mulm(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return (static_cast<unsigned __int128>(a) * b) % p;
}

inline std::uint64_t powm(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
    std::uint64_t r = 1 % p;
    a %= p;
    while (e) {
        if (e & 1) r = mulm(r, a, p);
        a = mulm(a, a, p);
        e >>= 1;
    }
    return r;
}

inline std::uint64_t invm(std::uint64_t a, std::uint64_t p) { return powm(a, p - 2, p); }

inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

using ModRow = std::vector<std::uint64_t>;
using ModMatrix = std::vector<ModRow>;

// Row echelon form, returns pivot columns.
inline std::vector<std::size_t> mod_rref(ModMatrix& m, std::uint64_t p) {
    std::vector<std::size_t> pivots;
    if (m.empty()) return pivots;
    const std::size_t cols = m[0].size();
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols && row < m.size(); ++col) {
        std::size_t sel = m.size();
        for (std::size_t r = row; r < m.size(); ++r)
            if (m[r][col] != 0) { sel = r; break; }
        if (sel == m.size()) continue;
        std::swap(m[sel], m[row]);
        std::uint64_t inv = invm(m[row][col], p);
        for (std::size_t j = 0; j < cols; ++j) m[row][j] = mulm(m[row][j], inv, p);
        for (std::size_t r = 0; r < m.size(); ++r) {
            if (r == row || m[r][col] == 0) continue;
            std::uint64_t f = m[r][col];
            for (std::size_t j = 0; j < cols; ++j)
                m[r][j] = (m[r][j] + p - mulm(f, m[row][j], p)) % p;
        }
        pivots.push_back(col);
        ++row;
    }
    m.resize(row);
    return pivots;
}

inline ModMatrix mod_nullspace(ModMatrix m, std::uint64_t p) {
    const std::size_t cols = m.empty() ? 0 : m[0].size();
    std::vector<std::size_t> pivots = mod_rref(m, p);
    std::vector<bool> is_pivot(cols, false);
    for (std::size_t c : pivots) is_pivot[c] = true;
    ModMatrix basis;
    for (std::size_t free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        ModRow v(cols, 0);
        v[free] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r)
            v[pivots[r]] = (p - m[r][free]) % p;
        basis.push_back(std::move(v));
    }
    return basis;
}

/// Character table by the class-multiplication-coefficient method: find the
/// simultaneous eigenvectors of the class matrices over a prime field F_p with
/// p = 1 mod exponent(G) and p > 2 sqrt(|G|), then lift eigenvalue
/// multiplicities back to exact cyclotomic values.
inline CharacterTable dixon_character_table(const FiniteGroup& g) {
    const auto classes = g.conjugacy_classes();
    const std::size_t k = classes.size();
    const long n = g.size();

    std::vector<int> class_of(n, -1);
    for (std::size_t c = 0; c < k; ++c)
        for (GroupElement m : classes[c].members) class_of[m.index] = static_cast<int>(c);

    std::vector<long> class_order(k), class_size(k);
    long exponent = 1;
    for (std::size_t c = 0; c < k; ++c) {
        class_order[c] = g.order(classes[c].representative);
        class_size[c] = static_cast<long>(classes[c].members.size());
        exponent = std::lcm(exponent, class_order[c]);
    }
    std::vector<std::size_t> inv_class(k);
    for (std::size_t c = 0; c < k; ++c)
        inv_class[c] = class_of[g.inverse(classes[c].representative).index];

    std::uint64_t p = 0;
    const double bound = 2.0 * std::sqrt(static_cast<double>(n));
    for (std::uint64_t cand = exponent + 1;; cand += exponent) {
        if (static_cast<double>(cand) > bound && is_prime(cand)) {
            p = cand;
            break;
        }
    }

    // Class matrices M_i with (M_i)[j][l] = #{(x,y) in C_i x C_j : xy = z_l}.
    std::vector<ModMatrix> class_matrices(k, ModMatrix(k, ModRow(k, 0)));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t l = 0; l < k; ++l) {
            GroupElement z = classes[l].representative;
            for (GroupElement x : classes[i].members) {
                int j = class_of[g.product(g.inverse(x), z).index];
                class_matrices[i][j][l] = (class_matrices[i][j][l] + 1) % p;
            }
        }

    auto apply = [&](const ModMatrix& m, const ModRow& v) {
        ModRow out(k, 0);
        for (std::size_t r = 0; r < k; ++r) {
            std::uint64_t s = 0;
            for (std::size_t c = 0; c < k; ++c) s = (s + mulm(m[r][c], v[c], p)) % p;
            out[r] = s;
        }
        return out;
    };

    // Split the class algebra into its one-dimensional joint eigenspaces.
    std::vector<ModMatrix> spaces;
    {
        ModMatrix full(k, ModRow(k, 0));
        for (std::size_t i = 0; i < k; ++i) full[i][i] = 1;
        spaces.push_back(std::move(full));
    }
    for (std::size_t i = 1; i < k; ++i) {
        std::vector<ModMatrix> next;
        for (auto& space : spaces) {
            if (space.size() <= 1) {
                next.push_back(std::move(space));
                continue;
            }
            // Work in the echelonized basis of the subspace throughout.
            std::vector<std::size_t> pivots = mod_rref(space, p);
            const std::size_t dim = space.size();
            ModMatrix action(dim, ModRow(dim, 0));  // action[t][s]: image of basis s
            for (std::size_t s = 0; s < dim; ++s) {
                ModRow residue = apply(class_matrices[i], space[s]);
                for (std::size_t t = 0; t < dim; ++t) {
                    std::uint64_t c = residue[pivots[t]];
                    action[t][s] = c;
                    for (std::size_t j = 0; j < k; ++j)
                        residue[j] = (residue[j] + p - mulm(c, space[t][j], p)) % p;
                }
                for (std::size_t j = 0; j < k; ++j)
                    internal_check(residue[j] == 0, "class matrix must preserve the subspace");
            }
            // Collect all eigenspaces of the restricted action; the class
            // algebra is split semisimple over F_p, so they fill the space.
            std::vector<ModMatrix> pieces;
            std::size_t total = 0;
            for (std::uint64_t mu = 0; mu < p && total < dim; ++mu) {
                ModMatrix shifted = action;
                for (std::size_t t = 0; t < dim; ++t)
                    shifted[t][t] = (shifted[t][t] + p - mu) % p;
                ModMatrix kern = mod_nullspace(std::move(shifted), p);
                if (kern.empty()) continue;
                ModMatrix lifted;
                for (const auto& coeff : kern) {
                    ModRow v(k, 0);
                    for (std::size_t t = 0; t < dim; ++t)
                        for (std::size_t j = 0; j < k; ++j)
                            v[j] = (v[j] + mulm(coeff[t], space[t][j], p)) % p;
                    lifted.push_back(std::move(v));
                }
                total += lifted.size();
                pieces.push_back(std::move(lifted));
            }
            internal_check(total == dim, "eigenspaces must fill the subspace");
            for (auto& piece : pieces) next.push_back(std::move(piece));
        }
        spaces = std::move(next);
    }
    internal_check(spaces.size() == k, "class algebra splits into k one-dimensional eigenspaces");

    // Central character values omega_i per eigenvector, then degrees and
    // character values mod p.
    std::uint64_t w = 0;  // primitive root mod p
    {
        auto factors = prime_factors(p - 1);
        for (std::uint64_t cand = 2; cand < p; ++cand) {
            bool ok = true;
            for (std::uint64_t q : factors)
                if (powm(cand, (p - 1) / q, p) == 1) { ok = false; break; }
            if (ok) { w = cand; break; }
        }
        internal_check(w != 0, "found a primitive root");
    }

    std::vector<Irreducible> irr;
    std::vector<std::vector<Cyclotomic>> vals;
    for (const auto& space : spaces) {
        internal_check(space.size() == 1, "eigenspace dimension one");
        const ModRow& v = space[0];
        std::size_t t0 = 0;
        while (v[t0] == 0) ++t0;
        std::uint64_t vinv = invm(v[t0], p);
        ModRow omega(k, 0);
        for (std::size_t i = 0; i < k; ++i) {
            ModRow img = apply(class_matrices[i], v);
            omega[i] = mulm(img[t0], vinv, p);
            // Consistency: the vector must be an actual eigenvector.
            for (std::size_t j = 0; j < k; ++j)
                internal_check(img[j] == mulm(omega[i], v[j], p), "joint eigenvector check");
        }
        std::uint64_t s = 0;
        for (std::size_t i = 0; i < k; ++i)
            s = (s + mulm(mulm(omega[i], omega[inv_class[i]], p),
                          invm(class_size[i] % p, p), p)) % p;
        std::uint64_t dd = mulm(n % p, invm(s, p), p);
        std::uint64_t d = 0;
        for (std::uint64_t r = 1; r <= (p - 1) / 2; ++r)
            if (mulm(r, r, p) == dd) { d = r; break; }
        internal_check(d != 0, "degree has a small square root mod p");

        ModRow chi_p(k, 0);
        for (std::size_t i = 0; i < k; ++i)
            chi_p[i] = mulm(mulm(d, omega[i], p), invm(class_size[i] % p, p), p);

        std::vector<Cyclotomic> row(k);
        for (std::size_t i = 0; i < k; ++i) {
            const long m = class_order[i];
            std::uint64_t z = powm(w, (p - 1) / m, p);
            // chi at powers of the representative, by classes.
            std::vector<std::uint64_t> chi_pow(m);
            GroupElement acc = g.identity();
            for (long e = 0; e < m; ++e) {
                chi_pow[e] = chi_p[class_of[acc.index]];
                acc = g.product(acc, classes[i].representative);
            }
            Cyclotomic value;
            std::uint64_t minv = invm(m % p, p);
            for (long alpha = 0; alpha < m; ++alpha) {
                std::uint64_t cnt = 0;
                for (long e = 0; e < m; ++e) {
                    long r = ((m - alpha * e % m) % m);
                    cnt = (cnt + mulm(chi_pow[e], powm(z, r, p), p)) % p;
                }
                cnt = mulm(cnt, minv, p);
                internal_check(cnt <= d, "eigenvalue multiplicities bounded by the degree");
                if (cnt)
                    value += Cyclotomic(static_cast<long>(cnt)) *
                             Cyclotomic::root_of_unity(m, alpha);
            }
            row[i] = std::move(value);
        }
        irr.push_back({"", static_cast<long>(d), {CatalogTag::None, 0}});
        vals.push_back(std::move(row));
    }

    CharacterTable table(g, std::move(irr), std::move(vals));
    // Labels follow the canonical row order.
    std::vector<Irreducible> relabeled = table.irreducibles();
    std::vector<std::vector<Cyclotomic>> values;
    for (std::size_t i = 0; i < table.count(); ++i) {
        relabeled[i].label = "X" + std::to_string(i + 1);
        std::vector<Cyclotomic> row;
        for (std::size_t c = 0; c < table.classes().size(); ++c) row.push_back(table.value(i, c));
        values.push_back(std::move(row));
    }
    return CharacterTable(g, std::move(relabeled), std::move(values));
}

}  // namespace detail

/// Closed-form tables for the catalog kinds, Burnside-Dixon for the rest.
inline CharacterTable character_table(const FiniteGroup& g) {
    switch (g.kind()) {
        case GroupKind::Cyclic: return detail::cyclic_character_table(g);
        case GroupKind::Dihedral: return detail::dihedral_character_table(g);
        case GroupKind::Permutation: return detail::dixon_character_table(g);
    }
    throw std::logic_error("unreachable");
}

/// Generic-algorithm table regardless of kind (cross-validation path).
inline CharacterTable dixon_character_table(const FiniteGroup& g) {
    return detail::dixon_character_table(g);
}

/// Multiplicity of each irreducible in a representation with character chi
/// (one value per conjugacy class, in table class order):
/// m_i = (1/|G|) sum_g chi(g) conj(chi_i(g)). Throws NonIntegerMultiplicity
/// when chi is not a character.
inline std::vector<long> module_multiplicities(const std::vector<Cyclotomic>& chi,
                                               const CharacterTable& t) {
    if (chi.size() != t.classes().size())
        throw DomainError("class function has wrong length for this table");
    const long n = t.group().size();
    std::vector<long> out;
    Cyclotomic check_dim;
    for (std::size_t i = 0; i < t.count(); ++i) {
        Cyclotomic s;
        for (std::size_t c = 0; c < t.classes().size(); ++c)
            s += Cyclotomic(static_cast<long>(t.classes()[c].members.size())) * chi[c] *
                 t.value(i, c).conjugate();
        s *= Cyclotomic(Rational(BigInt(1), BigInt(n)));
        if (!s.is_rational() || !s.rational_value().is_integer() ||
            s.rational_value() < Rational(0))
            throw NonIntegerMultiplicity("class function is not a character: multiplicity of " +
                                         t.irreducibles()[i].label + " is " + s.str());
        long m = static_cast<long>(s.rational_value().numerator());
        out.push_back(m);
        check_dim += Cyclotomic(m * t.degree(i));
    }
    internal_check(check_dim == chi[t.class_index_of(t.group().identity())],
                   "multiplicities reconstruct the dimension");
    return out;
}

/// N_alpha = number of eigenvalues of rho(g) equal to zeta_e^alpha, where
/// e = order(g); recovered from character values by a discrete Fourier sum.
inline std::vector<long> eigenvalue_counts(const CharacterTable& t, std::size_t irrep,
                                           GroupElement g) {
    const long e = t.group().order(g);
    std::vector<Cyclotomic> chi_pow(e);
    GroupElement acc = t.group().identity();
    for (long s = 0; s < e; ++s) {
        chi_pow[s] = t.value_at(irrep, acc);
        acc = t.group().product(acc, g);
    }
    std::vector<long> counts(e);
    long total = 0;
    for (long alpha = 0; alpha < e; ++alpha) {
        Cyclotomic s;
        for (long k = 0; k < e; ++k)
            s += chi_pow[k] * Cyclotomic::root_of_unity(e, -alpha * k);
        s *= Cyclotomic(Rational(BigInt(1), BigInt(e)));
        if (!s.is_rational() || !s.rational_value().is_integer() ||
            s.rational_value() < Rational(0))
            throw NonIntegerCount("inconsistent table data: eigenvalue count " + s.str());
        counts[alpha] = static_cast<long>(s.rational_value().numerator());
        total += counts[alpha];
    }
    internal_check(total == t.degree(irrep), "eigenvalue counts sum to the degree");
    return counts;
}

/// The irreducible whose character is the complex conjugate of row `irrep`;
/// an involution on row indices.
inline std::size_t conjugate_character(const CharacterTable& t, std::size_t irrep) {
    for (std::size_t j = 0; j < t.count(); ++j) {
        bool match = true;
        for (std::size_t c = 0; c < t.classes().size() && match; ++c)
            match = t.value(j, c) == t.value(irrep, c).conjugate();
        if (match) return j;
    }
    throw std::logic_error("conjugate character missing from the table");
}

}  // namespace coverforge
