#pragma once

#include <optional>
#include <set>
#include <vector>

#include "coverforge/local_system.hpp"

namespace coverforge {

/// A monodromy tuple (g_1, ..., g_r) over a genus-0 base with g_1 ... g_r = 1.
struct HurwitzTuple {
    FiniteGroup group;
    std::vector<GroupElement> entries;

    bool product_is_identity() const {
        GroupElement acc = group.identity();
        for (GroupElement e : entries) acc = group.product(acc, e);
        return acc == group.identity();
    }

    bool generates_group() const {
        return static_cast<int>(group.subgroup_generated(entries).order()) == group.size();
    }
};

/// Elementary braid move on adjacent entries (l is 1-based, 1 <= l <= r-1):
///   direction +1: (g_l, g_(l+1)) -> (g_(l+1), g_(l+1)^-1 g_l g_(l+1))
///   direction -1: (g_l, g_(l+1)) -> (g_l g_(l+1) g_l^-1, g_l)
/// Product and generated subgroup are preserved.
inline HurwitzTuple braid_move(const HurwitzTuple& t, std::size_t l, int direction) {
    if (l < 1 || l >= t.entries.size())
        throw std::out_of_range("braid move index out of range");
    const FiniteGroup& g = t.group;
    HurwitzTuple out = t;
    GroupElement x = t.entries[l - 1], y = t.entries[l];
    if (direction >= 0) {
        out.entries[l - 1] = y;
        out.entries[l] = g.product(g.product(g.inverse(y), x), y);
    } else {
        out.entries[l - 1] = g.product(g.product(x, y), g.inverse(x));
        out.entries[l] = x;
    }
    return out;
}

struct OrbitLimits {
    std::size_t max_length = 8;
    std::size_t max_group = 24;
    std::size_t max_orbit = 200000;
};

struct OrbitCensus {
    std::vector<std::vector<int>> members;  // entry-index tuples, sorted (canonical order)
    std::size_t size = 0;
    bool complete = true;
    std::vector<int> class_multiset;        // sorted class indices of the entries
    long genus = 0;
    std::optional<std::vector<long>> mu_vector;  // per irreducible; only when generating
    std::vector<int> representative;        // canonical least member
};

/// Closure of the tuple under all braid moves, with a census of the orbit's
/// invariants. The class multiset is checked to be constant across the orbit.
/// Exceeding max_orbit stops the search and flags the census incomplete.
OrbitCensus hurwitz_orbit(const HurwitzTuple& start, const OrbitLimits& limits = {});

/// Spectral report for a Dehn twist matrix in the abelian-cover shape: all
/// diagonal entries 1 except (l,l), and the only other entries allowed to be
/// nonzero are (l-1, l) and (l+1, l). Verifies det = a_(l,l), spectrum
/// {1, ..., 1, a_(l,l)}, and decides diagonalizability by the annihilator
/// (x - 1)(x - a_(l,l)).
struct TwistReport {
    CycloMatrix matrix;
    Cyclotomic diagonal_value;  // a_(l,l)
    Cyclotomic det;
    std::vector<Cyclotomic> eigenvalues;  // multiset, size = dimension
    bool diagonalizable = false;
};

inline TwistReport dehn_twist_spectrum(const CycloMatrix& m, std::size_t l) {
    if (!m.is_square() || m.rows() == 0) throw ShapeViolation("twist matrix must be square");
    if (l < 1 || l > m.rows()) throw ShapeViolation("twist column index out of range");
    const std::size_t n = m.rows(), col = l - 1;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) {
                if (i != col && m.at(i, j) != Cyclotomic(1))
                    throw ShapeViolation("off-twist diagonal entries must be 1");
            } else {
                bool allowed = j == col && (i + 1 == col || i == col + 1);
                if (!allowed && !m.at(i, j).is_zero())
                    throw ShapeViolation("entry outside the twist shape is nonzero");
            }
        }

    TwistReport rep;
    rep.matrix = m;
    rep.diagonal_value = m.at(col, col);
    rep.det = m.det();
    internal_check(rep.det == rep.diagonal_value, "twist determinant equals a_(l,l)");
    rep.eigenvalues.assign(n - 1, Cyclotomic(1));
    rep.eigenvalues.push_back(rep.diagonal_value);

    const CycloMatrix id = CycloMatrix::identity(n);
    if (rep.diagonal_value == Cyclotomic(1)) {
        rep.diagonalizable = m.is_identity();
    } else {
        CycloMatrix ann = (m - id) * (m - rep.diagonal_value * id);
        rep.diagonalizable = ann.is_zero();
    }
    return rep;
}

/// Sufficient criterion for infinite monodromy of an eigenspace: Hodge type
/// (1,1) and a non-identity twist in the special linear group (det 1, hence
/// unipotent and non-diagonalizable in the twist shape). `false` means the
/// criterion does not apply, never that the monodromy is finite.
inline bool infinite_monodromy_predicate(std::pair<long, long> hodge_type,
                                         const TwistReport& twist) {
    return hodge_type == std::pair<long, long>{1, 1} && twist.det == Cyclotomic(1) &&
           !twist.diagonalizable;
}

inline OrbitCensus hurwitz_orbit(const HurwitzTuple& start, const OrbitLimits& limits) {
    const FiniteGroup& g = start.group;
    const std::size_t r = start.entries.size();
    if (r == 0 || r > limits.max_length)
        throw DomainError("tuple length outside the configured bound");
    if (static_cast<std::size_t>(g.size()) > limits.max_group)
        throw DomainError("group order outside the configured bound");
    if (!start.product_is_identity())
        throw InvalidDatum("Hurwitz tuple product must be the identity");

    auto key_of = [](const std::vector<GroupElement>& es) {
        std::vector<int> key;
        key.reserve(es.size());
        for (GroupElement e : es) key.push_back(e.index);
        return key;
    };
    std::vector<int> cls(g.size());
    {
        auto classes = g.conjugacy_classes();
        for (std::size_t c = 0; c < classes.size(); ++c)
            for (GroupElement m : classes[c].members) cls[m.index] = static_cast<int>(c);
    }
    auto class_multiset_of = [&](const std::vector<GroupElement>& es) {
        std::vector<int> out;
        for (GroupElement e : es) out.push_back(cls[e.index]);
        std::sort(out.begin(), out.end());
        return out;
    };

    OrbitCensus census;
    census.class_multiset = class_multiset_of(start.entries);

    std::set<std::vector<int>> seen{key_of(start.entries)};
    std::queue<HurwitzTuple> todo;
    todo.push(start);
    while (!todo.empty()) {
        HurwitzTuple cur = std::move(todo.front());
        todo.pop();
        for (std::size_t l = 1; l < r; ++l) {
            for (int dir : {+1, -1}) {
                HurwitzTuple next = braid_move(cur, l, dir);
                auto key = key_of(next.entries);
                if (!seen.contains(key)) {
                    internal_check(class_multiset_of(next.entries) == census.class_multiset,
                                   "braid moves preserve the class multiset");
                    if (seen.size() >= limits.max_orbit) {
                        census.complete = false;
                    } else {
                        seen.insert(std::move(key));
                        todo.push(std::move(next));
                    }
                }
            }
        }
        if (!census.complete) break;
    }

    census.members.assign(seen.begin(), seen.end());
    census.size = census.members.size();
    census.representative = census.members.front();

    // Genus and mu-vector depend only on the class multiset; compute them from
    // the start tuple. The genus is that of the cover the tuple actually cuts
    // out, i.e. over the subgroup its entries generate.
    {
        SubgroupEmbedding emb = group_from_subgroup(g, g.subgroup_generated(start.entries));
        std::vector<Branch> branches;
        for (std::size_t i = 0; i < r; ++i) {
            GroupElement e = start.entries[i];
            if (e == g.identity()) continue;  // unramified point, no branch record
            branches.push_back({"p" + std::to_string(i + 1), g.order(e), emb.map(e)});
        }
        BranchDatum d(emb.group, 0, {}, std::move(branches));
        census.genus = riemann_hurwitz_genus(d);
        if (emb.group.size() == g.size()) {
            CharacterTable t = character_table(g);
            std::vector<Branch> full;
            for (const auto& b : d.branches())
                full.push_back({b.label, b.order, emb.to_parent[b.monodromy.index]});
            BranchDatum full_datum(g, 0, {}, std::move(full));
            std::vector<long> mu;
            for (std::size_t i = 0; i < t.count(); ++i)
                mu.push_back(chevalley_weil_multiplicity(full_datum, t, i));
            census.mu_vector = std::move(mu);
        }
    }
    return census;
}

}  // namespace coverforge
