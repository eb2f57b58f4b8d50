#pragma once

// Shared fixtures and independent oracles for the test suites. Oracles here
// deliberately avoid the library code paths they are used to check.

#include <map>
#include <optional>
#include <random>
#include <set>
#include <vector>

#include "coverforge/coverforge.hpp"

namespace cftest {

using namespace coverforge;

// ---- fixed data ----

inline BranchDatum d3_datum() {  // (b, a*b, a), genus 0
    auto g = FiniteGroup::dihedral(3);
    return BranchDatum(g, 0, {},
                       {{"t1", 2, g.element_from_label("b")},
                        {"t2", 2, g.element_from_label("a*b")},
                        {"t3", 3, g.element_from_label("a")}});
}

inline BranchDatum d3_r4_datum() {  // (b, b, a, a^2), genus 2
    auto g = FiniteGroup::dihedral(3);
    return BranchDatum(g, 0, {},
                       {{"t1", 2, g.element_from_label("b")},
                        {"t2", 2, g.element_from_label("b")},
                        {"t3", 3, g.element_from_label("a")},
                        {"t4", 3, g.element_from_label("a^2")}});
}

inline BranchDatum d3_r6_datum() {  // (b, b, b, b, a, a^2), genus 5
    auto g = FiniteGroup::dihedral(3);
    std::vector<Branch> bs;
    for (int i = 1; i <= 4; ++i)
        bs.push_back({"t" + std::to_string(i), 2, g.element_from_label("b")});
    bs.push_back({"t5", 3, g.element_from_label("a")});
    bs.push_back({"t6", 3, g.element_from_label("a^2")});
    return BranchDatum(g, 0, {}, std::move(bs));
}

inline BranchDatum hyperelliptic_datum(int r) {  // r branches of order 2 over C2
    auto g = FiniteGroup::cyclic(2);
    std::vector<Branch> bs;
    for (int i = 1; i <= r; ++i)
        bs.push_back({"t" + std::to_string(i), 2, g.element_from_label("g")});
    return BranchDatum(g, 0, {}, std::move(bs));
}

inline BranchDatum c3_r3_datum() {  // (g, g, g) over C3, genus 1
    auto g = FiniteGroup::cyclic(3);
    std::vector<Branch> bs;
    for (int i = 1; i <= 3; ++i)
        bs.push_back({"t" + std::to_string(i), 3, g.element_from_label("g")});
    return BranchDatum(g, 0, {}, std::move(bs));
}

inline BranchDatum d6_datum() {  // (b, a*b, a) over D6, genus 0
    auto g = FiniteGroup::dihedral(6);
    return BranchDatum(g, 0, {},
                       {{"t1", 2, g.element_from_label("b")},
                        {"t2", 2, g.element_from_label("a*b")},
                        {"t3", 6, g.element_from_label("a")}});
}

inline BranchDatum d6_r6_datum() {  // (b, b, b, b, a, a^5) over D6
    auto g = FiniteGroup::dihedral(6);
    std::vector<Branch> bs;
    for (int i = 1; i <= 4; ++i)
        bs.push_back({"t" + std::to_string(i), 2, g.element_from_label("b")});
    bs.push_back({"t5", 6, g.element_from_label("a")});
    bs.push_back({"t6", 6, g.element_from_label("a^5")});
    return BranchDatum(g, 0, {}, std::move(bs));
}

// ---- random generation ----

inline std::optional<BranchDatum> random_valid_datum(const FiniteGroup& g, std::mt19937& rng,
                                                     long base_genus, int r,
                                                     int attempts = 400) {
    std::uniform_int_distribution<int> any(0, g.size() - 1);
    std::uniform_int_distribution<int> nontrivial(1, g.size() - 1);
    for (int attempt = 0; attempt < attempts; ++attempt) {
        std::vector<GroupElement> handles;
        for (long j = 0; j < 2 * base_genus; ++j) handles.push_back({any(rng)});
        GroupElement commutators = g.identity();
        for (std::size_t j = 0; j + 1 < handles.size(); j += 2)
            commutators = g.product(commutators, g.commutator(handles[j], handles[j + 1]));

        std::vector<GroupElement> hs;
        GroupElement prefix = g.identity();
        for (int i = 0; i < r - 1; ++i) {
            GroupElement h{nontrivial(rng)};
            hs.push_back(h);
            prefix = g.product(prefix, h);
        }
        GroupElement last = g.product(g.inverse(prefix), g.inverse(commutators));
        if (last == g.identity()) continue;
        hs.push_back(last);

        std::vector<GroupElement> gens = hs;
        gens.insert(gens.end(), handles.begin(), handles.end());
        if (static_cast<int>(g.subgroup_generated(gens).order()) != g.size()) continue;

        std::vector<Branch> branches;
        for (int i = 0; i < r; ++i)
            branches.push_back({"t" + std::to_string(i + 1), g.order(hs[i]), hs[i]});
        BranchDatum d(g, base_genus, std::move(handles), std::move(branches));
        if (validate_datum(d).valid()) return d;
    }
    return std::nullopt;
}

// ---- oracles ----

/// Exhaustive generator-image isomorphism search (order <= ~16 is fine).
inline bool isomorphic_groups(const FiniteGroup& a, const FiniteGroup& b) {
    if (a.size() != b.size()) return false;
    const int n = a.size();
    // Greedy generating set for a.
    std::vector<int> gens;
    Subgroup span = a.subgroup_generated({});
    for (int e = 0; e < n && static_cast<int>(span.order()) < n; ++e) {
        if (span.contains({e})) continue;
        gens.push_back(e);
        std::vector<GroupElement> gs;
        for (int t : gens) gs.push_back({t});
        span = a.subgroup_generated(gs);
    }
    if (gens.empty()) return true;  // both trivial

    // Try every image tuple with matching orders and extend to a homomorphism.
    std::vector<int> image(gens.size(), 0);
    auto try_images = [&](auto&& self, std::size_t pos) -> bool {
        if (pos == gens.size()) {
            // Build the map by closing words over the generators.
            std::map<int, int> f{{0, 0}};
            std::queue<int> todo;
            todo.push(0);
            while (!todo.empty()) {
                int x = todo.front();
                todo.pop();
                for (std::size_t k = 0; k < gens.size(); ++k) {
                    int xa = a.product({x}, {gens[k]}).index;
                    int xb = b.product({f.at(x)}, {image[k]}).index;
                    auto it = f.find(xa);
                    if (it == f.end()) {
                        f[xa] = xb;
                        todo.push(xa);
                    } else if (it->second != xb) {
                        return false;
                    }
                }
            }
            if (f.size() != static_cast<std::size_t>(n)) return false;
            std::set<int> values;
            for (auto& [k, v] : f) values.insert(v);
            if (values.size() != static_cast<std::size_t>(n)) return false;
            for (auto& [x, fx] : f)
                for (auto& [y, fy] : f)
                    if (f.at(a.product({x}, {y}).index) != b.product({fx}, {fy}).index)
                        return false;
            return true;
        }
        for (int cand = 0; cand < n; ++cand) {
            if (b.order({cand}) != a.order({gens[pos]})) continue;
            image[pos] = cand;
            if (self(self, pos + 1)) return true;
        }
        return false;
    };
    return try_images(try_images, 0);
}

/// Every subgroup of g, as sorted index sets, by incremental closure.
inline std::set<std::vector<int>> all_subgroups(const FiniteGroup& g) {
    auto key = [](const Subgroup& s) {
        std::vector<int> k;
        for (GroupElement m : s.members) k.push_back(m.index);
        return k;
    };
    std::set<std::vector<int>> seen;
    std::queue<std::vector<int>> todo;
    Subgroup triv = g.subgroup_generated({});
    seen.insert(key(triv));
    todo.push(key(triv));
    while (!todo.empty()) {
        std::vector<int> cur = todo.front();
        todo.pop();
        for (int e = 0; e < g.size(); ++e) {
            if (std::binary_search(cur.begin(), cur.end(), e)) continue;
            std::vector<GroupElement> gens;
            for (int m : cur) gens.push_back({m});
            gens.push_back({e});
            std::vector<int> next = key(g.subgroup_generated(gens));
            if (seen.insert(next).second) todo.push(next);
        }
    }
    return seen;
}

/// Multiset equality of matrix lists by exact value (entries may be stored at
/// different conductors on the two sides).
inline bool same_matrix_multiset(const std::vector<CycloMatrix>& a,
                                 const std::vector<CycloMatrix>& b) {
    if (a.size() != b.size()) return false;
    std::vector<bool> used(b.size(), false);
    for (const auto& m : a) {
        bool matched = false;
        for (std::size_t j = 0; j < b.size() && !matched; ++j)
            if (!used[j] && m == b[j]) used[j] = matched = true;
        if (!matched) return false;
    }
    return true;
}

/// Two tables over possibly different (but isomorphic) groups agree up to a
/// permutation of rows and a class matching. Classes pair up by
/// (size, representative order), which must be an injective key here.
inline bool same_tables_up_to_matching(const CharacterTable& a, const CharacterTable& b) {
    if (a.count() != b.count() || a.classes().size() != b.classes().size()) return false;
    const std::size_t k = a.classes().size();
    auto key = [](const CharacterTable& t, std::size_t c) {
        return std::pair<std::size_t, long>(t.classes()[c].members.size(),
                                            t.group().order(t.classes()[c].representative));
    };
    std::vector<std::size_t> column(k, k);  // a-class c -> b-class column[c]
    std::vector<bool> taken(k, false);
    for (std::size_t c = 0; c < k; ++c) {
        for (std::size_t d = 0; d < k; ++d)
            if (!taken[d] && key(a, c) == key(b, d)) {
                column[c] = d;
                taken[d] = true;
                break;
            }
        if (column[c] == k) return false;  // class keys do not match up
    }
    std::vector<bool> used(b.count(), false);
    for (std::size_t i = 0; i < a.count(); ++i) {
        bool matched = false;
        for (std::size_t j = 0; j < b.count() && !matched; ++j) {
            if (used[j] || a.degree(i) != b.degree(j)) continue;
            bool eq = true;
            for (std::size_t c = 0; c < k && eq; ++c) eq = a.value(i, c) == b.value(j, column[c]);
            if (eq) used[j] = matched = true;
        }
        if (!matched) return false;
    }
    return true;
}

/// Character of the permutation action of g on the cosets of h (independent
/// induced-character oracle): chi(x) = #fixed cosets, one value per class.
inline std::vector<Cyclotomic> coset_permutation_character(const FiniteGroup& g,
                                                           const Subgroup& h,
                                                           const CharacterTable& t) {
    std::vector<int> coset_of(g.size(), -1);
    std::vector<int> reps;
    for (int e = 0; e < g.size(); ++e) {
        if (coset_of[e] != -1) continue;
        reps.push_back(e);
        for (GroupElement m : h.members) coset_of[g.product({e}, m).index] = static_cast<int>(reps.size()) - 1;
    }
    std::vector<Cyclotomic> chi;
    for (const auto& c : t.classes()) {
        long fixed = 0;
        for (int rep : reps)
            if (coset_of[g.product(c.representative, {rep}).index] == coset_of[rep]) ++fixed;
        chi.push_back(Cyclotomic(fixed));
    }
    return chi;
}

}  // namespace cftest
