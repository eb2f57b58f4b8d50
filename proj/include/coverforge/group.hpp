#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <queue>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "coverforge/errors.hpp"

namespace coverforge {

/// Index into the parent group's element list.
struct GroupElement {
    int index = -1;
    friend bool operator==(GroupElement, GroupElement) = default;
    friend auto operator<=>(GroupElement, GroupElement) = default;
};

enum class GroupKind { Cyclic, Dihedral, Permutation };

struct ConjugacyClass {
    GroupElement representative;           // least-index member
    std::vector<GroupElement> members;     // ascending by index
};

struct Subgroup {
    std::vector<GroupElement> members;     // ascending by index, contains identity
    bool is_normal = false;

    bool contains(GroupElement g) const {
        return std::binary_search(members.begin(), members.end(), g);
    }
    std::size_t order() const { return members.size(); }
};

/// A finite group materialized as a full multiplication table. Construction
/// verifies the group axioms (exhaustively up to order 64, sampled above).
/// Immutable after construction.
///
/// Element naming fixes the file-format grammar:
///   cyclic(n)      "1", "g", "g^2", ...          index k = g^k
///   dihedral(n)    "1", "a", ..., "b", "a*b", ... index k = a^k, n+k = a^k*b
///   permutation    "[2,1,3]" one-based image lists, sorted lexicographically
class FiniteGroup {
public:
    static constexpr std::size_t kDefaultElementCap = 10000;

    static FiniteGroup cyclic(long n) {
        if (n < 1) throw DomainError("cyclic group needs n >= 1");
        FiniteGroup g;
        g.kind_ = GroupKind::Cyclic;
        g.n_ = n;
        for (long k = 0; k < n; ++k)
            g.labels_.push_back(k == 0 ? "1" : (k == 1 ? "g" : "g^" + std::to_string(k)));
        g.build_table([n](int a, int b) { return static_cast<int>((a + b) % n); });
        return g;
    }

    /// Order 2n, elements a^k b^eps with a^n = b^2 = 1 and b*a^k = a^(-k)*b.
    static FiniteGroup dihedral(long n) {
        if (n < 2) throw DomainError("dihedral group needs n >= 2");
        FiniteGroup g;
        g.kind_ = GroupKind::Dihedral;
        g.n_ = n;
        for (long eps = 0; eps < 2; ++eps)
            for (long k = 0; k < n; ++k) g.labels_.push_back(dihedral_label(k, eps));
        g.build_table([n](int x, int y) {
            long k1 = x % n, e1 = x / n, k2 = y % n, e2 = y / n;
            long k = e1 == 0 ? (k1 + k2) % n : ((k1 - k2) % n + n) % n;
            long e = (e1 + e2) % 2;
            return static_cast<int>(e * n + k);
        });
        return g;
    }

    /// Closure of one-based image-list generators on {1..degree}.
    static FiniteGroup permutation(long degree, const std::vector<std::vector<int>>& generators,
                                   std::size_t element_cap = kDefaultElementCap) {
        if (degree < 1) throw DomainError("permutation group needs degree >= 1");
        if (generators.empty()) throw DomainError("permutation group needs at least one generator");
        for (const auto& gen : generators) check_image_list(gen, degree);

        std::vector<int> id(degree);
        for (long i = 0; i < degree; ++i) id[i] = static_cast<int>(i + 1);
        std::set<std::vector<int>> seen{id};
        std::queue<std::vector<int>> todo;
        todo.push(id);
        while (!todo.empty()) {
            std::vector<int> cur = std::move(todo.front());
            todo.pop();
            for (const auto& gen : generators) {
                std::vector<int> prod = compose(cur, gen);
                if (seen.insert(prod).second) {
                    if (seen.size() > element_cap)
                        throw DomainError("permutation closure exceeds the element cap of " +
                                          std::to_string(element_cap));
                    todo.push(prod);
                }
            }
        }

        FiniteGroup g;
        g.kind_ = GroupKind::Permutation;
        g.degree_ = degree;
        g.images_.assign(seen.begin(), seen.end());  // set order = lexicographic, identity first
        std::map<std::vector<int>, int> index;
        for (std::size_t i = 0; i < g.images_.size(); ++i) {
            index[g.images_[i]] = static_cast<int>(i);
            g.labels_.push_back(image_list_label(g.images_[i]));
        }
        g.build_table([&](int a, int b) { return index.at(compose(g.images_[a], g.images_[b])); });
        return g;
    }

    GroupKind kind() const { return kind_; }
    long parameter_n() const { return n_; }          // cyclic/dihedral parameter
    long degree() const { return degree_; }          // permutation degree
    int size() const { return static_cast<int>(labels_.size()); }
    GroupElement identity() const { return {0}; }

    GroupElement product(GroupElement a, GroupElement b) const {
        check_member(a);
        check_member(b);
        return {table_[a.index][b.index]};
    }

    GroupElement inverse(GroupElement a) const {
        check_member(a);
        return {inverse_[a.index]};
    }

    GroupElement power(GroupElement a, long k) const {
        check_member(a);
        if (k < 0) return power(inverse(a), -k);
        GroupElement acc = identity();
        for (long i = 0; i < k; ++i) acc = product(acc, a);
        return acc;
    }

    /// Least k >= 1 with g^k = 1.
    long order(GroupElement a) const {
        check_member(a);
        long k = 1;
        GroupElement acc = a;
        while (acc != identity()) {
            acc = product(acc, a);
            ++k;
        }
        return k;
    }

    GroupElement conjugate(GroupElement g, GroupElement by) const {
        return product(product(by, g), inverse(by));
    }

    GroupElement commutator(GroupElement a, GroupElement b) const {
        return product(product(a, b), product(inverse(a), inverse(b)));
    }

    const std::string& label(GroupElement g) const {
        check_member(g);
        return labels_[g.index];
    }

    /// Parses the element grammar for this group's kind; names normalize
    /// (e.g. "a^9" in dihedral(3) comes back as the identity).
    GroupElement element_from_label(const std::string& text) const;

    /// Partition of G into conjugacy classes, ordered by least member index.
    std::vector<ConjugacyClass> conjugacy_classes() const {
        std::vector<ConjugacyClass> classes;
        std::vector<bool> seen(size(), false);
        for (int e = 0; e < size(); ++e) {
            if (seen[e]) continue;
            std::set<int> orbit;
            for (int s = 0; s < size(); ++s) orbit.insert(conjugate({e}, {s}).index);
            ConjugacyClass c;
            c.representative = {e};
            for (int m : orbit) {
                seen[m] = true;
                c.members.push_back({m});
            }
            classes.push_back(std::move(c));
        }
        if (kind_ == GroupKind::Dihedral)
            internal_check(static_cast<long>(classes.size()) ==
                               (n_ % 2 ? (n_ + 3) / 2 : (n_ + 6) / 2),
                           "dihedral class count");
        return classes;
    }

    /// Smallest subgroup containing S; normality is checked exhaustively.
    Subgroup subgroup_generated(const std::vector<GroupElement>& gens) const {
        std::set<int> members{0};
        std::queue<int> todo;
        todo.push(0);
        for (GroupElement g : gens) {
            check_member(g);
            if (members.insert(g.index).second) todo.push(g.index);
        }
        while (!todo.empty()) {
            int cur = todo.front();
            todo.pop();
            for (int m : std::vector<int>(members.begin(), members.end())) {
                for (int prod : {table_[cur][m], table_[m][cur]}) {
                    if (members.insert(prod).second) todo.push(prod);
                }
            }
        }
        Subgroup h;
        for (int m : members) h.members.push_back({m});
        h.is_normal = is_normal_subgroup(h);
        return h;
    }

    bool is_normal_subgroup(const Subgroup& h) const {
        for (int g = 0; g < size(); ++g)
            for (GroupElement m : h.members)
                if (!h.contains(conjugate(m, {g}))) return false;
        return true;
    }

    /// Verifies H really is a subgroup (identity, closure, inverses).
    bool is_subgroup(const Subgroup& h) const {
        if (h.members.empty() || h.members.front() != identity()) return false;
        for (GroupElement a : h.members) {
            if (a.index < 0 || a.index >= size()) return false;
            if (!h.contains(inverse(a))) return false;
            for (GroupElement b : h.members)
                if (!h.contains(product(a, b))) return false;
        }
        return true;
    }

    const std::vector<int>& permutation_images(GroupElement g) const {
        internal_check(kind_ == GroupKind::Permutation, "permutation_images on non-permutation group");
        check_member(g);
        return images_[g.index];
    }

    /// (k, eps) with g = a^k b^eps; dihedral groups only.
    std::pair<long, long> dihedral_normal_form(GroupElement g) const {
        internal_check(kind_ == GroupKind::Dihedral, "dihedral_normal_form on non-dihedral group");
        check_member(g);
        return {g.index % n_, g.index / n_};
    }

    friend bool operator==(const FiniteGroup& a, const FiniteGroup& b) {
        return a.kind_ == b.kind_ && a.n_ == b.n_ && a.degree_ == b.degree_ &&
               a.labels_ == b.labels_ && a.table_ == b.table_;
    }

private:
    static std::string dihedral_label(long k, long eps) {
        if (eps == 0) {
            if (k == 0) return "1";
            return k == 1 ? "a" : "a^" + std::to_string(k);
        }
        if (k == 0) return "b";
        return (k == 1 ? std::string("a") : "a^" + std::to_string(k)) + "*b";
    }

    static std::string image_list_label(const std::vector<int>& images) {
        std::string s = "[";
        for (std::size_t i = 0; i < images.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(images[i]);
        }
        return s + "]";
    }

    static void check_image_list(const std::vector<int>& gen, long degree) {
        if (static_cast<long>(gen.size()) != degree)
            throw DomainError("permutation image list has wrong length");
        std::vector<bool> hit(degree, false);
        for (int v : gen) {
            if (v < 1 || v > degree || hit[v - 1])
                throw DomainError("permutation image list is not a bijection");
            hit[v - 1] = true;
        }
    }

    // (g o h)(x) = g(h(x)), one-based image lists.
    static std::vector<int> compose(const std::vector<int>& g, const std::vector<int>& h) {
        std::vector<int> out(g.size());
        for (std::size_t x = 0; x < g.size(); ++x) out[x] = g[h[x] - 1];
        return out;
    }

    void check_member(GroupElement g) const {
        if (g.index < 0 || g.index >= size())
            throw std::out_of_range("group element index " + std::to_string(g.index) +
                                    " out of range for group of order " + std::to_string(size()));
    }

    void build_table(const std::function<int(int, int)>& prod) {
        const int n = size();
        table_.assign(n, std::vector<int>(n));
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) table_[a][b] = prod(a, b);
        inverse_.assign(n, -1);
        for (int a = 0; a < n; ++a) {
            internal_check(table_[0][a] == a && table_[a][0] == a, "identity must act trivially");
            for (int b = 0; b < n; ++b)
                if (table_[a][b] == 0 && table_[b][a] == 0) {
                    inverse_[a] = b;
                    break;
                }
            internal_check(inverse_[a] >= 0, "every element needs a two-sided inverse");
        }
        verify_associativity();
    }

    void verify_associativity() const {
        const int n = size();
        auto check = [&](int a, int b, int c) {
            internal_check(table_[table_[a][b]][c] == table_[a][table_[b][c]],
                           "multiplication table must be associative");
        };
        if (n <= 64) {
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b)
                    for (int c = 0; c < n; ++c) check(a, b, c);
        } else {
            std::mt19937 rng(12345);
            std::uniform_int_distribution<int> pick(0, n - 1);
            for (int t = 0; t < 50000; ++t) check(pick(rng), pick(rng), pick(rng));
        }
    }

    GroupKind kind_ = GroupKind::Cyclic;
    long n_ = 0;       // cyclic/dihedral parameter
    long degree_ = 0;  // permutation degree
    std::vector<std::string> labels_;
    std::vector<std::vector<int>> table_;
    std::vector<int> inverse_;
    std::vector<std::vector<int>> images_;  // permutation kind only
};

namespace detail {

inline long parse_exponent(const std::string& text, std::size_t& pos) {
    bool neg = false;
    if (pos < text.size() && text[pos] == '-') {
        neg = true;
        ++pos;
    }
    std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == start) throw ParseError("expected integer exponent in '" + text + "'");
    long v = std::stol(text.substr(start, pos - start));
    return neg ? -v : v;
}

// "x", "x^3", "x^-1" for a fixed letter; returns the exponent.
inline std::optional<long> parse_power_of(const std::string& text, char letter, std::size_t& pos) {
    if (pos >= text.size() || text[pos] != letter) return std::nullopt;
    ++pos;
    if (pos < text.size() && text[pos] == '^') {
        ++pos;
        return parse_exponent(text, pos);
    }
    return 1;
}

inline std::string strip(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

}  // namespace detail

inline GroupElement FiniteGroup::element_from_label(const std::string& raw) const {
    const std::string text = detail::strip(raw);
    if (text.empty()) throw ParseError("empty element name");
    switch (kind_) {
        case GroupKind::Cyclic: {
            if (text == "1") return identity();
            std::size_t pos = 0;
            auto e = detail::parse_power_of(text, 'g', pos);
            if (!e || pos != text.size())
                throw ParseError("'" + raw + "' is not a cyclic group element (want 1, g, g^k)");
            long k = ((*e % n_) + n_) % n_;
            return {static_cast<int>(k)};
        }
        case GroupKind::Dihedral: {
            if (text == "1") return identity();
            std::size_t pos = 0;
            long k = 0, eps = 0;
            auto e = detail::parse_power_of(text, 'a', pos);
            if (e) {
                k = *e;
                if (pos < text.size() && text[pos] == '*') ++pos;
            }
            if (pos < text.size() && text[pos] == 'b') {
                eps = 1;
                ++pos;
            }
            if (pos != text.size() || (!e && eps == 0))
                throw ParseError("'" + raw +
                                 "' is not a dihedral group element (want 1, a^k, b, a^k*b)");
            k = ((k % n_) + n_) % n_;
            return {static_cast<int>(eps * n_ + k)};
        }
        case GroupKind::Permutation: {
            if (text.size() < 2 || text.front() != '[' || text.back() != ']')
                throw ParseError("'" + raw + "' is not a permutation element (want [2,1,3])");
            std::vector<int> images;
            std::size_t pos = 1;
            while (pos < text.size() - 1) {
                std::size_t start = pos;
                while (pos < text.size() - 1 && text[pos] != ',') ++pos;
                images.push_back(std::stoi(detail::strip(text.substr(start, pos - start))));
                if (pos < text.size() - 1) ++pos;
            }
            for (std::size_t i = 0; i < images_.size(); ++i)
                if (images_[i] == images) return {static_cast<int>(i)};
            throw ParseError("permutation '" + raw + "' is not an element of this group");
        }
    }
    throw std::logic_error("unreachable");
}

/// A quotient G/N together with the projection homomorphism. The quotient is
/// handed back in canonical form: recognized as a catalog cyclic or dihedral
/// group when it is one, otherwise as a permutation group acting regularly on
/// the cosets.
struct QuotientGroup {
    FiniteGroup group;
    std::vector<GroupElement> projection;  // parent element index -> quotient element

    GroupElement map(GroupElement g) const { return projection.at(static_cast<std::size_t>(g.index)); }
};

namespace detail {

struct CanonicalizedGroup {
    FiniteGroup group;
    std::vector<int> to_catalog;  // abstract index -> catalog element index
};

/// Renames an abstract group (given by a product function on 0..n-1 with
/// identity 0) as a catalog group. Deterministic: scans for generators in
/// index order, tries cyclic before dihedral, falls back to the left-regular
/// permutation realization.
inline CanonicalizedGroup canonicalize_small_group(int n,
                                                   const std::function<int(int, int)>& prod) {
    auto order_of = [&](int x) {
        int k = 1, acc = x;
        while (acc != 0) {
            acc = prod(acc, x);
            ++k;
        }
        return k;
    };
    auto powers_of = [&](int x) {
        std::vector<int> p{0};
        int acc = x;
        while (acc != 0) {
            p.push_back(acc);
            acc = prod(acc, x);
        }
        return p;
    };

    // Cyclic: first element of full order generates.
    for (int x = 0; x < n; ++x) {
        if (order_of(x) != n) continue;
        std::vector<int> to_catalog(n, -1);
        int acc = 0;
        for (int t = 0; t < n; ++t) {
            to_catalog[acc] = t;
            acc = prod(acc, x);
        }
        return {FiniteGroup::cyclic(n), std::move(to_catalog)};
    }

    // Dihedral of order n = 2m: rotation x of order m plus an inverting
    // involution y outside <x>.
    if (n >= 4 && n % 2 == 0) {
        const int m = n / 2;
        for (int x = 0; x < n; ++x) {
            if (order_of(x) != m) continue;
            std::vector<int> pow = powers_of(x);
            std::vector<bool> in_x(n, false);
            for (int p : pow) in_x[p] = true;
            int xinv = pow[(m - 1) % m];
            for (int y = 0; y < n; ++y) {
                if (in_x[y] || order_of(y) != 2) continue;
                if (prod(prod(y, x), y) != xinv) continue;
                std::vector<int> to_catalog(n, -1);
                for (int k = 0; k < m; ++k) {
                    to_catalog[pow[k]] = k;
                    to_catalog[prod(pow[k], y)] = m + k;
                }
                bool total = std::find(to_catalog.begin(), to_catalog.end(), -1) ==
                             to_catalog.end();
                internal_check(total, "dihedral recognition must cover the whole group");
                return {FiniteGroup::dihedral(m), std::move(to_catalog)};
            }
        }
    }

    // Left-regular permutation realization.
    std::vector<std::vector<int>> perms(n);
    for (int q = 0; q < n; ++q) {
        perms[q].resize(n);
        for (int j = 0; j < n; ++j) perms[q][j] = prod(q, j) + 1;
    }
    FiniteGroup g = FiniteGroup::permutation(n, perms, static_cast<std::size_t>(n));
    internal_check(g.size() == n, "regular realization has the right order");
    std::vector<int> to_catalog(n);
    for (int q = 0; q < n; ++q) {
        std::string lbl = "[";
        for (int j = 0; j < n; ++j) lbl += (j ? "," : "") + std::to_string(perms[q][j]);
        lbl += "]";
        to_catalog[q] = g.element_from_label(lbl).index;
    }
    return {std::move(g), std::move(to_catalog)};
}

}  // namespace detail

/// Coset group G/N with its projection. N must be normal (verified; throws
/// NonNormalSubgroup otherwise).
inline QuotientGroup quotient_group(const FiniteGroup& g, const Subgroup& n) {
    if (!g.is_subgroup(n)) throw NonNormalSubgroup("quotient by a set that is not a subgroup");
    if (!g.is_normal_subgroup(n)) throw NonNormalSubgroup("quotient by a non-normal subgroup");

    std::vector<int> coset_of(g.size(), -1);
    std::vector<int> reps;
    for (int e = 0; e < g.size(); ++e) {
        if (coset_of[e] != -1) continue;
        int id = static_cast<int>(reps.size());
        reps.push_back(e);
        for (GroupElement m : n.members) coset_of[g.product({e}, m).index] = id;
    }
    const int q = static_cast<int>(reps.size());
    auto prod = [&](int a, int b) { return coset_of[g.product({reps[a]}, {reps[b]}).index]; };

    detail::CanonicalizedGroup canon = detail::canonicalize_small_group(q, prod);
    QuotientGroup out{std::move(canon.group), {}};
    out.projection.resize(g.size());
    for (int e = 0; e < g.size(); ++e) out.projection[e] = {canon.to_catalog[coset_of[e]]};
    return out;
}

/// A subgroup repackaged as a standalone FiniteGroup (catalog-recognized the
/// same way quotients are), with maps in and out of the parent.
struct SubgroupEmbedding {
    FiniteGroup group;
    std::vector<GroupElement> to_parent;        // subgroup element -> parent element
    std::map<int, GroupElement> from_parent;    // parent index -> subgroup element

    GroupElement map(GroupElement parent_elt) const {
        auto it = from_parent.find(parent_elt.index);
        if (it == from_parent.end())
            throw DomainError("element does not belong to the subgroup");
        return it->second;
    }
};

inline SubgroupEmbedding group_from_subgroup(const FiniteGroup& g, const Subgroup& h) {
    internal_check(g.is_subgroup(h), "group_from_subgroup wants a genuine subgroup");
    const int m = static_cast<int>(h.members.size());
    std::map<int, int> pos;
    for (int i = 0; i < m; ++i) pos[h.members[i].index] = i;
    auto prod = [&](int a, int b) {
        return pos.at(g.product(h.members[a], h.members[b]).index);
    };
    detail::CanonicalizedGroup canon = detail::canonicalize_small_group(m, prod);
    SubgroupEmbedding out{std::move(canon.group), {}, {}};
    out.to_parent.resize(m);
    for (int i = 0; i < m; ++i) {
        out.to_parent[canon.to_catalog[i]] = h.members[i];
        out.from_parent[h.members[i].index] = {canon.to_catalog[i]};
    }
    return out;
}

enum class SubgroupShape { Cyclic, Dihedral };

struct DihedralSubgroupInfo {
    std::string description;
    SubgroupShape shape = SubgroupShape::Cyclic;
    Subgroup subgroup;
    long order = 0;
    long index = 0;   // |G| / order
};

/// The full catalog of subgroups of dihedral(n): rotation subgroups <a^i> for
/// i | n, the n reflection subgroups <a^i*b>, and the dihedral subgroups
/// <a^j, a^i*b> for j | n, j != n, 0 <= i < j.
inline std::vector<DihedralSubgroupInfo> dihedral_subgroups(const FiniteGroup& g) {
    if (g.kind() != GroupKind::Dihedral) throw NotDihedral("dihedral_subgroups wants a dihedral group");
    const long n = g.parameter_n();
    std::vector<DihedralSubgroupInfo> out;

    auto push = [&](std::string desc, SubgroupShape shape, std::vector<GroupElement> members) {
        std::sort(members.begin(), members.end());
        Subgroup h;
        h.members = std::move(members);
        h.is_normal = g.is_normal_subgroup(h);
        internal_check(g.is_subgroup(h), "dihedral_subgroups produced a non-subgroup");
        DihedralSubgroupInfo info;
        info.description = std::move(desc);
        info.shape = shape;
        info.order = static_cast<long>(h.members.size());
        info.index = 2 * n / info.order;
        info.subgroup = std::move(h);
        out.push_back(std::move(info));
    };

    for (long i : detail::divisors(n)) {
        std::vector<GroupElement> members;
        for (long t = 0; t < n / i; ++t) members.push_back({static_cast<int>((i * t) % n)});
        push("<" + g.label({static_cast<int>(i % n)}) + ">", SubgroupShape::Cyclic,
             std::move(members));
    }
    for (long i = 0; i < n; ++i)
        push("<" + g.label({static_cast<int>(n + i)}) + ">", SubgroupShape::Cyclic,
             {{0}, {static_cast<int>(n + i)}});
    for (long j : detail::divisors(n)) {
        if (j == n) continue;
        for (long i = 0; i < j; ++i) {
            std::vector<GroupElement> members;
            for (long t = 0; t < n / j; ++t) {
                members.push_back({static_cast<int>((j * t) % n)});
                members.push_back({static_cast<int>(n + (j * t + i) % n)});
            }
            push("<" + g.label({static_cast<int>(j % n)}) + ", " +
                     g.label({static_cast<int>(n + i)}) + ">",
                 SubgroupShape::Dihedral, std::move(members));
        }
    }
    return out;
}

}  // namespace coverforge
