#pragma once

#include <optional>
#include <string>
#include <vector>

#include "coverforge/group.hpp"

namespace coverforge {

struct Branch {
    std::string label;
    long order = 0;           // declared ramification order m_i >= 2
    GroupElement monodromy;   // h_i, must have exactly that order
};

/// Branch data for a Galois cover: the group, the base genus g', images of the
/// 2g' handle generators, and one (label, order, monodromy) record per branch
/// point. Immutable; all operations on it are pure.
class BranchDatum {
public:
    BranchDatum(FiniteGroup group, long base_genus, std::vector<GroupElement> handles,
                std::vector<Branch> branches)
        : group_(std::move(group)),
          base_genus_(base_genus),
          handles_(std::move(handles)),
          branches_(std::move(branches)) {
        if (base_genus_ < 0) throw DomainError("base genus must be >= 0");
        if (handles_.size() != static_cast<std::size_t>(2 * base_genus_))
            throw DomainError("a genus g' base needs exactly 2g' handle images");
    }

    const FiniteGroup& group() const { return group_; }
    long base_genus() const { return base_genus_; }
    const std::vector<GroupElement>& handles() const { return handles_; }
    const std::vector<Branch>& branches() const { return branches_; }
    std::size_t branch_count() const { return branches_.size(); }

    const Branch& branch(std::size_t i) const {
        if (i >= branches_.size()) throw std::out_of_range("branch index out of range");
        return branches_[i];
    }

    /// All generator images: branch monodromies plus handle images.
    std::vector<GroupElement> generator_images() const {
        std::vector<GroupElement> gens;
        for (const auto& b : branches_) gens.push_back(b.monodromy);
        gens.insert(gens.end(), handles_.begin(), handles_.end());
        return gens;
    }

    /// Image of the long relation: (prod_i h_i) * (prod_j [A_j, B_j]).
    GroupElement long_relation_image() const {
        GroupElement acc = group_.identity();
        for (const auto& b : branches_) acc = group_.product(acc, b.monodromy);
        for (std::size_t j = 0; j + 1 < handles_.size(); j += 2)
            acc = group_.product(acc, group_.commutator(handles_[j], handles_[j + 1]));
        return acc;
    }

private:
    FiniteGroup group_;
    long base_genus_ = 0;
    std::vector<GroupElement> handles_;
    std::vector<Branch> branches_;
};

struct ValidationIssue {
    enum Kind { BranchOrderMismatch, InvalidBranchOrder, LongRelationViolated,
                NotGenerating, DuplicateLabel } kind;
    int index = -1;  // offending branch index, or -1
    std::string message;
};

struct ValidationReport {
    std::vector<ValidationIssue> issues;
    bool valid() const { return issues.empty(); }
};

/// Checks every datum invariant: declared orders match element orders, the
/// long relation holds, the images generate the whole group, labels are
/// distinct. Failures are report entries, never exceptions.
inline ValidationReport validate_datum(const BranchDatum& d) {
    ValidationReport report;
    const FiniteGroup& g = d.group();

    for (std::size_t i = 0; i < d.branch_count(); ++i) {
        const Branch& b = d.branch(i);
        if (b.order < 2)
            report.issues.push_back({ValidationIssue::InvalidBranchOrder, static_cast<int>(i),
                                     "branch '" + b.label + "' declares order " +
                                         std::to_string(b.order) + " (must be >= 2)"});
        long actual = g.order(b.monodromy);
        if (actual != b.order)
            report.issues.push_back({ValidationIssue::BranchOrderMismatch, static_cast<int>(i),
                                     "branch '" + b.label + "': monodromy " +
                                         g.label(b.monodromy) + " has order " +
                                         std::to_string(actual) + ", declared " +
                                         std::to_string(b.order)});
    }

    if (d.long_relation_image() != g.identity())
        report.issues.push_back({ValidationIssue::LongRelationViolated, -1,
                                 "product of monodromies and handle commutators is " +
                                     g.label(d.long_relation_image()) + ", not the identity"});

    if (static_cast<int>(g.subgroup_generated(d.generator_images()).order()) != g.size())
        report.issues.push_back({ValidationIssue::NotGenerating, -1,
                                 "monodromies and handles do not generate the full group"});

    for (std::size_t i = 0; i < d.branch_count(); ++i)
        for (std::size_t j = i + 1; j < d.branch_count(); ++j)
            if (d.branch(i).label == d.branch(j).label)
                report.issues.push_back({ValidationIssue::DuplicateLabel, static_cast<int>(j),
                                         "duplicate branch label '" + d.branch(j).label + "'"});
    return report;
}

inline void require_valid(const BranchDatum& d, const char* where) {
    ValidationReport r = validate_datum(d);
    if (!r.valid())
        throw InvalidDatum(std::string(where) + ": datum is invalid (" + r.issues[0].message + ")");
}

/// Genus of the covering curve from 2g - 2 = |G|(2g' - 2) + sum (|G|/m_i)(m_i - 1).
inline long riemann_hurwitz_genus(const BranchDatum& d) {
    const long n = d.group().size();
    long rhs = n * (2 * d.base_genus() - 2);
    for (const auto& b : d.branches()) {
        internal_check(n % b.order == 0, "branch order divides the group order");
        rhs += (n / b.order) * (b.order - 1);
    }
    if (rhs % 2 != 0)
        throw NonIntegralGenus("ramification count is odd: 2g-2 = " + std::to_string(rhs));
    long genus = (rhs + 2) / 2;
    if (genus < 0)
        throw NegativeGenus("datum forces negative genus " + std::to_string(genus));
    return genus;
}

struct FiberReport {
    std::string label;
    long fiber_size = 0;                         // |G| / m_i
    std::vector<GroupElement> inertia_generators;  // conjugacy orbit of h_i
    std::vector<long> cycle_type;                // m_i repeated fiber_size times
};

/// Fiber bookkeeping over one branch point: fiber size, the conjugacy orbit
/// of the local monodromy, and the cycle type of a small loop.
inline FiberReport fiber_structure(const BranchDatum& d, std::size_t i) {
    require_valid(d, "fiber_structure");
    const Branch& b = d.branch(i);
    const FiniteGroup& g = d.group();
    FiberReport rep;
    rep.label = b.label;
    rep.fiber_size = g.size() / b.order;
    std::set<int> orbit;
    for (int s = 0; s < g.size(); ++s) orbit.insert(g.conjugate(b.monodromy, {s}).index);
    for (int m : orbit) {
        rep.inertia_generators.push_back({m});
        internal_check(g.order({m}) == b.order, "inertia generators share the branch order");
    }
    rep.cycle_type.assign(rep.fiber_size, b.order);
    internal_check(rep.fiber_size * b.order == g.size(), "fiber size times order equals |G|");
    return rep;
}

struct CollisionResult {
    BranchDatum datum;           // over the subgroup generated by what remains
    bool merged_branch_dropped = false;
    std::string merged_label;    // empty when dropped
    SubgroupEmbedding embedding; // new group's elements inside the original group
};

/// Merges two adjacent branch points: the merged point carries the product
/// monodromy h_i * h_j, and disappears entirely when that product is trivial.
/// The resulting datum lives over the subgroup generated by the remaining
/// images.
inline CollisionResult collide_points(const BranchDatum& d, std::size_t i, std::size_t j) {
    require_valid(d, "collide_points");
    if (i >= d.branch_count() || j >= d.branch_count())
        throw std::out_of_range("collide_points: branch index out of range");
    if (j != i + 1)
        throw NonAdjacentMerge("collide_points merges adjacent branches only (got " +
                               std::to_string(i) + ", " + std::to_string(j) + ")");

    const FiniteGroup& g = d.group();
    GroupElement merged = g.product(d.branch(i).monodromy, d.branch(j).monodromy);
    const bool dropped = merged == g.identity();

    if (dropped && d.branch_count() == 2 && d.base_genus() == 0 && g.size() > 1)
        throw EmptyCollision("merging the last two branches of a nontrivial genus-0 datum "
                             "would leave an empty branch list");

    std::vector<Branch> kept;
    std::string merged_label;
    for (std::size_t t = 0; t < d.branch_count(); ++t) {
        if (t == j) continue;
        if (t == i) {
            if (dropped) continue;
            merged_label = d.branch(i).label + "+" + d.branch(j).label;
            kept.push_back({merged_label, g.order(merged), merged});
        } else {
            kept.push_back(d.branch(t));
        }
    }

    std::vector<GroupElement> gens;
    for (const auto& b : kept) gens.push_back(b.monodromy);
    gens.insert(gens.end(), d.handles().begin(), d.handles().end());
    SubgroupEmbedding emb = group_from_subgroup(g, g.subgroup_generated(gens));

    std::vector<GroupElement> new_handles;
    for (GroupElement h : d.handles()) new_handles.push_back(emb.map(h));
    std::vector<Branch> new_branches;
    for (const auto& b : kept) new_branches.push_back({b.label, b.order, emb.map(b.monodromy)});

    CollisionResult out{BranchDatum(emb.group, d.base_genus(), std::move(new_handles),
                                    std::move(new_branches)),
                        dropped, dropped ? std::string() : merged_label, std::move(emb)};
    require_valid(out.datum, "collide_points result");
    return out;
}

struct DescentEntry {
    std::string label;
    bool kept = false;
    long old_order = 0;
    long new_order = 0;  // 1 when dropped
};

struct QuotientDatumResult {
    BranchDatum datum;            // over G/N
    QuotientGroup quotient;
    std::vector<DescentEntry> report;
};

/// Pushes the datum down to the quotient cover by a normal subgroup N:
/// monodromies map through the projection, branches whose image is trivial
/// disappear, and each survivor's order drops to |H_i| / |H_i ∩ N|.
inline QuotientDatumResult quotient_datum(const BranchDatum& d, const Subgroup& n) {
    require_valid(d, "quotient_datum");
    const FiniteGroup& g = d.group();
    QuotientGroup q = quotient_group(g, n);

    std::vector<DescentEntry> report;
    std::vector<Branch> branches;
    for (const auto& b : d.branches()) {
        GroupElement image = q.map(b.monodromy);
        long new_order = q.group.order(image);
        // Independent route: |<h>| / |<h> ∩ N|.
        Subgroup h = g.subgroup_generated({b.monodromy});
        long in_n = 0;
        for (GroupElement m : h.members)
            if (n.contains(m)) ++in_n;
        internal_check(new_order == static_cast<long>(h.order()) / in_n,
                       "quotient branch order equals |H| / |H ∩ N|");
        bool kept = image != q.group.identity();
        report.push_back({b.label, kept, b.order, new_order});
        if (kept) branches.push_back({b.label, new_order, image});
    }

    std::vector<GroupElement> handles;
    for (GroupElement h : d.handles()) handles.push_back(q.map(h));

    QuotientDatumResult out{BranchDatum(q.group, d.base_genus(), std::move(handles),
                                        std::move(branches)),
                            std::move(q), std::move(report)};
    require_valid(out.datum, "quotient_datum result");
    // Branch set downstairs is a subset of the branch set upstairs.
    for (const auto& b : out.datum.branches()) {
        bool found = false;
        for (const auto& ob : d.branches()) found = found || ob.label == b.label;
        internal_check(found, "quotient branch labels come from the original datum");
    }
    return out;
}

}  // namespace coverforge
