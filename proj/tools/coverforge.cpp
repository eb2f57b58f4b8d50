// coverforge: exact invariants of finite Galois covers of curves given by
// branch data. One subcommand per capability; all numeric output is exact
// (integers and cyclotomic strings) unless --approx adds a float column.

#include <complex>
#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "coverforge/coverforge.hpp"

namespace cf = coverforge;
using cf::Json;

namespace {

struct Options {
    std::string format = "text";
    bool approx = false;
    std::size_t element_cap = cf::FiniteGroup::kDefaultElementCap;
};

std::string group_name(const cf::FiniteGroup& g) {
    switch (g.kind()) {
        case cf::GroupKind::Cyclic: return "cyclic(" + std::to_string(g.parameter_n()) + ")";
        case cf::GroupKind::Dihedral: return "dihedral(" + std::to_string(g.parameter_n()) + ")";
        case cf::GroupKind::Permutation:
            return "permutation(degree " + std::to_string(g.degree()) + ")";
    }
    return "?";
}

std::string approx_str(const cf::Cyclotomic& v) {
    std::complex<double> z = v.to_complex();
    std::ostringstream os;
    os << std::fixed << std::setprecision(6) << z.real() << (z.imag() < 0 ? "-" : "+")
       << std::abs(z.imag()) << "i";
    return os.str();
}

void print_aligned(std::ostream& out, const std::vector<std::vector<std::string>>& rows) {
    std::vector<std::size_t> width;
    for (const auto& row : rows)
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c >= width.size()) width.push_back(0);
            width[c] = std::max(width[c], row[c].size());
        }
    for (const auto& row : rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            out << row[c];
            if (c + 1 < row.size()) out << std::string(width[c] - row[c].size() + 2, ' ');
        }
        out << "\n";
    }
}

Json validation_json(const cf::ValidationReport& report) {
    Json issues = Json::array();
    for (const auto& issue : report.issues) {
        Json j;
        j["index"] = issue.index;
        j["message"] = issue.message;
        issues.push_back(std::move(j));
    }
    Json out;
    out["valid"] = report.valid();
    out["issues"] = std::move(issues);
    return out;
}

Json matrix_json(const cf::CycloMatrix& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m.at(i, j).str());
        rows.push_back(std::move(row));
    }
    return rows;
}

void print_matrix(std::ostream& out, const cf::CycloMatrix& m, const std::string& indent,
                  bool approx = false) {
    std::vector<std::vector<std::string>> rows;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        std::vector<std::string> row;
        for (std::size_t j = 0; j < m.cols(); ++j)
            row.push_back(approx ? approx_str(m.at(i, j)) : m.at(i, j).str());
        rows.push_back(std::move(row));
    }
    std::ostringstream os;
    print_aligned(os, rows);
    std::istringstream is(os.str());
    std::string line;
    while (std::getline(is, line)) out << indent << line << "\n";
}

/// Shared result envelope; stable across runs (no timestamps, ordered keys).
struct Report {
    Json body;
    std::vector<std::string> warnings;

    Report(const std::string& command, Json inputs) {
        body["command"] = command;
        body["inputs"] = std::move(inputs);
    }
    void finish(const Options& opt, const std::string& text) {
        body["warnings"] = warnings;
        if (opt.format == "json") {
            std::cout << body.dump(2) << "\n";
        } else {
            std::cout << text;
            for (const auto& w : warnings) std::cout << "warning: " << w << "\n";
        }
    }
};

int run_validate(const Options& opt, const std::string& path) {
    cf::BranchDatum d = cf::load_datum_file(path, opt.element_cap);
    cf::ValidationReport report = cf::validate_datum(d);
    Report rep("validate", cf::datum_json(d));
    rep.body["result"] = validation_json(report);

    std::ostringstream os;
    os << "datum: " << path << "\n"
       << "group: " << group_name(d.group()) << ", order " << d.group().size() << "\n"
       << "base genus: " << d.base_genus() << "\n"
       << "branches: " << d.branch_count() << "\n";
    if (report.valid()) {
        os << "status: valid\n";
    } else {
        os << "status: INVALID\n";
        for (const auto& issue : report.issues) os << "  - " << issue.message << "\n";
    }
    rep.finish(opt, os.str());
    return report.valid() ? 0 : 2;
}

int run_genus(const Options& opt, const std::string& path) {
    cf::BranchDatum d = cf::load_datum_file(path, opt.element_cap);
    cf::require_valid(d, "genus");
    long genus = cf::riemann_hurwitz_genus(d);
    Report rep("genus", cf::datum_json(d));
    rep.body["result"] = Json{{"genus", genus}};
    std::ostringstream os;
    os << "genus: " << genus << "\n";
    rep.finish(opt, os.str());
    return 0;
}

int run_cw(const Options& opt, const std::string& path) {
    cf::BranchDatum d = cf::load_datum_file(path, opt.element_cap);
    cf::require_valid(d, "cw");
    cf::CharacterTable t = cf::character_table(d.group());
    cf::LocalSystemDecomposition dec = cf::decompose_direct_image(d, t);

    Report rep("cw", cf::datum_json(d));
    Json rows = Json::array();
    long total = 0;
    for (const auto& s : dec.summands) {
        Json row;
        row["irreducible"] = s.label;
        row["degree"] = s.rank;
        row["mu"] = s.mu;
        row["hodge_type"] = Json::array({s.hodge_type.first, s.hodge_type.second});
        row["support"] = s.support;
        rows.push_back(std::move(row));
        total += s.rank * s.mu;
    }
    rep.body["result"] = Json{{"genus", dec.genus}, {"table", std::move(rows)},
                              {"dimension_check", total == dec.genus}};

    if (d.base_genus() == 0) {
        for (std::size_t i = 0; i < t.count(); ++i) {
            cf::PathBasisReport pb = cf::path_basis_report(d, t, i);
            if (!pb.consistent)
                rep.warnings.push_back("path-basis count for " + t.irreducibles()[i].label +
                                       ": claimed " + std::to_string(pb.claimed_dim) +
                                       ", chevalley-weil " + std::to_string(pb.cw_dim));
        }
    }

    std::vector<std::vector<std::string>> table;
    table.push_back({"irreducible", "degree", "mu", "hodge", "support"});
    for (const auto& s : dec.summands) {
        std::string sup;
        for (const auto& lbl : s.support) sup += (sup.empty() ? "" : ",") + lbl;
        if (sup.empty()) sup = "-";
        table.push_back({s.label, std::to_string(s.rank), std::to_string(s.mu),
                         "(" + std::to_string(s.hodge_type.first) + "," +
                             std::to_string(s.hodge_type.second) + ")",
                         sup});
    }
    std::ostringstream os;
    print_aligned(os, table);
    os << "sum d_rho * mu_rho = " << total << " = genus " << dec.genus << "  ["
       << (total == dec.genus ? "ok" : "MISMATCH") << "]\n";
    rep.finish(opt, os.str());
    if (total != dec.genus) return 2;
    return 0;
}

int run_support(const Options& opt, const std::string& path) {
    cf::BranchDatum d = cf::load_datum_file(path, opt.element_cap);
    cf::require_valid(d, "support");
    cf::CharacterTable t = cf::character_table(d.group());
    Report rep("support", cf::datum_json(d));
    Json rows = Json::array();
    std::ostringstream os;
    for (std::size_t i = 0; i < t.count(); ++i) {
        auto sup = cf::local_system_support(d, t, i);
        Json row;
        row["irreducible"] = t.irreducibles()[i].label;
        row["support"] = sup;
        rows.push_back(std::move(row));
        os << t.irreducibles()[i].label << ": ";
        if (sup.empty()) {
            os << "(empty)";
        } else {
            for (std::size_t k = 0; k < sup.size(); ++k) os << (k ? " " : "") << sup[k];
        }
        os << "\n";
    }
    rep.body["result"] = Json{{"supports", std::move(rows)}};
    rep.finish(opt, os.str());
    return 0;
}

int run_monodromy(const Options& opt, const std::string& path, const std::string& branch) {
    cf::BranchDatum d = cf::load_datum_file(path, opt.element_cap);
    cf::require_valid(d, "monodromy");
    cf::CharacterTable t = cf::character_table(d.group());

    std::vector<std::size_t> indices;
    if (branch.empty()) {
        for (std::size_t k = 0; k < d.branch_count(); ++k) indices.push_back(k);
    } else {
        bool found = false;
        for (std::size_t k = 0; k < d.branch_count(); ++k)
            if (d.branch(k).label == branch) {
                indices.push_back(k);
                found = true;
            }
        if (!found) throw cf::DomainError("no branch labeled '" + branch + "'");
    }

    Report rep("monodromy", cf::datum_json(d));
    Json out = Json::array();
    std::ostringstream os;
    for (std::size_t k : indices) {
        auto blocks = cf::monodromy_blocks(d, t, k);
        Json jb = Json::array();
        os << "branch " << d.branch(k).label << " (monodromy "
           << d.group().label(d.branch(k).monodromy) << "):\n";
        for (std::size_t i = 0; i < blocks.size(); ++i) {
            Json one;
            one["block"] = t.irreducibles()[i].label;
            one["matrix"] = matrix_json(blocks[i]);
            jb.push_back(std::move(one));
            os << "  block " << t.irreducibles()[i].label << ":\n";
            print_matrix(os, blocks[i], "    ");
            if (opt.approx) {
                os << "  ~\n";
                print_matrix(os, blocks[i], "    ", true);
            }
        }
        Json entry;
        entry["branch"] = d.branch(k).label;
        entry["blocks"] = std::move(jb);
        out.push_back(std::move(entry));
    }
    rep.body["result"] = Json{{"matrices", std::move(out)}};

    if (branch.empty() && d.base_genus() == 0 && d.branch_count() > 0) {
        cf::CycloMatrix prod = cf::monodromy_matrix(d, t, 0);
        for (std::size_t k = 1; k < d.branch_count(); ++k)
            prod = prod * cf::monodromy_matrix(d, t, k);
        bool ok = prod.is_identity();
        rep.body["result"]["product_is_identity"] = ok;
        os << "product over all branches: " << (ok ? "identity  [ok]" : "NOT identity") << "\n";
    }
    rep.finish(opt, os.str());
    return 0;
}

int run_quotient(const Options& opt, const std::string& path, const std::string& elts) {
    cf::BranchDatum d = cf::load_datum_file(path, opt.element_cap);
    cf::require_valid(d, "quotient");
    std::vector<cf::GroupElement> gens;
    std::stringstream ss(elts);
    std::string tok;
    while (std::getline(ss, tok, ','))
        if (!tok.empty()) gens.push_back(d.group().element_from_label(tok));
    cf::Subgroup n = d.group().subgroup_generated(gens);
    cf::QuotientDatumResult q = cf::quotient_datum(d, n);

    Report rep("quotient", cf::datum_json(d));
    Json descent = Json::array();
    for (const auto& e : q.report) {
        Json row;
        row["label"] = e.label;
        row["kept"] = e.kept;
        row["old_order"] = e.old_order;
        row["new_order"] = e.new_order;
        descent.push_back(std::move(row));
    }
    Json subgroup = Json::array();
    for (cf::GroupElement m : n.members) subgroup.push_back(d.group().label(m));
    rep.body["result"] = Json{{"normal_subgroup", std::move(subgroup)},
                              {"quotient_datum", cf::datum_json(q.datum)},
                              {"descent", std::move(descent)}};

    std::ostringstream os;
    os << "normal subgroup: order " << n.order() << "\n"
       << "quotient group: " << group_name(q.datum.group()) << ", order "
       << q.datum.group().size() << "\n"
       << "descent:\n";
    for (const auto& e : q.report) {
        os << "  " << e.label << ": ";
        if (e.kept)
            os << "kept, order " << e.old_order << " -> " << e.new_order << "\n";
        else
            os << "dropped (unramified downstairs)\n";
    }
    os << "quotient datum:\n" << cf::datum_json(q.datum).dump(2) << "\n";
    rep.finish(opt, os.str());
    return 0;
}

int run_collide(const Options& opt, const std::string& path, long i, long j) {
    cf::BranchDatum d = cf::load_datum_file(path, opt.element_cap);
    if (i < 1 || j < 1) throw cf::DomainError("--merge wants 1-based branch indices");
    cf::CollisionResult col = cf::collide_points(d, static_cast<std::size_t>(i - 1),
                                                 static_cast<std::size_t>(j - 1));
    Report rep("collide", cf::datum_json(d));
    rep.body["result"] = Json{{"merged_branch_dropped", col.merged_branch_dropped},
                              {"merged_label", col.merged_label},
                              {"datum", cf::datum_json(col.datum)}};
    std::ostringstream os;
    if (col.merged_branch_dropped)
        os << "merged monodromy is trivial; branch dropped\n";
    else
        os << "merged branch: " << col.merged_label << "\n";
    os << "new group: " << group_name(col.datum.group()) << ", order "
       << col.datum.group().size() << "\n"
       << "merged datum:\n"
       << cf::datum_json(col.datum).dump(2) << "\n";
    rep.finish(opt, os.str());
    return 0;
}

int run_dihedral_analyze(const Options& opt, const std::string& path) {
    cf::BranchDatum d = cf::load_datum_file(path, opt.element_cap);
    cf::require_valid(d, "dihedral-analyze");
    cf::DihedralClassification cls = cf::classify_branch_inertia(d);
    const long n = cls.profile.n;

    Report rep("dihedral-analyze", cf::datum_json(d));
    Json branches = Json::array();
    std::ostringstream os;
    os << "dihedral n: " << n << "\n";
    for (const auto& b : cls.branches) {
        const char* kind = b.kind == cf::DihedralInertiaKind::Reflection ? "reflection"
                           : b.kind == cf::DihedralInertiaKind::CentralInvolution
                               ? "central-involution"
                               : "rotation";
        Json row;
        row["label"] = b.label;
        row["kind"] = kind;
        row["exponent"] = b.exponent;
        branches.push_back(std::move(row));
        os << "  " << b.label << ": " << kind << " (exponent " << b.exponent << ")\n";
    }
    os << "reflections: l = " << cls.profile.reflection_count();
    if (cls.profile.common_reflection_exponent)
        os << ", common exponent " << *cls.profile.common_reflection_exponent;
    os << "\nrotation exponents:";
    for (long k : cls.profile.rotation_exponents) os << " " << k;
    os << "\n";

    Json mus = Json::array();
    const long hmax = n % 2 == 1 ? (n - 1) / 2 : n / 2 - 1;
    os << "mu table:\n";
    for (long h = 1; h <= hmax; ++h) {
        long mu = cf::dihedral_multiplicity_mu_h(d, h);
        Json row;
        row["h"] = h;
        row["mu"] = mu;
        mus.push_back(std::move(row));
        os << "  h=" << h << ": mu = " << mu << "\n";
    }

    Json infinity;
    try {
        bool ok = cf::infinity_ramification_check(cls.profile);
        infinity = Json{{"applicable", true}, {"unramified_at_infinity_possible", ok}};
        os << "infinity check: " << (ok ? "true" : "false") << "\n";
    } catch (const cf::AssumptionViolated&) {
        infinity = Json{{"applicable", false},
                        {"reason", "mixed reflection representatives"}};
        os << "infinity check: not applicable (mixed reflection representatives)\n";
    }

    rep.body["result"] = Json{{"branches", std::move(branches)},
                              {"l", cls.profile.reflection_count()},
                              {"rotation_exponents", cls.profile.rotation_exponents},
                              {"mu", std::move(mus)},
                              {"infinity_check", std::move(infinity)}};
    rep.finish(opt, os.str());
    return 0;
}

int run_hurwitz_orbits(const Options& opt, const std::string& path, std::size_t max_orbit,
                       std::size_t max_group) {
    cf::HurwitzTuple t = cf::parse_tuple_json(cf::load_json_file(path), opt.element_cap);
    cf::OrbitLimits limits;
    limits.max_orbit = max_orbit;
    limits.max_group = max_group;
    cf::OrbitCensus census = cf::hurwitz_orbit(t, limits);

    Report rep("hurwitz-orbits", cf::tuple_json(t));
    Json members = Json::array();
    for (const auto& m : census.members) {
        Json tuple = Json::array();
        for (int idx : m) tuple.push_back(t.group.label({idx}));
        members.push_back(std::move(tuple));
    }
    Json result;
    result["size"] = census.size;
    result["complete"] = census.complete;
    result["class_multiset"] = census.class_multiset;
    result["genus"] = census.genus;
    if (census.mu_vector) result["mu_vector"] = *census.mu_vector;
    Json repr = Json::array();
    for (int idx : census.representative) repr.push_back(t.group.label({idx}));
    result["representative"] = std::move(repr);
    result["members"] = std::move(members);
    rep.body["result"] = std::move(result);

    std::ostringstream os;
    os << "tuple over " << group_name(t.group) << ", length " << t.entries.size() << "\n"
       << "orbit size: " << census.size << (census.complete ? "" : " (INCOMPLETE: budget)")
       << "\n"
       << "class multiset:";
    for (int c : census.class_multiset) os << " " << c;
    os << "\ngenus: " << census.genus << "\n";
    if (census.mu_vector) {
        os << "mu vector:";
        for (long m : *census.mu_vector) os << " " << m;
        os << "\n";
    }
    os << "members:\n";
    for (const auto& m : census.members) {
        os << "  (";
        for (std::size_t k = 0; k < m.size(); ++k)
            os << (k ? ", " : "") << t.group.label({m[k]});
        os << ")\n";
    }
    rep.finish(opt, os.str());
    return 0;
}

int run_char_table(const Options& opt, const std::string& spec) {
    Json j;
    if (!spec.empty() && spec.front() == '{')
        j = cf::parse_json_text(spec, "argument");
    else
        j = cf::load_json_file(spec);
    if (j.contains("group")) j = j.at("group");
    cf::FiniteGroup g = cf::parse_group_descriptor(j, opt.element_cap);
    cf::CharacterTable t = cf::character_table(g);

    Report rep("char-table", cf::group_descriptor_json(g));
    Json classes = Json::array();
    for (const auto& c : t.classes()) {
        Json row;
        row["representative"] = g.label(c.representative);
        row["size"] = c.members.size();
        row["order"] = g.order(c.representative);
        classes.push_back(std::move(row));
    }
    Json rows = Json::array();
    for (std::size_t i = 0; i < t.count(); ++i) {
        Json row;
        row["label"] = t.irreducibles()[i].label;
        row["degree"] = t.degree(i);
        Json vals = Json::array();
        for (std::size_t c = 0; c < t.classes().size(); ++c) vals.push_back(t.value(i, c).str());
        row["values"] = std::move(vals);
        if (opt.approx) {
            Json ap = Json::array();
            for (std::size_t c = 0; c < t.classes().size(); ++c)
                ap.push_back(approx_str(t.value(i, c)));
            row["values_approx"] = std::move(ap);
        }
        rows.push_back(std::move(row));
    }
    rep.body["result"] = Json{{"classes", std::move(classes)}, {"table", std::move(rows)}};

    std::vector<std::vector<std::string>> table;
    std::vector<std::string> head{"class:"};
    std::vector<std::string> sizes{"size:"};
    for (const auto& c : t.classes()) {
        head.push_back(g.label(c.representative));
        sizes.push_back(std::to_string(c.members.size()));
    }
    table.push_back(head);
    table.push_back(sizes);
    for (std::size_t i = 0; i < t.count(); ++i) {
        std::vector<std::string> row{t.irreducibles()[i].label};
        for (std::size_t c = 0; c < t.classes().size(); ++c) row.push_back(t.value(i, c).str());
        table.push_back(std::move(row));
        if (opt.approx) {
            std::vector<std::string> arow{" ~"};
            for (std::size_t c = 0; c < t.classes().size(); ++c)
                arow.push_back(approx_str(t.value(i, c)));
            table.push_back(std::move(arow));
        }
    }
    std::ostringstream os;
    os << "group: " << group_name(g) << ", order " << g.size() << "\n";
    print_aligned(os, table);
    rep.finish(opt, os.str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact invariants of finite Galois covers of curves"};
    app.require_subcommand(1);

    Options opt;
    if (const char* cap = std::getenv("COVERFORGE_MAX_GROUP")) {
        try {
            opt.element_cap = static_cast<std::size_t>(std::stoull(cap));
        } catch (...) {
            std::cerr << "COVERFORGE_MAX_GROUP is not a number\n";
            return 1;
        }
    }
    app.add_option("--format", opt.format, "output format")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();

    std::string path, branch, normal_elts, table_spec;
    long merge_i = 0, merge_j = 0;
    std::size_t max_orbit = 200000, max_group = 24;
    bool approx = false;

    CLI::App* validate = app.add_subcommand("validate", "check a datum file");
    validate->add_option("file", path)->required();

    CLI::App* genus = app.add_subcommand("genus", "Riemann-Hurwitz genus of the cover");
    genus->add_option("file", path)->required();

    CLI::App* cw = app.add_subcommand("cw", "Chevalley-Weil multiplicities and Hodge types");
    cw->add_option("file", path)->required();

    CLI::App* monodromy = app.add_subcommand("monodromy", "block-diagonal monodromy matrices");
    monodromy->add_option("file", path)->required();
    monodromy->add_option("--branch", branch, "only this branch label");
    monodromy->add_flag("--approx", approx, "add approximate rows");

    CLI::App* support = app.add_subcommand("support", "branch support of each eigensheaf");
    support->add_option("file", path)->required();

    CLI::App* quotient = app.add_subcommand("quotient", "descend to the quotient cover");
    quotient->add_option("file", path)->required();
    quotient->add_option("--normal", normal_elts, "generators of the normal subgroup")
        ->required();

    CLI::App* collide = app.add_subcommand("collide", "merge two adjacent branch points");
    collide->add_option("file", path)->required();
    collide->add_option("--merge", [&](const std::vector<std::string>& vals) {
               merge_i = std::stol(vals.at(0));
               merge_j = std::stol(vals.at(1));
               return true;
           }, "two adjacent 1-based branch indices")
        ->expected(2)
        ->required();

    CLI::App* dihedral = app.add_subcommand("dihedral-analyze", "dihedral-specific analysis");
    dihedral->add_option("file", path)->required();

    CLI::App* orbits = app.add_subcommand("hurwitz-orbits", "braid orbit census of a tuple");
    orbits->add_option("file", path)->required();
    orbits->add_option("--max-orbit", max_orbit, "orbit size budget")->capture_default_str();
    orbits->add_option("--max-group", max_group, "group order budget")->capture_default_str();

    CLI::App* chartab = app.add_subcommand("char-table", "character table of a group");
    chartab->add_option("spec", table_spec, "group descriptor JSON (inline or file)")->required();
    chartab->add_flag("--approx", approx, "add approximate rows");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    opt.approx = approx;
    try {
        if (*validate) return run_validate(opt, path);
        if (*genus) return run_genus(opt, path);
        if (*cw) return run_cw(opt, path);
        if (*monodromy) return run_monodromy(opt, path, branch);
        if (*support) return run_support(opt, path);
        if (*quotient) return run_quotient(opt, path, normal_elts);
        if (*collide) return run_collide(opt, path, merge_i, merge_j);
        if (*dihedral) return run_dihedral_analyze(opt, path);
        if (*orbits) return run_hurwitz_orbits(opt, path, max_orbit, max_group);
        if (*chartab) return run_char_table(opt, table_spec);
    } catch (const cf::DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::logic_error& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
