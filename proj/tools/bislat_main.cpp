#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "bislat/io.hpp"
#include "bislat/lattice.hpp"
#include "bislat/norms.hpp"
#include "bislat/parser.hpp"
#include "bislat/report.hpp"
#include "bislat/symbolic.hpp"
#include "bislat/symmetric_laws.hpp"

namespace {

using namespace bislat;

struct CommonOpts {
    std::uint64_t seed = 42;
    double law_tol = 1e-4;
    double solver_tol = 1e-6;
    long budget = 100000;
    int samples = 0;  // 0 = per-law default
    std::string masses_csv = "0.5,0.5";
    std::string kind_str = "probability";
    std::string table_out;
    std::string machine_out;

    SpacePtr space() const {
        return make_space(parse_csv_numbers(masses_csv), parse_kind(kind_str));
    }
    NormOptions norm_opts() const {
        NormOptions o;
        o.tol = solver_tol;
        o.budget = budget;
        o.seed = seed * 0x9e3779b97f4a7c15ULL + 1;
        return o;
    }
    LawOptions law_opts(int default_samples) const {
        LawOptions o;
        o.samples = samples > 0 ? samples : default_samples;
        o.tol = law_tol;
        o.seed = seed;
        o.solve = norm_opts();
        return o;
    }
};

const std::vector<double> kGaloisCatalog = {1.25, 1.5, 2.0, 3.0, 4.0};

std::vector<LawReport> run_law(const std::string& law, const CommonOpts& common) {
    std::vector<LawReport> reports;
    if (law == "axioms") {
        reports.push_back(run_axioms_suite(common.law_opts(200)));
    } else if (law == "modularity") {
        reports.push_back(run_modularity_suite(common.law_opts(200)));
    } else if (law == "distributivity") {
        reports.push_back(run_distributivity_suite(common.law_opts(200)));
        LawOptions ineq = common.law_opts(1000);
        ineq.samples = common.samples > 0 ? common.samples : 1000;
        ineq.seed = common.seed + 1;
        reports.push_back(run_distributivity_inequality_suite(ineq));
    } else if (law == "uniqueness") {
        reports.push_back(run_uniqueness_suite(common.law_opts(500)));
    } else if (law == "galois") {
        LawReport r = check_galois(lp_catalog(kGaloisCatalog));
        r.seed = common.seed;
        reports.push_back(r);
    } else if (law == "closure") {
        for (ClosureOp op : {ClosureOp::zero_part_inverse, ClosureOp::bidual,
                             ClosureOp::k_after_kprime, ClosureOp::kprime_after_k}) {
            LawReport r = check_closure(op, lp_catalog(kGaloisCatalog));
            r.seed = common.seed;
            reports.push_back(r);
        }
    } else if (law == "chain") {
        reports.push_back(run_chain_suite(common.law_opts(60)));
    } else if (law == "transfer") {
        reports.push_back(run_transfer_suite(common.law_opts(50)));
    } else if (law == "dedekind") {
        reports.push_back(dedekind_demo(common.law_opts(200)));
    } else {
        throw std::invalid_argument("unknown law: " + law);
    }
    return reports;
}

int emit_reports(const std::vector<LawReport>& reports, const CommonOpts& common) {
    std::string table = reports_to_table(reports);
    if (common.table_out.empty()) {
        std::cout << table;
    } else {
        write_text_file(common.table_out, table);
    }
    if (!common.machine_out.empty()) {
        write_text_file(common.machine_out, reports_to_records(reports));
    }
    return exit_code_for(reports);
}

int cmd_eval(const CommonOpts& common, const std::string& expr_text,
             const std::string& vec_path, bool dual_mode, bool numeric) {
    SpacePtr sp = common.space();
    AstPtr ast = parse_expr(expr_text);
    ExprPtr e = to_space_expr(ast, sp->total_mass());
    NormOptions opts = common.norm_opts();
    for (const auto& row : read_vectors_csv(vec_path)) {
        FunctionVector x = make_vector(sp, row);
        NormResult r;
        if (dual_mode) {
            r = numeric ? dual_norm_numeric(e, x, opts) : dual_norm(e, x, opts);
        } else {
            r = norm(e, x, opts);
        }
        std::cout << format_double(r.value);
        if (!r.converged) std::cout << "  # not converged; certified bound only";
        std::cout << "\n";
    }
    return 0;
}

int cmd_order(const CommonOpts& common, const std::string& a_text, const std::string& b_text,
              bool symbolic) {
    AstPtr a = parse_expr(a_text);
    AstPtr b = parse_expr(b_text);
    if (symbolic) {
        OrderAnswer ans = sym_order_leq(to_sym_term(a), to_sym_term(b));
        std::cout << "order: " << tri_name(ans.value) << "\n";
        int step = 1;
        for (const auto& line : ans.derivation) {
            std::cout << "  " << step++ << ". " << line << "\n";
        }
        if (ans.value == Tri::yes) return 0;
        return ans.value == Tri::no ? 1 : 2;
    }
    SpacePtr sp = common.space();
    ExprPtr ea = to_space_expr(a, sp->total_mass());
    ExprPtr eb = to_space_expr(b, sp->total_mass());
    int samples = common.samples > 0 ? common.samples : 200;
    OrderVerdict v = inclusion_constant(ea, eb, sp, samples, common.seed, common.norm_opts());
    const char* rel = v.relation == Relation::holds
                          ? "holds"
                          : (v.relation == Relation::fails ? "fails" : "undetermined");
    std::cout << "relation: " << rel << (v.analytic ? " (analytic)" : " (sampled)") << "\n";
    std::cout << "constant_estimate: " << format_double(v.constant_estimate) << "\n";
    if (v.witness) {
        std::cout << "witness:";
        for (double w : v.witness->values) std::cout << " " << format_double(w);
        std::cout << "\n";
    }
    if (v.relation == Relation::holds) return 0;
    return v.relation == Relation::fails ? 1 : 2;
}

int cmd_reduce(const std::string& expr_text) {
    AstPtr ast = parse_expr(expr_text);
    SymPtr term = to_sym_term(ast);
    std::vector<RuleApp> trace;
    SymPtr nf = reduce_traced(term, trace);
    std::cout << sym_to_string(nf) << "\n";
    int step = 1;
    for (const auto& r : trace) {
        std::cout << "  " << step++ << ". " << r.rule << ": " << r.before << " -> " << r.after
                  << "\n";
    }
    return 0;
}

int cmd_transfer(const CommonOpts& common, const std::string& profile_text,
                 const std::string& target_csv) {
    SpacePtr sp = common.space();
    AstPtr ast = parse_expr(profile_text);
    ExprPtr leaf = to_space_expr(ast, sp->total_mass());
    if (leaf->kind != ExprKind::profile_leaf) {
        throw std::invalid_argument("transfer needs a sym.* profile leaf");
    }
    std::vector<double> tmasses = parse_csv_numbers(target_csv);
    double tsum = 0.0;
    for (double m : tmasses) tsum += m;
    MeasureKind tkind =
        std::abs(tsum - 1.0) <= 1e-12 ? MeasureKind::probability : MeasureKind::finite;
    SpacePtr target = make_space(tmasses, tkind);

    SymmetricSpace src = make_symmetric_space(leaf->profile, sp);
    SymmetricSpace dst = mekler_transfer(src, target);
    std::cout << "profile: " << leaf->profile->id << "\n";
    std::cout << "source:  " << common.masses_csv << " (" << kind_name(sp->kind()) << ")\n";
    std::cout << "target:  " << target_csv << " (" << kind_name(tkind) << ")\n";

    std::vector<std::size_t> all_src(sp->atom_count()), all_dst(target->atom_count());
    for (std::size_t i = 0; i < all_src.size(); ++i) all_src[i] = i;
    for (std::size_t i = 0; i < all_dst.size(); ++i) all_dst[i] = i;
    double n_src = symmetric_norm(src, indicator(sp, all_src)).value;
    double n_dst = symmetric_norm(dst, indicator(target, all_dst)).value;
    std::cout << "norm of chi_Omega: source " << format_double(n_src) << ", target "
              << format_double(n_dst) << "\n";

    if (auto ref = match_refinement(sp, target)) {
        Rng rng(common.seed);
        FunctionVector x = random_vector(rng, sp);
        FunctionVector y = transfer_vector(x, *ref);
        double nx = symmetric_norm(src, x).value;
        double ny = symmetric_norm(dst, y).value;
        std::cout << "refinement pair check: " << format_double(nx) << " vs "
                  << format_double(ny) << (nx == ny ? " (exact)" : " (MISMATCH)") << "\n";
        return nx == ny ? 0 : 1;
    }
    std::cout << "no grouping refinement between the spaces; transfer is the profile rebinding\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"bislat: norms, duals and lattice laws of Banach ideal function spaces "
                 "on finite atomic measure spaces"};
    app.fallthrough();
    app.set_config("--config", "", "flat key=value config file");
    app.require_subcommand(1);

    CommonOpts common;
    app.add_option("--seed", common.seed, "random seed")->envname("BISLAT_SEED");
    app.add_option("--tol", common.law_tol, "law tolerance (relative)");
    app.add_option("--solver-tol", common.solver_tol, "solver tolerance per norm evaluation");
    app.add_option("--budget", common.budget, "solver evaluation budget");
    app.add_option("--samples", common.samples, "sample count (0 = per-law default)");
    app.add_option("--masses", common.masses_csv, "atom masses, comma separated");
    app.add_option("--kind", common.kind_str, "measure kind: probability|finite|counting");
    app.add_option("--out", common.table_out, "write the human-readable table here");
    app.add_option("--machine", common.machine_out, "write machine-readable records here");

    std::string expr_a, expr_b, vec_path, law, target_csv;
    bool numeric = false, symbolic = false;

    CLI::App* eval = app.add_subcommand("eval", "evaluate a norm on vectors from a CSV file");
    eval->add_option("expr", expr_a, "space expression")->required();
    eval->add_option("vectors", vec_path, "CSV vector file")->required();

    CLI::App* dual_cmd = app.add_subcommand("dual", "evaluate the Koethe dual norm");
    dual_cmd->add_option("expr", expr_a, "space expression")->required();
    dual_cmd->add_option("vectors", vec_path, "CSV vector file")->required();
    dual_cmd->add_flag("--numeric", numeric, "skip rewrites; generic maximizer only");

    CLI::App* order_cmd = app.add_subcommand("order", "test E c1 F");
    order_cmd->add_option("exprA", expr_a, "left space")->required();
    order_cmd->add_option("exprB", expr_b, "right space")->required();
    order_cmd->add_flag("--symbolic", symbolic, "use the derivation engine instead of sampling");

    CLI::App* check_cmd = app.add_subcommand("check", "run a law suite");
    check_cmd
        ->add_option("law", law,
                     "axioms|modularity|distributivity|uniqueness|galois|closure|chain|"
                     "transfer|dedekind")
        ->required();

    CLI::App* reduce_cmd = app.add_subcommand("reduce", "normal form of a symbolic term");
    reduce_cmd->add_option("expr", expr_a, "symbolic space expression")->required();

    CLI::App* transfer_cmd =
        app.add_subcommand("transfer", "replant a symmetric profile onto another space");
    transfer_cmd->add_option("profile", expr_a, "sym.* profile leaf")->required();
    transfer_cmd->add_option("target", target_csv, "target masses, comma separated")->required();

    CLI::App* report_cmd = app.add_subcommand("report", "run every law suite and aggregate");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 3;
    }

    try {
        if (eval->parsed()) return cmd_eval(common, expr_a, vec_path, false, false);
        if (dual_cmd->parsed()) return cmd_eval(common, expr_a, vec_path, true, numeric);
        if (order_cmd->parsed()) return cmd_order(common, expr_a, expr_b, symbolic);
        if (reduce_cmd->parsed()) return cmd_reduce(expr_a);
        if (transfer_cmd->parsed()) return cmd_transfer(common, expr_a, target_csv);
        if (check_cmd->parsed()) return emit_reports(run_law(law, common), common);
        if (report_cmd->parsed()) {
            std::vector<LawReport> all;
            for (const char* l : {"axioms", "modularity", "distributivity", "uniqueness",
                                  "galois", "closure", "chain", "transfer", "dedekind"}) {
                for (auto& r : run_law(l, common)) all.push_back(std::move(r));
            }
            return emit_reports(all, common);
        }
    } catch (const ParseError& e) {
        std::cerr << "parse error at " << e.line << ":" << e.col << ": " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 3;
}
