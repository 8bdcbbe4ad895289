// wfilt: weight filtrations of nilpotent operators, Picard-Lefschetz
// operators of curve systems, pants-decomposition calculus, and the
// representation-dimension tables, over exact rational arithmetic.
//
// Exit codes: 0 success, 1 domain error, 2 malformed input.

#include <wfilt/json_io.hpp>
#include <wfilt/repdim.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace wfilt;

json read_json_file(const std::string& path) {
    std::istream* in = &std::cin;
    std::ifstream file;
    if (path != "-") {
        file.open(path);
        if (!file) throw parse_error("cannot open '" + path + "'");
        in = &file;
    }
    return json::parse(*in);  // json::parse_error carries byte position
}

std::string output_mode;  // "", "json", "table"

void emit(const json& payload, const std::string& table) {
    if (output_mode == "json") {
        std::cout << payload.dump(2) << "\n";
    } else if (output_mode == "table") {
        std::cout << table;
    } else {
        std::cout << payload.dump(2) << "\n\n" << table;
    }
}

void run_wf(const std::string& matrix_path, bool monodromy, long center) {
    Mat m = mat_from_json(read_json_file(matrix_path));
    NilpotentOperator op(m);
    Filtration w = monodromy ? monodromy_filtration(op, center) : weight_filtration(op);
    json out = filtration_to_json(w);
    out["nilpotency_index"] = op.nilpotency_index();
    emit(out, render_gr_table(gr_dims(FilteredSpace(w))));
}

void run_rwf(const std::string& matrix_path, const std::string& filt_path, std::size_t depth) {
    Mat m = mat_from_json(read_json_file(matrix_path));
    Filtration w = filtration_from_json(read_json_file(filt_path));
    NilpotentOperator op(m);
    RelativeWFOutcome out = construct_relative(op, w, depth);
    std::string table;
    if (const Filtration* f = rwf_filtration(out)) {
        table = render_gr_table(gr_dims(FilteredSpace(*f)));
    } else if (const auto* c = std::get_if<RwfCertifiedNonexistent>(&out)) {
        table = "certified nonexistent: witness at k=" + std::to_string(c->weight) + "\n";
    } else {
        table = "inconclusive at search depth " +
                std::to_string(std::get<RwfInconclusive>(out).depth) + "\n";
    }
    emit(rwf_outcome_to_json(out), table);
}

void run_pl(const std::string& curves_path) {
    auto [s, cs] = curve_system_from_json(read_json_file(curves_path));
    NilpotentOperator full = picard_lefschetz(s, cs);

    // monodromy filtration of the H-part operator, centered at -1
    std::vector<Curve> hcurves;
    for (const Curve& c : cs.curves)
        hcurves.push_back({c.label, Vec(c.cls.begin(), c.cls.begin() + s.h_dim())});
    SurfaceModel closed(s.genus(), 0);
    NilpotentOperator hop = picard_lefschetz(closed, CurveSystem{hcurves});
    Filtration m = monodromy_filtration(hop, -1);

    SpanInfo info = span_and_isotropy(s, cs);
    json out{{"operator", mat_to_json(full.matrix())},
             {"h_operator", mat_to_json(hop.matrix())},
             {"monodromy_filtration_on_h", filtration_to_json(m)},
             {"span_dim", info.span_in_h.dim()},
             {"lagrangian_in_h", info.lagrangian_in_h}};
    emit(out, render_gr_table(gr_dims(FilteredSpace(m))));
}

void run_pants_validate(const std::string& path) {
    PantsGraph pg = pants_graph_from_json(read_json_file(path));
    ValidationReport r = validate(pg);
    json out{{"valid", r.ok}};
    if (!r.ok) out["diagnostic"] = r.diagnostic;
    std::cout << out.dump(2) << "\n";
    if (!r.ok) throw error("invalid pants graph: " + r.diagnostic);
}

void run_pants_move(const std::string& path, const std::string& white,
                    const std::string& pairing, const std::string& cls_json) {
    PantsGraph pg = pants_graph_from_json(read_json_file(path));
    AMovePairing p;
    if (pairing == "first")
        p = AMovePairing::cross_first;
    else if (pairing == "second")
        p = AMovePairing::cross_second;
    else
        throw parse_error("pairing must be 'first' or 'second'");
    Vec cls = vec_from_json(json::parse(cls_json));
    PantsGraph moved = a_move(pg, white, p, cls);
    std::cout << pants_graph_to_json(moved).dump(2) << "\n";
}

void run_pants_invariant(const std::string& path) {
    PantsGraph pg = pants_graph_from_json(read_json_file(path));
    SurfaceModel s(pg.genus, pg.boundary);
    HandlebodyInvariant inv = handlebody_invariant(pg, s);
    json out{{"span", subspace_to_json(inv.span)},
             {"monodromy_filtration_on_h", filtration_to_json(inv.monodromy_on_h)}};
    emit(out, render_gr_table(gr_dims(FilteredSpace(inv.monodromy_on_h))));
}

void run_pants_reach(const std::string& path1, const std::string& path2, std::size_t bound) {
    PantsGraph a = pants_graph_from_json(read_json_file(path1));
    PantsGraph b = pants_graph_from_json(read_json_file(path2));
    ReachOutcome r = a_move_reachable(a, b, bound);
    json out{{"reachable", r.reachable}, {"bound", bound}};
    if (r.reachable) out["moves"] = r.moves;
    std::cout << out.dump(2) << "\n";
}

void run_dims(unsigned g, unsigned m) {
    Partition lambda = theorem_partition(m);
    Count dim = gl_irrep_dim(lambda, g);
    mpz_class bound = codim_bound(g, m);
    json row{{"g", g},
             {"m", m},
             {"lambda", lambda.str()},
             {"dim", dim.get_str()},
             {"bound", bound.get_str()}};
    std::string tsv = "g\tm\tlambda\tdim\tbound\n" + std::to_string(g) + "\t" +
                      std::to_string(m) + "\t" + lambda.str() + "\t" + dim.get_str() + "\t" +
                      bound.get_str() + "\n";
    emit(row, tsv);
}

void run_dims_scan(unsigned gmin, unsigned gmax, unsigned mmax, bool insufficient_only) {
    json rows = json::array();
    std::string tsv = "g\tm\tlambda\tdim\tbound\n";
    for (unsigned g = gmin; g <= gmax; ++g)
        for (unsigned m = theorem_threshold(g); m <= mmax; ++m) {
            mpz_class bound = codim_bound(g, m);
            if (insufficient_only && bound > 0) continue;
            Partition lambda = theorem_partition(m);
            Count dim = gl_irrep_dim(lambda, g);
            rows.push_back(json{{"g", g},
                                {"m", m},
                                {"lambda", lambda.str()},
                                {"dim", dim.get_str()},
                                {"bound", bound.get_str()}});
            tsv += std::to_string(g) + "\t" + std::to_string(m) + "\t" + lambda.str() + "\t" +
                   dim.get_str() + "\t" + bound.get_str() + "\n";
        }
    emit(rows, tsv);
}

void run_dims_structural(unsigned g) {
    StructuralDims d = structural_dims(g);
    json out{{"g", g},
             {"lambda3_H", d.lambda3_h.get_str()},
             {"hom_A_L2A", d.hom_a_l2.get_str()},
             {"hom_A_L3A", d.hom_a_l3.get_str()},
             {"hom_V_lambda2V", d.hom_v_lambda2.get_str()},
             {"lambda2_hom_A_L2A", d.lambda2_hom_a_l2.get_str()}};
    std::string tsv = "quantity\tdim\n";
    tsv += "Lambda^3 H\t" + d.lambda3_h.get_str() + "\n";
    tsv += "Hom(A, L_2 A)\t" + d.hom_a_l2.get_str() + "\n";
    tsv += "Hom(A, L_3 A)\t" + d.hom_a_l3.get_str() + "\n";
    tsv += "Hom(V, Lambda^2 V)\t" + d.hom_v_lambda2.get_str() + "\n";
    tsv += "Lambda^2 Hom(A, L_2 A)\t" + d.lambda2_hom_a_l2.get_str() + "\n";
    emit(out, tsv);
}

void run_demo_bounding_pair(std::size_t genus) {
    auto [space, op] = bounding_pair_model(genus);
    std::cout << "bounding pair demo: genus " << genus << "\n";
    std::cout << "space dimension " << space.dim() << ", weight jumps at";
    for (long j : space.filtration.jumps()) std::cout << " " << j;
    std::cout << "\n";

    auto ops = graded_operators(op, space.filtration);
    bool all_zero = true;
    for (const auto& [m, gop] : ops) all_zero &= gop.matrix().is_zero();
    std::cout << "operator is " << (op.matrix().is_zero() ? "zero" : "nonzero")
              << "; graded operators " << (all_zero ? "all vanish" : "do not all vanish")
              << "\n";

    RelativeWFOutcome out = construct_relative(op, space.filtration);
    const auto* cert = std::get_if<RwfCertifiedNonexistent>(&out);
    if (cert == nullptr) throw error("demo: expected certified non-existence");
    std::cout << "outcome: CertifiedNonexistent\n";
    std::cout << "forced candidate: M = W (all graded operators vanish)\n";
    std::cout << "witness: weight k=" << cert->weight << ", vector "
              << vec_to_json(cert->witness).dump() << "\n";
    Vec img = op.matrix().apply(cert->witness);
    bool escapes = !cert->forced.at(cert->weight - 2).contains(img);
    std::cout << "check: N*witness = " << vec_to_json(img).dump() << " lies "
              << (escapes ? "outside" : "inside") << " M_" << (cert->weight - 2) << "\n";
    if (!escapes) throw error("demo: witness failed its own check");
}

void run_demo_sp_bigrading(std::size_t genus, std::size_t rank) {
    if (rank > genus) throw error("demo: rank cannot exceed genus");
    SurfaceModel s(genus, 0);
    CurveSystem cs;
    for (std::size_t i = 0; i < rank; ++i)
        cs.curves.push_back({"a" + std::to_string(i + 1), s.basis_vec(s.a_index(i))});
    auto profile = sp_graded_dims(s, cs);
    std::cout << "sp(H) bigrading demo: genus " << genus << ", gamma = {a_1"
              << (rank > 1 ? "..a_" + std::to_string(rank) : "") << "}\n";
    std::cout << render_gr_table(profile);
    ABDecomposition dec = ab_decomposition(s, cs);
    std::size_t r = dec.A.dim();
    std::size_t h0 = dec.H0.dim();
    std::cout << "Gr_0 = gl(A) + sp(H_0) = " << r * r << " + " << (h0 * (h0 + 1)) / 2 << "\n";
    std::cout << "Gr_2 = r(r+1)/2 = " << (r * (r + 1)) / 2 << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact weight-filtration calculator"};
    app.require_subcommand(1);

    std::string matrix_path, filt_path, curves_path, graph_path, graph_path2;
    std::string white_id, pairing = "first", cls_json = "[]";
    long center = 0;
    std::size_t depth = 3, bound = 3, genus = 2, rank = 1;
    unsigned g = 3, m = 1, gmax = 8, mmax = 10;
    bool insufficient = false;

    auto* wf = app.add_subcommand("wf", "weight filtration of a nilpotent matrix");
    wf->add_option("matrix", matrix_path, "matrix JSON file ('-' for stdin)")->required();
    wf->add_option("--output", output_mode, "json|table");

    auto* mwf = app.add_subcommand("mwf", "monodromy (recentered) weight filtration");
    mwf->add_option("matrix", matrix_path)->required();
    mwf->add_option("--center", center, "center weight")->required();
    mwf->add_option("--output", output_mode);

    auto* rwf = app.add_subcommand("rwf", "relative weight filtration");
    rwf->add_option("matrix", matrix_path)->required();
    rwf->add_option("filtration", filt_path)->required();
    rwf->add_option("--depth", depth, "lattice search depth");
    rwf->add_option("--output", output_mode);

    auto* pl = app.add_subcommand("pl", "Picard-Lefschetz operator of a curve system");
    pl->add_option("curves", curves_path)->required();
    pl->add_option("--output", output_mode);

    auto* pants = app.add_subcommand("pants", "pants-decomposition graph calculus");
    pants->require_subcommand(1);
    auto* pv = pants->add_subcommand("validate", "check the structural invariants");
    pv->add_option("graph", graph_path)->required();
    auto* pm = pants->add_subcommand("move", "apply an A-move");
    pm->add_option("graph", graph_path)->required();
    pm->add_option("--white", white_id, "internal white vertex id")->required();
    pm->add_option("--pairing", pairing, "first|second");
    pm->add_option("--class", cls_json, "new curve class as a JSON array")->required();
    auto* pi = pants->add_subcommand("invariant", "handlebody invariant");
    pi->add_option("graph", graph_path)->required();
    pi->add_option("--output", output_mode);
    auto* pr = pants->add_subcommand("reach", "bounded A-move reachability");
    pr->add_option("graph1", graph_path)->required();
    pr->add_option("graph2", graph_path2)->required();
    pr->add_option("--bound", bound, "maximal number of moves");

    auto* dims = app.add_subcommand("dims", "representation-dimension tables");
    auto* dg = dims->add_option("--g", g, "genus");
    auto* dm = dims->add_option("--m", m, "weight index");
    dims->add_option("--gmax", gmax, "scan: largest genus");
    dims->add_option("--mmax", mmax, "scan: largest m");
    dims->add_flag("--insufficient", insufficient,
                   "scan rows where the one-irrep bound is not positive");
    bool structural = false;
    dims->add_flag("--structural", structural, "structural dimension report for --g");
    dims->add_option("--output", output_mode);

    auto* demo = app.add_subcommand("demo", "worked examples");
    demo->require_subcommand(1);
    auto* bp = demo->add_subcommand("bounding-pair", "certified non-existence");
    bp->add_option("--genus", genus)->required();
    auto* spb = demo->add_subcommand("sp-bigrading", "Gr^M profile of sp(H)");
    spb->add_option("--genus", genus)->required();
    spb->add_option("--rank", rank, "number of disjoint a-curves");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (*wf) run_wf(matrix_path, false, 0);
        if (*mwf) run_wf(matrix_path, true, center);
        if (*rwf) run_rwf(matrix_path, filt_path, depth);
        if (*pl) run_pl(curves_path);
        if (*pv) run_pants_validate(graph_path);
        if (*pm) run_pants_move(graph_path, white_id, pairing, cls_json);
        if (*pi) run_pants_invariant(graph_path);
        if (*pr) run_pants_reach(graph_path, graph_path2, bound);
        if (*dims) {
            if (structural)
                run_dims_structural(g);
            else if (*dg && *dm)
                run_dims(g, m);
            else if (*dg)
                run_dims_scan(g, g, mmax, insufficient);
            else
                run_dims_scan(3, gmax, mmax, insufficient);
        }
        if (*bp) run_demo_bounding_pair(genus);
        if (*spb) run_demo_sp_bigrading(genus, rank);
    } catch (const json::exception& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const parse_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
