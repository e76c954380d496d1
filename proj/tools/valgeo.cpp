// Batch front end: parses body/valuation documents, runs the named
// experiment pipelines from the library, and emits CSV or JSON reports.
// Exit status: 0 when every internal invariant passed, 1 on invariant
// failure, 2 on malformed input. Experiment verdicts (violations found,
// "Discontinuous", ...) are data and never affect the exit status.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

#include <CLI11.hpp>

#include <valgeo/document.hpp>

using namespace valgeo;

namespace {

struct GlobalOptions {
    std::uint64_t seed = 2026;
    int threads = 1;
    int samples = 1000;
    double tol_geom = 1e-9;
    double tol_alg = 1e-12;
    double tol_sum = 1e-6;
    std::string out;
    std::string format = "csv";
};

Json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw MalformedDocument("cannot open " + path);
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw MalformedDocument(path + ": " + e.what());
    }
}

std::string read_text(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string fnv1a(const std::string& text) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[24];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        std::size_t next = s.find(sep, pos);
        if (next == std::string::npos) next = s.size();
        if (next > pos) parts.push_back(s.substr(pos, next - pos));
        pos = next + 1;
    }
    return parts;
}

std::vector<double> parse_doubles(const std::string& csv, const char* what) {
    std::vector<double> vals;
    for (const std::string& tok : split(csv, ',')) {
        try {
            if (tok.find('/') != std::string::npos) vals.push_back(to_double(rat_parse(tok)));
            else vals.push_back(std::stod(tok));
        } catch (const std::exception&) {
            throw MalformedDocument(std::string(what) + ": bad number " + tok);
        }
    }
    if (vals.empty()) throw MalformedDocument(std::string(what) + ": empty list");
    return vals;
}

std::vector<Rat> parse_rationals(const std::string& csv, const char* what) {
    std::vector<Rat> vals;
    for (const std::string& tok : split(csv, ',')) {
        try {
            vals.push_back(rat_parse(tok));
        } catch (const Error&) {
            throw MalformedDocument(std::string(what) + ": bad rational " + tok);
        }
    }
    if (vals.empty()) throw MalformedDocument(std::string(what) + ": empty list");
    return vals;
}

void emit(const GlobalOptions& g, const std::string& text) {
    if (g.out.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << '\n';
    } else {
        std::ofstream f(g.out);
        f << text;
        std::cerr << "report written to " << g.out << "\n";
    }
}

Json envelope(const GlobalOptions& g, const std::string& command,
              const std::vector<std::pair<std::string, std::string>>& inputs) {
    Json env{{"command", command},
             {"seed", g.seed},
             {"tolerances", {{"geom", g.tol_geom}, {"alg", g.tol_alg}, {"sum", g.tol_sum}}}};
    Json docs = Json::object();
    for (const auto& [name, path] : inputs) docs[name] = fnv1a(read_text(path));
    env["inputs"] = docs;
    return env;
}

bool is_box_valuation_doc(const Json& doc) {
    return doc.contains("box_poly") || doc.contains("box_builtin") || doc.contains("components");
}

// ---------------------------------------------------------------------------

int cmd_decompose(const GlobalOptions& g, const std::string& valuation_path,
                  const std::string& grid_csv, bool endpoints, const std::string& bound_str) {
    const Json doc = read_json(valuation_path);
    const BoxOracleDoc v = box_oracle_from_json(doc);
    std::vector<Rat> grid =
        grid_csv.empty() ? std::vector<Rat>{Rat(0), Rat(1, 2), Rat(1), Rat(3, 2), Rat(2)}
                         : parse_rationals(grid_csv, "--grid");

    if (endpoints) {
        const Rat bound = rat_parse(bound_str);
        const EndpointFamily fam = endpoint_decompose_nd(v.oracle, v.n, bound);
        // symmetric grid for the sampled export
        std::vector<Rat> sym = grid;
        for (const Rat& x : grid)
            if (x != 0) sym.push_back(-x);
        std::sort(sym.begin(), sym.end());
        Rng rng(g.seed);
        long violations = 0;
        for (int t = 0; t < 200; ++t) {
            std::vector<std::pair<Rat, Rat>> iv;
            for (int i = 0; i < v.n; ++i) {
                Rat lo = std::max(Rat(-bound), rng.rational(-2, 2));
                Rat hi = std::min(bound, Rat(lo + rng.rational_nonneg(2)));
                iv.emplace_back(lo, hi);
            }
            const Box b{iv};
            if (fam.reconstruct(b) != v.oracle.eval(b)) ++violations;
        }
        Json out = envelope(g, "decompose", {{"valuation", valuation_path}});
        out.update(endpoint_family_to_json(fam, sym));
        out["reconstruction_violations"] = violations;
        emit(g, out.dump(2));
        std::cerr << "endpoint family: n=" << v.n << " M=" << bound_str
                  << " reconstruction violations=" << violations << "\n";
        return violations == 0 ? 0 : 1;
    }

    const ComponentFamily fam = extract_components(v.oracle, v.n, grid);
    const BoxValuation back = reconstruct(fam);
    long violations = 0;
    long checked = 0;
    std::vector<Rat> point(v.n, Rat(0));
    std::function<void(int)> walk = [&](int depth) {
        if (checked >= 2000) return;
        if (depth == v.n) {
            ++checked;
            if (back.eval(corner_box(point)) != v.oracle.eval(corner_box(point))) ++violations;
            return;
        }
        for (const Rat& x : grid) {
            point[depth] = x;
            walk(depth + 1);
        }
    };
    walk(0);
    Json out = envelope(g, "decompose", {{"valuation", valuation_path}});
    out.update(family_to_json(fam));
    out["reconstruction_violations"] = violations;
    emit(g, out.dump(2));
    for (unsigned mask = 0; mask < fam.subset_count(); ++mask) {
        const Component& c = fam.comp(mask);
        std::cerr << detail::subset_key(c.axes) << ": "
                  << (c.certified ? "certified " + detail::certified_string(*c.certified, c.axes)
                                  : "sampled (" + std::to_string(c.samples.size()) + " points)")
                  << "\n";
    }
    std::cerr << "reconstruction checked on " << checked << " corner boxes, violations="
              << violations << "\n";
    return violations == 0 ? 0 : 1;
}

int cmd_check(const GlobalOptions& g, const std::string& valuation_path) {
    const Json doc = read_json(valuation_path);
    if (is_box_valuation_doc(doc)) {
        const BoxOracleDoc v = box_oracle_from_json(doc);
        const ValuationCheckReport report = check_valuation(v.oracle, v.n, g.samples, g.seed);
        std::cerr << "valuation-identity pairs checked: " << report.pairs_checked
                  << ", violations: " << report.pair_violations.size() << "\n";
        std::cerr << "affine-additivity probes checked: " << report.affine_checked
                  << ", violations: " << report.affine_violations.size() << "\n";
        for (std::size_t i = 0; i < report.pair_violations.size() && i < 3; ++i)
            std::cerr << "  pair defect " << rat_str(report.pair_violations[i].defect) << "\n";
        std::cerr << (report.ok() ? "verdict: valuation" : "verdict: NOT a valuation") << "\n";
        return 0; // violations are findings about the input, not failures
    }
    // planar valuation: weak-additivity sweep over random bodies and cuts,
    // plus a translation-invariance probe at the algebraic tolerance
    const ValuationSpec v = valuation_from_json(doc);
    if (!v.bounded_regime())
        std::cerr << "note: " << v.name() << " is outside the bounded regime l in [0,1]\n";
    Rng rng(g.seed);
    double worst = 0, worst_shift = 0;
    for (int t = 0; t < g.samples; ++t) {
        const ArcGon k = random_body_in_disk(rng);
        const double span = circumradius(k);
        worst = std::max(worst, weak_additivity_defect(v, k, unit(rng.uniform(0, kTwoPi)),
                                                       rng.uniform(-span, span)));
        if (t % 8 == 0) {
            const Vec2 x{rng.uniform(-2, 2), rng.uniform(-2, 2)};
            worst_shift = std::max(worst_shift,
                                   std::abs(evaluate(v, k.translated(x)) - evaluate(v, k)));
        }
    }
    std::cerr << "weak-additivity sweep: " << g.samples << " cuts, max defect " << worst << "\n";
    std::cerr << "translation invariance: max defect " << worst_shift << "\n";
    const bool pass = worst <= g.tol_geom && worst_shift <= g.tol_alg;
    std::cerr << (pass ? "PASS" : "FAIL") << " (tolerances " << g.tol_geom << ", " << g.tol_alg
              << ")\n";
    return pass ? 0 : 1;
}

int cmd_grid(const GlobalOptions& g, const std::string& body_path, const std::string& valuation_path,
             const std::string& eps_csv, double m, double degree_override) {
    const Json body_doc = read_json(body_path);
    const Json val_doc = read_json(valuation_path);
    const ArcGon k = body_from_json(body_doc);
    const ValuationSpec v = valuation_from_json(val_doc);
    if (!v.bounded_regime())
        std::cerr << "note: " << v.name() << " is outside the bounded regime l in [0,1]\n";
    const std::vector<double> eps_list = parse_doubles(eps_csv, "--eps");

    double degree = degree_override;
    if (std::isnan(degree)) {
        try {
            degree = homogeneity_probe(v, k, {2.0, 3.0, 0.5}).degree;
        } catch (const ZeroBaseValue&) {
            degree = 0;
        }
    }
    std::vector<GridReport> rows;
    try {
        DecayOptions opts;
        opts.m = m;
        opts.threads = g.threads;
        opts.norm_seed = g.seed;
        rows = decay_report(v, degree, k, eps_list, opts);
    } catch (const NotVanishingOnBoxes&) {
        // census + signed sums still run; the apriori column is not
        // meaningful for valuations that do not vanish on cells
        for (double eps : eps_list) {
            GridReport r = boundary_census(k, eps, m, g.threads);
            r.signed_sum = signed_sum(grid_decompose(k, eps, m), v, g.threads);
            r.direct_value = evaluate(v, k);
            r.degree = degree;
            rows.push_back(r);
        }
        std::cerr << "note: valuation does not vanish on boxes; apriori column disabled\n";
    }

    bool ok = true;
    for (const GridReport& r : rows) {
        if (std::abs(r.signed_sum - r.direct_value) > g.tol_sum) ok = false;
        if (!r.counting_bound_holds()) ok = false;
    }
    if (g.format == "json") {
        Json env = envelope(g, "grid", {{"body", body_path}, {"valuation", valuation_path}});
        Json arr = Json::array();
        for (const GridReport& r : rows)
            arr.push_back({{"eps", r.eps},
                           {"J", r.boundary_cells},
                           {"signed_sum", r.signed_sum},
                           {"direct", r.direct_value},
                           {"annulus_bound", r.annulus_bound},
                           {"erosion_exact", r.erosion_exact},
                           {"apriori", r.apriori}});
        env["rows"] = arr;
        env["valuation_name"] = v.name();
        env["degree"] = degree;
        emit(g, env.dump(2));
    } else {
        emit(g, grid_reports_csv(rows));
    }
    std::cerr << (ok ? "grid invariants: PASS" : "grid invariants: FAIL") << " (|signed-direct| <= "
              << g.tol_sum << ", counting bound)\n";
    return ok ? 0 : 1;
}

int cmd_characterize(const GlobalOptions& g, const std::string& valuation_path,
                     const std::string& bodies_csv, const std::string& eps_csv) {
    const ValuationSpec v = valuation_from_json(read_json(valuation_path));
    std::vector<std::pair<std::string, ArcGon>> bodies;
    std::vector<std::pair<std::string, std::string>> inputs{{"valuation", valuation_path}};
    for (const std::string& path : split(bodies_csv, ',')) {
        bodies.emplace_back(path, body_from_json(read_json(path)));
        inputs.emplace_back("body:" + path, path);
    }
    if (bodies.empty()) throw MalformedDocument("--bodies needs at least one document");
    CharacterizationOptions opts;
    opts.seed = g.seed;
    opts.threads = g.threads;
    if (!eps_csv.empty()) opts.eps_list = parse_doubles(eps_csv, "--eps");

    VolumeCharacterization res;
    try {
        res = volume_characterization(v, bodies, opts);
    } catch (const UnsupportedBody& e) {
        // the experiment needs both sides: an exact box restriction and a
        // planar evaluation
        throw MalformedDocument(std::string("valuation lacks a required evaluation side: ") +
                                e.what());
    }
    std::cerr << "c = " << rat_str(res.c) << (res.certified ? " (certified)" : " (NOT certified)")
              << ", fit defect " << rat_str(res.fit_defect) << "\n";
    std::cerr << "translation: " << (res.probes.translation_pass ? "pass" : "FAIL") << " (defect "
              << res.probes.translation_defect << ")\n";
    std::cerr << "2-homogeneity: " << (res.probes.homogeneity_pass ? "pass" : "FAIL")
              << " (degree " << res.probes.homogeneity_degree << ")\n";
    std::cerr << "sup |V| on K(B): " << res.probes.sup_unit_disk
              << ", box-pair violations: " << res.probes.box_violations << "\n";
    for (const BodyResidual& r : res.residuals)
        std::cerr << "  " << r.name << ": V = " << r.value << ", |V - c Vol| = " << r.residual
                  << "\n";
    Json env = envelope(g, "characterize-volume", inputs);
    env["c"] = rat_str(res.c);
    env["certified"] = res.certified;
    Json rows = Json::array();
    for (const BodyResidual& r : res.residuals)
        rows.push_back({{"body", r.name}, {"value", r.value}, {"residual", r.residual}});
    env["residuals"] = rows;
    emit(g, env.dump(2));
    return 0; // residuals and probe failures are experiment data
}

int cmd_homogeneity(const GlobalOptions& g, const std::string& valuation_path,
                    const std::string& body_path, const std::string& lambda_csv) {
    const Json val_doc = read_json(valuation_path);
    if (is_box_valuation_doc(val_doc)) {
        const BoxOracleDoc v = box_oracle_from_json(val_doc);
        const Box k = body_path.empty()
                          ? Box(std::vector<std::pair<Rat, Rat>>(v.n, {Rat(0), Rat(1)}))
                          : box_from_json(read_json(body_path));
        const auto fit = homogeneity_fit(v.oracle, k, parse_rationals(lambda_csv, "--lambda"));
        std::cerr << "polynomial fit in lambda (degrees 0..n):";
        for (const Rat& c : fit.coefficients) std::cerr << " " << rat_str(c);
        std::cerr << "\nheld-out residual: " << rat_str(fit.residual) << "\n";
        return fit.residual == 0 ? 0 : 1;
    }
    const ValuationSpec v = valuation_from_json(val_doc);
    const ArcGon k = body_path.empty() ? ArcGon::disk({0, 0}, 1)
                                       : body_from_json(read_json(body_path));
    const auto probe = homogeneity_probe(v, k, parse_doubles(lambda_csv, "--lambda"));
    std::cerr << "degree = " << probe.degree << ", max ratio defect = " << probe.max_defect << "\n";
    return probe.max_defect <= g.tol_geom ? 0 : 1;
}

int cmd_continuity(const GlobalOptions& g, const std::string& valuation_path,
                   const std::string& sequence, const std::string& limit_name, int jmin, int jmax,
                   double floor, double dh_threshold) {
    const ValuationSpec v = valuation_from_json(read_json(valuation_path));
    std::vector<ArcGon> seq;
    ArcGon limit = ArcGon::empty();
    if (sequence == "ngon") {
        for (int j = std::max(2, jmin); j <= jmax; ++j) seq.push_back(inscribed_power_ngon(j));
        limit = ArcGon::disk({0, 0}, 1);
        if (limit_name != "disk") throw MalformedDocument("ngon sequence converges to --limit disk");
    } else if (sequence == "triangles") {
        for (int j = std::max(2, jmin); j <= jmax; ++j)
            seq.push_back(tangent_triangle(kTwoPi - kPi / std::pow(2.0, j), kTwoPi / 3, 2 * kTwoPi / 3));
        limit = tangent_triangle(0.0, kTwoPi / 3, 2 * kTwoPi / 3);
        if (limit_name != "triangle")
            throw MalformedDocument("triangles sequence converges to --limit triangle");
    } else {
        throw MalformedDocument("unknown --sequence (ngon | triangles)");
    }
    const ContinuityReport report = continuity_probe(v, seq, limit, floor, dh_threshold);
    std::string csv = "j,d_hausdorff,value_gap\n";
    char buf[128];
    for (std::size_t i = 0; i < report.rows.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%d,%.12g,%.12g\n", std::max(2, jmin) + static_cast<int>(i),
                      report.rows[i].dh, report.rows[i].value_gap);
        csv += buf;
    }
    emit(g, csv);
    std::cerr << "verdict: " << (report.discontinuous ? "Discontinuous" : "no gap detected")
              << " (floor " << floor << ", d_H threshold " << dh_threshold << ")\n";
    return 0; // the verdict is data
}

int cmd_steiner(const GlobalOptions& g, const std::string& body_path, const std::string& t_csv) {
    const ArcGon k = body_from_json(read_json(body_path));
    const double a = k.area(), p = k.perimeter();
    bool ok = true;
    std::string csv = "t,area,steiner,rel_error\n";
    char buf[160];
    for (double t : parse_doubles(t_csv, "--t")) {
        if (t <= 0) throw MalformedDocument("--t values must be positive");
        const double lhs = minkowski_sum(k, ArcGon::disk({0, 0}, t)).area();
        const double rhs = a + p * t + kPi * t * t;
        const double rel = std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs));
        if (rel > g.tol_geom) ok = false;
        std::snprintf(buf, sizeof buf, "%.12g,%.12g,%.12g,%.3g\n", t, lhs, rhs, rel);
        csv += buf;
    }
    emit(g, csv);
    std::cerr << (ok ? "steiner invariant: PASS" : "steiner invariant: FAIL") << "\n";
    return ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"valgeo: valuation experiments on convex bodies"};
    app.require_subcommand(1);
    app.fallthrough(); // global options may follow the subcommand
    GlobalOptions g;
    app.add_option("--seed", g.seed, "random seed (fixed seed => identical reports)");
    app.add_option("--threads", g.threads, "worker cap for grid evaluation");
    app.add_option("--samples", g.samples, "sample count for randomized checks");
    app.add_option("--tol-geom", g.tol_geom, "geometric tolerance");
    app.add_option("--tol-alg", g.tol_alg, "algebraic-identity tolerance");
    app.add_option("--tol-sum", g.tol_sum, "grid signed-sum tolerance");
    app.add_option("--out", g.out, "report output path (default: stdout)");
    app.add_option("--format", g.format, "csv | json")->check(CLI::IsMember({"csv", "json"}));

    std::string valuation_path, body_path, bodies_csv, eps_csv, lambda_csv = "2,3,1/2,5";
    std::string grid_csv, t_csv, sequence = "ngon", limit_name = "disk", bound_str = "4";
    bool endpoints = false;
    double m = 2.0, floor = 1e-3, dh_threshold = 1e-3;
    double degree_override = std::numeric_limits<double>::quiet_NaN();
    int jmin = 3, jmax = 9;

    auto* dec = app.add_subcommand("decompose", "extract the component (or endpoint) family");
    dec->add_option("--valuation", valuation_path)->required();
    dec->add_option("--grid", grid_csv, "axis sample points, comma-separated rationals");
    dec->add_flag("--endpoints", endpoints, "endpoint family instead of components");
    dec->add_option("--coord-bound", bound_str, "coordinate bound M for --endpoints");

    auto* chk = app.add_subcommand("check", "valuation identity / weak additivity sweep");
    chk->add_option("--valuation", valuation_path)->required();

    auto* grd = app.add_subcommand("grid", "grid decomposition, census and decay report");
    grd->add_option("--body", body_path)->required();
    grd->add_option("--valuation", valuation_path)->required();
    grd->add_option("--eps", eps_csv)->required();
    grd->add_option("--M", m, "grid bound (body must fit in M*B)");
    grd->add_option("--degree", degree_override,
                    "homogeneity degree for the apriori bound (default: probed)");

    auto* chr = app.add_subcommand("characterize-volume", "extract c and test V - c Vol");
    chr->add_option("--valuation", valuation_path)->required();
    chr->add_option("--bodies", bodies_csv, "comma-separated body document paths")->required();
    chr->add_option("--eps", eps_csv, "optional decay-report eps list");

    auto* hom = app.add_subcommand("homogeneity", "exact fit on boxes or probe on bodies");
    hom->add_option("--valuation", valuation_path)->required();
    hom->add_option("--body", body_path);
    hom->add_option("--lambda", lambda_csv);

    auto* con = app.add_subcommand("continuity", "value gaps along a converging sequence");
    con->add_option("--valuation", valuation_path)->required();
    con->add_option("--sequence", sequence, "ngon | triangles");
    con->add_option("--limit", limit_name, "disk | triangle");
    con->add_option("--jmin", jmin);
    con->add_option("--jmax", jmax);
    con->add_option("--floor", floor, "gap floor for the Discontinuous verdict");
    con->add_option("--dh", dh_threshold, "d_H convergence threshold");

    auto* ste = app.add_subcommand("steiner", "verify area(K + tB) = A + Pt + pi t^2");
    ste->add_option("--body", body_path)->required();
    ste->add_option("--t", t_csv)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*dec) return cmd_decompose(g, valuation_path, grid_csv, endpoints, bound_str);
        if (*chk) return cmd_check(g, valuation_path);
        if (*grd) return cmd_grid(g, body_path, valuation_path, eps_csv, m, degree_override);
        if (*chr) return cmd_characterize(g, valuation_path, bodies_csv, eps_csv);
        if (*hom) return cmd_homogeneity(g, valuation_path, body_path, lambda_csv);
        if (*con) return cmd_continuity(g, valuation_path, sequence, limit_name, jmin, jmax, floor,
                                        dh_threshold);
        if (*ste) return cmd_steiner(g, body_path, t_csv);
        throw UnknownCommand("no subcommand selected");
    } catch (const MalformedDocument& e) {
        std::cerr << "malformed input: " << e.what() << "\n";
        return 2;
    } catch (const UnknownCommand& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
