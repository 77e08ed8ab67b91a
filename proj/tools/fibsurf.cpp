// fibsurf: exact-arithmetic computations on fibred surfaces over P1.
#include "fibsurf/config.hpp"
#include "fibsurf/invariants.hpp"
#include "fibsurf/orbifold.hpp"
#include "fibsurf/pipeline.hpp"
#include "fibsurf/presets.hpp"
#include "fibsurf/search.hpp"
#include "fibsurf/singular.hpp"
#include "fibsurf/tracker.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace fibsurf;
using nlohmann::ordered_json;

namespace {

std::string read_input(const std::string& path)
{
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream f(path);
    if (!f)
        throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

Chart chart_by_name(const std::string& s)
{
    if (s == "s=z=1") return Chart::S1Z1;
    if (s == "s=x=1") return Chart::S1X1;
    if (s == "t=z=1") return Chart::T1Z1;
    if (s == "t=x=1") return Chart::T1X1;
    if (s == "local") return Chart::Local;
    throw std::runtime_error("unknown chart '" + s + "'");
}

CurveConfiguration load_config(const std::string& path)
{
    return config_from_json(read_input(path));
}

int cmd_classify(long long g, const std::vector<long long>& mults)
{
    OrbifoldBase base{g, mults};
    auto cls = classify(base);
    ordered_json j;
    j["base_genus"] = g;
    j["mults"] = mults;
    j["degree"] = rat_str(cls.degree);
    j["classification"] = cls.general_type ? "general_type" : "special";
    if (!cls.exception_family.empty())
        j["exception_family"] = cls.exception_family;
    std::cout << j.dump(2) << "\n";
    return 0;
}

int cmd_winters(const std::string& path)
{
    auto cfg = load_config(path);
    auto w = winters_check(cfg);
    ordered_json j;
    j["pass"] = w.pass;
    j["witnesses"] = ordered_json::array();
    for (const auto& wi : w.witnesses)
        j["witnesses"].push_back({{"id", wi.id},
                                  {"weighted_sum", wi.weighted_sum},
                                  {"divisible", wi.divisible}});
    std::cout << j.dump(2) << "\n";
    return w.pass ? 0 : 2;
}

int cmd_genus(const std::string& path, bool emit_dot)
{
    auto cfg = load_config(path);
    bool all_self = true;
    for (const auto& c : cfg.components())
        if (!c.self_int)
            all_self = false;
    if (!all_self)
        cfg = derive_self_intersections(cfg);
    ordered_json j;
    j["genus"] = fibre_genus(cfg);
    auto p = fibre_predicates(cfg);
    j["predicates"] = {{"gcd", p.gcd},       {"min", p.min},
                       {"connected", p.connected}, {"is_multiple", p.is_multiple},
                       {"is_c_fibre", p.is_c_fibre}};
    j["winters_pass"] = winters_check(cfg).pass;
    j["config"] = ordered_json::parse(config_to_json(cfg));
    std::cout << j.dump(2) << "\n";
    if (emit_dot)
        std::cerr << cfg.dot();
    return 0;
}

int cmd_resolve(const std::string& branch_expr, const std::string& chart_name_s,
                const std::string& point, const std::string& template_expr, int copies,
                bool emit_dot)
{
    ordered_json j;
    if (!template_expr.empty()) {
        LocalTemplate t;
        t.poly = parse_poly(template_expr, Chart::Local);
        t.copies = copies;
        auto tr = resolve_template(t);
        j["mode"] = "template";
        j["copies"] = copies;
        j["multiplicity_sequence"] = tr.multiplicity_sequence;
        j["steps"] = ordered_json::array();
        for (const auto& s : tr.steps)
            j["steps"].push_back({{"center", s.center},
                                  {"multiplicity", s.multiplicity},
                                  {"orbit_size", s.orbit_size},
                                  {"branch_parity_odd", s.parity_odd}});
        long long dchi = 0, dk2 = 0;
        for (const auto& [src, m] : [&] {
                 std::vector<std::pair<std::string, int>> v;
                 for (const auto& s : tr.steps)
                     for (int i = 0; i < s.orbit_size; ++i)
                         v.push_back({s.center, s.multiplicity});
                 return v;
             }()) {
            auto [a, b] = step_invariant_delta(m);
            dchi += a;
            dk2 += b;
        }
        j["delta_per_copy"] = {{"dchi", dchi}, {"dK2", dk2}};
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    Chart chart = chart_by_name(chart_name_s);
    BiPoly f = parse_poly(branch_expr, chart);
    f.attach_bidegree({f.degree_base(), f.degree_fibre()});
    SurfaceResolution sr(f);
    auto locus = rational_singular_points(sr.branch());
    j["singular_points"] = ordered_json::array();
    for (const auto& p : locus.points)
        j["singular_points"].push_back({{"point", p.point.str()},
                                        {"multiplicity", p.multiplicity}});
    j["complete"] = locus.complete;
    std::vector<ProjPoint> targets;
    if (!point.empty()) {
        auto comma = point.find(',');
        if (comma == std::string::npos)
            throw std::runtime_error("--point expects a,b chart coordinates");
        Rational a = rat_parse(point.substr(0, comma));
        Rational b = rat_parse(point.substr(comma + 1));
        targets.push_back(chart_point(chart, a, b));
    } else {
        if (!locus.complete)
            throw std::runtime_error("singular locus incomplete over Q; pass --point or "
                                     "--template");
        for (const auto& p : locus.points)
            targets.push_back(p.point);
    }
    for (const auto& p : targets)
        sr.resolve_cluster(p);
    j["clusters"] = ordered_json::array();
    std::ostringstream dot;
    dot << "digraph resolution {\n";
    for (const auto& p : targets) {
        int cid = sr.cluster_of_point(p);
        ordered_json jc;
        jc["point"] = p.str();
        jc["multiplicity_sequence"] = sr.multiplicity_sequence(cid);
        jc["steps"] = ordered_json::array();
        for (const auto& s : sr.steps())
            if (s.cluster == cid) {
                jc["steps"].push_back({{"center", s.center},
                                       {"multiplicity", s.multiplicity},
                                       {"orbit_size", s.orbit_size},
                                       {"branch_parity_odd", s.parity_odd}});
                for (int eid : s.exceptionals) {
                    dot << "  n" << eid << " [label=\"" << sr.divisors()[eid].name << " m="
                        << s.multiplicity << " parity=" << (s.parity_odd ? 1 : 0)
                        << " self=" << sr.inter(eid, eid) << "\\ncenter: " << s.center
                        << "\"];\n";
                    if (s.on_exceptional >= 0)
                        dot << "  n" << s.on_exceptional << " -> n" << eid << ";\n";
                }
            }
        j["clusters"].push_back(jc);
    }
    dot << "}\n";
    std::cout << j.dump(2) << "\n";
    if (emit_dot)
        std::cerr << dot.str();
    return 0;
}

int cmd_track(const PipelineOptions& opt, const std::string& point, bool emit_dot,
              bool quiet)
{
    auto res = run_pipeline(opt);
    ordered_json out;
    if (!point.empty()) {
        for (const auto& f : res.report["fibres"])
            if (f.contains("base_point") && f["base_point"] == point)
                out = f;
        if (out.is_null()) {
            std::cerr << "no tracked fibre at base point " << point << "\n";
            return 2;
        }
    } else {
        out = res.report["fibres"];
    }
    std::cout << out.dump(2) << "\n";
    if (emit_dot && !quiet && out.is_object() && out.contains("contracted")) {
        CurveConfiguration cfg = config_from_json(out["contracted"].dump());
        std::cerr << cfg.dot();
    }
    return res.exit_code;
}

int cmd_invariants(const PipelineOptions& opt)
{
    auto res = run_pipeline(opt);
    ordered_json j;
    j["preset"] = opt.preset;
    j["base_change"] = opt.base_change;
    if (res.report.contains("invariants") && !res.report["invariants"].is_null()) {
        const auto& inv = res.report["invariants"];
        j["chi"] = inv["corrected"]["chi"];
        j["K2"] = inv["corrected"]["K2"];
        j["c2"] = inv["corrected"]["c2"];
        j["pre_correction"] = inv["pre_correction"];
        j["minimal"] = inv["minimal"];
    } else {
        j["invariants"] = nullptr;
    }
    if (res.report.contains("ampleness")) {
        j["ample"] = res.report["ampleness"]["ample"];
        j["simply_connected"] = res.report["ampleness"]["simply_connected"];
    }
    if (res.report.contains("base_change_result")) {
        j["classification"] = res.report["base_change_result"]["classification"];
        if (res.report["base_change_result"].contains("exception_family"))
            j["exception_family"] = res.report["base_change_result"]["exception_family"];
    }
    j["status"] = res.report["status"];
    std::cout << j.dump(2) << "\n";
    return res.exit_code;
}

int cmd_search(int components, int max_mult, int max_int, long long max_genus, int max_pa,
               bool csv)
{
    SearchSpace sp;
    sp.max_components = components;
    sp.max_mult = max_mult;
    sp.max_intersection = max_int;
    sp.max_genus = max_genus;
    sp.max_pa = max_pa;
    auto rows = enumerate_configurations(sp);
    if (csv) {
        std::cout << search_csv(rows);
        return 0;
    }
    ordered_json j = ordered_json::array();
    for (const auto& r : rows) {
        ordered_json e;
        e["genus"] = r.genus;
        e["config"] = ordered_json::parse(config_to_json(r.cfg));
        j.push_back(e);
    }
    std::cout << j.dump(2) << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"exact-arithmetic computations on fibred surfaces over P1"};
    app.require_subcommand(1);

    // classify
    long long class_g = 0;
    std::string class_mults;
    auto* c_classify = app.add_subcommand("classify", "Campana orbifold classification");
    c_classify->add_option("--base-genus", class_g, "genus of the base curve");
    c_classify->add_option("--mults", class_mults, "comma-separated multiplicities >= 2");

    // winters / genus
    std::string cfg_path = "-";
    auto* c_winters = app.add_subcommand("winters", "Winters admissibility of a configuration");
    c_winters->add_option("config", cfg_path, "configuration JSON file or - for stdin");
    std::string genus_path = "-";
    bool genus_dot = false;
    auto* c_genus = app.add_subcommand("genus", "fibre genus of a configuration");
    c_genus->add_option("config", genus_path, "configuration JSON file or - for stdin");
    c_genus->add_flag("--emit-dot", genus_dot, "print DOT to stderr");

    // resolve
    std::string branch_expr, res_chart = "s=z=1", res_point, template_expr;
    int copies = 1;
    bool res_dot = false;
    auto* c_resolve = app.add_subcommand("resolve", "canonical resolution of a branch curve");
    c_resolve->add_option("--branch", branch_expr, "branch polynomial expression");
    c_resolve->add_option("--chart", res_chart, "chart (default s=z=1)");
    c_resolve->add_option("--point", res_point, "chart coordinates a,b of one centre");
    c_resolve->add_option("--template", template_expr, "local template polynomial in u,x");
    c_resolve->add_option("--copies", copies, "template replication count");
    c_resolve->add_flag("--emit-dot", res_dot, "print DOT to stderr");

    // track / pipeline / invariants share preset options
    auto add_preset_opts = [&](CLI::App* c, PipelineOptions& o, std::string& alpha_s) {
        c->add_option("--preset", o.preset, "type1|type2|type3|type4|even:<n>")->required();
        c->add_option("--alpha", alpha_s, "type-1 parameter alpha (rational, default 1)");
        c->add_option("--h", o.h, "type-4 parameter h (default 2)");
        c->add_option("--base-change", o.base_change, "cyclic base-change degree (default 1)");
        c->add_flag("--template-mode", o.template_mode, "resolve via the local template");
        c->add_flag("--corrected-type3", o.corrected_type3,
                    "use the evenness-corrected type-3 branch of bidegree (8,6)");
    };
    PipelineOptions track_opt, pipe_opt, inv_opt;
    std::string track_alpha = "1", pipe_alpha = "1", inv_alpha = "1";
    std::string track_point;
    bool track_dot = false, quiet = false;
    auto* c_track = app.add_subcommand("track", "track the designated fibre of a preset");
    add_preset_opts(c_track, track_opt, track_alpha);
    c_track->add_option("--point", track_point, "base point, e.g. [0:1]");
    c_track->add_flag("--emit-dot", track_dot, "print DOT of the contracted fibre to stderr");

    auto* c_inv = app.add_subcommand("invariants", "surface invariants of a preset");
    add_preset_opts(c_inv, inv_opt, inv_alpha);

    auto* c_pipe = app.add_subcommand("pipeline", "full preset pipeline report");
    add_preset_opts(c_pipe, pipe_opt, pipe_alpha);
    c_pipe->add_flag("--quiet", quiet, "JSON only");

    // search
    int s_comp = 2, s_mult = 30, s_int = 60, s_pa = 0;
    long long s_genus = -1;
    bool s_csv = false;
    auto* c_search = app.add_subcommand("search", "enumerate admissible C-fibres");
    c_search->add_option("--components", s_comp, "max component count");
    c_search->add_option("--max-mult", s_mult, "max multiplicity");
    c_search->add_option("--max-int", s_int, "max pairwise intersection");
    c_search->add_option("--max-genus", s_genus, "genus cap (-1: none)");
    c_search->add_option("--max-pa", s_pa, "max component arithmetic genus");
    c_search->add_flag("--csv", s_csv, "CSV output");

    CLI11_PARSE(app, argc, argv);

    try {
        if (c_classify->parsed()) {
            std::vector<long long> mults;
            std::stringstream ss(class_mults);
            std::string tok;
            while (std::getline(ss, tok, ','))
                if (!tok.empty())
                    mults.push_back(std::stoll(tok));
            return cmd_classify(class_g, mults);
        }
        if (c_winters->parsed())
            return cmd_winters(cfg_path);
        if (c_genus->parsed())
            return cmd_genus(genus_path, genus_dot);
        if (c_resolve->parsed())
            return cmd_resolve(branch_expr, res_chart, res_point, template_expr, copies,
                               res_dot);
        if (c_track->parsed()) {
            track_opt.alpha = rat_parse(track_alpha);
            return cmd_track(track_opt, track_point, track_dot, quiet);
        }
        if (c_inv->parsed()) {
            inv_opt.alpha = rat_parse(inv_alpha);
            return cmd_invariants(inv_opt);
        }
        if (c_pipe->parsed()) {
            pipe_opt.alpha = rat_parse(pipe_alpha);
            auto res = run_pipeline(pipe_opt);
            std::cout << res.report.dump(2) << "\n";
            if (!quiet)
                for (const auto& n : res.report["status"]["paper_notes"])
                    std::cerr << "note: " << n.get<std::string>() << "\n";
            return res.exit_code;
        }
        if (c_search->parsed())
            return cmd_search(s_comp, s_mult, s_int, s_genus, s_pa, s_csv);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
