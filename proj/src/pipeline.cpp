#include "fibsurf/pipeline.hpp"

#include "fibsurf/config.hpp"
#include "fibsurf/invariants.hpp"
#include "fibsurf/orbifold.hpp"
#include "fibsurf/presets.hpp"
#include "fibsurf/tracker.hpp"

#include <algorithm>
#include <set>

namespace fibsurf {

using nlohmann::ordered_json;

namespace {

ordered_json config_json(const CurveConfiguration& cfg)
{
    ordered_json j;
    j["components"] = ordered_json::array();
    for (const auto& c : cfg.components()) {
        ordered_json jc;
        jc["id"] = c.id;
        jc["mult"] = c.mult;
        jc["pa"] = c.pa;
        if (c.self_int)
            jc["self_int"] = *c.self_int;
        j["components"].push_back(jc);
    }
    j["intersections"] = ordered_json::array();
    for (const auto& [k, v] : cfg.intersections())
        j["intersections"].push_back({k.first, k.second, v});
    return j;
}

ordered_json fibre_report_json(const FibreReport& rep)
{
    ordered_json j;
    j["base_point"] = rep.base.str();
    j["downstairs"] = config_json(rep.downstairs);
    j["upstairs"] = config_json(rep.upstairs);
    j["contracted"] = config_json(rep.contracted);
    j["contractions"] = rep.contractions;
    j["genus"] = rep.genus;
    j["predicates"] = {{"gcd", rep.predicates.gcd},
                       {"min", rep.predicates.min},
                       {"connected", rep.predicates.connected},
                       {"is_multiple", rep.predicates.is_multiple},
                       {"is_c_fibre", rep.predicates.is_c_fibre},
                       {"is_valid_fibration_fibre", rep.predicates.is_valid_fibration_fibre}};
    j["winters_pass"] = rep.winters_pass;
    if (rep.generic_genus)
        j["matches_generic_fibre_genus"] = rep.genus_matches_generic;
    return j;
}

ordered_json invariants_json(const SurfaceInvariants& s)
{
    ordered_json j;
    j["chi"] = s.chi;
    j["K2"] = s.K2;
    j["c2"] = s.c2;
    return j;
}

} // namespace

PipelineResult run_pipeline(const PipelineOptions& opt)
{
    PipelineResult res;
    ordered_json& J = res.report;
    std::vector<std::string> notes, errors;
    J["schema"] = "fibsurf-report/1";
    J["preset"] = opt.preset;
    J["alpha"] = rat_str(opt.alpha);
    J["h"] = opt.h;
    J["base_change"] = opt.base_change;
    J["template_mode"] = opt.template_mode;
    J["corrected_type3"] = opt.corrected_type3;

    auto finish = [&]() {
        J["status"] = {{"exit_code", res.exit_code}, {"errors", errors}, {"paper_notes", notes}};
        return res;
    };
    auto note_even_genus_claim = [&](const PresetSpec& spec, long long generic_genus) {
        if (spec.even_n < 2)
            return;
        long long claimed = spec.even_n;
        if (claimed != generic_genus) {
            notes.push_back("the paper claims the even-genus fibration has genus n = " +
                            std::to_string(claimed) + ", but the branch meets the generic "
                            "fibre in 3n points, giving genus 3n/2 - 1 = " +
                            std::to_string(generic_genus));
            res.exit_code = std::max(res.exit_code, 3);
        }
    };

    try {
        if (opt.base_change < 1)
            throw std::domain_error("base-change degree must be >= 1");
        PresetSpec spec = make_preset(opt.preset, opt.alpha, opt.h, opt.corrected_type3);
        Bidegree bd = *spec.branch.bidegree();
        J["branch"] = {{"expr", spec.branch.str()},
                       {"chart", chart_name(spec.branch.chart())},
                       {"bidegree", {bd.first, bd.second}},
                       {"even_divisor", even_divisor_check(bd)}};

        if (!even_divisor_check(bd)) {
            if (spec.evenness_failure_is_paper_conflict) {
                notes.push_back(
                    "bidegree (" + std::to_string(bd.first) + "," + std::to_string(bd.second) +
                    ") is not an even divisor, while the paper asserts the branches are even "
                    "divisors and of bi-degree (6n,6) after base change; no double cover exists "
                    "for this projectivization (a corrected preset sits behind "
                    "--corrected-type3)");
                res.exit_code = 3;
            } else {
                errors.push_back("branch bidegree (" + std::to_string(bd.first) + "," +
                                 std::to_string(bd.second) +
                                 ") is not an even divisor; for type4 this needs even h");
                res.exit_code = 2;
            }
            return finish();
        }

        SingularLocus locus = rational_singular_points(spec.branch);
        {
            ordered_json js;
            js["points"] = ordered_json::array();
            for (const auto& p : locus.points)
                js["points"].push_back({{"point", p.point.str()},
                                        {"multiplicity", p.multiplicity}});
            js["complete"] = locus.complete;
            js["notes"] = locus.notes;
            J["singular_points"] = js;
        }

        std::set<std::pair<bool, Rational>> blocked(locus.incomplete_fibres.begin(),
                                                    locus.incomplete_fibres.end());
        auto is_blocked = [&](const BasePt& b) {
            return blocked.count({b.inf, b.v}) > 0;
        };

        // All singular base points become designated fibres so the orbifold
        // string can see every singular fibre.
        std::vector<BasePt> designated = spec.designated;
        for (const auto& p : locus.points) {
            BasePt b{p.point.ts_inf, p.point.ts};
            if (std::find(designated.begin(), designated.end(), b) == designated.end())
                designated.push_back(b);
        }

        SurfaceResolution sr(spec.branch);
        for (const auto& b : designated)
            sr.add_designated_fibre(b);

        long long generic_genus = generic_fibre_genus(spec.branch);
        J["generic_fibre_genus"] = generic_genus;

        std::vector<FibreReport> reports;
        ordered_json jres = ordered_json::array();
        ordered_json jfib = ordered_json::array();
        bool invariants_available = false;
        std::vector<std::pair<std::string, int>> delta_steps;
        int contractions = 0;
        bool minimal = true;

        if (opt.template_mode) {
            if (!spec.fibre_template)
                throw std::domain_error("preset " + opt.preset + " has no local template");
            TemplateResolution tr = resolve_template(*spec.fibre_template);
            {
                ordered_json jc;
                jc["mode"] = "template";
                jc["copies"] = spec.fibre_template->copies;
                jc["template_multiplicity_sequence"] = tr.multiplicity_sequence;
                ordered_json steps = ordered_json::array();
                for (const auto& s : tr.steps)
                    steps.push_back({{"center", s.center},
                                     {"multiplicity", s.multiplicity},
                                     {"orbit_size", s.orbit_size},
                                     {"branch_parity_odd", s.parity_odd}});
                jc["steps"] = steps;
                jres.push_back(jc);
            }
            BasePt b0{false, Rational(0)};
            DownstairsFibre df =
                assemble_template_fibre(b0, tr, spec.fibre_template->copies, 0, true);
            FibreReport rep = assemble_fibre_report(df, generic_genus);
            reports.push_back(rep);
            jfib.push_back(fibre_report_json(rep));
            for (const auto& b : designated)
                if (!(b == b0)) {
                    ordered_json skip;
                    skip["base_point"] = b.str();
                    skip["skipped"] = "template mode resolves only the designated fibre at " +
                                      b0.str();
                    jfib.push_back(skip);
                }
            note_even_genus_claim(spec, generic_genus);
        } else {
            // Auto mode: every rational singular point gets its cluster resolved,
            // except clusters over fibres poisoned by irrational companions.
            for (const auto& p : locus.points) {
                BasePt b{p.point.ts_inf, p.point.ts};
                if (is_blocked(b))
                    continue;
                sr.resolve_cluster(p.point);
            }
            for (const auto& p : locus.points) {
                int cid = sr.cluster_of_point(p.point);
                if (cid < 0)
                    continue;
                ordered_json jc;
                jc["point"] = p.point.str();
                jc["multiplicity_sequence"] = sr.multiplicity_sequence(cid);
                ordered_json steps = ordered_json::array();
                for (const auto& s : sr.steps())
                    if (s.cluster == cid)
                        steps.push_back({{"center", s.center},
                                         {"multiplicity", s.multiplicity},
                                         {"orbit_size", s.orbit_size},
                                         {"branch_parity_odd", s.parity_odd}});
                jc["steps"] = steps;
                jres.push_back(jc);
            }

            for (const auto& b : designated) {
                if (is_blocked(b)) {
                    ordered_json skip;
                    skip["base_point"] = b.str();
                    skip["skipped"] =
                        "fibre carries singular points with irrational coordinates; "
                        "resolve via --template-mode";
                    jfib.push_back(skip);
                    errors.push_back("designated fibre " + b.str() +
                                     " has non-rational singular points; template required");
                    res.exit_code = 2;
                    continue;
                }
                FibreReport rep = assemble_fibre_report(sr.downstairs_fibre(b), generic_genus);
                reports.push_back(rep);
                jfib.push_back(fibre_report_json(rep));
            }

            if (locus.complete) {
                invariants_available = true;
                delta_steps = sr.delta_steps();
                auto ledger = sr.minus_one_ledger();
                contractions = ledger.contractions();
                minimal = ledger.minimal();
            } else {
                notes.push_back("singular locus incomplete over Q; global invariants omitted");
            }
            note_even_genus_claim(spec, generic_genus);
        }
        J["resolution"] = jres;
        J["fibres"] = jfib;

        for (const auto& rep : reports)
            if (!rep.genus_matches_generic)
                throw std::logic_error("fibre genus disagrees with the generic-fibre genus");

        // Multiple-fibre bookkeeping at the fibration genus.
        {
            auto mc = multiple_fibre_constraints(generic_genus);
            ordered_json jm;
            jm["genus"] = generic_genus;
            if (mc.all_admissible)
                jm["admissible_multiplicities"] = "all";
            else {
                ordered_json arr = ordered_json::array();
                for (auto [n, pa] : mc.admissible)
                    arr.push_back({{"n", n}, {"quotient_pa", pa}});
                jm["admissible_multiplicities"] = arr;
            }
            bool no_multiple = true;
            for (const auto& rep : reports)
                if (rep.predicates.is_multiple)
                    no_multiple = false;
            jm["no_multiple_fibres_observed"] = no_multiple;
            J["multiple_fibres"] = jm;
        }

        // Base change of degree n.
        int n = opt.base_change;
        Bidegree bc_bd{bd.first * n, bd.second};
        {
            ordered_json jb;
            jb["degree"] = n;
            jb["bidegree"] = {bc_bd.first, bc_bd.second};
            if (spec.paper_base_degree_per_n > 0 && spec.paper_base_degree_per_n != bd.first) {
                notes.push_back("base-changed branch has bidegree (" +
                                std::to_string(bc_bd.first) + "," + std::to_string(bc_bd.second) +
                                "), while the paper asserts (" +
                                std::to_string(spec.paper_base_degree_per_n) + "n,6)");
                res.exit_code = std::max(res.exit_code, 3);
            }
            // Two rational ramification points away from the singular fibres.
            std::set<std::pair<bool, Rational>> used;
            for (const auto& p : locus.points)
                used.insert({p.point.ts_inf, p.point.ts});
            std::vector<BasePt> ram;
            for (int k = 2; (int)ram.size() < 2; ++k)
                if (!used.count({false, Rational(k)}))
                    ram.push_back(BasePt{false, Rational(k)});
            if (n >= 2)
                jb["ramification_points"] = {ram[0].str(), ram[1].str()};

            OrbifoldBase ob;
            ob.base_genus = 0;
            ordered_json jmul = ordered_json::array();
            for (const auto& rep : reports) {
                long long mb = rep.predicates.min;
                jmul.push_back({{"base_point", rep.base.str()},
                                {"m", mb},
                                {"copies_after_base_change", n}});
                if (mb >= 2)
                    for (int i = 0; i < n; ++i)
                        ob.mults.push_back(mb);
            }
            jb["singular_fibres"] = jmul;
            bool unknown_fibres = false;
            for (const auto& e : jfib)
                if (e.contains("skipped"))
                    unknown_fibres = true;
            if (unknown_fibres)
                jb["orbifold_note"] =
                    "some singular fibres have unknown multiplicity; they can only "
                    "increase deg(K+Delta)";
            auto cls = classify(ob);
            jb["orbifold"] = {{"base_genus", 0}, {"mults", ob.mults}};
            jb["delta_degree"] = rat_str(cls.degree);
            jb["classification"] = cls.general_type ? "general_type" : "special";
            if (!cls.general_type && !cls.exception_family.empty())
                jb["exception_family"] = cls.exception_family;
            J["base_change_result"] = jb;
        }

        // Invariants (post base change): raw double cover plus resolution ledger.
        if (invariants_available) {
            SurfaceInvariants raw = smooth_double_cover_invariants(bc_bd);
            std::vector<std::pair<std::string, int>> steps_n;
            for (int i = 0; i < n; ++i)
                for (const auto& s : delta_steps)
                    steps_n.push_back(s);
            SurfaceInvariants cor = resolved_invariants(raw, steps_n, contractions * n);
            ordered_json ji;
            ji["pre_correction"] = invariants_json(raw);
            ji["corrected"] = invariants_json(cor);
            ji["contractions"] = contractions * n;
            ji["minimal"] = minimal;
            ordered_json jl = ordered_json::array();
            for (const auto& e : cor.ledger)
                jl.push_back({{"source", e.source}, {"dchi", e.dchi}, {"dK2", e.dK2}});
            ji["ledger"] = jl;
            J["invariants"] = ji;
        } else {
            J["invariants"] = nullptr;
        }

        // Ampleness and the fundamental-group conclusion over a rational base.
        {
            auto af = ampleness_flag(bc_bd);
            J["ampleness"] = {{"ample", af.ample},
                              {"simply_connected", af.simply_connected_conclusion}};
        }
    } catch (const std::exception& e) {
        errors.push_back(e.what());
        res.exit_code = 2;
    }
    return finish();
}

} // namespace fibsurf
