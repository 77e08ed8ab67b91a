#include "fibsurf/tracker.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace fibsurf {

namespace {

struct UpComponent {
    int id;
    int down_id;
    int copy = 0; // 0, or 1/2 for split pairs
    long long mult;
    int pa;
    long long self;
};

} // namespace

CurveConfiguration lift_to_double_cover(const DownstairsFibre& fibre)
{
    // Downstairs sanity: the fibre divisor has zero intersection with each component.
    for (const auto& ci : fibre.components) {
        long long fdotc = ci.mult * ci.self;
        for (const auto& cj : fibre.components)
            if (cj.divisor_id != ci.divisor_id)
                fdotc += cj.mult * fibre.config.intersection(ci.divisor_id, cj.divisor_id);
        if (fdotc != 0)
            throw std::logic_error("downstairs fibre fails F.C = 0; tracking bug");
    }

    std::vector<UpComponent> ups;
    std::map<int, std::vector<int>> copies_of; // down id -> up ids
    int next_id = 0;
    for (const auto& c : fibre.components) {
        if (c.in_branch) {
            if (c.self % 2 != 0)
                throw std::domain_error("component " + c.name +
                                        " lies in the branch with odd self-intersection");
            ups.push_back({next_id, c.divisor_id, 0, 2 * c.mult, 0, c.self / 2});
            copies_of[c.divisor_id] = {next_id++};
        } else if (c.branch_crossings > 0) {
            long long r = c.branch_crossings;
            // 2g' - 2 = 2 (2 pa - 2) + r with pa = 0 downstairs
            if (r % 2 != 0)
                throw std::domain_error("component " + c.name + " meets the branch in an odd "
                                        "number of points; Riemann-Hurwitz parity fails");
            int gp = (int)((r - 4) / 2 + 1);
            if (gp < 0)
                throw std::logic_error("negative genus in the lift");
            ups.push_back({next_id, c.divisor_id, 0, c.mult, gp, 2 * c.self});
            copies_of[c.divisor_id] = {next_id++};
        } else {
            // rational and disjoint from the branch: the preimage splits
            ups.push_back({next_id, c.divisor_id, 1, c.mult, 0, c.self});
            ups.push_back({next_id + 1, c.divisor_id, 2, c.mult, 0, c.self});
            copies_of[c.divisor_id] = {next_id, next_id + 1};
            next_id += 2;
        }
    }

    auto down_comp = [&](int did) -> const FibreComponent& {
        for (const auto& c : fibre.components)
            if (c.divisor_id == did)
                return c;
        throw std::logic_error("unknown downstairs component");
    };

    // Fixed edges plus unknowns where a split pair is involved.
    std::map<std::pair<int, int>, long long> edges;
    struct Unknown {
        int a1, a2; // up ids of the split pair
        int b1, b2; // other side (b2 = -1 when irreducible)
        long long total;
    };
    std::vector<Unknown> unknowns;
    for (size_t i = 0; i < fibre.components.size(); ++i)
        for (size_t j = i + 1; j < fibre.components.size(); ++j) {
            const auto& ci = fibre.components[i];
            const auto& cj = fibre.components[j];
            long long v = fibre.config.intersection(ci.divisor_id, cj.divisor_id);
            const auto& ui = copies_of[ci.divisor_id];
            const auto& uj = copies_of[cj.divisor_id];
            bool spl_i = ui.size() == 2, spl_j = uj.size() == 2;
            if (!spl_i && !spl_j) {
                long long e;
                if (ci.in_branch && cj.in_branch) {
                    if (v != 0)
                        throw std::domain_error("branch components " + ci.name + ", " +
                                                cj.name + " still meet; branch not smooth");
                    e = 0;
                } else if (ci.in_branch || cj.in_branch) {
                    e = v;
                } else {
                    e = 2 * v;
                }
                if (e != 0)
                    edges[{ui[0], uj[0]}] = e;
            } else {
                // split components are branch-disjoint, so the other side is not in branch
                const auto& cin = spl_i ? cj : ci;
                if (down_comp(spl_i ? ci.divisor_id : cj.divisor_id).branch_crossings != 0)
                    throw std::logic_error("split component meets the branch");
                long long total = cin.in_branch ? v : 2 * v;
                if (total == 0)
                    continue;
                if (spl_i && spl_j)
                    unknowns.push_back({ui[0], ui[1], uj[0], uj[1], total});
                else if (spl_i)
                    unknowns.push_back({ui[0], ui[1], uj[0], -1, total});
                else
                    unknowns.push_back({uj[0], uj[1], ui[0], -1, total});
            }
        }

    // Solve the unknown edges: nonnegative integers, row sums fixed, F.C = 0.
    auto check_full = [&](const std::map<std::pair<int, int>, long long>& es) {
        for (const auto& u : ups) {
            long long acc = u.mult * u.self;
            for (const auto& v : ups) {
                if (v.id == u.id)
                    continue;
                auto k = std::minmax(u.id, v.id);
                auto it = es.find({k.first, k.second});
                if (it != es.end())
                    acc += v.mult * it->second;
            }
            if (acc != 0)
                return false;
        }
        return true;
    };

    std::vector<std::map<std::pair<int, int>, long long>> solutions;
    std::function<void(size_t, std::map<std::pair<int, int>, long long>&)> dfs =
        [&](size_t idx, std::map<std::pair<int, int>, long long>& acc) {
            if (solutions.size() > 8)
                return;
            if (idx == unknowns.size()) {
                if (check_full(acc))
                    solutions.push_back(acc);
                return;
            }
            const auto& u = unknowns[idx];
            auto put = [](std::map<std::pair<int, int>, long long>& m, int a, int b,
                          long long v) {
                if (v != 0)
                    m[{std::min(a, b), std::max(a, b)}] += v;
            };
            if (u.b2 < 0) {
                for (long long e1 = 0; e1 <= u.total; ++e1) {
                    auto next = acc;
                    put(next, u.a1, u.b1, e1);
                    put(next, u.a2, u.b1, u.total - e1);
                    dfs(idx + 1, next);
                }
            } else {
                for (long long e11 = 0; e11 <= u.total; ++e11)
                    for (long long e12 = 0; e11 + e12 <= u.total; ++e12)
                        for (long long e21 = 0; e11 + e12 + e21 <= u.total; ++e21) {
                            auto next = acc;
                            long long e22 = u.total - e11 - e12 - e21;
                            put(next, u.a1, u.b1, e11);
                            put(next, u.a1, u.b2, e12);
                            put(next, u.a2, u.b1, e21);
                            put(next, u.a2, u.b2, e22);
                            dfs(idx + 1, next);
                        }
            }
        };
    {
        auto acc = edges;
        dfs(0, acc);
    }
    if (solutions.empty())
        throw std::domain_error("no integral assignment of upstairs intersections "
                                "satisfies F.C = 0");
    // Canonicalise copy swaps before checking uniqueness.
    auto canon = [&](const std::map<std::pair<int, int>, long long>& es) {
        // For each split pair, order the copies by their edge vector.
        std::map<int, int> rename;
        for (const auto& u : ups)
            rename[u.id] = u.id;
        for (const auto& [did, ids] : copies_of) {
            if (ids.size() != 2)
                continue;
            auto vec = [&](int uid) {
                std::vector<long long> v;
                for (const auto& u : ups) {
                    auto k = std::minmax(uid, u.id);
                    auto it = es.find({k.first, k.second});
                    v.push_back(it == es.end() ? 0 : it->second);
                }
                return v;
            };
            if (vec(ids[1]) < vec(ids[0])) {
                rename[ids[0]] = ids[1];
                rename[ids[1]] = ids[0];
            }
        }
        std::map<std::pair<int, int>, long long> out;
        for (const auto& [k, v] : es) {
            int a = rename[k.first], b = rename[k.second];
            out[{std::min(a, b), std::max(a, b)}] = v;
        }
        return out;
    };
    std::set<std::map<std::pair<int, int>, long long>> distinct;
    for (const auto& s : solutions)
        distinct.insert(canon(s));
    if (distinct.size() > 1)
        throw std::domain_error("upstairs intersections are not pinned down by F.C = 0; "
                                "deeper resolution required");
    auto final_edges = *distinct.begin();

    CurveConfiguration cfg;
    for (const auto& u : ups)
        cfg.add_component_with_id(u.id, (int)u.mult, u.pa, u.self);
    for (const auto& [k, v] : final_edges)
        cfg.set_intersection(k.first, k.second, v);
    cfg.validate();
    return cfg;
}

FibreReport assemble_fibre_report(const DownstairsFibre& fibre,
                                  std::optional<long long> generic_genus)
{
    FibreReport rep;
    rep.base = fibre.base;
    rep.downstairs = fibre.config;
    rep.upstairs = lift_to_double_cover(fibre);
    auto contracted = contract_minus_one(rep.upstairs);
    rep.contracted = contracted.cfg;
    rep.contractions = contracted.contractions;
    rep.genus = fibre_genus(rep.contracted);
    if (fibre_genus(rep.upstairs) != rep.genus)
        throw std::logic_error("genus not preserved by contraction");
    rep.predicates = fibre_predicates(rep.contracted);
    rep.winters_pass = winters_check(rep.contracted).pass;
    rep.generic_genus = generic_genus;
    rep.genus_matches_generic = !generic_genus || *generic_genus == rep.genus;
    return rep;
}

DownstairsFibre assemble_template_fibre(const BasePt& base, const TemplateResolution& tr,
                                        int copies, long long line_self_start,
                                        bool line_in_branch)
{
    if (tr.line_id < 0)
        throw std::domain_error("template has no fibre-line factor (no u in the branch)");
    if (!line_in_branch)
        throw std::domain_error("template assembly requires the fibre line inside the branch");
    DownstairsFibre out;
    out.base = base;

    auto t_inter = [&](int i, int j) -> long long {
        auto k = std::minmax(i, j);
        auto it = tr.matrix.find({k.first, k.second});
        return it == tr.matrix.end() ? 0 : it->second;
    };

    // Central strict transform of the fibre line.
    FibreComponent line;
    line.divisor_id = 0;
    line.name = "line" + base.str();
    line.mult = 1;
    line.in_branch = line_in_branch;
    line.self = line_self_start - (long long)copies * tr.line_self_drop;
    line.branch_crossings = 0; // filled below
    out.components.push_back(line);

    // Tail components, one block per copy.
    std::vector<int> tail_ids;
    for (const auto& d : tr.divisors)
        if (d.exceptional && tr.fibre_mult.count(d.id) && tr.fibre_mult.at(d.id) >= 1)
            tail_ids.push_back(d.id);
    std::sort(tail_ids.begin(), tail_ids.end());

    int next = 1;
    std::vector<std::map<int, int>> block_map(copies);
    for (int c = 0; c < copies; ++c)
        for (int tid : tail_ids) {
            const auto& d = tr.divisors[tid];
            FibreComponent fc;
            fc.divisor_id = next;
            fc.name = d.name + "#" + std::to_string(c + 1);
            fc.mult = tr.fibre_mult.at(tid);
            fc.in_branch = d.in_branch;
            fc.self = t_inter(tid, tid);
            long long r = 0;
            for (const auto& e : tr.divisors)
                if (e.id != tid && e.in_branch)
                    r += t_inter(tid, e.id);
            fc.branch_crossings = r;
            out.components.push_back(fc);
            block_map[c][tid] = next++;
        }

    for (const auto& c : out.components)
        out.config.add_component_with_id(c.divisor_id, (int)c.mult, 0, c.self);
    long long line_r = 0;
    for (int c = 0; c < copies; ++c)
        for (int tid : tail_ids) {
            long long v = t_inter(tr.line_id, tid);
            if (v != 0)
                out.config.set_intersection(0, block_map[c][tid], v);
            if (tr.divisors[tid].in_branch)
                line_r += v;
            for (int tjd : tail_ids)
                if (tjd > tid && t_inter(tid, tjd) != 0)
                    out.config.set_intersection(block_map[c][tid], block_map[c][tjd],
                                                t_inter(tid, tjd));
        }
    out.components[0].branch_crossings = line_r; // tails only; Qloc never meets the strict line
    return out;
}

} // namespace fibsurf
