#include "fibsurf/search.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

namespace fibsurf {

std::vector<TwoComponentEntry> two_component_search(int max_m, int max_k)
{
    if (max_m < 2 || max_k < 1)
        throw std::domain_error("two_component_search needs max_m >= 2, max_k >= 1");
    std::vector<TwoComponentEntry> out;
    for (int m1 = 2; m1 <= max_m; ++m1)
        for (int m2 = m1 + 1; m2 <= max_m; ++m2) {
            if (std::gcd(m1, m2) != 1)
                continue;
            // Winters with coprime multiplicities forces m1 m2 | k.
            for (int k = m1 * m2; k <= max_k; k += m1 * m2) {
                TwoComponentEntry e;
                e.m1 = m1;
                e.m2 = m2;
                e.k = k;
                e.genus = (long long)(m1 + m2) * (k - 2) / 2 + 1;
                out.push_back(e);
            }
        }
    std::sort(out.begin(), out.end(), [](const TwoComponentEntry& a, const TwoComponentEntry& b) {
        if (a.genus != b.genus) return a.genus < b.genus;
        return std::tie(a.m1, a.m2, a.k) < std::tie(b.m1, b.m2, b.k);
    });
    return out;
}

void SearchSpace::validate() const
{
    if (max_components < 1 || max_mult < 1 || max_intersection < 0 || max_pa < 0)
        throw std::domain_error("search space bounds must be positive");
}

namespace {

struct RawConfig {
    std::vector<std::pair<int, int>> comps; // (mult, pa), nondecreasing
    std::vector<int> edges;                 // upper triangle, row-major
};

// Lexicographically minimal relabelling among permutations preserving nothing
// (colours move with the vertices); small n makes brute force fine.
std::vector<int> canonical_key(const RawConfig& rc)
{
    int n = (int)rc.comps.size();
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    auto at = [&](int i, int j) {
        if (i == j) return 0;
        if (i > j) std::swap(i, j);
        int idx = 0;
        for (int r = 0; r < i; ++r) idx += n - 1 - r;
        idx += j - i - 1;
        return rc.edges[idx];
    };
    std::vector<int> best;
    do {
        std::vector<int> key;
        for (int i = 0; i < n; ++i) {
            key.push_back(rc.comps[perm[i]].first);
            key.push_back(rc.comps[perm[i]].second);
        }
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                key.push_back(at(perm[i], perm[j]));
        if (best.empty() || key < best)
            best = key;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

} // namespace

std::vector<FoundConfiguration> enumerate_configurations(const SearchSpace& space)
{
    space.validate();
    std::vector<FoundConfiguration> out;
    std::set<std::vector<int>> seen_keys;
    long long budget = space.enumeration_cap;

    for (int n = 1; n <= space.max_components; ++n) {
        // nondecreasing (mult, pa) tuples
        std::vector<std::pair<int, int>> palette;
        for (int m = 1; m <= space.max_mult; ++m)
            for (int pa = 0; pa <= space.max_pa; ++pa)
                palette.push_back({m, pa});
        std::vector<int> pick(n, 0);
        std::vector<std::vector<std::pair<int, int>>> tuples;
        std::function<void(int, int)> gen = [&](int pos, int lo) {
            if (pos == n) {
                std::vector<std::pair<int, int>> t;
                for (int i = 0; i < n; ++i) t.push_back(palette[pick[i]]);
                tuples.push_back(t);
                return;
            }
            for (int c = lo; c < (int)palette.size(); ++c) {
                pick[pos] = c;
                gen(pos + 1, c);
            }
        };
        gen(0, 0);

        int m_edges = n * (n - 1) / 2;
        for (const auto& tup : tuples) {
            std::vector<int> edges(m_edges, 0);
            std::function<void(int)> rec = [&](int pos) {
                if (budget-- < 0)
                    throw std::domain_error("search space too large; tighten the bounds");
                if (pos == m_edges) {
                    RawConfig rc{tup, edges};
                    CurveConfiguration cfg;
                    for (int i = 0; i < n; ++i)
                        cfg.add_component_with_id(i, tup[i].first, tup[i].second);
                    int idx = 0;
                    for (int i = 0; i < n; ++i)
                        for (int j = i + 1; j < n; ++j, ++idx)
                            if (edges[idx] > 0)
                                cfg.set_intersection(i, j, edges[idx]);
                    auto w = winters_check(cfg);
                    if (space.require_winters && !w.pass)
                        return;
                    if (!w.pass)
                        return; // self-intersections would not be integral
                    auto derived = derive_self_intersections(cfg);
                    if (space.forbid_minus_one)
                        for (const auto& c : derived.components())
                            if (c.pa == 0 && *c.self_int == -1)
                                return;
                    auto preds = fibre_predicates(derived);
                    if (space.require_connected && !preds.connected)
                        return;
                    if (space.require_c_fibre && !preds.is_c_fibre)
                        return;
                    long long g = fibre_genus(derived);
                    if (space.max_genus >= 0 && g > space.max_genus)
                        return;
                    auto key = canonical_key(rc);
                    if (!seen_keys.insert(key).second)
                        return;
                    out.push_back({derived, g});
                    return;
                }
                for (int v = 0; v <= space.max_intersection; ++v) {
                    edges[pos] = v;
                    rec(pos + 1);
                }
                edges[pos] = 0;
            };
            rec(0);
        }
    }
    std::stable_sort(out.begin(), out.end(),
                     [](const FoundConfiguration& a, const FoundConfiguration& b) {
                         if (a.cfg.components().size() != b.cfg.components().size())
                             return a.cfg.components().size() < b.cfg.components().size();
                         if (a.genus != b.genus)
                             return a.genus < b.genus;
                         return config_to_json(a.cfg) < config_to_json(b.cfg);
                     });
    return out;
}

std::string search_csv(const std::vector<FoundConfiguration>& rows)
{
    std::ostringstream o;
    o << "components,mults,pa,intersections,self_intersections,genus,c_fibre,connected,"
         "winters\n";
    for (const auto& r : rows) {
        const auto& cs = r.cfg.components();
        o << cs.size() << ",\"";
        for (size_t i = 0; i < cs.size(); ++i)
            o << (i ? " " : "") << cs[i].mult;
        o << "\",\"";
        for (size_t i = 0; i < cs.size(); ++i)
            o << (i ? " " : "") << cs[i].pa;
        o << "\",\"";
        bool first = true;
        for (size_t i = 0; i < cs.size(); ++i)
            for (size_t j = i + 1; j < cs.size(); ++j) {
                o << (first ? "" : " ") << r.cfg.intersection(cs[i].id, cs[j].id);
                first = false;
            }
        o << "\",\"";
        for (size_t i = 0; i < cs.size(); ++i)
            o << (i ? " " : "") << *cs[i].self_int;
        o << "\"," << r.genus;
        auto p = fibre_predicates(r.cfg);
        o << "," << (p.is_c_fibre ? 1 : 0) << "," << (p.connected ? 1 : 0) << ","
          << (winters_check(r.cfg).pass ? 1 : 0) << "\n";
    }
    return o.str();
}

} // namespace fibsurf
