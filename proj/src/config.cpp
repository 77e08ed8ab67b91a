#include "fibsurf/config.hpp"

#include <json.hpp>

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

namespace fibsurf {

using nlohmann::ordered_json;

int CurveConfiguration::add_component(int mult, int pa, std::optional<long long> self)
{
    int id = comps_.empty() ? 0 : comps_.back().id + 1;
    add_component_with_id(id, mult, pa, self);
    return id;
}

void CurveConfiguration::add_component_with_id(int id, int mult, int pa,
                                               std::optional<long long> self)
{
    for (const auto& c : comps_)
        if (c.id == id)
            throw std::domain_error("duplicate component id " + std::to_string(id));
    comps_.push_back({id, mult, pa, self});
}

void CurveConfiguration::set_intersection(int i, int j, long long v)
{
    if (i == j)
        throw std::domain_error("use self_int for self-intersections");
    if (v < 0)
        throw std::domain_error("negative pairwise intersection");
    auto key = std::minmax(i, j);
    if (v == 0)
        inter_.erase({key.first, key.second});
    else
        inter_[{key.first, key.second}] = v;
}

const Component& CurveConfiguration::component(int id) const
{
    for (const auto& c : comps_)
        if (c.id == id)
            return c;
    throw std::domain_error("no component with id " + std::to_string(id));
}

Component& CurveConfiguration::component(int id)
{
    for (auto& c : comps_)
        if (c.id == id)
            return c;
    throw std::domain_error("no component with id " + std::to_string(id));
}

long long CurveConfiguration::intersection(int i, int j) const
{
    auto key = std::minmax(i, j);
    auto it = inter_.find({key.first, key.second});
    return it == inter_.end() ? 0 : it->second;
}

void CurveConfiguration::validate() const
{
    std::set<int> ids;
    for (const auto& c : comps_) {
        if (!ids.insert(c.id).second)
            throw std::domain_error("duplicate component id");
        if (c.mult < 1)
            throw std::domain_error("component multiplicity must be >= 1");
        if (c.pa < 0)
            throw std::domain_error("negative arithmetic genus");
    }
    for (const auto& [k, v] : inter_) {
        if (v < 0)
            throw std::domain_error("negative intersection number");
        if (!ids.count(k.first) || !ids.count(k.second))
            throw std::domain_error("intersection references unknown component");
    }
}

std::string CurveConfiguration::dot(const std::string& graph_name) const
{
    std::ostringstream o;
    o << "graph " << graph_name << " {\n";
    for (const auto& c : comps_) {
        o << "  c" << c.id << " [label=\"m=" << c.mult << " pa=" << c.pa;
        if (c.self_int)
            o << " self=" << *c.self_int;
        o << "\"];\n";
    }
    for (const auto& [k, v] : inter_) {
        o << "  c" << k.first << " -- c" << k.second;
        if (v != 1)
            o << " [label=\"" << v << "\"]";
        o << ";\n";
    }
    o << "}\n";
    return o.str();
}

WintersResult winters_check(const CurveConfiguration& cfg)
{
    cfg.validate();
    WintersResult r{true, {}};
    for (const auto& ci : cfg.components()) {
        long long sum = 0;
        for (const auto& cj : cfg.components())
            if (cj.id != ci.id)
                sum += cj.mult * cfg.intersection(ci.id, cj.id);
        bool div = sum % ci.mult == 0;
        r.witnesses.push_back({ci.id, sum, div});
        if (!div)
            r.pass = false;
    }
    return r;
}

CurveConfiguration derive_self_intersections(const CurveConfiguration& cfg)
{
    auto w = winters_check(cfg);
    if (!w.pass)
        throw std::domain_error("Winters divisibility fails; self-intersections not integral");
    CurveConfiguration out = cfg;
    for (size_t i = 0; i < out.components().size(); ++i) {
        const auto& wi = w.witnesses[i];
        out.component(wi.id).self_int = -wi.weighted_sum / cfg.component(wi.id).mult;
    }
    return out;
}

long long fibre_genus(const CurveConfiguration& cfg)
{
    cfg.validate();
    if (cfg.empty())
        throw std::domain_error("empty configuration has no genus");
    long long total = 0;
    for (const auto& ci : cfg.components()) {
        if (!ci.self_int)
            throw std::domain_error("self-intersections must be present for the genus");
        long long fdotc = ci.mult * *ci.self_int;
        for (const auto& cj : cfg.components())
            if (cj.id != ci.id)
                fdotc += cj.mult * cfg.intersection(ci.id, cj.id);
        if (fdotc != 0)
            throw std::domain_error("F.C_i != 0 for component " + std::to_string(ci.id) +
                                    "; not a full fibre");
        total += ci.mult * (2LL * ci.pa - 2 - *ci.self_int);
    }
    if (total % 2 != 0)
        throw std::domain_error("adjunction sum is odd; no integer genus");
    return total / 2 + 1;
}

FibrePredicates fibre_predicates(const CurveConfiguration& cfg)
{
    cfg.validate();
    if (cfg.empty())
        throw std::domain_error("empty configuration has no predicates");
    FibrePredicates p;
    p.min = cfg.components().front().mult;
    for (const auto& c : cfg.components()) {
        p.gcd = std::gcd(p.gcd, (long long)c.mult);
        p.min = std::min(p.min, (long long)c.mult);
    }
    // connectivity of the dual graph (positive intersections as edges)
    std::map<int, int> parent;
    for (const auto& c : cfg.components())
        parent[c.id] = c.id;
    std::function<int(int)> find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const auto& [k, v] : cfg.intersections())
        if (v > 0)
            parent[find(k.first)] = find(k.second);
    std::set<int> roots;
    for (const auto& c : cfg.components())
        roots.insert(find(c.id));
    p.connected = roots.size() == 1;
    p.is_multiple = p.gcd > 1;
    p.is_c_fibre = p.gcd == 1 && p.min > 1;
    p.is_valid_fibration_fibre = p.connected && p.gcd == 1;
    return p;
}

MultipleFibreConstraints multiple_fibre_constraints(long long g)
{
    if (g < 0)
        throw std::domain_error("genus must be nonnegative");
    MultipleFibreConstraints out;
    if (g == 1) {
        out.all_admissible = true; // n | 0 for every n
        return out;
    }
    long long d = g > 1 ? g - 1 : 1 - g; // |g - 1|
    for (long long n = 1; n <= d; ++n)
        if (d % n == 0)
            out.admissible.push_back({n, 1 + (g - 1) / n});
    return out;
}

ContractionResult contract_minus_one(const CurveConfiguration& cfg)
{
    cfg.validate();
    ContractionResult res{cfg, 0};
    for (;;) {
        int victim = -1;
        for (const auto& c : res.cfg.components())
            if (c.pa == 0 && c.self_int && *c.self_int == -1) {
                if (victim < 0 || c.id < victim)
                    victim = c.id;
            }
        if (victim < 0)
            break;
        CurveConfiguration next;
        std::map<int, long long> e; // intersections with the contracted curve
        for (const auto& c : res.cfg.components())
            if (c.id != victim)
                e[c.id] = res.cfg.intersection(c.id, victim);
        for (const auto& c : res.cfg.components()) {
            if (c.id == victim)
                continue;
            long long ei = e[c.id];
            std::optional<long long> self = c.self_int;
            if (self)
                self = *self + ei * ei;
            // a curve through k points of E acquires a k-fold point when E shrinks
            int pa = c.pa + (int)(ei * (ei - 1) / 2);
            next.add_component_with_id(c.id, c.mult, pa, self);
        }
        for (const auto& ci : res.cfg.components()) {
            if (ci.id == victim) continue;
            for (const auto& cj : res.cfg.components()) {
                if (cj.id == victim || cj.id <= ci.id) continue;
                long long v = res.cfg.intersection(ci.id, cj.id) + e[ci.id] * e[cj.id];
                if (v != 0)
                    next.set_intersection(ci.id, cj.id, v);
            }
        }
        res.cfg = std::move(next);
        ++res.contractions;
    }
    return res;
}

CurveConfiguration config_from_json(const std::string& text)
{
    auto j = nlohmann::json::parse(text);
    CurveConfiguration cfg;
    for (const auto& c : j.at("components")) {
        std::optional<long long> self;
        if (c.contains("self_int") && !c["self_int"].is_null())
            self = c["self_int"].get<long long>();
        cfg.add_component_with_id(c.at("id").get<int>(), c.at("mult").get<int>(),
                                  c.value("pa", 0), self);
    }
    if (j.contains("intersections"))
        for (const auto& e : j["intersections"])
            cfg.set_intersection(e.at(0).get<int>(), e.at(1).get<int>(), e.at(2).get<long long>());
    cfg.validate();
    return cfg;
}

std::string config_to_json(const CurveConfiguration& cfg)
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
    return j.dump(2);
}

} // namespace fibsurf
