#include "fibsurf/resolution.hpp"

#include <algorithm>
#include <sstream>

namespace fibsurf {

namespace {

UPoly upoly_of(const std::vector<Rational>& v) { return UPoly(v); }

UPoly reversed(const UPoly& p)
{
    std::vector<Rational> c(p.coeffs().rbegin(), p.coeffs().rend());
    return UPoly(std::move(c));
}

BiPoly upoly_to_bipoly(const UPoly& p, Chart chart, bool fibre_var)
{
    BiPoly out(chart);
    for (int i = 0; i <= p.degree(); ++i)
        if (p.coeffs()[i] != 0)
            out = out + BiPoly::monomial(chart, fibre_var ? 0 : i, fibre_var ? i : 0,
                                         p.coeffs()[i]);
    return out;
}

} // namespace

int SurfaceResolution::add_divisor(TrackedDivisor d)
{
    d.id = (int)divisors_.size();
    divisors_.push_back(d);
    return d.id;
}

void SurfaceResolution::set_inter(int i, int j, long long v)
{
    auto k = std::minmax(i, j);
    matrix_[{k.first, k.second}] = v;
}

void SurfaceResolution::bump_inter(int i, int j, long long dv)
{
    auto k = std::minmax(i, j);
    matrix_[{k.first, k.second}] += dv;
}

long long SurfaceResolution::inter(int i, int j) const
{
    auto k = std::minmax(i, j);
    auto it = matrix_.find({k.first, k.second});
    return it == matrix_.end() ? 0 : it->second;
}

long long SurfaceResolution::branch_crossings(int id) const
{
    long long r = 0;
    for (const auto& d : divisors_)
        if (d.id != id && d.in_branch)
            r += inter(id, d.id);
    return r;
}

SurfaceResolution::SurfaceResolution(const BiPoly& branch)
{
    if (branch.is_zero())
        throw std::domain_error("zero branch");
    if (!branch.bidegree())
        throw std::domain_error("the branch needs an attached bidegree");
    branch_ = branch.chart() == Chart::S1Z1 ? branch : chart_change(branch, Chart::S1Z1);
    setup_global_divisors();
}

void SurfaceResolution::setup_global_divisors()
{
    auto [a, b] = *branch_.bidegree();
    const BiPoly& f = branch_;

    // Content in the fibre direction: vertical line factors t = c.
    std::vector<UPoly> cols;
    for (const auto& [e, c] : f.terms()) {
        if ((int)cols.size() <= e.second)
            cols.resize(e.second + 1);
        auto cc = cols[e.second].coeffs();
        if ((int)cc.size() <= e.first)
            cc.resize(e.first + 1, Rational(0));
        cc[e.first] = c;
        cols[e.second] = upoly_of(cc);
    }
    UPoly vcontent;
    for (const auto& c : cols)
        vcontent = upoly_gcd(vcontent, c);
    if (squarefree_part(vcontent).degree() != vcontent.degree())
        throw std::domain_error("branch has a repeated vertical component");
    auto vroots = rational_roots(vcontent);
    UPoly wv = vroots.leftover;

    // Divide the content out, coefficient by coefficient.
    BiPoly f1(Chart::S1Z1);
    for (int j = 0; j < (int)cols.size(); ++j) {
        UPoly q = cols[j].divrem(vcontent).first;
        for (int i = 0; i <= q.degree(); ++i)
            if (q.coeffs()[i] != 0)
                f1 = f1 + BiPoly::monomial(Chart::S1Z1, i, j, q.coeffs()[i]);
    }

    // Horizontal line factors x = c from the base-direction content of f1.
    std::vector<UPoly> rows;
    for (const auto& [e, c] : f1.terms()) {
        if ((int)rows.size() <= e.first)
            rows.resize(e.first + 1);
        auto cc = rows[e.first].coeffs();
        if ((int)cc.size() <= e.second)
            cc.resize(e.second + 1, Rational(0));
        cc[e.second] = c;
        rows[e.first] = upoly_of(cc);
    }
    UPoly hcontent;
    for (const auto& c : rows)
        hcontent = upoly_gcd(hcontent, c);
    if (squarefree_part(hcontent).degree() != hcontent.degree())
        throw std::domain_error("branch has a repeated horizontal component");
    auto hroots = rational_roots(hcontent);
    UPoly wh = hroots.leftover;

    BiPoly q_affine(Chart::S1Z1);
    for (int i = 0; i < (int)rows.size(); ++i) {
        UPoly q = rows[i].divrem(hcontent).first;
        for (int j = 0; j <= q.degree(); ++j)
            if (q.coeffs()[j] != 0)
                q_affine = q_affine + BiPoly::monomial(Chart::S1Z1, i, j, q.coeffs()[j]);
    }

    int s_exp = a - f.degree_base();
    int z_exp = b - f.degree_fibre();
    if (s_exp >= 2 || z_exp >= 2)
        throw std::domain_error("branch has a repeated line at infinity");

    // Register the divisors with their classes; intersections follow below.
    struct Init { int id; long long p, q; };
    std::vector<Init> inits;
    auto reg = [&](TrackedDivisor d, long long p, long long qq) {
        int id = add_divisor(std::move(d));
        inits.push_back({id, p, qq});
        return id;
    };

    for (const auto& r : vroots.roots) {
        TrackedDivisor d;
        d.name = "line[" + rat_str(r) + ":1]";
        d.in_branch = true;
        d.rational_curve = true;
        d.vertical_base = BasePt{false, r};
        int id = reg(std::move(d), 1, 0);
        fibre_line_[BasePt{false, r}] = id;
    }
    if (s_exp == 1) {
        TrackedDivisor d;
        d.name = "line[1:0]";
        d.in_branch = true;
        d.rational_curve = true;
        d.vertical_base = BasePt{true, Rational(0)};
        int id = reg(std::move(d), 1, 0);
        fibre_line_[BasePt{true, Rational(0)}] = id;
    }
    if (wv.degree() >= 1) {
        TrackedDivisor d;
        d.name = "vertical-rest";
        d.in_branch = true;
        int id = reg(std::move(d), wv.degree(), 0);
        wv_divisor_ = id;
        wv_ = wv;
    }
    for (const auto& r : hroots.roots) {
        TrackedDivisor d;
        d.name = "hline[" + rat_str(r) + ":1]";
        d.in_branch = true;
        d.rational_curve = true;
        int id = reg(std::move(d), 0, 1);
        hline_value_[id] = {false, r};
    }
    if (z_exp == 1) {
        TrackedDivisor d;
        d.name = "hline[1:0]";
        d.in_branch = true;
        d.rational_curve = true;
        int id = reg(std::move(d), 0, 1);
        hline_value_[id] = {true, Rational(0)};
    }
    if (wh.degree() >= 1) {
        TrackedDivisor d;
        d.name = "horizontal-rest";
        d.in_branch = true;
        int id = reg(std::move(d), 0, wh.degree());
        wh_divisor_ = id;
        wh_ = wh;
    }
    if (!q_affine.is_constant()) {
        long long aq = a - (long long)vroots.roots.size() - s_exp - wv.degree() * (wv.degree() > 0);
        long long bq = b - (long long)hroots.roots.size() - z_exp - wh.degree() * (wh.degree() > 0);
        if (q_affine.degree_base() > aq || q_affine.degree_fibre() > bq)
            throw std::logic_error("inconsistent class bookkeeping for the branch rest");
        TrackedDivisor d;
        d.name = "Q";
        d.in_branch = true;
        q_divisor_ = reg(std::move(d), aq, bq);
        q_poly_ = q_affine;
        q_poly_.attach_bidegree({(int)aq, (int)bq});
    }

    // Intersection numbers from classes: (p,q).(p',q') = pq' + p'q.
    for (size_t i = 0; i < inits.size(); ++i)
        for (size_t j = i; j < inits.size(); ++j) {
            long long v = inits[i].p * inits[j].q + inits[j].p * inits[i].q;
            set_inter(inits[i].id, inits[j].id, v);
        }
}

int SurfaceResolution::line_divisor(const BasePt& b, bool create)
{
    auto it = fibre_line_.find(b);
    if (it != fibre_line_.end()) {
        fibre_mult_[b].emplace(it->second, 1);
        return it->second;
    }
    if (!create)
        return -1;
    TrackedDivisor d;
    d.name = "line" + b.str();
    d.in_branch = false;
    d.rational_curve = true;
    d.vertical_base = b;
    int id = add_divisor(std::move(d));
    // class (1,0) against everything already present
    for (const auto& other : divisors_) {
        if (other.id == id)
            continue;
        long long v = 0;
        if (other.id == q_divisor_)
            v = q_poly_.bidegree()->second;
        else if (other.id == wh_divisor_ || hline_value_.count(other.id))
            v = other.id == wh_divisor_ ? wh_.degree() : 1;
        else if (other.exceptional)
            v = 0; // a fresh fibre line away from all blown-up centres
        set_inter(id, other.id, v);
    }
    set_inter(id, id, 0);
    fibre_line_[b] = id;
    fibre_mult_[b].emplace(id, 1);
    return id;
}

void SurfaceResolution::add_designated_fibre(const BasePt& b)
{
    line_divisor(b, true);
}

std::optional<BiPoly> SurfaceResolution::divisor_eq_in_chart(int id, Chart c) const
{
    const TrackedDivisor& d = divisors_[id];
    bool base_is_t = c == Chart::S1Z1 || c == Chart::S1X1;
    bool fibre_is_x = c == Chart::S1Z1 || c == Chart::T1Z1;
    if (d.vertical_base) {
        const BasePt& b = *d.vertical_base;
        if (b.inf) {
            if (base_is_t)
                return std::nullopt;
            return BiPoly::variable(c, false); // s
        }
        if (base_is_t)
            return BiPoly::variable(c, false) - BiPoly(c, b.v); // t - c
        if (b.v == 0)
            return std::nullopt; // the line t = 0 misses the t = 1 charts
        return BiPoly::variable(c, false) - BiPoly(c, Rational(1) / b.v); // s - 1/c
    }
    if (auto it = hline_value_.find(id); it != hline_value_.end()) {
        const auto& [is_inf, v] = it->second;
        if (is_inf) {
            if (fibre_is_x)
                return std::nullopt;
            return BiPoly::variable(c, true); // z
        }
        if (fibre_is_x)
            return BiPoly::variable(c, true) - BiPoly(c, v);
        if (v == 0)
            return std::nullopt;
        return BiPoly::variable(c, true) - BiPoly(c, Rational(1) / v);
    }
    if (id == wv_divisor_) {
        BiPoly p = upoly_to_bipoly(base_is_t ? wv_ : reversed(wv_), c, false);
        return p;
    }
    if (id == wh_divisor_)
        return upoly_to_bipoly(fibre_is_x ? wh_ : reversed(wh_), c, true);
    if (id == q_divisor_)
        return chart_change(q_poly_, c);
    if (d.exceptional)
        return std::nullopt; // exceptionals never appear in the original charts
    throw std::logic_error("divisor without a chart equation");
}

int SurfaceResolution::cluster_of_point(const ProjPoint& p) const
{
    for (const auto& [q, cid] : resolved_points_)
        if (q == p)
            return cid;
    return -1;
}

void SurfaceResolution::resolve_cluster(const ProjPoint& p)
{
    if (cluster_of_point(p) >= 0)
        throw std::domain_error("point already resolved: " + p.str());
    int cid = cluster_count_++;
    resolved_points_.push_back({p, cid});
    BasePt bp{p.ts_inf, p.ts};
    cluster_base_.push_back(bp);
    line_divisor(bp, true);

    Chart chart = Chart::S1Z1;
    Rational u0, x0;
    bool found = false;
    for (Chart c : {Chart::S1Z1, Chart::S1X1, Chart::T1Z1, Chart::T1X1})
        if (point_in_chart(p, c, u0, x0)) { chart = c; found = true; break; }
    if (!found)
        throw std::logic_error("point not finite in any chart");

    ChartNode node;
    node.branch = chart_change(branch_, chart);
    node.desc = std::string("chart ") + chart_name(chart);
    for (const auto& d : divisors_) {
        auto eq = divisor_eq_in_chart(d.id, chart);
        if (eq && !eq->is_constant())
            node.diveq[d.id] = *eq;
    }
    int root = (int)charts_.size();
    charts_.push_back(std::move(node));

    std::deque<Task> work;
    work.push_back({root, u0, x0, p.str(), -1});
    int taken = 0;
    while (!work.empty()) {
        if (++taken > step_cap)
            throw std::domain_error("blow-up cap exceeded; resolution does not terminate?");
        Task t = work.front();
        work.pop_front();
        blow_up(cid, t, work);
    }
}

void SurfaceResolution::blow_up(int cluster, const Task& t, std::deque<Task>& work)
{
    ChartNode& ch = charts_[t.chart];
    if (ch.retired)
        throw std::logic_error("blow-up in a retired chart");
    if (t.u != 0 || t.x != 0) {
        ch.branch = ch.branch.shifted(t.u, t.x);
        for (auto& [id, eq] : ch.diveq)
            eq = eq.shifted(t.u, t.x);
        for (auto& other : work)
            if (other.chart == t.chart) { other.u -= t.u; other.x -= t.x; }
    }
    int m = ch.branch.total_degree_min();
    if (m < 2)
        throw std::logic_error("blow-up centre is not a singular point of the branch");

    std::map<int, int> mu;
    for (const auto& [id, eq] : ch.diveq) {
        int o = eq.total_degree_min();
        if (o > 0)
            mu[id] = o;
    }

    TrackedDivisor ed;
    ed.name = "E" + std::to_string(++exc_counter_);
    ed.in_branch = m % 2 == 1;
    ed.exceptional = true;
    ed.rational_curve = true;
    ed.cluster = cluster;
    int eid = add_divisor(std::move(ed));

    BlowupStepRec rec;
    rec.index = (int)steps_.size() + 1;
    rec.cluster = cluster;
    rec.center = t.desc;
    rec.on_exceptional = t.on_exceptional;
    rec.multiplicity = m;
    rec.parity_odd = m % 2 == 1;
    rec.exceptionals = {eid};
    steps_.push_back(rec);

    for (const auto& [i, mi] : mu)
        for (const auto& [j, mj] : mu)
            if (j >= i)
                bump_inter(i, j, -(long long)mi * mj);
    for (const auto& [i, mi] : mu)
        set_inter(eid, i, mi);
    set_inter(eid, eid, -1);

    auto& fm = fibre_mult_[cluster_base_[cluster]];
    if (!fm.empty()) {
        long long emult = 0;
        for (const auto& [d, fmult] : fm) {
            auto it = mu.find(d);
            if (it != mu.end())
                emult += (long long)it->second * fmult;
        }
        if (emult < 1)
            throw std::logic_error("blow-up centre not on the fibre of its base point");
        fm[eid] = emult;
    }

    int strip = 2 * (m / 2);
    ChartNode F, B;
    F.branch = ch.branch.blowup_fibre_chart().divided_by_var(true, strip);
    B.branch = ch.branch.blowup_base_chart().divided_by_var(false, strip);
    for (const auto& [id, eq] : ch.diveq) {
        int o = mu.count(id) ? mu.at(id) : 0;
        BiPoly ef = eq.blowup_fibre_chart().divided_by_var(true, o);
        if (!ef.is_constant())
            F.diveq[id] = ef;
        BiPoly eb = eq.blowup_base_chart().divided_by_var(false, o);
        if (!eb.is_constant())
            B.diveq[id] = eb;
    }
    F.diveq[eid] = BiPoly::variable(Chart::Local, true);
    B.diveq[eid] = BiPoly::variable(Chart::Local, false);
    F.desc = divisors_[eid].name + "-chart(slopes)";
    B.desc = divisors_[eid].name + "-chart(inf)";
    int fIdx = (int)charts_.size();
    charts_.push_back(std::move(F));
    int bIdx = (int)charts_.size();
    charts_.push_back(std::move(B));
    ch.retired = true;

    for (auto& other : work) {
        if (other.chart != t.chart)
            continue;
        if (other.x != 0) {
            other.chart = fIdx;
            other.u = other.u / other.x;
        } else if (other.u != 0) {
            other.chart = bIdx;
            other.x = 0;
        } else {
            throw std::logic_error("pending point coincides with the blow-up centre");
        }
    }

    scan_new_chart(cluster, fIdx, true, eid, work);
    scan_new_chart(cluster, bIdx, false, eid, work);
}

void SurfaceResolution::scan_new_chart(int cluster, int chart_idx, bool fibre_side, int exc_id,
                                       std::deque<Task>& work)
{
    const ChartNode& ch = charts_[chart_idx];
    const BiPoly& f = ch.branch;
    const std::string ename = divisors_[exc_id].name;
    if (!fibre_side) {
        // Only the slope-infinity point is new in this chart.
        if (f.is_zero())
            throw std::logic_error("zero branch after blow-up");
        int m = f.total_degree_min();
        if (m >= 2)
            work.push_back({chart_idx, Rational(0), Rational(0),
                            "on " + ename + " at slope infinity", exc_id});
        return;
    }
    // Singular points of the branch on E = {x = 0}: common zeros of f, f_u, f_x.
    UPoly A(f.coeffs_in_base_at_fibre_zero());
    UPoly Bx(f.derivative_fibre().coeffs_in_base_at_fibre_zero());
    UPoly Cu(f.derivative_base().coeffs_in_base_at_fibre_zero());
    UPoly d;
    for (const UPoly* p : {&A, &Bx, &Cu})
        if (!p->is_zero())
            d = d.is_zero() ? p->monic() : upoly_gcd(d, *p);
    if (d.is_zero())
        throw std::domain_error("branch vanishes doubly along the exceptional divisor; "
                                "input not reduced");
    if (d.degree() <= 0)
        return;
    auto rr = rational_roots(d);
    if (rr.leftover.degree() >= 1)
        process_node_orbit(cluster, chart_idx, exc_id, rr.leftover,
                           "on " + ename + ", slopes ");
    for (const auto& u0 : rr.roots) {
        if (multiplicity_at_point(f, u0, Rational(0)) < 2)
            throw std::logic_error("scan produced a smooth point");
        work.push_back({chart_idx, u0, Rational(0),
                        "on " + ename + " at slope " + rat_str(u0), exc_id});
    }
}

void SurfaceResolution::process_node_orbit(int cluster, int chart_idx, int exc_id,
                                           const UPoly& packet0, const std::string& where)
{
    const ChartNode& ch = charts_[chart_idx];
    const BiPoly& f = ch.branch;
    // All packet points must be ordinary nodes: nondegenerate 2-jet.
    UPoly fuu(f.derivative_base().derivative_base().coeffs_in_base_at_fibre_zero());
    UPoly fux(f.derivative_base().derivative_fibre().coeffs_in_base_at_fibre_zero());
    UPoly fxx(f.derivative_fibre().derivative_fibre().coeffs_in_base_at_fibre_zero());
    UPoly disc = fux * fux - fuu * fxx;
    UPoly common = upoly_gcd(packet0, disc);
    if (common.degree() >= 1)
        throw std::domain_error(
            "non-rational singular points beyond transverse nodes on " +
            divisors_[exc_id].name + " (slope polynomial " + packet0.str('v') +
            "); resolve via a local template");

    // Split into packets on which every tracked divisor behaves uniformly.
    std::vector<UPoly> packets{packet0.monic()};
    auto refine = [&](const UPoly& test) {
        std::vector<UPoly> next;
        for (const auto& p : packets) {
            if (test.is_zero()) { next.push_back(p); continue; }
            UPoly g = upoly_gcd(p, test);
            if (g.degree() <= 0 || g.degree() == p.degree())
                next.push_back(p);
            else {
                next.push_back(g.monic());
                next.push_back(p.divrem(g).first.monic());
            }
        }
        packets = std::move(next);
    };
    for (const auto& [id, eq] : ch.diveq) {
        if (id == exc_id)
            continue;
        refine(UPoly(eq.coeffs_in_base_at_fibre_zero()));
    }
    std::sort(packets.begin(), packets.end(),
              [](const UPoly& a, const UPoly& b) { return a.str() < b.str(); });

    for (const auto& q : packets) {
        int k = q.degree();
        std::map<int, int> mu;
        mu[exc_id] = 1;
        for (const auto& [id, eq] : ch.diveq) {
            if (id == exc_id)
                continue;
            UPoly rest(eq.coeffs_in_base_at_fibre_zero());
            if (rest.is_zero())
                throw std::logic_error("a second divisor contains the exceptional line");
            if (!divides(q, rest))
                continue;
            // through all packet points; must be smooth there
            UPoly du(eq.derivative_base().coeffs_in_base_at_fibre_zero());
            UPoly dx(eq.derivative_fibre().coeffs_in_base_at_fibre_zero());
            bool du0 = du.is_zero() || divides(q, du);
            bool dx0 = dx.is_zero() || divides(q, dx);
            if (du0 && dx0)
                throw std::domain_error("divisor " + divisors_[id].name +
                                        " singular along a conjugate node orbit; unsupported");
            mu[id] = 1;
        }

        std::vector<int> created;
        for (int i = 0; i < k; ++i) {
            TrackedDivisor ed;
            ed.name = "E" + std::to_string(++exc_counter_);
            ed.in_branch = false; // nodes have m = 2
            ed.exceptional = true;
            ed.rational_curve = true;
            ed.cluster = cluster;
            created.push_back(add_divisor(std::move(ed)));
        }
        for (const auto& [i, mi] : mu)
            for (const auto& [j, mj] : mu)
                if (j >= i)
                    bump_inter(i, j, -(long long)k * mi * mj);
        auto& fm = fibre_mult_[cluster_base_[cluster]];
        long long emult = 0;
        for (const auto& [d, fmult] : fm) {
            auto it = mu.find(d);
            if (it != mu.end())
                emult += (long long)it->second * fmult;
        }
        if (!fm.empty() && emult < 1)
            throw std::logic_error("orbit nodes not on the cluster fibre");
        for (int nid : created) {
            for (const auto& [i, mi] : mu)
                set_inter(nid, i, mi);
            set_inter(nid, nid, -1);
            for (int other : created)
                if (other != nid)
                    set_inter(nid, other, 0);
            if (!fm.empty())
                fm[nid] = emult;
        }

        BlowupStepRec rec;
        rec.index = (int)steps_.size() + 1;
        rec.cluster = cluster;
        rec.center = where + q.str('v');
        rec.on_exceptional = exc_id;
        rec.multiplicity = 2;
        rec.orbit_size = k;
        rec.orbit_minpoly = q.str('v');
        rec.parity_odd = false;
        rec.exceptionals = created;
        steps_.push_back(rec);
    }
}

std::vector<int> SurfaceResolution::multiplicity_sequence(int cluster) const
{
    std::vector<int> out;
    for (const auto& s : steps_)
        if (s.cluster == cluster)
            for (int i = 0; i < s.orbit_size; ++i)
                out.push_back(s.multiplicity);
    return out;
}

DownstairsFibre SurfaceResolution::downstairs_fibre(const BasePt& b) const
{
    DownstairsFibre out;
    out.base = b;
    auto lit = fibre_line_.find(b);
    if (lit == fibre_line_.end())
        throw std::domain_error("fibre " + b.str() + " was not designated");
    std::map<int, long long> mults;
    auto fit = fibre_mult_.find(b);
    if (fit != fibre_mult_.end())
        mults = fit->second;
    mults.emplace(lit->second, 1);
    for (const auto& [id, m] : mults) {
        FibreComponent fc;
        fc.divisor_id = id;
        fc.name = divisors_[id].name;
        fc.mult = m;
        fc.in_branch = divisors_[id].in_branch;
        fc.self = inter(id, id);
        fc.branch_crossings = branch_crossings(id);
        out.components.push_back(fc);
        out.config.add_component_with_id(id, (int)m, 0, fc.self);
    }
    for (size_t i = 0; i < out.components.size(); ++i)
        for (size_t j = i + 1; j < out.components.size(); ++j) {
            long long v = inter(out.components[i].divisor_id, out.components[j].divisor_id);
            if (v != 0)
                out.config.set_intersection(out.components[i].divisor_id,
                                            out.components[j].divisor_id, v);
        }
    return out;
}

std::vector<std::pair<std::string, int>> SurfaceResolution::delta_steps() const
{
    std::vector<std::pair<std::string, int>> out;
    for (const auto& s : steps_)
        for (int i = 0; i < s.orbit_size; ++i)
            out.push_back({s.center, s.multiplicity});
    return out;
}

SurfaceResolution::MinusOneLedger SurfaceResolution::minus_one_ledger() const
{
    MinusOneLedger l;
    for (const auto& d : divisors_) {
        if (!d.rational_curve)
            continue;
        long long self = inter(d.id, d.id);
        if (d.in_branch && self == -2)
            l.in_branch_minus_two.push_back(d.id);
        if (d.exceptional && !d.in_branch && self == -1 && branch_crossings(d.id) == 0)
            l.first_type.push_back(d.id);
    }
    return l;
}

TemplateResolution resolve_template(const LocalTemplate& t, int step_cap)
{
    if (t.copies < 1)
        throw std::domain_error("template replication count must be >= 1");
    if (t.poly.is_zero())
        throw std::domain_error("zero template polynomial");
    SurfaceResolution sr;
    sr.step_cap = step_cap;
    sr.branch_ = t.poly;

    BiPoly rest = t.poly;
    int line_id = -1, qloc_id = -1;
    int e = rest.var_order(false);
    if (e >= 2)
        throw std::domain_error("template branch is not reduced along u = 0");
    if (e == 1) {
        TrackedDivisor d;
        d.name = "L";
        d.in_branch = true;
        d.rational_curve = true;
        d.vertical_base = BasePt{false, Rational(0)};
        line_id = sr.add_divisor(std::move(d));
        sr.fibre_line_[BasePt{false, Rational(0)}] = line_id;
        sr.fibre_mult_[BasePt{false, Rational(0)}][line_id] = 1;
        sr.set_inter(line_id, line_id, 0);
        rest = rest.divided_by_var(false, 1);
    }
    if (!rest.is_constant()) {
        TrackedDivisor d;
        d.name = "Qloc";
        d.in_branch = true;
        qloc_id = sr.add_divisor(std::move(d));
        sr.set_inter(qloc_id, qloc_id, 0);
        if (line_id >= 0)
            sr.set_inter(line_id, qloc_id, 0);
    }

    SurfaceResolution::ChartNode node;
    node.branch = t.poly;
    node.desc = "template chart";
    if (line_id >= 0)
        node.diveq[line_id] = BiPoly::variable(Chart::Local, false);
    if (qloc_id >= 0)
        node.diveq[qloc_id] = rest;
    sr.charts_.push_back(std::move(node));
    sr.cluster_base_.push_back(BasePt{false, Rational(0)});
    sr.cluster_count_ = 1;
    if (line_id < 0)
        sr.fibre_mult_[BasePt{false, Rational(0)}]; // empty map keeps bookkeeping alive

    std::deque<SurfaceResolution::Task> work;
    work.push_back({0, Rational(0), Rational(0), "template centre", -1});
    int taken = 0;
    while (!work.empty()) {
        if (++taken > step_cap)
            throw std::domain_error("blow-up cap exceeded in template resolution");
        auto task = work.front();
        work.pop_front();
        sr.blow_up(0, task, work);
    }

    TemplateResolution out;
    out.steps = sr.steps_;
    out.divisors = sr.divisors_;
    out.matrix = sr.matrix_;
    out.fibre_mult = sr.fibre_mult_[BasePt{false, Rational(0)}];
    out.line_id = line_id;
    out.qloc_id = qloc_id;
    if (line_id >= 0)
        out.line_self_drop = -sr.inter(line_id, line_id);
    out.multiplicity_sequence = sr.multiplicity_sequence(0);
    return out;
}

} // namespace fibsurf
