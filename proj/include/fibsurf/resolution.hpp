// Canonical resolution of double-cover branches by iterated point blow-ups,
// with exact divisor bookkeeping (intersection matrix, fibre multiplicities,
// branch parity per Eq. R_j = tau* R_{j-1} - 2 [m/2] E_j).
#pragma once

#include "fibsurf/bipoly.hpp"
#include "fibsurf/config.hpp"
#include "fibsurf/singular.hpp"
#include "fibsurf/upoly.hpp"

#include <deque>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace fibsurf {

// A base point [t:s] of the first ruling.
struct BasePt {
    bool inf = false;
    Rational v; // t/s when finite

    friend bool operator==(const BasePt& a, const BasePt& b)
    {
        return a.inf == b.inf && (a.inf || a.v == b.v);
    }
    friend bool operator<(const BasePt& a, const BasePt& b)
    {
        if (a.inf != b.inf) return b.inf;
        return !a.inf && a.v < b.v;
    }
    std::string str() const { return inf ? "[1:0]" : "[" + rat_str(v) + ":1]"; }
};

struct TrackedDivisor {
    int id = -1;
    std::string name;
    bool in_branch = false;
    bool exceptional = false;
    bool rational_curve = false; // p_a = 0 known (lines and exceptionals)
    int cluster = -1;            // for exceptionals
    std::optional<BasePt> vertical_base; // set for vertical lines
};

struct BlowupStepRec {
    int index = 0;   // 1-based over the whole surface
    int cluster = -1;
    std::string center;
    int on_exceptional = -1; // divisor id, -1 for points of the original surface
    int multiplicity = 0;
    int orbit_size = 1;
    std::string orbit_minpoly; // slope polynomial for conjugate node orbits
    bool parity_odd = false;
    std::vector<int> exceptionals; // created divisor ids (orbit_size of them)
};

struct FibreComponent {
    int divisor_id;
    std::string name;
    long long mult;
    bool in_branch;
    long long self;
    long long branch_crossings; // r: intersections with the branch (out-of-branch comps)
};

struct DownstairsFibre {
    BasePt base;
    std::vector<FibreComponent> components;
    CurveConfiguration config; // ids = divisor ids
};

class SurfaceResolution {
  public:
    // branch: reduced curve with attached bidegree (any global chart).
    explicit SurfaceResolution(const BiPoly& branch);

    void add_designated_fibre(const BasePt& b);

    // Resolves the whole infinitely-near cluster over one singular point.
    // Throws when a non-rational, non-node configuration is met (template
    // territory) or the step cap is exceeded.
    void resolve_cluster(const ProjPoint& p);

    const std::vector<BlowupStepRec>& steps() const { return steps_; }
    std::vector<int> multiplicity_sequence(int cluster) const;
    int cluster_count() const { return cluster_count_; }
    int cluster_of_point(const ProjPoint& p) const; // -1 if not resolved

    const std::vector<TrackedDivisor>& divisors() const { return divisors_; }
    long long inter(int i, int j) const; // current intersection numbers (i == j: self)

    // Crossings of a divisor with the branch locus (sum over in-branch divisors).
    long long branch_crossings(int id) const;

    DownstairsFibre downstairs_fibre(const BasePt& b) const;

    // Invariant-ledger inputs.
    std::vector<std::pair<std::string, int>> delta_steps() const; // orbit-expanded
    struct MinusOneLedger {
        std::vector<int> in_branch_minus_two; // divisor ids; 1 contraction each
        std::vector<int> first_type;          // exceptional, off-branch, self -1, r = 0
        int contractions() const
        {
            return (int)in_branch_minus_two.size() + 2 * (int)first_type.size();
        }
        bool minimal() const { return first_type.empty(); }
    };
    MinusOneLedger minus_one_ledger() const;

    const BiPoly& branch() const { return branch_; }
    Bidegree branch_bidegree() const { return *branch_.bidegree(); }

    int step_cap = 64;

  private:
    struct ChartNode {
        BiPoly branch;                 // current reduced branch in this chart
        std::map<int, BiPoly> diveq;   // visible tracked divisors
        bool retired = false;
        std::string desc;
    };
    struct Task {
        int chart;
        Rational u, x;
        std::string desc;
        int on_exceptional;
    };

    SurfaceResolution() = default; // template mode
    friend TemplateResolution resolve_template(const struct LocalTemplate&, int);

    int add_divisor(TrackedDivisor d);
    void set_inter(int i, int j, long long v);
    void bump_inter(int i, int j, long long dv);
    int line_divisor(const BasePt& b, bool create);
    void setup_global_divisors();
    std::optional<BiPoly> divisor_eq_in_chart(int id, Chart c) const;
    void blow_up(int cluster, const Task& t, std::deque<Task>& work);
    void scan_new_chart(int cluster, int chart_idx, bool fibre_side, int exc_id,
                        std::deque<Task>& work);
    void process_node_orbit(int cluster, int chart_idx, int exc_id, const UPoly& packet,
                            const std::string& where);

    BiPoly branch_; // chart S1Z1 representation, bidegree attached
    std::vector<TrackedDivisor> divisors_;
    std::map<std::pair<int, int>, long long> matrix_;
    std::vector<ChartNode> charts_;
    std::vector<BlowupStepRec> steps_;
    std::map<BasePt, std::map<int, long long>> fibre_mult_; // base -> divisor -> multiplicity
    std::map<BasePt, int> fibre_line_;
    std::vector<BasePt> cluster_base_;
    std::vector<std::pair<ProjPoint, int>> resolved_points_;
    std::map<int, std::pair<bool, Rational>> hline_value_; // horizontal lines: ([1:0]?, value)
    UPoly wv_, wh_; // irrational vertical / horizontal line packets
    int wv_divisor_ = -1;
    int wh_divisor_ = -1;
    int cluster_count_ = 0;
    int exc_counter_ = 0;
    int q_divisor_ = -1; // the non-line branch part
    BiPoly q_poly_;
};

// One local representative of identical singular points, replicated k times.
struct LocalTemplate {
    BiPoly poly; // Chart::Local, centre at the origin
    int copies = 1;
};

// Resolution of a template cluster; matrix deltas are relative to the local
// fibre line (the u-factor of the template, when present) and branch rest.
struct TemplateResolution {
    std::vector<BlowupStepRec> steps;
    std::vector<TrackedDivisor> divisors;             // exceptionals + "L" + "Qloc"
    std::map<std::pair<int, int>, long long> matrix;  // deltas for L/Qloc rows
    std::map<int, long long> fibre_mult;              // per-copy tail multiplicities
    int line_id = -1;                                 // -1 when the template has no u-factor
    int qloc_id = -1;
    long long line_self_drop = 0;                     // per copy
    std::vector<int> multiplicity_sequence;           // orbit-expanded, single copy
};

TemplateResolution resolve_template(const LocalTemplate& t, int step_cap = 64);

} // namespace fibsurf
