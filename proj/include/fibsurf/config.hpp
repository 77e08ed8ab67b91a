// Fibre configurations as weighted dual graphs and their numerical algebra.
#pragma once

#include "fibsurf/rational.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace fibsurf {

struct Component {
    int id = 0;
    int mult = 1;                       // m_i >= 1
    int pa = 0;                         // arithmetic genus
    std::optional<long long> self_int;  // C_i^2, "underived" when absent
};

class CurveConfiguration {
  public:
    CurveConfiguration() = default;

    int add_component(int mult, int pa, std::optional<long long> self = std::nullopt);
    void add_component_with_id(int id, int mult, int pa,
                               std::optional<long long> self = std::nullopt);
    void set_intersection(int i, int j, long long v);

    const std::vector<Component>& components() const { return comps_; }
    const Component& component(int id) const;
    Component& component(int id);
    long long intersection(int i, int j) const; // 0 when absent; i != j
    const std::map<std::pair<int, int>, long long>& intersections() const { return inter_; }

    bool empty() const { return comps_.empty(); }
    void validate() const; // unique ids, positive mults, nonnegative intersections

    std::string dot(const std::string& graph_name = "fibre") const;

  private:
    std::vector<Component> comps_;
    std::map<std::pair<int, int>, long long> inter_; // key (min,max), i != j
};

struct WintersWitness {
    int id;
    long long weighted_sum; // sum_{j != i} m_j (C_i . C_j)
    bool divisible;
};

struct WintersResult {
    bool pass;
    std::vector<WintersWitness> witnesses;
};

WintersResult winters_check(const CurveConfiguration& cfg);

// Fills every self-intersection from F.C_i = 0; requires winters_check to pass.
CurveConfiguration derive_self_intersections(const CurveConfiguration& cfg);

// Genus from adjunction, 2g - 2 = sum m_i (2 p_a(C_i) - 2 - C_i^2).
// Requires all self-intersections present and F.C_i = 0; throws on parity violation.
long long fibre_genus(const CurveConfiguration& cfg);

struct FibrePredicates {
    long long gcd = 0;
    long long min = 0;
    bool connected = false;
    bool is_multiple = false;
    bool is_c_fibre = false;
    bool is_valid_fibration_fibre = false;
};

FibrePredicates fibre_predicates(const CurveConfiguration& cfg);

struct MultipleFibreConstraints {
    bool all_admissible = false;                      // g = 1: every n divides 0
    std::vector<std::pair<long long, long long>> admissible; // (n, p_a(E) = 1 + (g-1)/n)
};

MultipleFibreConstraints multiple_fibre_constraints(long long g);

struct ContractionResult {
    CurveConfiguration cfg;
    int contractions = 0;
};

// Iteratively blows down components with p_a = 0 and self-intersection -1
// (lowest id first). The fixpoint preserves F.C_i = 0 and the fibre genus.
ContractionResult contract_minus_one(const CurveConfiguration& cfg);

// JSON text format of External Interfaces:
// {"components":[{"id","mult","pa","self_int"?}...], "intersections":[[i,j,v]...]}
CurveConfiguration config_from_json(const std::string& text);
std::string config_to_json(const CurveConfiguration& cfg);

} // namespace fibsurf
