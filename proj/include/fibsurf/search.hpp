// Exhaustive searches over small fibre configurations.
#pragma once

#include "fibsurf/config.hpp"

#include <string>
#include <vector>

namespace fibsurf {

struct TwoComponentEntry {
    int m1, m2;      // coprime multiplicities, 2 <= m1 < m2
    int k;           // transversal intersection points, m1 m2 | k
    long long genus; // (m1 + m2)(k - 2)/2 + 1
};

// All two-component C-fibres with rational components within the bounds,
// sorted by genus then (m1, m2, k).
std::vector<TwoComponentEntry> two_component_search(int max_m, int max_k);

struct SearchSpace {
    int max_components = 2;
    int max_mult = 3;
    int max_intersection = 1;
    int max_pa = 0;
    long long max_genus = -1;        // -1: unbounded
    bool require_c_fibre = true;
    bool require_connected = true;
    bool require_winters = true;
    bool forbid_minus_one = true;    // no rational (-1)-components
    long long enumeration_cap = 20000000; // raw candidates before filtering

    void validate() const;
};

struct FoundConfiguration {
    CurveConfiguration cfg; // self-intersections derived
    long long genus;
};

// All admissible configurations up to graph isomorphism, deterministic order
// (component count, then genus, then the canonical matrix).
std::vector<FoundConfiguration> enumerate_configurations(const SearchSpace& space);

std::string search_csv(const std::vector<FoundConfiguration>& rows);

} // namespace fibsurf
