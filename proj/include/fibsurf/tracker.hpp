// Lifting tracked fibres through the double cover and assembling fibre reports.
#pragma once

#include "fibsurf/config.hpp"
#include "fibsurf/resolution.hpp"

#include <optional>
#include <string>
#include <vector>

namespace fibsurf {

// The multiplicity rule of the double cover: components inside the ramification
// locus double their multiplicity, the rest keep it; disjoint rational
// components split into two copies. Upstairs intersections are pinned by
// F.C_i = 0 together with pi*C . pi*D = 2 (C.D).
CurveConfiguration lift_to_double_cover(const DownstairsFibre& fibre);

struct FibreReport {
    BasePt base;
    CurveConfiguration downstairs;
    CurveConfiguration upstairs;
    CurveConfiguration contracted;
    int contractions = 0;
    long long genus = 0;
    FibrePredicates predicates;
    bool winters_pass = false;
    std::optional<long long> generic_genus; // cross-oracle when supplied
    bool genus_matches_generic = true;
};

FibreReport assemble_fibre_report(const DownstairsFibre& fibre,
                                  std::optional<long long> generic_genus);

// Template-mode assembly: the designated fibre carries `copies` identical
// tails attached to the strict transform of its line.
DownstairsFibre assemble_template_fibre(const BasePt& base, const TemplateResolution& tr,
                                        int copies, long long line_self_start,
                                        bool line_in_branch);

} // namespace fibsurf
