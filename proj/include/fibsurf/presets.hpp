// Branch-curve presets wired to the CLI pipelines.
#pragma once

#include "fibsurf/bipoly.hpp"
#include "fibsurf/resolution.hpp"

#include <optional>
#include <string>
#include <vector>

namespace fibsurf {

struct PresetSpec {
    std::string name;
    BiPoly branch; // bidegree attached, chart S1Z1
    std::vector<BasePt> designated;
    std::optional<LocalTemplate> fibre_template; // even:n cusp template (copies = n)
    // Bidegree in [t:s] the paper asserts after a degree-n base change, as a
    // multiple of n; -1 when the paper makes no claim.
    int paper_base_degree_per_n = -1;
    bool evenness_failure_is_paper_conflict = false;
    int even_n = 0;
    int h = 0;
    Rational alpha = 1;
};

// id: type1 | type2 | type3 | type4 | even:<n>
PresetSpec make_preset(const std::string& id, const Rational& alpha = Rational(1), int h = 2,
                       bool corrected_type3 = false);

} // namespace fibsurf
