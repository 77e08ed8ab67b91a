// End-to-end preset pipelines: evenness, singular locus, resolution, fibre
// tracking, invariants, base change, orbifold classification, ampleness.
#pragma once

#include "fibsurf/rational.hpp"

#include <json.hpp>

#include <string>

namespace fibsurf {

struct PipelineOptions {
    std::string preset; // type1 | type2 | type3 | type4 | even:<n>
    Rational alpha = 1;
    int h = 2;
    int base_change = 1;
    bool template_mode = false;
    bool corrected_type3 = false;
};

// Exit codes: 0 success, 2 precondition failure,
// 3 computation succeeded but a documented mismatch with a paper claim exists.
struct PipelineResult {
    int exit_code = 0;
    nlohmann::ordered_json report;
};

PipelineResult run_pipeline(const PipelineOptions& opt);

} // namespace fibsurf
