#pragma once

#include "dt4/invariants.hpp"

#include <optional>
#include <string>
#include <vector>

namespace dt4 {

// One entry of the acceptance suite. `detail` is empty on success and
// otherwise names the failing sub-check and its first divergence.
struct CriterionResult {
    int index = 0;
    std::string id;
    bool pass = false;
    std::string detail;
    double seconds = 0;
};

// Overrides for a single run; unset fields keep the criterion defaults.
struct VerifyOptions {
    std::optional<int> order;
    std::optional<long> rank;
};

// Ordered ids: four_path, cao_kool, segre_verlinde, nekrasov,
// classical_limit, vanishing, fuss_catalan, u_transform, surface,
// determinism.
const std::vector<std::string>& criterion_ids();

// Throws std::invalid_argument for an unknown id. Failures inside a check
// (including exceptions) are reported through the result.
CriterionResult run_criterion(const std::string& id, const VerifyOptions& opts = {});

}  // namespace dt4
