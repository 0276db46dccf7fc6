#pragma once

#include <cstdint>
#include <string>
#include <vector>

// Acceptance suite shared by the acceptance binary and `caustic validate`.
namespace acceptance {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0;
};

struct SuiteOptions {
    std::uint64_t seed = 20240917;
};

CriterionResult surgery_identity();
CriterionResult end_to_end_wignerization();
CriterionResult exact_wigner_quadrature();
CriterionResult k_moments();
CriterionResult stationary_point_tables(std::uint64_t seed);
CriterionResult cfu_engine();
CriterionResult kl_uniformization();
CriterionResult wkb_convergence_order();
CriterionResult liouville_residual_order();
CriterionResult rays();
CriterionResult special_functions();

std::vector<CriterionResult> run_all(const SuiteOptions& opts = {});

}  // namespace acceptance
