#pragma once

#include <string>
#include <vector>

#include "mutinf/count_table.hpp"
#include "mutinf/distfit.hpp"
#include "mutinf/moments.hpp"

namespace mutinf {

// F thresholds the descriptive index; FF includes an attribute when the
// posterior mass above epsilon exceeds p_bar; BF discards one when the mass
// below epsilon exceeds p_bar.
enum class FilterKind { F, FF, BF };

std::string filter_name(FilterKind kind);
FilterKind filter_from_name(const std::string& name);

struct FilterConfig {
    FilterKind kind = FilterKind::FF;
    double epsilon = 0.003;  // nats; must stay strictly positive
    double p_bar = 0.95;
    DistFamily family = DistFamily::beta;
    double prior = 1.0;  // uniform pseudo-count folded into the joint cells
};

struct FilterDecision {
    int attribute = -1;
    FilterKind kind = FilterKind::FF;
    bool include = false;
    // Empirical mutual information for F; posterior mass above epsilon for
    // FF; mass below epsilon for BF.
    double statistic = 0.0;
    double mean = 0.0;      // moments behind the fitted posterior (FF/BF)
    double variance = 0.0;
    bool gamma_fallback = false;  // beta moments infeasible, gamma used
    bool missing_path = false;    // margin counts present, MLE route used
};

// Decides one attribute-vs-class table. The configured prior is applied
// here; complete tables use the exact mean with the order-2 variance,
// tables with margin counts use the leading-order MLE mean and variance.
FilterDecision decide(const CountTable& table, const FilterConfig& config,
                      int attribute = -1);

// Batch application; returns the included attribute ids in input order.
std::vector<int> select(const std::vector<CountTable>& tables, const FilterConfig& config);

// The F threshold that mimics a Gaussian FF at p_bar ~ 0.977:
// epsilon + 2 sqrt(Var[I]). Diagnostic only, not a decision path.
double ff_equivalent_threshold(const MomentSummary& moments, double epsilon);

}  // namespace mutinf
