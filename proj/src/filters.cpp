#include "mutinf/filters.hpp"

#include <cmath>

#include "mutinf/errors.hpp"
#include "mutinf/missing.hpp"

namespace mutinf {

std::string filter_name(FilterKind kind) {
    switch (kind) {
        case FilterKind::F: return "F";
        case FilterKind::FF: return "FF";
        case FilterKind::BF: return "BF";
    }
    return "?";
}

FilterKind filter_from_name(const std::string& name) {
    if (name == "F" || name == "f") return FilterKind::F;
    if (name == "FF" || name == "ff") return FilterKind::FF;
    if (name == "BF" || name == "bf") return FilterKind::BF;
    throw InputError("unknown filter '" + name + "' (expected F, FF or BF)");
}

FilterDecision decide(const CountTable& raw, const FilterConfig& config, int attribute) {
    if (!(config.epsilon > 0.0))
        throw InputError("filter epsilon must be strictly positive");
    if (!(config.p_bar > 0.0 && config.p_bar < 1.0))
        throw InputError("filter p_bar must lie in (0, 1)");

    const CountTable table = with_prior(raw, {config.prior});
    table.validate();

    FilterDecision decision;
    decision.attribute = attribute;
    decision.kind = config.kind;
    decision.missing_path = table.has_missing();

    double mean, var;
    if (!decision.missing_path) {
        if (config.kind == FilterKind::F) {
            decision.statistic = empirical_mi(table);
            decision.include = decision.statistic > config.epsilon;
            return decision;
        }
        const CoreStats stats = core_stats(table);
        mean = mean_exact(table);
        var = variance(stats, table, 2);
    } else {
        const bool one_side = !(table.has_row_missing() && table.has_col_missing());
        const MleEstimate mle = one_side ? mle_one_side(table) : em_mle(table);
        if (config.kind == FilterKind::F) {
            decision.statistic = mean_leading(mle);
            decision.include = decision.statistic > config.epsilon;
            return decision;
        }
        mean = mean_leading(mle);
        if (one_side) {
            var = variance_one_side(table, mle);
        } else {
            const CovarianceModel cov = covariance_general(table, mle);
            var = variance_general(table, mle, cov);
        }
    }

    decision.mean = mean;
    decision.variance = var;
    if (!(var > 0.0)) {
        // Degenerate posterior: all mass at the mean.
        const double below = mean < config.epsilon ? 1.0 : 0.0;
        decision.statistic = config.kind == FilterKind::FF ? 1.0 - below : below;
        decision.include = config.kind == FilterKind::FF ? decision.statistic > config.p_bar
                                                         : !(decision.statistic > config.p_bar);
        return decision;
    }

    const double i_max = mi_upper_bound(table.rows(), table.cols());
    FittedDist dist;
    if (config.family == DistFamily::beta) {
        try {
            dist = fit(mean, var, i_max, DistFamily::beta);
        } catch (const DomainError&) {
            dist = fit(mean, var, i_max, DistFamily::gamma);
            decision.gamma_fallback = true;
        }
    } else {
        dist = fit(mean, var, i_max, config.family);
    }

    if (config.kind == FilterKind::FF) {
        decision.statistic = tail_above(dist, config.epsilon);
        decision.include = decision.statistic > config.p_bar;
    } else {  // BF discards when the mass below epsilon exceeds p_bar
        decision.statistic = cdf(dist, config.epsilon);
        decision.include = !(decision.statistic > config.p_bar);
    }
    return decision;
}

std::vector<int> select(const std::vector<CountTable>& tables, const FilterConfig& config) {
    std::size_t classes = 0;
    std::vector<int> included;
    for (std::size_t a = 0; a < tables.size(); ++a) {
        if (classes == 0) classes = tables[a].cols();
        if (tables[a].cols() != classes)
            throw InputError("select: inconsistent class cardinality across tables");
        if (decide(tables[a], config, static_cast<int>(a)).include)
            included.push_back(static_cast<int>(a));
    }
    return included;
}

double ff_equivalent_threshold(const MomentSummary& moments, double epsilon) {
    return epsilon + 2.0 * std::sqrt(std::max(moments.var_order2, 0.0));
}

}  // namespace mutinf
