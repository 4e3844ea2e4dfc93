#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mutinf/dataio.hpp"
#include "mutinf/distfit.hpp"
#include "mutinf/errors.hpp"
#include "mutinf/filters.hpp"
#include "mutinf/mc.hpp"
#include "mutinf/missing.hpp"
#include "mutinf/moments.hpp"
#include "mutinf/naive_bayes.hpp"
#include "mutinf/specfun.hpp"

namespace {

using json = nlohmann::json;
using namespace mutinf;

constexpr int kSchemaVersion = 1;
constexpr const char* kVersion = "0.1.0";

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitNumeric = 3;

json jnum(double v) {
    if (!std::isfinite(v)) return nullptr;
    return v;
}

std::vector<double> parse_number_list(const std::string& text, const std::string& what) {
    std::vector<double> out;
    std::stringstream in(text);
    std::string tok;
    while (std::getline(in, tok, ',')) {
        try {
            std::size_t used = 0;
            const double v = std::stod(tok, &used);
            if (used != tok.size()) throw std::invalid_argument(tok);
            out.push_back(v);
        } catch (const std::exception&) {
            throw InputError("cannot parse " + what + " entry '" + tok + "'");
        }
    }
    if (out.empty()) throw InputError(what + " is empty");
    return out;
}

Matrix parse_counts(const std::string& text) {
    std::vector<std::vector<double>> rows;
    std::stringstream in(text);
    std::string row;
    while (std::getline(in, row, ';')) rows.push_back(parse_number_list(row, "counts row"));
    if (rows.empty()) throw InputError("counts are empty");
    const std::size_t s = rows.front().size();
    Matrix counts(rows.size(), s);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != s) throw InputError("counts rows have unequal lengths");
        for (std::size_t j = 0; j < s; ++j) counts(i, j) = rows[i][j];
    }
    return counts;
}

// Shared flags for commands that consume one contingency table.
struct TableArgs {
    std::string counts;
    std::string row_missing;
    std::string col_missing;
    std::string csv_path;
    std::size_t attribute = 0;
    int class_column = -1;
    std::string delimiter = ",";
    std::string missing_token = "?";
    std::string schema_path;

    void attach(CLI::App* cmd, bool with_margins = true) {
        cmd->add_option("--counts", counts, "Inline joint counts, rows ;-separated (a,b;c,d)");
        if (with_margins) {
            cmd->add_option("--row-missing", row_missing,
                            "Margin-only counts n_i? (column value unobserved)");
            cmd->add_option("--col-missing", col_missing,
                            "Margin-only counts n_?j (row value unobserved)");
        }
        cmd->add_option("--csv", csv_path, "Dataset CSV; builds the attribute-vs-class table");
        cmd->add_option("--attr", attribute, "Attribute index when reading --csv")
            ->capture_default_str();
        cmd->add_option("--class-col", class_column, "Class column index (-1 = last)")
            ->capture_default_str();
        cmd->add_option("--delimiter", delimiter, "CSV field delimiter")->capture_default_str();
        cmd->add_option("--missing-token", missing_token, "CSV missing-value token")
            ->capture_default_str();
        cmd->add_option("--schema", schema_path,
                        "Sidecar schema with fixed value orders (name: v1,v2,...)");
    }

    CountTable load() const {
        if (counts.empty() == csv_path.empty())
            throw InputError("provide exactly one of --counts or --csv");
        if (!counts.empty()) {
            Matrix m = parse_counts(counts);
            std::vector<double> rm, cm;
            if (!row_missing.empty()) rm = parse_number_list(row_missing, "--row-missing");
            if (!col_missing.empty()) cm = parse_number_list(col_missing, "--col-missing");
            if (!rm.empty() && rm.size() != m.rows())
                throw InputError("--row-missing length must equal the number of rows");
            if (!cm.empty() && cm.size() != m.cols())
                throw InputError("--col-missing length must equal the number of columns");
            return CountTable(std::move(m), std::move(rm), std::move(cm));
        }
        CsvOptions opt;
        opt.class_column = class_column;
        opt.missing_token = missing_token;
        opt.schema_path = schema_path;
        if (delimiter.size() != 1) throw InputError("--delimiter must be a single character");
        opt.delimiter = delimiter[0];
        const Dataset ds = read_csv(csv_path, opt);
        return attribute_class_table(ds, attribute);
    }
};

CsvOptions csv_options_of(const TableArgs& args) {
    CsvOptions opt;
    opt.class_column = args.class_column;
    opt.missing_token = args.missing_token;
    opt.schema_path = args.schema_path;
    if (args.delimiter.size() != 1) throw InputError("--delimiter must be a single character");
    opt.delimiter = args.delimiter[0];
    return opt;
}

json table_info(const CountTable& table) {
    const Marginals m = table.marginals();
    return {{"rows", table.rows()},
            {"cols", table.cols()},
            {"n", m.total},
            {"n_complete", table.complete_total()},
            {"has_missing", table.has_missing()}};
}

void emit(const json& payload) { std::cout << payload.dump(2) << "\n"; }

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write '" + path + "'");
    return out;
}

// Two-tailed paired t test at level 0.05 from prefix sums of the
// differences; the degenerate zero-variance case follows paired_t_test.
bool prefix_significant(std::size_t k, double sum, double sum_sq) {
    const double kk = static_cast<double>(k);
    const double mean = sum / kk;
    const double var = (sum_sq - kk * mean * mean) / (kk - 1.0);
    if (!(var > 0.0)) return mean != 0.0;
    const double t = mean / std::sqrt(var / kk);
    const double dof = kk - 1.0;
    return reg_inc_beta(dof / 2.0, 0.5, dof / (dof + t * t)) < 0.05;
}

// ---- moments ----------------------------------------------------------

struct MomentsCmd {
    TableArgs table;
    double prior = 0.0;

    int run() const {
        const CountTable raw = table.load();
        const MomentSummary s = summarize(raw, {prior});
        json out = {{"schema_version", kSchemaVersion},
                    {"command", "moments"},
                    {"table", table_info(raw)},
                    {"prior", prior},
                    {"i_max", s.i_max},
                    {"empirical_mi", s.empirical_mi},
                    {"mean_exact", s.mean_exact},
                    {"mean_order2", s.mean_order2},
                    {"var_order1", s.var_order1},
                    {"var_order2", s.var_order2},
                    {"central3", jnum(s.central3)},
                    {"central4", jnum(s.central4)},
                    {"skewness", jnum(s.skewness)},
                    {"kurtosis", jnum(s.kurtosis)},
                    {"complete_data", s.complete_data},
                    {"variance_clamped", s.variance_clamped},
                    {"skew_kurt_defined", s.skew_kurt_defined}};
        if (s.complete_data) {
            const CountTable prepared = with_prior(raw, {prior});
            const CoreStats st = core_stats(prepared);
            out["core_stats"] = {{"lr_mean", st.lr_mean},       {"lr_sq", st.lr_sq},
                                 {"lr_cube", st.lr_cube},       {"curvature", st.curvature},
                                 {"marginal_sq", st.marginal_sq}, {"indep_defect", st.indep_defect}};
        }
        emit(out);
        return kExitOk;
    }
};

// ---- fit --------------------------------------------------------------

struct FitCmd {
    TableArgs table;
    double prior = 0.0;
    std::string family = "beta";
    std::size_t grid = 201;
    std::string out_path;
    bool compare_mc = false;
    std::uint64_t samples = 1000000;
    std::optional<std::uint64_t> seed;
    int workers = 1;
    std::size_t bins = 200;

    int run() const {
        if (compare_mc && !seed)
            throw InputError("--compare-mc draws samples and requires --seed");
        const CountTable raw = table.load();
        const MomentSummary s = summarize(raw, {prior});
        const FittedDist dist =
            fit(s.mean_exact, s.var_order2, s.i_max, family_from_name(family));
        json out = {{"schema_version", kSchemaVersion},
                    {"command", "fit"},
                    {"table", table_info(raw)},
                    {"family", family_name(dist.family)},
                    {"p1", dist.p1},
                    {"p2", dist.p2},
                    {"mean", dist.mean},
                    {"variance", dist.variance},
                    {"i_max", dist.i_max}};

        if (!compare_mc) {
            if (!out_path.empty()) {
                auto file = open_out(out_path);
                file << "x,pdf,cdf\n";
                for (const CurvePoint& p : curve(dist, grid))
                    file << p.x << "," << p.pdf << "," << p.cdf << "\n";
                out["curve_csv"] = out_path;
            }
            emit(out);
            return kExitOk;
        }

        McOptions mco;
        mco.samples = samples;
        mco.seed = *seed;
        mco.workers = workers;
        mco.bins = bins;
        mco.keep_samples = true;
        const CountTable prepared = with_prior(raw, {prior});
        const McResult mc = mi_posterior_mc(prepared, mco);

        // Kolmogorov-style sup distance between the fitted cdf and the
        // empirical cdf, evaluated at the sample points.
        double sup = 0.0;
        const double count = static_cast<double>(mc.sorted_samples.size());
        for (std::size_t k = 0; k < mc.sorted_samples.size(); ++k) {
            const double fx = cdf(dist, mc.sorted_samples[k]);
            sup = std::max(sup, std::fabs(fx - static_cast<double>(k) / count));
            sup = std::max(sup, std::fabs(fx - static_cast<double>(k + 1) / count));
        }
        out["mc"] = {{"samples", mc.sample_count},
                     {"seed", mc.seed},
                     {"mean", mc.mean},
                     {"variance", mc.variance},
                     {"se_mean", jnum(mc.se_mean)},
                     {"sup_distance", sup}};
        if (!out_path.empty()) {
            auto file = open_out(out_path);
            file << "x,pdf_fit,cdf_fit,mc_density,mc_cdf\n";
            const double width = mc.i_max / static_cast<double>(mc.hist_density.size());
            double cum = 0.0;
            for (std::size_t b = 0; b < mc.hist_density.size(); ++b) {
                const double mid = (static_cast<double>(b) + 0.5) * width;
                cum += mc.hist_density[b] * width;
                file << mid << "," << pdf(dist, mid) << "," << cdf(dist, mid) << ","
                     << mc.hist_density[b] << "," << cum << "\n";
            }
            out["curve_csv"] = out_path;
        }
        emit(out);
        return kExitOk;
    }
};

// ---- mc ---------------------------------------------------------------

struct McCmd {
    TableArgs table;
    double prior = 0.0;
    std::uint64_t samples = 1000000;
    std::uint64_t seed = 0;
    int workers = 1;
    std::size_t bins = 200;
    std::string out_path;

    int run() const {
        const CountTable prepared = with_prior(table.load(), {prior});
        McOptions mco;
        mco.samples = samples;
        mco.seed = seed;
        mco.workers = workers;
        mco.bins = bins;
        const McResult mc = mi_posterior_mc(prepared, mco);
        json out = {{"schema_version", kSchemaVersion},
                    {"command", "mc"},
                    {"table", table_info(prepared)},
                    {"samples", mc.sample_count},
                    {"seed", mc.seed},
                    {"workers", workers},
                    {"mean", mc.mean},
                    {"variance", mc.variance},
                    {"skewness", jnum(mc.skewness)},
                    {"kurtosis", jnum(mc.kurtosis)},
                    {"se_mean", jnum(mc.se_mean)},
                    {"se_variance", jnum(mc.se_variance)},
                    {"min", mc.min_value},
                    {"max", mc.max_value},
                    {"i_max", mc.i_max},
                    {"degenerate", mc.degenerate}};
        if (!out_path.empty()) {
            auto file = open_out(out_path);
            file << "x,density,cumulative\n";
            const double width = mc.i_max / static_cast<double>(mc.hist_density.size());
            double cum = 0.0;
            for (std::size_t b = 0; b < mc.hist_density.size(); ++b) {
                cum += mc.hist_density[b] * width;
                file << (static_cast<double>(b) + 0.5) * width << "," << mc.hist_density[b] << ","
                     << cum << "\n";
            }
            out["histogram_csv"] = out_path;
        }
        emit(out);
        return kExitOk;
    }
};

// ---- em ---------------------------------------------------------------

struct EmCmd {
    TableArgs table;
    double prior = 0.0;
    double tol = 1e-10;
    int max_iter = 10000;
    bool dump_trace = false;

    int run() const {
        const CountTable prepared = with_prior(table.load(), {prior});
        const bool one_side = !(prepared.has_row_missing() && prepared.has_col_missing());
        const MleEstimate mle =
            one_side ? mle_one_side(prepared) : em_mle(prepared, tol, max_iter);
        double var;
        if (one_side) {
            var = variance_one_side(prepared, mle);
        } else {
            const CovarianceModel cov = covariance_general(prepared, mle);
            var = variance_general(prepared, mle, cov);
        }

        json pi = json::array();
        for (std::size_t i = 0; i < mle.pi_hat.rows(); ++i) {
            json row = json::array();
            for (std::size_t j = 0; j < mle.pi_hat.cols(); ++j) row.push_back(mle.pi_hat(i, j));
            pi.push_back(row);
        }
        json out = {{"schema_version", kSchemaVersion},
                    {"command", "em"},
                    {"table", table_info(prepared)},
                    {"method", one_side ? "closed_form" : "em"},
                    {"pi_hat", pi},
                    {"iterations", mle.iterations},
                    {"final_residual", mle.final_residual},
                    {"loglik", mle.loglik_trace.empty() ? json(nullptr)
                                                        : jnum(mle.loglik_trace.back())},
                    {"mean_leading", mean_leading(mle)},
                    {"variance_leading", var}};
        if (dump_trace) out["loglik_trace"] = mle.loglik_trace;
        emit(out);
        return kExitOk;
    }
};

// ---- filter -----------------------------------------------------------

struct FilterCmd {
    TableArgs table;  // csv flags reused; --counts also accepted for one table
    std::string kind = "FF";
    double epsilon = 0.003;
    double p_bar = 0.95;
    std::string family = "beta";
    double prior = 1.0;
    std::string out_path;

    int run() const {
        FilterConfig config;
        config.kind = filter_from_name(kind);
        config.epsilon = epsilon;
        config.p_bar = p_bar;
        config.family = family_from_name(family);
        config.prior = prior;

        std::vector<FilterDecision> decisions;
        std::vector<std::string> names;
        if (!table.csv_path.empty()) {
            const Dataset ds = read_csv(table.csv_path, csv_options_of(table));
            for (std::size_t a = 0; a < ds.n_attributes(); ++a) {
                names.push_back(ds.attribute_names[a]);
                decisions.push_back(
                    decide(attribute_class_table(ds, a), config, static_cast<int>(a)));
            }
        } else {
            decisions.push_back(decide(table.load(), config, 0));
            names.push_back("a0");
        }

        json rows = json::array();
        std::vector<int> selected;
        for (std::size_t a = 0; a < decisions.size(); ++a) {
            const FilterDecision& d = decisions[a];
            if (d.include) selected.push_back(d.attribute);
            rows.push_back({{"attribute", d.attribute},
                            {"name", names[a]},
                            {"kind", filter_name(d.kind)},
                            {"statistic", d.statistic},
                            {"verdict", d.include ? "include" : "discard"},
                            {"mean", jnum(d.mean)},
                            {"variance", jnum(d.variance)},
                            {"gamma_fallback", d.gamma_fallback},
                            {"missing_path", d.missing_path}});
        }
        json out = {{"schema_version", kSchemaVersion},
                    {"command", "filter"},
                    {"filter", filter_name(config.kind)},
                    {"epsilon", epsilon},
                    {"p_bar", p_bar},
                    {"family", family},
                    {"prior", prior},
                    {"decisions", rows},
                    {"selected", selected}};
        if (!out_path.empty()) {
            auto file = open_out(out_path);
            file << "id,kind,statistic,verdict\n";
            for (const FilterDecision& d : decisions)
                file << d.attribute << "," << filter_name(d.kind) << "," << d.statistic << ","
                     << (d.include ? "include" : "discard") << "\n";
            out["decision_csv"] = out_path;
        }
        emit(out);
        return kExitOk;
    }
};

// ---- seqlearn ---------------------------------------------------------

struct SeqCmd {
    TableArgs table;
    std::string filters = "F,FF,BF";
    double epsilon = 0.003;
    double p_bar = 0.95;
    std::string family = "beta";
    double prior = 1.0;
    std::uint64_t seed = 0;
    std::string out_path;
    std::string usage_path;

    int run() const {
        if (table.csv_path.empty()) throw InputError("seqlearn requires --csv");
        Dataset ds = read_csv(table.csv_path, csv_options_of(table));

        // The protocol evaluates a stream; shuffle deterministically so runs
        // are reproducible under the seed.
        {
            std::uint64_t state = seed;
            std::vector<std::size_t> order(ds.n_instances());
            for (std::size_t t = 0; t < order.size(); ++t) order[t] = t;
            for (std::size_t t = order.size(); t > 1; --t)
                std::swap(order[t - 1], order[splitmix64(state) % t]);
            Dataset shuffled = ds;
            for (std::size_t t = 0; t < order.size(); ++t) {
                shuffled.instances[t] = ds.instances[order[t]];
                shuffled.class_labels[t] = ds.class_labels[order[t]];
            }
            ds = std::move(shuffled);
        }

        std::vector<std::string> kinds;
        {
            std::stringstream in(filters);
            std::string tok;
            while (std::getline(in, tok, ',')) kinds.push_back(tok);
        }
        if (kinds.empty()) throw InputError("--filters must name at least one filter");

        json summary = json::object();
        std::vector<SequentialRunResult> runs;
        for (const std::string& k : kinds) {
            FilterConfig config;
            config.kind = filter_from_name(k);
            config.epsilon = epsilon;
            config.p_bar = p_bar;
            config.family = family_from_name(family);
            config.prior = prior;
            runs.push_back(run_sequential(ds, config));
            const SequentialRunResult& r = runs.back();
            summary[k] = {{"final_accuracy", r.final_accuracy},
                          {"average_attributes", r.average_attributes}};
        }

        // FF-vs-F prefix significance when both ran.
        const auto index_of = [&](const std::string& name) -> int {
            for (std::size_t k = 0; k < kinds.size(); ++k)
                if (filter_from_name(kinds[k]) == filter_from_name(name)) return static_cast<int>(k);
            return -1;
        };
        const int fi = index_of("F");
        const int ffi = index_of("FF");

        if (!out_path.empty()) {
            auto file = open_out(out_path);
            file << "k";
            for (const std::string& k : kinds) file << ",acc_" << k;
            if (fi >= 0 && ffi >= 0) file << ",significant";
            file << "\n";
            // running sums keep the per-prefix t test O(1) per row
            double s1 = 0.0, s2 = 0.0;
            for (std::size_t t = 0; t < ds.n_instances(); ++t) {
                file << (t + 1);
                for (const SequentialRunResult& r : runs)
                    file << "," << r.cumulative_accuracy[t];
                if (fi >= 0 && ffi >= 0) {
                    const double d =
                        static_cast<double>(runs[static_cast<std::size_t>(ffi)].correct[t]) -
                        static_cast<double>(runs[static_cast<std::size_t>(fi)].correct[t]);
                    s1 += d;
                    s2 += d * d;
                    file << "," << (t >= 1 && prefix_significant(t + 1, s1, s2) ? 1 : 0);
                }
                file << "\n";
            }
        }
        if (!usage_path.empty()) {
            auto file = open_out(usage_path);
            file << "k";
            for (const std::string& k : kinds) file << ",attrs_" << k;
            file << "\n";
            for (std::size_t t = 0; t < ds.n_instances(); ++t) {
                file << (t + 1);
                for (const SequentialRunResult& r : runs) file << "," << r.attributes_used[t];
                file << "\n";
            }
        }

        json out = {{"schema_version", kSchemaVersion},
                    {"command", "seqlearn"},
                    {"instances", ds.n_instances()},
                    {"attributes", ds.n_attributes()},
                    {"seed", seed},
                    {"epsilon", epsilon},
                    {"p_bar", p_bar},
                    {"family", family},
                    {"prior", prior},
                    {"filters", summary}};
        if (fi >= 0 && ffi >= 0) {
            std::vector<double> a, b;
            for (std::size_t t = 0; t < ds.n_instances(); ++t) {
                a.push_back(runs[static_cast<std::size_t>(ffi)].correct[t]);
                b.push_back(runs[static_cast<std::size_t>(fi)].correct[t]);
            }
            if (a.size() >= 2) {
                const TTestResult tt = paired_t_test(a, b);
                out["ff_vs_f"] = {{"t", jnum(tt.t)},
                                  {"p_value", tt.p_value},
                                  {"significant", tt.significant},
                                  {"degenerate", tt.degenerate}};
            }
        }
        if (!out_path.empty()) out["accuracy_csv"] = out_path;
        if (!usage_path.empty()) out["usage_csv"] = usage_path;
        emit(out);
        return kExitOk;
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Posterior distribution of mutual information for categorical data"};
    app.require_subcommand(1);

    MomentsCmd moments_cmd;
    auto* moments_app = app.add_subcommand(
        "moments", "Exact mean and moment expansions of the posterior of I");
    moments_cmd.table.attach(moments_app);
    moments_app->add_option("--prior", moments_cmd.prior, "Pseudo-count per joint cell")
        ->capture_default_str();

    FitCmd fit_cmd;
    auto* fit_app =
        app.add_subcommand("fit", "Moment-matched gaussian/gamma/beta approximation");
    fit_cmd.table.attach(fit_app);
    fit_app->add_option("--prior", fit_cmd.prior, "Pseudo-count per joint cell")
        ->capture_default_str();
    fit_app->add_option("--family", fit_cmd.family, "gaussian, gamma or beta")
        ->capture_default_str();
    fit_app->add_option("--grid", fit_cmd.grid, "Curve grid points")->capture_default_str();
    fit_app->add_option("--out", fit_cmd.out_path, "Write the curve CSV here");
    fit_app->add_flag("--compare-mc", fit_cmd.compare_mc,
                      "Overlay a Monte Carlo reference (requires --seed)");
    fit_app->add_option("--samples", fit_cmd.samples, "Monte Carlo sample count")
        ->capture_default_str();
    std::uint64_t fit_seed = 0;
    auto* fit_seed_opt = fit_app->add_option("--seed", fit_seed, "Monte Carlo seed");
    fit_app->add_option("--workers", fit_cmd.workers, "Worker threads")->capture_default_str();
    fit_app->add_option("--bins", fit_cmd.bins, "Histogram bins")->capture_default_str();

    McCmd mc_cmd;
    auto* mc_app = app.add_subcommand("mc", "Monte Carlo reference over the posterior of I");
    mc_cmd.table.attach(mc_app);
    mc_app->add_option("--prior", mc_cmd.prior, "Pseudo-count per joint cell")
        ->capture_default_str();
    mc_app->add_option("--samples", mc_cmd.samples, "Sample count")->capture_default_str();
    mc_app->add_option("--seed", mc_cmd.seed, "Master seed")->required();
    mc_app->add_option("--workers", mc_cmd.workers, "Worker threads")->capture_default_str();
    mc_app->add_option("--bins", mc_cmd.bins, "Histogram bins")->capture_default_str();
    mc_app->add_option("--out", mc_cmd.out_path, "Write histogram/cdf CSV here");

    EmCmd em_cmd;
    auto* em_app = app.add_subcommand("em", "Maximum-likelihood chances under missing data");
    em_cmd.table.attach(em_app);
    em_app->add_option("--prior", em_cmd.prior, "Pseudo-count per joint cell")
        ->capture_default_str();
    em_app->add_option("--tol", em_cmd.tol, "Fixed-point residual tolerance")
        ->capture_default_str();
    em_app->add_option("--max-iter", em_cmd.max_iter, "Iteration cap")->capture_default_str();
    em_app->add_flag("--trace", em_cmd.dump_trace, "Include the log-likelihood trace");

    FilterCmd filter_cmd;
    auto* filter_app = app.add_subcommand("filter", "Apply a feature filter to each attribute");
    filter_cmd.table.attach(filter_app, false);
    filter_app->add_option("--filter", filter_cmd.kind, "F, FF or BF")->capture_default_str();
    filter_app->add_option("--epsilon", filter_cmd.epsilon, "Relevance threshold in nats")
        ->capture_default_str();
    filter_app->add_option("--pbar", filter_cmd.p_bar, "Posterior probability level")
        ->capture_default_str();
    filter_app->add_option("--family", filter_cmd.family, "Approximating family")
        ->capture_default_str();
    filter_app->add_option("--prior", filter_cmd.prior, "Pseudo-count per joint cell")
        ->capture_default_str();
    filter_app->add_option("--out", filter_cmd.out_path, "Write the decision log CSV here");

    SeqCmd seq_cmd;
    auto* seq_app = app.add_subcommand(
        "seqlearn", "Incremental naive Bayes with per-instance filtering");
    seq_cmd.table.attach(seq_app, false);
    seq_app->add_option("--filters", seq_cmd.filters, "Comma list of filters to run")
        ->capture_default_str();
    seq_app->add_option("--epsilon", seq_cmd.epsilon, "Relevance threshold in nats")
        ->capture_default_str();
    seq_app->add_option("--pbar", seq_cmd.p_bar, "Posterior probability level")
        ->capture_default_str();
    seq_app->add_option("--family", seq_cmd.family, "Approximating family")
        ->capture_default_str();
    seq_app->add_option("--prior", seq_cmd.prior, "Pseudo-count per joint cell")
        ->capture_default_str();
    seq_app->add_option("--seed", seq_cmd.seed, "Instance-order shuffle seed")->required();
    seq_app->add_option("--out", seq_cmd.out_path, "Write the accuracy-curve CSV here");
    seq_app->add_option("--usage-out", seq_cmd.usage_path, "Write the attribute-usage CSV here");

    auto* version_app = app.add_subcommand("version", "Print version information");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInput;
    }

    try {
        if (moments_app->parsed()) return moments_cmd.run();
        if (fit_app->parsed()) {
            if (fit_seed_opt->count() > 0) fit_cmd.seed = fit_seed;
            return fit_cmd.run();
        }
        if (mc_app->parsed()) return mc_cmd.run();
        if (em_app->parsed()) return em_cmd.run();
        if (filter_app->parsed()) return filter_cmd.run();
        if (seq_app->parsed()) return seq_cmd.run();
        if (version_app->parsed()) {
            emit({{"schema_version", kSchemaVersion},
                  {"name", "mutinf"},
                  {"version", kVersion}});
            return kExitOk;
        }
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumeric;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumeric;
    }
    return kExitOk;
}
