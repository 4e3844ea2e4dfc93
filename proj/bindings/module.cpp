#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mutinf/dataio.hpp"
#include "mutinf/distfit.hpp"
#include "mutinf/errors.hpp"
#include "mutinf/filters.hpp"
#include "mutinf/mc.hpp"
#include "mutinf/missing.hpp"
#include "mutinf/moments.hpp"
#include "mutinf/naive_bayes.hpp"
#include "mutinf/specfun.hpp"

namespace py = pybind11;
using namespace mutinf;

namespace {

Matrix matrix_from_rows(const std::vector<std::vector<double>>& rows) {
    if (rows.empty()) throw InputError("matrix needs at least one row");
    Matrix m(rows.size(), rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != m.cols()) throw InputError("matrix rows have unequal lengths");
        for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = rows[i][j];
    }
    return m;
}

std::vector<std::vector<double>> matrix_to_rows(const Matrix& m) {
    std::vector<std::vector<double>> rows(m.rows(), std::vector<double>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) rows[i][j] = m(i, j);
    return rows;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Posterior distribution of mutual information for categorical data";
    m.attr("__version__") = "0.1.0";

    py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
    py::register_exception<DomainError>(m, "DomainError", PyExc_ArithmeticError);
    py::register_exception<ConvergenceError>(m, "ConvergenceError", PyExc_RuntimeError);

    py::class_<CountTable>(m, "CountTable")
        .def(py::init([](const std::vector<std::vector<double>>& counts,
                         const std::vector<double>& row_missing,
                         const std::vector<double>& col_missing) {
                 return CountTable(matrix_from_rows(counts), row_missing, col_missing);
             }),
             py::arg("counts"), py::arg("row_missing") = std::vector<double>{},
             py::arg("col_missing") = std::vector<double>{})
        .def_property_readonly("rows", &CountTable::rows)
        .def_property_readonly("cols", &CountTable::cols)
        .def_property_readonly("counts",
                               [](const CountTable& t) { return matrix_to_rows(t.counts()); })
        .def_property_readonly("row_missing", &CountTable::row_missing)
        .def_property_readonly("col_missing", &CountTable::col_missing)
        .def_property_readonly("has_missing", &CountTable::has_missing)
        .def("marginals",
             [](const CountTable& t) {
                 const Marginals mg = t.marginals();
                 return py::make_tuple(mg.row_sums, mg.col_sums, mg.total);
             })
        .def("transposed", &CountTable::transposed)
        .def("validate", &CountTable::validate);

    m.def(
        "with_prior",
        [](const CountTable& t, double prior) { return with_prior(t, {prior}); },
        py::arg("table"), py::arg("prior"));
    m.def("mi_upper_bound", &mi_upper_bound, py::arg("rows"), py::arg("cols"));

    m.def("psi", &psi, py::arg("z"));
    m.def("psi_integer", &psi_integer, py::arg("n"));
    m.def("ln_gamma", &ln_gamma, py::arg("z"));

    py::class_<CoreStats>(m, "CoreStats")
        .def_readonly("lr_mean", &CoreStats::lr_mean)
        .def_readonly("lr_sq", &CoreStats::lr_sq)
        .def_readonly("lr_cube", &CoreStats::lr_cube)
        .def_readonly("curvature", &CoreStats::curvature)
        .def_readonly("marginal_sq", &CoreStats::marginal_sq)
        .def_readonly("indep_defect", &CoreStats::indep_defect)
        .def_property_readonly("cell_mi",
                               [](const CoreStats& s) { return matrix_to_rows(s.cell_mi); })
        .def_readonly("row_mi", &CoreStats::row_mi)
        .def_readonly("col_mi", &CoreStats::col_mi);

    py::class_<MomentSummary>(m, "MomentSummary")
        .def_readonly("mean_exact", &MomentSummary::mean_exact)
        .def_readonly("mean_order2", &MomentSummary::mean_order2)
        .def_readonly("var_order1", &MomentSummary::var_order1)
        .def_readonly("var_order2", &MomentSummary::var_order2)
        .def_readonly("central3", &MomentSummary::central3)
        .def_readonly("central4", &MomentSummary::central4)
        .def_readonly("skewness", &MomentSummary::skewness)
        .def_readonly("kurtosis", &MomentSummary::kurtosis)
        .def_readonly("i_max", &MomentSummary::i_max)
        .def_readonly("empirical_mi", &MomentSummary::empirical_mi)
        .def_readonly("complete_data", &MomentSummary::complete_data)
        .def_readonly("variance_clamped", &MomentSummary::variance_clamped)
        .def_readonly("skew_kurt_defined", &MomentSummary::skew_kurt_defined);

    m.def("empirical_mi", &empirical_mi, py::arg("table"));
    m.def("core_stats", &core_stats, py::arg("table"));
    m.def("mean_exact", &mean_exact, py::arg("table"));
    m.def("mean_order2", &mean_order2, py::arg("stats"), py::arg("table"));
    m.def(
        "variance",
        [](const CoreStats& s, const CountTable& t, int order) { return variance(s, t, order); },
        py::arg("stats"), py::arg("table"), py::arg("order") = 2);
    m.def("central_moments_34", [](const CoreStats& s, const CountTable& t) {
        const CentralMoments cm = central_moments_34(s, t);
        return py::make_tuple(cm.central3, cm.central4, cm.skewness, cm.kurtosis);
    });
    m.def(
        "summarize",
        [](const CountTable& t, double prior) { return summarize(t, {prior}); },
        py::arg("table"), py::arg("prior") = 0.0);

    py::class_<MleEstimate>(m, "MleEstimate")
        .def_property_readonly("pi_hat",
                               [](const MleEstimate& e) { return matrix_to_rows(e.pi_hat); })
        .def_readonly("iterations", &MleEstimate::iterations)
        .def_readonly("final_residual", &MleEstimate::final_residual)
        .def_readonly("loglik_trace", &MleEstimate::loglik_trace);

    py::class_<CovarianceModel>(m, "CovarianceModel")
        .def("entry", &CovarianceModel::entry)
        .def("row_sum", &CovarianceModel::row_sum)
        .def_property_readonly(
            "log_ratios", [](const CovarianceModel& c) { return matrix_to_rows(c.log_ratios()); })
        .def_property_readonly("transposed", &CovarianceModel::transposed);

    m.def(
        "em_mle",
        [](const CountTable& t, double tol, int max_iter) { return em_mle(t, tol, max_iter); },
        py::arg("table"), py::arg("tol") = 1e-10, py::arg("max_iter") = 10000);
    m.def("mle_one_side", &mle_one_side, py::arg("table"));
    m.def("variance_one_side", &variance_one_side, py::arg("table"), py::arg("mle"));
    m.def("covariance_general", &covariance_general, py::arg("table"), py::arg("mle"));
    m.def("variance_general", &variance_general, py::arg("table"), py::arg("mle"),
          py::arg("cov"));
    m.def("mean_leading", &mean_leading, py::arg("mle"));

    py::enum_<DistFamily>(m, "DistFamily")
        .value("gaussian", DistFamily::gaussian)
        .value("gamma", DistFamily::gamma)
        .value("beta", DistFamily::beta);

    py::class_<FittedDist>(m, "FittedDist")
        .def_readonly("family", &FittedDist::family)
        .def_readonly("p1", &FittedDist::p1)
        .def_readonly("p2", &FittedDist::p2)
        .def_readonly("i_max", &FittedDist::i_max)
        .def_readonly("mean", &FittedDist::mean)
        .def_readonly("variance", &FittedDist::variance)
        .def("pdf", [](const FittedDist& d, double x) { return pdf(d, x); })
        .def("cdf", [](const FittedDist& d, double x) { return cdf(d, x); })
        .def("tail_above", [](const FittedDist& d, double x) { return tail_above(d, x); })
        .def("quantile", [](const FittedDist& d, double p) { return quantile(d, p); });

    m.def("fit", &fit, py::arg("mean"), py::arg("variance"), py::arg("i_max"),
          py::arg("family") = DistFamily::beta);

    py::class_<McResult>(m, "McResult")
        .def_readonly("sample_count", &McResult::sample_count)
        .def_readonly("seed", &McResult::seed)
        .def_readonly("mean", &McResult::mean)
        .def_readonly("variance", &McResult::variance)
        .def_readonly("skewness", &McResult::skewness)
        .def_readonly("kurtosis", &McResult::kurtosis)
        .def_readonly("se_mean", &McResult::se_mean)
        .def_readonly("se_variance", &McResult::se_variance)
        .def_readonly("min_value", &McResult::min_value)
        .def_readonly("max_value", &McResult::max_value)
        .def_readonly("i_max", &McResult::i_max)
        .def_readonly("hist_density", &McResult::hist_density)
        .def_readonly("sorted_samples", &McResult::sorted_samples)
        .def_readonly("degenerate", &McResult::degenerate);

    m.def(
        "sample_dirichlet",
        [](const std::vector<double>& alphas, std::uint64_t seed) {
            return sample_dirichlet(alphas, seed);
        },
        py::arg("alphas"), py::arg("seed"));
    m.def(
        "mi_posterior_mc",
        [](const CountTable& t, std::uint64_t samples, std::uint64_t seed, int workers,
           std::size_t bins, bool keep_samples) {
            McOptions opt;
            opt.samples = samples;
            opt.seed = seed;
            opt.workers = workers;
            opt.bins = bins;
            opt.keep_samples = keep_samples;
            return mi_posterior_mc(t, opt);
        },
        py::arg("table"), py::arg("samples"), py::arg("seed"), py::arg("workers") = 1,
        py::arg("bins") = 200, py::arg("keep_samples") = false,
        py::call_guard<py::gil_scoped_release>());
    m.def(
        "tail_exponent_probe",
        [](const CountTable& t, std::uint64_t samples, std::uint64_t seed, int workers) {
            McOptions opt;
            opt.samples = samples;
            opt.seed = seed;
            opt.workers = workers;
            const TailProbeResult r = tail_exponent_probe(t, opt);
            return py::make_tuple(r.exponent, r.conclusive, r.bins_used);
        },
        py::arg("table"), py::arg("samples"), py::arg("seed"), py::arg("workers") = 1,
        py::call_guard<py::gil_scoped_release>());

    py::enum_<FilterKind>(m, "FilterKind")
        .value("F", FilterKind::F)
        .value("FF", FilterKind::FF)
        .value("BF", FilterKind::BF);

    py::class_<FilterConfig>(m, "FilterConfig")
        .def(py::init([](FilterKind kind, double epsilon, double p_bar, DistFamily family,
                         double prior) {
                 FilterConfig c;
                 c.kind = kind;
                 c.epsilon = epsilon;
                 c.p_bar = p_bar;
                 c.family = family;
                 c.prior = prior;
                 return c;
             }),
             py::arg("kind") = FilterKind::FF, py::arg("epsilon") = 0.003,
             py::arg("p_bar") = 0.95, py::arg("family") = DistFamily::beta,
             py::arg("prior") = 1.0)
        .def_readwrite("kind", &FilterConfig::kind)
        .def_readwrite("epsilon", &FilterConfig::epsilon)
        .def_readwrite("p_bar", &FilterConfig::p_bar)
        .def_readwrite("family", &FilterConfig::family)
        .def_readwrite("prior", &FilterConfig::prior);

    py::class_<FilterDecision>(m, "FilterDecision")
        .def_readonly("attribute", &FilterDecision::attribute)
        .def_readonly("kind", &FilterDecision::kind)
        .def_readonly("include", &FilterDecision::include)
        .def_readonly("statistic", &FilterDecision::statistic)
        .def_readonly("mean", &FilterDecision::mean)
        .def_readonly("variance", &FilterDecision::variance)
        .def_readonly("gamma_fallback", &FilterDecision::gamma_fallback)
        .def_readonly("missing_path", &FilterDecision::missing_path);

    m.def("decide", &decide, py::arg("table"), py::arg("config"), py::arg("attribute") = -1);
    m.def("select", &mutinf::select, py::arg("tables"), py::arg("config"));
    m.def("ff_equivalent_threshold", &ff_equivalent_threshold, py::arg("moments"),
          py::arg("epsilon"));

    py::class_<Dataset>(m, "Dataset")
        .def_readonly("attribute_names", &Dataset::attribute_names)
        .def_readonly("attribute_domains", &Dataset::attribute_domains)
        .def_readonly("class_name", &Dataset::class_name)
        .def_readonly("class_domain", &Dataset::class_domain)
        .def_readonly("instances", &Dataset::instances)
        .def_readonly("class_labels", &Dataset::class_labels)
        .def_property_readonly("n_attributes", &Dataset::n_attributes)
        .def_property_readonly("n_instances", &Dataset::n_instances);

    m.def(
        "read_csv",
        [](const std::string& path, char delimiter, const std::string& missing_token,
           bool header, int class_column, const std::string& schema_path) {
            CsvOptions opt;
            opt.delimiter = delimiter;
            opt.missing_token = missing_token;
            opt.header = header;
            opt.class_column = class_column;
            opt.schema_path = schema_path;
            return read_csv(path, opt);
        },
        py::arg("path"), py::arg("delimiter") = ',', py::arg("missing_token") = "?",
        py::arg("header") = true, py::arg("class_column") = -1, py::arg("schema_path") = "");
    m.def("attribute_class_table", &attribute_class_table, py::arg("dataset"),
          py::arg("attribute"));
    m.def(
        "generate",
        [](std::size_t rows, std::size_t cols, std::uint64_t n, bool independent,
           const std::vector<std::vector<double>>& pi, double attr_missing_rate,
           std::uint64_t seed) {
            SyntheticSpec spec;
            spec.rows = rows;
            spec.cols = cols;
            spec.n = n;
            spec.independent = independent;
            if (!independent) spec.pi = matrix_from_rows(pi);
            spec.attr_missing_rate = attr_missing_rate;
            spec.seed = seed;
            return generate(spec);
        },
        py::arg("rows"), py::arg("cols"), py::arg("n"), py::arg("independent") = true,
        py::arg("pi") = std::vector<std::vector<double>>{}, py::arg("attr_missing_rate") = 0.0,
        py::arg("seed") = 0);
    m.def(
        "generate_table",
        [](std::size_t rows, std::size_t cols, std::uint64_t n, bool independent,
           const std::vector<std::vector<double>>& pi, double attr_missing_rate,
           double class_missing_rate, std::uint64_t seed) {
            SyntheticSpec spec;
            spec.rows = rows;
            spec.cols = cols;
            spec.n = n;
            spec.independent = independent;
            if (!independent) spec.pi = matrix_from_rows(pi);
            spec.attr_missing_rate = attr_missing_rate;
            spec.class_missing_rate = class_missing_rate;
            spec.seed = seed;
            return generate_table(spec);
        },
        py::arg("rows"), py::arg("cols"), py::arg("n"), py::arg("independent") = true,
        py::arg("pi") = std::vector<std::vector<double>>{}, py::arg("attr_missing_rate") = 0.0,
        py::arg("class_missing_rate") = 0.0, py::arg("seed") = 0);

    py::class_<SequentialRunResult>(m, "SequentialRunResult")
        .def_readonly("predicted", &SequentialRunResult::predicted)
        .def_readonly("correct", &SequentialRunResult::correct)
        .def_readonly("attributes_used", &SequentialRunResult::attributes_used)
        .def_readonly("cumulative_accuracy", &SequentialRunResult::cumulative_accuracy)
        .def_readonly("average_attributes", &SequentialRunResult::average_attributes)
        .def_readonly("final_accuracy", &SequentialRunResult::final_accuracy);

    m.def("run_sequential", &run_sequential, py::arg("dataset"), py::arg("config"),
          py::call_guard<py::gil_scoped_release>());
    m.def(
        "paired_t_test",
        [](const std::vector<double>& a, const std::vector<double>& b, double alpha) {
            const TTestResult r = paired_t_test(a, b, alpha);
            return py::make_tuple(r.t, r.p_value, r.significant, r.degenerate);
        },
        py::arg("acc_a"), py::arg("acc_b"), py::arg("alpha") = 0.05);
}
