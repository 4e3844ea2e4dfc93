#include "mutinf/dataio.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include "mutinf/errors.hpp"
#include "mutinf/mc.hpp"

namespace mutinf {

namespace {

// Columns where every value parses as a real number and the domain keeps
// growing look continuous; they need discretization, not silent binning.
constexpr std::size_t kContinuousDomainLimit = 32;

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split(const std::string& line, char delimiter) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, delimiter)) out.push_back(trim(field));
    if (!line.empty() && line.back() == delimiter) out.push_back("");
    return out;
}

bool looks_numeric(const std::string& s) {
    if (s.empty()) return false;
    double value;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    return ec == std::errc() && ptr == s.data() + s.size();
}

}  // namespace

namespace {

// "column_name: v1,v2,v3" per line; '#' starts a comment.
std::map<std::string, std::vector<std::string>> read_schema(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open schema '" + path + "'");
    std::map<std::string, std::vector<std::string>> schema;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        if (trim(line).empty()) continue;
        const auto colon = line.find(':');
        if (colon == std::string::npos)
            throw InputError(path + ": line " + std::to_string(line_no) +
                             ": expected 'name: v1,v2,...'");
        const std::string name = trim(line.substr(0, colon));
        std::vector<std::string> values;
        for (const std::string& tok : split(line.substr(colon + 1), ','))
            if (!tok.empty()) values.push_back(tok);
        if (name.empty() || values.empty())
            throw InputError(path + ": line " + std::to_string(line_no) +
                             ": empty name or value list");
        schema[name] = std::move(values);
    }
    return schema;
}

}  // namespace

Dataset read_csv(const std::string& path, const CsvOptions& options) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open '" + path + "'");
    return read_csv(in, options, path);
}

Dataset read_csv(std::istream& in, const CsvOptions& options, const std::string& source_name) {
    std::vector<std::vector<std::string>> rows;
    std::string line;
    std::size_t line_no = 0;
    std::vector<std::string> header;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        auto fields = split(line, options.delimiter);
        if (options.header && header.empty()) {
            header = std::move(fields);
            continue;
        }
        rows.push_back(std::move(fields));
    }
    if (rows.empty()) throw InputError(source_name + ": no data rows");

    const std::size_t width = options.header ? header.size() : rows.front().size();
    if (width < 2) throw InputError(source_name + ": need at least one attribute and a class column");
    if (!options.header) {
        header.resize(width);
        for (std::size_t c = 0; c < width; ++c) header[c] = "a" + std::to_string(c);
    }

    int class_col = options.class_column;
    if (class_col < 0) class_col = static_cast<int>(width) - 1;
    if (class_col >= static_cast<int>(width))
        throw InputError(source_name + ": class column " + std::to_string(class_col) +
                         " out of range for " + std::to_string(width) + " columns");

    for (std::size_t rix = 0; rix < rows.size(); ++rix) {
        if (rows[rix].size() != width)
            throw InputError(source_name + ": row " + std::to_string(rix + 1) + " has " +
                             std::to_string(rows[rix].size()) + " fields, expected " +
                             std::to_string(width));
        if (rows[rix][static_cast<std::size_t>(class_col)] == options.missing_token)
            throw InputError(source_name + ": row " + std::to_string(rix + 1) +
                             ": the class value may not be missing");
    }

    Dataset ds;
    std::vector<std::size_t> attr_cols;
    for (std::size_t c = 0; c < width; ++c)
        if (c != static_cast<std::size_t>(class_col)) {
            attr_cols.push_back(c);
            ds.attribute_names.push_back(header[c]);
        }
    ds.class_name = header[static_cast<std::size_t>(class_col)];

    // First-seen order keeps domain indices deterministic.
    std::vector<std::map<std::string, int>> attr_index(attr_cols.size());
    std::map<std::string, int> class_index;
    ds.attribute_domains.resize(attr_cols.size());
    std::vector<bool> declared(attr_cols.size(), false);
    if (!options.schema_path.empty()) {
        const auto schema = read_schema(options.schema_path);
        for (std::size_t a = 0; a < attr_cols.size(); ++a) {
            const auto it = schema.find(ds.attribute_names[a]);
            if (it == schema.end()) continue;
            declared[a] = true;
            for (const std::string& value : it->second)
                if (attr_index[a].emplace(value, static_cast<int>(ds.attribute_domains[a].size()))
                        .second)
                    ds.attribute_domains[a].push_back(value);
        }
        const auto cit = schema.find(ds.class_name);
        if (cit != schema.end())
            for (const std::string& value : cit->second)
                if (class_index.emplace(value, static_cast<int>(ds.class_domain.size())).second)
                    ds.class_domain.push_back(value);
    }
    ds.instances.reserve(rows.size());
    ds.class_labels.reserve(rows.size());
    for (const auto& row : rows) {
        std::vector<int> inst(attr_cols.size(), -1);
        for (std::size_t a = 0; a < attr_cols.size(); ++a) {
            const std::string& tok = row[attr_cols[a]];
            if (tok == options.missing_token) continue;
            auto [it, fresh] = attr_index[a].emplace(tok, static_cast<int>(ds.attribute_domains[a].size()));
            if (fresh) ds.attribute_domains[a].push_back(tok);
            inst[a] = it->second;
        }
        const std::string& ctok = row[static_cast<std::size_t>(class_col)];
        auto [cit, cfresh] = class_index.emplace(ctok, static_cast<int>(ds.class_domain.size()));
        if (cfresh) ds.class_domain.push_back(ctok);
        ds.instances.push_back(std::move(inst));
        ds.class_labels.push_back(static_cast<std::size_t>(cit->second));
    }

    for (std::size_t a = 0; a < attr_cols.size(); ++a) {
        if (declared[a]) continue;  // schema-declared columns are categorical by fiat
        const auto& domain = ds.attribute_domains[a];
        if (domain.size() > kContinuousDomainLimit &&
            std::all_of(domain.begin(), domain.end(), looks_numeric))
            throw InputError(source_name + ": column '" + ds.attribute_names[a] +
                             "' looks continuous (" + std::to_string(domain.size()) +
                             " numeric values); discretize it before loading");
    }
    return ds;
}

void write_csv(const Dataset& dataset, const std::string& path, const CsvOptions& options) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write '" + path + "'");
    write_csv(dataset, out, options);
}

void write_csv(const Dataset& dataset, std::ostream& out, const CsvOptions& options) {
    const char d = options.delimiter;
    if (options.header) {
        for (const auto& name : dataset.attribute_names) out << name << d;
        out << dataset.class_name << '\n';
    }
    for (std::size_t t = 0; t < dataset.n_instances(); ++t) {
        for (std::size_t a = 0; a < dataset.n_attributes(); ++a) {
            const int v = dataset.instances[t][a];
            out << (v < 0 ? options.missing_token
                          : dataset.attribute_domains[a][static_cast<std::size_t>(v)])
                << d;
        }
        out << dataset.class_domain[dataset.class_labels[t]] << '\n';
    }
}

CountTable attribute_class_table(const Dataset& dataset, std::size_t attribute) {
    if (attribute >= dataset.n_attributes())
        throw InputError("attribute index out of range");
    if (dataset.n_instances() == 0) throw InputError("dataset has no instances");
    const std::size_t r = dataset.attribute_domains[attribute].size();
    const std::size_t s = dataset.class_domain.size();
    if (r < 2)
        throw InputError("attribute '" + dataset.attribute_names[attribute] +
                         "' has fewer than 2 observed values");
    if (s < 2) throw InputError("dataset has fewer than 2 classes");

    Matrix counts(r, s, 0.0);
    std::vector<double> attr_missing(s, 0.0);  // attribute unobserved, class observed
    for (std::size_t t = 0; t < dataset.n_instances(); ++t) {
        const int v = dataset.instances[t][attribute];
        const std::size_t c = dataset.class_labels[t];
        if (v < 0)
            attr_missing[c] += 1.0;
        else
            counts(static_cast<std::size_t>(v), c) += 1.0;
    }
    return CountTable(std::move(counts), std::vector<double>(r, 0.0), std::move(attr_missing));
}

namespace {

Matrix synthetic_chances(const SyntheticSpec& spec) {
    if (spec.rows < 2 || spec.cols < 2)
        throw InputError("synthetic spec needs at least a 2x2 joint");
    if (spec.independent) {
        return Matrix(spec.rows, spec.cols,
                      1.0 / static_cast<double>(spec.rows * spec.cols));
    }
    if (spec.pi.rows() != spec.rows || spec.pi.cols() != spec.cols)
        throw InputError("synthetic spec: pi shape does not match rows x cols");
    double total = 0.0;
    for (double v : spec.pi.data()) {
        if (!(v >= 0.0)) throw InputError("synthetic spec: pi entries must be nonnegative");
        total += v;
    }
    if (!(std::fabs(total - 1.0) < 1e-9))
        throw InputError("synthetic spec: pi must sum to 1");
    return spec.pi;
}

void check_rates(const SyntheticSpec& spec) {
    if (!(spec.attr_missing_rate >= 0.0 && spec.attr_missing_rate < 1.0) ||
        !(spec.class_missing_rate >= 0.0 && spec.class_missing_rate < 1.0))
        throw InputError("synthetic spec: missing rates must lie in [0, 1)");
}

std::pair<std::size_t, std::size_t> draw_cell(const Matrix& pi, Rng& rng) {
    double u = rng.uniform();
    for (std::size_t i = 0; i < pi.rows(); ++i)
        for (std::size_t j = 0; j < pi.cols(); ++j) {
            u -= pi(i, j);
            if (u < 0.0) return {i, j};
        }
    return {pi.rows() - 1, pi.cols() - 1};
}

}  // namespace

Dataset generate(const SyntheticSpec& spec) {
    check_rates(spec);
    if (spec.class_missing_rate > 0.0)
        throw InputError(
            "generate: the class side cannot be masked in a dataset; use generate_table");
    const Matrix pi = synthetic_chances(spec);

    Dataset ds;
    ds.attribute_names = {"a0"};
    ds.class_name = "class";
    ds.attribute_domains.resize(1);
    for (std::size_t i = 0; i < spec.rows; ++i)
        ds.attribute_domains[0].push_back("v" + std::to_string(i));
    for (std::size_t j = 0; j < spec.cols; ++j)
        ds.class_domain.push_back("c" + std::to_string(j));

    Rng rng(spec.seed);
    ds.instances.reserve(spec.n);
    ds.class_labels.reserve(spec.n);
    for (std::uint64_t t = 0; t < spec.n; ++t) {
        const auto [i, j] = draw_cell(pi, rng);
        const bool mask_attr = spec.attr_missing_rate > 0.0 && rng.uniform() < spec.attr_missing_rate;
        ds.instances.push_back({mask_attr ? -1 : static_cast<int>(i)});
        ds.class_labels.push_back(j);
    }
    return ds;
}

CountTable generate_table(const SyntheticSpec& spec) {
    check_rates(spec);
    const Matrix pi = synthetic_chances(spec);

    Matrix counts(spec.rows, spec.cols, 0.0);
    std::vector<double> row_missing(spec.rows, 0.0);  // n_i?: class side masked
    std::vector<double> col_missing(spec.cols, 0.0);  // n_?j: attribute side masked
    Rng rng(spec.seed);
    for (std::uint64_t t = 0; t < spec.n; ++t) {
        const auto [i, j] = draw_cell(pi, rng);
        const bool mask_attr = spec.attr_missing_rate > 0.0 && rng.uniform() < spec.attr_missing_rate;
        const bool mask_class =
            spec.class_missing_rate > 0.0 && rng.uniform() < spec.class_missing_rate;
        if (mask_attr && mask_class) continue;  // fully unobserved units carry nothing
        if (mask_class)
            row_missing[i] += 1.0;
        else if (mask_attr)
            col_missing[j] += 1.0;
        else
            counts(i, j) += 1.0;
    }
    return CountTable(std::move(counts), std::move(row_missing), std::move(col_missing));
}

}  // namespace mutinf
