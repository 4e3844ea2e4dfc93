#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "mutinf/count_table.hpp"
#include "mutinf/matrix.hpp"

namespace mutinf {

// Categorical dataset with a class column. Attribute values are stored as
// indices into the per-attribute domains; -1 marks a missing value. The
// class is never missing.
struct Dataset {
    std::vector<std::string> attribute_names;
    std::vector<std::vector<std::string>> attribute_domains;
    std::string class_name;
    std::vector<std::string> class_domain;
    std::vector<std::vector<int>> instances;   // one row per instance
    std::vector<std::size_t> class_labels;

    std::size_t n_attributes() const { return attribute_names.size(); }
    std::size_t n_instances() const { return instances.size(); }
};

struct CsvOptions {
    char delimiter = ',';
    std::string missing_token = "?";
    bool header = true;
    int class_column = -1;  // -1 selects the last column
    // Optional sidecar schema: one "column_name: v1,v2,v3" line per column
    // whose domain should carry declared values in a fixed order. Observed
    // values outside the declaration are appended in first-seen order.
    std::string schema_path;
};

Dataset read_csv(const std::string& path, const CsvOptions& options = {});
Dataset read_csv(std::istream& in, const CsvOptions& options = {},
                 const std::string& source_name = "<stream>");
void write_csv(const Dataset& dataset, const std::string& path,
               const CsvOptions& options = {});
void write_csv(const Dataset& dataset, std::ostream& out,
               const CsvOptions& options = {});

// Joint counts over (attribute value, class). Instances with the attribute
// value missing land in col_missing for their class, the one-variable-
// missing layout the closed-form estimates expect.
CountTable attribute_class_table(const Dataset& dataset, std::size_t attribute);

// Synthetic draws from a known joint chance matrix; pi is ignored when
// `independent` is set (uniform product chances are used instead).
// attr_missing_rate masks the attribute value; class_missing_rate is only
// meaningful for generate_table, where either side may be masked and
// fully-masked units are dropped.
struct SyntheticSpec {
    std::size_t rows = 2;
    std::size_t cols = 2;
    std::uint64_t n = 100;
    bool independent = true;
    Matrix pi;
    double attr_missing_rate = 0.0;
    double class_missing_rate = 0.0;
    std::uint64_t seed = 0;
};

// One-attribute dataset of n i.i.d. draws with MAR masking of the
// attribute side. The class side cannot be masked in a Dataset; specs with
// class_missing_rate > 0 are rejected here.
Dataset generate(const SyntheticSpec& spec);

// Count-table view of the same process with both sides maskable.
CountTable generate_table(const SyntheticSpec& spec);

}  // namespace mutinf
