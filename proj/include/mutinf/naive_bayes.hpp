#pragma once

#include <cstddef>
#include <vector>

#include "mutinf/dataio.hpp"
#include "mutinf/filters.hpp"

namespace mutinf {

// Incremental naive Bayes over categorical attributes with uniform-prior
// smoothing (pseudo-count 1 per cell, applied to the class prior and every
// conditional table). Missing attribute values are skipped in the
// prediction product and leave the conditional counts untouched.
class NaiveBayesState {
  public:
    NaiveBayesState(std::size_t n_classes, std::vector<std::size_t> attribute_cardinalities,
                    double pseudo_count = 1.0);

    struct Prediction {
        std::size_t cls = 0;
        std::vector<double> posterior;  // normalized, sums to 1
        bool unseen_value = false;      // a value index beyond the declared domain came in
    };

    // Log-space product of smoothed conditionals over the selected,
    // observed attributes. Ties resolve to the lowest class index.
    Prediction predict(const std::vector<int>& instance,
                       const std::vector<int>& selected) const;

    void update(const std::vector<int>& instance, std::size_t true_class);

    std::size_t n_classes() const { return class_counts_.size(); }
    std::size_t instances_seen() const { return instances_seen_; }
    const std::vector<double>& class_counts() const { return class_counts_; }
    const Matrix& conditional_counts(std::size_t attribute) const;

  private:
    double pseudo_count_ = 1.0;
    std::size_t instances_seen_ = 0;
    std::vector<double> class_counts_;
    std::vector<std::size_t> cardinalities_;
    std::vector<Matrix> conditional_;  // per attribute: value x class counts
};

struct SequentialRunResult {
    std::vector<std::size_t> predicted;
    std::vector<unsigned char> correct;          // 0/1 per instance
    std::vector<std::size_t> attributes_used;    // selected-set size per instance
    std::vector<double> cumulative_accuracy;     // (#correct among first k)/k
    double average_attributes = 0.0;
    double final_accuracy = 0.0;
};

// The sequential protocol: read instance by instance; re-filter the
// attributes from the counts seen so far; predict with the selected subset;
// score; then absorb the instance. Deterministic given the instance order.
SequentialRunResult run_sequential(const Dataset& dataset, const FilterConfig& config);

struct TTestResult {
    double t = 0.0;
    double p_value = 1.0;
    bool significant = false;
    bool degenerate = false;  // zero variance of the differences
};

// Classical two-tailed paired t test on per-instance 0/1 correctness
// indicators. Zero-variance differences are degenerate: not significant
// when the common difference is zero, significant otherwise.
TTestResult paired_t_test(const std::vector<double>& acc_a, const std::vector<double>& acc_b,
                          double alpha = 0.05);

}  // namespace mutinf
