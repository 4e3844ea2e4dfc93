#include "mutinf/naive_bayes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mutinf/errors.hpp"
#include "mutinf/specfun.hpp"

namespace mutinf {

NaiveBayesState::NaiveBayesState(std::size_t n_classes,
                                 std::vector<std::size_t> attribute_cardinalities,
                                 double pseudo_count)
    : pseudo_count_(pseudo_count),
      class_counts_(n_classes, 0.0),
      cardinalities_(std::move(attribute_cardinalities)) {
    if (n_classes < 1) throw InputError("naive Bayes needs at least one class");
    if (!(pseudo_count > 0.0)) throw InputError("naive Bayes pseudo-count must be positive");
    conditional_.reserve(cardinalities_.size());
    for (std::size_t card : cardinalities_) conditional_.emplace_back(std::max<std::size_t>(card, 1), n_classes, 0.0);
}

const Matrix& NaiveBayesState::conditional_counts(std::size_t attribute) const {
    if (attribute >= conditional_.size()) throw InputError("attribute index out of range");
    return conditional_[attribute];
}

NaiveBayesState::Prediction NaiveBayesState::predict(const std::vector<int>& instance,
                                                     const std::vector<int>& selected) const {
    if (instance.size() != cardinalities_.size())
        throw InputError("instance width does not match the model");
    const std::size_t c = class_counts_.size();
    Prediction pred;
    pred.posterior.assign(c, 0.0);

    const double seen = static_cast<double>(instances_seen_);
    std::vector<double> log_score(c);
    for (std::size_t k = 0; k < c; ++k)
        log_score[k] = std::log((class_counts_[k] + pseudo_count_) /
                                (seen + pseudo_count_ * static_cast<double>(c)));

    for (int a : selected) {
        if (a < 0 || static_cast<std::size_t>(a) >= cardinalities_.size())
            throw InputError("selected attribute index out of range");
        const int v = instance[static_cast<std::size_t>(a)];
        if (v < 0) continue;  // missing values drop out of the product
        const Matrix& cond = conditional_[static_cast<std::size_t>(a)];
        const std::size_t card = cardinalities_[static_cast<std::size_t>(a)];
        if (static_cast<std::size_t>(v) >= card) {
            // value outside the declared domain: smooth as one extra category
            pred.unseen_value = true;
            for (std::size_t k = 0; k < c; ++k) {
                const double denom =
                    class_counts_[k] + pseudo_count_ * static_cast<double>(card + 1);
                log_score[k] += std::log(pseudo_count_ / denom);
            }
            continue;
        }
        for (std::size_t k = 0; k < c; ++k) {
            const double denom = class_counts_[k] + pseudo_count_ * static_cast<double>(card);
            log_score[k] +=
                std::log((cond(static_cast<std::size_t>(v), k) + pseudo_count_) / denom);
        }
    }

    const double peak = *std::max_element(log_score.begin(), log_score.end());
    double total = 0.0;
    for (std::size_t k = 0; k < c; ++k) total += pred.posterior[k] = std::exp(log_score[k] - peak);
    for (double& p : pred.posterior) p /= total;
    pred.cls = static_cast<std::size_t>(
        std::max_element(log_score.begin(), log_score.end()) - log_score.begin());
    return pred;
}

void NaiveBayesState::update(const std::vector<int>& instance, std::size_t true_class) {
    if (instance.size() != cardinalities_.size())
        throw InputError("instance width does not match the model");
    if (true_class >= class_counts_.size()) throw InputError("class index out of range");
    class_counts_[true_class] += 1.0;
    ++instances_seen_;
    for (std::size_t a = 0; a < instance.size(); ++a) {
        const int v = instance[a];
        if (v < 0) continue;
        if (static_cast<std::size_t>(v) >= cardinalities_[a])
            throw InputError("attribute value outside the declared domain");
        conditional_[a](static_cast<std::size_t>(v), true_class) += 1.0;
    }
}

SequentialRunResult run_sequential(const Dataset& dataset, const FilterConfig& config) {
    const std::size_t c = dataset.class_domain.size();
    const std::size_t n_attr = dataset.n_attributes();
    if (dataset.n_instances() == 0) throw InputError("run_sequential: dataset has no instances");
    if (c < 2) throw InputError("run_sequential: need at least 2 classes");

    std::vector<std::size_t> cards(n_attr);
    std::vector<bool> usable(n_attr);
    for (std::size_t a = 0; a < n_attr; ++a) {
        cards[a] = dataset.attribute_domains[a].size();
        usable[a] = cards[a] >= 2;  // single-valued attributes carry no information
    }

    NaiveBayesState nb(c, cards);
    std::vector<Matrix> joint;
    joint.reserve(n_attr);
    for (std::size_t a = 0; a < n_attr; ++a)
        joint.emplace_back(std::max<std::size_t>(cards[a], 1), c, 0.0);
    std::vector<std::vector<double>> attr_missing(n_attr, std::vector<double>(c, 0.0));

    SequentialRunResult result;
    const std::size_t n = dataset.n_instances();
    result.predicted.reserve(n);
    result.correct.reserve(n);
    result.attributes_used.reserve(n);
    result.cumulative_accuracy.reserve(n);

    std::size_t correct_so_far = 0;
    long double attr_sum = 0.0L;
    std::vector<int> selected;
    for (std::size_t t = 0; t < n; ++t) {
        selected.clear();
        for (std::size_t a = 0; a < n_attr; ++a) {
            if (!usable[a]) continue;
            const CountTable tbl(joint[a], std::vector<double>(cards[a], 0.0), attr_missing[a]);
            if (decide(tbl, config, static_cast<int>(a)).include)
                selected.push_back(static_cast<int>(a));
        }

        const auto pred = nb.predict(dataset.instances[t], selected);
        const std::size_t truth = dataset.class_labels[t];
        const bool hit = pred.cls == truth;
        result.predicted.push_back(pred.cls);
        result.correct.push_back(hit ? 1 : 0);
        result.attributes_used.push_back(selected.size());
        correct_so_far += hit ? 1 : 0;
        attr_sum += static_cast<long double>(selected.size());
        result.cumulative_accuracy.push_back(static_cast<double>(correct_so_far) /
                                             static_cast<double>(t + 1));

        nb.update(dataset.instances[t], truth);
        for (std::size_t a = 0; a < n_attr; ++a) {
            const int v = dataset.instances[t][a];
            if (v < 0)
                attr_missing[a][truth] += 1.0;
            else
                joint[a](static_cast<std::size_t>(v), truth) += 1.0;
        }
    }
    result.final_accuracy = result.cumulative_accuracy.back();
    result.average_attributes = static_cast<double>(attr_sum / static_cast<long double>(n));
    return result;
}

TTestResult paired_t_test(const std::vector<double>& acc_a, const std::vector<double>& acc_b,
                          double alpha) {
    if (acc_a.size() != acc_b.size())
        throw InputError("paired_t_test: sequences must have equal length");
    const std::size_t k = acc_a.size();
    if (k < 2) throw InputError("paired_t_test: need at least 2 paired observations");

    double mean = 0.0;
    for (std::size_t t = 0; t < k; ++t) mean += acc_a[t] - acc_b[t];
    mean /= static_cast<double>(k);
    double ss = 0.0;
    for (std::size_t t = 0; t < k; ++t) {
        const double d = acc_a[t] - acc_b[t] - mean;
        ss += d * d;
    }
    const double var = ss / static_cast<double>(k - 1);

    TTestResult res;
    if (!(var > 0.0)) {
        // All differences identical: no spread to test against.
        res.degenerate = true;
        if (mean == 0.0) {
            res.t = 0.0;
            res.p_value = 1.0;
            res.significant = false;
        } else {
            res.t = mean > 0.0 ? std::numeric_limits<double>::infinity()
                               : -std::numeric_limits<double>::infinity();
            res.p_value = 0.0;
            res.significant = true;
        }
        return res;
    }
    res.t = mean / std::sqrt(var / static_cast<double>(k));
    const double dof = static_cast<double>(k - 1);
    res.p_value = reg_inc_beta(dof / 2.0, 0.5, dof / (dof + res.t * res.t));
    res.significant = res.p_value < alpha;
    return res;
}

}  // namespace mutinf
