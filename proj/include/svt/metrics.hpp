#pragma once

#include <vector>

namespace svt {

struct ConfusionMatrix {
    long tp = 0;
    long fp = 0;
    long fn = 0;
    long tn = 0;

    long total() const { return tp + fp + fn + tn; }
    void add(const ConfusionMatrix& o) {
        tp += o.tp;
        fp += o.fp;
        fn += o.fn;
        tn += o.tn;
    }
};

// labels in {0,1}, 1 = minority/positive
ConfusionMatrix confusion(const std::vector<int>& y_true, const std::vector<int>& y_pred);

struct MetricSet {
    double accuracy = 0.0;
    double precision = 0.0;
    double tpr = 0.0;
    double f_measure = 0.0;
    double g_mean = 0.0;
};

// precision := 0 when nothing is predicted positive; f := 0 when
// precision + tpr == 0; g_mean = sqrt(tpr * tnr).
MetricSet metrics(const ConfusionMatrix& cm);

// pooled-count F-measure used for tuning-parameter selection
double f_measure_of(const ConfusionMatrix& cm);

inline constexpr int kMetricCount = 5;
extern const char* const kMetricNames[kMetricCount];
double metric_value(const MetricSet& m, int idx);

}  // namespace svt
