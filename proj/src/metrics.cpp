#include "svt/metrics.hpp"

#include <cmath>
#include <stdexcept>

namespace svt {

ConfusionMatrix confusion(const std::vector<int>& y_true, const std::vector<int>& y_pred) {
    if (y_true.size() != y_pred.size()) {
        throw std::invalid_argument("confusion: label vectors differ in length");
    }
    ConfusionMatrix cm;
    for (size_t i = 0; i < y_true.size(); ++i) {
        if (y_true[i] == 1) {
            (y_pred[i] == 1 ? cm.tp : cm.fn)++;
        } else {
            (y_pred[i] == 1 ? cm.fp : cm.tn)++;
        }
    }
    return cm;
}

MetricSet metrics(const ConfusionMatrix& cm) {
    if (cm.total() <= 0) throw std::invalid_argument("metrics: empty confusion matrix");
    MetricSet m;
    m.accuracy = static_cast<double>(cm.tp + cm.tn) / static_cast<double>(cm.total());
    m.precision = cm.tp + cm.fp > 0 ? static_cast<double>(cm.tp) / (cm.tp + cm.fp) : 0.0;
    m.tpr = cm.tp + cm.fn > 0 ? static_cast<double>(cm.tp) / (cm.tp + cm.fn) : 0.0;
    m.f_measure =
        m.precision + m.tpr > 0.0 ? 2.0 * m.tpr * m.precision / (m.tpr + m.precision) : 0.0;
    double tnr = cm.tn + cm.fp > 0 ? static_cast<double>(cm.tn) / (cm.tn + cm.fp) : 0.0;
    m.g_mean = std::sqrt(m.tpr * tnr);
    return m;
}

double f_measure_of(const ConfusionMatrix& cm) { return metrics(cm).f_measure; }

const char* const kMetricNames[kMetricCount] = {"accuracy", "precision", "tpr", "f_measure",
                                                "g_mean"};

double metric_value(const MetricSet& m, int idx) {
    switch (idx) {
        case 0: return m.accuracy;
        case 1: return m.precision;
        case 2: return m.tpr;
        case 3: return m.f_measure;
        case 4: return m.g_mean;
    }
    throw std::out_of_range("metric_value: bad index");
}

}  // namespace svt
