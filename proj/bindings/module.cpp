#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "svt/cart.hpp"
#include "svt/data.hpp"
#include "svt/evaluate.hpp"
#include "svt/induction.hpp"
#include "svt/resample.hpp"
#include "svt/tree.hpp"
#include "svt/version.hpp"

namespace py = pybind11;
using namespace svt;

namespace {

std::vector<std::vector<double>> feature_rows(const Dataset& ds) {
    std::vector<std::vector<double>> rows(ds.n());
    for (int i = 0; i < ds.n(); ++i) rows[i].assign(ds.row(i), ds.row(i) + ds.d());
    return rows;
}

MetricSet to_metric_set(const MethodRun& run, bool stderr_part) {
    return stderr_part ? run.stderr_ : run.mean;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "SVR-regularized classification trees for imbalanced data";
    m.attr("__version__") = SVRTREE_VERSION;

    py::class_<Box>(m, "Box")
        .def(py::init<std::vector<double>, std::vector<double>>(), py::arg("lower"),
             py::arg("upper"))
        .def_static("unit", &Box::unit, py::arg("dim"))
        .def_readonly("lower", &Box::lower)
        .def_readonly("upper", &Box::upper)
        .def_property_readonly("dim", &Box::dim)
        .def("contains", &Box::contains, py::arg("x"));

    py::class_<BoxUnion>(m, "BoxUnion")
        .def(py::init<int, std::vector<Box>>(), py::arg("dimension"),
             py::arg("boxes") = std::vector<Box>{})
        .def_readonly("dimension", &BoxUnion::dimension)
        .def_readonly("boxes", &BoxUnion::boxes)
        .def("add", &BoxUnion::add, py::arg("box"));

    m.def("box_volume", &box_volume);
    m.def("box_surface", &box_surface);
    m.def("contact_area", &contact_area);
    m.def("intersection_volume", &intersection_volume);
    m.def("union_surface", &union_surface);
    m.def("union_volume", &union_volume);
    m.def("svr", &svr);
    m.def("grid_surface_oracle", &grid_surface_oracle, py::arg("u"), py::arg("resolution"));

    py::class_<ClassWeights>(m, "ClassWeights")
        .def_readonly("alpha", &ClassWeights::alpha)
        .def_readonly("w0", &ClassWeights::w0);
    m.def("derive_class_weights", &derive_class_weights, py::arg("n0"), py::arg("n1"));
    m.def("gini", &gini, py::arg("p0"), py::arg("p1"));

    py::class_<Dataset>(m, "Dataset")
        .def_property_readonly("n", &Dataset::n)
        .def_property_readonly("d", &Dataset::d)
        .def_readonly("labels", &Dataset::y)
        .def_readonly("feature_names", &Dataset::feature_names)
        .def_readonly("name", &Dataset::name)
        .def_readonly("n0", &Dataset::n0)
        .def_readonly("n1", &Dataset::n1)
        .def_property_readonly("features", &feature_rows)
        .def("take", &Dataset::take, py::arg("rows"));

    m.def("make_dataset", &make_dataset, py::arg("rows"), py::arg("labels"),
          py::arg("names") = std::vector<std::string>{});
    m.def("toy_generate", &toy_generate, py::arg("n_min") = 5, py::arg("n_maj") = 200,
          py::arg("seed") = 0);
    m.def("add_redundant_features", &add_redundant_features, py::arg("dataset"),
          py::arg("count"), py::arg("seed") = 0);
    m.def(
        "load_dataset",
        [](const std::string& spec_path) { return load(read_dataset_spec(spec_path)); },
        py::arg("spec_path"));

    py::class_<RiskBreakdown>(m, "RiskBreakdown")
        .def_readonly("signed_impurity", &RiskBreakdown::signed_impurity)
        .def_readonly("svr", &RiskBreakdown::svr)
        .def_readonly("lambda_", &RiskBreakdown::lambda)
        .def_readonly("total", &RiskBreakdown::total);

    py::class_<Tree>(m, "Tree")
        .def_readonly("dimension", &Tree::dimension)
        .def_readonly("leaf_count", &Tree::leaf_count)
        .def_readonly("weights", &Tree::weights)
        .def("predict", [](const Tree& t, const std::vector<double>& x) { return t.predict(x); })
        .def("predict_many",
             [](const Tree& t, const std::vector<std::vector<double>>& rows) {
                 std::vector<int> out;
                 out.reserve(rows.size());
                 for (const auto& r : rows) out.push_back(t.predict(r));
                 return out;
             })
        .def("predict_dataset", &Tree::predict_all, py::arg("dataset"))
        .def("minority_region", &Tree::minority_region)
        .def("features_used", &Tree::features_used)
        .def("to_json", &tree_to_json)
        .def_static("from_json", &tree_from_json, py::arg("text"));

    m.def(
        "fit",
        [](const Dataset& data, double lambda, int max_leaves, bool feature_selection, double c0,
           int alpha) {
            ClassWeights w = alpha > 0 ? make_class_weights(alpha, data.n0, data.n1)
                                       : derive_class_weights(data.n0, data.n1);
            FitConfig cfg;
            cfg.lambda = lambda;
            cfg.max_leaves = max_leaves;
            cfg.feature_selection = feature_selection;
            cfg.c0 = c0;
            return fit(data, w, cfg);
        },
        py::arg("dataset"), py::arg("lambda_") = 0.0, py::arg("max_leaves") = 0,
        py::arg("feature_selection") = false, py::arg("c0") = 4.0, py::arg("alpha") = 0);
    m.def("risk", &risk, py::arg("tree"), py::arg("dataset"));
    m.def("tree_signed_impurity", &tree_signed_impurity, py::arg("tree"), py::arg("dataset"));

    m.def("cart_fit", [](const Dataset& data) { return cart_fit(data); }, py::arg("dataset"));
    m.def(
        "prune_alphas",
        [](const Tree& t) { return prune_path(t).alphas; }, py::arg("tree"));
    m.def("prune_at", &prune_at, py::arg("tree"), py::arg("alpha"));

    m.def(
        "resample",
        [](const Dataset& data, const std::string& method, int alpha, int k, uint64_t seed) {
            ResampleConfig cfg;
            cfg.method = parse_resample_method(method);
            cfg.alpha = alpha;
            cfg.k = k;
            cfg.seed = seed;
            return resample(data, cfg);
        },
        py::arg("dataset"), py::arg("method"), py::arg("alpha"), py::arg("k") = 5,
        py::arg("seed") = 0);

    py::class_<ConfusionMatrix>(m, "ConfusionMatrix")
        .def_readonly("tp", &ConfusionMatrix::tp)
        .def_readonly("fp", &ConfusionMatrix::fp)
        .def_readonly("fn", &ConfusionMatrix::fn)
        .def_readonly("tn", &ConfusionMatrix::tn);
    m.def("confusion", &confusion, py::arg("y_true"), py::arg("y_pred"));

    py::class_<MetricSet>(m, "MetricSet")
        .def_readonly("accuracy", &MetricSet::accuracy)
        .def_readonly("precision", &MetricSet::precision)
        .def_readonly("tpr", &MetricSet::tpr)
        .def_readonly("f_measure", &MetricSet::f_measure)
        .def_readonly("g_mean", &MetricSet::g_mean);
    m.def("metrics", &metrics, py::arg("cm"));

    m.def("stratified_folds", &stratified_folds, py::arg("labels"), py::arg("k"),
          py::arg("seed") = 0);
    m.def("lambda_grid", &lambda_grid, py::arg("n"));

    py::class_<MethodRun>(m, "MethodRun")
        .def_readonly("per_rep", &MethodRun::per_rep)
        .def_property_readonly("mean",
                               [](const MethodRun& r) { return to_metric_set(r, false); })
        .def_property_readonly("stderr",
                               [](const MethodRun& r) { return to_metric_set(r, true); });
    m.def(
        "nested_cv",
        [](const Dataset& data, const std::string& method, int repetitions, uint64_t seed,
           int knn, double fixed_lambda) {
            CVConfig cv;
            cv.repetitions = repetitions;
            cv.seed = seed;
            cv.knn = knn;
            cv.fixed_lambda = fixed_lambda;
            return nested_cv(data, parse_method(method), cv);
        },
        py::arg("dataset"), py::arg("method"), py::arg("repetitions") = 20, py::arg("seed") = 0,
        py::arg("knn") = 5, py::arg("fixed_lambda") = -1.0);
}
