#include "svt/data.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "svt/rng.hpp"

namespace svt {

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',' || c == ';' || c == '\t') {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(trim(cur));
    return out;
}

double parse_number(const std::string& s, int row, int col) {
    try {
        size_t pos = 0;
        double v = std::stod(s, &pos);
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos != s.size()) throw std::invalid_argument("trailing");
        return v;
    } catch (const std::exception&) {
        throw std::runtime_error("non-numeric value '" + s + "' at row " +
                                 std::to_string(row) + ", column " + std::to_string(col));
    }
}

struct RawTable {
    std::vector<std::string> names;  // feature columns only
    std::vector<std::vector<double>> rows;
    std::vector<std::string> labels;
};

RawTable read_csv_table(const std::string& path, bool header) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    RawTable t;
    std::string line;
    int row = 0;
    bool have_names = false;
    while (std::getline(in, line)) {
        std::string s = trim(line);
        if (s.empty() || s[0] == '#') continue;
        auto fields = split_fields(s);
        if (!have_names) {
            if (fields.size() < 2) throw std::runtime_error(path + ": rows need >= 2 columns");
            if (header) {
                for (size_t j = 0; j + 1 < fields.size(); ++j) t.names.push_back(fields[j]);
                have_names = true;
                continue;
            }
            for (size_t j = 0; j + 1 < fields.size(); ++j) t.names.push_back("f" + std::to_string(j));
            have_names = true;
        }
        if (fields.size() != t.names.size() + 1) {
            throw std::runtime_error(path + ": inconsistent column count at data row " +
                                     std::to_string(row));
        }
        std::vector<double> vals(t.names.size());
        for (size_t j = 0; j < t.names.size(); ++j) {
            vals[j] = parse_number(fields[j], row, static_cast<int>(j));
        }
        t.rows.push_back(std::move(vals));
        t.labels.push_back(fields.back());
        ++row;
    }
    return t;
}

RawTable read_keel_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    RawTable t;
    std::vector<std::string> attr_names;
    std::string line;
    int row = 0;
    bool in_data = false;
    while (std::getline(in, line)) {
        std::string s = trim(line);
        if (s.empty()) continue;
        if (s[0] == '@') {
            std::string low = s;
            std::transform(low.begin(), low.end(), low.begin(),
                           [](unsigned char c) { return std::tolower(c); });
            if (low.rfind("@attribute", 0) == 0) {
                std::string rest = trim(s.substr(10));
                size_t end = rest.find_first_of(" \t{[(");
                attr_names.push_back(end == std::string::npos ? rest : trim(rest.substr(0, end)));
            } else if (low.rfind("@data", 0) == 0) {
                in_data = true;
            }
            continue;
        }
        if (!in_data && attr_names.empty()) continue;
        auto fields = split_fields(s);
        if (t.names.empty()) {
            if (fields.size() < 2) throw std::runtime_error(path + ": rows need >= 2 columns");
            if (attr_names.size() == fields.size()) {
                t.names.assign(attr_names.begin(), attr_names.end() - 1);
            } else {
                for (size_t j = 0; j + 1 < fields.size(); ++j)
                    t.names.push_back("f" + std::to_string(j));
            }
        }
        if (fields.size() != t.names.size() + 1) {
            throw std::runtime_error(path + ": inconsistent column count at data row " +
                                     std::to_string(row));
        }
        std::vector<double> vals(t.names.size());
        for (size_t j = 0; j < t.names.size(); ++j) {
            vals[j] = parse_number(fields[j], row, static_cast<int>(j));
        }
        t.rows.push_back(std::move(vals));
        t.labels.push_back(fields.back());
        ++row;
    }
    return t;
}

bool in_list(const std::vector<std::string>& list, const std::string& v) {
    return std::find(list.begin(), list.end(), v) != list.end();
}

}  // namespace

Dataset Dataset::take(const std::vector<int>& rows) const {
    Dataset out;
    out.feature_names = feature_names;
    out.scaling = scaling;
    out.name = name;
    out.x.reserve(rows.size() * d());
    out.y.reserve(rows.size());
    for (int i : rows) {
        const double* r = row(i);
        out.x.insert(out.x.end(), r, r + d());
        out.y.push_back(y[i]);
    }
    out.recount();
    return out;
}

void Dataset::recount() {
    n0 = n1 = 0;
    for (int v : y) (v == 1 ? n1 : n0)++;
}

Dataset make_dataset(const std::vector<std::vector<double>>& rows,
                     const std::vector<int>& labels, std::vector<std::string> names) {
    if (rows.size() != labels.size()) throw std::invalid_argument("make_dataset: size mismatch");
    Dataset ds;
    size_t d = rows.empty() ? names.size() : rows[0].size();
    if (names.empty()) {
        for (size_t j = 0; j < d; ++j) names.push_back("f" + std::to_string(j));
    }
    if (names.size() != d) throw std::invalid_argument("make_dataset: name count mismatch");
    ds.feature_names = std::move(names);
    ds.scaling.assign(d, {0.0, 1.0});
    for (size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != d) throw std::invalid_argument("make_dataset: ragged rows");
        for (double v : rows[i]) {
            if (v < 0.0 || v > 1.0) throw std::invalid_argument("make_dataset: value outside [0,1]");
        }
        if (labels[i] != 0 && labels[i] != 1) throw std::invalid_argument("make_dataset: bad label");
        ds.x.insert(ds.x.end(), rows[i].begin(), rows[i].end());
        ds.y.push_back(labels[i]);
    }
    ds.recount();
    return ds;
}

DatasetSpec read_dataset_spec(const std::string& spec_path) {
    std::ifstream in(spec_path);
    if (!in) throw std::runtime_error("cannot open spec file: " + spec_path);
    DatasetSpec spec;
    std::string line;
    while (std::getline(in, line)) {
        std::string s = trim(line);
        if (s.empty() || s[0] == '#') continue;
        size_t eq = s.find('=');
        if (eq == std::string::npos) throw std::runtime_error(spec_path + ": expected key = value");
        std::string key = trim(s.substr(0, eq));
        std::string val = trim(s.substr(eq + 1));
        if (key == "name") spec.name = val;
        else if (key == "path") spec.path = val;
        else if (key == "format") spec.format = val;
        else if (key == "positive_classes") spec.positive_classes = split_fields(val);
        else if (key == "negative_classes") spec.negative_classes = split_fields(val);
        else if (key == "dropped_columns") spec.dropped_columns = split_fields(val);
        else if (key == "unlisted") spec.unlisted = val;
        else if (key == "header") spec.header = (val == "true" || val == "1");
        else throw std::runtime_error(spec_path + ": unknown key '" + key + "'");
    }
    if (spec.positive_classes.empty())
        throw std::runtime_error(spec_path + ": positive_classes must be nonempty");
    if (spec.format != "csv" && spec.format != "keel")
        throw std::runtime_error(spec_path + ": format must be csv or keel");
    // the spec file's path is resolved relative to its own directory
    if (!spec.path.empty() && spec.path[0] != '/') {
        size_t slash = spec_path.find_last_of('/');
        if (slash != std::string::npos) spec.path = spec_path.substr(0, slash + 1) + spec.path;
    }
    return spec;
}

Dataset load(const DatasetSpec& spec) {
    RawTable t = spec.format == "keel" ? read_keel_table(spec.path)
                                       : read_csv_table(spec.path, spec.header);
    if (t.rows.empty()) throw std::runtime_error(spec.path + ": no data rows");

    // drop configured columns (by name or 0-based index)
    std::vector<bool> drop(t.names.size(), false);
    for (const std::string& c : spec.dropped_columns) {
        auto it = std::find(t.names.begin(), t.names.end(), c);
        if (it != t.names.end()) {
            drop[it - t.names.begin()] = true;
            continue;
        }
        int idx = -1;
        auto res = std::from_chars(c.data(), c.data() + c.size(), idx);
        if (res.ec == std::errc() && res.ptr == c.data() + c.size() && idx >= 0 &&
            idx < static_cast<int>(t.names.size())) {
            drop[idx] = true;
        } else {
            throw std::runtime_error(spec.name + ": unknown dropped column '" + c + "'");
        }
    }

    Dataset ds;
    ds.name = spec.name.empty() ? spec.path : spec.name;
    for (size_t j = 0; j < t.names.size(); ++j) {
        if (!drop[j]) ds.feature_names.push_back(t.names[j]);
    }
    const int d = ds.d();

    std::vector<int> labels;
    std::vector<std::vector<double>> rows;
    for (size_t i = 0; i < t.rows.size(); ++i) {
        int label;
        if (in_list(spec.positive_classes, t.labels[i])) {
            label = 1;
        } else if (spec.negative_classes.empty() || in_list(spec.negative_classes, t.labels[i])) {
            label = 0;
        } else if (spec.unlisted == "drop") {
            continue;
        } else if (spec.unlisted == "majority") {
            label = 0;
        } else {
            throw std::runtime_error(spec.name + ": unknown class label '" + t.labels[i] + "'");
        }
        std::vector<double> r;
        r.reserve(d);
        for (size_t j = 0; j < t.names.size(); ++j) {
            if (!drop[j]) r.push_back(t.rows[i][j]);
        }
        rows.push_back(std::move(r));
        labels.push_back(label);
    }
    if (rows.empty()) throw std::runtime_error(spec.name + ": all rows dropped");

    // min-max scale per feature; constant features map to 0.5
    ds.scaling.resize(d);
    for (int j = 0; j < d; ++j) {
        double mn = rows[0][j], mx = rows[0][j];
        for (const auto& r : rows) {
            mn = std::min(mn, r[j]);
            mx = std::max(mx, r[j]);
        }
        ds.scaling[j] = {mn, mx};
    }
    ds.x.reserve(rows.size() * d);
    for (auto& r : rows) {
        for (int j = 0; j < d; ++j) {
            auto [mn, mx] = ds.scaling[j];
            ds.x.push_back(mx > mn ? (r[j] - mn) / (mx - mn) : 0.5);
        }
    }
    ds.y = std::move(labels);
    ds.recount();
    if (ds.n1 > ds.n0) {
        throw std::runtime_error(ds.name + ": positive_classes select the majority (" +
                                 std::to_string(ds.n1) + " > " + std::to_string(ds.n0) + ")");
    }
    return ds;
}

double unscale(const Dataset& ds, int feature, double v) {
    auto [mn, mx] = ds.scaling.at(feature);
    return mx > mn ? v * (mx - mn) + mn : mn;
}

Dataset toy_generate(int n_min, int n_maj, uint64_t seed) {
    if (n_min < 0 || n_maj < 0) throw std::invalid_argument("toy_generate: negative count");
    Rng rng(mix_seed(seed, 0x70e5));
    Dataset ds;
    ds.name = "toy";
    ds.feature_names = {"x1", "x2"};
    ds.scaling = {{0.0, 1.0}, {0.0, 1.0}};
    for (int i = 0; i < n_maj; ++i) {
        ds.x.push_back(rng.uniform());
        ds.x.push_back(rng.uniform());
        ds.y.push_back(0);
    }
    for (int i = 0; i < n_min; ++i) {
        ds.x.push_back(0.75 * rng.uniform());
        ds.x.push_back(0.25 + 0.5 * rng.uniform());
        ds.y.push_back(1);
    }
    ds.recount();
    return ds;
}

Dataset add_redundant_features(const Dataset& ds, int count, uint64_t seed) {
    if (count < 0) throw std::invalid_argument("add_redundant_features: negative count");
    Dataset out;
    out.name = ds.name;
    out.feature_names = ds.feature_names;
    out.scaling = ds.scaling;
    out.y = ds.y;
    out.n0 = ds.n0;
    out.n1 = ds.n1;
    for (int c = 1; c <= count; ++c) {
        out.feature_names.push_back("redundant_" + std::to_string(c));
        out.scaling.emplace_back(0.0, 1.0);
    }
    Rng rng(mix_seed(seed, 0x8edd));
    const int n = ds.n();
    out.x.reserve(static_cast<size_t>(n) * out.d());
    for (int i = 0; i < n; ++i) {
        const double* r = ds.row(i);
        out.x.insert(out.x.end(), r, r + ds.d());
        for (int c = 0; c < count; ++c) out.x.push_back(rng.uniform());
    }
    return out;
}

void write_csv(const Dataset& ds, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    for (int j = 0; j < ds.d(); ++j) out << ds.feature_names[j] << ",";
    out << "class\n";
    char buf[64];
    for (int i = 0; i < ds.n(); ++i) {
        for (int j = 0; j < ds.d(); ++j) {
            std::snprintf(buf, sizeof(buf), "%.17g", ds.at(i, j));
            out << buf << ",";
        }
        out << ds.y[i] << "\n";
    }
}

}  // namespace svt
