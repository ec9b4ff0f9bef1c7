#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

const std::string cli = SVRTREE_CLI_PATH;

struct Sandbox {
    fs::path dir;
    Sandbox() {
        dir = fs::temp_directory_path() / ("svt_cli_" + std::to_string(::getpid()));
        fs::remove_all(dir);
        fs::create_directories(dir);
    }
    ~Sandbox() { fs::remove_all(dir); }
    std::string path(const std::string& name) const { return (dir / name).string(); }
};

int run(const std::string& args, const std::string& stdout_file = "") {
    std::string cmd = "SOURCE_DATE_EPOCH=1700000000 " + cli + " " + args;
    if (!stdout_file.empty()) cmd += " > " + stdout_file;
    cmd += " 2>/dev/null";
    int rc = std::system(cmd.c_str());
    return WEXITSTATUS(rc);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("toy generates the documented row count and is seed-deterministic") {
    Sandbox sb;
    CHECK(run("toy --seed 5 --out " + sb.path("a.csv")) == 0);
    std::string a = slurp(sb.path("a.csv"));
    CHECK(std::count(a.begin(), a.end(), '\n') == 206);  // header + 205 rows
    CHECK(run("toy --seed 5 --out " + sb.path("b.csv")) == 0);
    CHECK(slurp(sb.path("b.csv")) == a);
    CHECK(run("toy --seed 6 --out " + sb.path("c.csv")) == 0);
    CHECK(slurp(sb.path("c.csv")) != a);
    // manifest emitted alongside, identical across reruns under a pinned epoch
    CHECK(fs::exists(sb.path("a.csv.manifest.json")));
    std::string manifest_first = slurp(sb.path("a.csv.manifest.json"));
    CHECK(run("toy --seed 5 --force --out " + sb.path("a.csv")) == 0);
    CHECK(slurp(sb.path("a.csv.manifest.json")) == manifest_first);

    // refusing to overwrite without --force
    CHECK(run("toy --seed 5 --out " + sb.path("a.csv")) == 1);
    // minority-free generation is allowed
    CHECK(run("toy --n-min 0 --n-maj 7 --out " + sb.path("d.csv")) == 0);
    std::string d_csv = slurp(sb.path("d.csv"));
    CHECK(std::count(d_csv.begin(), d_csv.end(), '\n') == 8);
}

TEST_CASE("fit, predict and inspect round trip") {
    Sandbox sb;
    REQUIRE(run("toy --seed 7 --out " + sb.path("toy.csv")) == 0);
    CHECK(run("fit --data " + sb.path("toy.csv") + " --lambda 0.005 --out " +
              sb.path("model.json")) == 0);
    CHECK(fs::exists(sb.path("model.json")));
    CHECK(fs::exists(sb.path("model.json.manifest.json")));

    // byte-identical refit
    CHECK(run("fit --data " + sb.path("toy.csv") + " --lambda 0.005 --out " +
              sb.path("model2.json")) == 0);
    CHECK(slurp(sb.path("model.json")) == slurp(sb.path("model2.json")));

    CHECK(run("predict --model " + sb.path("model.json") + " --data " + sb.path("toy.csv") +
              " --out " + sb.path("pred.csv")) == 0);
    std::string pred = slurp(sb.path("pred.csv"));
    CHECK(pred.find("row,label\n") == 0);
    CHECK(std::count(pred.begin(), pred.end(), '\n') == 206);

    CHECK(run("svr-inspect --model " + sb.path("model.json"), sb.path("inspect.txt")) == 0);
    std::string report = slurp(sb.path("inspect.txt"));
    CHECK(report.find("SVR=") != std::string::npos);

    // single-leaf override: --max-leaves 1
    CHECK(run("fit --data " + sb.path("toy.csv") + " --lambda 0 --max-leaves 1 --out " +
              sb.path("leaf.json")) == 0);
    std::string leaf_model = slurp(sb.path("leaf.json"));
    CHECK(leaf_model.find("\"label\"") != std::string::npos);
    CHECK(leaf_model.find("\"feature\"") == std::string::npos);
}

TEST_CASE("svr-inspect reports the empty decision set convention") {
    Sandbox sb;
    REQUIRE(run("toy --n-min 0 --n-maj 30 --seed 2 --out " + sb.path("maj.csv")) == 0);
    REQUIRE(run("fit --data " + sb.path("maj.csv") + " --lambda 0 --out " + sb.path("m.json")) ==
            0);
    CHECK(run("svr-inspect --model " + sb.path("m.json"), sb.path("out.txt")) == 0);
    CHECK(slurp(sb.path("out.txt")).find("SVR=0 (empty decision set)") != std::string::npos);
}

TEST_CASE("exit codes: usage 2, data errors 1") {
    Sandbox sb;
    CHECK(run("fit --nonsense-flag") == 2);
    CHECK(run("definitely-not-a-command") == 2);
    CHECK(run("fit --data /does/not/exist.csv --out " + sb.path("x.json")) == 1);

    // dimension mismatch between model and data
    REQUIRE(run("toy --seed 1 --out " + sb.path("toy.csv")) == 0);
    REQUIRE(run("fit --data " + sb.path("toy.csv") + " --out " + sb.path("m.json")) == 0);
    std::ofstream one_d(sb.path("one.csv"));
    one_d << "a,cls\n0.1,0\n0.9,1\n";
    one_d.close();
    CHECK(run("predict --model " + sb.path("m.json") + " --data " + sb.path("one.csv")) == 1);
}

TEST_CASE("predict on empty input produces only the header") {
    Sandbox sb;
    REQUIRE(run("toy --seed 1 --out " + sb.path("toy.csv")) == 0);
    REQUIRE(run("fit --data " + sb.path("toy.csv") + " --out " + sb.path("m.json")) == 0);
    // header-only csv: no data rows
    std::ofstream empty(sb.path("empty.csv"));
    empty << "x1,x2,class\n";
    empty.close();
    // loader treats no-rows as an error for fit, but predict should surface it too
    CHECK(run("predict --model " + sb.path("m.json") + " --data " + sb.path("empty.csv")) == 1);
}

TEST_CASE("bench smoke run emits deterministic reports") {
    Sandbox sb;
    REQUIRE(run("toy --seed 9 --n-min 25 --n-maj 120 --out " + sb.path("toy.csv")) == 0);
    std::ofstream spec(sb.path("toy.spec"));
    spec << "name = toy\npath = toy.csv\nformat = csv\npositive_classes = 1\n";
    spec.close();

    std::string base = "bench --datasets " + sb.dir.string() + " --methods duplicate,svr --reps 1 "
                       "--seed 3 --knn 3 ";
    CHECK(run(base + "--out " + sb.path("out1")) == 0);
    CHECK(fs::exists(sb.path("out1/report.csv")));
    CHECK(fs::exists(sb.path("out1/report.json")));
    CHECK(fs::exists(sb.path("out1/report.txt")));
    CHECK(fs::exists(sb.path("out1/manifest.json")));
    std::string csv = slurp(sb.path("out1/report.csv"));
    CHECK(csv.find("toy,duplicate,accuracy,") != std::string::npos);
    CHECK(csv.find("toy,svr,f_measure,") != std::string::npos);
    // 2 methods x 5 metrics + header
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 11);

    CHECK(run(base + "--out " + sb.path("out2")) == 0);
    CHECK(slurp(sb.path("out2/report.csv")) == csv);
    CHECK(slurp(sb.path("out2/report.json")) == slurp(sb.path("out1/report.json")));

    // parallel run produces the identical report
    int rc = std::system(("SVRTREE_THREADS=4 SOURCE_DATE_EPOCH=1700000000 " + cli + " " + base +
                          "--out " + sb.path("out3") + " >/dev/null 2>&1")
                             .c_str());
    CHECK(WEXITSTATUS(rc) == 0);
    CHECK(slurp(sb.path("out3/report.csv")) == csv);

    // an empty spec directory fails
    fs::create_directories(sb.path("nospecs"));
    CHECK(run("bench --datasets " + sb.path("nospecs") + " --out " + sb.path("out4")) == 1);
}
