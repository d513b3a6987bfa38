#include "fixtures.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace rsfca;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    auto p = fs::temp_directory_path() / ("rsfca_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::map<std::string, std::string> tree_contents(const fs::path& root) {
    std::map<std::string, std::string> out;
    for (auto& e : fs::recursive_directory_iterator(root))
        if (e.is_regular_file())
            out[fs::relative(e.path(), root).string()] = slurp(e.path());
    return out;
}

PipelineConfig table2_config(const fs::path& out) {
    auto c = load_config(RSFCA_DATA_DIR "/table2.ini");
    c.output_dir = out.string();
    return c;
}

struct Shell {
    int status;
    std::string out;
};

Shell shell(const std::string& args) {
    std::string cmd = std::string(RSFCA_CLI) + " " + args + " 2>&1";
    Shell r{-1, ""};
    FILE* p = popen(cmd.c_str(), "r");
    if (!p)
        return r;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0)
        r.out.append(buf, n);
    int st = pclose(p);
    r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return r;
}

} // namespace

TEST(Config, Table2File) {
    auto c = load_config(RSFCA_DATA_DIR "/table2.ini");
    EXPECT_EQ(fs::path(c.input).filename(), "table2.csv");
    EXPECT_TRUE(fs::path(c.input).is_absolute());
    EXPECT_FALSE(c.split);
    EXPECT_EQ(c.threshold, Rational(3, 5));
    EXPECT_EQ(c.filter.max_premise_len, 0u);
}

TEST(Config, FilterAndDefaults) {
    std::istringstream in("[input]\ntable = t.csv\nclasses = 2 1\n[filter]\nrequire = a1=1, a2=3\nforbid = a5=5\n"
                          "min_support = 2\n");
    auto c = read_config(in, "/base");
    EXPECT_EQ(c.input, "/base/t.csv");
    EXPECT_EQ(c.classes, (std::vector<Code>{2, 1}));
    EXPECT_EQ(c.filter.require, (std::vector<Descriptor>{{"a1", 1}, {"a2", 3}}));
    EXPECT_EQ(c.filter.forbid, (std::vector<Descriptor>{{"a5", 5}}));
    EXPECT_EQ(c.filter.min_support, 2u);
    EXPECT_TRUE(c.split);
    EXPECT_DOUBLE_EQ(c.ratio, 0.55);
    EXPECT_EQ(c.output_dir, "/base/out");
}

TEST(Config, Errors) {
    auto bad = [](const std::string& text) {
        std::istringstream in(text);
        EXPECT_THROW(read_config(in), Error) << text;
    };
    bad("[split]\nratio = 0.5\n");
    bad("[input]\ntable = t.csv\n[split]\nratio = 1.5\n");
    bad("[input]\ntable = t.csv\n[validation]\nthreshold = 1.2\n");
    bad("[input]\ntable = t.csv\n[validation]\nthreshold = high\n");
    bad("[input]\ntable = t.csv\n[filter]\nmin_support = x\n");
    bad("[input]\ntable = t.csv\n[filter]\nrequire = a1\n");
    EXPECT_THROW(load_config("/nonexistent.ini"), Error);
}

TEST(Config, ThresholdParsing) {
    EXPECT_EQ(parse_threshold("0.6"), Rational(3, 5));
    EXPECT_EQ(parse_threshold("3/5"), Rational(3, 5));
    EXPECT_EQ(parse_threshold(".75"), Rational(3, 4));
    EXPECT_EQ(parse_threshold("1"), Rational(1));
    EXPECT_THROW(parse_threshold("0.x"), Error);
    EXPECT_THROW(parse_threshold("-0.5"), Error);
}

TEST(Pipeline, Table2Artifacts) {
    auto out = scratch("table2_artifacts");
    auto report = run_pipeline(table2_config(out));
    ASSERT_EQ(report.classes.size(), 2u);
    for (auto& c : report.classes) {
        EXPECT_GE(c.generated, c.filtered);
        EXPECT_GE(c.filtered, c.validated);
        // Certain rules validated on their own training data never fail.
        EXPECT_EQ(c.validated, c.filtered);
        for (auto& a : c.artifacts)
            EXPECT_TRUE(fs::exists(out / a)) << a;
    }
    for (auto name : {"rules_generated.txt", "rules_candidate.txt", "validation.txt", "rules_validated.txt",
                      "context.cxt", "concepts.txt", "lattice.dot", "implications.txt", "chief_factors.txt"})
        EXPECT_TRUE(fs::exists(out / "class_1" / name)) << name;
    EXPECT_TRUE(fs::exists(out / "report.txt"));
    EXPECT_FALSE(fs::exists(out / "INCOMPLETE"));

    auto rules = load_rules((out / "class_1" / "rules_validated.txt").string());
    EXPECT_EQ(rules.size(), report.classes[0].validated);
    auto ctx = load_cxt((out / "class_1" / "context.cxt").string());
    EXPECT_EQ(ctx.object_count(), rules.size());

    auto text = slurp(out / "report.txt");
    EXPECT_NE(text.find("Decision class d=1"), std::string::npos);
    EXPECT_NE(text.find("IF a2=2, a5=5 THEN d=1"), std::string::npos) << text;
    EXPECT_NE(text.find("Support: 2  Non-support: 0  Accuracy: 100%"), std::string::npos) << text;

    auto json = nlohmann::json::parse(slurp(out / "report.json"));
    EXPECT_EQ(json["classes"].size(), 2u);
    EXPECT_EQ(json["totals"]["validated"], report.total_validated());
}

TEST(Pipeline, DeterministicAcrossRuns) {
    auto a = scratch("det_a"), b = scratch("det_b");
    for (auto cfg : {std::string(RSFCA_DATA_DIR "/table2.ini"), std::string(RSFCA_DATA_DIR "/heart.ini")}) {
        auto c = load_config(cfg);
        c.output_dir = a.string();
        run_pipeline(c);
        c.output_dir = b.string();
        run_pipeline(c);
        auto ta = tree_contents(a), tb = tree_contents(b);
        EXPECT_FALSE(ta.empty());
        EXPECT_EQ(ta, tb) << cfg;
    }
}

TEST(Pipeline, SeedChangesTheSplit) {
    auto c = load_config(RSFCA_DATA_DIR "/heart.ini");
    auto table = load_input(c);
    auto s1 = make_split(c, table);
    c.seed += 1;
    auto s2 = make_split(c, table);
    EXPECT_NE(s1.train.objects(), s2.train.objects());
    EXPECT_EQ(s1.train.object_count(), 33u);
}

TEST(Pipeline, HeartSampleFunnel) {
    auto out = scratch("heart");
    auto c = load_config(RSFCA_DATA_DIR "/heart.ini");
    c.output_dir = out.string();
    auto report = run_pipeline(c);
    EXPECT_EQ(report.train_objects + report.test_objects, 60u);
    EXPECT_GT(report.total_generated(), 0u);
    for (auto& cl : report.classes) {
        EXPECT_GE(cl.generated, cl.filtered);
        EXPECT_GE(cl.filtered, cl.validated);
    }
}

TEST(Pipeline, FunnelOnRandomTables) {
    std::mt19937_64 rng(79);
    auto dir = scratch("random");
    for (int i = 0; i < 25; ++i) {
        auto t = fixtures::random_table(rng, 8 + rng() % 30, 2 + rng() % 5, 2 + rng() % 3, 2 + rng() % 2);
        auto csv = dir / ("t" + std::to_string(i) + ".csv");
        save_table(csv.string(), t);
        PipelineConfig c;
        c.input = csv.string();
        c.ratio = 0.6;
        c.seed = rng();
        c.filter.min_support = 1 + rng() % 2;
        c.filter.max_premise_len = rng() % 4;
        c.threshold = Rational(static_cast<std::int64_t>(rng() % 11), 10);
        c.output_dir = (dir / ("out" + std::to_string(i))).string();
        auto report = run_pipeline(c);
        for (auto& cl : report.classes) {
            EXPECT_GE(cl.generated, cl.filtered);
            EXPECT_GE(cl.filtered, cl.validated);
            EXPECT_EQ(cl.kept.size(), cl.validated);
        }
        EXPECT_GE(report.total_generated(), report.total_filtered());
        EXPECT_GE(report.total_filtered(), report.total_validated());
    }
}

TEST(Pipeline, FailureLeavesMarker) {
    auto out = scratch("fail");
    PipelineConfig c;
    c.input = (out / "missing.csv").string();
    c.output_dir = out.string();
    try {
        run_pipeline(c);
        FAIL() << "expected an error";
    } catch (const PipelineError& e) {
        EXPECT_EQ(e.stage(), "load");
    }
    auto marker = slurp(out / "INCOMPLETE");
    EXPECT_NE(marker.find("stage: load"), std::string::npos) << marker;
    EXPECT_FALSE(fs::exists(out / "report.txt"));

    auto c2 = table2_config(out);
    c2.classes = {7};
    EXPECT_THROW(run_pipeline(c2), PipelineError);
    c2.classes = {1};
    run_pipeline(c2);
    EXPECT_FALSE(fs::exists(out / "INCOMPLETE"));
}

TEST(Pipeline, EmptyFilterResultStillReports) {
    auto out = scratch("empty_filter");
    auto c = table2_config(out);
    c.filter.min_support = 100;
    auto report = run_pipeline(c);
    for (auto& cl : report.classes) {
        EXPECT_GT(cl.generated, 0u);
        EXPECT_EQ(cl.filtered, 0u);
        EXPECT_EQ(cl.validated, 0u);
    }
    EXPECT_FALSE(fs::exists(out / "class_1" / "context.cxt"));
}

TEST(Cli, RunWritesReport) {
    auto out = scratch("cli_run");
    auto r = shell(std::string("run --config ") + RSFCA_DATA_DIR "/table2.ini --output " + out.string());
    EXPECT_EQ(r.status, 0) << r.out;
    EXPECT_NE(r.out.find("Rule mining run report"), std::string::npos);
    EXPECT_TRUE(fs::exists(out / "report.json"));
}

TEST(Cli, RulesValidateAndConcepts) {
    auto out = scratch("cli_tools");
    auto rules_file = (out / "rules.txt").string();
    auto r = shell(std::string("rules --table ") + RSFCA_DATA_DIR "/table2.csv --class 1 --stage generated --output " +
                   rules_file);
    ASSERT_EQ(r.status, 0) << r.out;
    auto rules = load_rules(rules_file);
    EXPECT_EQ(rules.size(), induce_rules(fixtures::table2(), 1).rules.size());

    auto v = shell("validate --rules " + rules_file + " --test " RSFCA_DATA_DIR "/table2.csv --threshold 3/5");
    EXPECT_EQ(v.status, 0) << v.out;
    EXPECT_NE(v.out.find("100%\tkept"), std::string::npos) << v.out;

    auto dot = (out / "lattice.dot").string();
    auto cxt = (out / "context.cxt").string();
    auto l = shell(std::string("lattice --table ") + RSFCA_DATA_DIR "/table2.csv --class 1 --dot " + dot +
                   " --cxt " + cxt + " --implications");
    EXPECT_EQ(l.status, 0) << l.out;
    EXPECT_EQ(slurp(dot).rfind("digraph lattice {", 0), 0u);

    auto c = shell("concepts --context " + cxt);
    EXPECT_EQ(c.status, 0) << c.out;
    auto ctx = load_cxt(cxt);
    std::size_t lines = std::count(c.out.begin(), c.out.end(), '\n');
    EXPECT_EQ(lines, enumerate_concepts(ctx).size());
}

TEST(Cli, ApproxAndReducts) {
    auto a = shell(std::string("approx --table ") + RSFCA_DATA_DIR "/table2.csv --attributes a1,a2,a3,a6 "
                                                                 "--objects p1,p6,p9,p10");
    EXPECT_EQ(a.status, 0) << a.out;
    EXPECT_NE(a.out.find("lower: {p6, p9, p10}"), std::string::npos) << a.out;
    EXPECT_NE(a.out.find("accuracy: 3/5"), std::string::npos) << a.out;
    auto r = shell(std::string("reducts --table ") + RSFCA_DATA_DIR "/table2.csv --attributes a1,a2,a3,a6");
    EXPECT_EQ(r.status, 0) << r.out;
    EXPECT_NE(r.out.find("core: {a1, a2, a3}"), std::string::npos) << r.out;
}

TEST(Cli, Discretize) {
    auto d = shell(std::string("discretize --input ") + RSFCA_DATA_DIR "/heart_sample.csv --spec " RSFCA_DATA_DIR
                                                                     "/table6.disc");
    EXPECT_EQ(d.status, 0) << d.out;
    std::istringstream in(d.out);
    EXPECT_EQ(read_table(in).object_count(), 60u);
}

TEST(Cli, ErrorsExitNonZero) {
    EXPECT_NE(shell("").status, 0);
    EXPECT_NE(shell("run --config /nonexistent.ini").status, 0);
    auto r = shell(std::string("rules --table ") + RSFCA_DATA_DIR "/table2.csv --class 9");
    EXPECT_EQ(r.status, 1);
    EXPECT_NE(r.out.find("error:"), std::string::npos) << r.out;
}
