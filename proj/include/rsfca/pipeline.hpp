#ifndef RSFCA_PIPELINE_HPP
#define RSFCA_PIPELINE_HPP

#include "discretize.hpp"
#include "implications.hpp"
#include "rough.hpp"
#include "rule_io.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>

namespace rsfca {

struct PipelineConfig {
    std::string input;
    std::string schema;         // optional
    std::string discretization; // optional; input is then a raw numeric table
    bool split = true;
    double ratio = 0.55;
    std::uint64_t seed = 1;
    std::vector<Code> classes; // empty = every code of the decision domain
    RuleFilter filter;
    Rational threshold{3, 5};
    std::string output_dir = "out";
};

class PipelineError : public Error {
  public:
    PipelineError(std::string stage, const std::string& cause)
        : Error(stage + ": " + cause), stage_(std::move(stage)) {}
    const std::string& stage() const { return stage_; }

  private:
    std::string stage_;
};

/// "0.6" -> 3/5, "3/5" -> 3/5; decimals are read exactly.
inline Rational parse_threshold(std::string_view text) {
    auto t = std::string(detail::trim(text));
    if (t.find('/') != std::string::npos)
        return parse_rational(t);
    auto dot = t.find('.');
    if (dot == std::string::npos)
        return parse_rational(t);
    auto whole = t.substr(0, dot), frac = t.substr(dot + 1);
    if (frac.empty() || frac.size() > 12 || !std::all_of(frac.begin(), frac.end(), ::isdigit) ||
        !std::all_of(whole.begin(), whole.end(), ::isdigit))
        throw Error(detail::concat("not a decimal: '", t, "'"));
    std::int64_t den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i)
        den *= 10;
    std::int64_t num = (whole.empty() ? 0 : std::stoll(whole)) * den + std::stoll(frac);
    return Rational(num, den);
}

/// INI config with [input], [split], [filter], [validation] and [output]
/// sections. Relative paths are resolved against `base_dir`.
inline PipelineConfig read_config(std::istream& in, const std::filesystem::path& base_dir = {}) {
    namespace pt = boost::property_tree;
    pt::ptree tree;
    try {
        pt::read_ini(in, tree);
    } catch (const pt::ini_parser_error& e) {
        throw Error(detail::concat("config: ", e.message(), " (line ", e.line(), ")"));
    }
    auto path = [&](const std::string& key) -> std::string {
        auto v = tree.get<std::string>(key, "");
        v = std::string(detail::trim(v));
        if (v.empty())
            return v;
        std::filesystem::path p(v);
        return (p.is_absolute() || base_dir.empty() ? p : base_dir / p).lexically_normal().string();
    };
    // Unlike get(path, default), a present but malformed value is an error.
    auto typed = [&]<typename T>(const std::string& key, T fallback) -> T {
        auto node = tree.get_child_optional(key);
        return node ? node->get_value<T>() : fallback;
    };
    PipelineConfig c;
    try {
        c.input = path("input.table");
        if (c.input.empty())
            throw Error("[input] table is required");
        c.schema = path("input.schema");
        c.discretization = path("input.discretization");
        for (auto& tok : detail::tokens(tree.get<std::string>("input.classes", "")))
            c.classes.push_back(detail::parse_code(tok));

        c.split = typed("split.enabled", true);
        c.ratio = typed("split.ratio", c.ratio);
        c.seed = typed("split.seed", c.seed);

        c.filter.min_support = typed("filter.min_support", std::size_t{1});
        c.filter.max_premise_len = typed("filter.max_premise_len", std::size_t{0});
        for (auto& tok : detail::tokens(tree.get<std::string>("filter.require", "")))
            c.filter.require.push_back(parse_descriptor(tok));
        for (auto& tok : detail::tokens(tree.get<std::string>("filter.forbid", "")))
            c.filter.forbid.push_back(parse_descriptor(tok));

        c.threshold = parse_threshold(tree.get<std::string>("validation.threshold", "3/5"));
        c.output_dir = path("output.dir");
        if (c.output_dir.empty())
            c.output_dir = (base_dir.empty() ? std::filesystem::path("out") : base_dir / "out").string();
    } catch (const pt::ptree_error& e) {
        throw Error(detail::concat("config: ", e.what()));
    }
    if (c.split && !(c.ratio > 0.0 && c.ratio < 1.0))
        throw Error(detail::concat("config: split ratio must lie in (0,1), got ", c.ratio));
    if (c.threshold < Rational(0) || c.threshold > Rational(1))
        throw Error("config: threshold must lie in [0,1]");
    return c;
}

inline PipelineConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw Error(detail::concat("cannot open config '", path, "'"));
    return read_config(in, std::filesystem::path(path).parent_path());
}

/// Loads (and discretizes, when configured) the input table.
inline DecisionTable load_input(const PipelineConfig& c) {
    std::vector<AttributeSchema> schema;
    if (!c.schema.empty())
        schema = load_schema(c.schema);
    if (!c.discretization.empty())
        return discretize(load_raw_table(c.input), load_discretization(c.discretization), schema);
    return load_table(c.input, schema);
}

inline TrainTestSplit make_split(const PipelineConfig& c, const DecisionTable& table) {
    if (!c.split)
        return {table, table};
    return split_train_test(table, c.ratio, c.seed);
}

/// Everything computed for one decision class, before anything is written.
struct ClassResult {
    Code decision_class = 0;
    std::size_t train_objects = 0;
    std::size_t test_objects = 0;
    RuleInduction induction;
    std::vector<DecisionRule> candidates;
    std::optional<ValidationReport> validation;
    std::vector<DecisionRule> validated;
    std::optional<FormalContext> context;
    std::optional<ConceptLattice> lattice;
    std::vector<Implication> implications;
    std::optional<ChiefFactorReport> chief;
};

/// Rules, validation and concept analysis for one class. A class without
/// training objects yields an empty result rather than an error.
inline ClassResult process_class(const DecisionTable& train, const DecisionTable& test, Code decision_class,
                                 const PipelineConfig& c, std::string* stage = nullptr) {
    auto enter = [&](const char* s) {
        if (stage)
            *stage = s;
    };
    ClassResult r;
    r.decision_class = decision_class;
    enter("rules");
    r.train_objects = class_size(train, decision_class);
    r.test_objects = class_size(test, decision_class);
    if (r.train_objects == 0)
        return r;
    r.induction = induce_rules(train, decision_class);
    enter("filter");
    r.candidates = apply_filter(r.induction.rules, c.filter);
    enter("validate");
    if (!r.candidates.empty()) {
        r.validation = validate_rules(r.candidates, test, c.threshold);
        r.validated = kept_rules(r.candidates, *r.validation);
    }
    enter("fca");
    if (!r.validated.empty()) {
        std::vector<std::string> order;
        for (auto& a : train.attributes())
            order.push_back(a.name);
        r.context = rules_to_context(r.validated, order);
        r.lattice = build_lattice(*r.context, enumerate_concepts(*r.context));
        r.implications = implication_basis(*r.context);
        r.chief = chief_factors(r.implications, r.context->attributes());
    }
    return r;
}

struct KeptRule {
    DecisionRule rule;
    RuleValidation validation;
};

struct ClassReport {
    Code decision_class = 0;
    std::string decision_attribute;
    std::size_t train_objects = 0;
    std::size_t test_objects = 0;
    std::size_t generated = 0;
    std::size_t filtered = 0;
    std::size_t validated = 0;
    std::vector<std::string> conflicting_objects;
    std::vector<KeptRule> kept;
    std::size_t concepts = 0;
    std::size_t implications = 0;
    std::vector<std::pair<std::string, std::size_t>> chief_factors; // ranked
    std::vector<std::string> artifacts; // relative to the output directory
};

struct RunReport {
    std::string input;
    bool split = false;
    double ratio = 0;
    std::uint64_t seed = 0;
    std::size_t train_objects = 0;
    std::size_t test_objects = 0;
    Rational threshold{0};
    std::vector<ClassReport> classes;

    std::size_t total_generated() const {
        std::size_t n = 0;
        for (auto& c : classes)
            n += c.generated;
        return n;
    }
    std::size_t total_filtered() const {
        std::size_t n = 0;
        for (auto& c : classes)
            n += c.filtered;
        return n;
    }
    std::size_t total_validated() const {
        std::size_t n = 0;
        for (auto& c : classes)
            n += c.validated;
        return n;
    }
};

inline std::string render_report(const RunReport& report) {
    std::ostringstream out;
    out << "Rule mining run report\n";
    out << "======================\n";
    if (report.classes.empty())
        return out.str();
    out << "input: " << report.input << '\n';
    if (report.split)
        out << "split: ratio " << report.ratio << ", seed " << report.seed << '\n';
    else
        out << "split: none (train = test)\n";
    out << "objects: train " << report.train_objects << ", test " << report.test_objects << '\n';
    out << "validation threshold: " << floor_percent(report.threshold) << "% (kept when accuracy >= threshold)\n";
    for (const auto& c : report.classes) {
        out << "\nDecision class " << c.decision_attribute << '=' << c.decision_class << '\n';
        out << "  objects: train " << c.train_objects << ", test " << c.test_objects << '\n';
        out << "  rules: generated " << c.generated << ", after filter " << c.filtered << ", after validation "
            << c.validated << '\n';
        if (!c.conflicting_objects.empty()) {
            out << "  conflicting training objects:";
            for (auto& o : c.conflicting_objects)
                out << ' ' << o;
            out << '\n';
        }
        for (std::size_t i = 0; i < c.kept.size(); ++i) {
            const auto& k = c.kept[i];
            out << "  [" << (i + 1) << "] " << k.rule.id << ": " << if_then(k.rule) << '\n';
            out << "      Support: " << k.validation.supported << "  Non-support: " << k.validation.non_supported
                << "  Accuracy: " << (k.validation.accuracy ? floor_percent(*k.validation.accuracy) : 0) << "%\n";
        }
        if (c.validated > 0) {
            out << "  concepts: " << c.concepts << ", implications: " << c.implications << '\n';
            out << "  chief factors:";
            for (auto& [name, freq] : c.chief_factors)
                out << ' ' << name << " (" << freq << ')';
            out << '\n';
        }
        for (auto& a : c.artifacts)
            out << "  artifact: " << a << '\n';
    }
    out << "\nTotals: generated " << report.total_generated() << ", after filter " << report.total_filtered()
        << ", after validation " << report.total_validated() << '\n';
    return out.str();
}

inline nlohmann::json report_json(const RunReport& report) {
    using nlohmann::json;
    json j;
    j["input"] = report.input;
    j["split"] = {{"enabled", report.split}, {"ratio", report.ratio}, {"seed", report.seed}};
    j["objects"] = {{"train", report.train_objects}, {"test", report.test_objects}};
    j["threshold"] = to_string(report.threshold);
    j["totals"] = {{"generated", report.total_generated()},
                   {"filtered", report.total_filtered()},
                   {"validated", report.total_validated()}};
    j["classes"] = json::array();
    for (const auto& c : report.classes) {
        json jc;
        jc["class"] = c.decision_class;
        jc["objects"] = {{"train", c.train_objects}, {"test", c.test_objects}};
        jc["counts"] = {{"generated", c.generated}, {"filtered", c.filtered}, {"validated", c.validated}};
        jc["conflicting_objects"] = c.conflicting_objects;
        jc["rules"] = json::array();
        for (auto& k : c.kept) {
            json premise = json::array();
            for (auto& d : k.rule.premise)
                premise.push_back(to_string(d));
            jc["rules"].push_back({{"id", k.rule.id},
                                   {"premise", premise},
                                   {"conclusion", to_string(k.rule.conclusion)},
                                   {"support_objects", k.rule.support_objects},
                                   {"strength", to_string(k.rule.metrics.strength)},
                                   {"class_strength", to_string(k.rule.metrics.class_strength)},
                                   {"supported", k.validation.supported},
                                   {"non_supported", k.validation.non_supported},
                                   {"accuracy", k.validation.accuracy ? to_string(*k.validation.accuracy) : "-"}});
        }
        jc["concepts"] = c.concepts;
        jc["implications"] = c.implications;
        json chief = json::array();
        for (auto& [name, freq] : c.chief_factors)
            chief.push_back({{"attribute", name}, {"frequency", freq}});
        jc["chief_factors"] = chief;
        jc["artifacts"] = c.artifacts;
        j["classes"].push_back(jc);
    }
    return j;
}

namespace detail {

inline void write_file(const std::filesystem::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary);
    if (!out)
        throw Error(concat("cannot write '", p.string(), "'"));
    out << text;
}

template <typename F> std::string capture(F&& f) {
    std::ostringstream s;
    f(s);
    return s.str();
}

inline constexpr const char* incomplete_marker = "INCOMPLETE";

} // namespace detail

/// Load, discretize, split, then per class: rules, filter, validation and
/// concept analysis. Artifacts go to per-class subdirectories of the output
/// directory; the human and JSON reports sit at its top. A failing stage
/// leaves an INCOMPLETE file naming the stage and cause, and throws.
inline RunReport run_pipeline(const PipelineConfig& c) {
    namespace fs = std::filesystem;
    std::string stage = "output";
    const fs::path out_dir(c.output_dir);
    try {
        fs::create_directories(out_dir);
        fs::remove(out_dir / detail::incomplete_marker);

        stage = "load";
        DecisionTable table = load_input(c);
        stage = "split";
        auto split = make_split(c, table);

        RunReport report;
        report.input = fs::path(c.input).filename().string();
        report.split = c.split;
        report.ratio = c.split ? c.ratio : 1.0;
        report.seed = c.seed;
        report.train_objects = split.train.object_count();
        report.test_objects = split.test.object_count();
        report.threshold = c.threshold;

        const auto d = table.decision_index();
        auto classes = c.classes;
        if (classes.empty())
            classes = table.attribute(d).domain;

        for (auto k : classes) {
            stage = "rules";
            if (!table.attribute(d).admits(k))
                throw Error(detail::concat("decision class ", k, " is not in the decision domain"));
            auto r = process_class(split.train, split.test, k, c, &stage);

            ClassReport cr;
            cr.decision_class = k;
            cr.decision_attribute = table.attribute(d).name;
            cr.train_objects = r.train_objects;
            cr.test_objects = r.test_objects;
            cr.generated = r.induction.rules.size();
            cr.filtered = r.candidates.size();
            cr.validated = r.validated.size();
            cr.conflicting_objects = r.induction.conflicting_objects;
            if (r.validation)
                for (std::size_t i = 0, v = 0; i < r.candidates.size(); ++i)
                    if (r.validation->entries[i].verdict == Verdict::kept)
                        cr.kept.push_back({r.validated[v++], r.validation->entries[i]});
            if (r.lattice) {
                cr.concepts = r.lattice->size();
                cr.implications = r.implications.size();
                for (auto m : r.chief->ranking)
                    cr.chief_factors.emplace_back(r.chief->attributes[m], r.chief->factors[m].frequency);
            }

            stage = "write";
            if (r.train_objects > 0) {
                const auto sub = "class_" + std::to_string(k);
                fs::create_directories(out_dir / sub);
                auto emit = [&](const std::string& name, const std::string& text) {
                    detail::write_file(out_dir / sub / name, text);
                    cr.artifacts.push_back(sub + "/" + name);
                };
                emit("rules_generated.txt", detail::capture([&](auto& s) { write_rules(s, r.induction.rules); }));
                emit("rules_candidate.txt", detail::capture([&](auto& s) { write_rules(s, r.candidates); }));
                if (r.validation)
                    emit("validation.txt",
                         detail::capture([&](auto& s) { write_validation(s, r.candidates, *r.validation); }));
                emit("rules_validated.txt", detail::capture([&](auto& s) { write_rules(s, r.validated); }));
                if (r.context) {
                    emit("context.cxt", detail::capture([&](auto& s) { write_cxt(s, *r.context); }));
                    emit("concepts.txt", detail::capture([&](auto& s) {
                             write_concepts(s, *r.context, r.lattice->concepts());
                         }));
                    emit("lattice.dot", export_dot(*r.context, *r.lattice));
                    emit("implications.txt",
                         detail::capture([&](auto& s) { write_implications(s, *r.context, r.implications); }));
                    emit("chief_factors.txt", detail::capture([&](auto& s) { write_chief_factors(s, *r.chief); }));
                }
            }
            report.classes.push_back(std::move(cr));
        }

        stage = "report";
        detail::write_file(out_dir / "report.txt", render_report(report));
        detail::write_file(out_dir / "report.json", report_json(report).dump(2) + "\n");
        return report;
    } catch (const std::exception& e) {
        std::error_code ec;
        fs::create_directories(out_dir, ec);
        std::ofstream marker(out_dir / detail::incomplete_marker);
        marker << "stage: " << stage << "\ncause: " << e.what() << '\n';
        throw PipelineError(stage, e.what());
    }
}

} // namespace rsfca

#endif
