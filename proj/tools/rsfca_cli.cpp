// Command-line front end for the rough-set / concept-lattice rule miner.
#include <rsfca/rsfca.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace {

using namespace rsfca;

std::vector<AttributeSchema> maybe_schema(const std::string& path) {
    return path.empty() ? std::vector<AttributeSchema>{} : load_schema(path);
}

void write_to(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error("cannot write '" + path + "'");
    out << text;
}

struct TableSource {
    std::string config;
    std::string table;
    std::string schema;
    std::optional<std::uint64_t> seed;
    std::optional<double> ratio;

    void add_options(CLI::App* cmd) {
        auto* cfg = cmd->add_option("--config", config, "Pipeline config (INI)")->check(CLI::ExistingFile);
        auto* tbl = cmd->add_option("--table", table, "Coded decision table (CSV)")->check(CLI::ExistingFile);
        cfg->excludes(tbl);
        cmd->add_option("--schema", schema, "Attribute schema for --table")->check(CLI::ExistingFile)->needs(tbl);
        cmd->add_option("--seed", seed, "Override the split seed")->needs(cfg);
        cmd->add_option("--ratio", ratio, "Override the split ratio")->needs(cfg);
    }

    PipelineConfig resolve() const {
        PipelineConfig c;
        if (!config.empty()) {
            c = load_config(config);
        } else if (!table.empty()) {
            c.input = table;
            c.schema = schema;
            c.split = false;
        } else {
            throw Error("either --config or --table is required");
        }
        if (seed)
            c.seed = *seed;
        if (ratio) {
            if (!(*ratio > 0.0 && *ratio < 1.0))
                throw Error("--ratio must lie in (0,1)");
            c.ratio = *ratio;
            c.split = true;
        }
        return c;
    }
};

struct ClassRun {
    PipelineConfig config;
    ClassResult result;
};

ClassRun run_class(const TableSource& src, Code k) {
    ClassRun out{src.resolve(), {}};
    auto table = load_input(out.config);
    auto split = make_split(out.config, table);
    out.result = process_class(split.train, split.test, k, out.config);
    if (out.result.train_objects == 0)
        throw Error(detail::concat("decision class ", k, " has no training objects"));
    return out;
}

int cmd_run(const std::string& config, std::optional<std::uint64_t> seed, std::optional<double> ratio,
            const std::string& output, bool quiet) {
    auto c = load_config(config);
    if (seed)
        c.seed = *seed;
    if (ratio) {
        c.ratio = *ratio;
        c.split = true;
    }
    if (!output.empty())
        c.output_dir = output;
    auto report = run_pipeline(c);
    if (!quiet)
        std::cout << render_report(report);
    std::cerr << "wrote " << c.output_dir << '\n';
    return 0;
}

int cmd_rules(const TableSource& src, Code k, const std::string& stage, const std::string& output) {
    auto run = run_class(src, k);
    const auto& r = run.result;
    std::ostringstream s;
    if (stage == "generated")
        write_rules(s, r.induction.rules);
    else if (stage == "candidate")
        write_rules(s, r.candidates);
    else
        write_rules(s, r.validated);
    write_to(output, s.str());
    for (auto& id : r.induction.conflicting_objects)
        std::cerr << "conflicting object: " << id << '\n';
    return 0;
}

int cmd_validate(const std::string& rules_path, const std::string& test_path, const std::string& schema,
                 const std::string& threshold, const std::string& kept_out) {
    auto rules = load_rules(rules_path);
    auto test = load_table(test_path, maybe_schema(schema));
    auto report = validate_rules(rules, test, parse_threshold(threshold));
    write_validation(std::cout, rules, report);
    if (!kept_out.empty()) {
        std::ostringstream s;
        write_rules(s, kept_rules(rules, report));
        write_to(kept_out, s.str());
    }
    return 0;
}

void print_concepts(const FormalContext& ctx, const std::string& dot, bool implications) {
    auto concepts = enumerate_concepts(ctx);
    auto lattice = build_lattice(ctx, concepts);
    write_concepts(std::cout, ctx, concepts);
    if (!dot.empty())
        write_to(dot, export_dot(ctx, lattice));
    if (implications) {
        auto basis = implication_basis(ctx);
        std::cout << '\n';
        write_implications(std::cout, ctx, basis);
        std::cout << '\n';
        write_chief_factors(std::cout, chief_factors(basis, ctx.attributes()));
    }
}

int cmd_lattice(const TableSource& src, Code k, const std::string& dot, const std::string& cxt, bool implications) {
    auto run = run_class(src, k);
    if (!run.result.context)
        throw Error(detail::concat("decision class ", k, " has no validated rules"));
    if (!cxt.empty())
        write_to(cxt, detail::capture([&](auto& s) { write_cxt(s, *run.result.context); }));
    print_concepts(*run.result.context, dot, implications);
    return 0;
}

int cmd_approx(const std::string& table, const std::string& schema, const std::vector<std::string>& attrs,
               const std::vector<std::string>& objects) {
    auto t = load_table(table, maybe_schema(schema));
    auto p = indiscernibility_partition(t, std::span<const std::string>(attrs));
    auto r = approximate(p, t.object_set(std::span<const std::string>(objects)));
    auto list = [&](const IndexSet& s) {
        std::string out;
        for (auto& id : t.object_ids(s))
            out += (out.empty() ? "" : ", ") + id;
        return "{" + out + "}";
    };
    std::cout << "partition:";
    for (std::size_t b = 0; b < p.blocks.size(); ++b)
        std::cout << ' ' << list(p.block_set(b));
    std::cout << "\nlower: " << list(r.lower) << "\nupper: " << list(r.upper) << "\nboundary: " << list(r.boundary)
              << "\naccuracy: " << to_string(r.accuracy) << '\n';
    return 0;
}

int cmd_reducts(const std::string& table, const std::string& schema, std::vector<std::string> attrs) {
    auto t = load_table(table, maybe_schema(schema));
    std::vector<std::size_t> P;
    if (attrs.empty())
        P = t.condition_indices();
    else
        P = t.attribute_indices(std::span<const std::string>(attrs));
    auto names = [&](const AttributeList& l) {
        std::string out;
        for (auto a : l)
            out += (out.empty() ? "" : ", ") + t.attribute(a).name;
        return "{" + out + "}";
    };
    auto r = reducts_and_core(t, std::span<const std::size_t>(P));
    for (auto& red : r.reducts)
        std::cout << "reduct: " << names(red) << '\n';
    std::cout << "core: " << names(r.core) << '\n';
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Rough-set rule induction and formal concept analysis"};
    app.require_subcommand(1);

    std::string config, output;
    std::optional<std::uint64_t> seed;
    std::optional<double> ratio;
    bool quiet = false;
    auto* run = app.add_subcommand("run", "Run the whole pipeline from a config file");
    run->add_option("--config", config, "Pipeline config (INI)")->required()->check(CLI::ExistingFile);
    run->add_option("--seed", seed, "Override the split seed");
    run->add_option("--ratio", ratio, "Override the split ratio")->check(CLI::Range(0.0, 1.0));
    run->add_option("--output", output, "Override the output directory");
    run->add_flag("--quiet", quiet, "Do not print the report");

    TableSource rules_src;
    Code rules_class = 0;
    std::string rules_stage = "validated", rules_out;
    auto* rules = app.add_subcommand("rules", "Print the rules of one decision class");
    rules_src.add_options(rules);
    rules->add_option("--class", rules_class, "Decision class code")->required();
    rules->add_option("--stage", rules_stage, "generated, candidate or validated")
        ->check(CLI::IsMember({"generated", "candidate", "validated"}));
    rules->add_option("--output", rules_out, "Write the rule file here instead of stdout");

    std::string v_rules, v_test, v_schema, v_threshold = "0.6", v_kept;
    auto* validate = app.add_subcommand("validate", "Score a rule file against a test table");
    validate->add_option("--rules", v_rules, "Rule file")->required()->check(CLI::ExistingFile);
    validate->add_option("--test", v_test, "Coded test table (CSV)")->required()->check(CLI::ExistingFile);
    validate->add_option("--schema", v_schema, "Attribute schema for the test table")->check(CLI::ExistingFile);
    validate->add_option("--threshold", v_threshold, "Minimum accuracy to keep a rule (0.6 or 3/5)");
    validate->add_option("--kept", v_kept, "Write the kept rules here");

    TableSource lat_src;
    Code lat_class = 0;
    std::string lat_dot, lat_cxt;
    bool lat_imps = false;
    auto* lattice = app.add_subcommand("lattice", "Concept lattice of one class's validated rules");
    lat_src.add_options(lattice);
    lattice->add_option("--class", lat_class, "Decision class code")->required();
    lattice->add_option("--dot", lat_dot, "Write Graphviz output here");
    lattice->add_option("--cxt", lat_cxt, "Write the formal context here");
    lattice->add_flag("--implications", lat_imps, "Also print the implication basis and chief factors");

    std::string c_context, c_dot;
    bool c_imps = false;
    auto* concepts = app.add_subcommand("concepts", "Enumerate the concepts of a Burmeister context");
    concepts->add_option("--context", c_context, "Context file (.cxt)")->required()->check(CLI::ExistingFile);
    concepts->add_option("--dot", c_dot, "Write Graphviz output here");
    concepts->add_flag("--implications", c_imps, "Also print the implication basis and chief factors");

    std::string d_input, d_spec, d_schema, d_out;
    auto* disc = app.add_subcommand("discretize", "Code a numeric table with interval bins");
    disc->add_option("--input", d_input, "Raw numeric table (CSV)")->required()->check(CLI::ExistingFile);
    disc->add_option("--spec", d_spec, "Discretization file")->required()->check(CLI::ExistingFile);
    disc->add_option("--schema", d_schema, "Attribute schema for the coded table")->check(CLI::ExistingFile);
    disc->add_option("--output", d_out, "Write the coded table here instead of stdout");

    std::string a_table, a_schema;
    std::vector<std::string> a_attrs, a_objects;
    auto* approx = app.add_subcommand("approx", "Lower and upper approximation of an object set");
    approx->add_option("--table", a_table, "Coded table (CSV)")->required()->check(CLI::ExistingFile);
    approx->add_option("--schema", a_schema, "Attribute schema")->check(CLI::ExistingFile);
    approx->add_option("--attributes", a_attrs, "Attributes of the partition")->required()->delimiter(',');
    approx->add_option("--objects", a_objects, "Target object ids")->required()->delimiter(',');

    std::string r_table, r_schema;
    std::vector<std::string> r_attrs;
    auto* reducts = app.add_subcommand("reducts", "Reducts and core of an attribute set");
    reducts->add_option("--table", r_table, "Coded table (CSV)")->required()->check(CLI::ExistingFile);
    reducts->add_option("--schema", r_schema, "Attribute schema")->check(CLI::ExistingFile);
    reducts->add_option("--attributes", r_attrs, "Attribute set (default: all conditions)")->delimiter(',');

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run)
            return cmd_run(config, seed, ratio, output, quiet);
        if (*rules)
            return cmd_rules(rules_src, rules_class, rules_stage, rules_out);
        if (*validate)
            return cmd_validate(v_rules, v_test, v_schema, v_threshold, v_kept);
        if (*lattice)
            return cmd_lattice(lat_src, lat_class, lat_dot, lat_cxt, lat_imps);
        if (*concepts) {
            print_concepts(load_cxt(c_context), c_dot, c_imps);
            return 0;
        }
        if (*disc) {
            auto t = discretize(load_raw_table(d_input), load_discretization(d_spec), maybe_schema(d_schema));
            write_to(d_out, detail::capture([&](auto& s) { write_table(s, t); }));
            return 0;
        }
        if (*approx)
            return cmd_approx(a_table, a_schema, a_attrs, a_objects);
        if (*reducts)
            return cmd_reducts(r_table, r_schema, r_attrs);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
