#include "kentropy/cli.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include <algorithm>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "kentropy/analysis.hpp"
#include "kentropy/dynamics.hpp"
#include "kentropy/ingest.hpp"
#include "kentropy/measures.hpp"

namespace kentropy::cli {

namespace {

using json = nlohmann::ordered_json;

struct OutputOptions {
    std::string format = "table";
    int precision = 4;
};

void add_output_flags(CLI::App* cmd, OutputOptions& o) {
    cmd->add_option("--format", o.format, "table or json")->check(CLI::IsMember({"table", "json"}));
    cmd->add_option("--precision", o.precision, "decimal places in table output")->check(CLI::Range(0, 17));
}

std::string fixed(double v, int precision) {
    auto s = fmt::format("{:.{}f}", v, precision);
    if (s.starts_with('-') && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
    return s;
}

/// Left-aligned columns separated by two spaces, no trailing blanks.
class TextTable {
public:
    explicit TextTable(std::vector<std::string> header) { rows_.push_back(std::move(header)); }
    void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }

    std::string str() const {
        std::vector<std::size_t> width;
        for (const auto& r : rows_) {
            if (width.size() < r.size()) width.resize(r.size(), 0);
            for (std::size_t c = 0; c < r.size(); ++c) width[c] = std::max(width[c], r[c].size());
        }
        std::string out;
        for (const auto& r : rows_) {
            std::string line;
            for (std::size_t c = 0; c < r.size(); ++c) {
                line += r[c];
                if (c + 1 < r.size()) line += std::string(width[c] - r[c].size() + 2, ' ');
            }
            out += line + "\n";
        }
        return out;
    }

private:
    std::vector<std::vector<std::string>> rows_;
};

std::string envelope(const std::string& command, const OutputOptions& o, json payload) {
    json j;
    j["command"] = command;
    j["format"] = "json";
    j["precision"] = o.precision;
    j["payload"] = std::move(payload);
    return j.dump(2) + "\n";
}

json metrics_json(const RaterRecord& r) {
    const auto& m = r.metrics;
    return json{{"rater", r.rater_id},
                {"source_kind", to_string(m.source_kind)},
                {"n", m.n},
                {"cardinality", m.cardinality},
                {"knowledge", m.knowledge},
                {"ignorance", m.ignorance},
                {"entropy", m.entropy},
                {"complement_residual", m.complement_residual()},
                {"entropy_residual", m.entropy_residual()}};
}

std::string braces(const ObjectSet& s) {
    std::string out = "{";
    for (std::size_t i = 0; i < s.size(); ++i) out += (i ? ", " : "") + s[i].str();
    return out + "}";
}

// ---------------------------------------------------------------------------

struct DatasetArgs {
    std::string rankings;
    std::string partitions;
    std::optional<std::string> rater;
    double tolerance = 0.0;
};

void add_dataset_flags(CLI::App* cmd, DatasetArgs& d) {
    auto* rk = cmd->add_option("--rankings", d.rankings, "rankings file (one 'rater: ranking' per line)");
    auto* pt = cmd->add_option("--partitions", d.partitions, "measurement table (object,<rater>,...)");
    rk->excludes(pt);
    auto* rater = cmd->add_option("--rater", d.rater, "only this rater column of a measurement table");
    auto* tol = cmd->add_option("--tolerance", d.tolerance, "chain values differing by at most this much")
                    ->check(CLI::NonNegativeNumber);
    rater->needs(pt);
    tol->needs(pt);
    cmd->callback([cmd] {
        if (cmd->count("--rankings") + cmd->count("--partitions") == 0) {
            throw CLI::RequiredError("--rankings or --partitions");
        }
    });
}

std::vector<RaterRecord> load(const DatasetArgs& d) {
    LoadOptions opts;
    opts.tolerance = d.tolerance;
    opts.rater = d.rater;
    if (!d.rankings.empty()) return load_dataset(d.rankings, DatasetFormat::rankings, opts);
    return load_dataset(d.partitions, DatasetFormat::partitions, opts);
}

std::string cmd_measure(const DatasetArgs& d, const OutputOptions& o) {
    const auto records = load(d);
    if (o.format == "json") {
        json rows = json::array();
        for (const auto& r : records) rows.push_back(metrics_json(r));
        return envelope("measure", o, json{{"records", rows}});
    }
    TextTable t({"rater", "source", "n", "cardinality", "knowledge", "ignorance", "entropy"});
    for (const auto& r : records) {
        const auto& m = r.metrics;
        t.add({r.rater_id, std::string(to_string(m.source_kind)), std::to_string(m.n), std::to_string(m.cardinality),
               fixed(m.knowledge, o.precision), fixed(m.ignorance, o.precision), fixed(m.entropy, o.precision)});
    }
    return t.str();
}

std::string cmd_entropy(const DatasetArgs& d, const OutputOptions& o) {
    const auto records = load(d);
    const auto ranked = rank_raters(records);
    const auto& lowest = ranked.front();
    if (o.format == "json") {
        json rows = json::array();
        for (const auto& r : records) {
            rows.push_back(json{{"rater", r.rater_id},
                                {"n", r.metrics.n},
                                {"cardinality", r.metrics.cardinality},
                                {"entropy", r.metrics.entropy}});
        }
        return envelope("entropy", o, json{{"records", rows}, {"lowest_entropy_rater", lowest.rater_id}});
    }
    TextTable t({"rater", "n", "cardinality", "entropy"});
    for (const auto& r : records) {
        t.add({r.rater_id, std::to_string(r.metrics.n), std::to_string(r.metrics.cardinality),
               fixed(r.metrics.entropy, o.precision)});
    }
    return t.str() + "lowest entropy: " + lowest.rater_id + "\n";
}

std::string cmd_rank(const DatasetArgs& d, const OutputOptions& o) {
    const auto ranked = rank_raters(load(d));
    if (o.format == "json") {
        json rows = json::array();
        for (std::size_t i = 0; i < ranked.size(); ++i) {
            auto row = metrics_json(ranked[i]);
            row["rank"] = i + 1;
            rows.push_back(std::move(row));
        }
        return envelope("rank", o, json{{"ranking", rows}});
    }
    TextTable t({"rank", "rater", "knowledge", "entropy"});
    for (std::size_t i = 0; i < ranked.size(); ++i) {
        t.add({std::to_string(i + 1), ranked[i].rater_id, fixed(ranked[i].metrics.knowledge, o.precision),
               fixed(ranked[i].metrics.entropy, o.precision)});
    }
    return t.str();
}

// ---------------------------------------------------------------------------

struct PairArgs {
    std::size_t n = 0;
    std::vector<double> k;
};

std::string cmd_pair(const PairArgs& a, const OutputOptions& o) {
    const auto r = pairwise_additivity_check(a.k.at(0), a.k.at(1), a.n);
    const auto n2 = r.n * r.n;
    if (o.format == "json") {
        return envelope("additivity pair", o,
                        json{{"n", r.n},
                             {"k_values", r.k_values},
                             {"k_sum", r.k_sum},
                             {"implied_cardinality", r.implied_cardinality},
                             {"admissible_range", {r.n, n2}},
                             {"feasible", r.feasible}});
    }
    TextTable t({"quantity", "value"});
    t.add({"n", std::to_string(r.n)});
    t.add({"k values", fixed(r.k_values[0], o.precision) + ", " + fixed(r.k_values[1], o.precision)});
    t.add({"k sum", fixed(r.k_sum, o.precision)});
    t.add({"implied W", fixed(r.implied_cardinality, o.precision)});
    t.add({"admissible W", fmt::format("[{}, {}]", r.n, n2)});
    t.add({"verdict", r.feasible ? "FEASIBLE" : "INFEASIBLE"});
    return t.str();
}

struct DecomposeArgs {
    std::string classes;
    std::string partitions;
    std::optional<std::string> rater;
    double tolerance = 0.0;
    std::vector<std::string> blocks;
};

Partition decompose_source(const DecomposeArgs& a) {
    if (!a.classes.empty()) return parse_partition(a.classes);
    LoadOptions opts;
    opts.tolerance = a.tolerance;
    opts.rater = a.rater;
    auto records = load_dataset(a.partitions, DatasetFormat::partitions, opts);
    return std::get<Partition>(records.front().source);
}

std::vector<ObjectSet> parse_blocks(const std::vector<std::string>& specs) {
    std::vector<ObjectSet> out;
    for (const auto& spec : specs) {
        std::vector<std::string> names;
        std::stringstream ss(spec);
        std::string item;
        while (std::getline(ss, item, ',')) {
            auto b = item.find_first_not_of(" \t");
            auto e = item.find_last_not_of(" \t");
            names.push_back(b == std::string::npos ? std::string() : item.substr(b, e - b + 1));
        }
        try {
            out.push_back(ObjectSet::from_names(names));
        } catch (const ConstructionError& err) {
            throw DomainError("block '" + spec + "': " + err.what());
        }
    }
    return out;
}

std::string cmd_decompose(const DecomposeArgs& a, const OutputOptions& o) {
    const auto p = decompose_source(a);
    const auto blocks = parse_blocks(a.blocks);
    const auto c = additivity_contrast_report(p, blocks);
    const auto& k = c.knowledge;
    if (o.format == "json") {
        json bl = json::array();
        for (std::size_t b = 0; b < blocks.size(); ++b) {
            json members = json::array();
            for (const auto& m : blocks[b].members()) members.push_back(m.str());
            bl.push_back(json{{"objects", members},
                              {"knowledge", k.k_values[b]},
                              {"knowledge_entropy", c.entropy_blocks[b]},
                              {"weight", c.block_weights[b]},
                              {"shannon", c.shannon_blocks[b]}});
        }
        return envelope("additivity decompose", o,
                        json{{"partition", render_partition(p)},
                             {"n", k.n},
                             {"blocks", bl},
                             {"knowledge_whole", *k.k_whole},
                             {"knowledge_block_sum", k.k_sum},
                             {"knowledge_gap", *k.gap},
                             {"implied_cardinality", k.implied_cardinality},
                             {"feasible", k.feasible},
                             {"knowledge_entropy_whole", c.entropy_whole},
                             {"knowledge_entropy_block_sum", c.entropy_block_sum},
                             {"knowledge_entropy_gap", c.entropy_gap},
                             {"knowledge_entropy_gap_nonzero", c.entropy_gap_nonzero},
                             {"shannon_whole", c.shannon_whole},
                             {"shannon_decomposed", c.shannon_decomposed},
                             {"shannon_gap", c.shannon_gap},
                             {"blocks_respect_classes", c.blocks_respect_classes}});
    }
    const int pr = o.precision;
    TextTable t({"part", "K", "S_K", "shannon"});
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        t.add({braces(blocks[b]), fixed(k.k_values[b], pr), fixed(c.entropy_blocks[b], pr),
               fixed(c.shannon_blocks[b], pr)});
    }
    t.add({"block sum", fixed(k.k_sum, pr), fixed(c.entropy_block_sum, pr), fixed(c.shannon_decomposed, pr)});
    t.add({"whole", fixed(*k.k_whole, pr), fixed(c.entropy_whole, pr), fixed(c.shannon_whole, pr)});
    t.add({"gap (sum - whole)", fixed(*k.gap, pr), fixed(c.entropy_gap, pr), fixed(c.shannon_gap, pr)});

    const bool k_nonzero = std::abs(*k.gap) > kIdentityTolerance;
    std::string out = "partition: " + render_partition(p) + "\n" + t.str();
    out += "shannon column: block sum is H(block weights) + weighted block entropies";
    out += c.blocks_respect_classes ? "\n" : " (blocks split classes)\n";
    out += std::string("knowledge gap: ") + (k_nonzero ? "NON-ZERO" : "zero") + "\n";
    out += std::string("knowledge entropy gap: ") + (c.entropy_gap_nonzero ? "NON-ZERO" : "zero") + "\n";
    return out;
}

// ---------------------------------------------------------------------------

struct DynamicsArgs {
    std::string kind = "knowledge";
    double u0 = 0.0;
    double u1 = 0.0;
    std::vector<double> at_u;
    std::vector<double> at_v;
};

std::string cmd_dynamics(const DynamicsArgs& a, const OutputOptions& o) {
    const auto kind = parse_variable_kind(a.kind);
    const auto m = EvolutionModel::calibrate(a.u0, a.u1, kind);
    const char* var = kind == VariableKind::knowledge ? "K" : "I";

    struct Row {
        const char* given;
        double u;
        double v;
    };
    std::vector<Row> rows;
    for (double u : a.at_u) rows.push_back({"u", u, m.infer_variable(u)});
    for (double v : a.at_v) rows.push_back({"v", m.predict_uncertainty(v), v});

    if (o.format == "json") {
        json q = json::array();
        for (const auto& r : rows) q.push_back(json{{"given", r.given}, {"u", r.u}, {a.kind, r.v}});
        return envelope("dynamics", o,
                        json{{"kind", a.kind},
                             {"slope", m.slope()},
                             {"intercept", m.intercept()},
                             {"u_min", m.u_min()},
                             {"u_max", m.u_max()},
                             {"queries", q}});
    }
    std::string out = fmt::format("model: ln U = {} * {} + {}  ({} kind, U in [{}, {}])\n", fixed(m.slope(), o.precision),
                                  var, fixed(m.intercept(), o.precision), a.kind, fixed(m.u_min(), o.precision),
                                  fixed(m.u_max(), o.precision));
    if (!rows.empty()) {
        TextTable t({"given", "U", var});
        for (const auto& r : rows) t.add({r.given, fixed(r.u, o.precision), fixed(r.v, o.precision)});
        out += t.str();
    }
    return out;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Knowledge, ignorance and knowledge-entropy measures for raters", "kentropy"};
    app.require_subcommand(1);

    OutputOptions out_opts;

    DatasetArgs measure_args;
    auto* measure = app.add_subcommand("measure", "knowledge, ignorance and entropy per rater");
    add_dataset_flags(measure, measure_args);
    add_output_flags(measure, out_opts);

    DatasetArgs entropy_args;
    auto* entropy = app.add_subcommand("entropy", "knowledge entropy per rater and the lowest-entropy rater");
    add_dataset_flags(entropy, entropy_args);
    add_output_flags(entropy, out_opts);

    DatasetArgs rank_args;
    auto* rank = app.add_subcommand("rank", "raters ordered by descending knowledge");
    add_dataset_flags(rank, rank_args);
    add_output_flags(rank, out_opts);

    auto* additivity = app.add_subcommand("additivity", "sub-additivity checks");
    additivity->require_subcommand(1);

    PairArgs pair_args;
    auto* pair = additivity->add_subcommand("pair", "can one partition carry the summed knowledge of two raters?");
    pair->add_option("--n", pair_args.n, "number of objects")->required()->check(CLI::Range(2, 1 << 20));
    pair->add_option("--k", pair_args.k, "knowledge level (give exactly twice)")
        ->required()
        ->expected(1)
        ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll)
        ->check(CLI::Range(0.0, 1.0));
    add_output_flags(pair, out_opts);

    DecomposeArgs dec_args;
    auto* dec = additivity->add_subcommand("decompose", "whole-set knowledge against the sum over blocks");
    auto* dec_classes = dec->add_option("--classes", dec_args.classes, "partition text, e.g. \"x1, x2 ~ x3, x4\"");
    auto* dec_table = dec->add_option("--partitions", dec_args.partitions, "measurement table");
    dec_classes->excludes(dec_table);
    dec->add_option("--rater", dec_args.rater, "rater column of the table")->needs(dec_table);
    dec->add_option("--tolerance", dec_args.tolerance, "grouping tolerance")
        ->needs(dec_table)
        ->check(CLI::NonNegativeNumber);
    dec->add_option("--block", dec_args.blocks, "comma-separated objects of one block (repeat)")
        ->required()
        ->expected(1)
        ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
    add_output_flags(dec, out_opts);

    DynamicsArgs dyn_args;
    auto* dyn = app.add_subcommand("dynamics", "calibrate ln U = slope * v + intercept and query it");
    dyn->add_option("--kind", dyn_args.kind, "knowledge or ignorance")->check(CLI::IsMember({"knowledge", "ignorance"}));
    dyn->add_option("--u0", dyn_args.u0, "uncertainty at level 0")->required();
    dyn->add_option("--u1", dyn_args.u1, "uncertainty at level 1")->required();
    dyn->add_option("--at-u", dyn_args.at_u, "infer the level for this uncertainty (repeat)")
        ->expected(1)
        ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
    dyn->add_option("--at-v", dyn_args.at_v, "predict the uncertainty at this level (repeat)")
        ->expected(1)
        ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
    add_output_flags(dyn, out_opts);

    std::ostringstream cli_out, cli_err;
    try {
        app.parse(argc, argv);
        if (*pair && pair_args.k.size() != 2) {
            throw CLI::ValidationError("--k", "give exactly two knowledge levels");
        }
        if (*dec && dec_args.classes.empty() && dec_args.partitions.empty()) {
            throw CLI::RequiredError("--classes or --partitions");
        }
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, cli_out, cli_err);
        out << cli_out.str();
        err << cli_err.str();
        return code == 0 ? kOk : kUsage;
    }

    std::string result;
    try {
        if (*measure) {
            result = cmd_measure(measure_args, out_opts);
        } else if (*entropy) {
            result = cmd_entropy(entropy_args, out_opts);
        } else if (*rank) {
            result = cmd_rank(rank_args, out_opts);
        } else if (*pair) {
            result = cmd_pair(pair_args, out_opts);
        } else if (*dec) {
            result = cmd_decompose(dec_args, out_opts);
        } else if (*dyn) {
            result = cmd_dynamics(dyn_args, out_opts);
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kInput;
    }
    out << result;
    return kOk;
}

}  // namespace kentropy::cli
