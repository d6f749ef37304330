#include <xaikg/cli.hpp>

#include <xaikg/decision.hpp>
#include <xaikg/explanation.hpp>
#include <xaikg/feedback.hpp>
#include <xaikg/ingestion.hpp>
#include <xaikg/metrics.hpp>
#include <xaikg/schema.hpp>
#include <xaikg/service.hpp>
#include <xaikg/synthetic.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

namespace xaikg::cli {

namespace fs = std::filesystem;

int exit_code(ErrorCode code) noexcept {
    switch (code) {
    case ErrorCode::parse_error: return kData;
    case ErrorCode::schema_violation: return kSchema;
    case ErrorCode::unknown_id:
    case ErrorCode::conflict: return kConflict;
    case ErrorCode::invalid_argument: return kUsage;
    }
    return kUsage;
}

namespace {

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::parse_error, "cannot read " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const fs::path& path, const std::string& content) {
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error(ErrorCode::invalid_argument, "cannot write " + tmp.string());
        out << content;
        if (!out.flush()) throw Error(ErrorCode::invalid_argument, "failed writing " + tmp.string());
    }
    fs::rename(tmp, path);
}

/// Errors raised while reading a named input file get the file name prefixed.
template <typename F>
auto with_file(const std::string& path, F&& f) {
    try {
        return f(read_file(path));
    } catch (const Error& e) {
        throw Error(e.code(), path + ": " + e.what());
    }
}

struct Options {
    std::string graph_path = "xaikg.jsonl";
    std::string schema_path;

    std::string shipments, forecasts, relevance;
    std::int64_t k = kDefaultExplanationK;
    std::string rules_path;
    SynthConfig synth;
    std::optional<double> sample;
    std::uint64_t seed = 0;
    std::string out_path;
    std::string host = "127.0.0.1";
    int port = 8080;
    std::string out_dir;
    std::uint64_t data_seed = SyntheticSpec{}.seed;
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Knowledge graph for forecasts, explanations, decision options and feedback", "xaikg"};
    app.require_subcommand(1);
    Options o;
    app.add_option("--graph", o.graph_path, "Graph snapshot file (JSON Lines)")->capture_default_str();
    app.add_option("--schema", o.schema_path, "Schema descriptor (default: built-in)");

    auto* ingest = app.add_subcommand("ingest", "Ingest shipments, forecasts and feature relevance");
    ingest->add_option("--shipments", o.shipments, "Shipments CSV");
    ingest->add_option("--forecasts", o.forecasts, "Forecasts JSON array");
    ingest->add_option("--relevance", o.relevance, "Feature relevance JSON Lines");

    auto* explain = app.add_subcommand("explain", "Explain every forecast that has no explanation yet");
    explain->add_option("--k", o.k, "Number of top features per explanation")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();

    auto* options = app.add_subcommand("options", "Generate decision options for forecasts without options");
    options->add_option("--rules", o.rules_path, "Rules config JSON (default: built-in rules)");

    auto* synth = app.add_subcommand("synth-feedback", "Add deterministic synthetic feedback");
    synth->add_option("--seed", o.synth.seed, "Generator seed")->capture_default_str();
    synth->add_option("--coverage-forecast", o.synth.coverage_forecast)->check(CLI::Range(0.0, 1.0))->capture_default_str();
    synth->add_option("--coverage-option", o.synth.coverage_option)->check(CLI::Range(0.0, 1.0))->capture_default_str();
    synth->add_option("--coverage-relevance", o.synth.coverage_relevance)->check(CLI::Range(0.0, 1.0))->capture_default_str();
    synth->add_option("--coverage-explanation", o.synth.coverage_explanation)
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    synth->add_option("--annotator", o.synth.annotator, "Name of the synthetic user")->capture_default_str();

    auto* metrics = app.add_subcommand("metrics", "Print graph metrics as JSON (exact unless --sample)");
    metrics->add_option("--sample", o.sample, "Fraction of nodes used as traversal sources, in (0, 1]");
    metrics->add_option("--seed", o.seed, "Sampling seed")->capture_default_str();

    auto* exporter = app.add_subcommand("export", "Write the graph snapshot (stdout without --out)");
    exporter->add_option("--out", o.out_path, "Output file");

    auto* schema_cmd = app.add_subcommand("schema", "Print the schema descriptor");

    auto* serve_cmd = app.add_subcommand("serve", "Serve the HTTP API; writes are persisted to --graph");
    serve_cmd->add_option("--port", o.port)->check(CLI::Range(0, 65535))->capture_default_str();
    serve_cmd->add_option("--host", o.host)->capture_default_str();

    auto* synth_data = app.add_subcommand("synth-data", "Write a synthetic shipments/forecasts/relevance dataset");
    synth_data->add_option("--out-dir", o.out_dir, "Directory for the three input files")->required();
    synth_data->add_option("--seed", o.data_seed)->capture_default_str();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (ingest->parsed() && o.shipments.empty() && o.forecasts.empty() && o.relevance.empty()) {
            err << "ingest: at least one of --shipments, --forecasts, --relevance is required\n";
            return kUsage;
        }
        if (metrics->parsed() && o.sample && !(*o.sample > 0.0 && *o.sample <= 1.0)) {
            err << "metrics: --sample must be in (0, 1]\n";
            return kUsage;
        }

        if (synth_data->parsed()) {
            SyntheticSpec spec;
            spec.seed = o.data_seed;
            auto data = make_synthetic_dataset(spec);
            fs::create_directories(o.out_dir);
            write_file(fs::path(o.out_dir) / "shipments.csv", data.shipments_csv);
            write_file(fs::path(o.out_dir) / "forecasts.json", data.forecasts_json);
            write_file(fs::path(o.out_dir) / "relevance.jsonl", data.relevance_jsonl);
            out << nlohmann::json{{"out_dir", o.out_dir}}.dump() << "\n";
            return kOk;
        }

        const SchemaSpec schema = o.schema_path.empty()
                                      ? builtin_xaikg_schema()
                                      : with_file(o.schema_path, [](const std::string& t) { return load_schema(t); });
        if (schema_cmd->parsed()) {
            out << dump_schema(schema);
            return kOk;
        }

        std::optional<RulesConfig> rules;
        if (!o.rules_path.empty()) {
            rules = with_file(o.rules_path, [](const std::string& t) { return load_rules(t); });
        }

        Graph graph = load_snapshot(o.graph_path);

        if (serve_cmd->parsed()) {
            ServiceConfig cfg;
            cfg.snapshot_path = o.graph_path;
            Service service(std::move(graph), schema, cfg);
            err << "serving on " << o.host << ":" << o.port << "\n";
            serve(service, o.host, o.port);
            return kOk;
        }
        if (metrics->parsed()) {
            GraphMetrics m = o.sample ? sampled_metrics(graph, *o.sample, o.seed) : exact_metrics(graph);
            out << to_json(m).dump() << "\n";
            return kOk;
        }
        if (exporter->parsed()) {
            if (o.out_path.empty()) {
                export_jsonl(graph, out);
            } else {
                save_snapshot(graph, o.out_path);
            }
            return kOk;
        }

        nlohmann::json result;
        if (ingest->parsed()) {
            auto counts_json = [](const WriteCounts& c) {
                return nlohmann::json{{"nodes_added", c.nodes_added}, {"edges_added", c.edges_added}};
            };
            if (!o.shipments.empty()) {
                auto records = with_file(o.shipments, [](const std::string& t) { return parse_shipments_csv(t); });
                result["shipments"] = counts_json(ingest_shipments(graph, schema, records));
            }
            if (!o.forecasts.empty()) {
                auto records = with_file(o.forecasts, [](const std::string& t) { return parse_forecasts_json(t); });
                result["forecasts"] = counts_json(ingest_forecasts(graph, schema, records));
            }
            if (!o.relevance.empty()) {
                auto records = with_file(o.relevance, [](const std::string& t) { return parse_relevance_jsonl(t); });
                result["relevance"] = counts_json(ingest_relevance(graph, schema, records));
            }
        } else if (explain->parsed()) {
            result["created"] = explain_all(graph, schema, o.k);
        } else if (options->parsed()) {
            result["created"] = suggest_all(graph, schema, rules.value_or(default_rules()));
        } else if (synth->parsed()) {
            result["created"] = synthesize_feedback(graph, schema, o.synth);
        }
        save_snapshot(graph, o.graph_path);
        out << result.dump() << "\n";
        return kOk;
    } catch (const Error& e) {
        err << "error (" << to_string(e.code()) << "): " << e.what() << "\n";
        return exit_code(e.code());
    } catch (const fs::filesystem_error& e) {
        err << "error: " << e.what() << "\n";
        return kData;
    }
}

}  // namespace xaikg::cli
