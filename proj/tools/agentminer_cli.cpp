// Command-line front end over the agentminer C API.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "agentminer.h"

namespace {

[[noreturn]] void die(const char* context) {
    std::fprintf(stderr, "error: %s: %s\n", context, am_last_error());
    std::exit(1);
}

void check(am_status status, const char* context) {
    if (status != AM_OK) die(context);
}

struct LogCloser {
    void operator()(am_log* log) const { am_log_free(log); }
};
struct NetCloser {
    void operator()(am_net* net) const { am_net_free(net); }
};
struct BundleCloser {
    void operator()(am_bundle* bundle) const { am_bundle_free(bundle); }
};
using LogPtr = std::unique_ptr<am_log, LogCloser>;
using NetPtr = std::unique_ptr<am_net, NetCloser>;
using BundlePtr = std::unique_ptr<am_bundle, BundleCloser>;

struct InputFlags {
    std::string path;
    std::string format = "auto";
    std::string case_column = "case";
    std::string activity_column = "activity";
    std::string agent_column = "agent";
    std::string timestamp_column = "timestamp";
    std::string timestamp_format = "auto";
    std::string resource_key = "org:resource";

    void attach(CLI::App* cmd) {
        cmd->add_option("--input", path, "event log file")->required();
        cmd->add_option("--format", format, "input format: auto, csv or xes");
        cmd->add_option("--case-col", case_column, "CSV case column");
        cmd->add_option("--activity-col", activity_column, "CSV activity column");
        cmd->add_option("--agent-col", agent_column, "CSV agent column");
        cmd->add_option("--timestamp-col", timestamp_column, "CSV timestamp column");
        cmd->add_option("--timestamp-format", timestamp_format,
                        "auto, iso8601, epoch-ms or epoch-us");
        cmd->add_option("--resource-key", resource_key, "XES agent attribute key");
    }

    am_column_mapping mapping() const {
        return {case_column.c_str(), activity_column.c_str(), agent_column.c_str(),
                timestamp_column.c_str(), timestamp_format.c_str()};
    }

    bool is_xes() const {
        if (format == "xes") return true;
        if (format == "csv") return false;
        return path.size() >= 4 && path.substr(path.size() - 4) == ".xes";
    }

    LogPtr read() const {
        am_log* log = nullptr;
        if (is_xes()) {
            check(am_log_read_xes(path.c_str(), resource_key.c_str(), &log), "reading XES log");
        } else {
            am_column_mapping m = mapping();
            check(am_log_read_csv(path.c_str(), &m, &log), "reading CSV log");
        }
        return LogPtr(log);
    }
};

am_naming naming_from(const std::string& token) {
    if (token == "aol") return AM_NAMING_ACTIVITY;
    if (token == "aal") return AM_NAMING_AGENT_ACTIVITY;
    if (token == "agent") return AM_NAMING_AGENT;
    std::fprintf(stderr, "error: unknown naming '%s' (use aol, aal or agent)\n", token.c_str());
    std::exit(1);
}

void print_quality(const char* model_id, const am_quality& q) {
    std::printf("model_id,size,recall,precision,ent_log,ent_model,ent_intersection\n");
    std::printf("%s,%zu,%.6f,%.6f,%.6f,%.6f,%.6f\n", model_id, q.size, q.recall, q.precision,
                q.ent_log, q.ent_model, q.ent_intersection);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"agent system discovery and evaluation over event logs"};
    app.require_subcommand(1);
    app.set_version_flag("--version", am_version());

    // generate
    auto* generate = app.add_subcommand("generate", "write a seeded example health-process log");
    std::uint64_t gen_cases = 1024, gen_seed = 7;
    std::uint32_t gen_rework = 3;
    double gen_rework_p = -1.0;
    std::string gen_out = "health.csv";
    generate->add_option("--cases", gen_cases, "number of cases");
    generate->add_option("--seed", gen_seed, "PRNG seed");
    generate->add_option("--max-rework", gen_rework, "maximum rework rounds per case");
    generate->add_option("--rework-probability", gen_rework_p,
                         "chance of entering each rework round (default 0.55)");
    generate->add_option("--out", gen_out, "output CSV path")->required();

    // discover
    auto* discover = app.add_subcommand("discover", "run agent system discovery on one log");
    InputFlags discover_input;
    discover_input.attach(discover);
    double d_ff = 1.0, d_th = 0.0, d_vff = 1.0, d_distance = 0.5;
    bool d_keep_iterations = false, d_pretyped = false;
    std::size_t d_bound = 0;
    std::string d_out;
    discover->add_option("--ff", d_ff, "activity frequency filter in (0,1]");
    discover->add_option("--th", d_th, "interaction-net noise threshold in [0,1)");
    discover->add_option("--vff", d_vff, "variant frequency filter in (0,1]");
    discover->add_option("--distance-threshold", d_distance, "agent clustering threshold");
    discover->add_flag("--pretyped", d_pretyped, "agents are already types; skip clustering");
    discover->add_flag("--keep-iterations", d_keep_iterations,
                       "do not prune observable self-iterations from the interaction net");
    discover->add_option("--state-bound", d_bound, "marking budget for analyses");
    discover->add_option("--out-dir", d_out, "bundle output directory")->required();

    // baseline
    auto* baseline = app.add_subcommand("baseline", "discover one conventional baseline model");
    InputFlags baseline_input;
    baseline_input.attach(baseline);
    std::string b_naming = "aol";
    double b_threshold = 0.0, b_vff = 1.0;
    std::size_t b_bound = 0;
    std::string b_out;
    baseline->add_option("--naming", b_naming, "event naming: aol or aal");
    baseline->add_option("--threshold", b_threshold, "noise threshold in [0,1)");
    baseline->add_option("--vff", b_vff, "variant frequency filter in (0,1]");
    baseline->add_option("--state-bound", b_bound, "marking budget for analyses");
    baseline->add_option("--out-dir", b_out, "model output directory")->required();

    // measure
    auto* measure_cmd = app.add_subcommand("measure", "measure a PNML net against a log");
    InputFlags measure_input;
    measure_input.attach(measure_cmd);
    std::string m_net, m_naming = "aol";
    bool m_rewrite = false;
    std::size_t m_bound = 0;
    measure_cmd->add_option("--net", m_net, "PNML file")->required();
    measure_cmd->add_option("--naming", m_naming, "log naming: aol, aal or agent");
    measure_cmd->add_flag("--rewrite-to-activity", m_rewrite,
                          "rewrite (agent, activity) labels to activities first");
    measure_cmd->add_option("--state-bound", m_bound, "marking budget for analyses");

    // pipeline
    auto* pipeline = app.add_subcommand("pipeline", "full discovery and comparison sweep");
    InputFlags pipeline_input;
    pipeline_input.attach(pipeline);
    std::string p_out, p_pairs, p_thresholds, p_namings = "aol,aal";
    double p_vff = 1.0, p_distance = 0.5;
    std::uint64_t p_seed = 0;
    std::size_t p_bound = 0, p_workers = 0;
    bool p_keep_iterations = false;
    pipeline->add_option("--out-dir", p_out, "output directory")->required();
    pipeline->add_option("--vff", p_vff, "variant frequency filter in (0,1]");
    pipeline->add_option("--am-pairs", p_pairs,
                         "ff:th pairs, e.g. 0.5:0.5,1.0:0.0 (default: the ten-step diagonal)");
    pipeline->add_option("--cm-thresholds", p_thresholds,
                         "baseline thresholds, e.g. 0.0,0.1 (default: 0.0..0.9)");
    pipeline->add_option("--namings", p_namings, "comma list of aol, aal");
    pipeline->add_option("--distance-threshold", p_distance, "agent clustering threshold");
    pipeline->add_option("--seed", p_seed, "seed echoed into the manifest");
    pipeline->add_option("--state-bound", p_bound, "marking budget for analyses");
    pipeline->add_option("--workers", p_workers, "parallel jobs (default: AM_WORKERS or 1)");
    pipeline->add_flag("--keep-iterations", p_keep_iterations,
                       "do not prune observable self-iterations from interaction nets");

    // pareto
    auto* pareto = app.add_subcommand("pareto", "recompute Pareto fronts from a results.csv");
    std::string pr_results, pr_out;
    pareto->add_option("--results", pr_results, "results.csv path")->required();
    pareto->add_option("--out-dir", pr_out, "output directory")->required();

    CLI11_PARSE(app, argc, argv);

    if (generate->parsed()) {
        am_generator_config config{gen_cases, gen_seed, gen_rework, gen_rework_p};
        am_log* log = nullptr;
        check(am_log_generate(&config, &log), "generating log");
        LogPtr holder(log);
        check(am_log_write_csv(log, gen_out.c_str()), "writing log");
        size_t events = 0, cases = 0;
        am_log_event_count(log, &events);
        am_log_case_count(log, &cases);
        std::printf("wrote %s: %zu events across %zu cases\n", gen_out.c_str(), events, cases);
        return 0;
    }

    if (discover->parsed()) {
        LogPtr log = discover_input.read();
        if (d_vff < 1.0) {
            am_log* filtered = nullptr;
            check(am_log_filter_variants(log.get(), d_vff, &filtered), "variant filter");
            log.reset(filtered);
        }
        if (!d_pretyped) {
            am_log* typed = nullptr;
            check(am_log_identify_types(log.get(), d_distance, d_out.c_str(), &typed),
                  "agent typing");
            log.reset(typed);
            // The bundle's labels use type ids; keep the matching log around
            // for later measurement runs.
            check(am_log_write_csv(log.get(), (d_out + "/typed-log.csv").c_str()),
                  "writing typed log");
        }
        am_discovery_options options{d_ff, d_th, d_keep_iterations ? 0 : 1, d_bound};
        am_bundle* bundle = nullptr;
        check(am_discover(log.get(), &options, &bundle), "discovery");
        BundlePtr holder(bundle);
        check(am_bundle_export(bundle, d_out.c_str()), "bundle export");
        char* report = nullptr;
        check(am_bundle_verify_json(bundle, d_bound, &report), "verification");
        std::printf("%s\n", report);
        am_string_free(report);
        std::printf("bundle written to %s\n", d_out.c_str());
        return 0;
    }

    if (baseline->parsed()) {
        LogPtr log = baseline_input.read();
        if (b_vff < 1.0) {
            am_log* filtered = nullptr;
            check(am_log_filter_variants(log.get(), b_vff, &filtered), "variant filter");
            log.reset(filtered);
        }
        am_naming naming = naming_from(b_naming);
        am_net* net = nullptr;
        check(am_discover_baseline(log.get(), naming, b_threshold, &net), "baseline discovery");
        NetPtr holder(net);
        std::string pnml = b_out + "/model.pnml";
        std::string dot = b_out + "/model.dot";
        std::string mkdir = b_out;
        // The C API creates parent directories only for bundle export; do it
        // here for the single-net case.
        std::error_code ec;
        std::filesystem::create_directories(mkdir, ec);
        check(am_net_write_pnml(net, pnml.c_str()), "writing PNML");
        check(am_net_write_dot(net, dot.c_str()), "writing DOT");
        am_quality q{};
        check(am_measure(net, log.get(), naming, b_bound, &q), "measuring");
        print_quality(("cm-im-" + b_naming).c_str(), q);
        return 0;
    }

    if (measure_cmd->parsed()) {
        LogPtr log = measure_input.read();
        am_net* net = nullptr;
        check(am_net_read_pnml(m_net.c_str(), &net), "reading PNML");
        NetPtr holder(net);
        if (m_rewrite) {
            am_net* rewritten = nullptr;
            check(am_net_rewrite_to_activity(net, &rewritten), "label rewrite");
            holder.reset(rewritten);
        }
        am_quality q{};
        check(am_measure(holder.get(), log.get(), naming_from(m_naming), m_bound, &q), "measuring");
        print_quality(m_net.c_str(), q);
        return 0;
    }

    if (pipeline->parsed()) {
        std::vector<double> ffs, ths, cms;
        if (!p_pairs.empty()) {
            std::stringstream stream(p_pairs);
            std::string token;
            while (std::getline(stream, token, ',')) {
                auto colon = token.find(':');
                if (colon == std::string::npos) {
                    std::fprintf(stderr, "error: bad --am-pairs entry '%s'\n", token.c_str());
                    return 1;
                }
                ffs.push_back(std::stod(token.substr(0, colon)));
                ths.push_back(std::stod(token.substr(colon + 1)));
            }
        }
        if (!p_thresholds.empty()) {
            std::stringstream stream(p_thresholds);
            std::string token;
            while (std::getline(stream, token, ',')) cms.push_back(std::stod(token));
        }
        bool use_aol = p_namings.find("aol") != std::string::npos;
        bool use_aal = p_namings.find("aal") != std::string::npos;

        am_column_mapping mapping = pipeline_input.mapping();
        am_pipeline_config config{};
        config.input_path = pipeline_input.path.c_str();
        config.input_format = pipeline_input.format.c_str();
        config.mapping = &mapping;
        config.xes_resource_key = pipeline_input.resource_key.c_str();
        config.out_dir = p_out.c_str();
        config.vff = p_vff;
        config.am_ff = ffs.empty() ? nullptr : ffs.data();
        config.am_th = ths.empty() ? nullptr : ths.data();
        config.am_pair_count = ffs.size();
        config.cm_thresholds = cms.empty() ? nullptr : cms.data();
        config.cm_threshold_count = cms.size();
        config.use_aol = use_aol ? 1 : 0;
        config.use_aal = use_aal ? 1 : 0;
        config.state_bound = p_bound;
        config.distance_threshold = p_distance;
        config.seed = p_seed;
        config.workers = p_workers;
        config.remove_iterations = p_keep_iterations ? 0 : 1;
        check(am_pipeline_run(&config), "pipeline");
        std::printf("results written to %s/results.csv\n", p_out.c_str());
        return 0;
    }

    if (pareto->parsed()) {
        check(am_pareto_from_results(pr_results.c_str(), pr_out.c_str()), "pareto");
        std::printf("fronts written to %s\n", pr_out.c_str());
        return 0;
    }

    return 0;
}
