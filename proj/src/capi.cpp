#include "agentminer.h"

#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <memory>
#include <string>

#include <nlohmann/json.hpp>

#include "agentminer/agent_typing.hpp"
#include "agentminer/composer.hpp"
#include "agentminer/conformance.hpp"
#include "agentminer/inductive.hpp"
#include "agentminer/log_io.hpp"
#include "agentminer/petri_io.hpp"
#include "agentminer/pipeline.hpp"
#include "agentminer/version.hpp"

struct am_log {
    am::EventSelection selection;
};

struct am_net {
    am::WorkflowNet net;
};

struct am_bundle {
    am::DiscoveryBundle bundle;
    // Stable views for the borrowed-pointer accessors.
    std::vector<std::string> agent_names;
    std::vector<am_net> agent_views;
    am_net interaction_view;
    am_net mas_view;
};

namespace {

thread_local std::string t_last_error;

am_status fail(am_status code, const std::string& message) {
    t_last_error = message;
    return code;
}

am_status classify(const std::exception& e) {
    if (dynamic_cast<const am::BoundExceededError*>(&e) != nullptr)
        return fail(AM_ERR_BOUND, e.what());
    return fail(AM_ERR_FAILED, e.what());
}

template <typename Body>
am_status guarded(Body&& body) {
    try {
        t_last_error.clear();
        return body();
    } catch (const std::exception& e) {
        return classify(e);
    } catch (...) {
        return fail(AM_ERR_FAILED, "unknown error");
    }
}

am::ColumnMapping to_mapping(const am_column_mapping* mapping) {
    am::ColumnMapping out;
    if (!mapping) return out;
    if (mapping->case_column) out.case_column = mapping->case_column;
    if (mapping->activity_column) out.activity_column = mapping->activity_column;
    if (mapping->agent_column) out.agent_column = mapping->agent_column;
    if (mapping->timestamp_column) out.timestamp_column = mapping->timestamp_column;
    if (mapping->timestamp_format) out.timestamp_format = mapping->timestamp_format;
    return out;
}

am::NamingKind to_naming(am_naming naming) {
    switch (naming) {
        case AM_NAMING_ACTIVITY: return am::NamingKind::ActivityOnly;
        case AM_NAMING_AGENT_ACTIVITY: return am::NamingKind::AgentActivity;
        case AM_NAMING_AGENT: return am::NamingKind::AgentOnly;
    }
    throw std::runtime_error("unknown naming kind");
}

}  // namespace

extern "C" {

const char* am_version(void) { return am::kVersion; }

const char* am_last_error(void) { return t_last_error.c_str(); }

am_status am_log_read_csv(const char* path, const am_column_mapping* mapping, am_log** out) {
    if (!path || !out) return fail(AM_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        auto log = std::make_unique<am_log>();
        log->selection = am::parse_csv(path, to_mapping(mapping));
        *out = log.release();
        return AM_OK;
    });
}

am_status am_log_read_xes(const char* path, const char* resource_key, am_log** out) {
    if (!path || !out) return fail(AM_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        am::XesKeys keys;
        if (resource_key) keys.resource = resource_key;
        auto log = std::make_unique<am_log>();
        log->selection = am::parse_xes(path, keys);
        *out = log.release();
        return AM_OK;
    });
}

am_status am_log_write_csv(const am_log* log, const char* path) {
    if (!log || !path) return fail(AM_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        am::write_csv(log->selection, path);
        return AM_OK;
    });
}

am_status am_log_generate(const am_generator_config* config, am_log** out) {
    if (!config || !out) return fail(AM_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        am::GeneratorConfig gc;
        gc.cases = config->cases;
        gc.seed = config->seed;
        gc.max_rework_rounds = config->max_rework_rounds;
        if (config->rework_probability >= 0.0)
            gc.prescription_probabilities["prescribe"] = config->rework_probability;
        auto log = std::make_unique<am_log>();
        log->selection = am::generate_health_log(gc);
        *out = log.release();
        return AM_OK;
    });
}

am_status am_log_filter_variants(const am_log* log, double vff, am_log** out) {
    if (!log || !out) return fail(AM_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        auto filtered = std::make_unique<am_log>();
        filtered->selection = am::variant_frequency_filter(log->selection, vff);
        *out = filtered.release();
        return AM_OK;
    });
}

am_status am_log_identify_types(const am_log* log, double distance_threshold,
                                const char* audit_dir, am_log** out) {
    if (!log || !out) return fail(AM_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        am::AgentTypeAssignment assignment =
            am::identify_agent_types(log->selection, distance_threshold);
        if (audit_dir) {
            namespace fs = std::filesystem;
            fs::create_directories(audit_dir);
            std::ofstream matrix(fs::path(audit_dir) / "distance-matrix.csv", std::ios::binary);
            matrix << am::distance_matrix_csv(am::instance_dfgs(log->selection));
            std::ofstream types(fs::path(audit_dir) / "agent-types.csv", std::ios::binary);
            types << am::assignment_csv(assignment);
        }
        auto typed = std::make_unique<am_log>();
        typed->selection = am::relabel_to_types(log->selection, assignment);
        *out = typed.release();
        return AM_OK;
    });
}

am_status am_log_event_count(const am_log* log, size_t* out) {
    if (!log || !out) return fail(AM_ERR_INVALID_ARGUMENT, "null argument");
    *out = log->selection.size();
    return AM_OK;
}

am_status am_log_case_count(const am_log* log, size_t* out) {
    if (!log || !out) return fail(AM_ERR_INVALID_ARGUMENT, "null argument");
    *out = log->selection.distinct_cases().size();
    return AM_OK;
}

am_status am_log_agent_count(const am_log* log, size_t* out) {
    if (!log || !out) return fail(AM_ERR_INVALID_ARGUMENT, "null argument");
    *out = log->selection.distinct_agents().size();
    return AM_OK;
}

void am_log_free(am_log* log) { delete log; }

am_status am_discover(const am_log* log, const am_discovery_options* options, am_bundle** out) {
    if (!log || !out) return fail(AM_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        am::DiscoveryOptions opts;
        if (options) {
            opts.ff = options->ff;
            opts.th = options->th;
            opts.remove_iterations = options->remove_iterations != 0;
            if (options->state_bound > 0) opts.state_bound = options->state_bound;
        }
        auto bundle = std::make_unique<am_bundle>();
        bundle->bundle = am::discover(log->selection, opts);
        bundle->interaction_view.net = bundle->bundle.interaction_net;
        bundle->mas_view.net = bundle->bundle.mas_net;
        for (const auto& [agent, net] : bundle->bundle.agent_nets) {
            bundle->agent_names.push_back(agent);
            bundle->agent_views.push_back(am_net{net});
        }
        *out = bundle.release();
        return AM_OK;
    });
}

am_status am_discover_baseline(const am_log* log, am_naming naming, double threshold,
                               am_net** out) {
    if (!log || !out) return fail(AM_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        am::EventLog event_log = am::case_log(log->selection, to_naming(naming));
        auto net = std::make_unique<am_net>();
        net->net = am::discover_cm_model(event_log, to_naming(naming), threshold);
        *out = net.release();
        return AM_OK;
    });
}

const am_net* am_bundle_interaction_net(const am_bundle* bundle) {
    return bundle ? &bundle->interaction_view : nullptr;
}

const am_net* am_bundle_mas_net(const am_bundle* bundle) {
    return bundle ? &bundle->mas_view : nullptr;
}

am_status am_bundle_agent_count(const am_bundle* bundle, size_t* out) {
    if (!bundle || !out) return fail(AM_ERR_INVALID_ARGUMENT, "null argument");
    *out = bundle->agent_names.size();
    return AM_OK;
}

am_status am_bundle_agent_name(const am_bundle* bundle, size_t index, const char** out) {
    if (!bundle || !out) return fail(AM_ERR_INVALID_ARGUMENT, "null argument");
    if (index >= bundle->agent_names.size())
        return fail(AM_ERR_INVALID_ARGUMENT, "agent index out of range");
    *out = bundle->agent_names[index].c_str();
    return AM_OK;
}

const am_net* am_bundle_agent_net(const am_bundle* bundle, size_t index) {
    if (!bundle || index >= bundle->agent_views.size()) return nullptr;
    return &bundle->agent_views[index];
}

am_status am_bundle_export(const am_bundle* bundle, const char* directory) {
    if (!bundle || !directory) return fail(AM_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        am::export_bundle(bundle->bundle, directory);
        return AM_OK;
    });
}

am_status am_bundle_verify_json(const am_bundle* bundle, size_t state_bound, char** out) {
    if (!bundle || !out) return fail(AM_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        am::BundleReport report = am::verify_bundle(
            bundle->bundle, state_bound > 0 ? state_bound : am::kDefaultStateBound);
        nlohmann::json doc = nlohmann::json::array();
        for (const auto& v : report.verdicts) {
            nlohmann::json entry{{"net", v.name}, {"safe", v.safe}, {"sound", v.sound}};
            if (!v.error.empty()) entry["error"] = v.error;
            doc.push_back(entry);
        }
        std::string text = doc.dump(2);
        char* buffer = static_cast<char*>(std::malloc(text.size() + 1));
        if (!buffer) throw std::bad_alloc();
        std::memcpy(buffer, text.c_str(), text.size() + 1);
        *out = buffer;
        return AM_OK;
    });
}

void am_bundle_free(am_bundle* bundle) { delete bundle; }

am_status am_net_read_pnml(const char* path, am_net** out) {
    if (!path || !out) return fail(AM_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        auto net = std::make_unique<am_net>();
        net->net = am::read_pnml(path);
        *out = net.release();
        return AM_OK;
    });
}

am_status am_net_write_pnml(const am_net* net, const char* path) {
    if (!net || !path) return fail(AM_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        am::write_pnml(net->net, path);
        return AM_OK;
    });
}

am_status am_net_write_dot(const am_net* net, const char* path) {
    if (!net || !path) return fail(AM_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        am::write_dot(net->net, path);
        return AM_OK;
    });
}

am_status am_net_size(const am_net* net, size_t* out) {
    if (!net || !out) return fail(AM_ERR_INVALID_ARGUMENT, "null argument");
    *out = am::net_size(net->net);
    return AM_OK;
}

am_status am_net_rewrite_to_activity(const am_net* net, am_net** out) {
    if (!net || !out) return fail(AM_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        auto rewritten = std::make_unique<am_net>();
        am::WorkflowNet source = net->net;
        if (source.discipline == am::LabelDiscipline::Plain)
            source.discipline = am::LabelDiscipline::Mas;  // nets loaded from PNML
        rewritten->net = am::rewrite_labels_to_activity(source);
        *out = rewritten.release();
        return AM_OK;
    });
}

am_status am_net_is_safe(const am_net* net, size_t state_bound, int* out) {
    if (!net || !out) return fail(AM_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        *out = am::is_safe(net->net, state_bound > 0 ? state_bound : am::kDefaultStateBound) ? 1 : 0;
        return AM_OK;
    });
}

am_status am_net_is_sound(const am_net* net, size_t state_bound, int* out) {
    if (!net || !out) return fail(AM_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        *out = am::is_sound(net->net, state_bound > 0 ? state_bound : am::kDefaultStateBound) ? 1 : 0;
        return AM_OK;
    });
}

void am_net_free(am_net* net) { delete net; }

am_status am_measure(const am_net* net, const am_log* log, am_naming naming, size_t state_bound,
                     am_quality* out) {
    if (!net || !log || !out) return fail(AM_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        am::EventLog event_log = am::case_log(log->selection, to_naming(naming));
        am::QualityReport q = am::measure(net->net, event_log,
                                          state_bound > 0 ? state_bound : am::kDefaultStateBound);
        out->recall = q.recall;
        out->precision = q.precision;
        out->size = q.size;
        out->ent_log = q.ent_log;
        out->ent_model = q.ent_model;
        out->ent_intersection = q.ent_intersection;
        return AM_OK;
    });
}

am_status am_pipeline_run(const am_pipeline_config* config) {
    if (!config || !config->input_path || !config->out_dir)
        return fail(AM_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        am::PipelineInput input;
        input.path = config->input_path;
        if (config->input_format) input.format = config->input_format;
        input.mapping = to_mapping(config->mapping);
        if (config->xes_resource_key) input.xes_keys.resource = config->xes_resource_key;

        am::SweepConfig sweep;
        sweep.vff = config->vff > 0.0 ? config->vff : 1.0;
        if (config->am_ff && config->am_th) {
            for (size_t i = 0; i < config->am_pair_count; ++i)
                sweep.am_pairs.push_back({config->am_ff[i], config->am_th[i]});
        }
        if (config->cm_thresholds) {
            sweep.cm_thresholds.assign(config->cm_thresholds,
                                       config->cm_thresholds + config->cm_threshold_count);
        }
        sweep.namings.clear();
        if (config->use_aol) sweep.namings.push_back(am::NamingKind::ActivityOnly);
        if (config->use_aal) sweep.namings.push_back(am::NamingKind::AgentActivity);
        if (sweep.namings.empty()) throw std::runtime_error("no naming selected");
        if (config->state_bound > 0) sweep.state_bound = config->state_bound;
        sweep.distance_threshold =
            config->distance_threshold >= 0.0 ? config->distance_threshold : 0.5;
        sweep.seed = config->seed;
        sweep.workers = config->workers;
        sweep.remove_iterations = config->remove_iterations != 0;
        am::run_pipeline(input, sweep, config->out_dir);
        return AM_OK;
    });
}

am_status am_pareto_from_results(const char* results_csv, const char* out_dir) {
    if (!results_csv || !out_dir) return fail(AM_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        am::pareto_from_results(results_csv, out_dir);
        return AM_OK;
    });
}

void am_string_free(char* text) { std::free(text); }

}  // extern "C"
