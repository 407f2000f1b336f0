#include "agentminer/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "agentminer/agent_typing.hpp"
#include "agentminer/inductive.hpp"
#include "agentminer/petri_io.hpp"
#include "agentminer/version.hpp"

namespace fs = std::filesystem;

namespace am {

std::vector<std::pair<double, double>> SweepConfig::effective_am_pairs() const {
    if (!am_pairs.empty()) return am_pairs;
    std::vector<std::pair<double, double>> pairs;
    for (int i = 1; i <= 10; ++i) pairs.push_back({0.1 * i, 1.0 - 0.1 * i});
    return pairs;
}

std::vector<double> SweepConfig::effective_cm_thresholds() const {
    if (!cm_thresholds.empty()) return cm_thresholds;
    std::vector<double> thresholds;
    for (int i = 0; i <= 9; ++i) thresholds.push_back(0.1 * i);
    return thresholds;
}

namespace {

std::string compact(double value) {
    char buffer[32];
    std::snprintf(buffer, sizeof buffer, "%.6g", value);
    return buffer;
}

std::string fixed6(double value) {
    char buffer[32];
    std::snprintf(buffer, sizeof buffer, "%.6f", value);
    return buffer;
}

std::string naming_token(NamingKind naming) {
    return naming == NamingKind::ActivityOnly ? "aol" : "aal";
}

}  // namespace

const char* const kResultsHeader =
    "model_id,miner,naming,ff,th,size,recall,precision,ent_log,ent_model,ent_intersection,safe,sound";

std::string results_csv(const std::vector<ResultRow>& rows) {
    std::ostringstream out;
    out << kResultsHeader << '\n';
    for (const auto& r : rows) {
        out << r.model_id << ',' << r.miner << ',' << r.naming << ','
            << (r.ff ? compact(*r.ff) : std::string{}) << ',' << compact(r.th) << ',' << r.size
            << ',' << fixed6(r.recall) << ',' << fixed6(r.precision) << ',' << fixed6(r.ent_log)
            << ',' << fixed6(r.ent_model) << ',' << fixed6(r.ent_intersection) << ','
            << (r.safe ? "true" : "false") << ',' << (r.sound ? "true" : "false") << '\n';
    }
    return out.str();
}

ParetoFront pareto_front(const std::vector<ParetoPoint>& points, ParetoAxes axes) {
    if (points.empty()) throw std::runtime_error("pareto front of an empty point set");
    // Orientation: size (the x axis of the size/* pairs) is minimized,
    // recall and precision are maximized.
    bool minimize_x = axes != ParetoAxes::RecallPrecision;
    auto gain_x = [&](const ParetoPoint& p) { return minimize_x ? -p.x : p.x; };

    std::vector<ParetoPoint> front;
    for (const auto& p : points) {
        bool dominated = false;
        for (const auto& q : points) {
            bool geq = gain_x(q) >= gain_x(p) && q.y >= p.y;
            bool gt = gain_x(q) > gain_x(p) || q.y > p.y;
            if (geq && gt) {
                dominated = true;
                break;
            }
        }
        if (!dominated) front.push_back(p);
    }
    std::sort(front.begin(), front.end(), [](const ParetoPoint& a, const ParetoPoint& b) {
        if (a.x != b.x) return a.x < b.x;
        if (a.y != b.y) return a.y < b.y;
        return a.model_id < b.model_id;
    });
    front.erase(std::unique(front.begin(), front.end(),
                            [](const ParetoPoint& a, const ParetoPoint& b) {
                                return a.x == b.x && a.y == b.y;
                            }),
                front.end());
    return ParetoFront{axes, std::move(front)};
}

namespace {

struct AxisNames {
    ParetoAxes axes;
    const char* x;
    const char* y;
};

constexpr AxisNames kAxisTable[] = {
    {ParetoAxes::RecallPrecision, "recall", "precision"},
    {ParetoAxes::SizePrecision, "size", "precision"},
    {ParetoAxes::SizeRecall, "size", "recall"},
};

double axis_value(const ResultRow& row, const char* name) {
    if (std::string(name) == "recall") return row.recall;
    if (std::string(name) == "precision") return row.precision;
    return static_cast<double>(row.size);
}

std::vector<std::string> write_pareto_files(const std::vector<ResultRow>& rows,
                                            const std::string& out_dir) {
    std::vector<std::string> written;
    std::set<std::string> namings;
    for (const auto& r : rows) namings.insert(r.naming);
    for (const auto& naming : namings) {
        for (const auto& axis : kAxisTable) {
            std::vector<ParetoPoint> points;
            for (const auto& r : rows) {
                if (r.naming != naming) continue;
                points.push_back({axis_value(r, axis.x), axis_value(r, axis.y), r.model_id});
            }
            if (points.empty()) continue;
            ParetoFront front = pareto_front(points, axis.axes);
            fs::path path = fs::path(out_dir) / ("pareto-" + naming + "-" + axis.x + "-" + axis.y + ".csv");
            std::ofstream out(path, std::ios::binary);
            if (!out) throw std::runtime_error("cannot write " + path.string());
            out << "model_id," << axis.x << ',' << axis.y << '\n';
            for (const auto& p : front.points) {
                std::string x = std::string(axis.x) == "size"
                                    ? std::to_string(static_cast<std::size_t>(p.x))
                                    : fixed6(p.x);
                out << p.model_id << ',' << x << ',' << fixed6(p.y) << '\n';
            }
            written.push_back(path.string());
        }
    }
    return written;
}

std::size_t worker_count(const SweepConfig& config) {
    if (config.workers > 0) return config.workers;
    if (const char* env = std::getenv("AM_WORKERS")) {
        long n = std::strtol(env, nullptr, 10);
        if (n > 0) return static_cast<std::size_t>(n);
    }
    return 1;
}

/// Runs jobs over a bounded pool; the first failure wins and is rethrown.
void run_jobs(std::size_t workers, std::vector<std::function<void()>>& jobs) {
    if (jobs.empty()) return;
    std::atomic<std::size_t> cursor{0};
    std::vector<std::string> failures(jobs.size());
    std::vector<std::thread> pool;
    std::size_t n = std::min(workers, jobs.size());
    for (std::size_t w = 0; w < n; ++w) {
        pool.emplace_back([&]() {
            while (true) {
                std::size_t i = cursor.fetch_add(1);
                if (i >= jobs.size()) return;
                try {
                    jobs[i]();
                } catch (const std::exception& e) {
                    failures[i] = e.what();
                } catch (...) {
                    failures[i] = "unknown error";
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    for (const auto& f : failures)
        if (!f.empty()) throw std::runtime_error(f);
}

EventSelection ingest(const PipelineInput& input) {
    std::string format = input.format;
    if (format == "auto") {
        format = fs::path(input.path).extension() == ".xes" ? "xes" : "csv";
    }
    if (format == "xes") return parse_xes(input.path, input.xes_keys);
    if (format == "csv") return parse_csv(input.path, input.mapping);
    throw std::runtime_error("unknown input format: " + format);
}

}  // namespace

PipelineResult run_pipeline(const PipelineInput& input, const SweepConfig& config,
                            const std::string& out_dir) {
    fs::create_directories(out_dir);
    fs::create_directories(fs::path(out_dir) / "models");
    auto step = [](const char* tag, auto&& body) {
        try {
            return body();
        } catch (const std::exception& e) {
            throw std::runtime_error(std::string(tag) +
                                     " failed (artifacts so far are partial): " + e.what());
        }
    };

    EventSelection raw = step("select events", [&] { return ingest(input); });
    EventSelection selected = step("select events", [&] {
        EventSelection filtered = variant_frequency_filter(raw, config.vff);
        if (filtered.empty()) throw std::runtime_error("no events after selection");
        return filtered;
    });

    EventSelection typed = step("identify agent types", [&] {
        auto dfgs = instance_dfgs(selected);
        AgentTypeAssignment assignment = identify_agent_types(selected, config.distance_threshold);
        std::ofstream matrix(fs::path(out_dir) / "distance-matrix.csv", std::ios::binary);
        matrix << distance_matrix_csv(dfgs);
        std::ofstream types(fs::path(out_dir) / "agent-types.csv", std::ios::binary);
        types << assignment_csv(assignment);
        return relabel_to_types(selected, assignment);
    });

    auto pairs = config.effective_am_pairs();
    auto thresholds = config.effective_cm_thresholds();

    std::vector<std::function<void()>> jobs;
    std::vector<std::vector<ResultRow>> produced(pairs.size() +
                                                 thresholds.size() * config.namings.size());
    std::size_t job_index = 0;

    // AM jobs: one bundle per (ff, th); measured raw against the AAL log and
    // label-rewritten against the AOL log.
    bool want_aol = std::count(config.namings.begin(), config.namings.end(),
                               NamingKind::ActivityOnly) > 0;
    bool want_aal = std::count(config.namings.begin(), config.namings.end(),
                               NamingKind::AgentActivity) > 0;
    for (const auto& [ff, th] : pairs) {
        auto* slot = &produced[job_index++];
        double ff_v = ff, th_v = th;
        jobs.push_back([&, slot, ff_v, th_v]() {
            DiscoveryOptions options;
            options.ff = ff_v;
            options.th = th_v;
            options.state_bound = config.state_bound;
            options.remove_iterations = config.remove_iterations;
            DiscoveryBundle bundle = discover(typed, options);
            std::string stem = "am-ff" + compact(ff_v) + "-th" + compact(th_v);
            export_bundle(bundle, (fs::path(out_dir) / "models" / stem).string(), config.state_bound);

            auto measure_net = [&](const WorkflowNet& net, NamingKind naming) {
                EventLog log = case_log(typed, naming);
                QualityReport q = measure(net, log, config.state_bound);
                ResultRow row;
                row.model_id = stem + "-" + naming_token(naming);
                row.miner = "am";
                row.naming = naming_token(naming);
                row.ff = ff_v;
                row.th = th_v;
                row.size = q.size;
                row.recall = q.recall;
                row.precision = q.precision;
                row.ent_log = q.ent_log;
                row.ent_model = q.ent_model;
                row.ent_intersection = q.ent_intersection;
                row.safe = is_safe(net, config.state_bound);
                row.sound = is_sound(net, config.state_bound);
                slot->push_back(row);
            };
            if (want_aal) measure_net(bundle.mas_net, NamingKind::AgentActivity);
            if (want_aol) {
                WorkflowNet rewritten = rewrite_labels_to_activity(bundle.mas_net);
                write_pnml(rewritten,
                           (fs::path(out_dir) / "models" / stem / "mas-aol.pnml").string());
                write_dot(rewritten, (fs::path(out_dir) / "models" / stem / "mas-aol.dot").string(),
                          "mas-aol");
                measure_net(rewritten, NamingKind::ActivityOnly);
            }
        });
    }

    // CM baselines: one model per (naming, threshold).
    for (NamingKind naming : config.namings) {
        for (double th : thresholds) {
            auto* slot = &produced[job_index++];
            jobs.push_back([&, slot, naming, th]() {
                EventLog log = case_log(typed, naming);
                WorkflowNet net = discover_cm_model(log, naming, th);
                std::string stem = "cm-im-" + naming_token(naming) + "-th" + compact(th);
                write_pnml(net, (fs::path(out_dir) / "models" / (stem + ".pnml")).string());
                write_dot(net, (fs::path(out_dir) / "models" / (stem + ".dot")).string(), stem);
                QualityReport q = measure(net, log, config.state_bound);
                ResultRow row;
                row.model_id = stem;
                row.miner = "cm-im";
                row.naming = naming_token(naming);
                row.th = th;
                row.size = q.size;
                row.recall = q.recall;
                row.precision = q.precision;
                row.ent_log = q.ent_log;
                row.ent_model = q.ent_model;
                row.ent_intersection = q.ent_intersection;
                row.safe = is_safe(net, config.state_bound);
                row.sound = is_sound(net, config.state_bound);
                slot->push_back(row);
            });
        }
    }

    step("discover and compare models", [&] {
        run_jobs(worker_count(config), jobs);
        return 0;
    });

    PipelineResult result;
    for (const auto& batch : produced)
        result.rows.insert(result.rows.end(), batch.begin(), batch.end());
    std::sort(result.rows.begin(), result.rows.end(), [](const ResultRow& a, const ResultRow& b) {
        if (a.miner != b.miner) return a.miner < b.miner;
        if (a.naming != b.naming) return a.naming < b.naming;
        double fa = a.ff.value_or(-1.0), fb = b.ff.value_or(-1.0);
        if (fa != fb) return fa < fb;
        if (a.th != b.th) return a.th < b.th;
        return a.model_id < b.model_id;
    });

    result.results_path = (fs::path(out_dir) / "results.csv").string();
    {
        std::ofstream out(result.results_path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + result.results_path);
        out << results_csv(result.rows);
    }
    write_pareto_files(result.rows, out_dir);

    nlohmann::json manifest;
    manifest["tool"] = {{"name", "agentminer"}, {"version", kVersion}};
    manifest["input"] = {{"path", input.path},
                         {"events", raw.size()},
                         {"events_selected", selected.size()}};
    nlohmann::json pair_list = nlohmann::json::array();
    for (const auto& [ff, th] : pairs) pair_list.push_back({{"ff", ff}, {"th", th}});
    nlohmann::json naming_list = nlohmann::json::array();
    for (NamingKind naming : config.namings) naming_list.push_back(naming_token(naming));
    manifest["config"] = {{"vff", config.vff},
                          {"am_pairs", pair_list},
                          {"cm_thresholds", thresholds},
                          {"namings", naming_list},
                          {"state_bound", config.state_bound},
                          {"distance_threshold", config.distance_threshold},
                          {"seed", config.seed},
                          {"remove_iterations", config.remove_iterations}};
    manifest["rows"] = result.rows.size();
    std::ofstream mout(fs::path(out_dir) / "manifest.json", std::ios::binary);
    mout << manifest.dump(2) << '\n';
    return result;
}

std::vector<std::string> pareto_from_results(const std::string& results_path,
                                             const std::string& out_dir) {
    auto table = read_csv_table(results_path);
    if (table.empty()) throw std::runtime_error("empty results file: " + results_path);
    const auto& header = table.front();
    auto column = [&](const std::string& name) {
        auto it = std::find(header.begin(), header.end(), name);
        if (it == header.end())
            throw std::runtime_error("results file lacks column '" + name + "'");
        return static_cast<std::size_t>(it - header.begin());
    };
    std::size_t c_id = column("model_id"), c_naming = column("naming"), c_size = column("size"),
                c_recall = column("recall"), c_precision = column("precision");
    std::vector<ResultRow> rows;
    for (std::size_t i = 1; i < table.size(); ++i) {
        const auto& cells = table[i];
        ResultRow row;
        row.model_id = cells.at(c_id);
        row.naming = cells.at(c_naming);
        row.size = static_cast<std::size_t>(std::stoull(cells.at(c_size)));
        row.recall = std::stod(cells.at(c_recall));
        row.precision = std::stod(cells.at(c_precision));
        rows.push_back(std::move(row));
    }
    fs::create_directories(out_dir);
    return write_pareto_files(rows, out_dir);
}

}  // namespace am
