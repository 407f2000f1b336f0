#include "agentminer/log_io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "xml_mini.hpp"

namespace am {

namespace {

// Days-from-civil and its inverse, after Howard Hinnant's algorithms.
std::int64_t days_from_civil(int year, unsigned month, unsigned day) {
    year -= month <= 2;
    const int era = (year >= 0 ? year : year - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(year - era * 400);
    const unsigned doy = (153 * (month + (month > 2 ? -3 : 9)) + 2) / 5 + day - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return static_cast<std::int64_t>(era) * 146097 + static_cast<int>(doe) - 719468;
}

void civil_from_days(std::int64_t z, int& year, unsigned& month, unsigned& day) {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const std::int64_t y = static_cast<std::int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    day = doy - (153 * mp + 2) / 5 + 1;
    month = mp + (mp < 10 ? 3 : -9);
    year = static_cast<int>(y + (month <= 2));
}

std::int64_t parse_iso8601(const std::string& text) {
    // YYYY-MM-DD[T ]HH:MM[:SS[.frac]][Z|+HH:MM|-HH:MM|+HHMM|-HHMM|+HH|-HH]
    const char* s = text.c_str();
    int year;
    unsigned month, day, hour, minute;
    int consumed = 0;
    if (std::sscanf(s, "%4d-%2u-%2u%n", &year, &month, &day, &consumed) != 3 || consumed != 10)
        throw std::runtime_error("bad ISO-8601 date: " + text);
    if (month < 1 || month > 12 || day < 1 || day > 31)
        throw std::runtime_error("date out of range: " + text);
    std::size_t pos = 10;
    if (pos >= text.size() || (text[pos] != 'T' && text[pos] != ' '))
        throw std::runtime_error("bad ISO-8601 separator: " + text);
    ++pos;
    if (std::sscanf(s + pos, "%2u:%2u%n", &hour, &minute, &consumed) != 2 || consumed != 5)
        throw std::runtime_error("bad ISO-8601 time: " + text);
    if (hour > 23 || minute > 59) throw std::runtime_error("time out of range: " + text);
    pos += 5;
    std::int64_t seconds = 0, micros = 0;
    if (pos < text.size() && text[pos] == ':') {
        unsigned sec;
        if (std::sscanf(s + pos, ":%2u%n", &sec, &consumed) != 1 || consumed != 3)
            throw std::runtime_error("bad ISO-8601 seconds: " + text);
        seconds = sec;
        pos += 3;
        if (pos < text.size() && text[pos] == '.') {
            ++pos;
            std::size_t start = pos;
            while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
            if (pos == start) throw std::runtime_error("bad fractional seconds: " + text);
            std::string digits = text.substr(start, std::min<std::size_t>(pos - start, 6));
            while (digits.size() < 6) digits.push_back('0');
            micros = std::stoll(digits);
        }
    }
    std::int64_t offset_s = 0;
    if (pos < text.size()) {
        char sign = text[pos];
        if (sign == 'Z') {
            ++pos;
        } else if (sign == '+' || sign == '-') {
            ++pos;
            unsigned oh = 0, om = 0;
            if (std::sscanf(s + pos, "%2u%n", &oh, &consumed) != 1 || consumed != 2)
                throw std::runtime_error("bad timezone offset: " + text);
            pos += 2;
            if (pos < text.size() && text[pos] == ':') ++pos;
            if (pos + 1 < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
                if (std::sscanf(s + pos, "%2u%n", &om, &consumed) == 1 && consumed == 2) pos += 2;
            }
            offset_s = static_cast<std::int64_t>(oh) * 3600 + om * 60;
            if (sign == '-') offset_s = -offset_s;
        }
        if (pos != text.size()) throw std::runtime_error("trailing timestamp characters: " + text);
    }
    std::int64_t days = days_from_civil(year, month, day);
    std::int64_t total_s = days * 86400 + hour * 3600 + minute * 60 + seconds - offset_s;
    return total_s * 1000000 + micros;
}

bool is_integer(const std::string& text) {
    if (text.empty()) return false;
    std::size_t i = (text[0] == '-' || text[0] == '+') ? 1 : 0;
    if (i == text.size()) return false;
    for (; i < text.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(text[i]))) return false;
    return true;
}

}  // namespace

std::int64_t parse_timestamp(const std::string& text, const std::string& format) {
    if (format == "iso8601") return parse_iso8601(text);
    if (format == "epoch-ms") {
        if (!is_integer(text)) throw std::runtime_error("expected epoch milliseconds: " + text);
        return std::stoll(text) * 1000;
    }
    if (format == "epoch-us") {
        if (!is_integer(text)) throw std::runtime_error("expected epoch microseconds: " + text);
        return std::stoll(text);
    }
    if (format == "auto") {
        if (is_integer(text)) return std::stoll(text) * 1000;
        return parse_iso8601(text);
    }
    throw std::runtime_error("unknown timestamp format: " + format);
}

std::string format_timestamp(std::int64_t timestamp_us) {
    std::int64_t micros = timestamp_us % 1000000;
    std::int64_t seconds = timestamp_us / 1000000;
    if (micros < 0) {
        micros += 1000000;
        seconds -= 1;
    }
    std::int64_t days = seconds / 86400;
    std::int64_t in_day = seconds % 86400;
    if (in_day < 0) {
        in_day += 86400;
        days -= 1;
    }
    int year;
    unsigned month, day;
    civil_from_days(days, year, month, day);
    char buffer[40];
    std::snprintf(buffer, sizeof buffer, "%04d-%02u-%02uT%02lld:%02lld:%02lld.%06lldZ", year, month,
                  day, static_cast<long long>(in_day / 3600),
                  static_cast<long long>((in_day % 3600) / 60), static_cast<long long>(in_day % 60),
                  static_cast<long long>(micros));
    return buffer;
}

namespace {

/// RFC-4180 reader: quoted fields, doubled quotes, CRLF or LF row ends.
std::vector<std::vector<std::string>> read_csv_rows(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> row;
    std::string field;
    bool quoted = false;
    bool field_started = false;
    std::size_t i = 0;
    auto end_field = [&]() {
        row.push_back(field);
        field.clear();
        field_started = false;
    };
    auto end_row = [&]() {
        end_field();
        rows.push_back(row);
        row.clear();
    };
    while (i < text.size()) {
        char c = text[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field.push_back('"');
                    i += 2;
                } else {
                    quoted = false;
                    ++i;
                }
            } else {
                field.push_back(c);
                ++i;
            }
        } else if (c == '"' && !field_started && field.empty()) {
            quoted = true;
            field_started = true;
            ++i;
        } else if (c == ',') {
            end_field();
            ++i;
        } else if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') {
            end_row();
            i += 2;
        } else if (c == '\n') {
            end_row();
            ++i;
        } else {
            field.push_back(c);
            field_started = true;
            ++i;
        }
    }
    if (quoted) throw std::runtime_error("unterminated quoted CSV field");
    if (field_started || !field.empty() || !row.empty()) end_row();
    return rows;
}

std::string csv_quote(const std::string& s) {
    bool needs = s.find_first_of(",\"\r\n") != std::string::npos;
    if (!needs) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out.push_back(c);
    }
    out.push_back('"');
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

}  // namespace

EventSelection parse_csv_text(const std::string& text, const ColumnMapping& mapping) {
    auto rows = read_csv_rows(text);
    if (rows.empty()) throw std::runtime_error("CSV without a header row");
    const auto& header = rows.front();
    auto column = [&](const std::string& name) -> std::size_t {
        auto it = std::find(header.begin(), header.end(), name);
        if (it == header.end()) throw std::runtime_error("missing column '" + name + "' in CSV header");
        return static_cast<std::size_t>(it - header.begin());
    };
    std::size_t case_col = column(mapping.case_column);
    std::size_t activity_col = column(mapping.activity_column);
    std::size_t agent_col = column(mapping.agent_column);
    std::size_t ts_col = column(mapping.timestamp_column);

    std::vector<Event> events;
    events.reserve(rows.size() - 1);
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const auto& row = rows[r];
        auto cell = [&](std::size_t col, const std::string& name) -> const std::string& {
            if (col >= row.size() || row[col].empty())
                throw std::runtime_error("missing attribute '" + name + "' at row " + std::to_string(r));
            return row[col];
        };
        Event e;
        e.id = r;  // ingestion counter, row order
        e.case_id = cell(case_col, mapping.case_column);
        e.activity = cell(activity_col, mapping.activity_column);
        e.agent = cell(agent_col, mapping.agent_column);
        const std::string& ts_text = cell(ts_col, mapping.timestamp_column);
        try {
            e.timestamp_us = parse_timestamp(ts_text, mapping.timestamp_format);
        } catch (const std::exception& ex) {
            throw std::runtime_error("row " + std::to_string(r) + ": " + ex.what());
        }
        for (std::size_t c = 0; c < header.size() && c < row.size(); ++c) {
            if (c == case_col || c == activity_col || c == agent_col || c == ts_col) continue;
            if (!row[c].empty()) e.extras[header[c]] = row[c];
        }
        events.push_back(std::move(e));
    }
    return EventSelection(std::move(events));
}

EventSelection parse_csv(const std::string& path, const ColumnMapping& mapping) {
    return parse_csv_text(read_file(path), mapping);
}

std::vector<std::vector<std::string>> read_csv_table(const std::string& path) {
    return read_csv_rows(read_file(path));
}

std::string to_csv(const EventSelection& selection) {
    std::ostringstream out;
    out << "case,activity,agent,timestamp\n";
    for (const Event& e : selection.events()) {
        out << csv_quote(e.case_id) << ',' << csv_quote(e.activity) << ',' << csv_quote(e.agent)
            << ',' << format_timestamp(e.timestamp_us) << '\n';
    }
    return out.str();
}

void write_csv(const EventSelection& selection, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << to_csv(selection);
    if (!out) throw std::runtime_error("write failed: " + path);
}

EventSelection parse_xes_text(const std::string& text, const XesKeys& keys) {
    auto root = xml::parse(text);
    if (root->name != "log") throw std::runtime_error("not an XES document (no log element)");
    std::vector<Event> events;
    std::uint64_t next_id = 1;
    auto string_value = [](const xml::Element& holder, const std::string& key) -> std::string {
        for (const auto& child : holder.children) {
            if ((child->name == "string" || child->name == "date") && child->attribute("key") == key)
                return child->attribute("value");
        }
        return {};
    };
    std::size_t trace_index = 0;
    for (const auto* trace : root->all("trace")) {
        ++trace_index;
        std::string case_id = string_value(*trace, keys.trace_name);
        if (case_id.empty())
            throw std::runtime_error("trace " + std::to_string(trace_index) + " lacks key '" +
                                     keys.trace_name + "'");
        std::size_t event_index = 0;
        for (const auto* event : trace->all("event")) {
            ++event_index;
            auto require = [&](const std::string& key) {
                std::string value = string_value(*event, key);
                if (value.empty())
                    throw std::runtime_error("event " + std::to_string(event_index) + " of trace " +
                                             std::to_string(trace_index) + " lacks key '" + key + "'");
                return value;
            };
            Event e;
            e.id = next_id++;
            e.case_id = case_id;
            e.activity = require(keys.activity);
            e.agent = require(keys.resource);
            e.timestamp_us = parse_timestamp(require(keys.timestamp), "auto");
            events.push_back(std::move(e));
        }
    }
    return EventSelection(std::move(events));
}

EventSelection parse_xes(const std::string& path, const XesKeys& keys) {
    return parse_xes_text(read_file(path), keys);
}

EventSelection variant_frequency_filter(const EventSelection& selection, double vff) {
    if (!(vff > 0.0 && vff <= 1.0)) throw std::runtime_error("vff must be in (0, 1]");
    std::vector<Trace> traces = case_trace_set(selection);
    if (traces.empty()) return selection;

    using Variant = std::vector<std::string>;
    std::map<Variant, std::vector<std::size_t>> by_variant;
    for (std::size_t i = 0; i < traces.size(); ++i) {
        Variant v;
        v.reserve(traces[i].size());
        for (const Event& e : traces[i]) v.push_back(name_of(e, NamingKind::ActivityOnly));
        by_variant[v].push_back(i);
    }
    std::vector<std::pair<Variant, std::size_t>> order;  // (variant, count)
    for (const auto& [variant, members] : by_variant) order.push_back({variant, members.size()});
    std::sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });

    double needed = vff * static_cast<double>(traces.size());
    std::size_t covered = 0;
    std::vector<Event> kept;
    for (const auto& [variant, count] : order) {
        if (static_cast<double>(covered) >= needed) break;
        for (std::size_t i : by_variant.at(variant))
            kept.insert(kept.end(), traces[i].begin(), traces[i].end());
        covered += count;
    }
    return EventSelection(std::move(kept));
}

namespace {

/// splitmix64; one independent stream per (seed, case) pair.
class CaseRng {
public:
    CaseRng(std::uint64_t seed, std::uint64_t case_index) {
        state_ = seed ^ (0x9E3779B97F4A7C15ull * (case_index + 1));
        next();  // decorrelate nearby streams
        next();
    }

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    double uniform() { return static_cast<double>(next() >> 11) * (1.0 / 9007199254740992.0); }

    std::uint64_t below(std::uint64_t n) { return next() % n; }

private:
    std::uint64_t state_;
};

double probability_of(const std::map<std::string, double>& table, const std::string& key,
                      double fallback) {
    auto it = table.find(key);
    if (it == table.end()) return fallback;
    if (it->second < 0.0 || it->second > 1.0)
        throw std::runtime_error("probability out of [0,1] for activity: " + key);
    return it->second;
}

}  // namespace

GeneratorConfig GeneratorConfig::with_defaults(std::uint64_t cases, std::uint64_t seed,
                                               std::uint32_t max_rework_rounds) {
    GeneratorConfig config;
    config.cases = cases;
    config.seed = seed;
    config.max_rework_rounds = max_rework_rounds;
    return config;
}

EventSelection generate_health_log(const GeneratorConfig& config) {
    if (config.cases < 1) throw std::runtime_error("generator needs at least one case");
    // Canonical within-block orders; a round runs its chosen tests and
    // therapy exercises in this order. The first and last member of each
    // block anchor it by default, the middle ones are optional.
    const std::vector<std::string> tests = {"B-test", "U-sound", "X-ray"};
    const std::vector<std::string> therapy = {"physio", "swim", "gym", "yoga"};
    constexpr std::uint64_t kCircuitDraw = 3;
    const std::map<std::string, double> default_inclusion = {
        {"B-test", 1.0}, {"U-sound", 0.45}, {"X-ray", 1.0},
        {"physio", 1.0}, {"swim", 0.45},    {"gym", 0.45}, {"yoga", 1.0},
    };
    const double p_round = probability_of(config.prescription_probabilities, "prescribe", 0.6);
    auto inclusion = [&](const std::string& activity) {
        return probability_of(config.prescription_probabilities, activity,
                              default_inclusion.at(activity));
    };

    // One window per case keeps timestamps globally unique.
    const std::int64_t base_us = 1672560000000000;  // 2023-01-01T08:00:00Z
    const std::int64_t case_stride_us =
        static_cast<std::int64_t>(10 + 10 * static_cast<std::int64_t>(config.max_rework_rounds)) *
        3600 * 1000000;

    std::vector<Event> events;
    std::uint64_t next_id = 1;
    for (std::uint64_t c = 0; c < config.cases; ++c) {
        CaseRng rng(config.seed, c);
        std::string case_id = "case" + std::to_string(c + 1);
        std::int64_t t = base_us + static_cast<std::int64_t>(c) * case_stride_us;
        auto step = [&]() { t += 60 * 1000000 + static_cast<std::int64_t>(rng.uniform() * 3600.0 * 1e6); };
        auto emit = [&](const std::string& activity, const std::string& agent, std::int64_t at) {
            events.push_back(Event{next_id++, at, case_id, activity, agent, {}});
        };
        auto emit_step = [&](const std::string& activity, const std::string& agent) {
            step();
            emit(activity, agent, t);
        };

        emit_step("check", "d1");
        emit_step("analyze", "d1");
        for (std::uint32_t round = 0; round < config.max_rework_rounds; ++round) {
            if (rng.uniform() >= p_round) break;
            emit_step("prescribe", "d1");

            std::string test_doctor = rng.below(2) == 0 ? "d2" : "d4";
            std::string therapy_doctor = rng.below(2) == 0 ? "d3" : "d5";
            std::vector<std::string> chosen_tests, chosen_therapy;
            for (const auto& a : tests)
                if (rng.uniform() < inclusion(a)) chosen_tests.push_back(a);
            if (chosen_tests.empty()) chosen_tests.push_back(tests[rng.below(tests.size())]);
            for (const auto& a : therapy)
                if (rng.uniform() < inclusion(a)) chosen_therapy.push_back(a);
            if (chosen_therapy.empty()) chosen_therapy.push_back(therapy[rng.below(therapy.size())]);

            // The two blocks run independently: each is contiguous, their
            // order within the round falls out of the independent timestamp
            // draws, and the therapy circuit repeats one to kCircuitDraw
            // times.
            std::uint64_t circuits = 1 + rng.below(kCircuitDraw);
            auto emit_tests = [&]() {
                for (const auto& a : chosen_tests) emit_step(a, test_doctor);
            };
            auto emit_therapy = [&]() {
                for (std::uint64_t pass = 0; pass < circuits; ++pass)
                    for (const auto& a : chosen_therapy) emit_step(a, therapy_doctor);
            };
            if (rng.below(2) == 0) {
                emit_tests();
                emit_therapy();
            } else {
                emit_therapy();
                emit_tests();
            }

            emit_step("check", "d1");
            emit_step("analyze", "d1");
        }
        emit_step("discharge", "d1");
    }
    return EventSelection(std::move(events));
}

}  // namespace am
