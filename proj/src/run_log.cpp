#include "cues/run_log.hpp"

#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <functional>
#include <limits>
#include <iomanip>
#include <sstream>

#include "cues/error.hpp"

namespace cues {
namespace {

constexpr const char* kStatesFile = "states.csv";
constexpr const char* kEventsFile = "events.jsonl";
constexpr const char* kMetricsFile = "metrics.json";
constexpr const char* kReportFile = "report.txt";

std::array<std::string, kNumericColumns> build_names() {
    std::array<std::string, kNumericColumns> n{};
    auto set = [&](Col c, const char* name) { n[static_cast<std::size_t>(c)] = name; };
    set(Col::AsvX, "asv_x");
    set(Col::AsvY, "asv_y");
    set(Col::AsvPsi, "asv_psi");
    set(Col::AsvU, "asv_u");
    set(Col::AsvV, "asv_v");
    set(Col::AsvR, "asv_r");
    set(Col::EstX, "est_x");
    set(Col::EstY, "est_y");
    set(Col::EstPsi, "est_psi");
    set(Col::EstU, "est_u");
    set(Col::EstV, "est_v");
    set(Col::EstR, "est_r");
    set(Col::VarX, "var_x");
    set(Col::VarY, "var_y");
    set(Col::VarPsi, "var_psi");
    set(Col::VarU, "var_u");
    set(Col::VarV, "var_v");
    set(Col::VarR, "var_r");
    set(Col::InnovGpsX, "innov_gps_x");
    set(Col::InnovGpsY, "innov_gps_y");
    set(Col::InnovCompass, "innov_compass");
    set(Col::InnovGyro, "innov_gyro");
    set(Col::CmdHeadingError, "cmd_heading_error");
    set(Col::CmdSpeed, "cmd_speed");
    set(Col::ThrustLeft, "thrust_left");
    set(Col::ThrustRight, "thrust_right");
    set(Col::ForceX, "force_x");
    set(Col::ForceY, "force_y");
    set(Col::MomentN, "moment_n");
    set(Col::TensionX, "tension_x");
    set(Col::TensionY, "tension_y");
    set(Col::TensionZ, "tension_z");
    set(Col::TuvX, "tuv_x");
    set(Col::TuvY, "tuv_y");
    set(Col::TuvZ, "tuv_z");
    set(Col::TuvVx, "tuv_vx");
    set(Col::TuvVy, "tuv_vy");
    set(Col::TuvVz, "tuv_vz");
    set(Col::TowLength, "tow_length");
    set(Col::HexDeployed, "hex_deployed");
    set(Col::HexX, "hex_x");
    set(Col::HexY, "hex_y");
    set(Col::HexHeading, "hex_heading");
    static const char* joints[3] = {"coxa", "knee", "femur"};
    for (int leg = 0; leg < 6; ++leg) {
        for (int j = 0; j < 3; ++j) {
            n[static_cast<std::size_t>(Col::LegAngles) + 3 * leg + j] =
                "leg" + std::to_string(leg) + "_" + joints[j];
        }
    }
    set(Col::WindSpeed, "wind_speed");
    return n;
}

void append_double(std::string& out, double v) {
    if (std::isnan(v)) {
        out += "nan";
        return;
    }
    if (std::isinf(v)) {
        out += v > 0 ? "inf" : "-inf";
        return;
    }
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    out.append(buf, res.ptr);
}

double parse_double(std::string_view s, std::size_t line) {
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
        throw IoError("states.csv line " + std::to_string(line) + ": bad number '" + std::string(s) + "'");
    }
    return v;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(sep, start);
        if (pos == std::string_view::npos) {
            out.push_back(line.substr(start));
            return out;
        }
        out.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
}

bool same_double(double a, double b) {
    return std::memcmp(&a, &b, sizeof a) == 0 || (std::isnan(a) && std::isnan(b));
}

std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw IoError("cannot open " + p.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::filesystem::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary);
    if (!out) throw IoError("cannot write " + p.string());
    out << text;
    if (!out) throw IoError("write failed for " + p.string());
}

}  // namespace

const std::array<std::string, kNumericColumns>& numeric_column_names() {
    static const auto names = build_names();
    return names;
}

bool same_log(const RunLog& a, const RunLog& b) {
    if (a.states.size() != b.states.size() || a.events != b.events || a.metrics != b.metrics) return false;
    for (std::size_t i = 0; i < a.states.size(); ++i) {
        const auto& x = a.states[i];
        const auto& y = b.states[i];
        if (!same_double(x.t, y.t) || x.phase != y.phase) return false;
        for (std::size_t c = 0; c < kNumericColumns; ++c) {
            if (!same_double(x.values[c], y.values[c])) return false;
        }
    }
    return true;
}

std::string states_to_csv(const std::vector<StateRecord>& states) {
    std::string out = "t,phase";
    for (const auto& name : numeric_column_names()) {
        out += ',';
        out += name;
    }
    out += '\n';
    out.reserve(out.size() + states.size() * kNumericColumns * 12);
    for (const auto& rec : states) {
        append_double(out, rec.t);
        out += ',';
        out += to_string(rec.phase);
        for (double v : rec.values) {
            out += ',';
            append_double(out, v);
        }
        out += '\n';
    }
    return out;
}

std::vector<StateRecord> states_from_csv(std::string_view csv) {
    std::vector<StateRecord> out;
    std::size_t pos = 0;
    std::size_t line_no = 0;
    bool header = true;
    while (pos < csv.size()) {
        auto end = csv.find('\n', pos);
        if (end == std::string_view::npos) end = csv.size();
        std::string_view line = csv.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.empty()) continue;
        const auto fields = split(line, ',');
        if (fields.size() != kNumericColumns + 2) {
            throw IoError("states.csv line " + std::to_string(line_no) + ": expected " +
                          std::to_string(kNumericColumns + 2) + " fields, got " + std::to_string(fields.size()));
        }
        if (header) {
            if (fields[0] != "t" || fields[1] != "phase") throw IoError("states.csv: unexpected header");
            for (std::size_t c = 0; c < kNumericColumns; ++c) {
                if (fields[c + 2] != numeric_column_names()[c]) {
                    throw IoError("states.csv: unexpected column '" + std::string(fields[c + 2]) + "'");
                }
            }
            header = false;
            continue;
        }
        StateRecord rec;
        rec.t = parse_double(fields[0], line_no);
        rec.phase = phase_from_string(std::string(fields[1]));
        for (std::size_t c = 0; c < kNumericColumns; ++c) rec.values[c] = parse_double(fields[c + 2], line_no);
        out.push_back(rec);
    }
    if (header) throw IoError("states.csv: missing header");
    return out;
}

std::string events_to_jsonl(const std::vector<LogEvent>& events) {
    std::string out;
    for (const auto& ev : events) {
        nlohmann::json j = {{"t", ev.t}, {"type", ev.type}, {"data", ev.data}};
        out += j.dump();
        out += '\n';
    }
    return out;
}

std::vector<LogEvent> events_from_jsonl(std::string_view text) {
    std::vector<LogEvent> out;
    std::size_t pos = 0;
    while (pos < text.size()) {
        auto end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        const auto line = text.substr(pos, end - pos);
        pos = end + 1;
        if (line.empty()) continue;
        try {
            const auto j = nlohmann::json::parse(line);
            out.push_back({j.at("t").get<double>(), j.at("type").get<std::string>(), j.at("data")});
        } catch (const nlohmann::json::exception& e) {
            throw IoError(std::string("events.jsonl: ") + e.what());
        }
    }
    return out;
}

void emit_outputs(const RunLog& log, const std::filesystem::path& dir, const std::vector<OutputFormat>& formats) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
    for (auto f : formats) {
        if (f == OutputFormat::Csv) {
            write_file(dir / kStatesFile, states_to_csv(log.states));
        } else {
            write_file(dir / kEventsFile, events_to_jsonl(log.events));
            write_file(dir / kMetricsFile, log.metrics.dump(2) + "\n");
            write_file(dir / kReportFile, format_report(log.metrics));
        }
    }
}

RunLog read_run_dir(const std::filesystem::path& dir) {
    if (!std::filesystem::is_directory(dir)) throw IoError("not a run directory: " + dir.string());
    RunLog log;
    bool any = false;
    if (std::filesystem::exists(dir / kStatesFile)) {
        log.states = states_from_csv(read_file(dir / kStatesFile));
        any = true;
    }
    if (std::filesystem::exists(dir / kEventsFile)) {
        log.events = events_from_jsonl(read_file(dir / kEventsFile));
        any = true;
    }
    if (std::filesystem::exists(dir / kMetricsFile)) {
        try {
            log.metrics = nlohmann::json::parse(read_file(dir / kMetricsFile));
        } catch (const nlohmann::json::exception& e) {
            throw IoError(std::string("metrics.json: ") + e.what());
        }
        any = true;
    }
    if (!any) throw IoError("no run outputs in " + dir.string());
    return log;
}

CoverageReport coverage_report(const RunLog& log) {
    const auto vehicle = log.metrics.value("coverage_vehicle", std::string("tuv"));
    const double swath = log.metrics.value("coverage_swath", 0.0);
    if (!(swath > 0.0)) throw EmptyReport("run has no search swath");
    const bool hex = vehicle == "hexapod";
    std::vector<TrackPoint> track;
    track.reserve(log.states.size());
    for (const auto& rec : log.states) {
        TrackPoint p;
        p.t = rec.t;
        if (hex) {
            p.position = Vec2(rec[Col::HexX], rec[Col::HexY]);
            p.active = rec[Col::HexDeployed] > 0.5;
        } else {
            p.position = Vec2(rec[Col::TuvX], rec[Col::TuvY]);
            p.active = rec.phase == Phase::WideAreaSearch;
        }
        track.push_back(p);
    }
    auto r = coverage_from_track(track, swath);
    for (const auto& ev : log.events) {
        if (ev.type == "detection") ++r.detections;
        if (ev.type == "confirmation") ++r.confirmations;
    }
    return r;
}

nlohmann::json to_json(const CoverageReport& r) {
    return {{"area_searched_m2", r.area_searched},
            {"area_per_hour_m2", r.area_per_hour},
            {"active_time_s", r.active_time},
            {"distance_traveled_m", r.distance_traveled},
            {"detections", r.detections},
            {"confirmations", r.confirmations}};
}

std::string format_report(const nlohmann::json& metrics) {
    std::ostringstream out;
    out << std::setprecision(6);
    std::function<void(const nlohmann::json&, const std::string&)> walk = [&](const nlohmann::json& j,
                                                                              const std::string& prefix) {
        for (auto it = j.begin(); it != j.end(); ++it) {
            const std::string key = prefix.empty() ? it.key() : prefix + "." + it.key();
            if (it->is_object()) {
                walk(*it, key);
            } else {
                out << std::left << std::setw(40) << key << ' ';
                if (it->is_number_float()) {
                    out << it->get<double>();
                } else if (it->is_string()) {
                    out << it->get<std::string>();
                } else {
                    out << it->dump();
                }
                out << '\n';
            }
        }
    };
    if (metrics.is_object()) walk(metrics, "");
    return out.str();
}

}  // namespace cues
