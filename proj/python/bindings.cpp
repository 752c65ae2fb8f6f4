// Python surface: run scenarios, plus a few of the pure functions for
// scripting and cross-checks. Structured results cross as JSON text and
// numpy arrays; the Python layer decodes them.

#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "cues/coverage.hpp"
#include "cues/hexapod.hpp"
#include "cues/mission.hpp"
#include "cues/simulation.hpp"

namespace py = pybind11;
using namespace cues;

namespace {

py::dict to_python(const RunLog& log) {
    const std::size_t cols = kNumericColumns + 1;
    py::array_t<double> states({log.states.size(), cols});
    auto a = states.mutable_unchecked<2>();
    py::list phases;
    for (std::size_t i = 0; i < log.states.size(); ++i) {
        a(i, 0) = log.states[i].t;
        for (std::size_t c = 0; c < kNumericColumns; ++c) a(i, c + 1) = log.states[i].values[c];
        phases.append(to_string(log.states[i].phase));
    }
    py::list names;
    names.append("t");
    for (const auto& n : numeric_column_names()) names.append(n);
    py::dict out;
    out["columns"] = names;
    out["states"] = states;
    out["phases"] = phases;
    out["events_jsonl"] = events_to_jsonl(log.events);
    out["metrics_json"] = log.metrics.dump();
    return out;
}

Scenario with_overrides(const std::filesystem::path& path, std::optional<std::uint64_t> seed,
                        std::optional<double> duration) {
    Scenario sc = load_scenario(path);
    if (seed) sc.run.seed = *seed;
    if (duration) sc.run.duration = *duration;
    sc.validate();
    return sc;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Coastal underwater evidence search simulator (native core)";

    // Translators are tried newest first, so the base class goes in first.
    py::register_exception<Error>(m, "CuesError", PyExc_RuntimeError);
    py::register_exception<ScenarioError>(m, "ScenarioError", PyExc_ValueError);

    m.def(
        "simulate",
        [](const std::filesystem::path& path, std::optional<std::uint64_t> seed, std::optional<double> duration,
           std::optional<std::filesystem::path> out, std::vector<std::string> formats) {
            const Scenario sc = with_overrides(path, seed, duration);
            RunLog log;
            {
                py::gil_scoped_release release;
                log = run_simulation(sc);
            }
            if (out) emit_outputs(log, *out, formats.empty() ? sc.run.formats : parse_output_formats(formats, "formats"));
            return to_python(log);
        },
        py::arg("scenario"), py::arg("seed") = py::none(), py::arg("duration") = py::none(),
        py::arg("out") = py::none(), py::arg("formats") = std::vector<std::string>{});

    m.def(
        "validate",
        [](const std::filesystem::path& path) {
            const Scenario sc = load_scenario(path);
            py::dict d;
            d["name"] = sc.name;
            d["mode"] = to_string(sc.mission.mode);
            d["dt"] = sc.run.dt;
            d["duration"] = sc.run.duration;
            d["seed"] = sc.run.seed;
            d["objects"] = sc.mission.objects.size();
            return d;
        },
        py::arg("scenario"));

    m.def(
        "read_run_dir",
        [](const std::filesystem::path& dir) { return to_python(read_run_dir(dir)); }, py::arg("run_dir"));

    m.def(
        "lawnmower",
        [](double x_min, double y_min, double x_max, double y_max, double swath, const std::string& entry) {
            const auto p = generate_lawnmower({x_min, y_min, x_max, y_max}, swath, corner_from_string(entry));
            std::vector<std::pair<double, double>> wp;
            for (const auto& v : p.waypoints()) wp.emplace_back(v.x(), v.y());
            return wp;
        },
        py::arg("x_min"), py::arg("y_min"), py::arg("x_max"), py::arg("y_max"), py::arg("swath"),
        py::arg("entry") = "sw");

    m.def(
        "swept_area",
        [](const std::vector<std::pair<double, double>>& track, double swath, double cell) {
            std::vector<TrackPoint> pts;
            for (std::size_t i = 0; i < track.size(); ++i) {
                pts.push_back({static_cast<double>(i), Vec2(track[i].first, track[i].second), true});
            }
            return swept_area(pts, swath, cell);
        },
        py::arg("track"), py::arg("swath"), py::arg("cell") = 0.25);

    m.def(
        "leg_ik",
        [](const Vec3& foot) {
            const auto q = leg_ik(foot, LegGeometry{});
            return std::make_tuple(q.coxa, q.knee, q.femur);
        },
        py::arg("foot"), "Joint angles (coxa, knee, femur) for a foot target with the default leg geometry.");
    m.def(
        "leg_fk",
        [](double coxa, double knee, double femur) { return Vec3(leg_fk({coxa, knee, femur}, LegGeometry{})); },
        py::arg("coxa"), py::arg("knee"), py::arg("femur"));

    m.def("wrap_angle", &wrap_angle, py::arg("angle"));
}
