#include "uavopt/scenario.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "uavopt/errors.hpp"

namespace uavopt {

using nlohmann::json;

TimeGrid TimeGrid::from_slots(double horizon_s, int num_slots)
{
    if (num_slots < 1) {
        throw ConfigError("grid.num_slots must be at least 1");
    }
    if (!(horizon_s > 0.0) || !std::isfinite(horizon_s)) {
        throw ConfigError("grid.horizon_s must be positive");
    }
    return TimeGrid{horizon_s, num_slots, horizon_s / num_slots};
}

Eigen::Matrix2Xd Scenario::node_positions() const
{
    Eigen::Matrix2Xd out(2, num_nodes());
    for (int n = 0; n < num_nodes(); ++n) {
        out.col(n) = nodes[n].position;
    }
    return out;
}

Scenario Scenario::with_budget(double power_budget_w) const
{
    Scenario copy = *this;
    copy.radio.power_budget_w = power_budget_w;
    validate(copy);
    return copy;
}

Scenario Scenario::translated(const Eigen::Vector2d& offset) const
{
    Scenario copy = *this;
    for (auto& node : copy.nodes) {
        node.position += offset;
    }
    copy.uav.start += offset;
    copy.uav.finish += offset;
    return copy;
}

namespace {

void require_positive(double v, const char* name)
{
    if (!std::isfinite(v) || !(v > 0.0)) {
        throw ConfigError(std::string(name) + " must be positive and finite");
    }
}

void require_finite(const Eigen::Vector2d& v, const char* name)
{
    if (!v.allFinite()) {
        throw ConfigError(std::string(name) + " must be finite");
    }
}

} // namespace

void validate(const Scenario& sc)
{
    if (sc.nodes.empty()) {
        throw ConfigError("scenario needs at least one ground node");
    }
    std::set<int> ids;
    for (const auto& node : sc.nodes) {
        require_finite(node.position, "node position");
        if (!ids.insert(node.id).second) {
            throw ConfigError("duplicate node id " + std::to_string(node.id));
        }
    }
    require_positive(sc.uav.altitude_m, "uav.altitude_m");
    require_positive(sc.uav.v_max_mps, "uav.v_max_mps");
    require_finite(sc.uav.start, "uav.start");
    require_finite(sc.uav.finish, "uav.finish");

    require_positive(sc.radio.bandwidth_hz, "radio.bandwidth_hz");
    require_positive(sc.radio.noise_w_per_hz, "radio noise");
    require_positive(sc.radio.beta0, "radio.beta0");
    require_positive(sc.radio.reference_distance_m, "radio.reference_distance_m");
    require_positive(sc.radio.power_budget_w, "radio.power_budget_w");

    if (sc.grid.num_slots < 1) {
        throw ConfigError("grid.num_slots must be at least 1");
    }
    require_positive(sc.grid.horizon_s, "grid.horizon_s");
    require_positive(sc.grid.slot_s, "grid.slot_s");
    const double product = sc.grid.num_slots * sc.grid.slot_s;
    if (std::abs(product - sc.grid.horizon_s) > 8 * std::numeric_limits<double>::epsilon() * sc.grid.horizon_s) {
        throw ConfigError("grid.horizon_s must equal num_slots * slot_s");
    }
}

Scenario make_scenario(std::vector<GroundNode> nodes, UavParams uav, RadioParams radio, TimeGrid grid)
{
    Scenario sc{std::move(nodes), uav, radio, grid};
    validate(sc);
    return sc;
}

double dbm_per_hz_to_w_per_hz(double dbm_per_hz)
{
    return std::pow(10.0, (dbm_per_hz - 30.0) / 10.0);
}

std::vector<Violation> check_trajectory(const Trajectory& traj, const Scenario& sc)
{
    const int M = sc.num_slots();
    if (traj.size() != M) {
        throw InfeasibleError("trajectory has " + std::to_string(traj.size()) + " points, scenario has "
                              + std::to_string(M) + " slots");
    }
    const double step = sc.max_step_m();
    const double limit = step * step + kMotionSlackM2;

    std::vector<Violation> out;
    auto check = [&](const Eigen::Vector2d& from, const Eigen::Vector2d& to, Leg leg, int slot) {
        const double d2 = (to - from).squaredNorm();
        if (!(d2 <= limit)) {
            out.push_back({leg, slot, std::sqrt(d2) - step});
        }
    };

    check(sc.uav.start, traj.point(1), Leg::Start, 1);
    for (int m = 2; m <= M; ++m) {
        check(traj.point(m - 1), traj.point(m), Leg::Step, m);
    }
    check(traj.point(M), sc.uav.finish, Leg::Finish, M + 1);
    return out;
}

namespace {

const json& require(const json& obj, const char* key, const char* where)
{
    if (!obj.is_object() || !obj.contains(key)) {
        throw ConfigError(std::string("missing key '") + key + "' in " + where);
    }
    return obj.at(key);
}

double number(const json& obj, const char* key, const char* where)
{
    const json& v = require(obj, key, where);
    if (!v.is_number()) {
        throw ConfigError(std::string("'") + key + "' in " + where + " must be a number");
    }
    return v.get<double>();
}

Eigen::Vector2d pair(const json& v, const char* what)
{
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
        throw ConfigError(std::string(what) + " must be an [x, y] pair");
    }
    return {v[0].get<double>(), v[1].get<double>()};
}

} // namespace

Scenario load_scenario(std::string_view config_text)
{
    json doc;
    try {
        doc = json::parse(config_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
    if (!doc.is_object()) {
        throw ConfigError("config must be an object");
    }

    std::vector<GroundNode> nodes;
    const json& jnodes = require(doc, "nodes", "config");
    if (!jnodes.is_array()) {
        throw ConfigError("'nodes' must be a list of [x, y] pairs");
    }
    for (std::size_t i = 0; i < jnodes.size(); ++i) {
        nodes.push_back({static_cast<int>(i) + 1, pair(jnodes[i], "node")});
    }

    const json& juav = require(doc, "uav", "config");
    UavParams uav;
    uav.altitude_m = number(juav, "altitude_m", "uav");
    uav.v_max_mps = number(juav, "v_max_mps", "uav");
    uav.start = pair(require(juav, "start", "uav"), "uav.start");
    uav.finish = pair(require(juav, "finish", "uav"), "uav.finish");

    const json& jradio = require(doc, "radio", "config");
    RadioParams radio;
    radio.bandwidth_hz = number(jradio, "bandwidth_hz", "radio");
    const bool has_dbm = jradio.contains("noise_dbm_per_hz");
    const bool has_w = jradio.contains("noise_w_per_hz");
    if (has_dbm == has_w) {
        throw ConfigError("radio needs exactly one of noise_dbm_per_hz or noise_w_per_hz");
    }
    if (has_dbm) {
        const double dbm = number(jradio, "noise_dbm_per_hz", "radio");
        if (!std::isfinite(dbm)) {
            throw ConfigError("radio.noise_dbm_per_hz must be finite");
        }
        radio.noise_w_per_hz = dbm_per_hz_to_w_per_hz(dbm);
    } else {
        radio.noise_w_per_hz = number(jradio, "noise_w_per_hz", "radio");
    }
    radio.beta0 = number(jradio, "beta0", "radio");
    radio.reference_distance_m = jradio.contains("reference_distance_m")
                                     ? number(jradio, "reference_distance_m", "radio")
                                     : 1.0;
    radio.power_budget_w = number(jradio, "power_budget_w", "radio");

    const json& jgrid = require(doc, "grid", "config");
    const double horizon = number(jgrid, "horizon_s", "grid");
    TimeGrid grid;
    if (jgrid.contains("num_slots")) {
        const json& v = jgrid.at("num_slots");
        if (!v.is_number_integer()) {
            throw ConfigError("grid.num_slots must be an integer");
        }
        grid = TimeGrid::from_slots(horizon, v.get<int>());
    } else if (jgrid.contains("slot_s")) {
        const double slot = number(jgrid, "slot_s", "grid");
        require_positive(slot, "grid.slot_s");
        const double ratio = horizon / slot;
        const double rounded = std::round(ratio);
        if (std::abs(ratio - rounded) > 1e-9 * std::max(1.0, rounded)) {
            throw ConfigError("grid.horizon_s is not a whole number of slots");
        }
        grid = TimeGrid::from_slots(horizon, static_cast<int>(rounded));
    } else {
        throw ConfigError("grid needs num_slots or slot_s");
    }

    return make_scenario(std::move(nodes), uav, radio, grid);
}

Scenario load_scenario_file(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config " + path.string());
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return load_scenario(buf.str());
}

std::string serialize_scenario(const Scenario& sc)
{
    auto xy = [](const Eigen::Vector2d& v) { return json::array({v.x(), v.y()}); };
    json doc;
    doc["nodes"] = json::array();
    for (const auto& node : sc.nodes) {
        doc["nodes"].push_back(xy(node.position));
    }
    doc["uav"] = {{"altitude_m", sc.uav.altitude_m},
                  {"v_max_mps", sc.uav.v_max_mps},
                  {"start", xy(sc.uav.start)},
                  {"finish", xy(sc.uav.finish)}};
    doc["radio"] = {{"bandwidth_hz", sc.radio.bandwidth_hz},
                    {"noise_w_per_hz", sc.radio.noise_w_per_hz},
                    {"beta0", sc.radio.beta0},
                    {"reference_distance_m", sc.radio.reference_distance_m},
                    {"power_budget_w", sc.radio.power_budget_w}};
    doc["grid"] = {{"horizon_s", sc.grid.horizon_s}, {"num_slots", sc.grid.num_slots}};
    return doc.dump(2);
}

} // namespace uavopt
