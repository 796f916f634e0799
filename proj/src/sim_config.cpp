#include "attobs/sim_config.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <variant>
#include <vector>

#include "attobs/geometry.hpp"

namespace attobs {
namespace {

using TomlValue = std::variant<double, bool, std::string, std::vector<double>>;

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

// Strips a trailing comment that is not inside a quoted string.
std::string strip_comment(const std::string& line) {
    bool quoted = false;
    for (size_t i = 0; i < line.size(); ++i) {
        if (line[i] == '"') quoted = !quoted;
        if (line[i] == '#' && !quoted) return line.substr(0, i);
    }
    return line;
}

double parse_number(const std::string& text, const std::string& key) {
    size_t used = 0;
    double value;
    try {
        value = std::stod(text, &used);
    } catch (const std::exception&) {
        throw std::runtime_error("config: invalid number for key '" + key + "'");
    }
    if (trim(text.substr(used)).size() != 0)
        throw std::runtime_error("config: trailing characters after number for key '" + key + "'");
    return value;
}

TomlValue parse_value(std::string text, const std::string& key) {
    text = trim(text);
    if (text.empty()) throw std::runtime_error("config: empty value for key '" + key + "'");
    if (text.front() == '"') {
        if (text.size() < 2 || text.back() != '"')
            throw std::runtime_error("config: unterminated string for key '" + key + "'");
        return text.substr(1, text.size() - 2);
    }
    if (text == "true") return true;
    if (text == "false") return false;
    if (text.front() == '[') {
        if (text.back() != ']')
            throw std::runtime_error("config: unterminated array for key '" + key + "'");
        std::vector<double> values;
        std::stringstream body(text.substr(1, text.size() - 2));
        std::string cell;
        while (std::getline(body, cell, ',')) {
            cell = trim(cell);
            if (cell.empty()) continue;
            values.push_back(parse_number(cell, key));
        }
        return values;
    }
    return parse_number(text, key);
}

// Flat TOML subset: `key = value` lines, comments, scalar and
// numeric-array values. No tables, no multi-line values.
std::map<std::string, TomlValue> parse_toml(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("config: cannot open " + path);
    std::map<std::string, TomlValue> entries;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        line = trim(strip_comment(line));
        if (line.empty()) continue;
        const size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("config: expected 'key = value' at " + path + ":" +
                                     std::to_string(lineno));
        const std::string key = trim(line.substr(0, eq));
        if (key.empty())
            throw std::runtime_error("config: missing key at " + path + ":" +
                                     std::to_string(lineno));
        entries[key] = parse_value(line.substr(eq + 1), key);
    }
    return entries;
}

class ConfigReader {
  public:
    explicit ConfigReader(std::map<std::string, TomlValue> entries)
        : entries_(std::move(entries)) {}

    bool has(const std::string& key) const { return entries_.count(key) > 0; }

    double number(const std::string& key, double fallback) {
        if (!has(key)) return fallback;
        return expect<double>(key, "number");
    }

    bool boolean(const std::string& key, bool fallback) {
        if (!has(key)) return fallback;
        return expect<bool>(key, "boolean");
    }

    std::string text(const std::string& key, const std::string& fallback) {
        if (!has(key)) return fallback;
        return expect<std::string>(key, "string");
    }

    Vec3 vec3(const std::string& key) {
        const auto values = expect<std::vector<double>>(key, "array");
        if (values.size() != 3)
            throw std::runtime_error("config: key '" + key + "' needs 3 elements");
        return Vec3(values[0], values[1], values[2]);
    }

    Mat3 mat3(const std::string& key) {
        const auto values = expect<std::vector<double>>(key, "array");
        if (values.size() != 9)
            throw std::runtime_error("config: key '" + key + "' needs 9 elements (row-major)");
        Mat3 m;
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c) m(r, c) = values[static_cast<size_t>(3 * r + c)];
        return m;
    }

    void mark_consumed(const std::string& key) { consumed_.insert(key); }

    void reject_unknown() const {
        for (const auto& [key, value] : entries_)
            if (consumed_.count(key) == 0)
                throw std::runtime_error("config: unknown key '" + key + "'");
    }

  private:
    template <typename T>
    T expect(const std::string& key, const char* what) {
        consumed_.insert(key);
        const auto it = entries_.find(key);
        if (!std::holds_alternative<T>(it->second))
            throw std::runtime_error("config: key '" + key + "' must be a " + std::string(what));
        return std::get<T>(it->second);
    }

    std::map<std::string, TomlValue> entries_;
    std::set<std::string> consumed_;
};

}  // namespace

void SimConfig::validate() const {
    if (!(dt > 0.0)) throw std::invalid_argument("config: dt must be positive");
    if (!(duration >= dt)) throw std::invalid_argument("config: duration must be >= dt");
    if (!(k1 > 0.0) || !(k2 > 0.0))
        throw std::invalid_argument("config: gains must be positive");
    rig.validate();
    if (reference_mode == ReferenceMode::Explicit && !is_rotation(reference.R))
        throw std::invalid_argument("config: reference attitude is not a rotation");
    if (init_mode == InitMode::Explicit && !is_rotation(init.rot))
        throw std::invalid_argument("config: init rotation is not a rotation");
    if (!is_rotation(initial_attitude))
        throw std::invalid_argument("config: initial attitude is not a rotation");
}

SimConfig load_sim_config(const std::string& path) {
    ConfigReader reader(parse_toml(path));
    SimConfig cfg;
    cfg.dt = reader.number("dt", cfg.dt);
    cfg.duration = reader.number("duration", cfg.duration);
    cfg.seed = static_cast<std::uint64_t>(reader.number("seed", 0.0));
    cfg.k1 = reader.number("k1", cfg.k1);
    cfg.k2 = reader.number("k2", cfg.k2);

    const double arm = reader.number("l", 1.0);
    const RigConfig base = default_rig();
    cfg.rig = RigConfig::tetrahedral(arm);
    cfg.rig.gravity = reader.number("gravity", cfg.rig.gravity);
    if (reader.has("mag_dir")) cfg.rig.mag_dir = reader.vec3("mag_dir").normalized();
    cfg.rig.accel_noise_std = reader.number("accel_noise_std", base.accel_noise_std);
    cfg.rig.mag_noise_std = reader.number("mag_noise_std", base.mag_noise_std);
    cfg.noise_on = reader.boolean("noise_on", cfg.noise_on);

    const std::string traj = reader.text("trajectory", "default");
    if (traj == "default") {
        cfg.trajectory = Trajectory::default_profile();
    } else if (traj == "constant_rate") {
        cfg.trajectory = Trajectory::constant_rate(reader.vec3("trajectory_rate"));
    } else if (traj == "table") {
        if (!reader.has("trajectory_table"))
            throw std::runtime_error("config: trajectory = \"table\" needs trajectory_table");
        cfg.trajectory = Trajectory::from_table(reader.text("trajectory_table", ""));
    } else {
        throw std::runtime_error("config: unknown trajectory '" + traj + "'");
    }

    const std::string ref_mode = reader.text("reference_mode", "random");
    if (ref_mode == "random") {
        cfg.reference_mode = SimConfig::ReferenceMode::Random;
    } else if (ref_mode == "explicit") {
        cfg.reference_mode = SimConfig::ReferenceMode::Explicit;
        cfg.reference.R = project_to_rotation(reader.mat3("reference_attitude"));
        cfg.reference.omega = reader.vec3("reference_ang_vel");
    } else {
        throw std::runtime_error("config: unknown reference_mode '" + ref_mode + "'");
    }

    const std::string init_mode = reader.text("init_mode", "random");
    if (init_mode == "random") {
        cfg.init_mode = SimConfig::InitMode::Random;
    } else if (init_mode == "explicit") {
        cfg.init_mode = SimConfig::InitMode::Explicit;
        cfg.init.rot = project_to_rotation(reader.mat3("init_rot"));
        cfg.init.vel = reader.vec3("init_vel");
    } else {
        throw std::runtime_error("config: unknown init_mode '" + init_mode + "'");
    }

    if (reader.has("initial_attitude"))
        cfg.initial_attitude = project_to_rotation(reader.mat3("initial_attitude"));
    cfg.out_dir = reader.text("out_dir", cfg.out_dir);

    reader.reject_unknown();
    cfg.validate();
    return cfg;
}

}  // namespace attobs
