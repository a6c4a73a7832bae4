#include "stin/scenario_file.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <numbers>
#include <optional>
#include <set>
#include <sstream>

#include "stin/analysis.hpp"
#include "stin/error.hpp"

namespace stin {

namespace {

constexpr double kSpeedOfLight = 299792458.0;

// Keys that give the same quantity in different units.
const std::vector<std::vector<std::string>> kExclusive = {
    {"earth_radius_km", "earth_radius_m"},
    {"orbit_radius_km", "orbit_radius_m", "orbit_altitude_km", "orbit_altitude_m"},
    {"bandwidth_mhz", "bandwidth_hz"},
    {"user_density_per_km2", "user_density_per_m2"},
    {"carrier_frequency_ghz", "carrier_frequency_hz"},
    {"density_per_km2", "density_per_m2", "mean_visible_count"},
    {"tx_power_dbm", "tx_power_w"},
    {"main_gain_dbi", "main_gain_linear"},
    {"side_gain_dbi", "side_gain_linear"},
    {"bias", "bias_db"},
};

const std::map<std::string, std::set<std::string>> kAllowed = {
    {"geometry",
     {"earth_radius_km", "earth_radius_m", "orbit_radius_km", "orbit_radius_m",
      "orbit_altitude_km", "orbit_altitude_m"}},
    {"link",
     {"bandwidth_mhz", "bandwidth_hz", "noise_psd_dbm_hz", "user_density_per_km2",
      "user_density_per_m2", "carrier_frequency_ghz", "carrier_frequency_hz"}},
    {"layer",
     {"density_per_km2", "density_per_m2", "mean_visible_count", "height_distribution",
      "height_min_m", "height_max_m", "height_m", "path_loss_exponent", "tx_power_dbm",
      "tx_power_w", "main_gain_dbi", "main_gain_linear", "side_gain_dbi", "side_gain_linear",
      "bias", "bias_db", "fading", "fading_m", "fading_b", "fading_omega", "nakagami_n"}},
};

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

std::string section_of(const std::string& key) { return key.substr(0, key.find('.')); }
std::string name_of(const std::string& key) { return key.substr(key.find('.') + 1); }

class Reader {
public:
    explicit Reader(const ScenarioDocument& doc) {
        for (const auto& [k, v] : doc.entries) values_[k] = v;
    }

    std::optional<double> number(const std::string& key) const {
        const auto it = values_.find(key);
        if (it == values_.end()) return std::nullopt;
        const std::string& s = it->second;
        char* end = nullptr;
        errno = 0;
        const double v = std::strtod(s.c_str(), &end);
        if (s.empty() || end != s.c_str() + s.size() || errno == ERANGE || !std::isfinite(v))
            throw ConfigError(key, "'" + key + "' is not a finite number: '" + s + "'");
        return v;
    }

    std::optional<int> integer(const std::string& key) const {
        const auto v = number(key);
        if (!v) return std::nullopt;
        if (*v != std::floor(*v) || std::abs(*v) > 1e9)
            throw ConfigError(key, "'" + key + "' must be an integer");
        return static_cast<int>(*v);
    }

    std::optional<std::string> text(const std::string& key) const {
        const auto it = values_.find(key);
        if (it == values_.end()) return std::nullopt;
        return it->second;
    }

    bool has(const std::string& key) const { return values_.count(key) > 0; }

    double required(const std::string& key) const {
        const auto v = number(key);
        if (!v) throw ConfigError(key, "missing required key '" + key + "'");
        return *v;
    }

    /// Exactly one of the unit variants, converted by its factor.
    std::optional<double> one_of(const std::string& section,
                                 const std::vector<std::pair<std::string, double (*)(double)>>& variants,
                                 bool required_key) const {
        std::optional<double> out;
        std::string used;
        for (const auto& [name, convert] : variants) {
            const std::string key = section + "." + name;
            if (const auto v = number(key)) {
                if (out)
                    throw ConfigError(key, "'" + key + "' conflicts with '" + used + "'");
                out = convert(*v);
                used = key;
            }
        }
        if (!out && required_key)
            throw ConfigError(section + "." + variants.front().first,
                              "missing '" + section + "." + variants.front().first + "'");
        return out;
    }

private:
    std::map<std::string, std::string> values_;
};

double same(double x) { return x; }
double km(double x) { return x * 1e3; }
double per_km2(double x) { return x * 1e-6; }
double mhz(double x) { return x * 1e6; }
double ghz(double x) { return x * 1e9; }

NetworkLayer read_layer(const Reader& rd, const std::string& sec, LayerRole role,
                        const SphereGeometry& geom) {
    NetworkLayer l;
    l.role = role;

    const std::string hkind = rd.text(sec + ".height_distribution").value_or("uniform");
    if (hkind == "uniform") {
        if (rd.has(sec + ".height_m"))
            throw ConfigError(sec + ".height_m", "height_m is only valid for degenerate heights");
        l.heights = HeightDistribution::uniform(rd.required(sec + ".height_min_m"),
                                                rd.required(sec + ".height_max_m"));
    } else if (hkind == "degenerate") {
        if (rd.has(sec + ".height_min_m") || rd.has(sec + ".height_max_m"))
            throw ConfigError(sec + ".height_min_m", "degenerate heights take height_m only");
        l.heights = HeightDistribution::degenerate(rd.required(sec + ".height_m"));
    } else {
        throw ConfigError(sec + ".height_distribution", "height_distribution must be uniform or degenerate");
    }

    l.path_loss_exponent = rd.required(sec + ".path_loss_exponent");
    l.tx_power_w = *rd.one_of(sec, {{"tx_power_dbm", dbm_to_watts}, {"tx_power_w", same}}, true);
    l.main_gain = *rd.one_of(sec, {{"main_gain_dbi", db_to_linear}, {"main_gain_linear", same}}, true);
    l.side_gain = *rd.one_of(sec, {{"side_gain_dbi", db_to_linear}, {"side_gain_linear", same}}, true);
    l.bias = rd.one_of(sec, {{"bias", same}, {"bias_db", db_to_linear}}, false).value_or(1.0);

    const std::string fading = rd.text(sec + ".fading").value_or("");
    const bool custom_keys = rd.has(sec + ".fading_m") || rd.has(sec + ".fading_b") ||
                             rd.has(sec + ".fading_omega");
    if (fading != "custom" && custom_keys)
        throw ConfigError(sec + ".fading_m", "fading_m/b/omega need fading = custom");
    if (fading != "nakagami" && rd.has(sec + ".nakagami_n"))
        throw ConfigError(sec + ".nakagami_n", "nakagami_n needs fading = nakagami");
    const bool sat = role == LayerRole::Satellite;
    if (fading == "fhs") {
        l.fading = ShadowedRicianParams::frequent_heavy_shadowing();
    } else if (fading == "as") {
        l.fading = ShadowedRicianParams::average_shadowing();
    } else if (fading == "ils") {
        l.fading = ShadowedRicianParams::infrequent_light_shadowing();
    } else if (fading == "rayleigh") {
        l.fading = sat ? Fading{ShadowedRicianParams::rayleigh()} : Fading{NakagamiParams{1}};
    } else if (fading == "custom") {
        const auto m = rd.integer(sec + ".fading_m");
        if (!m) throw ConfigError(sec + ".fading_m", "custom fading needs fading_m");
        l.fading = ShadowedRicianParams::make(*m, rd.required(sec + ".fading_b"),
                                              rd.required(sec + ".fading_omega"));
    } else if (fading == "nakagami") {
        const auto n = rd.integer(sec + ".nakagami_n");
        if (!n) throw ConfigError(sec + ".nakagami_n", "nakagami fading needs nakagami_n");
        l.fading = NakagamiParams::make(*n);
    } else {
        throw ConfigError(sec + ".fading",
                          "fading must be one of fhs, as, ils, rayleigh, custom, nakagami");
    }
    if (std::holds_alternative<ShadowedRicianParams>(l.fading) != sat)
        throw ConfigError(sec + ".fading", sat ? "satellite fading must be shadowed-rician"
                                               : "terrestrial fading must be nakagami");

    // Density last: the mean-visible form needs the heights.
    const auto density = rd.one_of(sec,
                                   {{"density_per_km2", per_km2},
                                    {"density_per_m2", same},
                                    {"mean_visible_count", same}},
                                   true);
    if (rd.has(sec + ".mean_visible_count")) {
        if (*density < 0.0)
            throw ConfigError(sec + ".mean_visible_count", "mean_visible_count must be >= 0");
        l.density_per_m2 = density_from_mean_visible(l, geom, *density);
    } else {
        l.density_per_m2 = *density;
    }
    return l;
}

std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

}  // namespace

const std::string* ScenarioDocument::find(std::string_view key) const {
    for (const auto& [k, v] : entries)
        if (k == key) return &v;
    return nullptr;
}

void ScenarioDocument::set(const std::string& key, const std::string& value) {
    const std::string sec = section_of(key);
    const std::string name = name_of(key);
    std::set<std::string> drop;
    for (const auto& group : kExclusive) {
        if (std::find(group.begin(), group.end(), name) != group.end())
            for (const auto& g : group)
                if (g != name) drop.insert(sec + "." + g);
    }
    if (name == "fading" && value != "custom") {
        for (const char* k : {"fading_m", "fading_b", "fading_omega"}) drop.insert(sec + "." + k);
    }
    if (name == "fading" && value != "nakagami") drop.insert(sec + ".nakagami_n");
    if (name == "height_distribution") {
        if (value == "degenerate") {
            drop.insert(sec + ".height_min_m");
            drop.insert(sec + ".height_max_m");
        } else {
            drop.insert(sec + ".height_m");
        }
    }
    std::erase_if(entries, [&](const auto& e) { return drop.count(e.first) > 0; });
    for (auto& [k, v] : entries) {
        if (k == key) {
            v = value;
            return;
        }
    }
    entries.emplace_back(key, value);
}

ScenarioDocument parse_document(std::string_view text) {
    ScenarioDocument doc;
    std::string section;
    std::istringstream in{std::string(text)};
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        const auto cpos = raw.find_first_of("#;");
        const std::string line = trim(cpos == std::string::npos ? raw : raw.substr(0, cpos));
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("line " + std::to_string(lineno), "unterminated section header");
            section = trim(line.substr(1, line.size() - 2));
            if (section != "geometry" && section != "link" && section != "satellite" &&
                section != "terrestrial")
                throw ConfigError(section, "unknown section [" + section + "]");
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno), "expected key = value");
        const std::string name = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (section.empty()) throw ConfigError(name, "key '" + name + "' outside any section");
        const std::string key = section + "." + name;
        const std::string kind =
            (section == "satellite" || section == "terrestrial") ? "layer" : section;
        if (kAllowed.at(kind).count(name) == 0)
            throw ConfigError(key, "unknown key '" + key + "'");
        if (doc.find(key)) throw ConfigError(key, "duplicate key '" + key + "'");
        doc.entries.emplace_back(key, value);
    }
    return doc;
}

ScenarioConfig scenario_from_document(const ScenarioDocument& doc) {
    const Reader rd(doc);
    ScenarioConfig sc;
    const double re = *rd.one_of("geometry", {{"earth_radius_km", km}, {"earth_radius_m", same}}, true);
    double rs = 0.0;
    if (const auto alt = rd.one_of("geometry",
                                   {{"orbit_altitude_km", km}, {"orbit_altitude_m", same}}, false)) {
        if (rd.has("geometry.orbit_radius_km") || rd.has("geometry.orbit_radius_m"))
            throw ConfigError("geometry.orbit_altitude_km", "give orbit radius or altitude, not both");
        rs = re + *alt;
    } else {
        rs = *rd.one_of("geometry", {{"orbit_radius_km", km}, {"orbit_radius_m", same}}, true);
    }
    sc.geom = SphereGeometry::make(re, rs);

    sc.bandwidth_hz = *rd.one_of("link", {{"bandwidth_mhz", mhz}, {"bandwidth_hz", same}}, true);
    sc.noise_psd_dbm_hz = rd.required("link.noise_psd_dbm_hz");
    sc.user_density_per_m2 =
        rd.one_of("link", {{"user_density_per_km2", per_km2}, {"user_density_per_m2", same}}, false)
            .value_or(0.0);

    sc.satellite = read_layer(rd, "satellite", LayerRole::Satellite, sc.geom);
    sc.terrestrial = read_layer(rd, "terrestrial", LayerRole::Terrestrial, sc.geom);

    // Optional free-space factor c^2 / (4 pi f_c)^2 folded into every gain.
    if (const auto fc = rd.one_of("link", {{"carrier_frequency_ghz", ghz}, {"carrier_frequency_hz", same}},
                                  false)) {
        if (!(*fc > 0.0)) throw ConfigError("link.carrier_frequency_ghz", "carrier frequency must be positive");
        const double k = std::pow(kSpeedOfLight / (4.0 * std::numbers::pi * *fc), 2);
        for (NetworkLayer* l : {&sc.satellite, &sc.terrestrial}) {
            l->main_gain *= k;
            l->side_gain *= k;
        }
    }
    sc.validate();
    return sc;
}

ScenarioConfig parse_scenario(std::string_view text) {
    return scenario_from_document(parse_document(text));
}

ScenarioDocument load_document(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("path", "cannot open scenario file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_document(ss.str());
}

ScenarioConfig load_scenario(const std::string& path) {
    return scenario_from_document(load_document(path));
}

std::string serialize_scenario(const ScenarioConfig& sc) {
    std::ostringstream os;
    os << "[geometry]\n"
       << "earth_radius_m = " << fmt(sc.geom.earth_radius_m) << "\n"
       << "orbit_radius_m = " << fmt(sc.geom.orbit_radius_m) << "\n\n"
       << "[link]\n"
       << "bandwidth_hz = " << fmt(sc.bandwidth_hz) << "\n"
       << "noise_psd_dbm_hz = " << fmt(sc.noise_psd_dbm_hz) << "\n"
       << "user_density_per_m2 = " << fmt(sc.user_density_per_m2) << "\n";
    for (const NetworkLayer* l : {&sc.satellite, &sc.terrestrial}) {
        os << "\n[" << to_string(l->role) << "]\n"
           << "density_per_m2 = " << fmt(l->density_per_m2) << "\n";
        if (l->heights.is_degenerate()) {
            os << "height_distribution = degenerate\n"
               << "height_m = " << fmt(l->heights.h_min_m) << "\n";
        } else {
            os << "height_distribution = uniform\n"
               << "height_min_m = " << fmt(l->heights.h_min_m) << "\n"
               << "height_max_m = " << fmt(l->heights.h_max_m) << "\n";
        }
        os << "path_loss_exponent = " << fmt(l->path_loss_exponent) << "\n"
           << "tx_power_w = " << fmt(l->tx_power_w) << "\n"
           << "main_gain_linear = " << fmt(l->main_gain) << "\n"
           << "side_gain_linear = " << fmt(l->side_gain) << "\n"
           << "bias = " << fmt(l->bias) << "\n";
        if (const auto* sr = std::get_if<ShadowedRicianParams>(&l->fading)) {
            os << "fading = custom\n"
               << "fading_m = " << sr->m << "\n"
               << "fading_b = " << fmt(sr->b) << "\n"
               << "fading_omega = " << fmt(sr->omega) << "\n";
        } else {
            os << "fading = nakagami\n"
               << "nakagami_n = " << std::get<NakagamiParams>(l->fading).n << "\n";
        }
    }
    return os.str();
}

std::string serialize_document(const ScenarioDocument& doc) {
    std::ostringstream os;
    std::string section;
    for (const auto& [k, v] : doc.entries) {
        const std::string s = section_of(k);
        if (s != section) {
            os << (section.empty() ? "" : "\n") << "[" << s << "]\n";
            section = s;
        }
        os << name_of(k) << " = " << v << "\n";
    }
    return os.str();
}

}  // namespace stin
