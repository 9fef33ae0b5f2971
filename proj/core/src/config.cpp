#include "gencvx/config.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "gencvx/errors.hpp"

namespace gencvx {
namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::vector<std::string> split_ws(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream is(s);
    std::string tok;
    while (is >> tok) out.push_back(tok);
    return out;
}

double parse_double(const std::string& s, const std::string& key) {
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0') throw ConfigError("invalid number for " + key + ": " + s);
    return v;
}

long parse_long(const std::string& s, const std::string& key) {
    char* end = nullptr;
    const long v = std::strtol(s.c_str(), &end, 10);
    if (end == s.c_str() || *end != '\0') throw ConfigError("invalid integer for " + key + ": " + s);
    return v;
}

Mode parse_mode(const std::string& s) {
    if (s == "necessary") return Mode::Necessary;
    if (s == "sufficient") return Mode::Sufficient;
    if (s == "oracles") return Mode::Oracles;
    if (s == "subdiff-only") return Mode::SubdiffOnly;
    throw ConfigError("unknown mode: " + s);
}

} // namespace

const char* mode_name(Mode m) {
    switch (m) {
    case Mode::Necessary: return "necessary";
    case Mode::Sufficient: return "sufficient";
    case Mode::Oracles: return "oracles";
    case Mode::SubdiffOnly: return "subdiff-only";
    }
    return "?";
}

bool AnalysisConfig::has_mode(Mode m) const {
    return std::find(modes.begin(), modes.end(), m) != modes.end();
}

void AnalysisConfig::validate() const {
    if (!seed_set) throw ConfigError("seed is mandatory (reproducibility)");
    if (fixture.empty()) {
        if (value_source.empty()) throw ConfigError("missing function: set fixture or value");
        if (dimension < 1) throw ConfigError("dimension must be a positive integer");
        if (static_cast<int>(gradient_sources.size()) != dimension)
            throw ConfigError("gradient section must define g1..g<n> for every coordinate");
    }
    if (pair_count < 1) throw ConfigError("pair_count must be positive");
    if (lambda_grid < 2) throw ConfigError("lambda_grid must be at least 2");
    for (const auto& e : {eps_strict, eps_set, eps_memb, eps_crit})
        if (e && !(*e > 0.0)) throw ConfigError("tolerance overrides must be positive");
    if (format != "json" && format != "markdown")
        throw ConfigError("format must be json or markdown");
}

AnalysisConfig parse_config(const std::string& text) {
    AnalysisConfig c;
    c.modes.clear();
    bool modes_seen = false;

    std::istringstream is(text);
    std::string line;
    std::string section;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') throw ConfigError("malformed section header: " + line);
            section = trim(line.substr(1, line.size() - 2));
            if (section != "function" && section != "gradient" && section != "analysis")
                throw ConfigError("unknown section [" + section + "]");
            continue;
        }
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("expected key = value on line " + std::to_string(lineno));
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (section.empty()) throw ConfigError("key outside any section: " + key);

        if (section == "function") {
            if (key == "name") {
                c.name = val;
            } else if (key == "fixture") {
                c.fixture = val;
            } else if (key == "dimension") {
                c.dimension = static_cast<int>(parse_long(val, key));
            } else if (key == "value") {
                c.value_source = val;
            } else if (key == "box") {
                const auto parts = split_ws(val);
                if (parts.size() % 2 != 0 || parts.empty())
                    throw ConfigError("box needs an even number of bounds");
                c.domain_box.clear();
                for (std::size_t i = 0; i + 1 < parts.size(); i += 2)
                    c.domain_box.push_back(
                        {parse_double(parts[i], key), parse_double(parts[i + 1], key)});
            } else if (key == "grad_lipschitz") {
                c.grad_lipschitz = parse_double(val, key);
            } else {
                throw ConfigError("unknown key in [function]: " + key);
            }
        } else if (section == "gradient") {
            if (key.size() < 2 || key[0] != 'g')
                throw ConfigError("gradient keys are g1..g<n>, got: " + key);
            const long idx = parse_long(key.substr(1), key);
            if (idx < 1 || idx > 64) throw ConfigError("gradient index out of range: " + key);
            if (static_cast<long>(c.gradient_sources.size()) < idx)
                c.gradient_sources.resize(idx);
            c.gradient_sources[idx - 1] = val;
        } else {  // analysis
            if (key == "seed") {
                c.seed = static_cast<std::uint64_t>(parse_long(val, key));
                c.seed_set = true;
            } else if (key == "grid_density") {
                c.grid_density = static_cast<int>(parse_long(val, key));
            } else if (key == "pair_count") {
                c.pair_count = parse_long(val, key);
            } else if (key == "direction_count") {
                c.direction_count = static_cast<int>(parse_long(val, key));
            } else if (key == "lambda_grid") {
                c.lambda_grid = static_cast<int>(parse_long(val, key));
            } else if (key == "format") {
                c.format = val;
            } else if (key == "modes") {
                std::string normalized = val;
                std::replace(normalized.begin(), normalized.end(), ',', ' ');
                for (const auto& m : split_ws(normalized)) c.modes.push_back(parse_mode(m));
                modes_seen = true;
            } else if (key == "eps_strict") {
                c.eps_strict = parse_double(val, key);
            } else if (key == "eps_set") {
                c.eps_set = parse_double(val, key);
            } else if (key == "eps_memb") {
                c.eps_memb = parse_double(val, key);
            } else if (key == "eps_crit") {
                c.eps_crit = parse_double(val, key);
            } else {
                throw ConfigError("unknown key in [analysis]: " + key);
            }
        }
    }
    for (const auto& g : c.gradient_sources)
        if (g.empty() && !c.fixture.empty()) break;
    if (!modes_seen) c.modes = {Mode::Necessary, Mode::Sufficient, Mode::Oracles};
    return c;
}

AnalysisConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

std::string serialize_config(const AnalysisConfig& c) {
    std::ostringstream os;
    os << "[function]\n";
    os << "name = " << c.name << "\n";
    if (!c.fixture.empty()) os << "fixture = " << c.fixture << "\n";
    if (c.dimension > 0) os << "dimension = " << c.dimension << "\n";
    if (!c.value_source.empty()) os << "value = " << c.value_source << "\n";
    if (!c.domain_box.empty()) {
        os << "box =";
        for (const auto& iv : c.domain_box) {
            char buf[64];
            std::snprintf(buf, sizeof buf, " %.17g %.17g", iv[0], iv[1]);
            os << buf;
        }
        os << "\n";
    }
    if (c.grad_lipschitz) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", *c.grad_lipschitz);
        os << "grad_lipschitz = " << buf << "\n";
    }
    if (!c.gradient_sources.empty()) {
        os << "\n[gradient]\n";
        for (std::size_t i = 0; i < c.gradient_sources.size(); ++i)
            os << "g" << (i + 1) << " = " << c.gradient_sources[i] << "\n";
    }
    os << "\n[analysis]\n";
    os << "seed = " << c.seed << "\n";
    if (c.grid_density > 0) os << "grid_density = " << c.grid_density << "\n";
    os << "pair_count = " << c.pair_count << "\n";
    if (c.direction_count > 0) os << "direction_count = " << c.direction_count << "\n";
    os << "lambda_grid = " << c.lambda_grid << "\n";
    os << "format = " << c.format << "\n";
    os << "modes =";
    for (const Mode m : c.modes) os << " " << mode_name(m);
    os << "\n";
    auto emit_eps = [&](const char* key, const std::optional<double>& v) {
        if (!v) return;
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", *v);
        os << key << " = " << buf << "\n";
    };
    emit_eps("eps_strict", c.eps_strict);
    emit_eps("eps_set", c.eps_set);
    emit_eps("eps_memb", c.eps_memb);
    emit_eps("eps_crit", c.eps_crit);
    return os.str();
}

} // namespace gencvx
