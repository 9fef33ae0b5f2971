#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace gencvx {

enum class Mode { Necessary, Sufficient, Oracles, SubdiffOnly };
const char* mode_name(Mode m);

// Analysis request: either a fixture name or inline expressions, plus the
// sampling budget and tolerance overrides. `seed` is mandatory so every run
// is reproducible.
struct AnalysisConfig {
    std::string fixture;  // when set, the inline fields are ignored

    std::string name = "candidate";
    int dimension = 0;
    std::string value_source;
    std::vector<std::string> gradient_sources;
    std::vector<std::array<double, 2>> domain_box;
    std::optional<double> grad_lipschitz;

    int grid_density = 0;     // 0 = dimension-dependent default
    long pair_count = 2000;
    int direction_count = 0;  // 0 = max(8, 4n)
    int lambda_grid = 64;
    std::uint64_t seed = 0;
    bool seed_set = false;

    std::optional<double> eps_strict, eps_set, eps_memb, eps_crit;

    std::string format = "json";  // json | markdown
    std::vector<Mode> modes = {Mode::Necessary, Mode::Sufficient, Mode::Oracles};

    bool has_mode(Mode m) const;
    void validate() const;  // throws ConfigError
};

// Plain-text config with [function], [gradient] and [analysis] sections.
AnalysisConfig parse_config(const std::string& text);
AnalysisConfig load_config_file(const std::string& path);
std::string serialize_config(const AnalysisConfig& c);

} // namespace gencvx
