#pragma once

#include <charconv>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>

#include "depbench/random.hpp"
#include "depbench/types.hpp"

namespace depbench {

enum class Scenario {
    Linear,
    Quadratic,
    Cubic,
    SineLow,
    SineHigh,
    Root4,
    Circle,
    Step,
};

inline constexpr Scenario kAllScenarios[] = {
    Scenario::Linear, Scenario::Quadratic, Scenario::Cubic,   Scenario::SineLow,
    Scenario::SineHigh, Scenario::Root4,   Scenario::Circle,  Scenario::Step,
};

// Frozen recipe constants. The multiplier scales sigma so that one unit of
// noise degrades each relationship on a comparable footing; the exact values
// are conventions of this benchmark, recorded here and in scenarios.json.
struct ScenarioInfo {
    Scenario id;
    std::string_view name;
    std::string_view x_marginal;
    std::string_view formula;
    double noise_multiplier;
};

inline constexpr ScenarioInfo kScenarioTable[] = {
    {Scenario::Linear, "linear", "uniform(0,1)", "y = x + e", 1.0},
    {Scenario::Quadratic, "quadratic", "uniform(0,1)", "y = 4*(x-1/2)^2 + e", 1.0},
    {Scenario::Cubic, "cubic", "uniform(0,1)",
     "y = 128*(x-1/3)^3 - 48*(x-1/3)^2 - 12*(x-1/3) + 10*e", 10.0},
    {Scenario::SineLow, "sine_low", "uniform(0,1)", "y = sin(4*pi*x) + 2*e", 2.0},
    {Scenario::SineHigh, "sine_high", "uniform(0,1)", "y = sin(16*pi*x) + e", 1.0},
    {Scenario::Root4, "root4", "uniform(0,1)", "y = x^(1/4) + e", 1.0},
    {Scenario::Circle, "circle", "theta ~ uniform(0,2*pi)",
     "x = cos(theta) + e/4, y = sin(theta) + e'/4 (independent e, e')", 0.25},
    {Scenario::Step, "step", "uniform(0,1)", "y = (x > 1/2 ? 1 : 0) + 5*e", 5.0},
};

inline const ScenarioInfo& scenario_info(Scenario s) {
    return kScenarioTable[static_cast<int>(s)];
}

inline std::string_view scenario_name(Scenario s) { return scenario_info(s).name; }

inline std::optional<Scenario> scenario_from_name(std::string_view name) {
    for (const ScenarioInfo& info : kScenarioTable)
        if (info.name == name) return info.id;
    return std::nullopt;
}

// Additive Gaussian noise level; e = sigma * noise_multiplier * z in the
// recipes above, with z a standard normal draw.
struct NoiseSpec {
    double sigma = 0.0;
};

inline void validate(const NoiseSpec& s) {
    if (!(s.sigma >= 0.0) || !std::isfinite(s.sigma))
        throw std::invalid_argument("NoiseSpec: sigma must be finite and >= 0");
}

namespace detail {

inline double signal_value(Scenario s, double x) {
    switch (s) {
        case Scenario::Linear: return x;
        case Scenario::Quadratic: {
            const double c = x - 0.5;
            return 4.0 * c * c;
        }
        case Scenario::Cubic: {
            const double t = x - 1.0 / 3.0;
            return 128.0 * t * t * t - 48.0 * t * t - 12.0 * t;
        }
        case Scenario::SineLow: return std::sin(4.0 * std::numbers::pi * x);
        case Scenario::SineHigh: return std::sin(16.0 * std::numbers::pi * x);
        case Scenario::Root4: return std::pow(x, 0.25);
        case Scenario::Step: return x > 0.5 ? 1.0 : 0.0;
        case Scenario::Circle: break;  // not an additive-noise recipe
    }
    throw std::invalid_argument("signal_value: no deterministic signal for this scenario");
}

}  // namespace detail

// n i.i.d. pairs from the scenario's recipe at the given noise level. Each
// point consumes a fixed number of draws (two, three for the circle), so the
// output is a pure function of (s, n, noise, stream state).
inline Dataset generate(Scenario s, std::size_t n, const NoiseSpec& noise, RandomStream& stream) {
    if (n < 2) throw SampleTooSmall("generate: need n >= 2");
    validate(noise);
    const double amp = noise.sigma * scenario_info(s).noise_multiplier;

    Dataset d;
    d.x.resize(n);
    d.y.resize(n);
    if (s == Scenario::Circle) {
        for (std::size_t i = 0; i < n; ++i) {
            const double theta = 2.0 * std::numbers::pi * stream.next_uniform();
            d.x[i] = std::cos(theta) + amp * stream.next_normal();
            d.y[i] = std::sin(theta) + amp * stream.next_normal();
        }
    } else {
        for (std::size_t i = 0; i < n; ++i) {
            const double u = stream.next_uniform();
            d.x[i] = u;
            d.y[i] = detail::signal_value(s, u) + amp * stream.next_normal();
        }
    }
    return d;
}

// Independent pair with the scenario's marginals: x from one generate draw,
// y from a second. Used to calibrate null cutoffs.
inline Dataset generate_null(Scenario s, std::size_t n, const NoiseSpec& noise,
                             RandomStream& stream) {
    Dataset first = generate(s, n, noise, stream);
    Dataset second = generate(s, n, noise, stream);
    first.y = std::move(second.y);
    return first;
}

// The recipe table as a JSON document, so emitted results are self-describing.
inline std::string scenario_table_json() {
    std::string out = "{\n  \"noise_model\": \"e = sigma * noise_multiplier * z, z ~ normal(0,1)\",\n"
                      "  \"scenarios\": [\n";
    bool head = true;
    for (const ScenarioInfo& info : kScenarioTable) {
        if (!head) out += ",\n";
        head = false;
        out += "    {\"name\": \"";
        out += info.name;
        out += "\", \"x_marginal\": \"";
        out += info.x_marginal;
        out += "\", \"formula\": \"";
        out += info.formula;
        out += "\", \"noise_multiplier\": ";
        char buf[32];
        const auto r = std::to_chars(buf, buf + sizeof buf, info.noise_multiplier);
        out.append(buf, r.ptr);
        out += "}";
    }
    out += "\n  ]\n}\n";
    return out;
}

}  // namespace depbench
