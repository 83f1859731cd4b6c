#include "epct/config.hpp"

#include "epct/errors.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace epct {

namespace {

using nlohmann::json;

class Validator {
public:
    void issue(const std::string& path, const std::string& msg) { issues_.push_back(path + ": " + msg); }
    const std::vector<std::string>& issues() const { return issues_; }

    /// Reports keys of `obj` outside `allowed`. Returns false if obj is not an object.
    bool object(const json& obj, const std::string& path, std::initializer_list<std::string_view> allowed) {
        if (!obj.is_object()) {
            issue(path, "expected an object");
            return false;
        }
        const std::set<std::string_view> keys(allowed);
        for (const auto& [key, _] : obj.items())
            if (!keys.contains(key)) issue(path + "." + key, "unknown key");
        return true;
    }

    std::optional<double> number(const json& obj, const std::string& path, const std::string& key) {
        if (!obj.contains(key)) return std::nullopt;
        const json& v = obj.at(key);
        if (!v.is_number() || !std::isfinite(v.get<double>())) {
            issue(path + "." + key, "expected a finite number");
            return std::nullopt;
        }
        return v.get<double>();
    }

    std::optional<double> positive(const json& obj, const std::string& path, const std::string& key) {
        auto v = number(obj, path, key);
        if (v && !(*v > 0.0)) {
            issue(path + "." + key, "must be positive");
            return std::nullopt;
        }
        return v;
    }

    std::optional<long long> integer(const json& obj, const std::string& path, const std::string& key) {
        if (!obj.contains(key)) return std::nullopt;
        const json& v = obj.at(key);
        if (!v.is_number_integer()) {
            issue(path + "." + key, "expected an integer");
            return std::nullopt;
        }
        return v.get<long long>();
    }

    std::optional<std::vector<double>> numbers(const json& obj, const std::string& path, const std::string& key) {
        if (!obj.contains(key)) return std::nullopt;
        const json& v = obj.at(key);
        if (!v.is_array()) {
            issue(path + "." + key, "expected an array of numbers");
            return std::nullopt;
        }
        std::vector<double> out;
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (!v[i].is_number() || !std::isfinite(v[i].get<double>())) {
                issue(path + "." + key + "[" + std::to_string(i) + "]", "expected a finite number");
                return std::nullopt;
            }
            out.push_back(v[i].get<double>());
        }
        return out;
    }

private:
    std::vector<std::string> issues_;
};

void parse_physics(const json& j, Validator& v, RunConfig& cfg) {
    const std::string path = "$.physics";
    if (!v.object(j, path, {"k", "c_b"})) return;
    const double k = v.number(j, path, "k").value_or(-1.0);
    const double cb = v.number(j, path, "c_b").value_or(1.0);
    if (k == 0.0) v.issue(path + ".k", "must be nonzero");
    if (cb < 0.0) v.issue(path + ".c_b", "must be non-negative");
    if (k != 0.0 && cb >= 0.0) cfg.physics = PhysicalParams(k, cb);
}

void parse_coefficient(const json& j, Validator& v, RunConfig& cfg) {
    const std::string path = "$.coefficient";
    if (!v.object(j, path, {"kind", "alpha", "beta", "value", "times", "values", "upper_clamp"})) return;
    if (!j.contains("kind") || !j["kind"].is_string()) {
        v.issue(path + ".kind", "expected one of \"exponential_envelope\", \"constant\", \"tabulated\"");
        return;
    }
    const std::string kind = j["kind"].get<std::string>();
    auto forbid = [&](std::initializer_list<const char*> keys) {
        for (const char* key : keys)
            if (j.contains(key)) v.issue(path + "." + key, "not used by kind \"" + kind + "\"");
    };
    std::optional<CoefficientModel> model;
    if (kind == "exponential_envelope") {
        forbid({"value", "times", "values"});
        const auto alpha = v.positive(j, path, "alpha");
        const auto beta = v.positive(j, path, "beta");
        model = CoefficientModel::exponential_envelope(alpha.value_or(1.0), beta.value_or(1.0));
    } else if (kind == "constant") {
        forbid({"alpha", "beta", "times", "values"});
        const auto value = v.number(j, path, "value");
        if (!j.contains("value")) v.issue(path + ".value", "required for kind \"constant\"");
        if (value) model = CoefficientModel::constant(*value);
    } else if (kind == "tabulated") {
        forbid({"alpha", "beta", "value"});
        const auto times = v.numbers(j, path, "times");
        const auto values = v.numbers(j, path, "values");
        if (!j.contains("times")) v.issue(path + ".times", "required for kind \"tabulated\"");
        if (!j.contains("values")) v.issue(path + ".values", "required for kind \"tabulated\"");
        if (times && values) {
            try {
                model = CoefficientModel::tabulated(*times, *values);
            } catch (const Error& e) {
                v.issue(path, e.what());
            }
        }
    } else {
        v.issue(path + ".kind", "unknown kind \"" + kind + "\"");
    }
    const auto clamp = v.number(j, path, "upper_clamp");
    if (model) cfg.coefficient = clamp ? model->with_upper_clamp(*clamp) : *model;
}

void parse_integrator(const json& j, Validator& v, RunConfig& cfg) {
    const std::string path = "$.integrator";
    if (!v.object(j, path,
                  {"rel_tol", "abs_tol", "dt_init", "dt_min", "dt_max", "blowup_magnitude", "t_end", "max_steps"}))
        return;
    IntegratorOptions& o = cfg.integrator;
    if (auto x = v.positive(j, path, "rel_tol")) o.rel_tol = *x;
    if (auto x = v.positive(j, path, "abs_tol")) o.abs_tol = *x;
    if (auto x = v.positive(j, path, "dt_init")) o.dt_init = *x;
    if (auto x = v.positive(j, path, "dt_min")) o.dt_min = *x;
    if (auto x = v.positive(j, path, "dt_max")) o.dt_max = *x;
    if (auto x = v.positive(j, path, "blowup_magnitude")) o.blowup_magnitude = *x;
    if (auto x = v.positive(j, path, "t_end")) o.t_end = *x;
    if (auto x = v.integer(j, path, "max_steps")) {
        if (*x <= 0)
            v.issue(path + ".max_steps", "must be positive");
        else
            o.max_steps = static_cast<std::size_t>(*x);
    }
    try {
        o.validate();
    } catch (const Error& e) {
        v.issue(path, e.what());
    }
}

void parse_initial(const json& j, Validator& v, RunConfig& cfg) {
    const std::string path = "$.initial";
    if (!v.object(j, path, {"rho", "d"})) return;
    const auto rho = v.number(j, path, "rho");
    const auto d = v.number(j, path, "d");
    if (!j.contains("rho")) v.issue(path + ".rho", "required");
    if (!j.contains("d")) v.issue(path + ".d", "required");
    if (rho && *rho < 0.0) v.issue(path + ".rho", "must be non-negative");
    if (rho && d && *rho >= 0.0) cfg.initial = State2{*rho, *d};
}

void parse_axis(const json& j, Validator& v, const std::string& path, AxisRange& axis) {
    if (!v.object(j, path, {"min", "max", "count"})) return;
    if (auto x = v.number(j, path, "min")) axis.min = *x;
    if (auto x = v.number(j, path, "max")) axis.max = *x;
    if (auto x = v.integer(j, path, "count")) {
        if (*x < 2 || *x > 100000)
            v.issue(path + ".count", "must be between 2 and 100000");
        else
            axis.count = static_cast<int>(*x);
    }
    if (!(axis.min < axis.max)) v.issue(path, "min must be below max");
}

void parse_sweep(const json& j, Validator& v, RunConfig& cfg) {
    const std::string path = "$.sweep";
    if (!v.object(j, path, {"rho", "d"})) return;
    if (j.contains("rho")) parse_axis(j["rho"], v, path + ".rho", cfg.sweep.rho);
    if (j.contains("d")) parse_axis(j["d"], v, path + ".d", cfg.sweep.d);
}

void parse_grid(const json& j, Validator& v, RunConfig& cfg) {
    const std::string path = "$.grid";
    if (!v.object(j, path, {"N", "L"})) return;
    if (auto n = v.integer(j, path, "N")) {
        if (*n < 16 || *n > 4096 || (*n & (*n - 1)) != 0)
            v.issue(path + ".N", "must be a power of two between 16 and 4096");
        else
            cfg.pde.n = static_cast<int>(*n);
    }
    if (auto L = v.positive(j, path, "L")) cfg.pde.half_width = *L;
}

void parse_pde(const json& j, Validator& v, RunConfig& cfg) {
    const std::string path = "$.pde";
    if (!v.object(j, path,
                  {"example", "uniform_density", "t_end", "dt_max", "cfl", "norm_interval", "snapshot_times",
                   "tracers"}))
        return;
    auto& sim = cfg.pde.sim;
    if (j.contains("example")) {
        const json& e = j["example"];
        auto id = e.is_string() ? spectral::parse_example(e.get<std::string>()) : std::nullopt;
        if (!id)
            v.issue(path + ".example", "expected \"5.1\", \"5.2\" or \"5.3\"");
        else
            cfg.pde.example = id;
    }
    if (auto u = v.positive(j, path, "uniform_density")) cfg.pde.uniform_density = u;
    if (j.contains("example") && j.contains("uniform_density"))
        v.issue(path, "\"example\" and \"uniform_density\" are mutually exclusive");
    if (auto x = v.positive(j, path, "t_end")) sim.t_end = *x;
    if (auto x = v.positive(j, path, "dt_max")) sim.dt_max = *x;
    if (auto x = v.positive(j, path, "cfl")) sim.solver.cfl = *x;
    if (auto x = v.positive(j, path, "norm_interval")) sim.norm_interval = *x;
    if (auto times = v.numbers(j, path, "snapshot_times")) {
        for (std::size_t i = 0; i < times->size(); ++i)
            if ((*times)[i] < 0.0) v.issue(path + ".snapshot_times[" + std::to_string(i) + "]", "must be non-negative");
        sim.snapshot_times = *times;
    }
    if (j.contains("tracers")) {
        const json& t = j["tracers"];
        if (!t.is_array()) {
            v.issue(path + ".tracers", "expected an array of [x1, x2] pairs");
        } else {
            for (std::size_t i = 0; i < t.size(); ++i) {
                const json& p = t[i];
                if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number()) {
                    v.issue(path + ".tracers[" + std::to_string(i) + "]", "expected [x1, x2]");
                    continue;
                }
                sim.tracers.push_back({p[0].get<double>(), p[1].get<double>()});
            }
        }
    }
}

}  // namespace

RunConfig parse_config(std::string_view json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError({std::string("$: malformed JSON: ") + e.what()});
    }
    Validator v;
    RunConfig cfg;
    if (v.object(doc, "$", {"physics", "coefficient", "integrator", "initial", "sweep", "grid", "pde"})) {
        if (doc.contains("physics")) parse_physics(doc["physics"], v, cfg);
        if (doc.contains("coefficient")) parse_coefficient(doc["coefficient"], v, cfg);
        if (doc.contains("integrator")) parse_integrator(doc["integrator"], v, cfg);
        if (doc.contains("initial")) parse_initial(doc["initial"], v, cfg);
        if (doc.contains("sweep")) parse_sweep(doc["sweep"], v, cfg);
        if (doc.contains("grid")) parse_grid(doc["grid"], v, cfg);
        if (doc.contains("pde")) parse_pde(doc["pde"], v, cfg);
    }
    if (cfg.pde.sim.snapshot_times.size() > 0 || !cfg.pde.sim.tracers.empty()) {
        const spectral::Grid grid(cfg.pde.n, cfg.pde.half_width);
        for (std::size_t i = 0; i < cfg.pde.sim.tracers.size(); ++i)
            if (!grid.contains(cfg.pde.sim.tracers[i]))
                v.issue("$.pde.tracers[" + std::to_string(i) + "]", "outside the periodic domain");
        for (std::size_t i = 0; i < cfg.pde.sim.snapshot_times.size(); ++i)
            if (cfg.pde.sim.snapshot_times[i] > cfg.pde.sim.t_end)
                v.issue("$.pde.snapshot_times[" + std::to_string(i) + "]", "after the horizon t_end");
    }
    if (!v.issues().empty()) throw ConfigError(v.issues());
    return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is) throw ConfigError({"$: cannot read " + path.string()});
    std::ostringstream ss;
    ss << is.rdbuf();
    return parse_config(ss.str());
}

}  // namespace epct
