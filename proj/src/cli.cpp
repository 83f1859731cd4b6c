#include "epct/cli.hpp"

#include "epct/comparison.hpp"
#include "epct/config.hpp"
#include "epct/csv.hpp"
#include "epct/errors.hpp"
#include "epct/integrator.hpp"
#include "epct/spectral/examples.hpp"
#include "epct/spectral/snapshot.hpp"
#include "epct/thresholds.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <thread>

namespace epct {

namespace {

namespace fs = std::filesystem;
namespace sp = spectral;

struct Common {
    std::string config;
    std::string out;
    int workers = 1;
    bool no_timestamp = false;
    std::string example;
    std::string x0;
};

/// Raised for bad command-line values that CLI11 cannot check by itself.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

RunConfig load(const Common& c) { return c.config.empty() ? RunConfig{} : load_config(c.config); }

PhysicalParams physics_or_default(const RunConfig& cfg) { return cfg.physics.value_or(PhysicalParams{}); }

/// Writes to --out when given, otherwise to the caller's stream.
class Sink {
public:
    Sink(const std::string& path, std::ostream& fallback) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw UsageError("cannot open " + path + " for writing");
        }
        os_ = path.empty() ? &fallback : &file_;
    }
    std::ostream& stream() { return *os_; }

private:
    std::ofstream file_;
    std::ostream* os_ = nullptr;
};

void preamble(CsvWriter& w, const Common& c, const std::string& command) {
    w.comment("epct " + command);
    if (!c.no_timestamp) w.comment("generated: " + timestamp());
}

std::string status_text(const TerminalStatus& s, double t_last) {
    switch (s.kind) {
        case TerminalKind::ReachedHorizon: return "global-to-horizon";
        case TerminalKind::BlowUp:
            return "blowup[" + format_double(s.t_blow_lower) + ", " + format_double(s.t_blow_upper) + "]";
        case TerminalKind::CoefficientDomainEnd: return "coefficient-domain-end[" + format_double(t_last) + "]";
    }
    return "unknown";
}

sp::Point parse_point(const std::string& text) {
    const auto comma = text.find(',');
    if (comma == std::string::npos) throw UsageError("--x0 expects \"x1,x2\"");
    auto parse = [&](std::string_view s) {
        while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v))
            throw UsageError("--x0: cannot parse \"" + std::string(s) + "\"");
        return v;
    };
    const std::string_view all(text);
    return {parse(all.substr(0, comma)), parse(all.substr(comma + 1))};
}

int cmd_classify(double rho, double d, const Common& c, std::ostream& out) {
    const RunConfig cfg = load(c);
    nlohmann::ordered_json j;
    j["rho"] = rho;
    j["d"] = d;
    j["region"] = to_string(classify(rho, d));
    int code = kExitNotCertified;
    try {
        CoupledOptions opts;
        opts.integrator = cfg.integrator;
        const auto result = certify_global(rho, d, cfg.coefficient, cfg.integrator.t_end, physics_or_default(cfg), opts);
        if (const auto* cert = std::get_if<Certificate>(&result)) {
            j["certified"] = true;
            j["epsilon"] = cert->epsilon;
            j["aux_region"] = to_string(cert->aux_region);
            j["verified_horizon"] = cert->verified_horizon;
            j["ordering_ok"] = cert->ordering_ok;
            j["numeric_status"] = to_string(cert->numeric_status);
            j["rho_sup"] = cert->rho_sup;
            j["d_range"] = {cert->d_min, cert->d_max};
            code = kExitOk;
        } else {
            j["certified"] = false;
            j["reason"] = std::get<NotCertified>(result).reason;
        }
    } catch (const AdmissibilityError& e) {
        j["certified"] = false;
        j["reason"] = e.what();
    }
    Sink sink(c.out, out);
    sink.stream() << j.dump() << '\n';
    return code;
}

int cmd_simulate_ode(const Common& c, std::ostream& out) {
    const RunConfig cfg = load(c);
    if (!cfg.initial) throw ConfigError({"$.initial: required for simulate-ode"});
    const PhysicalParams p = physics_or_default(cfg);
    const auto res = integrate_ep(*cfg.initial, cfg.coefficient, p, cfg.integrator);
    Sink sink(c.out, out);
    CsvWriter w(sink.stream());
    preamble(w, c, "simulate-ode");
    w.comment("coefficient: " + cfg.coefficient.describe());
    w.comment("physics: k = " + format_double(p.k()) + ", c_b = " + format_double(p.c_b()));
    w.header({"t", "rho", "d"});
    const auto& tr = res.trajectory;
    for (std::size_t i = 0; i < tr.t.size(); ++i) {
        w.cell(tr.t[i]).cell(tr.y[i][0]).cell(tr.y[i][1]);
        w.end_row();
    }
    w.comment("status: " + status_text(tr.status, tr.t.back()));
    return kExitOk;
}

struct SweepRow {
    double rho0 = 0.0, d0 = 0.0;
    Region region = Region::Outside;
    std::string status;
    std::optional<double> t_blow_mid;
    bool failed = false;
};

int cmd_sweep(const Common& c, std::ostream& out, std::ostream& err) {
    const RunConfig cfg = load(c);
    if (c.workers < 1) throw UsageError("--workers must be at least 1");
    const PhysicalParams p = physics_or_default(cfg);
    const SweepSpec& s = cfg.sweep;
    const std::size_t total = static_cast<std::size_t>(s.rho.count) * s.d.count;
    std::vector<SweepRow> rows(total);

    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t idx = next++; idx < total; idx = next++) {
            SweepRow& row = rows[idx];
            row.rho0 = s.rho.at(static_cast<int>(idx / s.d.count));
            row.d0 = s.d.at(static_cast<int>(idx % s.d.count));
            row.region = classify(row.rho0, row.d0);
            try {
                const auto res = integrate_ep({row.rho0, row.d0}, cfg.coefficient, p, cfg.integrator);
                const auto& st = res.trajectory.status;
                row.status = st.kind == TerminalKind::BlowUp ? "blowup" : st.kind == TerminalKind::ReachedHorizon
                                                                              ? "global-to-horizon"
                                                                              : "coefficient-domain-end";
                if (st.kind == TerminalKind::BlowUp) row.t_blow_mid = st.t_blow_mid();
            } catch (const Error& e) {
                row.status = "solver-error";
                row.failed = true;
            }
        }
    };
    const int nthreads = std::min<int>(c.workers, static_cast<int>(total));
    std::vector<std::jthread> pool;
    for (int i = 1; i < nthreads; ++i) pool.emplace_back(work);
    work();
    pool.clear();

    Sink sink(c.out, out);
    CsvWriter w(sink.stream());
    preamble(w, c, "sweep");
    w.comment("grid: reconstructed phase-plane sweep, rho0 in [" + format_double(s.rho.min) + ", " +
              format_double(s.rho.max) + "] x " + std::to_string(s.rho.count) + ", d0 in [" +
              format_double(s.d.min) + ", " + format_double(s.d.max) + "] x " + std::to_string(s.d.count) +
              ", rho0-major");
    w.comment("coefficient: " + cfg.coefficient.describe());
    w.comment("physics: k = " + format_double(p.k()) + ", c_b = " + format_double(p.c_b()));
    w.comment("horizon: " + format_double(cfg.integrator.t_end));
    w.header({"rho0", "d0", "region", "status", "t_blow_mid"});
    bool failed = false;
    for (const auto& row : rows) {
        w.cell(row.rho0).cell(row.d0).cell(to_string(row.region)).cell(row.status);
        if (row.t_blow_mid)
            w.cell(*row.t_blow_mid);
        else
            w.cell(std::string_view{});
        w.end_row();
        failed = failed || row.failed;
    }
    if (failed) {
        err << "sweep: some points failed to integrate (status solver-error)\n";
        return kExitFailure;
    }
    return kExitOk;
}

struct PdeSource {
    sp::PdeState initial;
    PhysicalParams params;
    std::string label;
};

PdeSource pde_source(const RunConfig& cfg, const Common& c, const sp::Grid& grid) {
    std::optional<sp::ExampleId> id = cfg.pde.example;
    if (!c.example.empty()) {
        id = sp::parse_example(c.example);
        if (!id) throw UsageError("unknown example \"" + c.example + "\" (expected 5.1, 5.2 or 5.3)");
    }
    if (id) {
        return {sp::example_initial(*id, grid), cfg.physics.value_or(sp::example_params(*id)),
                "example " + sp::to_string(*id)};
    }
    if (cfg.pde.uniform_density) {
        return {sp::PdeState(sp::ScalarField(grid, *cfg.pde.uniform_density), sp::VectorField(grid)),
                physics_or_default(cfg), "uniform density " + format_double(*cfg.pde.uniform_density)};
    }
    throw UsageError("no initial data: pass --example or set pde.example / pde.uniform_density");
}

int cmd_simulate_pde(const Common& c, std::ostream& out, std::ostream& err) {
    const RunConfig cfg = load(c);
    const sp::Grid grid(cfg.pde.n, cfg.pde.half_width);
    PdeSource src = pde_source(cfg, c, grid);
    const sp::EulerPoissonSolver solver(grid, src.params, cfg.pde.sim.solver);
    const sp::SimulationResult res = solver.run(std::move(src.initial), cfg.pde.sim);

    for (const auto& wmsg : res.warnings) err << "warning: " << wmsg << '\n';
    if (c.out.empty()) {
        if (!cfg.pde.sim.snapshot_times.empty()) err << "note: snapshots are only written with --out <dir>\n";
        sp::write_norm_csv(out, res.norms);
    } else {
        const fs::path dir(c.out);
        fs::create_directories(dir);
        {
            std::ofstream os(dir / "norms.csv");
            if (!os) throw UsageError("cannot write " + (dir / "norms.csv").string());
            sp::write_norm_csv(os, res.norms);
        }
        for (const auto& snap : res.snapshots) {
            const std::string stem = "rho_t" + format_double(snap.t);
            sp::write_field(dir / (stem + ".epf"), snap.rho);
            sp::write_manifest(dir / (stem + ".json"), snap, src.params, src.label);
        }
        out << src.label << ": N = " << grid.n() << ", L = " << format_double(grid.half_width())
            << ", steps = " << res.steps << ", status = " << sp::to_string(res.status) << '\n';
        if (!res.norms.empty()) {
            const auto& a = res.norms.front();
            const auto& b = res.norms.back();
            out << "rho_sup " << format_double(a.rho_sup) << " -> " << format_double(b.rho_sup) << '\n';
            out << "phi_sup " << format_double(a.phi_sup) << " -> " << format_double(b.phi_sup) << '\n';
            out << "dphi_dx_sup " << format_double(a.dphi_dx_sup) << " -> " << format_double(b.dphi_dx_sup) << '\n';
        }
    }
    if (res.status != sp::RunStatus::Completed) {
        err << "simulate-pde: " << sp::to_string(res.status) << " at t = " << format_double(res.t_final) << ": "
            << res.message << '\n';
        return kExitFailure;
    }
    return kExitOk;
}

int cmd_trace(const Common& c, std::ostream& out, std::ostream& err) {
    const RunConfig cfg = load(c);
    const sp::Grid grid(cfg.pde.n, cfg.pde.half_width);
    sp::Point x0;
    if (!c.x0.empty())
        x0 = parse_point(c.x0);
    else if (!cfg.pde.sim.tracers.empty())
        x0 = cfg.pde.sim.tracers.front();
    else
        throw UsageError("trace needs --x0 or pde.tracers");
    if (!grid.contains(x0)) throw UsageError("x0 lies outside the periodic domain");

    PdeSource src = pde_source(cfg, c, grid);
    sp::RunStatus status = sp::RunStatus::Completed;
    const sp::TracerSeries series =
        sp::trace_characteristic(src.initial, src.params, grid, x0, cfg.pde.sim, &status);

    Sink sink(c.out, out);
    CsvWriter w(sink.stream());
    preamble(w, c, "trace");
    w.comment("source: " + src.label + ", N = " + std::to_string(grid.n()) + ", L = " +
              format_double(grid.half_width()));
    w.comment("x0: " + format_double(x0.x1) + ", " + format_double(x0.x2));
    w.header({"t", "x1", "x2", "rho", "d", "omega", "eta", "xi", "f1", "f2", "A", "omega_over_rho", "envelope_ok"});
    bool envelope = true;
    for (const auto& s : series.samples) {
        const bool ok = s.A >= -std::exp(s.t);
        envelope = envelope && ok;
        w.cell(s.t).cell(s.x.x1).cell(s.x.x2).cell(s.q.rho).cell(s.q.d).cell(s.q.omega).cell(s.q.eta).cell(s.q.xi);
        w.cell(s.q.f1).cell(s.q.f2).cell(s.A).cell(s.q.omega / s.q.rho).cell(ok ? "true" : "false");
        w.end_row();
    }
    w.comment(std::string("envelope: ") + (envelope ? "ok" : "violated"));
    w.comment("status: " + sp::to_string(status));
    if (status != sp::RunStatus::Completed) {
        err << "trace: run stopped early (" << sp::to_string(status) << ")\n";
        return kExitFailure;
    }
    return kExitOk;
}

void add_common(CLI::App* cmd, Common& c) {
    cmd->add_option("--config", c.config, "JSON run configuration")->check(CLI::ExistingFile);
    cmd->add_option("--out", c.out, "Output file (directory for simulate-pde)");
    cmd->add_flag("--no-timestamp", c.no_timestamp, "Omit the generation timestamp comment");
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Critical-threshold toolkit for the 2D Euler-Poisson Riccati system", "epct"};
    app.require_subcommand(1);
    Common c;
    double rho = 0.0, d = 0.0;

    auto* classify_cmd = app.add_subcommand("classify", "Region membership and global-existence certificate");
    classify_cmd->add_option("rho", rho, "Initial density")->required();
    classify_cmd->add_option("d", d, "Initial divergence")->required();
    add_common(classify_cmd, c);

    auto* ode = app.add_subcommand("simulate-ode", "Integrate the closed (rho, d) system");
    add_common(ode, c);

    auto* sweep = app.add_subcommand("sweep", "Phase-plane sweep over a grid of initial data");
    add_common(sweep, c);
    sweep->add_option("--workers", c.workers, "Worker threads")->check(CLI::PositiveNumber);

    auto* pde = app.add_subcommand("simulate-pde", "Run the periodic pseudo-spectral solver");
    add_common(pde, c);
    pde->add_option("--example", c.example, "Example 5.1, 5.2 or 5.3");

    auto* trace = app.add_subcommand("trace", "Follow one characteristic through a PDE run");
    add_common(trace, c);
    trace->add_option("--example", c.example, "Example 5.1, 5.2 or 5.3");
    trace->add_option("--x0", c.x0, "Start point \"x1,x2\"");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*classify_cmd) return cmd_classify(rho, d, c, out);
        if (*ode) return cmd_simulate_ode(c, out);
        if (*sweep) return cmd_sweep(c, out, err);
        if (*pde) return cmd_simulate_pde(c, out, err);
        if (*trace) return cmd_trace(c, out, err);
    } catch (const ConfigError& e) {
        err << "configuration error:\n";
        for (const auto& issue : e.issues()) err << "  " << issue << '\n';
        return kExitUsage;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitFailure;
    }
    return kExitUsage;
}

}  // namespace epct
