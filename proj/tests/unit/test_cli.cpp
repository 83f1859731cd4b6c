#include "epct/cli.hpp"

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using namespace epct;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome cli(std::vector<std::string> args) {
    args.insert(args.begin(), "epct");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

class TempDir {
public:
    TempDir() : path_(fs::temp_directory_path() / ("epct_cli_" + std::to_string(counter_++))) {
        fs::remove_all(path_);
        fs::create_directories(path_);
    }
    ~TempDir() { fs::remove_all(path_); }
    fs::path write(const std::string& name, const std::string& text) const {
        std::ofstream(path_ / name) << text;
        return path_ / name;
    }
    const fs::path& path() const { return path_; }

private:
    static inline int counter_ = 0;
    fs::path path_;
};

std::vector<std::string> lines(const std::string& text, bool skip_comments) {
    std::vector<std::string> v;
    std::istringstream is(text);
    for (std::string l; std::getline(is, l);)
        if (!skip_comments || !l.starts_with('#')) v.push_back(l);
    return v;
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> v;
    std::istringstream is(line);
    for (std::string f; std::getline(is, f, ',');) v.push_back(f);
    if (!line.empty() && line.back() == ',') v.emplace_back();
    return v;
}

const std::string small_sweep =
    R"({"sweep": {"rho": {"min": 0.05, "max": 0.65, "count": 4}, "d": {"min": -0.5, "max": 1.0, "count": 4}}})";

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("classify exit codes") {
    auto r = cli({"classify", "0.25", "0.75"});
    CHECK(r.code == kExitOk);
    CHECK(r.out.find("\"region\":\"OmegaT\"") != std::string::npos);
    CHECK(r.out.find("\"certified\":true") != std::string::npos);
    CHECK(r.out.find("\"epsilon\":0.125") != std::string::npos);

    r = cli({"classify", "0.5", "0.1"});
    CHECK(r.code == kExitNotCertified);
    CHECK(r.out.find("\"certified\":false") != std::string::npos);

    r = cli({"classify", "0.1", "-0.1"});
    CHECK(r.code == kExitOk);
    CHECK(r.out.find("OmegaB") != std::string::npos);
}

TEST_CASE("usage errors") {
    CHECK(cli({}).code == kExitUsage);
    CHECK(cli({"classify", "0.1"}).code == kExitUsage);
    CHECK(cli({"classify", "x", "0.1"}).code == kExitUsage);
    CHECK(cli({"frobnicate"}).code == kExitUsage);
    CHECK(cli({"simulate-pde", "--example", "9.9"}).code == kExitUsage);
    CHECK(cli({"trace", "--example", "5.1", "--x0", "40,0"}).code == kExitUsage);
    CHECK(cli({"trace", "--example", "5.1", "--x0", "1;2"}).code == kExitUsage);
    CHECK(cli({"sweep", "--workers", "0"}).code == kExitUsage);
}

TEST_CASE("configuration errors list paths") {
    TempDir dir;
    const auto bad = dir.write("bad.json", R"({"sweep": {"rho": {"min": 0.1, "max": 0.1, "count": 1}}, "extra": 1})");
    const auto r = cli({"sweep", "--config", bad.string()});
    CHECK(r.code == kExitUsage);
    CHECK(r.err.find("$.sweep.rho.count") != std::string::npos);
    CHECK(r.err.find("$.extra") != std::string::npos);
    CHECK(cli({"classify", "0.1", "0.1", "--config", (dir.path() / "missing.json").string()}).code == kExitUsage);
}

TEST_CASE("simulate-ode reports blow-up and global runs") {
    TempDir dir;
    auto cfg = dir.write("blow.json", R"({"initial": {"rho": 0.5, "d": 0.1}})");
    auto r = cli({"simulate-ode", "--config", cfg.string(), "--no-timestamp"});
    CHECK(r.code == kExitOk);
    CHECK(r.out.find("# status: blowup[4.2675") != std::string::npos);
    CHECK(r.out.find("# generated:") == std::string::npos);
    CHECK(lines(r.out, true).front() == "t,rho,d");

    cfg = dir.write("global.json", R"({"initial": {"rho": 0.25, "d": 0.75}})");
    r = cli({"simulate-ode", "--config", cfg.string()});
    CHECK(r.code == kExitOk);
    CHECK(r.out.find("# status: global-to-horizon") != std::string::npos);
    CHECK(r.out.find("# generated:") != std::string::npos);
    const auto last = split(lines(r.out, true).back());
    CHECK(std::stod(last[0]) == 20.0);
    CHECK(std::stod(last[2]) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-6));

    cfg = dir.write("table.json",
                    R"({"initial": {"rho": 0.25, "d": 0.75},
                        "coefficient": {"kind": "tabulated", "times": [0, 3], "values": [-1, -2]}})");
    r = cli({"simulate-ode", "--config", cfg.string()});
    CHECK(r.code == kExitOk);
    CHECK(r.out.find("# status: coefficient-domain-end") != std::string::npos);

    CHECK(cli({"simulate-ode"}).code == kExitUsage);
}

TEST_CASE("sweep output is independent of the worker count") {
    TempDir dir;
    const auto cfg = dir.write("sweep.json", small_sweep);
    const auto one = cli({"sweep", "--config", cfg.string(), "--workers", "1", "--no-timestamp"});
    const auto four = cli({"sweep", "--config", cfg.string(), "--workers", "4", "--no-timestamp"});
    CHECK(one.code == kExitOk);
    CHECK(one.out == four.out);
    const auto rows = lines(one.out, true);
    REQUIRE(rows.size() == 17);
    CHECK(rows[0] == "rho0,d0,region,status,t_blow_mid");
    CHECK(split(rows[1])[0] == "0.05");
    CHECK(split(rows[2])[0] == "0.05");
    CHECK(split(rows[5])[0] == "0.25");
}

TEST_CASE("sweep matches the stored golden output") {
    TempDir dir;
    const auto cfg = dir.write("sweep.json", small_sweep);
    const auto r = cli({"sweep", "--config", cfg.string(), "--no-timestamp"});
    REQUIRE(r.code == kExitOk);
    std::ifstream is(fs::path(EPCT_GOLDEN_DIR) / "sweep_small.csv");
    REQUIRE(is);
    std::stringstream golden;
    golden << is.rdbuf();
    const auto want = lines(golden.str(), true);
    const auto got = lines(r.out, true);
    REQUIRE(want.size() == got.size());
    for (std::size_t i = 0; i < want.size(); ++i) {
        const auto a = split(want[i]), b = split(got[i]);
        REQUIRE(a.size() == b.size());
        for (std::size_t k = 0; k < a.size(); ++k) {
            if (i > 0 && k == 4 && !a[k].empty() && !b[k].empty())
                CHECK(std::stod(b[k]) == doctest::Approx(std::stod(a[k])).epsilon(1e-8));
            else if (i > 0 && k < 2)
                CHECK(std::stod(b[k]) == std::stod(a[k]));
            else
                CHECK(b[k] == a[k]);
        }
    }
}

TEST_CASE("simulate-pde writes norms, snapshots and manifests") {
    TempDir dir;
    const auto cfg = dir.write("pde.json", R"({"grid": {"N": 32}, "pde": {"t_end": 0.5, "snapshot_times": [0.5]}})");
    const auto out = dir.path() / "run";
    const auto r = cli({"simulate-pde", "--example", "5.3", "--config", cfg.string(), "--out", out.string()});
    CHECK(r.code == kExitOk);
    CHECK(fs::exists(out / "norms.csv"));
    bool epf = false, manifest = false;
    for (const auto& e : fs::directory_iterator(out)) {
        epf = epf || e.path().extension() == ".epf";
        manifest = manifest || e.path().extension() == ".json";
    }
    CHECK(epf);
    CHECK(manifest);

    const auto stdout_run = cli({"simulate-pde", "--example", "5.3", "--config", cfg.string(), "--no-timestamp"});
    CHECK(stdout_run.code == kExitOk);
    const auto rows = lines(stdout_run.out, true);
    CHECK(rows.front() == "t,rho_sup,phi_sup,dphi_dx_sup");
    CHECK(rows.size() == 7);
}

TEST_CASE("trace writes the characteristic columns") {
    TempDir dir;
    const auto cfg = dir.write("pde.json", R"({"grid": {"N": 32}, "pde": {"t_end": 0.3}})");
    const auto r = cli({"trace", "--example", "5.2", "--x0", "1,-3", "--config", cfg.string(), "--no-timestamp"});
    CHECK(r.code == kExitOk);
    const auto rows = lines(r.out, true);
    CHECK(rows.front() == "t,x1,x2,rho,d,omega,eta,xi,f1,f2,A,omega_over_rho,envelope_ok");
    CHECK(r.out.find("# envelope: ok") != std::string::npos);
    CHECK(r.out.find("# status: completed") != std::string::npos);
}

}
