#include "epct/spectral/snapshot.hpp"

#include "epct/csv.hpp"
#include "epct/errors.hpp"

#include <json.hpp>

#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>

namespace epct::spectral {

namespace {

constexpr std::array<char, 4> kMagic{'E', 'P', 'F', '1'};

template <class T>
void put_le(std::ostream& os, T value) {
    static_assert(sizeof(T) == 4 || sizeof(T) == 8);
    using U = std::conditional_t<sizeof(T) == 4, std::uint32_t, std::uint64_t>;
    U bits = std::bit_cast<U>(value);
    std::array<char, sizeof(T)> buf;
    for (std::size_t i = 0; i < sizeof(T); ++i) buf[i] = static_cast<char>((bits >> (8 * i)) & 0xff);
    os.write(buf.data(), buf.size());
}

template <class T>
T get_le(std::istream& is) {
    using U = std::conditional_t<sizeof(T) == 4, std::uint32_t, std::uint64_t>;
    std::array<unsigned char, sizeof(T)> buf;
    if (!is.read(reinterpret_cast<char*>(buf.data()), buf.size())) throw Error("field file is truncated");
    U bits = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) bits |= static_cast<U>(buf[i]) << (8 * i);
    return std::bit_cast<T>(bits);
}

}  // namespace

void write_field(const std::filesystem::path& path, const ScalarField& f) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw Error("cannot open " + path.string() + " for writing");
    os.write(kMagic.data(), kMagic.size());
    put_le(os, static_cast<std::uint32_t>(f.grid().n()));
    put_le(os, f.grid().half_width());
    for (double v : f.data()) put_le(os, v);
    if (!os) throw Error("failed writing " + path.string());
}

ScalarField read_field(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw Error("cannot open " + path.string());
    std::array<char, 4> magic{};
    if (!is.read(magic.data(), magic.size()) || magic != kMagic) throw Error(path.string() + " is not an EPF1 file");
    const auto n = get_le<std::uint32_t>(is);
    const auto L = get_le<double>(is);
    if (n > (1u << 16)) throw Error(path.string() + " declares an implausible grid size");
    ScalarField f(Grid(static_cast<int>(n), L));
    for (double& v : f.data()) v = get_le<double>(is);
    return f;
}

void write_manifest(const std::filesystem::path& path, const Snapshot& snap, const PhysicalParams& params,
                    const std::string& label) {
    nlohmann::ordered_json j;
    j["field"] = "rho";
    j["source"] = label;
    j["time"] = snap.t;
    j["grid"] = {{"N", snap.rho.grid().n()}, {"L", snap.rho.grid().half_width()}};
    j["physics"] = {{"k", params.k()}, {"c_b", params.c_b()}};
    j["norms"] = {{"rho_sup", snap.norms.rho_sup},
                  {"phi_sup", snap.norms.phi_sup},
                  {"dphi_dx_sup", snap.norms.dphi_dx_sup}};
    std::ofstream os(path);
    if (!os) throw Error("cannot open " + path.string() + " for writing");
    os << j.dump(2) << '\n';
}

void write_norm_csv(std::ostream& os, const std::vector<NormSample>& norms) {
    CsvWriter w(os);
    w.header({"t", "rho_sup", "phi_sup", "dphi_dx_sup"});
    for (const auto& n : norms) {
        w.cell(n.t).cell(n.rho_sup).cell(n.phi_sup).cell(n.dphi_dx_sup);
        w.end_row();
    }
}

void write_tracer_csv(std::ostream& os, const TracerSeries& series) {
    CsvWriter w(os);
    w.header({"t", "x1", "x2", "rho", "d", "omega", "eta", "xi", "f1", "f2", "A"});
    for (const auto& s : series.samples) {
        w.cell(s.t).cell(s.x.x1).cell(s.x.x2).cell(s.q.rho).cell(s.q.d).cell(s.q.omega).cell(s.q.eta).cell(s.q.xi);
        w.cell(s.q.f1).cell(s.q.f2).cell(s.A);
        w.end_row();
    }
}

}  // namespace epct::spectral
