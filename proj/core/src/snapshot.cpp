#include "wnls/snapshot.hpp"

#include <cstring>
#include <fstream>
#include <vector>

namespace wnls {

namespace {

constexpr char k_magic[8] = {'W', 'N', 'L', 'S', 'S', 'N', 'A', 'P'};
constexpr std::uint32_t k_version = 1;

std::uint64_t fnv1a(const unsigned char* data, std::size_t len,
                    std::uint64_t h = 0xcbf29ce484222325ull) {
    for (std::size_t i = 0; i < len; ++i) {
        h ^= data[i];
        h *= 0x100000001b3ull;
    }
    return h;
}

template <typename T>
void put(std::vector<unsigned char>& buf, const T& v) {
    const auto* p = reinterpret_cast<const unsigned char*>(&v);
    buf.insert(buf.end(), p, p + sizeof(T));
}

template <typename T>
T take(const std::vector<unsigned char>& buf, std::size_t& off) {
    if (off + sizeof(T) > buf.size()) throw SnapshotError("snapshot truncated");
    T v;
    std::memcpy(&v, buf.data() + off, sizeof(T));
    off += sizeof(T);
    return v;
}

}  // namespace

void write_snapshot(const std::string& path, const CoupledState& state) {
    state.validate();
    const Grid& g = *state.u.grid();

    std::vector<unsigned char> header;
    header.insert(header.end(), k_magic, k_magic + 8);
    put(header, k_version);
    put(header, static_cast<std::uint8_t>(g.kind() == Backend::radial1d ? 0 : 1));
    header.insert(header.end(), 3, 0);
    put(header, g.extent());
    put(header, static_cast<std::uint64_t>(g.n()));
    put(header, state.t);
    put(header, state.params.lambda);
    put(header, state.params.mu);
    put(header, state.params.s);
    put(header, state.params.N);
    const std::uint64_t payload_doubles = 4ull * state.u.size();
    put(header, payload_doubles);
    put(header, fnv1a(header.data(), header.size()));

    std::vector<unsigned char> payload;
    payload.reserve(payload_doubles * sizeof(double));
    auto put_field = [&](const Field& f) {
        for (std::size_t j = 0; j < f.size(); ++j) {
            put(payload, f[j].real());
            put(payload, f[j].imag());
        }
    };
    put_field(state.u);
    put_field(state.v);
    const std::uint64_t pcheck = fnv1a(payload.data(), payload.size());

    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw SnapshotError("cannot open '" + path + "' for writing");
    out.write(reinterpret_cast<const char*>(header.data()), header.size());
    out.write(reinterpret_cast<const char*>(payload.data()), payload.size());
    out.write(reinterpret_cast<const char*>(&pcheck), sizeof(pcheck));
    if (!out) throw SnapshotError("short write to '" + path + "'");
}

CoupledState read_snapshot(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw SnapshotError("cannot open snapshot '" + path + "'");
    std::vector<unsigned char> buf((std::istreambuf_iterator<char>(in)),
                                   std::istreambuf_iterator<char>());

    std::size_t off = 0;
    if (buf.size() < 8 || std::memcmp(buf.data(), k_magic, 8) != 0)
        throw SnapshotError("'" + path + "' is not a snapshot file (bad magic)");
    off = 8;
    const auto version = take<std::uint32_t>(buf, off);
    if (version != k_version)
        throw SnapshotError("unsupported snapshot version " + std::to_string(version) +
                            " in '" + path + "'; this build reads version " +
                            std::to_string(k_version) +
                            " (re-export the state with a matching build)");
    const auto tag = take<std::uint8_t>(buf, off);
    off += 3;
    const auto extent = take<double>(buf, off);
    const auto n = take<std::uint64_t>(buf, off);
    const auto t = take<double>(buf, off);
    const auto lambda = take<double>(buf, off);
    const auto mu = take<double>(buf, off);
    const auto s = take<double>(buf, off);
    const auto N = take<double>(buf, off);
    const auto payload_doubles = take<std::uint64_t>(buf, off);
    const auto hcheck = take<std::uint64_t>(buf, off);
    if (fnv1a(buf.data(), off - sizeof(std::uint64_t)) != hcheck)
        throw SnapshotError("header checksum mismatch in '" + path + "'");

    if (tag > 1) throw SnapshotError("unknown backend tag in '" + path + "'");
    GridPtr g = tag == 0 ? Grid::radial(extent, static_cast<std::size_t>(n))
                         : Grid::periodic(extent, static_cast<std::size_t>(n));
    if (payload_doubles != 4ull * g->point_count())
        throw SnapshotError("payload size does not match the grid in '" + path + "'");

    const std::size_t payload_bytes = payload_doubles * sizeof(double);
    if (off + payload_bytes + sizeof(std::uint64_t) != buf.size())
        throw SnapshotError("snapshot truncated: '" + path + "'");
    const std::uint64_t measured = fnv1a(buf.data() + off, payload_bytes);

    CoupledState st;
    st.t = t;
    st.params = PhysParams{lambda, mu, s, N};
    st.u = Field(g);
    st.v = Field(g);
    auto take_field = [&](Field& f) {
        for (std::size_t j = 0; j < f.size(); ++j) {
            const double re = take<double>(buf, off);
            const double im = take<double>(buf, off);
            f[j] = cplx(re, im);
        }
    };
    take_field(st.u);
    take_field(st.v);
    const auto pcheck = take<std::uint64_t>(buf, off);
    if (measured != pcheck) throw SnapshotError("payload checksum mismatch in '" + path + "'");
    return st;
}

}  // namespace wnls
