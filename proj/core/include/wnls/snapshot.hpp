#pragma once

#include <string>

#include "wnls/dynamics.hpp"

namespace wnls {

struct SnapshotError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Binary state snapshot, version 1:
///   magic "WNLSSNAP", u32 version, u8 backend tag, 3 zero bytes,
///   f64 extent, u64 n, f64 t, lambda, mu, s, N, u64 payload doubles,
///   u64 FNV-1a header checksum, payload (u then v, interleaved re/im f64,
///   little-endian), u64 FNV-1a payload checksum.
/// Round trips are byte-exact; any corrupted byte fails a checksum.
void write_snapshot(const std::string& path, const CoupledState& state);
CoupledState read_snapshot(const std::string& path);

}  // namespace wnls
