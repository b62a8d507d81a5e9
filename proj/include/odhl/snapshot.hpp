#pragma once

// Binary state files. Header, packed little-endian:
//
//   "ODHL"  u32 version  u8 model  u32 n  f64 L  f64 t  f64 gamma  f64 b
//   u8 field_count
//
// then field_count * n * n complex coefficients as interleaved (re, im) f64,
// row-major, fields in the order rho, u1, u2, tau11, tau12, tau22 (Oldroyd)
// or rho, u1, u2, B1, B2 (Hall-MHD).

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "odhl/config.hpp"
#include "odhl/hallmhd.hpp"
#include "odhl/oldroyd.hpp"

namespace odhl {

inline constexpr std::uint32_t kSnapshotVersion = 1;
inline constexpr std::size_t kSnapshotHeaderBytes = 46;

struct Snapshot {
  ModelKind model = ModelKind::oldroyd;
  Grid grid;
  double t = 0.0;
  double gamma = 1.5;
  double b = 0.0;
  std::vector<SpectralField> fields;
};

Snapshot make_snapshot(const OldroydState& s, double t);
Snapshot make_snapshot(const HallMhdState& s, double t);
OldroydState oldroyd_from_snapshot(const Snapshot& snap);
HallMhdState hallmhd_from_snapshot(const Snapshot& snap, bool hall = true);

std::string encode_snapshot(const Snapshot& snap);
// Throws FormatError on bad magic, unsupported version, or a payload whose
// length does not match the header.
Snapshot decode_snapshot(std::string_view bytes);

void write_snapshot(const std::string& path, const Snapshot& snap);
Snapshot read_snapshot(const std::string& path);

}  // namespace odhl
