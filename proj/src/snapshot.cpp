#include "odhl/snapshot.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <sstream>

namespace odhl {

namespace {

template <class T>
T to_little(T v) {
  if constexpr (std::endian::native == std::endian::big) {
    unsigned char b[sizeof(T)];
    std::memcpy(b, &v, sizeof(T));
    for (std::size_t i = 0; i < sizeof(T) / 2; ++i) std::swap(b[i], b[sizeof(T) - 1 - i]);
    std::memcpy(&v, b, sizeof(T));
  }
  return v;
}

template <class T>
void put(std::string& out, T v) {
  v = to_little(v);
  char b[sizeof(T)];
  std::memcpy(b, &v, sizeof(T));
  out.append(b, sizeof(T));
}

class Reader {
 public:
  explicit Reader(std::string_view bytes) : bytes_(bytes) {}
  template <class T>
  T get() {
    if (pos_ + sizeof(T) > bytes_.size()) throw FormatError("snapshot: truncated header");
    T v;
    std::memcpy(&v, bytes_.data() + pos_, sizeof(T));
    pos_ += sizeof(T);
    return to_little(v);
  }
  std::size_t pos() const { return pos_; }

 private:
  std::string_view bytes_;
  std::size_t pos_ = 0;
};

std::size_t field_count(ModelKind m) { return m == ModelKind::oldroyd ? 6 : 5; }

}  // namespace

Snapshot make_snapshot(const OldroydState& s, double t) {
  return {ModelKind::oldroyd, s.grid(), t, s.params.gamma, s.params.b,
          {s.rho, s.u[0], s.u[1], s.tau.xx, s.tau.xy, s.tau.yy}};
}

Snapshot make_snapshot(const HallMhdState& s, double t) {
  return {ModelKind::hallmhd, s.grid(), t, s.params.gamma, 0.0,
          {s.rho, s.u[0], s.u[1], s.B[0], s.B[1]}};
}

OldroydState oldroyd_from_snapshot(const Snapshot& snap) {
  if (snap.model != ModelKind::oldroyd || snap.fields.size() != 6)
    throw FormatError("snapshot does not hold an Oldroyd-B state");
  OldroydState s(snap.grid, {snap.gamma, snap.b, kDefaultDensityFloor});
  s.rho = snap.fields[0];
  s.u = {snap.fields[1], snap.fields[2]};
  s.tau = {snap.fields[3], snap.fields[4], snap.fields[5]};
  return s;
}

HallMhdState hallmhd_from_snapshot(const Snapshot& snap, bool hall) {
  if (snap.model != ModelKind::hallmhd || snap.fields.size() != 5)
    throw FormatError("snapshot does not hold a Hall-MHD state");
  HallMhdState s(snap.grid, {snap.gamma, hall, kDefaultDensityFloor});
  s.rho = snap.fields[0];
  s.u = {snap.fields[1], snap.fields[2]};
  s.B = {snap.fields[3], snap.fields[4]};
  return s;
}

std::string encode_snapshot(const Snapshot& snap) {
  if (snap.fields.size() != field_count(snap.model))
    throw DimensionError("snapshot field count does not match its model");
  const std::size_t n2 = snap.grid.size();
  std::string out;
  out.reserve(kSnapshotHeaderBytes + snap.fields.size() * n2 * 16);
  out.append("ODHL", 4);
  put<std::uint32_t>(out, kSnapshotVersion);
  put<std::uint8_t>(out, snap.model == ModelKind::oldroyd ? 0 : 1);
  put<std::uint32_t>(out, static_cast<std::uint32_t>(snap.grid.n()));
  put<double>(out, snap.grid.length());
  put<double>(out, snap.t);
  put<double>(out, snap.gamma);
  put<double>(out, snap.b);
  put<std::uint8_t>(out, static_cast<std::uint8_t>(snap.fields.size()));
  for (const SpectralField& f : snap.fields) {
    if (!(f.grid() == snap.grid)) throw DimensionError("snapshot field on a different grid");
    for (const Complex& c : f.coeffs()) {
      put<double>(out, c.real());
      put<double>(out, c.imag());
    }
  }
  return out;
}

Snapshot decode_snapshot(std::string_view bytes) {
  if (bytes.size() < 4 || bytes.substr(0, 4) != "ODHL") throw FormatError("snapshot: bad magic");
  Reader r(bytes.substr(4));
  const auto version = r.get<std::uint32_t>();
  if (version != kSnapshotVersion)
    throw FormatError("snapshot: unsupported version " + std::to_string(version));
  const auto tag = r.get<std::uint8_t>();
  if (tag > 1) throw FormatError("snapshot: unknown model tag " + std::to_string(tag));
  Snapshot s;
  s.model = tag == 0 ? ModelKind::oldroyd : ModelKind::hallmhd;
  const auto n = r.get<std::uint32_t>();
  const double length = r.get<double>();
  s.t = r.get<double>();
  s.gamma = r.get<double>();
  s.b = r.get<double>();
  const auto count = r.get<std::uint8_t>();
  if (n < 2 || n % 2 != 0 || n > 65536 || !(length > 0.0))
    throw FormatError("snapshot: invalid grid in header");
  if (count != field_count(s.model)) throw FormatError("snapshot: field count does not match model");
  s.grid = Grid(static_cast<int>(n), length);

  const std::size_t n2 = s.grid.size();
  const std::size_t payload = static_cast<std::size_t>(count) * n2 * 16;
  const std::size_t offset = kSnapshotHeaderBytes;
  if (bytes.size() != offset + payload)
    throw FormatError("snapshot: payload is " + std::to_string(bytes.size() - offset) +
                      " bytes, header implies " + std::to_string(payload));
  Reader p(bytes.substr(offset));
  for (int c = 0; c < count; ++c) {
    SpectralField f(s.grid);
    for (std::size_t k = 0; k < n2; ++k) {
      const double re = p.get<double>();
      const double im = p.get<double>();
      f[k] = Complex(re, im);
    }
    s.fields.push_back(std::move(f));
  }
  return s;
}

void write_snapshot(const std::string& path, const Snapshot& snap) {
  const std::string bytes = encode_snapshot(snap);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  out.close();
  if (!out) throw IoError("write failed: " + path);
}

Snapshot read_snapshot(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("read failed: " + path);
  return decode_snapshot(ss.str());
}

}  // namespace odhl
