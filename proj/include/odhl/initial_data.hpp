#pragma once

// Seeded small-amplitude initial states. Every populated scalar component
// gets modulus 1 for |xi| <= cutoff and (|xi| / cutoff)^{-tail_exponent}
// beyond, uniformly random phases, support on the retained modes without the
// mean, and unit RMS in physical space; the amplitude multiplies last so
// the map amplitude -> state is exactly linear.

#include <cstdint>

#include "odhl/errors.hpp"
#include "odhl/hallmhd.hpp"
#include "odhl/oldroyd.hpp"

namespace odhl {

struct IcSpec {
  std::uint64_t seed = 42;
  double amplitude = 1e-2;
  double cutoff = 1.0;
  double tail_exponent = 4.0;
  bool rho = true;
  bool u = true;
  bool extra = true;  // tau or B
};

// Generated density would cross the floor.
class AmplitudeError : public VacuumError {
 public:
  AmplitudeError(double min_density, double floor, double suggested)
      : VacuumError(min_density, floor), suggested_(suggested) {}
  double suggested_max_amplitude() const { return suggested_; }

 private:
  double suggested_;
};

OldroydState generate_oldroyd(const IcSpec& spec, const Grid& grid,
                              const OldroydParams& params = {});
// B is Leray-projected before its (joint) normalization.
HallMhdState generate_hallmhd(const IcSpec& spec, const Grid& grid,
                              const HallMhdParams& params = {});

template <class Model>
typename Model::State generate(const IcSpec& spec, const Grid& grid,
                               const typename Model::Params& params = {}) {
  if constexpr (Model::kDim == 6)
    return generate_oldroyd(spec, grid, params);
  else
    return generate_hallmhd(spec, grid, params);
}

}  // namespace odhl
