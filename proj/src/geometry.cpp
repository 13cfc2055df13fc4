#include "interlock/geometry.hpp"

#include <cmath>

namespace interlock {

void VehicleGeometry::validate() const {
  if (!(frame_length > 0.0) || !(frame_width > 0.0) || !(mass > 0.0))
    throw InvalidGeometry("frame dimensions and mass must be positive");
  if (!(stroke > 0.0))
    throw InvalidGeometry("stroke must be positive");
  if (!(x_extended > 0.0) || !(x_contracted > 0.0))
    throw InvalidGeometry("spike stations must be ahead of the center");
  if (spike_half_spacing < 0.0)
    throw InvalidGeometry("spike_half_spacing must be >= 0");
  if (prism_offset < 0.0)
    throw InvalidGeometry("prism_offset must be >= 0");
  if (std::abs((x_extended - x_contracted) - stroke) > 1e-9)
    throw InvalidGeometry(
        "x_extended - x_contracted must equal stroke; the slide stroke is "
        "the only axial change");
}

void WeightTransferModel::validate(const VehicleGeometry& geom) const {
  if (!(geom.x_extended - y_extended > 0.0) ||
      !(geom.x_contracted - y_contracted > 0.0))
    throw InvalidWeightTransfer(
        "axial shift puts the center of resistance past the spike");
  if (geom.spike_half_spacing - z_extended < 0.0 ||
      geom.spike_half_spacing - z_contracted < 0.0)
    throw InvalidWeightTransfer(
        "lateral shift moves the center of resistance across the spike");
}

ExpansionSweep expansion_sweep(const VehicleGeometry& geom,
                               const WeightTransferModel& wt) {
  geom.validate();
  wt.validate(geom);
  return {geom.x_contracted - wt.y_contracted, geom.x_extended - wt.y_extended,
          geom.spike_half_spacing - wt.z_contracted,
          geom.spike_half_spacing - wt.z_extended};
}

}  // namespace interlock
