#include "qobs/plant.hpp"

#include <cmath>
#include <stdexcept>

namespace qobs {

PlantRealization build_plant(const PlantSpec& spec) {
  if (!(spec.omega_p > 0.0) || !std::isfinite(spec.omega_p))
    throw std::invalid_argument("build_plant: omega_p must be positive and finite");
  if (spec.c_p1[0] == 0.0 && spec.c_p1[1] == 0.0)
    throw std::invalid_argument("build_plant: c_p1 must be nonzero");
  if (!std::isfinite(spec.c_p1[0]) || !std::isfinite(spec.c_p1[1]))
    throw std::invalid_argument("build_plant: c_p1 must be finite");

  PlantRealization p;
  p.spec = spec;

  const Matrix r_pc = -0.5 * spec.omega_p * symplectic_j();
  p.r_p = Matrix::zero(4, 4);
  p.r_p.set_block(0, 2, r_pc);
  p.r_p.set_block(2, 0, r_pc.transposed());

  p.system = make_system(p.r_p, 2);
  p.a_p = p.system.drift;

  p.c_p = Matrix::zero(1, 4);
  p.c_p(0, 0) = spec.c_p1[0];
  p.c_p(0, 1) = spec.c_p1[1];

  p.a_bar_p = spec.omega_p * symplectic_j();
  p.c_bar_p = Matrix{{1.0, 0.0}};
  return p;
}

Matrix plant_propagator(const PlantRealization& plant, double t) {
  if (!std::isfinite(t)) throw std::invalid_argument("plant_propagator: t must be finite");
  const double c = std::cos(plant.spec.omega_p * t);
  const double s = std::sin(plant.spec.omega_p * t);
  Matrix m(4, 4);
  for (std::size_t i = 0; i < 2; ++i) {
    m(i, i) = c;
    m(i, i + 2) = s;
    m(i + 2, i) = -s;
    m(i + 2, i + 2) = c;
  }
  return m;
}

std::array<double, 2> plant_output_coeffs(const PlantRealization& plant, double t) {
  if (!std::isfinite(t))
    throw std::invalid_argument("plant_output_coeffs: t must be finite");
  return {std::cos(plant.spec.omega_p * t), std::sin(plant.spec.omega_p * t)};
}

}  // namespace qobs
