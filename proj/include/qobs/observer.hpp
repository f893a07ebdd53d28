#pragma once

#include "qobs/plant.hpp"
#include "qobs/quantum_system.hpp"

namespace qobs {

/// Observer design parameter: the direct-coupling gain mu > 0. Larger mu
/// contracts the averaged estimation error faster (at the price of a stiffer
/// observer frequency omega_o ~ sqrt(2 mu omega_p)).
struct ObserverSpec {
  double mu = 5.0;
};

/// One-mode coherent observer coupled directly to the plant quadrature z_p.
/// Built so that the estimation error e = x_o - (z_p, z~_p) evolves
/// autonomously under a_o; this is the structural fact all tracking results
/// rest on, and it is checked at build time.
struct ObserverRealization {
  double mu = 0.0;
  double omega_p = 0.0;
  double omega_o = 0.0;  // sqrt(omega_p (2 mu + omega_p)), stored once
  Matrix beta;           // 2x1 coupling vector -mu c_bar_p^T
  Matrix r_o;            // 2x2 observer Hamiltonian diag(mu + w/2, w/2) > 0
  Matrix a_o;            // 2x2 drift [[0, w], [-(2 mu + w), 0]]
  Matrix c_o;            // 1x2 output row [1, 0]
  Matrix gain_l;         // 2x1 effective injection gain 2 J beta = [0, 2 mu]^T
  QuantumLinearSystem system;
};

/// Validates mu > 0 and assembles the observer for the given plant. Throws
/// std::runtime_error if the assembled pieces fail the identity
/// a_o = a_bar_p - gain_l c_bar_p (sign-convention guard).
ObserverRealization build_observer(const ObserverSpec& spec, const PlantRealization& plant);

/// Closed-form e^{a_o t}:
///   [[cos w_o t,                (w_p/w_o) sin w_o t],
///    [-((2mu+w_p)/w_o) sin w_o t, cos w_o t]].
Matrix observer_propagator(const ObserverRealization& obs, double t);

}  // namespace qobs
