#include "psmc/units.hpp"

namespace psmc {

double reduced_mass(const SiConstants& c) {
  return c.mass * c.r_e * c.r_e * c.omega_lj / c.hbar;
}

double length_to_si(double reduced, const SiConstants& c) { return reduced * c.r_e; }
double length_from_si(double metres, const SiConstants& c) { return metres / c.r_e; }

double energy_to_si(double reduced, const SiConstants& c) {
  return reduced * c.hbar * c.omega_lj;
}
double energy_from_si(double joules, const SiConstants& c) {
  return joules / (c.hbar * c.omega_lj);
}

double beta_to_si(double beta_hw, const SiConstants& c) {
  return beta_hw / (c.hbar * c.omega_lj);
}
double beta_from_si(double beta_per_joule, const SiConstants& c) {
  return beta_per_joule * c.hbar * c.omega_lj;
}

double spring_to_si(double k_m_omega2, const SiConstants& c) {
  return k_m_omega2 * c.mass * c.omega_lj * c.omega_lj;
}
double spring_from_si(double newton_per_metre, const SiConstants& c) {
  return newton_per_metre / (c.mass * c.omega_lj * c.omega_lj);
}

}  // namespace psmc
