#pragma once

// Reduced units used throughout the library:
//   energy  in hbar * omega_LJ
//   length  in r_e (Lennard-Jones equilibrium separation)
//   time    in 1 / omega_LJ
//   spring constants in m * omega_LJ^2
// In these units hbar = omega_LJ = 1 and the particle mass becomes the
// dimensionless number m r_e^2 omega_LJ / hbar.  SI values only appear at
// the input/output boundary.

namespace psmc {

/// Physical constants for neon, SI.
struct SiConstants {
  double omega_lj = 3.28e12;        // s^-1
  double mass = 3.35e-26;           // kg
  double well_depth = 4.93e-22;     // J
  double r_e = 3.13e-10;            // m
  double hbar = 1.054571817e-34;    // J s
  double h = 6.62607015e-34;        // J s
};

inline constexpr SiConstants kNeon{};

/// Dimensionless mass m r_e^2 omega_LJ / hbar (about 102.08 for neon).
double reduced_mass(const SiConstants& c = kNeon);


// Conversions between reduced and SI.
double length_to_si(double reduced, const SiConstants& c = kNeon);
double length_from_si(double metres, const SiConstants& c = kNeon);
double energy_to_si(double reduced, const SiConstants& c = kNeon);
double energy_from_si(double joules, const SiConstants& c = kNeon);
double beta_to_si(double beta_hw, const SiConstants& c = kNeon);
double beta_from_si(double beta_per_joule, const SiConstants& c = kNeon);
double spring_to_si(double k_m_omega2, const SiConstants& c = kNeon);
double spring_from_si(double newton_per_metre, const SiConstants& c = kNeon);

}  // namespace psmc
