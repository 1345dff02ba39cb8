"""Physical constants for the fixed unit system: angstrom, fs, eV, amu, K."""

# Boltzmann constant in eV/K.
KB = 8.617333262e-5

# 1 eV/angstrom = 1.602176634e-9 N, 1 amu = 1.66053906660e-27 kg,
# 1 m/s^2 = 1e-20 angstrom/fs^2.  Acceleration per (eV/angstrom)/amu:
ACCEL = 1.602176634e-9 / 1.66053906660e-27 * 1e-20

# amu * (angstrom/fs)^2 -> eV; exact reciprocal of ACCEL so kinetic and
# potential bookkeeping stay consistent.
MASS_VEL2_TO_EV = 1.0 / ACCEL
