"""Numerical tolerances, fixed in one place.

All are absolute. The invariant tolerances sit well above double-precision
eigensolver noise at dimensions up to ~1000 and well below any physical
scale this library works at; the support thresholds are split (eigenvalue
cutoff vs projector leakage) so borderline states do not flap between
finite and infinite relative entropy.
"""

# Density-matrix invariants
TAU_HERM = 1e-10    # max |rho - rho^dagger|
TAU_TRACE = 1e-10   # |Tr rho - 1|
TAU_PSD = 1e-9      # eigenvalues below -TAU_PSD are a hard error

# Relative-entropy support handling
TAU_SUPP = 1e-11       # eigenvalues <= this count as zero
TAU_SUPP_PROJ = 1e-7   # allowed norm of (I - P_sigma) P_rho

# Truncation
TAU_LAMBDA = 1e-12  # normalization weights below this are degenerate
