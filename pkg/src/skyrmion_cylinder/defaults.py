"""Default numerical parameters, collected in one place.

Every CLI flag that overrides one of these names it explicitly; library
functions take them as keyword defaults.  Values are choices, not physics:
PSI_MAX = 12 keeps the profile-tail contribution to the energy below 1e-12
relative for L >= 0.1 (the tail decays like e^{-sqrt(2)|psi|}), and the
2001-point grid puts the second-order discretization error of the stability
spectrum comfortably below the acceptance thresholds.
"""

PSI_MAX = 12.0          # half-width of the default radial grid
GRID_N = 2001           # default number of grid points (odd, for Simpson weights)
TOL = 1e-12             # default tolerance for minimization / quadrature targets

F_GUARD = 1e-8          # reject shape-function arguments within this band of {0, pi}
PSI_CLAMP = 50.0        # inversion clamps |psi| here; beyond is indistinguishable from the vacuum
SEPARATRIX_RTOL = 1e-10  # |C| <= SEPARATRIX_RTOL*(1 + 2L^2) classifies as separatrix
CLASSIFY_WINDOW = 30.0  # default half-window for trajectory classification
DIVERGENCE_STRIP = 10.0  # |F - pi/2| > DIVERGENCE_STRIP*pi counts as having left every strip

TAIL_RTOL = 1e-6        # reject quadrature profiles whose tail estimate exceeds this (relative)
ENDPOINT_BAND = 0.1     # charge extraction demands endpoints this close to a multiple of pi

OUTPUT_DIR_ENV = "SKYRMION_CYLINDER_OUTPUT_DIR"  # default output directory for the CLI
