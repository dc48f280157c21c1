"""Species (up/down spin) entanglement of the transverse-field Ising chain."""
from .model import (Coupling, MomentumGrid, ModeSpectrum, Parity, build_grid, gap,
                    mode_probability, mode_spectrum, mode_zeta)
from .quadrature import QuadratureError, integrate
from .entanglement import (INFINITE, EigenvalueDensitySample, EntanglementPoint, band_edge,
                           binary_entropy, epsilon_finite, epsilon_infinite, g_of_p, phi_pm)
from .criticality import (CriticalReport, Method, Side, StencilError, divergence_exponent,
                          epsilon_derivative, jump_estimate)
from .ed import (ConvergenceError, GroundStateED, SpinHamiltonian, apply_hamiltonian,
                 energy_cross_check, ground_state, parity_of, species_entropy_ed)

__version__ = "0.1.0"
