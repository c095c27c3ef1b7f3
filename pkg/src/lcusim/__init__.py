"""Dense numerical simulator for LCU-based ground-state projection and
frequency-domain Green's-function estimation on small fermionic and spin chains."""

__version__ = "0.1.0"
