"""Monte Carlo laboratory for gradient site percolation on the triangular lattice.

The package samples site colorings of parallelogram regions of the triangular
lattice (homogeneous density p, or a linear vertical gradient), detects
crossings and alternating arm events, extracts the black/white front interface
of gradient strips by an exploration walk, and estimates the characteristic
lengths and power-law exponents that govern the model at scale.

Modules
-------
lattice    geometry: site coordinates, parallelogram regions, annuli
profiles   density profiles, seeded sampling, configuration (de)serialization
cluster    connectivity labeling and crossing events
charlen    characteristic length L(p), gradient scale sigma(N), scaling relation
arms       alternating arm events in annuli, pi_2 / pi_4 estimation
front      strip sampling, front extraction and statistics
fitstats   Monte Carlo estimates and log-log power-law regression
cli        experiment runner, JSONL/CSV/SVG persistence, command line
"""

__version__ = "0.1.0"

from gradperc.lattice import Annulus, Region
from gradperc.profiles import Configuration, DensityProfile, SeedSpec
from gradperc.fitstats import Estimate, PowerLawFit

__all__ = [
    "Annulus",
    "Region",
    "Configuration",
    "DensityProfile",
    "SeedSpec",
    "Estimate",
    "PowerLawFit",
    "__version__",
]
