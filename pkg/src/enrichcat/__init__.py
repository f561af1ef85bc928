"""Finite, exact models of enriched categories, bimodules and their composites.

Submodules:

* ``simplex``: maps of the simplex category and their factorizations
* ``vbackend``: the monoidal backends (finite sets, booleans, vector spaces over F_p)
* ``enriched``: enriched categories, functors, interval tensors, change of base
* ``bimodule``: bimodules, squares, restriction, external products
* ``barcomp``: composition through the bar construction and its coend oracle
* ``doublecat``: chains, composite algebras and the Segal check
* ``indexcat``: finite truncations of the labelled indexing categories and probes
* ``funcat``: functor spaces ``C x [n] -> D`` and their Segal/completeness checks
* ``workspace``, ``cli``: file format and command line
"""

from .report import Failure, Report
from .errors import BudgetExceeded, EnrichCatError

__version__ = "0.1.0"

__all__ = ["BudgetExceeded", "EnrichCatError", "Failure", "Report", "__version__"]
