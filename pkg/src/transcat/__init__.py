"""Transitive permutation groups of small degree and the catalogues built on them.

The main entry points are :func:`transcat.classify.classify_degree` (with a
:class:`transcat.classify.CatalogueStore`), :mod:`transcat.graphs`,
:mod:`transcat.elusive` and :mod:`transcat.ci`; ``transcat`` on the command
line wraps them.
"""

from .perm import PermGroup, BudgetExceeded
from .classify import Catalogue, CatalogueEntry, CatalogueStore, UnsupportedPart, classify_degree

__version__ = "0.1.0"

__all__ = ["PermGroup", "BudgetExceeded", "Catalogue", "CatalogueEntry", "CatalogueStore",
           "UnsupportedPart", "classify_degree", "__version__"]
