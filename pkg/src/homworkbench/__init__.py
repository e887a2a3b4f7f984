"""Exact verification of Hom-, biHom- and dendriform-type algebra identities."""

from ._report import ConstructionRefused, PreconditionFailed, Report, Witness

__version__ = "0.1.0"

__all__ = ["ConstructionRefused", "PreconditionFailed", "Report", "Witness", "__version__"]
