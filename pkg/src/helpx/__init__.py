"""Extended HeLP method for torsion units in group rings over cyclotomic integers."""
from .cyclotomic import CycNumber, make_root

__version__ = "0.1.0"
__all__ = ["CycNumber", "make_root", "__version__"]
