"""Exact computer algebra for cochain twists of graded algebras and their geometry."""

__version__ = "0.1.0"

from .cochain import Cochain2, Cochain3, coboundary, make_octonion_cochain  # noqa: E402
from .graded import bullet_mul, sphere_ring  # noqa: E402

__all__ = ["Cochain2", "Cochain3", "coboundary", "make_octonion_cochain", "bullet_mul", "sphere_ring", "__version__"]
