"""Exact computations for Baxter numbers, Baxter and Hoggatt polynomials,
interlacing families and log-convexity certificates."""

__version__ = "0.1.0"

from .combinat import baxter_number, baxter_polynomial, hoggatt_polynomial, hoggatt_qt  # noqa: E402
from .polycore import Poly  # noqa: E402
from .precursive import PRecurrence, baxter_recurrence, catalan_recurrence  # noqa: E402
from .realroots import check_family_sturm, interlace_verdict, isolate_real_roots  # noqa: E402
