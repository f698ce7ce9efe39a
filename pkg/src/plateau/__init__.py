"""Linear codes from weakly regular plateaued p-ary functions.

The submodules build on each other in this order: ``field`` (F_{p^m}),
``cyclo`` (exact Z[zeta_p]), ``pfunc`` (functions and quadratic forms),
``spectrum`` (Walsh classification and hyperplane counts), ``tables`` and
``codes`` (closed-form and brute-force weight distributions), ``analysis``
(minimality, duals, access structures) and ``search`` (witness corpus).
"""

__version__ = "0.1.0"

from .field import build_field, field_from_spec  # noqa: E402
from .pfunc import from_table, quadratic  # noqa: E402
from .spectrum import classify  # noqa: E402

__all__ = ["__version__", "build_field", "field_from_spec", "from_table", "quadratic", "classify"]
