"""Kernel backend selection.

The hot kernels (dual scalars, wedge products) exist twice: a compiled
Cython extension ``_core_c`` and the pure-Python reference ``_core_py``.
The compiled one is picked at import when available.  ``select()`` rebinds
the module-level names, so callers sensitive to the backend must access
them as attributes of this module (``kernels.Dual``), not via
``from ... import Dual``.  Switching between whole computations is safe;
dual instances from different backends must not be mixed inside one
evaluation.
"""

from . import _core_py

try:
    from . import _core_c
except ImportError:  # extension not built; pure Python is fully functional
    _core_c = None

_EXPORTED = (
    "Dual",
    "sqrt_s",
    "value_of",
    "is_dual",
    "wedge11",
    "wedge12",
    "matmul_forms_11",
)

BACKENDS = {"python": _core_py}
if _core_c is not None:
    BACKENDS["compiled"] = _core_c

_active_name = "compiled" if _core_c is not None else "python"


def select(name):
    """Activate a kernel backend ('python' or 'compiled')."""
    global _active_name
    if name not in BACKENDS:
        raise ValueError(
            "unknown backend %r (available: %s)" % (name, ", ".join(sorted(BACKENDS)))
        )
    mod = BACKENDS[name]
    for attr in _EXPORTED:
        globals()[attr] = getattr(mod, attr)
    _active_name = name


def active_backend():
    return _active_name


def have_compiled():
    return _core_c is not None


select(_active_name)
