"""Hot element kernels.

The compiled ``_kernels`` extension is used when it was built; otherwise the
numpy implementation in ``_kernels_py`` is loaded. :func:`use_backend`
switches between the two at runtime (tests and benchmarks use this).
"""
from . import _kernels_py
from ._kernels_py import F1, F1_ALT, F2, F2_ALT

try:
    from . import _kernels as _compiled
except ImportError:  # extension not built
    _compiled = None

_impl = _compiled if _compiled is not None else _kernels_py


def backend() -> str:
    return "compiled" if _impl is _compiled else "python"


def has_compiled() -> bool:
    return _compiled is not None


def use_backend(name: str) -> None:
    global _impl
    if name == "python":
        _impl = _kernels_py
    elif name == "compiled":
        if _compiled is None:
            raise RuntimeError("compiled kernels are not built")
        _impl = _compiled
    else:
        raise ValueError(f"unknown backend {name!r}")


def element_stiffness(coords):
    return _impl.element_stiffness(coords)


def contact_local(code, phi, w, u_loc, lam, gamma):
    return _impl.contact_local(code, phi, w, u_loc, lam, gamma)


__all__ = ["F1", "F1_ALT", "F2", "F2_ALT", "backend", "has_compiled",
           "use_backend", "element_stiffness", "contact_local"]
