"""Hot-loop kernels, compiled when available.

``BACKEND`` names the implementation picked at import: ``"cython"`` when the
extension built, ``"python"`` otherwise. Both share one contract and give
bit-identical results.
"""
try:
    from scfgame import _kernels as _impl
except ImportError:  # extension not built
    from scfgame import _pykernels as _impl

BACKEND = _impl.NAME

field = _impl.field
rk4_step = _impl.rk4_step
clamp_state = _impl.clamp_state
integrate = _impl.integrate


def available_backends():
    """Map backend name to kernel module for every importable backend."""
    from scfgame import _pykernels

    found = {_pykernels.NAME: _pykernels}
    try:
        from scfgame import _kernels
    except ImportError:
        pass
    else:
        found[_kernels.NAME] = _kernels
    return found
