"""Backend selection for the quadrature hot kernels.

The compiled Cython core is preferred when its extension module built; the
pure-numpy fallback is always available and produces the same node arrays
(agreement is covered by tests, and ``benchmarks/bench_kernels.py`` compares
their throughput).  Reductions over node arrays are performed by callers with
``np.sum`` (pairwise), so sums are reproducible for a fixed grid regardless
of backend.
"""

from . import _kernels_py

try:  # pragma: no cover - exercised when the extension is built
    from . import _kernels_cy as _impl
    BACKEND = "compiled"
except ImportError:  # pragma: no cover
    _impl = _kernels_py
    BACKEND = "python"

lattice_f_grid = _impl.lattice_f_grid
lattice_phase_grid = _impl.lattice_phase_grid
lattice_deformed_node_data = _impl.lattice_deformed_node_data
deformed_integrand = _impl.deformed_integrand

py_backend = _kernels_py


def backend_name() -> str:
    return BACKEND
