"""Hot numeric kernels with two interchangeable backends.

The numba backend (JIT-compiled loops) is the default whenever numba imports;
setting the environment variable ``CNFSTRUCT_PURE=1`` forces the pure
numpy/Python fallback.  Both backends expose the same functions and are
checked against each other in the test suite; ``benchmarks/bench_kernels.py``
compares their throughput.

Kernel inventory:

* bipartite maximum matching (Hopcroft-Karp layered augmentation),
  plain and with a skipped left vertex / banned right vertices,
* per-variable surplus scan over a clause-variable incidence structure,
* non-Mersenne recursion table fill,
* potential-degree-pair recursion (bounds-function improvement operator),
* lexicographic-minimum clause-set encoding over renaming/flip transforms.
"""

import os

FORCE_PURE = os.environ.get("CNFSTRUCT_PURE", "") not in ("", "0")

try:
    import numba  # noqa: F401

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    HAVE_NUMBA = False

if HAVE_NUMBA and not FORCE_PURE:
    from . import jit as _active

    BACKEND = "numba"
else:
    from . import pure as _active

    BACKEND = "pure"


def get_backend(name: str):
    """Fetch a backend module by name ('pure' or 'numba'), for benchmarks/tests."""
    if name == "pure":
        from . import pure

        return pure
    if name in ("numba", "jit"):
        if not HAVE_NUMBA:
            raise RuntimeError("numba backend requested but numba is not installed")
        from . import jit

        return jit
    raise ValueError(f"unknown kernel backend {name!r}")


max_matching = _active.max_matching
masked_matching = _active.masked_matching
surplus_values = _active.surplus_values
nm_rec_table = _active.nm_rec_table
potprec_table = _active.potprec_table
canonical_min_encoding = _active.canonical_min_encoding
