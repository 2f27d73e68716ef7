"""flagalg: partial flag incidence algebras on finite graded posets.

Exact computation of multi-indexed Whitney numbers, matroid
Kazhdan-Lusztig polynomials (defining recursion and closed coefficient
formula, cross-validated), and generalized characteristic polynomials.
"""

from ._backend import backend_name
from .poset import (
    Poset,
    boolean_lattice,
    chain,
    figure1,
    from_covers,
    from_dict,
    from_json,
    partition_lattice,
    point,
    product,
    uniform_flats,
)

__all__ = [
    "Poset",
    "backend_name",
    "boolean_lattice",
    "chain",
    "figure1",
    "from_covers",
    "from_dict",
    "from_json",
    "partition_lattice",
    "point",
    "product",
    "uniform_flats",
]

__version__ = "0.1.0"
