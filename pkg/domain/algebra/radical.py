# domain/algebra/radical.py

from __future__ import annotations

import logging
from typing import TYPE_CHECKING, List

from domain.linalg.matrix import Matrix, vec_combination
from domain.linalg.subspace import Subspace

if TYPE_CHECKING:  # pragma: no cover
    from domain.algebra.algebra import Algebra

logger = logging.getLogger(__name__)


def compute_radical(a: "Algebra") -> Subspace:
    """
    Radical de Jacobson.

    - indication fournie par la construction (chemins non triviaux, rad B ⊕ D(B), ...)
    - caractéristique 0 : noyau de la forme trace (x, y) ↦ Tr(L_x L_y)
    - caractéristique p : conditions de trace itérées sur un relevé entier
    """
    if a.radical_hint is not None:
        return Subspace.span(a.field, a.dim, a.radical_hint)
    if a.field.characteristic == 0:
        rad = _trace_form_radical(a)
    else:
        rad = _iterated_trace_radical(a)
    logger.debug("Radical calculé : dimension %d sur %d.", rad.dim, a.dim)
    return rad


def _structure_traces(a: "Algebra") -> List:
    """t_m = Tr(L_{b_m}) = Σ_k coefficient de b_k dans b_m·b_k."""
    zero = a.field.zero
    traces = [zero] * a.dim
    for (m, k), entry in a.products.items():
        for idx, c in entry:
            if idx == k:
                traces[m] = traces[m] + c
    return traces


def _trace_form_radical(a: "Algebra") -> Subspace:
    traces = _structure_traces(a)
    zero = a.field.zero
    gram = [[zero] * a.dim for _ in range(a.dim)]
    for (i, j), entry in a.products.items():
        acc = zero
        for m, c in entry:
            if traces[m]:
                acc = acc + c * traces[m]
        gram[i][j] = acc
    kernel = Matrix.from_rows(a.field, gram, a.dim).left_kernel_basis()
    return Subspace.span(a.field, a.dim, kernel)


def _int_matmul_mod(x: List[List[int]], y: List[List[int]], modulus: int) -> List[List[int]]:
    n = len(x)
    out = [[0] * n for _ in range(n)]
    for i in range(n):
        row = x[i]
        target = out[i]
        for k, v in enumerate(row):
            if v:
                yk = y[k]
                for j in range(n):
                    if yk[j]:
                        target[j] += v * yk[j]
        out[i] = [t % modulus for t in target]
    return out


def _int_trace_of_power(m: List[List[int]], exponent: int, modulus: int) -> int:
    n = len(m)
    result = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    base = [[v % modulus for v in row] for row in m]
    while exponent:
        if exponent & 1:
            result = _int_matmul_mod(result, base, modulus)
        base = _int_matmul_mod(base, base, modulus)
        exponent >>= 1
    return sum(result[i][i] for i in range(n)) % modulus


def _iterated_trace_radical(a: "Algebra") -> Subspace:
    """
    I_{-1} = A ; I_i = {x ∈ I_{i-1} | g_i(x·y) = 0 pour tout y}, avec
    g_i(z) = (Tr(L̃_z^{p^i}) mod p^{i+1}) / p^i calculé sur le relevé entier
    de la matrice de multiplication à gauche. Arrêt quand p^i > dim A.
    """
    field = a.field
    p = field.characteristic
    n = a.dim
    current = [a.basis_vector(k) for k in range(n)]
    i = 0
    while p ** i <= n and current:
        modulus = p ** (i + 1)
        values = []
        for x in current:
            row = []
            for j in range(n):
                z = a.mul(x, a.basis_vector(j))
                if not any(z):
                    row.append(field.zero)
                    continue
                lifted = [[field.lift(c) for c in r] for r in a.left_multiplication(z).entries]
                tr = _int_trace_of_power(lifted, p ** i, modulus)
                row.append(field.element(tr // (p ** i)))
            values.append(row)
        kernel = Matrix.from_rows(field, values, n).left_kernel_basis()
        current = [vec_combination(field, k, current, n) for k in kernel]
        logger.debug("Itération %d de l'algorithme de trace : dimension %d.", i, len(current))
        i += 1
    return Subspace.span(field, n, current)
