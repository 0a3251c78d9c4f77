# domain/linalg/polynomial.py

from __future__ import annotations

import logging
import random
from fractions import Fraction
from math import gcd
from typing import List, Optional, Sequence, Tuple

from domain.linalg.field import FieldSpec, Scalar
from domain.linalg.matrix import Matrix

logger = logging.getLogger(__name__)

# Polynôme = tuple de coefficients du degré 0 au degré n, sans zéro de tête.
Poly = Tuple[Scalar, ...]


def trim(p: Sequence[Scalar]) -> Poly:
    coeffs = list(p)
    while coeffs and not coeffs[-1]:
        coeffs.pop()
    return tuple(coeffs)


def degree(p: Poly) -> int:
    return len(p) - 1


def monic(p: Poly) -> Poly:
    if not p:
        return p
    lead = p[-1]
    return tuple(c / lead for c in p)


def add(p: Poly, q: Poly, field: FieldSpec) -> Poly:
    n = max(len(p), len(q))
    zero = field.zero
    return trim([(p[i] if i < len(p) else zero) + (q[i] if i < len(q) else zero) for i in range(n)])


def sub(p: Poly, q: Poly, field: FieldSpec) -> Poly:
    n = max(len(p), len(q))
    zero = field.zero
    return trim([(p[i] if i < len(p) else zero) - (q[i] if i < len(q) else zero) for i in range(n)])


def mul(p: Poly, q: Poly, field: FieldSpec) -> Poly:
    if not p or not q:
        return ()
    out = [field.zero] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                if b:
                    out[i + j] = out[i + j] + a * b
    return trim(out)


def divmod_poly(p: Poly, q: Poly, field: FieldSpec) -> Tuple[Poly, Poly]:
    if not q:
        raise ZeroDivisionError("division par le polynôme nul")
    rem = list(p)
    quot = [field.zero] * max(len(p) - len(q) + 1, 0)
    lead = q[-1]
    for k in range(len(p) - len(q), -1, -1):
        c = rem[k + len(q) - 1] / lead
        quot[k] = c
        if c:
            for j, b in enumerate(q):
                rem[k + j] = rem[k + j] - c * b
    return trim(quot), trim(rem[: len(q) - 1])


def mod(p: Poly, q: Poly, field: FieldSpec) -> Poly:
    return divmod_poly(p, q, field)[1]


def gcd_poly(p: Poly, q: Poly, field: FieldSpec) -> Poly:
    """PGCD unitaire."""
    a, b = trim(p), trim(q)
    while b:
        a, b = b, mod(a, b, field)
    return monic(a)


def ext_gcd(p: Poly, q: Poly, field: FieldSpec) -> Tuple[Poly, Poly, Poly]:
    """(g, s, t) avec s·p + t·q = g unitaire."""
    r0, r1 = trim(p), trim(q)
    s0, s1 = (field.one,), ()
    t0, t1 = (), (field.one,)
    while r1:
        quo, rem = divmod_poly(r0, r1, field)
        r0, r1 = r1, rem
        s0, s1 = s1, sub(s0, mul(quo, s1, field), field)
        t0, t1 = t1, sub(t0, mul(quo, t1, field), field)
    lead = r0[-1]
    inv = field.one / lead
    return monic(r0), tuple(c * inv for c in s0), tuple(c * inv for c in t0)


def inverse_mod(p: Poly, modulus: Poly, field: FieldSpec) -> Poly:
    g, s, _ = ext_gcd(p, modulus, field)
    if g != (field.one,):
        raise ZeroDivisionError("polynôme non inversible modulo le module")
    return mod(s, modulus, field)


def pow_mod(p: Poly, exponent: int, modulus: Poly, field: FieldSpec) -> Poly:
    result: Poly = (field.one,)
    base = mod(p, modulus, field)
    while exponent:
        if exponent & 1:
            result = mod(mul(result, base, field), modulus, field)
        base = mod(mul(base, base, field), modulus, field)
        exponent >>= 1
    return result


def derivative(p: Poly, field: FieldSpec) -> Poly:
    return trim([field.element(i) * c for i, c in enumerate(p)][1:])


def evaluate(p: Poly, x: Scalar, field: FieldSpec) -> Scalar:
    acc = field.zero
    for c in reversed(p):
        acc = acc * x + c
    return acc


def evaluate_matrix(p: Poly, m: Matrix) -> Matrix:
    """p(m) par Horner."""
    n = m.rows
    acc = Matrix.zeros(m.field, n, n)
    ident = Matrix.identity(m.field, n)
    for c in reversed(p):
        acc = acc @ m + ident.scale(c)
    return acc


def linear(root: Scalar, field: FieldSpec) -> Poly:
    return (-root, field.one)


# ------------------------------------------------------------------ #
# Factorisation partielle (racines + degrés distincts)
# ------------------------------------------------------------------ #


def squarefree_part(p: Poly, field: FieldSpec) -> Poly:
    """Partie sans facteur carré (rad p) : produit des irréductibles distincts."""
    p = monic(p)
    if degree(p) <= 0:
        return p
    d = derivative(p, field)
    if not d:
        # p = q(x^char) en caractéristique p : rad p = rad q
        char = field.characteristic
        q = tuple(p[i] for i in range(0, len(p), char))
        # sur GF(p) les coefficients sont des puissances p-ièmes d'eux-mêmes
        return squarefree_part(q, field)
    g = gcd_poly(p, d, field)
    quot, _ = divmod_poly(p, g, field)
    # un facteur de multiplicité divisible par char peut survivre dans g
    if field.is_prime_field and degree(g) > 0:
        rest = g
        while True:
            common = gcd_poly(rest, quot, field)
            if degree(common) <= 0:
                break
            rest, _ = divmod_poly(rest, common, field)
        if degree(rest) > 0:
            quot = mul(quot, squarefree_part(rest, field), field)
    return monic(quot)


def rational_roots(p: Poly) -> List[Fraction]:
    """Racines rationnelles par le théorème des racines rationnelles."""
    if not p:
        return []
    den = 1
    for c in p:
        den = den * c.denominator // gcd(den, c.denominator)
    ints = [int(c * den) for c in p]
    roots: List[Fraction] = []
    shift = 0
    while shift < len(ints) and ints[shift] == 0:
        shift += 1
    if shift:
        roots.append(Fraction(0))
    ints = ints[shift:]
    if len(ints) <= 1:
        return roots
    a0, an = abs(ints[0]), abs(ints[-1])
    for num in _divisors(a0):
        for d in _divisors(an):
            for sign in (1, -1):
                cand = Fraction(sign * num, d)
                if cand in roots:
                    continue
                acc = Fraction(0)
                for c in reversed(ints):
                    acc = acc * cand + c
                if acc == 0:
                    roots.append(cand)
    return roots


def _divisors(n: int) -> List[int]:
    out = []
    k = 1
    while k * k <= n:
        if n % k == 0:
            out.append(k)
            if k * k != n:
                out.append(n // k)
        k += 1
    return sorted(out)


def prime_field_roots(p: Poly, field: FieldSpec, rng: Optional[random.Random] = None) -> List[Scalar]:
    """Racines dans GF(q) d'un polynôme sans facteur carré."""
    q = field.characteristic
    x = (field.zero, field.one)
    # ne garder que le produit des facteurs linéaires : pgcd(p, x^q − x)
    linear_part = gcd_poly(p, sub(pow_mod(x, q, p, field), x, field), field)
    if degree(linear_part) <= 0:
        return []
    if q <= 1024:
        return [field.element(v) for v in range(q) if not evaluate(linear_part, field.element(v), field)]
    rng = rng or random.Random(0)
    return _cantor_zassenhaus_roots(linear_part, field, rng)


def _cantor_zassenhaus_roots(p: Poly, field: FieldSpec, rng: random.Random) -> List[Scalar]:
    if degree(p) == 0:
        return []
    if degree(p) == 1:
        return [-p[0] / p[1]]
    q = field.characteristic
    while True:
        a = field.random_element(rng)
        shifted = (a, field.one)
        h = sub(pow_mod(shifted, (q - 1) // 2, p, field), (field.one,), field)
        g = gcd_poly(p, h, field)
        if 0 < degree(g) < degree(p):
            other, _ = divmod_poly(p, g, field)
            return _cantor_zassenhaus_roots(g, field, rng) + _cantor_zassenhaus_roots(monic(other), field, rng)


def distinct_degree_parts(p: Poly, field: FieldSpec) -> List[Poly]:
    """Découpage d'un polynôme sans facteur carré par degré des irréductibles."""
    q = field.characteristic
    x = (field.zero, field.one)
    parts: List[Poly] = []
    rest = monic(p)
    power = x
    d = 0
    while degree(rest) > 0:
        d += 1
        if 2 * d > degree(rest):
            parts.append(rest)
            break
        power = pow_mod(power, q, rest, field)
        g = gcd_poly(rest, sub(power, x, field), field)
        if degree(g) > 0:
            parts.append(g)
            rest, _ = divmod_poly(rest, g, field)
            power = mod(power, rest, field) if degree(rest) > 0 else power
    return parts


def coprime_factors(p: Poly, field: FieldSpec, rng: Optional[random.Random] = None) -> List[Poly]:
    """
    Facteurs unitaires sans carré, deux à deux premiers entre eux, dont le
    produit est rad(p) : facteurs linéaires séparés, reste groupé par degré
    (GF(p)) ou en un seul bloc (Q).
    """
    rad = squarefree_part(p, field)
    if degree(rad) <= 0:
        return []
    factors: List[Poly] = []
    if field.is_prime_field:
        roots = prime_field_roots(rad, field, rng)
    else:
        roots = rational_roots(rad)
    rest = rad
    for r in roots:
        lin = linear(field.element(r), field)
        factors.append(lin)
        rest, _ = divmod_poly(rest, lin, field)
    rest = monic(rest)
    if degree(rest) > 0:
        if field.is_prime_field:
            factors.extend(distinct_degree_parts(rest, field))
        else:
            factors.append(rest)
    return factors
