"""Arithmetic on Z_n and the symbolic map families that generate every graph.

All residues are kept in canonical form [0, n-1]; negative parameters in
input text are reduced once at parse time so graph provenance stays hashable.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from functools import lru_cache
from math import gcd, isqrt
from typing import Union

import numpy as np

from .errors import DomainError, MapSyntaxError, PrecisionError

# Exactly representable integer range of an IEEE double; the floor-power
# guard refuses inputs past it rather than returning wrong floors.
_EXACT_FLOAT_BOUND = 2**53


def normalize_modulus(n) -> int:
    n = int(n)
    if n < 1:
        raise DomainError(f"modulus must be >= 1, got {n}")
    return n


# ---------------------------------------------------------------------------
# Map specs
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Quadratic:
    """x -> x^2 + a."""
    a: int


@dataclass(frozen=True)
class Affine:
    """x -> a*x + b."""
    a: int
    b: int


@dataclass(frozen=True)
class Exponential:
    """x -> g^x + c (square-and-multiply modular power)."""
    g: int
    c: int


@dataclass(frozen=True)
class FloorPower:
    """x -> floor(x^alpha) + c, with 0^alpha taken as 0."""
    alpha: float
    c: int


@dataclass(frozen=True)
class Henon:
    """(x, y) -> (x^2 + c - y, b*x) on Z_m^2, encoded as v = x + m*y."""
    c: int
    b: int


@dataclass(frozen=True)
class Permutation:
    """A seeded uniform random permutation of Z_n (PCG64 + Fisher-Yates)."""
    seed: int


MapSpec = Union[Quadratic, Affine, Exponential, FloorPower, Henon, Permutation]


def _check_floor_power_range(alpha: float, n: int):
    # Guard: n * n^alpha must stay below 2^53 for non-integer alpha.
    if n > 1 and (1.0 + alpha) * math.log2(n) >= 53.0:
        raise PrecisionError(
            f"floor(x^{alpha}) on Z_{n} exceeds the exact float range (n^(1+alpha) >= 2^53)"
        )


def henon_side(n: int) -> int:
    """Side length m of the Henon vertex space, requiring n = m^2."""
    m = isqrt(n)
    if m * m != n:
        raise DomainError(f"Henon maps need a square vertex space, got n={n}")
    return m


def normalize_spec(spec: MapSpec, n: int) -> MapSpec:
    """Reduce all residue parameters of ``spec`` into canonical form for Z_n."""
    n = normalize_modulus(n)
    if isinstance(spec, Quadratic):
        return Quadratic(spec.a % n)
    if isinstance(spec, Affine):
        return Affine(spec.a % n, spec.b % n)
    if isinstance(spec, Exponential):
        return Exponential(spec.g % n, spec.c % n)
    if isinstance(spec, FloorPower):
        alpha = float(spec.alpha)
        if not math.isfinite(alpha) or alpha <= 0:
            raise DomainError(f"floor-power alpha must be finite and positive, got {alpha}")
        if alpha != int(alpha):
            _check_floor_power_range(alpha, n)
        return FloorPower(alpha, spec.c % n)
    if isinstance(spec, Henon):
        m = henon_side(n)
        return Henon(spec.c % m, spec.b % m)
    if isinstance(spec, Permutation):
        return Permutation(int(spec.seed) & 0xFFFFFFFFFFFFFFFF)
    raise DomainError(f"unknown map spec {spec!r}")


def spec_text(spec: MapSpec) -> str:
    """Canonical textual form, re-parseable by parse_map_spec."""
    if isinstance(spec, Quadratic):
        return f"x^2+{spec.a}"
    if isinstance(spec, Affine):
        return f"{spec.a}*x+{spec.b}"
    if isinstance(spec, Exponential):
        return f"{spec.g}^x+{spec.c}"
    if isinstance(spec, FloorPower):
        alpha = spec.alpha
        alpha_text = str(int(alpha)) if alpha == int(alpha) else repr(alpha)
        return f"floor(x^{alpha_text})+{spec.c}"
    if isinstance(spec, Henon):
        return f"henon({spec.c},{spec.b})"
    if isinstance(spec, Permutation):
        return f"perm({spec.seed})"
    raise DomainError(f"unknown map spec {spec!r}")


# ---------------------------------------------------------------------------
# Grammar: "x^2+A" | "A*x+B" | "G^x+C" | "floor(x^ALPHA)+C" | "perm(SEED)" | "henon(C,B)"
# ---------------------------------------------------------------------------

_INT = re.compile(r"[+-]?\d+")
_SIGNED = re.compile(r"[+-]\d+")
_UFLOAT = re.compile(r"\d+(?:\.\d+)?")

# Each production is a token sequence: literals interleaved with number tokens.
_PRODUCTIONS = [
    ("quadratic", ("x^2", _SIGNED)),
    ("affine", (_INT, "*x", _SIGNED)),
    ("exponential", (_INT, "^x", _SIGNED)),
    ("floorpower", ("floor(x^", _UFLOAT, ")", _SIGNED)),
    ("perm", ("perm(", _INT, ")")),
    ("henon", ("henon(", _INT, ",", _INT, ")")),
]


def _scan(tokens, text):
    """Walk one production; return (values, chars consumed) or (None, divergence pos)."""
    pos = 0
    values = []
    for tok in tokens:
        if isinstance(tok, str):
            if not text.startswith(tok, pos):
                # Credit the partial literal match for error positioning.
                k = 0
                while k < len(tok) and pos + k < len(text) and text[pos + k] == tok[k]:
                    k += 1
                return None, pos + k
            pos += len(tok)
        else:
            m = tok.match(text, pos)
            if m is None:
                return None, pos
            values.append(m.group())
            pos = m.end()
    return values, pos


def parse_map_spec(text: str, n: int) -> MapSpec:
    """Parse one map from its textual form; whitespace-insensitive.

    Residues out of range are normalized mod n, never an error.
    """
    n = normalize_modulus(n)
    compact = "".join(text.split())
    best_pos = 0
    for name, tokens in _PRODUCTIONS:
        values, pos = _scan(tokens, compact)
        if values is not None and pos == len(compact):
            return _build_spec(name, values, n)
        best_pos = max(best_pos, pos)
    raise MapSyntaxError(text, best_pos)


def _build_spec(name, values, n):
    if name == "quadratic":
        return normalize_spec(Quadratic(int(values[0])), n)
    if name == "affine":
        return normalize_spec(Affine(int(values[0]), int(values[1])), n)
    if name == "exponential":
        return normalize_spec(Exponential(int(values[0]), int(values[1])), n)
    if name == "floorpower":
        return normalize_spec(FloorPower(float(values[0]), int(values[1])), n)
    if name == "perm":
        return normalize_spec(Permutation(int(values[0])), n)
    if name == "henon":
        return normalize_spec(Henon(int(values[0]), int(values[1])), n)
    raise AssertionError(name)


def parse_maps(text: str, n: int) -> list[MapSpec]:
    """Parse a semicolon-separated list of map specs (the CLI --maps syntax)."""
    specs = []
    offset = 0
    for part in text.split(";"):
        if part.strip():
            try:
                specs.append(parse_map_spec(part, n))
            except MapSyntaxError as exc:
                raise MapSyntaxError(text, offset + exc.position) from None
        offset += len(part) + 1
    if not specs:
        raise DomainError(f"no map specs in {text!r}")
    return specs


# ---------------------------------------------------------------------------
# Applying maps
# ---------------------------------------------------------------------------

def _floor_power(x: int, alpha: float, n: int) -> int:
    if x == 0:
        return 0
    if alpha == int(alpha):
        return x ** int(alpha)
    _check_floor_power_range(alpha, n)
    return math.floor(float(x) ** alpha)


def apply_map(spec: MapSpec, x: int, n: int) -> int:
    """T(x) mod n for a single residue x in [0, n-1]."""
    n = normalize_modulus(n)
    if not 0 <= x < n:
        raise DomainError(f"x={x} outside [0, {n - 1}]")
    if isinstance(spec, Quadratic):
        return (x * x + spec.a) % n
    if isinstance(spec, Affine):
        return (spec.a * x + spec.b) % n
    if isinstance(spec, Exponential):
        return (pow(spec.g, x, n) + spec.c) % n
    if isinstance(spec, FloorPower):
        return (_floor_power(x, spec.alpha, n) + spec.c) % n
    if isinstance(spec, Henon):
        m = henon_side(n)
        cx, cy = x % m, x // m
        nx = (cx * cx + spec.c - cy) % m
        ny = (spec.b * cx) % m
        return nx + m * ny
    if isinstance(spec, Permutation):
        return int(_perm_table_cached(spec.seed, n)[x])
    raise DomainError(f"unknown map spec {spec!r}")


def map_table(spec: MapSpec, n: int) -> np.ndarray:
    """Full table T(x) for x = 0..n-1 as int64, vectorized per family."""
    n = normalize_modulus(n)
    spec = normalize_spec(spec, n)
    x = np.arange(n, dtype=np.int64)
    if isinstance(spec, Quadratic):
        return (x * x + spec.a) % n
    if isinstance(spec, Affine):
        return (spec.a * x + spec.b) % n
    if isinstance(spec, Exponential):
        # g^x built iteratively: g^(x+1) = g^x * g mod n.
        out = np.empty(n, dtype=np.int64)
        acc = 1 % n
        g = spec.g
        for i in range(n):
            out[i] = acc
            acc = (acc * g) % n
        return (out + spec.c) % n
    if isinstance(spec, FloorPower):
        out = np.fromiter(
            (_floor_power(int(v), spec.alpha, n) for v in range(n)), dtype=np.int64, count=n
        )
        return (out + spec.c) % n
    if isinstance(spec, Henon):
        m = henon_side(n)
        cx, cy = x % m, x // m
        return (cx * cx + spec.c - cy) % m + m * ((spec.b * cx) % m)
    if isinstance(spec, Permutation):
        return _perm_table_cached(spec.seed, n).copy()
    raise DomainError(f"unknown map spec {spec!r}")


def seeded_permutation(seed: int, n: int) -> np.ndarray:
    """Deterministic uniform permutation of [0, n-1].

    Generator: numpy PCG64 seeded with ``seed``, Fisher-Yates shuffle via
    Generator.permutation. numpy guarantees stream stability for a fixed
    bit generator, so the same (seed, n) gives the same table everywhere.
    """
    n = normalize_modulus(n)
    rng = np.random.Generator(np.random.PCG64(int(seed) & 0xFFFFFFFFFFFFFFFF))
    return rng.permutation(n).astype(np.int64)


@lru_cache(maxsize=32)
def _perm_table_cached(seed: int, n: int) -> np.ndarray:
    table = seeded_permutation(seed, n)
    table.setflags(write=False)
    return table


# ---------------------------------------------------------------------------
# Number theory
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FactorizationSummary:
    n: int
    distinct_primes: tuple[int, ...]
    omega: int
    carmichael: int


def _factorize(n: int) -> dict[int, int]:
    """Trial division; fine for desk scale (documented bound n <= 2^63 - 1)."""
    factors: dict[int, int] = {}
    m = n
    for p in (2, 3):
        while m % p == 0:
            factors[p] = factors.get(p, 0) + 1
            m //= p
    p = 5
    while p * p <= m:
        for q in (p, p + 2):
            while m % q == 0:
                factors[q] = factors.get(q, 0) + 1
                m //= q
        p += 6
    if m > 1:
        factors[m] = factors.get(m, 0) + 1
    return factors


def _carmichael_prime_power(p: int, k: int) -> int:
    if p == 2:
        if k == 1:
            return 1
        if k == 2:
            return 2
        return 2 ** (k - 2)
    return (p - 1) * p ** (k - 1)


def factor_summary(n: int) -> FactorizationSummary:
    """Distinct primes, omega(n), and Carmichael lambda(n) via the prime-power lcm formula."""
    n = int(n)
    if not 1 <= n < 2**63:
        raise DomainError(f"n={n} outside [1, 2^63)")
    factors = _factorize(n)
    primes = tuple(sorted(factors))
    lam = 1
    for p, k in factors.items():
        lam = math.lcm(lam, _carmichael_prime_power(p, k))
    return FactorizationSummary(n=n, distinct_primes=primes, omega=len(primes), carmichael=lam)


def _divisors_sorted(n: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def multiplicative_order(g: int, n: int) -> int:
    """Smallest t >= 1 with g^t = 1 mod n; g must be a unit."""
    n = normalize_modulus(n)
    g = g % n
    if n == 1:
        return 1
    if gcd(g, n) != 1:
        raise DomainError(f"g={g} is not a unit mod {n}")
    lam = factor_summary(n).carmichael
    for d in _divisors_sorted(lam):
        if pow(g, d, n) == 1:
            return d
    raise AssertionError(f"order of {g} mod {n} not found below carmichael bound")


def squaring_fixed_points(n: int) -> int:
    """Number of x in Z_n with x^2 = x (equals 2^omega(n))."""
    n = normalize_modulus(n)
    x = np.arange(n, dtype=np.int64)
    return int(np.count_nonzero((x * x - x) % n == 0))
