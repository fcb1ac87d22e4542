"""Cubic forms, monomial eigenspaces, and the Fermat/Klein constructors.

Monomials are sorted index triples (i, j, k); a cubic form is a sparse map
from monomials to nonzero integer coefficients.  The eigenspace of a
diagonal automorphism splits the monomial basis by the residue
sigma_i + sigma_j + sigma_k mod p.
"""

from itertools import combinations_with_replacement
from math import comb

from .admissibility import admissible_primes, mult_order
from .signatures import Signature

Monomial = tuple  # (i, j, k) with i <= j <= k


def _check_monomial(m, n: int) -> Monomial:
    m = tuple(int(i) for i in m)
    if len(m) != 3 or not (0 <= m[0] <= m[1] <= m[2] <= n + 1):
        raise ValueError(f"invalid monomial {m} for n={n}")
    return m


class CubicForm:
    """Sparse integer cubic form in n+2 variables."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms):
        if n < 2:
            raise ValueError("dimension must be >= 2")
        self.n = n
        self.terms = {}
        for m, c in dict(terms).items():
            c = int(c)
            if c == 0:
                continue
            self.terms[_check_monomial(m, n)] = c

    def __eq__(self, other):
        return (
            isinstance(other, CubicForm)
            and self.n == other.n
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.n, tuple(sorted(self.terms.items()))))

    def __bool__(self):
        return bool(self.terms)

    def degree_in(self, i: int) -> int:
        """Largest multiplicity of variable i over the monomials present."""
        return max((m.count(i) for m in self.terms), default=0)

    def relabel(self, perm) -> "CubicForm":
        """Variable substitution x_i -> x_perm[i]."""
        out = {}
        for m, c in self.terms.items():
            out[tuple(sorted(perm[i] for i in m))] = c
        return CubicForm(self.n, out)

    def __repr__(self):
        parts = []
        for m, c in sorted(self.terms.items()):
            mono = "*".join(f"x{i}" for i in m)
            parts.append(f"{c}*{mono}" if c != 1 else mono)
        return " + ".join(parts) if parts else "0"


class EigenspaceBasis:
    """The monomials of a fixed weight under a diagonal automorphism."""

    __slots__ = ("signature", "weight", "monomials")

    def __init__(self, signature: Signature, weight: int, monomials):
        self.signature = signature
        self.weight = weight % signature.p
        self.monomials = tuple(monomials)

    def __len__(self):
        return len(self.monomials)

    def __iter__(self):
        return iter(self.monomials)

    def __repr__(self):
        return (
            f"EigenspaceBasis(sigma={self.signature.values}, "
            f"weight={self.weight}, dim={len(self.monomials)})"
        )


def s3_dimension(n: int) -> int:
    """Dimension of the space of cubic forms in n+2 variables: C(n+4, 3)."""
    if n < 2:
        raise ValueError("dimension must be >= 2")
    return comb(n + 4, 3)


def monomial_weight(m: Monomial, sig: Signature) -> int:
    return sum(sig.values[i] for i in m) % sig.p


def eigenspace_basis(sig: Signature, a: int) -> EigenspaceBasis:
    """All monomials x_i x_j x_k with sigma_i + sigma_j + sigma_k = a mod p."""
    p = sig.p
    a %= p
    vals = sig.values
    mons = [
        m
        for m in combinations_with_replacement(range(len(vals)), 3)
        if (vals[m[0]] + vals[m[1]] + vals[m[2]]) % p == a
    ]
    return EigenspaceBasis(sig, a, mons)


def lemma_base_feasible(sig: Signature, a: int):
    """Can every variable reach degree >= 2 inside the weight-a eigenspace?

    A smooth form must have degree >= 2 in each variable, which inside the
    eigenspace requires some j with 2*sigma_i + sigma_j = a mod p.  Returns
    (True, None) or (False, i) with i the first variable that fails.
    """
    p = sig.p
    a %= p
    present = set(sig.values)
    for i, v in enumerate(sig.values):
        if (a - 2 * v) % p not in present:
            return False, i
    return True, None


def fermat(n: int) -> CubicForm:
    """Sum of the n+2 variable cubes."""
    return CubicForm(n, {(i, i, i): 1 for i in range(n + 2)})


def klein(n: int) -> CubicForm:
    """The cyclic form x_0^2 x_1 + x_1^2 x_2 + ... + x_{n+1}^2 x_0."""
    m = n + 2
    return CubicForm(n, {tuple(sorted((i, i, (i + 1) % m))): 1 for i in range(m)})


def klein_signature(n: int) -> tuple[int, Signature]:
    """The prime p with (-2)^(n+2) = 1 mod p of full order, and sigma_i = (-2)^i.

    The Klein n-fold is invariant under the diagonal automorphism with this
    signature.  Takes the largest admissible prime whose order of -2 is
    exactly n+2; raises LookupError when no admissible prime has full order.
    """
    candidates = [p for p in admissible_primes(n) if p > 3 and mult_order(-2, p) == n + 2]
    if not candidates:
        raise LookupError(f"no prime of full order n+2={n + 2} exists for n={n}")
    p = candidates[-1]
    return p, Signature(p, [pow(-2, i, p) for i in range(n + 2)])


def weight_of(F: CubicForm, sig: Signature):
    """Common eigenweight of all terms of F, or None when weights are mixed."""
    if len(sig.values) != F.n + 2:
        raise ValueError("signature length does not match form dimension")
    weights = {monomial_weight(m, sig) for m in F.terms}
    if len(weights) != 1:
        return None
    return weights.pop()


def partials(F: CubicForm) -> list[dict]:
    """Exact integer partial derivatives, one quadratic form per variable.

    Each quadratic is a sparse map from sorted index pairs (i, j) to an
    integer coefficient.
    """
    out = [dict() for _ in range(F.n + 2)]
    for m, c in F.terms.items():
        for v in set(m):
            rest = list(m)
            rest.remove(v)
            key = tuple(rest)
            out[v][key] = out[v].get(key, 0) + c * m.count(v)
    for q in out:
        for key in [k for k, val in q.items() if val == 0]:
            del q[key]
    return out


def evaluate_quadratic(q: dict, point) -> int:
    """Evaluate a sparse pair-indexed quadratic at an integer point."""
    return sum(c * point[i] * point[j] for (i, j), c in q.items())


def form_to_json(F: CubicForm) -> dict:
    """The interchange format: {"n": ..., "terms": [{"c": ..., "m": [i,j,k]}]}."""
    return {
        "n": F.n,
        "terms": [
            {"c": c, "m": list(m)} for m, c in sorted(F.terms.items())
        ],
    }


def form_from_json(doc: dict) -> CubicForm:
    """Parse and validate the interchange format; duplicate monomials rejected."""
    if not isinstance(doc, dict) or "n" not in doc or "terms" not in doc:
        raise ValueError("form document needs 'n' and 'terms'")
    n = doc["n"]
    if not isinstance(n, int):
        raise ValueError("'n' must be an integer")
    terms = {}
    for entry in doc["terms"]:
        if set(entry) != {"c", "m"}:
            raise ValueError(f"bad term entry {entry!r}")
        m = tuple(entry["m"])
        if list(m) != sorted(m):
            raise ValueError(f"monomial indices must be sorted: {list(m)}")
        m = _check_monomial(m, n)
        if m in terms:
            raise ValueError(f"duplicate monomial {list(m)}")
        if not isinstance(entry["c"], int):
            raise ValueError("coefficients must be integers")
        terms[m] = entry["c"]
    return CubicForm(n, terms)
