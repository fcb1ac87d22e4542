"""Signature vectors mod p and the affine-permutation group acting on them.

A signature is a vector of n+2 residues mod p recording the exponents of a
diagonalized order-p automorphism.  Two signatures describe conjugate cyclic
subgroups exactly when one is a*pi(sigma) + b*1 of the other, so orbits of
that group action are the classification unit everywhere downstream.
"""

from itertools import combinations, combinations_with_replacement

from .admissibility import ensure_prime, mult_order


class BudgetExceededError(RuntimeError):
    """Raised when exhaustive enumeration would exceed the configured budget."""


class Signature:
    """Length n+2 vector of residues mod p; entries are reduced on construction."""

    __slots__ = ("p", "values")

    def __init__(self, p: int, values):
        ensure_prime(p)
        vals = tuple(int(v) % p for v in values)
        if len(vals) < 4:
            raise ValueError("a signature needs at least 4 entries (n >= 2)")
        self.p = p
        self.values = vals

    @property
    def n(self) -> int:
        return len(self.values) - 2

    def __len__(self):
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def __eq__(self, other):
        return (
            isinstance(other, Signature)
            and self.p == other.p
            and self.values == other.values
        )

    def __hash__(self):
        return hash((self.p, self.values))

    def __repr__(self):
        return f"Signature(p={self.p}, values={self.values})"


class AffinePermAction:
    """A group element sigma -> a*pi(sigma) + b*1 with a != 0 mod p."""

    __slots__ = ("p", "a", "b", "perm")

    def __init__(self, p: int, a: int, b: int, perm):
        ensure_prime(p)
        self.p = p
        self.a = a % p
        self.b = b % p
        self.perm = tuple(perm)
        if self.a == 0:
            raise ValueError("scaling part must be nonzero mod p")
        if sorted(self.perm) != list(range(len(self.perm))):
            raise ValueError("perm is not a permutation")

    def compose(self, other: "AffinePermAction") -> "AffinePermAction":
        """The element acting as self after other."""
        if self.p != other.p or len(self.perm) != len(other.perm):
            raise ValueError("cannot compose actions over different groups")
        perm = tuple(self.perm[other.perm[j]] for j in range(len(self.perm)))
        return AffinePermAction(
            self.p, self.a * other.a, self.a * other.b + self.b, perm
        )

    def __repr__(self):
        return f"AffinePermAction(p={self.p}, a={self.a}, b={self.b}, perm={self.perm})"


def act(sig: Signature, g: AffinePermAction) -> Signature:
    """Apply g: entry pi(j) of the result is a*sigma_j + b."""
    if g.p != sig.p:
        raise ValueError(f"modulus mismatch: signature mod {sig.p}, action mod {g.p}")
    if len(g.perm) != len(sig.values):
        raise ValueError("permutation length does not match signature length")
    p = sig.p
    out = [0] * len(sig.values)
    for j, v in enumerate(sig.values):
        out[g.perm[j]] = (g.a * v + g.b) % p
    return Signature(p, out)


def _canonical_values(p: int, vals) -> tuple:
    """Lex-least sorted vector over the full a*sigma + b sweep."""
    best = None
    for a in range(1, p):
        scaled = [a * v % p for v in vals]
        for b in range(p):
            cand = tuple(sorted((s + b) % p for s in scaled))
            if best is None or cand < best:
                best = cand
    return best


def canonicalize(sig: Signature) -> Signature:
    """Canonical orbit representative.

    The representative is the lexicographically least vector among
    sort(a*sigma + b*1) over all a in [1,p) and b in [0,p); sorting absorbs
    the permutation part.  Published family signatures need not coincide
    with this choice, so comparisons against external data go through
    equivalent() rather than tuple equality.
    """
    return Signature(sig.p, _canonical_values(sig.p, sig.values))


def equivalent(sig1: Signature, sig2: Signature) -> bool:
    """True iff the two signatures lie in the same orbit."""
    if sig1.p != sig2.p:
        raise ValueError("modulus mismatch")
    if len(sig1.values) != len(sig2.values):
        raise ValueError("length mismatch")
    return _canonical_values(sig1.p, sig1.values) == _canonical_values(
        sig2.p, sig2.values
    )


def scaling_canonical(sig: Signature) -> Signature:
    """Lex-least sorted vector over scalings only (no translation).

    Unlike canonicalize this preserves which eigenspace carries weight 0,
    so it is the normal form used for accepted family records.
    """
    p = sig.p
    best = min(
        tuple(sorted(a * v % p for v in sig.values)) for a in range(1, p)
    )
    return Signature(p, best)


def normalize_weight(sig: Signature, a: int) -> Signature:
    """Translate so the represented automorphism fixes its eigenform.

    For a form of eigenweight a, adding b*1 with 3b = -a mod p yields the
    representative of the same cyclic subgroup acting with weight 0.  Not
    available for p = 3 where 3 is not invertible.
    """
    p = sig.p
    if p == 3:
        raise ValueError("weight normalization is impossible for p = 3")
    b = (-a) * pow(3, -1, p) % p
    return Signature(p, tuple((v + b) % p for v in sig.values))


def _emit_classes(p: int, n: int, multisets) -> list[Signature]:
    """Canonicalize candidate multisets, deduplicate, drop the zero class."""
    handled = set()
    classes = set()
    zero = (0,) * (n + 2)
    for vals in multisets:
        if vals in handled:
            continue
        orbit = set()
        for a in range(1, p):
            scaled = [a * v % p for v in vals]
            for b in range(p):
                orbit.add(tuple(sorted((s + b) % p for s in scaled)))
        handled |= orbit
        canon = min(orbit)
        if canon != zero:
            classes.add(canon)
    return [Signature(p, v) for v in sorted(classes)]


def _chain_multisets(p: int, n: int):
    """Multisets whose nonzero values form a union of mult-by-(-2) orbits.

    Smooth invariant forms force every nonzero signature value v to come
    with -2v, so the nonzero value set must be a union of cosets of <-2>;
    up to scaling the coset of 1 can be assumed present.  Remaining slots
    are filled from {0} and the chosen values with arbitrary multiplicity.
    """
    ell = mult_order(-2, p)
    orbit_of = {}
    cosets = []
    for v in range(1, p):
        if v in orbit_of:
            continue
        cur, w = [], v
        while w not in orbit_of:
            orbit_of[w] = v
            cur.append(w)
            w = (-2) * w % p
        cosets.append(frozenset(cur))
    base = next(c for c in cosets if 1 in c)
    others = [c for c in cosets if c is not base]
    slots = n + 2
    for k in range((slots // ell - 1) + 1):
        for combo in combinations(others, k):
            union = set(base)
            for c in combo:
                union |= c
            if len(union) > slots:
                continue
            fillers = sorted(union | {0})
            fixed = sorted(union)
            for fill in combinations_with_replacement(fillers, slots - len(union)):
                yield tuple(sorted(fixed + list(fill)))


def enumerate_orbits(
    p: int, n: int, strategy: str = "exhaustive", budget: int = 10**8
) -> list[Signature]:
    """Canonical representatives of all nonzero signature classes.

    exhaustive walks every multiset of residues (complete; requires
    p^(n+2) <= budget).  chain_pruned, for p > 3, emits exactly the classes
    satisfying the closed-value-set necessary condition; it is a superset
    of the classes carrying a smooth invariant form and stays tractable for
    the large primes where exhaustive enumeration cannot run.
    """
    ensure_prime(p)
    if n < 2:
        raise ValueError("dimension must be >= 2")
    if strategy == "exhaustive":
        if p ** (n + 2) > budget:
            raise BudgetExceededError(
                f"{p}^{n + 2} raw signatures exceed budget {budget}; "
                "use the chain_pruned strategy"
            )
        return _emit_classes(p, n, combinations_with_replacement(range(p), n + 2))
    if strategy == "chain_pruned":
        if p <= 3:
            raise ValueError("chain_pruned requires p > 3")
        return _emit_classes(p, n, _chain_multisets(p, n))
    raise ValueError(f"unknown strategy {strategy!r}")
