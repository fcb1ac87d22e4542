"""The classification pipeline: orbits -> feasibility -> certified witnesses.

For each signature class the pipeline looks for an eigenweight whose
eigenspace contains a form certified smooth over the rationals.  A class
with a certified member becomes a FamilyRecord carrying the eigenspace
basis, the moduli-space dimension D = dim E - dim N, and the witness; every
other class is reported with its rejection reason.
"""

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations, product
from math import gcd, lcm

from .admissibility import admissible_primes, is_admissible, is_prime
from .forms import eigenspace_basis, lemma_base_feasible
from .signatures import (
    Signature,
    _canonical_values,
    enumerate_orbits,
    normalize_weight,
    scaling_canonical,
)
from .smoothness import DEFAULT_MODULI, find_smooth_member


@dataclass
class RunConfig:
    """Knobs shared by classify and the command line."""

    strategy: str = "auto"
    trials: int = 20
    seed: int = 0
    moduli: tuple = DEFAULT_MODULI
    budget: int = 10**8
    threads: int | None = None

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if self.strategy not in ("auto", "exhaustive", "chain_pruned"):
            raise ValueError(f"unknown strategy {self.strategy!r}")

    def worker_count(self) -> int:
        if self.threads is not None:
            return max(1, self.threads)
        return max(1, int(os.environ.get("CUBICLASS_THREADS", "1")))


@dataclass
class FamilyRecord:
    """One classified family, or a rejected class when rejected_reason is set."""

    p: int
    n: int
    sigma: Signature
    weight: int | None
    dim_E: int | None
    dim_norm: int
    D: int | None
    basis: tuple = ()
    witness: tuple | None = None  # (coefficients, SmoothnessCertificate)
    label: str | None = None
    rejected_reason: str | None = None

    @property
    def accepted(self) -> bool:
        return self.rejected_reason is None

    def to_json(self) -> dict:
        doc = {
            "p": self.p,
            "n": self.n,
            "sigma": list(self.sigma.values),
            "weight": self.weight,
            "dim_E": self.dim_E,
            "dim_norm": self.dim_norm,
            "D": self.D,
            "basis": [list(m) for m in self.basis],
            "witness": None,
            "label": self.label,
            "rejected_reason": self.rejected_reason,
        }
        if self.witness is not None:
            coeffs, cert = self.witness
            doc["witness"] = {
                "coeffs": list(coeffs),
                "certificate": cert.to_json(),
            }
        return doc


def normalizer_dim(sig: Signature) -> int:
    """Dimension of the GL normalizer of the cyclic group: sum of n_j^2."""
    counts = {}
    for v in sig.values:
        counts[v] = counts.get(v, 0) + 1
    return sum(c * c for c in counts.values())


def family_dimension(sig: Signature, a: int) -> int:
    """dim of the weight-a eigenspace minus the normalizer dimension."""
    return len(eigenspace_basis(sig, a)) - normalizer_dim(sig)


# Family labels for cross-referencing the published threefold/fourfold
# tables; keyed by (p, canonical class values, weight).
_THREEFOLD_LABELS = (
    ("T_2^1", 2, (0, 0, 0, 0, 1), 0),
    ("T_2^2", 2, (0, 0, 0, 1, 1), 0),
    ("T_3^1", 3, (0, 0, 0, 0, 1), 0),
    ("T_3^2", 3, (0, 0, 0, 1, 1), 0),
    ("T_3^3", 3, (0, 0, 0, 1, 2), 0),
    ("T_3^4", 3, (0, 0, 1, 1, 2), 0),
    ("T_5^1", 5, (0, 1, 2, 3, 4), 0),
    ("T_11^1", 11, (1, 3, 4, 5, 9), 0),
)
_FOURFOLD_LABELS = (
    ("F_2^1", 2, (0, 0, 0, 0, 0, 1), 0),
    ("F_2^2", 2, (0, 0, 0, 0, 1, 1), 0),
    ("F_2^3", 2, (0, 0, 0, 1, 1, 1), 0),
    ("F_3^1", 3, (0, 0, 0, 0, 0, 1), 0),
    ("F_3^2", 3, (0, 0, 0, 0, 1, 1), 0),
    ("F_3^3", 3, (0, 0, 0, 0, 1, 2), 0),
    ("F_3^4", 3, (0, 0, 0, 1, 1, 1), 0),
    ("F_3^5", 3, (0, 0, 0, 1, 1, 2), 0),
    ("F_3^6", 3, (0, 0, 1, 1, 2, 2), 0),
    ("F_3^7", 3, (0, 0, 1, 1, 2, 2), 1),
    ("F_5^1", 5, (0, 0, 1, 2, 3, 4), 0),
    ("F_5^2", 5, (1, 1, 2, 2, 3, 4), 0),
    ("F_7^1", 7, (1, 2, 3, 4, 5, 6), 0),
    ("F_11^1", 11, (0, 1, 3, 4, 5, 9), 0),
)


@lru_cache(maxsize=None)
def _label_table(n: int) -> dict:
    rows = {3: _THREEFOLD_LABELS, 4: _FOURFOLD_LABELS}.get(n, ())
    return {
        (p, _canonical_values(p, vals), w): label for label, p, vals, w in rows
    }


def _label_for(n: int, p: int, sig: Signature, weight: int):
    return _label_table(n).get((p, _canonical_values(p, sig.values), weight))


def _two_symmetric(sig: Signature) -> bool:
    """For p = 3: is 2*sigma a translate-permute of sigma?

    When true, squaring the generator identifies the weight-1 and weight-2
    candidate families at this class.
    """
    p = sig.p
    doubled = [2 * v % p for v in sig.values]
    ref = tuple(sorted(sig.values))
    return any(
        tuple(sorted((v + b) % p for v in doubled)) == ref for b in range(p)
    )


def _accept(class_sig, rep, weight, result, n, p):
    coeffs, cert = result
    basis = eigenspace_basis(rep, weight)
    dn = normalizer_dim(rep)
    return FamilyRecord(
        p=p,
        n=n,
        sigma=rep,
        weight=weight,
        dim_E=len(basis),
        dim_norm=dn,
        D=len(basis) - dn,
        basis=basis.monomials,
        witness=(coeffs, cert),
        label=_label_for(n, p, class_sig, weight),
    )


def _process_class(class_sig: Signature, config: RunConfig):
    """Accept or reject one signature class.

    For p != 3 the eigenweight can be translated away, so the class is
    examined through its weight-0 normalized representatives: every
    lemma-feasible weight yields one, duplicates are merged up to scaling,
    and candidates are tried largest eigenspace first until a certified
    member appears (at most one record per class).  For p = 3 translations
    do not move the weight, so weights 0 and 1 (and 2, unless squaring the
    generator folds it onto 1) are genuinely distinct candidate families
    and each feasible one is searched separately.
    """
    p, n = class_sig.p, class_sig.n
    records = []
    any_feasible = False

    if p == 3:
        weights = [0, 1] if _two_symmetric(class_sig) else [0, 1, 2]
        for a in weights:
            feasible, _ = lemma_base_feasible(class_sig, a)
            if not feasible:
                continue
            any_feasible = True
            result = find_smooth_member(
                class_sig, a, config.trials, config.seed, config.moduli
            )
            if result is not None:
                records.append(_accept(class_sig, class_sig, a, result, n, p))
    else:
        cands = {}
        for a in range(p):
            feasible, _ = lemma_base_feasible(class_sig, a)
            if not feasible:
                continue
            any_feasible = True
            rep = scaling_canonical(
                Signature(p, sorted(normalize_weight(class_sig, a).values))
            )
            if rep.values not in cands:
                cands[rep.values] = (len(eigenspace_basis(rep, 0)), a, rep)
        for dim_e, _, rep in sorted(
            cands.values(), key=lambda t: (-t[0], t[1])
        ):
            result = find_smooth_member(
                rep, 0, config.trials, config.seed, config.moduli
            )
            if result is not None:
                records.append(_accept(class_sig, rep, 0, result, n, p))
                break

    if records:
        return records, None
    reason = (
        f"no_smooth_member_after_{config.trials}_trials"
        if any_feasible
        else "lemma_base"
    )
    rejected = FamilyRecord(
        p=p,
        n=n,
        sigma=class_sig,
        weight=None,
        dim_E=None,
        dim_norm=normalizer_dim(class_sig),
        D=None,
        rejected_reason=reason,
    )
    return [], rejected


def _resolve_strategy(p: int, n: int, config: RunConfig) -> str:
    if config.strategy != "auto":
        return config.strategy
    if p ** (n + 2) <= config.budget:
        return "exhaustive"
    return "chain_pruned"


def classify_with_audit(n: int, p: int, config: RunConfig | None = None):
    """(accepted records, rejected classes, notes) for one prime."""
    config = config or RunConfig()
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if not is_admissible(p, n):
        return [], [], [f"{p} not admissible in dimension {n}"]
    strategy = _resolve_strategy(p, n, config)
    classes = enumerate_orbits(p, n, strategy, config.budget)
    workers = config.worker_count()
    if workers > 1 and len(classes) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(lambda c: _process_class(c, config), classes))
    else:
        outcomes = [_process_class(c, config) for c in classes]
    accepted, rejected = [], []
    for recs, rej in outcomes:
        accepted.extend(recs)
        if rej is not None:
            rejected.append(rej)
    accepted.sort(key=lambda r: (r.sigma.values, r.weight))
    rejected.sort(key=lambda r: r.sigma.values)
    return accepted, rejected, []


def classify(n: int, p: int, config: RunConfig | None = None) -> list:
    """All families of smooth cubic n-folds with an order-p automorphism."""
    records, _, _ = classify_with_audit(n, p, config)
    return records


def classify_all(n: int, config: RunConfig | None = None) -> dict:
    """classify over every admissible prime for dimension n."""
    return {p: classify(n, p, config) for p in admissible_primes(n)}


# ---------------------------------------------------------------------------
# Fermat membership: which families contain the Fermat n-fold.


@dataclass(frozen=True)
class FermatGroupElement:
    """A symmetry of the Fermat form: coordinate permutation after
    per-coordinate cube-root scalings, taken modulo global scalars."""

    perm: tuple
    exps: tuple


def _cycles(perm):
    seen = [False] * len(perm)
    out = []
    for i in range(len(perm)):
        if seen[i]:
            continue
        cur = [i]
        seen[i] = True
        j = perm[i]
        while j != i:
            cur.append(j)
            seen[j] = True
            j = perm[j]
        out.append(cur)
    return out


def element_order_and_signature(el: FermatGroupElement):
    """Projective order, and the signature when that order is prime.

    Eigenvalues come blockwise from the permutation cycles; their exponents
    are exact rationals with denominator 3*lcm(cycle lengths), so the order
    and the signature (the eigenvalue ratios as powers of a primitive root
    of unity) are computed without any floating point.

    Returns (order, sigma values tuple or None).
    """
    cycles = _cycles(el.perm)
    L = lcm(*(len(c) for c in cycles))
    D = 3 * L
    nums = []
    for cyc in cycles:
        m = len(cyc)
        e_sum = sum(el.exps[i] for i in cyc) % 3
        base = e_sum * (L // m)
        step = 3 * (L // m)
        for j in range(m):
            nums.append((base + step * j) % D)
    diffs = [(x - nums[0]) % D for x in nums]
    g = D
    for d in diffs:
        g = gcd(g, d)
    order = D // g
    if order <= 1 or not is_prime(order):
        return order, None
    p = order
    return p, tuple(d * p // D % p for d in diffs)


@lru_cache(maxsize=None)
def fermat_order_classes(n: int) -> dict:
    """For each prime p, the signature classes realized inside the Fermat
    symmetry group (permutations extended by diagonal cube roots)."""
    m = n + 2
    raw = {}
    for perm in permutations(range(m)):
        cycles = _cycles(perm)
        L = lcm(*(len(c) for c in cycles))
        D = 3 * L
        blocks = [(len(c), L // len(c), c) for c in cycles]
        for tail in product((0, 1, 2), repeat=m - 1):
            exps = (0,) + tail
            nums = []
            for clen, quot, cyc in blocks:
                e_sum = sum(exps[i] for i in cyc) % 3
                base = e_sum * quot
                step = 3 * quot
                for j in range(clen):
                    nums.append((base + step * j) % D)
            base0 = nums[0]
            g = D
            for x in nums:
                g = gcd(g, x - base0)
            order = D // g
            if order <= 1 or not is_prime(order):
                continue
            p = order
            sig = tuple(sorted((x - base0) % D * p // D % p for x in nums))
            raw.setdefault(p, set()).add(sig)
    return {
        p: frozenset(_canonical_values(p, s) for s in sigs)
        for p, sigs in raw.items()
    }


def fermat_realizes(n: int, p: int, values, weight: int) -> bool:
    """Does the Fermat n-fold admit an automorphism with this class and weight?

    Every Fermat symmetry fixes the form exactly (cube-root scalings fix the
    cubes), so only weight 0 can match.
    """
    if n not in (3, 4):
        raise ValueError("supported dimensions are 3 and 4")
    if weight % p != 0:
        return False
    classes = fermat_order_classes(n)
    return _canonical_values(p, tuple(values)) in classes.get(p, frozenset())


def fermat_membership(n: int, family: FamilyRecord) -> bool:
    """True iff the Fermat n-fold belongs to the given family."""
    return fermat_realizes(n, family.p, family.sigma.values, family.weight)
