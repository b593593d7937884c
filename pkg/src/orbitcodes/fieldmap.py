"""The dictionary between F_q^n and the extension field F_q[x]/(p).

An ExtensionContext fixes an irreducible modulus p over a base field F_q
and makes the canonical isomorphism phi((v_1,...,v_n)) = sum v_i alpha^(i-1)
explicit, where alpha is the residue class of x.  It carries a dense
discrete-logarithm table with respect to a primitive element gamma (gamma
is alpha itself when p is primitive; otherwise the first element in
enumeration order of maximal multiplicative order), the exponent profile
of a subspace (the dlogs of its nonzero vectors), and the partition of the
nonzero field elements into orbits of multiplication by alpha.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DomainError
from .gfq import FieldElement, FieldSpec
from .matspace import Subspace
from .polyring import Poly, _prime_factors, order_of_polynomial


@dataclass(frozen=True)
class ExponentProfile:
    """Sorted dlogs of the q^k - 1 nonzero vectors of a k-dim subspace."""

    dim: int
    exponents: tuple[int, ...]

    def __post_init__(self):
        if len(set(self.exponents)) != len(self.exponents):
            raise DomainError("exponent profile has repeated exponents")
        if tuple(sorted(self.exponents)) != self.exponents:
            raise DomainError("exponent profile must be sorted")


class OrbitPartition:
    """Orbits of multiplication by alpha on the nonzero field elements.

    Every orbit has size e = ord(alpha) and is represented by its element
    of minimal gamma-dlog.  When built for a subspace, membership[i] counts
    the subspace vectors on orbit i and orbit_exponents[i] holds their
    within-orbit exponents (alpha-steps from the representative, in [0, e)).
    """

    __slots__ = ("size", "representatives", "membership", "orbit_exponents", "_locate")

    def __init__(self, size, representatives, membership, orbit_exponents, locate):
        self.size = size
        self.representatives = representatives
        self.membership = membership
        self.orbit_exponents = orbit_exponents
        self._locate = locate

    @property
    def orbit_count(self) -> int:
        return len(self.representatives)

    def locate(self, element: FieldElement) -> tuple[int, int]:
        """(orbit index, within-orbit exponent) of a nonzero element."""
        try:
            return self._locate[element]
        except KeyError:
            raise DomainError("element is zero or from another field") from None


class ExtensionContext:
    """Precomputed view of F_{q^n} = F_q[x]/(p) for one irreducible p."""

    __slots__ = ("field", "base", "n", "q", "modulus", "alpha", "order",
                 "primitive", "gamma", "_dlog", "_pow")

    def __init__(self, field: FieldSpec):
        if field.level == 0:
            raise DomainError("an extension context requires an extension field")
        modulus: Poly = field.modulus
        if not modulus.coeffs[0]:
            raise DomainError("modulus must have a nonzero constant term")
        self.field = field
        self.base = field.subfield
        self.n = field.degree
        self.q = self.base.order
        self.modulus = modulus
        self.order = order_of_polynomial(modulus)
        self.primitive = self.order == field.order - 1

        if self.n == 1:
            # x = -c_0 in the quotient by x + c_0.
            self.alpha = field.element([-modulus.coeffs[0]])
        else:
            self.alpha = field.element([0, 1])

        big = field.order - 1
        if self.primitive:
            self.gamma = self.alpha
        else:
            primes = _prime_factors(big)
            self.gamma = next(
                g for g in field.elements()
                if g and all(g ** (big // ell) != field.one() for ell in primes))

        # Dense dlog table for gamma, and its inverse as a power list.
        table = {}
        powers = []
        el = field.one()
        for j in range(big):
            table[el] = j
            powers.append(el)
            el = el * self.gamma
        assert len(table) == big, "gamma does not generate the nonzero elements"
        self._dlog = table
        self._pow = powers

    @classmethod
    def from_modulus(cls, modulus: Poly) -> "ExtensionContext":
        """Extend the modulus' coefficient field and wrap it."""
        return cls(modulus.field.extend(modulus))

    # -- the isomorphism -------------------------------------------------

    def phi(self, v) -> FieldElement:
        """(v_1, ..., v_n) -> sum v_i alpha^(i-1)."""
        vec = tuple(v)
        if len(vec) != self.n:
            raise DomainError(f"vector length {len(vec)} does not match n = {self.n}")
        return self.field.element([self.base.element(c) for c in vec])

    def phi_inv(self, x: FieldElement) -> tuple[FieldElement, ...]:
        """Coefficient vector of a field element over the base field."""
        x = self.field.element(x)
        return x.value

    def dlog(self, x: FieldElement) -> int:
        """Exponent of x with respect to gamma."""
        x = self.field.element(x)
        if not x:
            raise DomainError("discrete logarithm of zero is undefined")
        return self._dlog[x]

    # -- derived data ------------------------------------------------------

    def exponent_profile(self, u: Subspace) -> ExponentProfile:
        """Sorted dlogs of the nonzero vectors of u (primitive contexts only)."""
        if not self.primitive:
            raise DomainError("exponent profiles require a primitive context")
        self._check_subspace(u)
        exps = sorted(self.dlog(self.phi(v)) for v in u.nonzero_vectors())
        return ExponentProfile(u.dim, tuple(exps))

    def orbit_partition(self, u: Subspace | None = None) -> OrbitPartition:
        """Partition of the nonzero elements into orbits of alpha.

        Orbits are discovered in ascending gamma-dlog order, so each
        representative is the orbit element of minimal dlog.  With a
        subspace given, also tallies membership counts and within-orbit
        exponents of its nonzero vectors.
        """
        if u is not None:
            self._check_subspace(u)
        big = self.field.order - 1
        e = self.order
        reps: list[FieldElement] = []
        locate: dict[FieldElement, tuple[int, int]] = {}
        for j in range(big):
            el = self._pow[j]
            if el in locate:
                continue
            i = len(reps)
            reps.append(el)
            cur = el
            for b in range(e):
                locate[cur] = (i, b)
                cur = cur * self.alpha
            assert cur == el, "orbit did not close after ord(alpha) steps"
        membership = None
        orbit_exponents = None
        if u is not None:
            counts = [0] * len(reps)
            exps: list[list[int]] = [[] for _ in reps]
            for v in u.nonzero_vectors():
                i, b = locate[self.phi(v)]
                counts[i] += 1
                exps[i].append(b)
            membership = tuple(counts)
            orbit_exponents = tuple(tuple(sorted(b)) for b in exps)
        return OrbitPartition(e, tuple(reps), membership, orbit_exponents, locate)

    def _check_subspace(self, u: Subspace):
        if u.ambient != self.n or u.field != self.base:
            raise DomainError("subspace does not live in this context's vector space")
        if u.dim == 0:
            raise DomainError("the zero subspace has no exponent data")

    def __repr__(self):
        kind = "primitive" if self.primitive else f"order {self.order}"
        return f"ExtensionContext({self.modulus} over {self.base!r}, {kind})"
