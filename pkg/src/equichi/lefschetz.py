"""Brute-force equivariant multiplicities via Lefschetz numbers.

For a regularized action every Lefschetz number is computed two independent
ways and the two are required to agree exactly:

  * trace route: alternating count of simplices mapped to themselves
    (regularity makes every such simplex pointwise fixed, so each
    contributes +1 to the trace on its chain group);
  * fixed-point route: the Euler characteristic of the fixed subcomplex of
    the cyclic group generated by the element.

Averaging against irreducible characters then yields the multiplicity of
each irreducible in the alternating sum of (co)homology; exact integrality
is asserted, never rounded.
"""

from __future__ import annotations

from dataclasses import dataclass

from .characters import Character, ClassFunction, character_table, trivial_index
from .complexes import euler_characteristic
from .cyclotomic import Cyc
from .errors import DefectError, ValidationError
from .gcomplex import GComplex, fixed_subcomplex
from .groups import Subgroup


def lefschetz_number_trace(X: GComplex, g: int) -> int:
    if not X.regular:
        raise ValidationError("Lefschetz traces require a regularized complex")
    total = 0
    for s in X.complex.simplices:
        if X.apply(g, s) == s:
            total += -1 if len(s) % 2 == 0 else 1
    return total


def lefschetz_number_fixed(X: GComplex, g: int) -> int:
    cyclic = Subgroup.generated(X.group, [g])
    return fixed_subcomplex(X, cyclic).euler_characteristic()


def lefschetz_number(X: GComplex, g: int) -> int:
    """L(g), computed both ways; disagreement is an internal defect."""
    via_trace = lefschetz_number_trace(X, g)
    via_fixed = lefschetz_number_fixed(X, g)
    if via_trace != via_fixed:
        raise DefectError(
            f"Lefschetz number disagreement at element {g}: "
            f"trace {via_trace} vs fixed-set {via_fixed}"
        )
    return via_trace


@dataclass(frozen=True)
class MultiplicityReport:
    """Per-element Lefschetz numbers and per-irreducible multiplicities.

    `multiplicities[j]` is the multiplicity of irreducible j in the
    alternating cohomology sum; `chi_rho[j]` = degree(j) * multiplicity, the
    rho-isotypical Euler characteristic.
    """

    gcomplex: GComplex
    lefschetz: tuple[int, ...]  # indexed by element id
    multiplicities: tuple[int, ...]  # indexed by irreducible index
    chi_rho: tuple[int, ...]

    def lefschetz_class_function(self) -> ClassFunction:
        G = self.gcomplex.group
        values = tuple(
            Cyc.rational(self.lefschetz[rep]) for rep in G.class_representatives()
        )
        return ClassFunction(G, values)

    def total_euler_characteristic(self) -> int:
        return self.lefschetz[self.gcomplex.group.identity]

    def to_json_dict(self) -> dict:
        return {
            "lefschetz": {str(g): l for g, l in enumerate(self.lefschetz)},
            "multiplicities": {
                str(j): m for j, m in enumerate(self.multiplicities)
            },
            "chi_rho": {str(j): c for j, c in enumerate(self.chi_rho)},
        }


def equivariant_multiplicities(X: GComplex) -> MultiplicityReport:
    """ind(rho) = (1/|G|) sum_g L(g) conj(chi_rho(g)), exactly, for every rho."""
    G = X.group
    numbers = tuple(lefschetz_number(X, g) for g in range(G.order))
    table = character_table(G)
    classes = G.conjugacy_classes()
    multiplicities = []
    for chi in table:
        total = Cyc.zero(1)
        for j, cls in enumerate(classes):
            total = total + len(cls) * (Cyc.rational(numbers[cls[0]]) * chi.values[j].conj())
        value = total / G.order
        q = value.as_rational()
        if q is None or q.denominator != 1:
            raise DefectError(
                f"multiplicity of irreducible {chi.index} is not an integer: {value!r}"
            )
        multiplicities.append(q.numerator)
    chi_rho = tuple(m * chi.degree for m, chi in zip(multiplicities, table))
    report = MultiplicityReport(X, numbers, tuple(multiplicities), chi_rho)
    # the multiplicities must reassemble every Lefschetz number exactly
    for g in range(G.order):
        total = Cyc.zero(1)
        for chi, m in zip(table, multiplicities):
            total = total + m * chi.values[G.class_of(g)]
        if not (total == Cyc.rational(numbers[g])):
            raise DefectError("multiplicities do not reassemble the Lefschetz numbers")
    return report


def distributional_pairing(report: MultiplicityReport, phi: ClassFunction) -> Cyc:
    """Pairing of the index distribution with a class function:
    sum_rho ind(rho) <phi, chi_rho>."""
    from .characters import inner_product

    G = report.gcomplex.group
    if phi.group is not G:
        raise ValidationError("class function lives on a different group")
    table = character_table(G)
    total = Cyc.zero(1)
    for chi, m in zip(table, report.multiplicities):
        total = total + m * inner_product(phi, chi)
    return total
