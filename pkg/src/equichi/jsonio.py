"""JSON interchange: loading problem data, canonical report serialization.

Input formats (all plain JSON objects):

  group:    {"permutation_generators": [[...], ...]}  or
            {"table": [[...], ...], "generators": [...]?}
            with an optional "character_table" block, validated exactly
            before use.

  complex:  {"maximal_simplices": [[...], ...],
             "action": {"generator_images": [{...} | [...], ...]}}
            generator images align with the group's generator list.

  bundle:   {"H": {"generators": [...] | "elements": [...]},
             "components": [{"id": ..., "multiplicities": {"idx": m}}],
             "component_action": {"elem": {"id": "id"}}}
            omitted normalizer elements act as the identity permutation.

  index:    {"mode": ..., "dim": ..., "principal_integral": r,
             "strata": [{"id": ..., "entries": [{"n_b": ..., "rank": ...,
             "eta": r, "h": ..., "integral": r}]}]}
            where r is an integer or an [numerator, denominator] pair.

Reports are dumped with sorted keys and a trailing newline so a given input
always produces byte-identical output; nothing time- or path-dependent goes
into them.
"""

from __future__ import annotations

import hashlib
import json
from fractions import Fraction
from typing import Any

from .assembler import FineEntry, IndexData, StratumRecord
from .characters import attach_character_table
from .complexes import SimplicialComplex
from .errors import ValidationError
from .finedecomp import BundleData, ComponentSystem
from .gcomplex import GComplex, build_gcomplex
from .groups import (
    FiniteGroup,
    Subgroup,
    group_from_permutations,
    group_from_table,
    normalizer,
)


def canonical_json(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def file_digest(path: str) -> str:
    with open(path, "rb") as fh:
        return hashlib.sha256(fh.read()).hexdigest()


def load_json_file(path: str) -> Any:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{path} is not valid JSON: {exc}") from exc


def _require(data: dict, key: str, where: str) -> Any:
    if key not in data:
        raise ValidationError(f"{where} is missing the required key {key!r}")
    return data[key]


def rational_from_json(value: Any) -> Fraction:
    if isinstance(value, bool):
        raise ValidationError(f"expected a rational number, got {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if (
        isinstance(value, (list, tuple))
        and len(value) == 2
        and all(isinstance(x, int) and not isinstance(x, bool) for x in value)
    ):
        if value[1] == 0:
            raise ValidationError("rational denominator must be nonzero")
        return Fraction(value[0], value[1])
    raise ValidationError(
        f"expected an integer or a [numerator, denominator] pair, got {value!r}"
    )


def rational_to_json(value: Fraction) -> list[int]:
    return [value.numerator, value.denominator]


# ---------------------------------------------------------------------------
# groups


def group_from_json(data: dict) -> FiniteGroup:
    if not isinstance(data, dict):
        raise ValidationError("group data must be a JSON object")
    if "permutation_generators" in data:
        gens = data["permutation_generators"]
        if not isinstance(gens, list) or not gens:
            raise ValidationError("permutation_generators must be a nonempty list")
        perms = [tuple(int(x) for x in p) for p in gens]
        G = group_from_permutations(perms)
    elif "table" in data:
        table = [[int(x) for x in row] for row in data["table"]]
        if "generators" in data:
            G = FiniteGroup(table, generators=tuple(int(g) for g in data["generators"]))
        else:
            G = group_from_table(table)
    else:
        raise ValidationError(
            "group data needs either 'permutation_generators' or 'table'"
        )
    if "character_table" in data:
        attach_character_table(G, data["character_table"])
    return G


# ---------------------------------------------------------------------------
# complexes with actions


def gcomplex_from_json(data: dict, group: FiniteGroup) -> GComplex:
    if not isinstance(data, dict):
        raise ValidationError("complex data must be a JSON object")
    maximal = _require(data, "maximal_simplices", "complex data")
    simplices = [tuple(sorted(int(v) for v in s)) for s in maximal]
    if not simplices:
        raise ValidationError("complex data lists no simplices")
    complex = SimplicialComplex.from_maximal(simplices)
    action = _require(data, "action", "complex data")
    raw_images = _require(action, "generator_images", "complex action")
    images = []
    for img in raw_images:
        if isinstance(img, dict):
            images.append({int(k): int(v) for k, v in img.items()})
        else:
            images.append([int(v) for v in img])
    return build_gcomplex(complex, group, images)


# ---------------------------------------------------------------------------
# bundle data over component systems


def _subgroup_from_json(data: dict, group: FiniteGroup) -> Subgroup:
    if "elements" in data:
        elems = tuple(sorted(int(x) for x in data["elements"]))
        return Subgroup(group, elems)
    if "generators" in data:
        return Subgroup.generated(group, [int(x) for x in data["generators"]])
    raise ValidationError("subgroup data needs 'elements' or 'generators'")


def bundle_from_json(data: dict, group: FiniteGroup) -> BundleData:
    if not isinstance(data, dict):
        raise ValidationError("bundle data must be a JSON object")
    H = _subgroup_from_json(_require(data, "H", "bundle data"), group)
    raw_components = _require(data, "components", "bundle data")
    if not raw_components:
        raise ValidationError("bundle data lists no components")
    ids = []
    mults = []
    for comp in raw_components:
        ids.append(str(_require(comp, "id", "bundle component")))
        raw = _require(comp, "multiplicities", "bundle component")
        mults.append({int(k): int(v) for k, v in raw.items()})
    N = normalizer(H)
    id_pos = {cid: i for i, cid in enumerate(ids)}
    raw_action = data.get("component_action", {})
    action: dict[int, tuple[int, ...]] = {}
    for n in N.elements:
        moves = raw_action.get(str(n), {})
        perm = list(range(len(ids)))
        for src, dst in moves.items():
            if src not in id_pos or str(dst) not in id_pos:
                raise ValidationError(
                    f"component_action of element {n} names unknown component "
                    f"{src!r} or {dst!r}"
                )
            perm[id_pos[src]] = id_pos[str(dst)]
        action[n] = tuple(perm)
    extra = set(raw_action) - {str(n) for n in N.elements}
    if extra:
        raise ValidationError(
            f"component_action names elements outside the normalizer: {sorted(extra)}"
        )
    system = ComponentSystem(group, H, tuple(ids), action)
    return BundleData.over(system, mults)


# ---------------------------------------------------------------------------
# index data


def index_data_from_json(data: dict) -> IndexData:
    if not isinstance(data, dict):
        raise ValidationError("index data must be a JSON object")
    mode = str(_require(data, "mode", "index data"))
    dim = int(_require(data, "dim", "index data"))
    principal = rational_from_json(_require(data, "principal_integral", "index data"))
    strata = []
    for rec in data.get("strata", []):
        entries = []
        for e in _require(rec, "entries", "stratum record"):
            entries.append(
                FineEntry(
                    type_count=int(_require(e, "n_b", "fine entry")),
                    rank=int(_require(e, "rank", "fine entry")),
                    eta=rational_from_json(_require(e, "eta", "fine entry")),
                    harmonic_dim=int(_require(e, "h", "fine entry")),
                    integral=rational_from_json(_require(e, "integral", "fine entry")),
                )
            )
        strata.append(
            StratumRecord(id=str(_require(rec, "id", "stratum record")), entries=tuple(entries))
        )
    return IndexData(
        mode=mode, dim=dim, principal_integral=principal, strata=tuple(strata)
    )


def index_file_from_json(data: dict) -> dict[int | None, IndexData]:
    """An index data file holds either one bare block (key None) or a
    'per_rho' object keyed by irreducible index."""
    if not isinstance(data, dict):
        raise ValidationError("index data must be a JSON object")
    if "per_rho" in data:
        blocks = data["per_rho"]
        if not isinstance(blocks, dict) or not blocks:
            raise ValidationError("per_rho must be a nonempty object")
        out: dict[int | None, IndexData] = {}
        for key, block in blocks.items():
            try:
                rho = int(key)
            except ValueError:
                raise ValidationError(
                    f"per_rho keys must be irreducible indices, got {key!r}"
                ) from None
            out[rho] = index_data_from_json(block)
        return out
    return {None: index_data_from_json(data)}


def index_data_to_json(data: IndexData) -> dict:
    return {
        "mode": data.mode,
        "dim": data.dim,
        "principal_integral": rational_to_json(data.principal_integral),
        "strata": [
            {
                "id": rec.id,
                "entries": [
                    {
                        "n_b": e.type_count,
                        "rank": e.rank,
                        "eta": rational_to_json(e.eta),
                        "h": e.harmonic_dim,
                        "integral": rational_to_json(e.integral),
                    }
                    for e in rec.entries
                ],
            }
            for rec in data.strata
        ],
    }
