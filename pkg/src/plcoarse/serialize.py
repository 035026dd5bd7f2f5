"""Text (JSON) formats for every value the CLI reads or writes.

Rationals appear as strings ``"p/q"`` in lowest terms with q > 0; loading
and dumping a record is bit-exact.  Formats:

* PL map: ``{"carrier": "interval"|"line"|"circle", "nodes": [["p/q","p/q"], ...]}``
* finite group: ``{"order": n, "names": [...], "table": [[...]]}``
* factorization data: the group record plus ``h``/``k`` element index lists
  and ``alpha``/``beta`` matrices (|K| x |H|, entries are positions into the
  ``h`` and ``k`` lists respectively)
* certificates, witnesses and decompositions: flat records of the above.
"""

from __future__ import annotations

import json
import os
from typing import Union

from .coarse import FactorizationCert, QIWitness
from .groups import CirclePoint
from .pl import Carrier, PLError, PLMap
from .rational import ParseError, format_rational, parse_rational
from .zappa_szep import FiniteGroup, LineDecomposition, ZSData

Pathish = Union[str, os.PathLike]


def plmap_to_record(f: PLMap) -> dict:
    return {
        "carrier": f.carrier.value,
        "nodes": [[format_rational(x), format_rational(y)] for x, y in f.nodes],
    }


def plmap_from_record(record: dict) -> PLMap:
    try:
        carrier = Carrier(record["carrier"])
        nodes = tuple(
            (parse_rational(x), parse_rational(y)) for x, y in record["nodes"]
        )
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(f"malformed PL map record: {exc}") from exc
    return PLMap(nodes, carrier)


def group_to_record(group: FiniteGroup) -> dict:
    return {
        "order": group.order,
        "names": list(group.names),
        "table": [list(row) for row in group.table],
    }


def group_from_record(record: dict) -> FiniteGroup:
    try:
        names = tuple(str(n) for n in record["names"])
        table = tuple(tuple(int(v) for v in row) for row in record["table"])
        if int(record["order"]) != len(names):
            raise ParseError("order field disagrees with the name list")
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(f"malformed group record: {exc}") from exc
    return FiniteGroup(names, table)


def zsdata_to_record(zs: ZSData) -> dict:
    return {
        "group": group_to_record(zs.group),
        "h": list(zs.h_elems),
        "k": list(zs.k_elems),
        "alpha": [list(row) for row in zs.alpha],
        "beta": [list(row) for row in zs.beta],
    }


def zsdata_from_record(record: dict) -> ZSData:
    from .zappa_szep import zs_internal_decompose

    try:
        group = group_from_record(record["group"])
        h = [int(v) for v in record["h"]]
        k = [int(v) for v in record["k"]]
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(f"malformed factorization record: {exc}") from exc
    zs = zs_internal_decompose(group, h, k)
    if record.get("alpha") is not None:
        stored_alpha = tuple(tuple(int(v) for v in row) for row in record["alpha"])
        stored_beta = tuple(tuple(int(v) for v in row) for row in record["beta"])
        if stored_alpha != zs.alpha or stored_beta != zs.beta:
            raise ParseError("stored action tables disagree with the group data")
    return zs


def cert_to_record(cert: FactorizationCert) -> dict:
    return {
        "target": plmap_to_record(cert.target),
        "delta": format_rational(cert.delta),
        "n": cert.n,
        "factors": [plmap_to_record(g) for g in cert.factors],
        "per_factor_dist": [format_rational(d) for d in cert.per_factor_dist],
    }


def cert_from_record(record: dict) -> FactorizationCert:
    try:
        return FactorizationCert(
            plmap_from_record(record["target"]),
            parse_rational(record["delta"]),
            int(record["n"]),
            tuple(plmap_from_record(g) for g in record["factors"]),
            tuple(parse_rational(d) for d in record["per_factor_dist"]),
        )
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, (ParseError, PLError)):
            raise
        raise ParseError(f"malformed certificate record: {exc}") from exc


def witness_to_record(w: QIWitness) -> dict:
    return {
        "map": plmap_to_record(w.g),
        "translation": format_rational(w.translation),
        "nearest": w.nearest,
        "density_bound": format_rational(w.density_bound),
    }


def line_decomposition_to_record(d: LineDecomposition) -> dict:
    return {
        "carrier": "line",
        "translation": format_rational(d.translation),
        "isotropy": plmap_to_record(d.isotropy),
    }


def circle_decomposition_to_record(p: CirclePoint, k: PLMap) -> dict:
    return {
        "carrier": "circle",
        "point": format_rational(p.value),
        "isotropy": plmap_to_record(k),
    }


def dump_json(record: dict, path: Pathish) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(record, fh, indent=2, sort_keys=True)
        fh.write("\n")


def load_json(path: Pathish) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: {exc}") from exc


def load_plmap(path: Pathish) -> PLMap:
    return plmap_from_record(load_json(path))


def load_group(path: Pathish) -> FiniteGroup:
    return group_from_record(load_json(path))
