"""JSON documents for choice data, preference distributions and RCM witnesses.

Probabilities are written as exact rational strings (``"2/3"``); integers,
``p/q`` strings and finite decimals are accepted on input.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from typing import Any

from irum.core import (
    AlternativeSet,
    ChoiceFunction,
    Preference,
    RandomChoiceModel,
    StochasticChoiceFunction,
    enumerate_menus,
    is_rational,
    members,
)
from irum.errors import DatasetError

_RATIONAL = re.compile(r"[+-]?\d+(/\d+)?|[+-]?(\d+\.\d*|\.\d+)")


def parse_rational(value: Any) -> Fraction:
    """``INTEGER``, ``INTEGER/POSITIVE_INTEGER`` or a finite decimal, converted exactly."""
    if isinstance(value, bool):
        raise DatasetError(f"not a rational: {value!r}")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if not isinstance(value, str) or not _RATIONAL.fullmatch(value.strip()):
        raise DatasetError(f"not a rational string: {value!r}")
    text = value.strip()
    if "/" in text and int(text.split("/")[1]) == 0:
        raise DatasetError(f"zero denominator in {value!r}")
    return Fraction(text)


def format_rational(q: Fraction) -> str:
    return str(Fraction(q))


def _load(text: str) -> Any:
    try:
        # decimals in JSON numbers are kept exact
        return json.loads(text, parse_float=Fraction)
    except json.JSONDecodeError as exc:
        raise DatasetError(f"invalid JSON: {exc}") from exc


def _alternatives(doc: Any) -> AlternativeSet:
    if not isinstance(doc, dict) or "alternatives" not in doc:
        raise DatasetError('document must be an object with an "alternatives" list')
    labels = doc["alternatives"]
    if not isinstance(labels, list) or not all(isinstance(x, str) for x in labels):
        raise DatasetError('"alternatives" must be a list of strings')
    try:
        return AlternativeSet(tuple(labels))
    except ValueError as exc:
        raise DatasetError(str(exc)) from exc


def _label_index(alt_set: AlternativeSet, label: Any) -> int:
    if not isinstance(label, str) or label not in alt_set.labels:
        raise DatasetError(f"unknown label {label!r}")
    return alt_set.labels.index(label)


def parse_dataset(text: str) -> StochasticChoiceFunction:
    """Read ``{"alternatives": [...], "choices": [{"menu": [...], "probs": {...}}]}``.

    Every menu with two or more alternatives must appear exactly once.
    Labels missing from ``probs`` are chosen with probability 0.
    """
    doc = _load(text)
    alt_set = _alternatives(doc)
    rows = doc.get("choices")
    if not isinstance(rows, list):
        raise DatasetError('"choices" must be a list')
    probs = {}
    for row in rows:
        if not isinstance(row, dict) or not isinstance(row.get("menu"), list):
            raise DatasetError('each choice row needs a "menu" list and a "probs" object')
        idx = [_label_index(alt_set, x) for x in row["menu"]]
        if len(set(idx)) != len(idx):
            raise DatasetError(f"repeated label in menu {row['menu']}")
        if len(idx) < 2:
            raise DatasetError(f"menu {row['menu']} has fewer than two alternatives")
        menu = sum(1 << i for i in idx)
        name = alt_set.menu_key(menu)
        if menu in probs:
            raise DatasetError(f"duplicate menu {name}")
        given = row.get("probs")
        if not isinstance(given, dict):
            raise DatasetError(f'menu {name} needs a "probs" object')
        cells = {}
        for label, value in given.items():
            x = _label_index(alt_set, label)
            if not menu >> x & 1:
                raise DatasetError(f"label {label!r} is not on menu {name}")
            cells[x] = parse_rational(value)
        vec = tuple(cells.get(x, Fraction(0)) for x in members(menu))
        if any(p < 0 or p > 1 for p in vec):
            raise DatasetError(f"probabilities on menu {name} must lie in [0, 1]")
        if sum(vec) != 1:
            raise DatasetError(f"menu probabilities must sum to 1 on {name} (got {sum(vec)})")
        probs[menu] = vec
    missing = [alt_set.menu_key(m) for m in enumerate_menus(alt_set)[0] if m not in probs]
    if missing:
        raise DatasetError(f"missing menus: {', '.join(missing)}")
    return StochasticChoiceFunction(alt_set, probs)


def dataset_document(rho: StochasticChoiceFunction) -> dict:
    alt_set = rho.alt_set
    rows = []
    for m in enumerate_menus(alt_set)[0]:
        rows.append({
            "menu": [alt_set.labels[x] for x in members(m)],
            "probs": {alt_set.labels[x]: format_rational(p) for x, p in zip(members(m), rho.probs[m])},
        })
    return {"alternatives": list(alt_set.labels), "choices": rows}


def _ranking(alt_set: AlternativeSet, spec: Any) -> Preference:
    labels = spec.split(">") if isinstance(spec, str) else spec
    if not isinstance(labels, list):
        raise DatasetError(f"bad ranking {spec!r}")
    pref = tuple(_label_index(alt_set, x.strip() if isinstance(x, str) else x) for x in labels)
    if sorted(pref) != list(range(alt_set.n)):
        raise DatasetError(f"ranking {spec!r} must list every alternative once")
    return pref


def parse_preference(alt_set: AlternativeSet, spec: str) -> Preference:
    return _ranking(alt_set, spec)


def parse_distribution(text: str) -> tuple[AlternativeSet, dict[Preference, Fraction]]:
    """Read ``{"alternatives": [...], "preferences": [{"ranking": "a>b>c", "weight": "1/2"}]}``."""
    doc = _load(text)
    alt_set = _alternatives(doc)
    entries = doc.get("preferences")
    if not isinstance(entries, list) or not entries:
        raise DatasetError('"preferences" must be a nonempty list')
    dist: dict[Preference, Fraction] = {}
    for entry in entries:
        if not isinstance(entry, dict) or "ranking" not in entry or "weight" not in entry:
            raise DatasetError('each preference needs "ranking" and "weight"')
        pref = _ranking(alt_set, entry["ranking"])
        if pref in dist:
            raise DatasetError(f"duplicate ranking {alt_set.preference_name(pref)}")
        weight = parse_rational(entry["weight"])
        if weight < 0:
            raise DatasetError("preference weights must be nonnegative")
        dist[pref] = weight
    if sum(dist.values()) != 1:
        raise DatasetError(f"preference weights must sum to 1 (got {sum(dist.values())})")
    return alt_set, {p: w for p, w in dist.items() if w}


def distribution_document(alt_set: AlternativeSet, dist: dict[Preference, Fraction]) -> dict:
    return {
        "alternatives": list(alt_set.labels),
        "preferences": [
            {"ranking": alt_set.preference_name(p), "weight": format_rational(w)} for p, w in sorted(dist.items())
        ],
    }


def rcm_document(model: RandomChoiceModel) -> dict:
    """Witness schema: support members with weight, rationality flag and a menu-key table."""
    alt_set = model.alt_set
    support = []
    for c, w in sorted(model.support, key=lambda cw: cw[0].choices):
        support.append({
            "weight": format_rational(w),
            "irrational": is_rational(c) is None,
            "choice": {alt_set.menu_key(m): alt_set.labels[x] for m, x in c.items()},
        })
    return {"support": support}


def parse_rcm(alt_set: AlternativeSet, doc: Any) -> RandomChoiceModel:
    if not isinstance(doc, dict) or not isinstance(doc.get("support"), list):
        raise DatasetError('an RCM needs a "support" list')
    keys = {alt_set.menu_key(m): m for m in enumerate_menus(alt_set)[0]}
    weights = []
    for entry in doc["support"]:
        table = entry.get("choice") if isinstance(entry, dict) else None
        if not isinstance(table, dict):
            raise DatasetError('each support member needs a "choice" table')
        unknown = set(table) - set(keys)
        if unknown:
            raise DatasetError(f"unknown menu keys: {', '.join(sorted(unknown))}")
        if len(table) != len(keys):
            raise DatasetError("a choice table must cover every menu")
        mapping = {keys[k]: _label_index(alt_set, v) for k, v in table.items()}
        try:
            c = ChoiceFunction.from_mapping(alt_set, mapping)
        except ValueError as exc:
            raise DatasetError(str(exc)) from exc
        weights.append((c, parse_rational(entry.get("weight"))))
    try:
        return RandomChoiceModel.from_weights(weights)
    except ValueError as exc:
        raise DatasetError(str(exc)) from exc


def parse_family(text: str) -> tuple[AlternativeSet, list[RandomChoiceModel]]:
    """Read ``{"alternatives": [...], "vertices": [<RCM>, ...]}``."""
    doc = _load(text)
    alt_set = _alternatives(doc)
    vertices = doc.get("vertices")
    if not isinstance(vertices, list) or not vertices:
        raise DatasetError('"vertices" must be a nonempty list')
    return alt_set, [parse_rcm(alt_set, v) for v in vertices]


def dumps(doc: Any) -> str:
    return json.dumps(doc, indent=2, sort_keys=False)
