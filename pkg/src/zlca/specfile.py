"""JSON spec files for algebras, Gel'fand-Dorfman structures and submodules.

The on-disk format is a single JSON object:

    {
      "params": ["s"],
      "generators": [{"name": "L0", "grade": 0}, ...],
      "brackets": [{"left": "L0", "right": "L0",
                    "terms": [{"target": "L0", "poly": "d + 2*x"}]}, ...],
      "products": [...],          # optional: Novikov table (GD mode)
      "submodule": {"-2": "d + 2*s", "0": "full", "1": "zero"}   # optional
    }

Polynomial payloads are strings in the canonical grammar.  In conformal mode
a missing bracket row is the zero bracket when its target grade is in the
window and undecidable otherwise; in GD mode (``products`` present) rows are
explicit-presence, so a row with an empty term list is a decidable zero and a
missing row is undecidable.  Serialization is canonical: generators sorted by
(grade, name), rows sorted by (left, right), polynomials printed in canonical
form, keys emitted in sorted order.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any, Mapping, Optional

from . import grammar
from .conformal import ConformalAlgebra, GeneratorId
from .gd import GDAlgebra, LieStructure, NovikovAlgebra
from .ideals import GradedSubmodule
from .poly import ParamPoly


class SpecFileError(ValueError):
    """Malformed spec file (structure, names, grading or polynomial syntax)."""


class UndeclaredNameError(SpecFileError):
    """A generator or parameter is used without being declared."""


class GradeMismatchError(SpecFileError):
    """A bracket term targets a generator of the wrong grade."""


TableRows = tuple[tuple[str, str, tuple[tuple[str, ParamPoly], ...]], ...]


@dataclass(frozen=True)
class SpecFile:
    params: tuple[str, ...]
    generators: tuple[GeneratorId, ...]
    brackets: TableRows
    products: Optional[TableRows] = None
    submodule: Optional[tuple[tuple[int, str], ...]] = None

    # -- model construction -------------------------------------------------

    def _by_name(self) -> dict[str, GeneratorId]:
        return {g.name: g for g in self.generators}

    def _as_table(self, rows: TableRows, explicit: bool):
        names = self._by_name()
        table: dict[tuple[GeneratorId, GeneratorId], dict[GeneratorId, ParamPoly]] = {}
        for left, right, terms in rows:
            entry = {names[target]: poly for target, poly in terms}
            key = (names[left], names[right])
            if explicit or entry:
                table[key] = entry
        return table

    def algebra(self) -> ConformalAlgebra:
        window = {g.grade for g in self.generators}
        return ConformalAlgebra(self.generators,
                                self._as_table(self.brackets, explicit=False),
                                window, self.params)

    def gd_algebra(self) -> GDAlgebra:
        if self.products is None:
            raise SpecFileError("spec file has no products table (not GD mode)")
        nov = NovikovAlgebra(self.generators,
                             self._as_table(self.products, explicit=True))
        lie = LieStructure(self.generators,
                           self._as_table(self.brackets, explicit=True))
        return GDAlgebra(nov, lie)

    def submodule_pattern(self) -> GradedSubmodule:
        if self.submodule is None:
            raise SpecFileError("spec file has no submodule pattern")
        return parse_pattern(dict(self.submodule))

    # -- serialization -------------------------------------------------------

    def to_json_dict(self) -> dict[str, Any]:
        def rows_out(rows: TableRows) -> list[dict[str, Any]]:
            names = self._by_name()
            ordered = sorted(rows, key=lambda r: (names[r[0]], names[r[1]]))
            return [{"left": left, "right": right,
                     "terms": [{"target": target, "poly": str(poly)}
                               for target, poly in sorted(
                                   terms, key=lambda t: names[t[0]])]}
                    for left, right, terms in ordered]

        out: dict[str, Any] = {
            "params": sorted(self.params),
            "generators": [{"name": g.name, "grade": g.grade}
                           for g in sorted(self.generators)],
            "brackets": rows_out(self.brackets),
        }
        if self.products is not None:
            out["products"] = rows_out(self.products)
        if self.submodule is not None:
            out["submodule"] = {str(grade): pattern
                                for grade, pattern in self.submodule}
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2, sort_keys=True) + "\n"


def parse_pattern(pattern: Mapping[Any, str]) -> GradedSubmodule:
    """A {grade: "full" | "zero" | polynomial} map as a graded submodule."""
    components: dict[int, ParamPoly] = {}
    for key, value in pattern.items():
        try:
            grade = int(key)
        except (TypeError, ValueError):
            raise SpecFileError(f"submodule grade {key!r} is not an integer")
        if not isinstance(value, str):
            raise SpecFileError(f"submodule component at {grade} must be a string")
        if value == "zero":
            continue
        if value == "full":
            components[grade] = ParamPoly.const(1)
            continue
        try:
            components[grade] = grammar.parse(value)
        except grammar.ParseError as exc:
            raise SpecFileError(f"submodule component at {grade}: {exc}")
    try:
        return GradedSubmodule(components)
    except ValueError as exc:
        raise SpecFileError(str(exc))


# -- loading ------------------------------------------------------------------

def _require(cond: bool, message: str) -> None:
    if not cond:
        raise SpecFileError(message)


def _load_rows(raw: Any, where: str, generators: dict[str, GeneratorId],
               params: set[str], graded: bool) -> TableRows:
    _require(isinstance(raw, list), f"{where} must be a list")
    rows = []
    seen: set[tuple[str, str]] = set()
    for idx, row in enumerate(raw):
        ctx = f"{where}[{idx}]"
        _require(isinstance(row, dict), f"{ctx} must be an object")
        left, right = row.get("left"), row.get("right")
        _require(isinstance(left, str) and isinstance(right, str),
                 f"{ctx} needs string 'left' and 'right'")
        for name in (left, right):
            if name not in generators:
                raise UndeclaredNameError(f"{ctx}: undeclared generator {name!r}")
        _require((left, right) not in seen,
                 f"{ctx}: duplicate row for ({left}, {right})")
        seen.add((left, right))
        terms_raw = row.get("terms", [])
        _require(isinstance(terms_raw, list), f"{ctx}.terms must be a list")
        terms = []
        for tdx, term in enumerate(terms_raw):
            tctx = f"{ctx}.terms[{tdx}]"
            _require(isinstance(term, dict), f"{tctx} must be an object")
            target = term.get("target")
            poly_text = term.get("poly")
            _require(isinstance(target, str) and isinstance(poly_text, str),
                     f"{tctx} needs string 'target' and 'poly'")
            if target not in generators:
                raise UndeclaredNameError(f"{tctx}: undeclared generator "
                                          f"{target!r}")
            try:
                poly = grammar.parse(poly_text)
            except grammar.ParseError as exc:
                raise SpecFileError(f"{tctx}.poly: {exc}")
            undeclared = poly.params() - params
            if undeclared:
                raise UndeclaredNameError(
                    f"{tctx}.poly: undeclared parameter "
                    f"{sorted(undeclared)[0]!r}")
            if graded:
                want = generators[left].grade + generators[right].grade
                if generators[target].grade != want:
                    raise GradeMismatchError(
                        f"{tctx}: target {target!r} has grade "
                        f"{generators[target].grade}, expected {want}")
            terms.append((target, poly))
        rows.append((left, right, tuple(terms)))
    return tuple(rows)


def loads(text: str) -> SpecFile:
    """Parse and validate a spec file; raises SpecFileError subclasses."""
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecFileError(f"invalid JSON: {exc}")
    _require(isinstance(raw, dict), "spec file must be a JSON object")

    params_raw = raw.get("params", [])
    _require(isinstance(params_raw, list)
             and all(isinstance(p, str) for p in params_raw),
             "params must be a list of strings")
    for p in params_raw:
        try:
            ParamPoly.variable(p)
        except ValueError as exc:
            raise SpecFileError(f"params: {exc}")
        if p in ("d", "x", "y"):
            raise SpecFileError(f"params: {p!r} is a reserved formal variable")
    params = set(params_raw)

    gens_raw = raw.get("generators")
    _require(isinstance(gens_raw, list) and gens_raw,
             "generators must be a nonempty list")
    generators: dict[str, GeneratorId] = {}
    for idx, g in enumerate(gens_raw):
        ctx = f"generators[{idx}]"
        _require(isinstance(g, dict), f"{ctx} must be an object")
        name, grade = g.get("name"), g.get("grade")
        _require(isinstance(name, str) and name, f"{ctx} needs a string name")
        _require(isinstance(grade, int) and not isinstance(grade, bool),
                 f"{ctx} needs an integer grade")
        _require(name not in generators, f"{ctx}: duplicate generator {name!r}")
        generators[name] = GeneratorId(grade, name)

    graded = "products" not in raw
    brackets = _load_rows(raw.get("brackets", []), "brackets", generators,
                          params, graded)
    products = None
    if "products" in raw:
        products = _load_rows(raw["products"], "products", generators,
                              params, graded=False)

    submodule = None
    if "submodule" in raw:
        sub_raw = raw["submodule"]
        _require(isinstance(sub_raw, dict), "submodule must be an object")
        entries = []
        for key, value in sub_raw.items():
            try:
                grade = int(key)
            except (TypeError, ValueError):
                raise SpecFileError(f"submodule grade {key!r} is not an integer")
            _require(isinstance(value, str),
                     f"submodule component at {grade} must be a string")
            entries.append((grade, value))
        submodule = tuple(sorted(entries))

    return SpecFile(tuple(sorted(params)), tuple(sorted(generators.values())),
                    brackets, products, submodule)


def load_path(path: str) -> SpecFile:
    try:
        with open(path, encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        raise SpecFileError(f"cannot read {path}: {exc}")
    return loads(text)


# -- writers --------------------------------------------------------------------

def from_algebra(alg: ConformalAlgebra) -> SpecFile:
    rows: dict[tuple[str, str], list[tuple[str, ParamPoly]]] = {}
    for u, v, w, poly in alg.table_items():
        rows.setdefault((u.name, v.name), []).append((w.name, poly))
    brackets = tuple((left, right, tuple(terms))
                     for (left, right), terms in sorted(rows.items()))
    return SpecFile(tuple(sorted(alg.params)), alg.generators, brackets)


def from_gd(g: GDAlgebra) -> SpecFile:
    def rows_of(table) -> TableRows:
        rows = []
        for (u, v) in table.pairs():
            entry = table.entry(u, v)
            rows.append((u.name, v.name,
                         tuple((w.name, poly)
                               for w, poly in sorted(entry.items()))))
        return tuple(rows)

    params = sorted(g.nov.params | g.lie.params)
    return SpecFile(tuple(params), g.basis, rows_of(g.lie), rows_of(g.nov))
