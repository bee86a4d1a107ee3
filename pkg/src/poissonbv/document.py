"""Structure files: a sectioned text format for presentations and brackets.

Example::

    # the round sphere with the so(3) bracket
    [ring]
    generators = x, y, z
    relation = z^2 -> 1 - x^2 - y^2
    smooth_dim = 2

    [dual_basis]
    x = 1 - x^2, -x*y, -x*z
    y = -x*y, 1 - y^2, -y*z
    z = -x*z, -y*z, x^2 + y^2

    [volume]
    a(y,z) = x
    b(y,z) = x

    [poisson]
    {x,y} = z

    [options]
    name = sphere

Omitting ``[dual_basis]`` means the identity matrix; omitting ``[volume]``
means a = b = 1 on the top index tuple.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

import logfire
from pydantic import BaseModel, Field

from poissonbv.algebra.expressions import parse_poly, parse_rule, sort_with_sign
from poissonbv.algebra.presentation import SmoothPresentation
from poissonbv.algebra.ring import Poly, PolynomialRing
from poissonbv.calculus.poisson import PoissonStructure
from poissonbv.core.errors import ParseError

SUFFIX = ".pois"
_SECTIONS = ("ring", "dual_basis", "volume", "poisson", "options")
_VOLUME_KEY = re.compile(r"^(a|b)\s*\(([^()]*)\)$")
_BRACKET_KEY = re.compile(r"^\{([^{},]*),([^{},]*)\}$")


class Located(BaseModel):
    """A value with the 1-based line and column where it starts."""

    text: str
    line: int
    column: int

    def error(self, message: str) -> ParseError:
        """A parse error pointing at this value."""
        return ParseError(message, line=self.line, column=self.column)


class InputDocument(BaseModel):
    """Raw sections of a structure file, before any algebra is built."""

    name: str = ""
    generators: list[str] = Field(default_factory=list)
    generators_at: Located | None = None
    relations: list[Located] = Field(default_factory=list)
    smooth_dim: Located | None = None
    dual_basis: dict[str, Located] | None = None
    volume: dict[str, Located] | None = None
    poisson: dict[str, Located] = Field(default_factory=dict)
    assert_confluent: bool = False

    @classmethod
    def parse(cls, text: str) -> InputDocument:
        """Split a document into sections and key/value entries.

        Raises:
            ParseError: On unknown sections, malformed lines or repeated keys
        """
        doc = cls()
        section: str | None = None
        for line_no, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].rstrip()
            if not line.strip():
                continue
            stripped = line.strip()
            indent = len(line) - len(line.lstrip())
            if stripped.startswith("["):
                if not stripped.endswith("]") or stripped[1:-1].strip() not in _SECTIONS:
                    msg = f"unknown section {stripped!r}"
                    raise ParseError(msg, line=line_no, column=indent + 1)
                section = stripped[1:-1].strip()
                if section == "dual_basis" and doc.dual_basis is None:
                    doc.dual_basis = {}
                if section == "volume" and doc.volume is None:
                    doc.volume = {}
                continue
            key, eq, value = line.partition("=")
            if not eq:
                msg = "expected 'key = value'"
                raise ParseError(msg, line=line_no, column=indent + 1)
            if section is None:
                msg = "entry outside of any section"
                raise ParseError(msg, line=line_no, column=indent + 1)
            value_column = len(key) + 2 + (len(value) - len(value.lstrip()))
            entry = Located(text=value.strip(), line=line_no, column=value_column)
            doc._add(section, key.strip(), entry, Located(text=key.strip(), line=line_no, column=indent + 1))
        return doc

    def _add(self, section: str, key: str, entry: Located, key_at: Located) -> None:
        if section == "ring":
            if key == "generators":
                self.generators = [g.strip() for g in entry.text.split(",") if g.strip()]
                self.generators_at = entry
            elif key == "relation":
                self.relations.append(entry)
            elif key == "smooth_dim":
                self.smooth_dim = entry
            else:
                raise key_at.error(f"unknown ring key {key!r}")
        elif section == "options":
            if key == "name":
                self.name = entry.text
            elif key == "assert_confluent":
                if entry.text.lower() not in ("true", "false"):
                    raise entry.error("assert_confluent must be true or false")
                self.assert_confluent = entry.text.lower() == "true"
            else:
                raise key_at.error(f"unknown option {key!r}")
        else:
            target = {"dual_basis": self.dual_basis, "volume": self.volume, "poisson": self.poisson}[section]
            assert target is not None
            if key in target:
                raise key_at.error(f"{key!r} given twice")
            target[key] = entry

    # --- building ---

    def ring(self) -> PolynomialRing:
        """The polynomial ring with its rewrite rules.

        Raises:
            ParseError: On malformed generators or relations
            NonConfluentRulesError: On overlapping or non-terminating rules
        """
        if not self.generators or self.generators_at is None:
            raise ParseError("the [ring] section must declare generators")
        names = tuple(self.generators)
        try:
            PolynomialRing(names)
        except ParseError as exc:
            raise self.generators_at.error(exc.message) from None
        rules = []
        for entry in self.relations:
            try:
                rules.append(parse_rule(entry.text, names))
            except ParseError as exc:
                raise exc.at(entry.line, entry.column - 1) from None
        return PolynomialRing(names, rules, assert_confluent=self.assert_confluent)

    def _poly(self, entry: Located, ring: PolynomialRing) -> Poly:
        try:
            return parse_poly(entry.text, ring)
        except ParseError as exc:
            raise exc.at(entry.line, entry.column - 1) from None

    def presentation(self) -> SmoothPresentation:
        """Build the presentation from the ring, dual-basis and volume sections."""
        ring = self.ring()
        r = ring.r
        n = r - len(ring.rules)
        if self.smooth_dim is not None:
            try:
                n = int(self.smooth_dim.text)
            except ValueError:
                raise self.smooth_dim.error("smooth_dim must be an integer") from None
            if not 0 <= n <= r:
                raise self.smooth_dim.error(f"smooth_dim must lie in 0..{r}")
        if self.dual_basis is None:
            dual = tuple(tuple(ring.constant(int(i == j)) for j in range(r)) for i in range(r))
        else:
            dual = self._dual_matrix(ring)
        top = tuple(range(n))
        if self.volume is None:
            volume_a = {top: ring.one}
            volume_b = {top: ring.one}
        else:
            volume_a, volume_b = self._volume(ring, n)
        return SmoothPresentation(ring, n, dual, volume_a, volume_b, name=self.name)

    def _dual_matrix(self, ring: PolynomialRing) -> tuple[tuple[Poly, ...], ...]:
        assert self.dual_basis is not None
        rows: list[tuple[Poly, ...]] = []
        for name in ring.generators:
            entry = self.dual_basis.get(name)
            if entry is None:
                msg = f"[dual_basis] has no row for {name!r}"
                raise ParseError(msg, line=self.generators_at.line if self.generators_at else 1)
            cells: list[Poly] = []
            offset = 0
            for cell in entry.text.split(","):
                lead = len(cell) - len(cell.lstrip())
                located = Located(text=cell.strip(), line=entry.line, column=entry.column + offset + lead)
                cells.append(self._poly(located, ring))
                offset += len(cell) + 1
            if len(cells) != ring.r:
                raise entry.error(f"row {name!r} needs {ring.r} entries, got {len(cells)}")
            rows.append(tuple(cells))
        for name, entry in self.dual_basis.items():
            if name not in ring.generators:
                raise ParseError(f"undeclared generator {name!r}", line=entry.line)
        return tuple(rows)

    def _index(self, names: str, ring: PolynomialRing, at: Located) -> tuple[int, tuple[int, ...]]:
        indices = []
        for name in (part.strip() for part in names.split(",")):
            if not name:
                continue
            if name not in ring.generators:
                raise at.error(f"undeclared generator {name!r}")
            indices.append(ring.generators.index(name))
        sorted_index = sort_with_sign(tuple(indices))
        if sorted_index is None:
            raise at.error("repeated generator in an index tuple")
        return sorted_index

    def _volume(
        self, ring: PolynomialRing, n: int
    ) -> tuple[dict[tuple[int, ...], Poly], dict[tuple[int, ...], Poly]]:
        assert self.volume is not None
        parts: dict[str, dict[tuple[int, ...], Poly]] = {"a": {}, "b": {}}
        for key, entry in self.volume.items():
            at = Located(text=key, line=entry.line, column=1)
            match = _VOLUME_KEY.match(key)
            if match is None:
                raise at.error(f"volume keys look like a(x,y) or b(x,y), got {key!r}")
            sign, index = self._index(match.group(2), ring, at)
            if len(index) != n:
                raise at.error(f"volume index tuples have {n} generators")
            value = self._poly(entry, ring).scale(sign)
            bucket = parts[match.group(1)]
            bucket[index] = bucket[index] + value if index in bucket else value
        return parts["a"], parts["b"]

    def poisson_structure(self, pres: SmoothPresentation) -> PoissonStructure:
        """Build the bracket table and its bivector.

        Raises:
            ParseError: On malformed keys, undeclared generators or bad expressions
        """
        table: dict[tuple[int, int], Poly] = {}
        for key, entry in self.poisson.items():
            at = Located(text=key, line=entry.line, column=1)
            match = _BRACKET_KEY.match(key.replace(" ", ""))
            if match is None:
                raise at.error(f"bracket keys look like {{x,y}}, got {key!r}")
            sign_index = self._index(f"{match.group(1)},{match.group(2)}", pres.ring, at)
            sign, (i, j) = sign_index
            if (i, j) in table:
                raise at.error(f"bracket {key} given twice")
            table[i, j] = self._poly(entry, pres.ring).scale(sign)
        return PoissonStructure.from_table(pres, table)


@dataclass(frozen=True)
class LoadedStructure:
    """A parsed structure file."""

    name: str
    pres: SmoothPresentation
    poisson: PoissonStructure
    document: InputDocument


def bundled_structures() -> list[str]:
    """File names of the bundled structures, sorted."""
    root = resources.files("poissonbv") / "structures"
    return sorted(entry.name for entry in root.iterdir() if entry.name.endswith(SUFFIX))


def read_source(location: str) -> tuple[str, str]:
    """Read a structure file from disk, falling back to the bundled corpus by base name.

    Returns:
        ``(display name, text)``

    Raises:
        FileNotFoundError: If neither exists
    """
    path = Path(location)
    if path.is_file():
        return path.stem, path.read_text(encoding="utf-8")
    name = path.name if path.name.endswith(SUFFIX) else f"{path.name}{SUFFIX}"
    bundled = resources.files("poissonbv") / "structures" / name
    if bundled.is_file():
        return name.removesuffix(SUFFIX), bundled.read_text(encoding="utf-8")
    msg = f"no such structure file: {location}"
    raise FileNotFoundError(msg)


def load_text(text: str, default_name: str = "") -> LoadedStructure:
    """Parse a structure document held in memory."""
    document = InputDocument.parse(text)
    pres = document.presentation()
    poisson = document.poisson_structure(pres)
    name = document.name or default_name
    logfire.debug("structure loaded", name=name, generators=pres.r, n=pres.n, rules=len(pres.ring.rules))
    return LoadedStructure(name=name, pres=pres, poisson=poisson, document=document)


def load_structure(location: str) -> LoadedStructure:
    """Load a structure file by path or bundled name."""
    default_name, text = read_source(location)
    return load_text(text, default_name)
