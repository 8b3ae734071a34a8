"""Annotated SVG map subset parsed into an immutable in-memory map document.

Recognized drawable elements are ``circle`` (point features), ``polyline``
and ``polygon`` (``points`` attribute), and ``path`` limited to absolute
M/L/Z commands.  An element becomes a map element when its ``class``
attribute carries exactly one of the kind tokens ``street``, ``poi``,
``river`` or ``frame``; its name comes from a direct ``title`` child and
an optional description from a direct ``desc`` child.  Everything else in
the file is ignored.
"""

from __future__ import annotations

import re
import xml.etree.ElementTree as ET
from dataclasses import dataclass

from tactimap._fmt import fmt_num

KINDS = ("street", "poi", "river", "frame")

SEVERITY_ERROR = "error"
SEVERITY_WARNING = "warning"


class MapError(Exception):
    """Base class for map parsing/validation failures."""


class ParseError(MapError):
    """The input is not well-formed XML."""

    def __init__(self, message: str, line: int | None = None):
        super().__init__(message if line is None else f"line {line}: {message}")
        self.line = line


class StructureError(MapError):
    """The XML is fine but the document does not form a valid map."""

    def __init__(self, message: str, element_id: str | None = None):
        super().__init__(message)
        self.element_id = element_id


class UnsupportedGeometry(MapError):
    """A recognized element uses geometry outside the supported subset."""

    def __init__(self, message: str, element_id: str | None = None):
        super().__init__(message)
        self.element_id = element_id


@dataclass(frozen=True)
class Point:
    x: float
    y: float


@dataclass(frozen=True)
class Polyline:
    vertices: tuple[tuple[float, float], ...]


@dataclass(frozen=True)
class Polygon:
    """Closed ring; the closing edge last->first is implicit."""

    vertices: tuple[tuple[float, float], ...]
    closed: bool = True


Geometry = Point | Polyline | Polygon


@dataclass(frozen=True)
class MapElement:
    id: str
    kind: str
    name: str
    geometry: Geometry
    description: str | None = None
    symbol_radius: float | None = None  # circle r, a rendering hint only


@dataclass(frozen=True)
class Bounds:
    x0: float
    y0: float
    x1: float
    y1: float

    def contains(self, x: float, y: float, margin: float = 0.0) -> bool:
        return (self.x0 - margin <= x <= self.x1 + margin
                and self.y0 - margin <= y <= self.y1 + margin)


@dataclass(frozen=True)
class Violation:
    severity: str
    element_id: str | None
    message: str


@dataclass(frozen=True)
class MapDocument:
    elements: tuple[MapElement, ...]
    bounds: Bounds
    source_name: str

    def get(self, element_id: str) -> MapElement | None:
        for el in self.elements:
            if el.id == element_id:
                return el
        return None

    def frame(self) -> MapElement | None:
        for el in self.elements:
            if el.kind == "frame":
                return el
        return None

    def count_by_kind(self) -> dict[str, int]:
        counts = {kind: 0 for kind in KINDS}
        for el in self.elements:
            counts[el.kind] += 1
        return counts

    def to_listing(self) -> str:
        """Canonical one-line-per-element text form of the document."""
        lines = ["map %s bounds %s %s %s %s" % (
            _quote(self.source_name),
            fmt_num(self.bounds.x0), fmt_num(self.bounds.y0),
            fmt_num(self.bounds.x1), fmt_num(self.bounds.y1))]
        for el in self.elements:
            parts = [el.kind, el.id, _quote(el.name), _geometry_text(el.geometry)]
            if el.description is not None:
                parts.append("desc %s" % _quote(el.description))
            lines.append(" ".join(parts))
        return "\n".join(lines) + "\n"


def _quote(text: str) -> str:
    return '"%s"' % text.replace("\\", "\\\\").replace('"', '\\"')


def _geometry_text(g: Geometry) -> str:
    if isinstance(g, Point):
        return "point %s,%s" % (fmt_num(g.x), fmt_num(g.y))
    name = "polyline" if isinstance(g, Polyline) else "polygon"
    coords = " ".join("%s,%s" % (fmt_num(x), fmt_num(y)) for x, y in g.vertices)
    return "%s %s" % (name, coords)


_NUMBER_RE = re.compile(r"[-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?")
_PATH_TOKEN_RE = re.compile(r"[A-Za-z]|[-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?")


def _localname(tag: str) -> str:
    return tag.rsplit("}", 1)[-1]


def _element_kind(node: ET.Element) -> str | None:
    tokens = (node.get("class") or "").split()
    kinds = [t for t in tokens if t in KINDS]
    if not kinds:
        return None
    if len(kinds) > 1:
        raise StructureError(
            "element %r declares multiple kinds: %s" % (node.get("id"), ", ".join(kinds)),
            element_id=node.get("id"))
    return kinds[0]


def _child_text(node: ET.Element, name: str) -> str | None:
    for child in node:
        if _localname(child.tag) == name:
            return (child.text or "").strip()
    return None


def _parse_points_attr(node: ET.Element, element_id: str) -> list[tuple[float, float]]:
    raw = node.get("points") or ""
    numbers = [float(m.group(0)) for m in _NUMBER_RE.finditer(raw)]
    if not numbers or len(numbers) % 2 != 0:
        raise UnsupportedGeometry(
            "element %r has an unusable points attribute" % element_id, element_id)
    return list(zip(numbers[0::2], numbers[1::2]))


def _parse_path_data(d: str, element_id: str) -> tuple[list[tuple[float, float]], bool]:
    """Absolute M/L/Z path data -> (vertices, closed)."""
    tokens = _PATH_TOKEN_RE.findall(d or "")
    vertices: list[tuple[float, float]] = []
    closed = False
    i = 0
    seen_move = False

    def take_pair(pos: int) -> tuple[float, float, int]:
        if pos + 1 >= len(tokens):
            raise UnsupportedGeometry(
                "element %r: path data ends mid-coordinate" % element_id, element_id)
        try:
            return float(tokens[pos]), float(tokens[pos + 1]), pos + 2
        except ValueError:
            raise UnsupportedGeometry(
                "element %r: expected coordinates in path data" % element_id,
                element_id) from None

    while i < len(tokens):
        tok = tokens[i]
        if tok in ("M", "L"):
            if closed:
                raise UnsupportedGeometry(
                    "element %r: path continues after Z" % element_id, element_id)
            if tok == "M" and seen_move:
                raise UnsupportedGeometry(
                    "element %r: multiple subpaths are not supported" % element_id,
                    element_id)
            if tok == "L" and not seen_move:
                raise UnsupportedGeometry(
                    "element %r: path must start with M" % element_id, element_id)
            seen_move = True
            i += 1
            x, y, i = take_pair(i)
            vertices.append((x, y))
            # Extra coordinate pairs after M or L are implicit line-tos.
            while i < len(tokens) and not tokens[i].isalpha():
                x, y, i = take_pair(i)
                vertices.append((x, y))
        elif tok in ("Z", "z"):
            if not seen_move:
                raise UnsupportedGeometry(
                    "element %r: Z before any coordinates" % element_id, element_id)
            closed = True
            i += 1
        elif tok.isalpha():
            raise UnsupportedGeometry(
                "element %r: unsupported path command %r" % (element_id, tok),
                element_id)
        else:
            raise UnsupportedGeometry(
                "element %r: stray number in path data" % element_id, element_id)
    if not seen_move:
        raise UnsupportedGeometry(
            "element %r has empty path data" % element_id, element_id)
    return vertices, closed


def _dedupe(vertices: list[tuple[float, float]]) -> tuple[tuple[float, float], ...]:
    out: list[tuple[float, float]] = []
    for v in vertices:
        if not out or v != out[-1]:
            out.append(v)
    return tuple(out)


def _make_ring(vertices: list[tuple[float, float]]) -> tuple[tuple[float, float], ...]:
    ring = _dedupe(vertices)
    if len(ring) > 1 and ring[0] == ring[-1]:
        ring = ring[:-1]
    return ring


def _node_geometry(node: ET.Element, element_id: str) -> tuple[Geometry, float | None]:
    tag = _localname(node.tag)
    if tag == "circle":
        try:
            cx = float(node.get("cx", "0"))
            cy = float(node.get("cy", "0"))
            radius = float(node.get("r", "0"))
        except ValueError:
            raise UnsupportedGeometry(
                "element %r has non-numeric circle attributes" % element_id,
                element_id) from None
        return Point(cx, cy), radius
    if tag == "polyline":
        return Polyline(_dedupe(_parse_points_attr(node, element_id))), None
    if tag == "polygon":
        return Polygon(_make_ring(_parse_points_attr(node, element_id))), None
    if tag == "path":
        vertices, closed = _parse_path_data(node.get("d", ""), element_id)
        if closed:
            return Polygon(_make_ring(vertices)), None
        return Polyline(_dedupe(vertices)), None
    raise UnsupportedGeometry("unsupported element type %r" % tag, element_id)


_GEOMETRY_TAGS = ("circle", "polyline", "polygon", "path")


def parse_map(data: bytes, *, margin: float = 0.0) -> MapDocument:
    """Parse raw SVG bytes into a validated MapDocument.

    ``margin`` relaxes the requirement that every element lie inside the
    frame's bounding box by that many map units.
    """
    try:
        root = ET.fromstring(data)
    except ET.ParseError as exc:
        line = exc.position[0] if exc.position else None
        raise ParseError(str(exc), line=line) from exc

    source_name = _child_text(root, "title") or ""

    elements: list[MapElement] = []
    seen_ids: set[str] = set()
    for node in root.iter():
        if _localname(node.tag) not in _GEOMETRY_TAGS:
            continue
        kind = _element_kind(node)
        if kind is None:
            continue
        element_id = node.get("id") or ""
        if not element_id:
            raise StructureError("a %s element has no id attribute" % kind)
        if element_id in seen_ids:
            raise StructureError("duplicate element id %r" % element_id, element_id)
        seen_ids.add(element_id)
        name = _child_text(node, "title")
        if name is None:
            raise StructureError(
                "element %r has a kind but no title child" % element_id, element_id)
        description = _child_text(node, "desc")
        geometry, symbol_radius = _node_geometry(node, element_id)
        elements.append(MapElement(
            id=element_id, kind=kind, name=name, geometry=geometry,
            description=description, symbol_radius=symbol_radius))

    frames = [el for el in elements if el.kind == "frame"]
    if not frames:
        raise StructureError("map has no frame element")
    if len(frames) > 1:
        raise StructureError(
            "map has %d frame elements, expected exactly one" % len(frames),
            element_id=frames[1].id)
    bounds = _bbox_of(frames[0].geometry)

    doc = MapDocument(elements=tuple(elements), bounds=bounds, source_name=source_name)
    problems = [v for v in validate_map(doc, margin=margin)
                if v.severity == SEVERITY_ERROR]
    if problems:
        first = problems[0]
        raise StructureError(first.message, element_id=first.element_id)
    return doc


def _geometry_vertices(g: Geometry) -> tuple[tuple[float, float], ...]:
    if isinstance(g, Point):
        return ((g.x, g.y),)
    return g.vertices


def _bbox_of(g: Geometry) -> Bounds:
    vertices = _geometry_vertices(g)
    xs = [x for x, _ in vertices]
    ys = [y for _, y in vertices]
    return Bounds(min(xs), min(ys), max(xs), max(ys))


def validate_map(doc: MapDocument, *, margin: float = 0.0) -> list[Violation]:
    """Check every document invariant; returns violations instead of raising."""
    out: list[Violation] = []

    def err(element_id: str | None, message: str) -> None:
        out.append(Violation(SEVERITY_ERROR, element_id, message))

    def warn(element_id: str | None, message: str) -> None:
        out.append(Violation(SEVERITY_WARNING, element_id, message))

    seen_ids: set[str] = set()
    names: dict[str, str] = {}
    frames = []
    for el in doc.elements:
        if not el.id:
            err(None, "element with empty id")
        elif el.id in seen_ids:
            err(el.id, "duplicate element id %r" % el.id)
        seen_ids.add(el.id)

        if el.kind not in KINDS:
            err(el.id, "unknown kind %r" % el.kind)
            continue
        if el.kind == "frame":
            frames.append(el)
        if el.kind in ("street", "poi", "river") and not el.name:
            err(el.id, "%s element %r has an empty name" % (el.kind, el.id))
        if el.name:
            if el.name in names:
                warn(el.id, "name %r is also used by element %r" % (el.name, names[el.name]))
            else:
                names[el.name] = el.id

        out.extend(_geometry_violations(el))

        for x, y in _geometry_vertices(el.geometry):
            if not doc.bounds.contains(x, y, margin):
                err(el.id, "element %r extends outside the map bounds" % el.id)
                break

    if len(frames) != 1:
        err(None, "map has %d frame elements, expected exactly one" % len(frames))
    elif _bbox_of(frames[0].geometry) != doc.bounds:
        err(frames[0].id, "bounds do not equal the frame's bounding box")
    return out


def _geometry_violations(el: MapElement) -> list[Violation]:
    g = el.geometry
    out: list[Violation] = []

    def err(message: str) -> None:
        out.append(Violation(SEVERITY_ERROR, el.id, message))

    vertices = _geometry_vertices(g)
    for a, b in zip(vertices, vertices[1:]):
        if a == b:
            err("element %r repeats consecutive vertices" % el.id)
            break
    if isinstance(g, Polygon) and len(g.vertices) > 1 and g.vertices[0] == g.vertices[-1]:
        err("polygon %r stores a duplicated closing vertex" % el.id)

    if el.kind == "poi" and not isinstance(g, Point):
        err("poi %r must be a point" % el.id)
    elif el.kind == "street":
        if not isinstance(g, Polyline) or len(g.vertices) < 2:
            err("street %r must be a polyline with at least 2 vertices" % el.id)
    elif el.kind == "river" and not isinstance(g, (Polyline, Polygon)):
        err("river %r must be a polyline or polygon" % el.id)
    elif el.kind == "frame":
        if not isinstance(g, Polygon) or len(g.vertices) < 3:
            err("frame %r must be a closed polygon with at least 3 vertices" % el.id)
    return out
