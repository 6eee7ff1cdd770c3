"""Line-oriented algebra spec files.

Grammar (one directive per line, ``#`` starts a comment):

    field <p>
    vertex <label>
    arrow <label> <source> <target>
    rel <term> (+ <term>)*        term = [k*]<arrow>(.<arrow>)*

Coefficients are reduced mod p; relation paths compose left-to-right
and must have length at least two.
"""

from __future__ import annotations

from .algebra import BoundQuiverSpec, Quiver
from .gf import SUPPORTED_PRIMES


class SpecParseError(ValueError):
    def __init__(self, line_no, message):
        self.line_no = line_no
        super().__init__(f"line {line_no}: {message}")


def parse_spec(text: str) -> BoundQuiverSpec:
    p = None
    vertices: list[str] = []
    arrows: list[tuple] = []
    arrow_info: dict[str, tuple] = {}
    relations: list[tuple] = []
    pending_rels: list[tuple] = []  # (line_no, [(coeff, word), ...])

    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        directive = parts[0]
        if directive == "field":
            if len(parts) != 2 or not parts[1].isdigit():
                raise SpecParseError(line_no, "expected: field <p>")
            if p is not None:
                raise SpecParseError(line_no, "duplicate field directive")
            p = int(parts[1])
            if p not in SUPPORTED_PRIMES:
                raise SpecParseError(line_no, f"unsupported field GF({p}); p must be one of {SUPPORTED_PRIMES}")
        elif directive == "vertex":
            if len(parts) != 2:
                raise SpecParseError(line_no, "expected: vertex <label>")
            if parts[1] in vertices:
                raise SpecParseError(line_no, f"duplicate vertex {parts[1]!r}")
            vertices.append(parts[1])
        elif directive == "arrow":
            if len(parts) != 4:
                raise SpecParseError(line_no, "expected: arrow <label> <source> <target>")
            lab, s, t = parts[1:]
            if lab in arrow_info:
                raise SpecParseError(line_no, f"duplicate arrow {lab!r}")
            for v in (s, t):
                if v not in vertices:
                    raise SpecParseError(line_no, f"unknown vertex {v}")
            arrow_info[lab] = (s, t)
            arrows.append((lab, s, t))
        elif directive == "rel":
            terms_text = " ".join(parts[1:])
            if not terms_text:
                raise SpecParseError(line_no, "empty relation")
            terms = []
            for chunk in terms_text.split("+"):
                chunk = chunk.strip()
                if not chunk:
                    raise SpecParseError(line_no, "empty relation term")
                coeff = 1
                if "*" in chunk:
                    coeff_text, chunk = chunk.split("*", 1)
                    try:
                        coeff = int(coeff_text)
                    except ValueError:
                        raise SpecParseError(line_no, f"bad coefficient {coeff_text!r}")
                word = tuple(chunk.strip().split("."))
                if any(not w for w in word):
                    raise SpecParseError(line_no, f"malformed path {chunk!r}")
                terms.append((coeff, word))
            pending_rels.append((line_no, terms))
        else:
            raise SpecParseError(line_no, f"unknown directive {directive!r}")

    if p is None:
        raise SpecParseError(0, "missing field directive")

    # validate relation paths with line-accurate diagnostics
    for line_no, terms in pending_rels:
        endpoints = None
        for coeff, word in terms:
            if len(word) < 2:
                raise SpecParseError(line_no, f"relation path too short: {'.'.join(word)}")
            prev_t = None
            src = None
            for lab in word:
                if lab not in arrow_info:
                    raise SpecParseError(line_no, f"unknown arrow {lab}")
                s, t = arrow_info[lab]
                if prev_t is not None and s != prev_t:
                    raise SpecParseError(
                        line_no, f"path {'.'.join(word)} is not composable at {lab!r}"
                    )
                if src is None:
                    src = s
                prev_t = t
            if endpoints is None:
                endpoints = (src, prev_t)
            elif endpoints != (src, prev_t):
                raise SpecParseError(line_no, "relation terms are not parallel paths")
        relations.append(tuple((c, w) for c, w in terms))

    quiver = Quiver(tuple(vertices), tuple(arrows))
    return BoundQuiverSpec(p, quiver, tuple(relations))


def format_spec(spec: BoundQuiverSpec) -> str:
    """Render a spec back to the file format (canonical ordering)."""
    lines = [f"field {spec.p}"]
    lines += [f"vertex {v}" for v in spec.quiver.vertices]
    lines += [f"arrow {lab} {s} {t}" for lab, s, t in spec.quiver.arrows]
    for rel in spec.relations:
        terms = []
        for coeff, word in rel:
            prefix = f"{coeff}*" if coeff != 1 else ""
            terms.append(prefix + ".".join(word))
        lines.append("rel " + " + ".join(terms))
    return "\n".join(lines) + "\n"
