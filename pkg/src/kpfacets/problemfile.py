"""JSON problem files: sections for instances, inequalities and reduction inputs.

Integers may be written as JSON numbers or decimal strings; anything that
does not fit in 64 bits is always emitted as a string. Rationals are
``"p/q"`` strings.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Optional

from .core import Inequality, KnapsackInstance
from .oracle import CssInstance, EvcInstance

INT64_MAX = 2**63 - 1


class ProblemFileError(ValueError):
    """Malformed or incomplete problem file."""


def enc_int(v: int):
    return v if -INT64_MAX - 1 <= v <= INT64_MAX else str(v)


def dec_int(v: Any, where: str) -> int:
    if isinstance(v, bool):
        raise ProblemFileError(f"{where}: expected integer, got {v!r}")
    if isinstance(v, int):
        return v
    if isinstance(v, str):
        s = v.strip()
        if s.lstrip("+-").isdigit():
            return int(s)
    raise ProblemFileError(f"{where}: expected integer, got {v!r}")


def dec_ints(v: Any, where: str) -> tuple[int, ...]:
    if not isinstance(v, list):
        raise ProblemFileError(f"{where}: expected a list")
    return tuple(dec_int(x, f"{where}[{i}]") for i, x in enumerate(v))


def enc_rational(q: Fraction) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def dec_rational(v: Any, where: str) -> Fraction:
    if isinstance(v, int) and not isinstance(v, bool):
        return Fraction(v)
    if isinstance(v, str):
        try:
            return Fraction(v.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ProblemFileError(f"{where}: bad rational {v!r}") from exc
    raise ProblemFileError(f"{where}: expected rational string, got {v!r}")


def _dec_param(v: Any) -> Any:
    # params hold integers (possibly big, hence strings) and flags
    if isinstance(v, str) and v.lstrip("+-").isdigit():
        return int(v)
    return v


def _section(doc: dict, name: str) -> Optional[dict]:
    sec = doc.get(name)
    if sec is None:
        return None
    if not isinstance(sec, dict):
        raise ProblemFileError(f"section {name!r} must be an object")
    return sec


def _field(sec: dict, key: str, where: str):
    if key not in sec:
        raise ProblemFileError(f"{where}: missing {key!r}")
    return sec[key]


@dataclass
class ProblemFile:
    instance: Optional[KnapsackInstance] = None
    inequality: Optional[Inequality] = None
    css: Optional[CssInstance] = None
    evc: Optional[EvcInstance] = None
    point: Optional[tuple[Fraction, ...]] = None
    partition: Optional[tuple[int, ...]] = None
    ek: Optional[tuple[tuple[int, ...], int]] = None  # (objective c, target L)
    params: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)

    def require(self, *names: str) -> None:
        missing = [n for n in names if getattr(self, n) is None]
        if missing:
            raise ProblemFileError(f"missing section(s): {', '.join(missing)}")

    def to_dict(self) -> dict:
        d: dict = {}
        if self.instance is not None:
            d["instance"] = {"n": self.instance.n, "a": [enc_int(x) for x in self.instance.a], "b": enc_int(self.instance.b)}
        if self.inequality is not None:
            d["inequality"] = {"alpha": [enc_int(x) for x in self.inequality.alpha], "beta": enc_int(self.inequality.beta)}
        if self.css is not None:
            d["css"] = {"w": [enc_int(x) for x in self.css.w], "t": enc_int(self.css.t)}
        if self.evc is not None:
            d["evc"] = {"num_vertices": self.evc.num_vertices, "edges": [list(e) for e in self.evc.edges], "k": self.evc.k}
        if self.point is not None:
            d["point"] = {"coords": [enc_rational(q) for q in self.point]}
        if self.partition is not None:
            d["partition"] = {"a": [enc_int(x) for x in self.partition]}
        if self.ek is not None:
            d["ek"] = {"c": [enc_int(x) for x in self.ek[0]], "L": enc_int(self.ek[1])}
        if self.params:
            d["params"] = {k: (enc_int(v) if isinstance(v, int) and not isinstance(v, bool) else v) for k, v in self.params.items()}
        if self.notes:
            d["notes"] = list(self.notes)
        return d

    @classmethod
    def from_dict(cls, doc: dict) -> "ProblemFile":
        if not isinstance(doc, dict):
            raise ProblemFileError("problem file must be a JSON object")
        pf = cls()
        try:
            if (sec := _section(doc, "instance")) is not None:
                a = dec_ints(_field(sec, "a", "instance"), "instance.a")
                if "n" in sec and dec_int(sec["n"], "instance.n") != len(a):
                    raise ProblemFileError("instance.n disagrees with len(a)")
                pf.instance = KnapsackInstance(a, dec_int(_field(sec, "b", "instance"), "instance.b"))
            if (sec := _section(doc, "inequality")) is not None:
                pf.inequality = Inequality(
                    dec_ints(_field(sec, "alpha", "inequality"), "inequality.alpha"),
                    dec_int(_field(sec, "beta", "inequality"), "inequality.beta"),
                )
            if (sec := _section(doc, "css")) is not None:
                pf.css = CssInstance(dec_ints(_field(sec, "w", "css"), "css.w"), dec_int(_field(sec, "t", "css"), "css.t"))
            if (sec := _section(doc, "evc")) is not None:
                edges = _field(sec, "edges", "evc")
                if not isinstance(edges, list) or any(not isinstance(e, list) or len(e) != 2 for e in edges):
                    raise ProblemFileError("evc.edges must be a list of pairs")
                pf.evc = EvcInstance(
                    dec_int(_field(sec, "num_vertices", "evc"), "evc.num_vertices"),
                    tuple((dec_int(u, "evc.edges"), dec_int(v, "evc.edges")) for u, v in edges),
                    dec_int(_field(sec, "k", "evc"), "evc.k"),
                )
            if (sec := _section(doc, "point")) is not None:
                coords = _field(sec, "coords", "point")
                if not isinstance(coords, list):
                    raise ProblemFileError("point.coords must be a list")
                pf.point = tuple(dec_rational(c, "point.coords") for c in coords)
            if (sec := _section(doc, "partition")) is not None:
                pf.partition = dec_ints(_field(sec, "a", "partition"), "partition.a")
            if (sec := _section(doc, "ek")) is not None:
                pf.ek = (dec_ints(_field(sec, "c", "ek"), "ek.c"), dec_int(_field(sec, "L", "ek"), "ek.L"))
            if (sec := _section(doc, "params")) is not None:
                pf.params = {k: _dec_param(v) for k, v in sec.items()}
            if "notes" in doc:
                pf.notes = list(doc["notes"])
        except ProblemFileError:
            raise
        except (TypeError, ValueError) as exc:
            raise ProblemFileError(str(exc)) from exc
        return pf


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def loads(text: str) -> ProblemFile:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ProblemFileError(f"not valid JSON: {exc}") from exc
    return ProblemFile.from_dict(raw)


def emit(pf: ProblemFile) -> str:
    return dumps(pf.to_dict())


def encode_point(x) -> list:
    return [enc_int(int(v)) for v in x]


def decode_point(v: Any, where: str = "point") -> tuple[int, ...]:
    return dec_ints(v, where)
