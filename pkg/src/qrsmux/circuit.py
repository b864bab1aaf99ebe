"""Gate-level intermediate representation.

Registers group qubit wires and carry a photon id (the multiplexing group)
plus a role tag.  Gates are typed records; multi-controlled X gates carry a
per-control polarity ("positive" fires on |1>, "zero" fires on |0>).  Qudit-
level gates (SUM, DFT, CMulAdd) address whole registers: their wires have
``idx`` set to None.

Zero-polarity controls are first-class on MCX so gate-class counts do not
depend on the control pattern; ``normalize_polarities`` expands them into X
conjugation pairs when an X-explicit circuit is wanted.  Those X gates are
tallied under "X" and never enter CX totals.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field, replace
from typing import Iterable, NamedTuple

from .errors import InvalidGateError, ParseError, ResolutionError

ROLES = ("data-A", "data-B", "carry", "check-if", "gf-message", "gf-code", "work")

POSITIVE = "positive"
ZERO = "zero"
POLARITIES = (POSITIVE, ZERO)

GATE_KINDS = ("X", "H", "T", "Tdag", "MCX", "SUM", "DFT", "CMulAdd", "OS")
_SINGLE_QUBIT = ("X", "H", "T", "Tdag", "OS")
_REGISTER_LEVEL = ("SUM", "DFT", "CMulAdd")


class Wire(NamedTuple):
    reg: str
    idx: int | None = None  # None addresses the whole register (qudit-level gates)


class Control(NamedTuple):
    wire: Wire
    pol: str = POSITIVE


@dataclass(frozen=True)
class Register:
    name: str
    width: int
    photon: int
    role: str

    def __post_init__(self):
        if self.width < 1:
            raise ValueError(f"register {self.name!r} must have width >= 1")
        if self.role not in ROLES:
            raise ValueError(f"unknown register role {self.role!r}")


class RegisterTable:
    """Ordered set of registers with wire resolution to global bit offsets."""

    def __init__(self, registers: Iterable[Register]):
        self.registers: tuple[Register, ...] = tuple(registers)
        self._by_name: dict[str, Register] = {}
        offset = 0
        self._offsets: dict[str, int] = {}
        for r in self.registers:
            if r.name in self._by_name:
                raise ValueError(f"duplicate register name {r.name!r}")
            self._by_name[r.name] = r
            self._offsets[r.name] = offset
            offset += r.width
        self.total_width = offset

    def __getitem__(self, name: str) -> Register:
        try:
            return self._by_name[name]
        except KeyError:
            raise ResolutionError(f"unknown register {name!r}") from None

    def __contains__(self, name: str) -> bool:
        return name in self._by_name

    def resolve(self, wire: Wire) -> int:
        """Global bit offset of a qubit-level wire."""
        reg = self[wire.reg]
        if wire.idx is None:
            raise ResolutionError(f"wire {wire} addresses a whole register, not a qubit")
        if not 0 <= wire.idx < reg.width:
            raise ResolutionError(f"index {wire.idx} out of range for register {wire.reg!r} of width {reg.width}")
        return self._offsets[wire.reg] + wire.idx

    def check_wire(self, wire: Wire):
        reg = self[wire.reg]
        if wire.idx is not None and not 0 <= wire.idx < reg.width:
            raise ResolutionError(f"index {wire.idx} out of range for register {wire.reg!r} of width {reg.width}")

    def photon_of(self, reg_name: str) -> int:
        return self[reg_name].photon

    def __eq__(self, other):
        return isinstance(other, RegisterTable) and self.registers == other.registers


@dataclass(frozen=True, slots=True)
class Gate:
    """Typed gate record; structural invariants are enforced at construction."""

    kind: str
    controls: tuple[Control, ...] = ()
    targets: tuple[Wire, ...] = ()
    d: int | None = None       # qudit dimension for SUM/DFT
    n: int | None = None       # multiplier exponent for CMulAdd
    poly: int | None = None    # primitive polynomial for CMulAdd (None = default)

    def __post_init__(self):
        if self.kind not in GATE_KINDS:
            raise InvalidGateError(f"unknown gate kind {self.kind!r}")
        wires = [c.wire for c in self.controls] + list(self.targets)
        if len(set(wires)) != len(wires):
            raise InvalidGateError(f"{self.kind} gate reuses a wire: {wires}")
        for c in self.controls:
            if c.pol not in POLARITIES:
                raise InvalidGateError(f"unknown polarity {c.pol!r}")
            if c.pol == ZERO and self.kind != "MCX":
                raise InvalidGateError(f"zero-polarity control is only permitted on MCX, not {self.kind}")
        if self.kind in _SINGLE_QUBIT:
            if self.controls or len(self.targets) != 1:
                raise InvalidGateError(f"{self.kind} takes no controls and exactly one target")
            if self.targets[0].idx is None:
                raise InvalidGateError(f"{self.kind} target must be a single qubit wire")
        elif self.kind == "MCX":
            if not self.controls or len(self.targets) != 1:
                raise InvalidGateError("MCX takes >= 1 control and exactly one target")
            if any(c.wire.idx is None for c in self.controls) or self.targets[0].idx is None:
                raise InvalidGateError("MCX wires must be single qubits")
        elif self.kind in _REGISTER_LEVEL:
            n_ctrl = 1 if self.kind in ("SUM", "CMulAdd") else 0
            if len(self.controls) != n_ctrl or len(self.targets) != 1:
                raise InvalidGateError(f"{self.kind} takes {n_ctrl} control register and one target register")
            for w in [c.wire for c in self.controls] + list(self.targets):
                if w.idx is not None:
                    raise InvalidGateError(f"{self.kind} addresses whole registers (idx must be None)")
            if self.kind in ("SUM", "DFT") and self.d is None:
                raise InvalidGateError(f"{self.kind} requires the qudit dimension d")
            if self.kind == "CMulAdd" and self.n is None:
                raise InvalidGateError("CMulAdd requires the multiplier exponent n")

    @property
    def arity(self) -> int:
        return len(self.controls)


# -- gate constructors -------------------------------------------------

def x(w: Wire) -> Gate:
    return Gate("X", targets=(w,))


def h(w: Wire) -> Gate:
    return Gate("H", targets=(w,))


def t(w: Wire) -> Gate:
    return Gate("T", targets=(w,))


def tdag(w: Wire) -> Gate:
    return Gate("Tdag", targets=(w,))


def os(w: Wire) -> Gate:
    return Gate("OS", targets=(w,))


def cx(control: Wire, target: Wire) -> Gate:
    return Gate("MCX", controls=(Control(control),), targets=(target,))


def toffoli(c1: Wire, c2: Wire, target: Wire) -> Gate:
    return Gate("MCX", controls=(Control(c1), Control(c2)), targets=(target,))


def mcx(controls: Iterable[Control | Wire], target: Wire) -> Gate:
    ctr = tuple(c if isinstance(c, Control) else Control(c) for c in controls)
    return Gate("MCX", controls=ctr, targets=(target,))


def sum_gate(control_reg: str, target_reg: str, d: int) -> Gate:
    return Gate("SUM", controls=(Control(Wire(control_reg)),), targets=(Wire(target_reg),), d=d)


def dft(target_reg: str, d: int) -> Gate:
    return Gate("DFT", targets=(Wire(target_reg),), d=d)


def cmuladd(control_reg: str, target_reg: str, n: int, poly: int | None = None) -> Gate:
    return Gate("CMulAdd", controls=(Control(Wire(control_reg)),), targets=(Wire(target_reg),), n=n, poly=poly)


def gate_class(g: Gate) -> str:
    """Cost-breakdown key of a gate: MCX by control arity, others by kind."""
    if g.kind == "MCX":
        return f"C{g.arity}X"
    return g.kind


# ----------------------------------------------------------------------
# Cost breakdowns
# ----------------------------------------------------------------------

def _canonical_key(key: str) -> str:
    return "C1X" if key == "CX" else key


class CostBreakdown:
    """Exact integer tally keyed by gate class ("C{j}X", "X", "H", "T", "Tdag", "OS", "SUM", "DFT", "CMulAdd").

    "CX" is accepted as an alias for "C1X".  Addition is componentwise.
    """

    def __init__(self, counts: dict[str, int] | None = None):
        self._counts: Counter[str] = Counter()
        if counts:
            for key, value in counts.items():
                if value < 0:
                    raise ValueError(f"negative count for {key}: {value}")
                if value:
                    self._counts[_canonical_key(key)] += value

    def __getitem__(self, key: str) -> int:
        return self._counts.get(_canonical_key(key), 0)

    def __add__(self, other: "CostBreakdown") -> "CostBreakdown":
        merged = Counter(self._counts)
        merged.update(other._counts)
        out = CostBreakdown()
        out._counts = merged
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, CostBreakdown):
            return NotImplemented
        return {k: v for k, v in self._counts.items() if v} == {k: v for k, v in other._counts.items() if v}

    def __bool__(self) -> bool:
        return any(self._counts.values())

    def total(self) -> int:
        return sum(self._counts.values())

    def restrict(self, keys: Iterable[str]) -> "CostBreakdown":
        wanted = {_canonical_key(k) for k in keys}
        return CostBreakdown({k: v for k, v in self._counts.items() if k in wanted})

    def scaled(self, factor: int) -> "CostBreakdown":
        return CostBreakdown({k: v * factor for k, v in self._counts.items()})

    def as_dict(self) -> dict[str, int]:
        return {k: v for k, v in sorted(self._counts.items(), key=_class_sort_key) if v}

    def keys(self):
        return self.as_dict().keys()

    def __repr__(self) -> str:
        return f"CostBreakdown({self.as_dict()})"


def _class_sort_key(item):
    key = item[0]
    if key.startswith("C") and key.endswith("X") and key[1:-1].isdigit():
        return (0, -int(key[1:-1]))
    order = {"X": 1, "H": 2, "T": 3, "Tdag": 4, "SUM": 5, "DFT": 6, "CMulAdd": 7, "OS": 8}
    return (order.get(key, 9), 0)


# ----------------------------------------------------------------------
# Circuits
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class Meta:
    d: int | None = None
    strategy: str = ""
    note: str = ""


@dataclass
class Circuit:
    table: RegisterTable
    gates: list[Gate] = field(default_factory=list)
    meta: Meta = field(default_factory=Meta)
    sealed: bool = False

    def append(self, g: Gate) -> "Circuit":
        if self.sealed:
            raise InvalidGateError("circuit is sealed; no further gates may be appended")
        for w in [c.wire for c in g.controls] + list(g.targets):
            self.table.check_wire(w)
        if g.kind in ("SUM", "CMulAdd"):
            cw = self.table[g.controls[0].wire.reg].width
            tw = self.table[g.targets[0].reg].width
            if cw != tw:
                raise InvalidGateError(
                    f"{g.kind} needs equal-width registers, got {cw} and {tw}")
        self.gates.append(g)
        return self

    def extend(self, gates: Iterable[Gate]) -> "Circuit":
        for g in gates:
            self.append(g)
        return self

    def seal(self) -> "Circuit":
        self.sealed = True
        return self

    def count(self) -> CostBreakdown:
        tally = Counter(gate_class(g) for g in self.gates)
        out = CostBreakdown()
        out._counts = tally
        return out

    def without_gate(self, index: int) -> "Circuit":
        """Copy of the circuit with one gate removed (mutation testing)."""
        if not 0 <= index < len(self.gates):
            raise IndexError(f"gate index {index} out of range (circuit has {len(self.gates)} gates)")
        gates = self.gates[:index] + self.gates[index + 1:]
        return Circuit(self.table, gates, self.meta, sealed=self.sealed)

    def __len__(self) -> int:
        return len(self.gates)


def photon_partition(c: Circuit, g: Gate) -> dict[int, list[Control]]:
    """Group an MCX gate's controls by the photon id of their register."""
    if g.kind != "MCX":
        raise InvalidGateError(f"photon partition is defined for MCX gates, not {g.kind}")
    groups: dict[int, list[Control]] = {}
    for ctrl in g.controls:
        groups.setdefault(c.table.photon_of(ctrl.wire.reg), []).append(ctrl)
    return groups


def normalize_polarities(c: Circuit) -> Circuit:
    """Expand zero-polarity MCX controls into X-conjugation pairs.

    The inserted X gates count under "X"; CX-level figures exclude them.
    """
    out = Circuit(c.table, meta=c.meta)
    for g in c.gates:
        if g.kind == "MCX" and any(ct.pol == ZERO for ct in g.controls):
            flips = [ct.wire for ct in g.controls if ct.pol == ZERO]
            for w in flips:
                out.append(x(w))
            out.append(replace(g, controls=tuple(Control(ct.wire) for ct in g.controls)))
            for w in flips:
                out.append(x(w))
        else:
            out.append(g)
    if c.sealed:
        out.seal()
    return out


# ----------------------------------------------------------------------
# Interchange document (JSON-shaped structured text)
# ----------------------------------------------------------------------

def _wire_doc(w: Wire) -> dict:
    return {"reg": w.reg, "idx": w.idx}


def serialize(c: Circuit) -> str:
    """Interchange document for a sealed circuit; parse() inverts it losslessly."""
    if not c.sealed:
        raise InvalidGateError("only sealed circuits are serialized")
    doc = {
        "registers": [
            {"name": r.name, "width": r.width, "photon": r.photon, "role": r.role}
            for r in c.table.registers
        ],
        "gates": [],
        "meta": {"d": c.meta.d, "strategy": c.meta.strategy, "note": c.meta.note},
    }
    for g in c.gates:
        entry: dict = {"kind": g.kind}
        if g.d is not None:
            entry["d"] = g.d
        if g.n is not None:
            entry["n"] = g.n
        if g.poly is not None:
            entry["poly"] = g.poly
        entry["controls"] = [{"reg": ct.wire.reg, "idx": ct.wire.idx, "pol": ct.pol} for ct in g.controls]
        entry["targets"] = [_wire_doc(w) for w in g.targets]
        doc["gates"].append(entry)
    return json.dumps(doc, indent=1)


def _field(obj: dict, key: str, path: str):
    if key not in obj:
        raise ParseError(f"{path}: missing field {key!r}")
    return obj[key]


def parse(document: str) -> Circuit:
    """Rebuild a circuit from its interchange document.  Errors carry field context."""
    try:
        doc = json.loads(document)
    except json.JSONDecodeError as e:
        raise ParseError(f"line {e.lineno}, column {e.colno}: {e.msg}") from None
    if not isinstance(doc, dict):
        raise ParseError("document root must be an object")

    registers = []
    for i, rd in enumerate(_field(doc, "registers", "document")):
        path = f"registers[{i}]"
        try:
            registers.append(Register(
                name=_field(rd, "name", path),
                width=_field(rd, "width", path),
                photon=_field(rd, "photon", path),
                role=_field(rd, "role", path),
            ))
        except (ValueError, TypeError) as e:
            raise ParseError(f"{path}: {e}") from None
    try:
        table = RegisterTable(registers)
    except ValueError as e:
        raise ParseError(f"registers: {e}") from None

    md = doc.get("meta") or {}
    circuit = Circuit(table, meta=Meta(d=md.get("d"), strategy=md.get("strategy") or "", note=md.get("note") or ""))

    for i, gd in enumerate(_field(doc, "gates", "document")):
        path = f"gates[{i}]"
        kind = _field(gd, "kind", path)
        if kind not in GATE_KINDS:
            raise ParseError(f"{path}: unknown gate kind {kind!r}")
        controls = []
        for j, cd in enumerate(gd.get("controls", [])):
            cpath = f"{path}.controls[{j}]"
            pol = cd.get("pol", POSITIVE)
            if pol not in POLARITIES:
                raise ParseError(f"{cpath}: unknown polarity {pol!r}")
            controls.append(Control(Wire(_field(cd, "reg", cpath), cd.get("idx")), pol))
        targets = []
        for j, td in enumerate(gd.get("targets", [])):
            tpath = f"{path}.targets[{j}]"
            targets.append(Wire(_field(td, "reg", tpath), td.get("idx")))
        try:
            gate = Gate(kind, tuple(controls), tuple(targets),
                        d=gd.get("d"), n=gd.get("n"), poly=gd.get("poly"))
            circuit.append(gate)
        except (InvalidGateError, ResolutionError) as e:
            raise ParseError(f"{path}: {e}") from None
    return circuit.seal()
