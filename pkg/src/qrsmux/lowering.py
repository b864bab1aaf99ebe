"""Rewrite multi-controlled X gates into the target gate set under three strategies.

* general: arity j >= 3 becomes 4(j-2) Toffolis, each Toffoli costing
  {6 CX, 2 H, 3 Tdag, 5 T}; arity 2 is one Toffoli; arity 1 is a CX.
  This is a pure cost model (no work-qubit bookkeeping): the explicit
  construction used for semantic checks lives in explicit_general_circuit.
* ralph: arity j costs 2j-1 two-qubit gates plus one j-dimensional qudit
  ancilla.  The two-qubit gates are tallied 1:1 as CX equivalents; the
  companion single-qudit helper gates are counted as free, so the totals
  are a lower bound (a note to that effect is attached to every report).
* multiplexed: controls sharing a photon collapse behind optical switches.
  All j controls on one photon -> one CX plus os-cost-per-control * j
  switches.  j-1 controls on one photon plus one elsewhere -> one Toffoli
  tally plus switches for the collapsed group.  A two-photon split with one
  control on each (the adder Toffolis) is not collapsible and falls back to
  the general Toffoli tally; three or more photons fall back entirely.

OS counts live in their own column and are never mixed into CX totals.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import circuit as ir
from .circuit import CostBreakdown, Circuit, Control, Gate, photon_partition
from .errors import LoweringError

GENERAL = "general"
RALPH = "ralph"
MULTIPLEXED = "multiplexed"
STRATEGY_NAMES = (GENERAL, RALPH, MULTIPLEXED)

# Per-Toffoli tally in the target gate set.
TOFFOLI_TALLY = {"C1X": 6, "H": 2, "Tdag": 3, "T": 5}

RALPH_NOTE = (
    "two-qubit totals counted 1:1 against CX; companion single-qudit gates are treated as free,"
    " so these totals are a lower bound"
)


@dataclass(frozen=True)
class Strategy:
    name: str
    os_cost_per_control: int = 2
    collapse_inner_c2x: bool = False  # non-default variant; excluded from comparison reports

    def __post_init__(self):
        if self.name not in STRATEGY_NAMES:
            raise ValueError(f"unknown strategy {self.name!r}")
        if self.os_cost_per_control < 1:
            raise ValueError("os-cost-per-control must be >= 1")


def general() -> Strategy:
    return Strategy(GENERAL)


def ralph() -> Strategy:
    return Strategy(RALPH)


def multiplexed(os_cost_per_control: int = 2, collapse_inner_c2x: bool = False) -> Strategy:
    return Strategy(MULTIPLEXED, os_cost_per_control, collapse_inner_c2x)


@dataclass(frozen=True)
class GadgetDescriptor:
    """Optical-switch gadget realizing a collapsed multi-controlled gate.

    The switch stages isolate the unique time-bin component on which every
    collapsed control matches its polarity, apply the inner gate to that
    component, and restore the single spatial mode.
    """

    arity: int
    routed_photon: int
    stages_in: int
    stages_out: int
    inner: str  # "CX" | "C2X"
    os_count: int
    collapsed: tuple[Control, ...] = ()
    residual: tuple[Control, ...] = ()

    def render(self) -> str:
        lines = [
            f"C{self.arity}X gadget (controls multiplexed on photon {self.routed_photon}):",
            f"  split: {self.stages_in} OS stage(s) isolate the satisfying time-bin component",
            f"  inner: {self.inner} onto the target",
        ]
        if self.residual:
            lines.append(f"  extra control(s) outside photon {self.routed_photon}: {len(self.residual)}")
        lines.append(f"  merge: {self.stages_out} OS stage(s) restore one spatial mode")
        lines.append(f"  OS total: {self.os_count}")
        return "\n".join(lines)


def _require_mcx(g: Gate):
    if g.kind != "MCX":
        raise LoweringError(f"per-gate lowering applies to MCX gates, not {g.kind}")


def lower_general(g: Gate) -> CostBreakdown:
    """Expanded CX/H/T/Tdag tally of one MCX gate; arity is the raw control count."""
    _require_mcx(g)
    j = g.arity
    if j == 1:
        return CostBreakdown({"C1X": 1})
    n_toffoli = 1 if j == 2 else 4 * (j - 2)
    return CostBreakdown({key: n_toffoli * v for key, v in TOFFOLI_TALLY.items()})


def lower_ralph(g: Gate) -> tuple[CostBreakdown, int | None]:
    """Two-qubit-gate tally (as CX equivalents) and the qudit-ancilla dimension."""
    _require_mcx(g)
    j = g.arity
    if j == 1:
        return CostBreakdown({"C1X": 1}), None
    return CostBreakdown({"C1X": 2 * j - 1}), j


def lower_multiplexed(
    g: Gate,
    photons: dict[int, list[Control]],
    strategy: Strategy | None = None,
) -> tuple[GadgetDescriptor | None, CostBreakdown, bool]:
    """Collapse an MCX per its photon partition.

    Returns (gadget, tally, fell_back).  Uncollapsible patterns fall back to
    lower_general; that is never an error.
    """
    _require_mcx(g)
    if strategy is None:
        strategy = multiplexed()
    os_cost = strategy.os_cost_per_control
    j = g.arity
    groups = sorted(photons.items(), key=lambda kv: (-len(kv[1]), kv[0]))

    if len(groups) == 1:
        photon, controls = groups[0]
        gadget = GadgetDescriptor(
            arity=j, routed_photon=photon, stages_in=j, stages_out=j,
            inner="CX", os_count=os_cost * j, collapsed=tuple(controls),
        )
        return gadget, CostBreakdown({"C1X": 1, "OS": gadget.os_count}), False

    if len(groups) == 2 and len(groups[0][1]) == j - 1 and j >= 3:
        photon, collapsed = groups[0]
        residual = tuple(groups[1][1])
        if strategy.collapse_inner_c2x:
            gadget = GadgetDescriptor(
                arity=j, routed_photon=photon, stages_in=j, stages_out=j,
                inner="CX", os_count=os_cost * j, collapsed=tuple(collapsed), residual=residual,
            )
            return gadget, CostBreakdown({"C1X": 1, "OS": gadget.os_count}), False
        gadget = GadgetDescriptor(
            arity=j, routed_photon=photon, stages_in=j - 1, stages_out=j - 1,
            inner="C2X", os_count=os_cost * (j - 1), collapsed=tuple(collapsed), residual=residual,
        )
        tally = CostBreakdown(TOFFOLI_TALLY) + CostBreakdown({"OS": gadget.os_count})
        return gadget, tally, False

    return None, lower_general(g), True


@dataclass(slots=True)
class LoweredGate:
    index: int
    kind: str
    arity: int
    photons: str
    strategy: str
    cx: int
    h: int
    t: int
    tdag: int
    os: int
    fallback: bool
    gadget: GadgetDescriptor | None = None


@dataclass
class LoweringReport:
    strategy: Strategy
    rows: list[LoweredGate] = field(default_factory=list)
    total: CostBreakdown = field(default_factory=CostBreakdown)
    gadgets: list[tuple[int, GadgetDescriptor]] = field(default_factory=list)
    qudit_ancillas: list[tuple[int, int]] = field(default_factory=list)  # (gate index, dimension)
    notes: list[str] = field(default_factory=list)

    @property
    def cx_total(self) -> int:
        return self.total["C1X"]

    @property
    def os_total(self) -> int:
        return self.total["OS"]


_PASSTHROUGH = ("X", "H", "T", "Tdag")


def lower_circuit(c: Circuit, strategy: Strategy) -> LoweringReport:
    """Apply the per-gate lowering componentwise over a sealed circuit."""
    report = LoweringReport(strategy=strategy)
    acc = {"C1X": 0, "X": 0, "H": 0, "T": 0, "Tdag": 0, "OS": 0}
    for i, g in enumerate(c.gates):
        if g.kind in _PASSTHROUGH:
            tally = CostBreakdown({g.kind: 1})
            row = _row(i, g, "-", strategy.name, tally, fallback=False)
            acc[g.kind] += 1
        elif g.kind == "MCX" and g.arity == 1:
            # Plain CX: every strategy emits it unchanged (the multiplexed
            # route adds the degenerate one-control switch pair).
            photon = c.table.photon_of(g.controls[0].wire.reg)
            os_cost = strategy.os_cost_per_control if strategy.name == MULTIPLEXED else 0
            row = LoweredGate(index=i, kind="MCX", arity=1, photons=f"{photon}:1",
                              strategy=strategy.name, cx=1, h=0, t=0, tdag=0,
                              os=os_cost, fallback=False)
            acc["C1X"] += 1
            acc["OS"] += os_cost
        elif g.kind == "MCX":
            partition = photon_partition(c, g)
            photons_label = "+".join(f"{p}:{len(ctrls)}" for p, ctrls in sorted(partition.items()))
            if strategy.name == GENERAL:
                tally, gadget, fallback = lower_general(g), None, False
            elif strategy.name == RALPH:
                tally, dim = lower_ralph(g)
                gadget, fallback = None, False
                if dim is not None:
                    report.qudit_ancillas.append((i, dim))
                if RALPH_NOTE not in report.notes:
                    report.notes.append(RALPH_NOTE)
            else:
                gadget, tally, fallback = lower_multiplexed(g, partition, strategy)
                if gadget is not None:
                    report.gadgets.append((i, gadget))
                elif len(partition) >= 3:
                    report.notes.append(
                        f"gate {i}: controls span {len(partition)} photons; fell back to the general tally")
            row = _row(i, g, photons_label, strategy.name, tally, fallback, gadget)
            acc["C1X"] += row.cx
            acc["H"] += row.h
            acc["T"] += row.t
            acc["Tdag"] += row.tdag
            acc["OS"] += row.os
        else:
            raise LoweringError(f"gate {i} ({g.kind}) must be expanded before lowering")
        report.rows.append(row)
    report.total = CostBreakdown(acc)
    return report


def _row(i, g, photons_label, strategy_name, tally, fallback, gadget=None) -> LoweredGate:
    return LoweredGate(
        index=i, kind=g.kind, arity=g.arity, photons=photons_label, strategy=strategy_name,
        cx=tally["C1X"], h=tally["H"], t=tally["T"], tdag=tally["Tdag"], os=tally["OS"],
        fallback=fallback, gadget=gadget,
    )


REPORT_COLUMNS = ("gate-index", "kind", "arity", "photons", "strategy", "cx", "h", "t", "tdag", "os", "fallback-flag")


def report_rows(report: LoweringReport) -> list[list]:
    """Rows for the lowering report CSV, in REPORT_COLUMNS order."""
    return [
        [r.index, r.kind, r.arity, r.photons, r.strategy, r.cx, r.h, r.t, r.tdag, r.os, int(r.fallback)]
        for r in report.rows
    ]


def emit_gadget(k: int, os_cost_per_control: int = 2) -> GadgetDescriptor:
    """Descriptor of the switch gadget for a C_kX whose k controls share photon 0."""
    if k < 1:
        raise ValueError(f"gadget arity must be >= 1, got {k}")
    return GadgetDescriptor(
        arity=k, routed_photon=0, stages_in=k, stages_out=k,
        inner="CX", os_count=os_cost_per_control * k,
    )


# ----------------------------------------------------------------------
# Explicit construction used by the semantic-preservation checks
# ----------------------------------------------------------------------

def _toffoli_seq(c1, c2, tg):
    """Standard CX/H/T/Tdag realization of one Toffoli (exact, including phases)."""
    return [
        ir.h(tg), ir.cx(c2, tg), ir.tdag(tg), ir.cx(c1, tg), ir.t(tg),
        ir.cx(c2, tg), ir.tdag(tg), ir.cx(c1, tg), ir.t(c2), ir.t(tg),
        ir.h(tg), ir.cx(c1, c2), ir.t(c1), ir.tdag(c2), ir.cx(c1, c2),
    ]


def explicit_general_circuit(arity: int) -> Circuit:
    """CX/H/T/Tdag circuit realizing a positive-control MCX of arity <= 4.

    Arities 3 and 4 use one work qubit (restored to 0); arity 4 additionally
    borrows a control qubit, which is also restored.
    """
    if not 1 <= arity <= 4:
        raise ValueError("explicit construction covers arities 1..4")
    regs = [ir.Register("ctrl", arity, 0, "work"), ir.Register("tgt", 1, 1, "work")]
    if arity >= 3:
        regs.append(ir.Register("work", 1, 2, "work"))
    table = ir.RegisterTable(regs)
    c = [ir.Wire("ctrl", i) for i in range(arity)]
    tg = ir.Wire("tgt", 0)
    out = Circuit(table, meta=ir.Meta(note=f"explicit C{arity}X"))
    if arity == 1:
        out.append(ir.cx(c[0], tg))
    elif arity == 2:
        out.extend(_toffoli_seq(c[0], c[1], tg))
    else:
        w = ir.Wire("work", 0)
        if arity == 3:
            toffolis = [(c[0], c[1], w), (w, c[2], tg), (c[0], c[1], w)]
        else:
            toffolis = [
                (c[0], c[1], w),
                (c[0], c[3], tg), (w, c[2], c[0]), (c[0], c[3], tg), (w, c[2], c[0]),
                (c[0], c[1], w),
            ]
        for a, b, d in toffolis:
            out.extend(_toffoli_seq(a, b, d))
    return out.seal()
