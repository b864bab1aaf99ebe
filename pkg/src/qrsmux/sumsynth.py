"""Qubit-level synthesis of the d-dimensional SUM gate.

The gate splits into a ripple-carry adder computing B <- (A+B) mod 2^k with
the overflow in the top carry qubit, followed by a modulo conversion that
flags every adder outcome i in [d, 2(d-1)] on a check-if qubit and then
corrects the B register from i mod 2^k to i mod d.

Layout choices that pin the exact gate tally:

* RCA stage i >= 1 computes the next carry as a 3-Toffoli majority
  (a_i b_i, a_i c_{i-1}, b_i c_{i-1} into carry_i) before updating b_i with
  two CX; stage 0 is a half adder.  Total: 3k-2 Toffolis, 2k-1 CX.
* Flag gates read the B register pattern with zero-polarity controls where a
  pattern bit is 0.  Outcomes i >= 2^k additionally control on the top carry
  (arity k+1).  When 2(d-1) = 2^k, the outcome 2^k needs no flag gate at
  all: the top carry is its flag.
* Corrections are CX from the flag qubit onto each B bit set in
  (i mod 2^k) XOR (i mod d).  The mask is k bits wide; corrections never
  touch the carry, and no ancilla is uncomputed.  Cascading SUM gates
  therefore needs fresh (or reset) carry/check-if ancillas, exactly as the
  per-gate cost model assumes.
"""

from __future__ import annotations

from dataclasses import dataclass

from .circuit import (
    CostBreakdown, Circuit, Control, Meta, Register, RegisterTable, Wire,
    POSITIVE, ZERO, cx, mcx, toffoli,
)
from .errors import InvalidDimensionError
from .galois import hamming_distance, is_prime

DEFAULT_K_MAX = 10

CASE_A = "A"   # 2(d-1) <= 2^k: every flagged outcome fits in k bits
CASE_B = "B"   # 2(d-1) >  2^k: outcomes >= 2^k also control on the top carry

DIRTY_ANCILLA_NOTE = (
    "carry/check-if ancillas are not uncomputed; cascading SUM gates requires fresh or reset ancillas"
)


@dataclass(frozen=True)
class PhotonMap:
    """Photon (multiplexing group) assignment for the SUM registers."""

    data_a: int = 0
    data_b: int = 1
    ancilla: int = 2


@dataclass(frozen=True)
class FlagSpec:
    """One adder outcome needing modulo conversion."""

    value: int                 # outcome i in [d, 2(d-1)]
    pattern: int               # i mod 2^k over k bits, read by the flag gate
    needs_carry_control: bool  # i >= 2^k
    correction_mask: int       # pattern XOR (i mod d)
    uses_carry_substitute: bool  # top carry doubles as the flag qubit (no flag gate)
    checkif_index: int | None  # index into the check-if register, None when substituted


@dataclass(frozen=True)
class SumPlan:
    d: int
    k: int
    case: str
    n_checkif: int
    n_aux: int
    flags: tuple[FlagSpec, ...]

    @property
    def carry_substituted(self) -> bool:
        return any(f.uses_carry_substitute for f in self.flags)


def compute_k(d: int) -> int:
    """The unique k with 2^(k-1) < d <= 2^k."""
    k = 1
    while (1 << k) < d:
        k += 1
    return k


def plan(d: int, k_max: int = DEFAULT_K_MAX) -> SumPlan:
    """Register and flag plan for the dimension-d SUM gate."""
    if not is_prime(d):
        raise InvalidDimensionError(f"d={d} is not prime")
    k = compute_k(d)
    if k > k_max:
        raise InvalidDimensionError(f"d={d} needs k={k} qubits, above the limit k_max={k_max}")
    top = 1 << k
    case = CASE_A if 2 * (d - 1) <= top else CASE_B
    flags = []
    checkif_index = 0
    for i in range(d, 2 * (d - 1) + 1):
        substituted = i == top and 2 * (d - 1) == top
        flags.append(FlagSpec(
            value=i,
            pattern=i % top,
            needs_carry_control=i >= top,
            correction_mask=(i % top) ^ (i % d),
            uses_carry_substitute=substituted,
            checkif_index=None if substituted else checkif_index,
        ))
        if not substituted:
            checkif_index += 1
    n_checkif = checkif_index
    return SumPlan(d=d, k=k, case=case, n_checkif=n_checkif, n_aux=k + n_checkif, flags=tuple(flags))


def sum_registers(p: SumPlan, photons: PhotonMap = PhotonMap()) -> RegisterTable:
    regs = [
        Register("A", p.k, photons.data_a, "data-A"),
        Register("B", p.k, photons.data_b, "data-B"),
        Register("carry", p.k, photons.ancilla, "carry"),
    ]
    if p.n_checkif:
        regs.append(Register("checkif", p.n_checkif, photons.ancilla, "check-if"))
    return RegisterTable(regs)


def _rca_gates(k: int):
    """Ripple-carry adder gates: B <- (A+B) mod 2^k, overflow in carry[k-1]."""
    a = [Wire("A", i) for i in range(k)]
    b = [Wire("B", i) for i in range(k)]
    c = [Wire("carry", i) for i in range(k)]
    yield toffoli(a[0], b[0], c[0])
    yield cx(a[0], b[0])
    for i in range(1, k):
        yield toffoli(a[i], b[i], c[i])
        yield toffoli(a[i], c[i - 1], c[i])
        yield toffoli(b[i], c[i - 1], c[i])
        yield cx(a[i], b[i])
        yield cx(c[i - 1], b[i])


def _mod_gates(p: SumPlan):
    """Flag phase then correction phase for the modulo conversion."""
    b = [Wire("B", i) for i in range(p.k)]
    top_carry = Wire("carry", p.k - 1)
    # flag phase
    for f in p.flags:
        if f.uses_carry_substitute:
            continue
        controls = [Control(b[j], POSITIVE if (f.pattern >> j) & 1 else ZERO) for j in range(p.k)]
        if f.needs_carry_control:
            controls.append(Control(top_carry))
        yield mcx(controls, Wire("checkif", f.checkif_index))
    # correction phase
    for f in p.flags:
        flag_wire = top_carry if f.uses_carry_substitute else Wire("checkif", f.checkif_index)
        for j in range(p.k):
            if (f.correction_mask >> j) & 1:
                yield cx(flag_wire, b[j])


def synth_rca(k: int, photons: PhotonMap = PhotonMap()) -> Circuit:
    """Standalone ripple-carry adder circuit over A(k), B(k), carry(k)."""
    if k < 1:
        raise InvalidDimensionError(f"k={k} must be >= 1")
    table = RegisterTable([
        Register("A", k, photons.data_a, "data-A"),
        Register("B", k, photons.data_b, "data-B"),
        Register("carry", k, photons.ancilla, "carry"),
    ])
    return Circuit(table, meta=Meta(note=f"{k}-bit ripple-carry adder")).extend(_rca_gates(k)).seal()


def synth_mod(p: SumPlan, photons: PhotonMap = PhotonMap()) -> Circuit:
    """Standalone modulo-conversion circuit (expects the adder to have run)."""
    table = sum_registers(p, photons)
    note = f"modulo conversion for d={p.d} (case {p.case}); {DIRTY_ANCILLA_NOTE}"
    return Circuit(table, meta=Meta(d=p.d, note=note)).extend(_mod_gates(p)).seal()


def synth_sum(d: int, photons: PhotonMap = PhotonMap(), k_max: int = DEFAULT_K_MAX) -> Circuit:
    """Full SUM gate: RCA then modulo conversion on a shared register table."""
    p = plan(d, k_max)
    table = sum_registers(p, photons)
    note = f"SUM gate, case {p.case}, k={p.k}; {DIRTY_ANCILLA_NOTE}"
    circuit = Circuit(table, meta=Meta(d=d, note=note))
    circuit.extend(_rca_gates(p.k))
    circuit.extend(_mod_gates(p))
    return circuit.seal()


def correction_cx_total(d: int, k: int | None = None) -> int:
    """Sum over i in [d, 2(d-1)] of the Hamming distance between i mod 2^k and i mod d.

    Both arguments are truncated to k bits, so the top carry never receives a
    correction.
    """
    if k is None:
        k = compute_k(d)
    top = 1 << k
    return sum(hamming_distance(i % top, i % d, k) for i in range(d, 2 * (d - 1) + 1))


def predicted_counts(d: int, k_max: int = DEFAULT_K_MAX) -> CostBreakdown:
    """Closed-form gate tally of synth_sum(d), computed without synthesizing.

    RCA: 3k-2 Toffolis and 2k-1 CX.  Modulo flags: d-1 gates of arity k
    (minus the carry-substituted one when 2(d-1) = 2^k) when every outcome
    fits in k bits, else 2^k - d gates of arity k and 2d - 2^k - 1 gates of
    arity k+1.  Corrections: one CX per set correction-mask bit.
    """
    if not is_prime(d):
        raise InvalidDimensionError(f"d={d} is not prime")
    k = compute_k(d)
    if k > k_max:
        raise InvalidDimensionError(f"d={d} needs k={k} qubits, above the limit k_max={k_max}")
    top = 1 << k
    counts = {"C2X": 3 * k - 2, "C1X": (2 * k - 1) + correction_cx_total(d, k)}
    if 2 * (d - 1) <= top:
        n_flags = (d - 1) - (1 if 2 * (d - 1) == top else 0)
        counts[f"C{k}X"] = counts.get(f"C{k}X", 0) + n_flags
    else:
        counts[f"C{k + 1}X"] = counts.get(f"C{k + 1}X", 0) + (2 * d - top - 1)
        counts[f"C{k}X"] = counts.get(f"C{k}X", 0) + (top - d)
    return CostBreakdown(counts)
