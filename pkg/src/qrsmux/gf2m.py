"""GF(2^m) Reed-Solomon encoder building blocks.

Builds the classical [n, K] code over GF(2^m) with n = 2^m - 1: the dual's
generator polynomial has roots 1, alpha, ..., alpha^(K-1); the parity-check
matrix H stacks its shifts; the generator matrix G is put in systematic
[I | P] form.  The encoder circuit applies DFT gates to the coset qudits and
one multiplier-add gate per nonzero parity entry of G, so it contains no
multi-controlled X gate of any arity >= 2 and quantum multiplexing cannot
reduce its CX count.

Every multiplier-add gate b <- alpha^n * a + b synthesizes to plain CX gates:
one per set entry of the multiplication matrix, giving
sum_p H_w(alpha^(n+p)) CX in total.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import galois
from .circuit import Circuit, Meta, Register, RegisterTable, Wire, cmuladd, cx, dft
from .errors import UnsupportedConfigurationError
from .galois import FieldElement, FieldSpec, hamming_weight, mul_by_alpha_matrix
from .revsim import compile_permutation, _run


# ----------------------------------------------------------------------
# Polynomials over the field (coefficient lists, ascending degree)
# ----------------------------------------------------------------------

def _poly_mul(f: FieldSpec, a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j, bj in enumerate(b):
            if bj == 0:
                continue
            out[i + j] = galois.add_int(f, out[i + j], galois.mul_int(f, ai, bj))
    return out


def _poly_from_roots(f: FieldSpec, root_exponents: list[int]) -> list[int]:
    poly = [1]
    for e in root_exponents:
        poly = _poly_mul(f, poly, [f.alpha_power(e).value, 1])  # (x + alpha^e); char 2
    return poly


def _poly_eval(f: FieldSpec, coeffs: list[int], x: FieldElement) -> FieldElement:
    acc = FieldElement(0, f)
    for c in reversed(coeffs):
        acc = galois.add(galois.mul(acc, x), FieldElement(c, f))
    return acc


# ----------------------------------------------------------------------
# Field matrices
# ----------------------------------------------------------------------

def _mat_inverse(f: FieldSpec, mat: list[list[int]]) -> list[list[int]]:
    """Gauss-Jordan inverse over the field."""
    size = len(mat)
    aug = [list(row) + [1 if i == j else 0 for j in range(size)] for i, row in enumerate(mat)]
    for col in range(size):
        pivot = next((r for r in range(col, size) if aug[r][col]), None)
        if pivot is None:
            raise ValueError("matrix is singular")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = galois.inv_int(f, aug[col][col])
        aug[col] = [galois.mul_int(f, v, inv) for v in aug[col]]
        for r in range(size):
            if r != col and aug[r][col]:
                factor = aug[r][col]
                aug[r] = [galois.add_int(f, a, galois.mul_int(f, factor, b))
                          for a, b in zip(aug[r], aug[col])]
    return [row[size:] for row in aug]


def _matmul_transposed(f: FieldSpec, a: list[list[int]], b: list[list[int]]) -> list[list[int]]:
    """a @ b^T over the field."""
    out = []
    for row in a:
        out_row = []
        for col in b:
            acc = 0
            for x, y in zip(row, col):
                if x and y:
                    acc = galois.add_int(f, acc, galois.mul_int(f, x, y))
            out_row.append(acc)
        out.append(out_row)
    return out


# ----------------------------------------------------------------------
# Code construction
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class RSCodeSpec:
    """[n, K] Reed-Solomon code over GF(2^m) with n = 2^m - 1, plus its dual data."""

    field: FieldSpec
    n: int
    K: int
    gen_poly: tuple[int, ...]        # generator of the code itself, degree n - K, roots alpha^1..alpha^(n-K)
    gen_poly_dual: tuple[int, ...]   # generator of the dual, degree K, roots alpha^0..alpha^(K-1)
    G: tuple[tuple[int, ...], ...]   # K x n systematic generator matrix [I | P]
    H: tuple[tuple[int, ...], ...]   # (n-K) x n parity-check matrix
    systematic: bool = True

    @property
    def parity(self) -> tuple[tuple[int, ...], ...]:
        """The P block of G = [I | P]:  K x (n-K)."""
        return tuple(row[self.K:] for row in self.G)

    def dual_contained(self) -> bool:
        """True when the dual code lies inside the code (H . H^T = 0)."""
        hht = _matmul_transposed(self.field, [list(r) for r in self.H], [list(r) for r in self.H])
        return all(v == 0 for row in hht for v in row)


def build_code(m: int, K: int, poly: int | None = None,
               overrides: dict[int, int] | None = None) -> RSCodeSpec:
    """Construct the [n, K] code and verify G . H^T = 0 exhaustively."""
    f = FieldSpec.binary_extension(m, poly, overrides)
    n = f.order - 1
    if not 1 <= K < n:
        raise ValueError(f"message length K={K} must satisfy 1 <= K < n={n}")

    g_dual = _poly_from_roots(f, list(range(K)))           # degree K
    g_code = _poly_from_roots(f, list(range(1, n - K + 1)))  # degree n - K

    # H rows are the shifts x^j * g_dual, j = 0 .. n-K-1.
    H = []
    for j in range(n - K):
        row = [0] * n
        for deg, coeff in enumerate(g_dual):
            row[j + deg] = coeff
        H.append(row)

    # Systematic G = [I | P] with P = H1^T (H2^T)^-1, where H = [H1 | H2].
    h1 = [row[:K] for row in H]
    h2 = [row[K:] for row in H]
    h2_inv = _mat_inverse(f, h2)
    h1_t = [[h1[r][c] for r in range(n - K)] for c in range(K)]
    P = _matmul_transposed(f, h1_t, h2_inv)  # H1^T @ (H2^T)^-1
    G = [[1 if i == j else 0 for j in range(K)] + P[i] for i in range(K)]

    ght = _matmul_transposed(f, G, H)
    if any(v != 0 for row in ght for v in row):
        raise AssertionError("construction bug: G . H^T != 0")

    return RSCodeSpec(
        field=f, n=n, K=K,
        gen_poly=tuple(g_code), gen_poly_dual=tuple(g_dual),
        G=tuple(tuple(r) for r in G), H=tuple(tuple(r) for r in H),
    )


# ----------------------------------------------------------------------
# Gate synthesis
# ----------------------------------------------------------------------

def cmuladd_cx_formula(f: FieldSpec, n: int) -> int:
    """Closed-form CX count of the multiplier-add gate: sum_p H_w(alpha^(n+p))."""
    return sum(hamming_weight(f.alpha_power(n + p).value, f.m) for p in range(f.m))


def synth_cmuladd(f: FieldSpec, n: int) -> Circuit:
    """CX-only circuit on registers a, b realizing b <- alpha^n * a + b."""
    m = f.m
    table = RegisterTable([
        Register("a", m, 0, "gf-message"),
        Register("b", m, 1, "gf-code"),
    ])
    mat = mul_by_alpha_matrix(f, n)
    c = Circuit(table, meta=Meta(d=f.order, note=f"b <- alpha^{n} * a + b over GF({f.order})"))
    for p in range(m):
        for j in range(m):
            if mat[j, p]:
                c.append(cx(Wire("a", p), Wire("b", j)))
    return c.seal()


def find_cmuladd_counterexample(c: Circuit, f: FieldSpec, n: int) -> tuple[int, int] | None:
    """First basis pair (a, b) on which the circuit disagrees with b <- alpha^n * a + b."""
    compiled = compile_permutation(c)
    a_reg, b_reg = c.table.registers[0], c.table.registers[1]
    a_off = c.table._offsets[a_reg.name]
    b_off = c.table._offsets[b_reg.name]
    m = f.m
    mask = (1 << m) - 1
    for a in range(1 << m):
        expect_shift = galois.mul(f.alpha_power(n), FieldElement(a, f)).value if a else 0
        for b in range(1 << m):
            out = _run(compiled, (a << a_off) | (b << b_off))
            got_a = (out >> a_off) & mask
            got_b = (out >> b_off) & mask
            if got_a != a or got_b != (expect_shift ^ b):
                return (a, b)
    return None


def verify_cmuladd(c: Circuit, f: FieldSpec, n: int) -> bool:
    """Exhaustive check over all 2^(2m) basis pairs that (a, b) -> (a, alpha^n * a + b)."""
    return find_cmuladd_counterexample(c, f, n) is None


# ----------------------------------------------------------------------
# Encoder emission
# ----------------------------------------------------------------------

def encoder_registers(spec: RSCodeSpec) -> RegisterTable:
    m = spec.field.m
    regs = [Register(f"msg{i}", m, i, "gf-message") for i in range(spec.K)]
    regs += [Register(f"par{j}", m, spec.K + j, "gf-code") for j in range(spec.n - spec.K)]
    return RegisterTable(regs)


def synth_encoder_gf2m(spec: RSCodeSpec) -> Circuit:
    """Encoder circuit: DFT on the coset qudits, then one multiplier-add per
    nonzero parity entry of G, from message qudit i onto parity qudit j.

    DFT gates stay opaque at qudit level and never enter CX totals.  Requires
    the dual code to lie inside the code (K >= (n+1)/2), which also makes the
    logical count 2K - n positive.
    """
    n, K, f = spec.n, spec.K, spec.field
    if 2 * K - n < 1 or not spec.dual_contained():
        raise UnsupportedConfigurationError(
            f"[{n},{K}] over GF({f.order}) does not contain its dual; encoder needs K >= (n+1)/2")
    n_logical = 2 * K - n
    default = galois.DEFAULT_PRIMITIVE_POLYS.get(f.m)
    gate_poly = None if f.poly == default else f.poly

    label = f"[[{n},{n_logical},>={n - K + 1}]]_{f.order} encoder"
    if (f.m, K) != (2, 2):
        label += "; generalized construction"
    c = Circuit(encoder_registers(spec), meta=Meta(d=f.order, note=label))
    for i in range(n_logical, K):
        c.append(dft(f"msg{i}", f.order))
    for i in range(K):
        for j in range(n - K):
            entry = spec.parity[i][j]
            if entry:
                exponent = f.exponent_of(FieldElement(entry, f))
                c.append(cmuladd(f"msg{i}", f"par{j}", exponent, poly=gate_poly))
    return c.seal()


def expand_cmuladds(c: Circuit) -> tuple[Circuit, int]:
    """Qubit-level classical part of an encoder circuit.

    Replaces every multiplier-add gate by its CX expansion on the same
    registers and drops DFT gates; returns the expanded circuit and the
    number of DFT gates dropped.
    """
    gates = []
    n_dft = 0
    pairs_cache: dict[tuple[int | None, int, int], list[tuple[int, int]]] = {}
    for g in c.gates:
        if g.kind == "DFT":
            n_dft += 1
        elif g.kind == "CMulAdd":
            m = c.table[g.targets[0].reg].width
            key = (g.poly, m, g.n)
            pairs = pairs_cache.get(key)
            if pairs is None:
                mat = mul_by_alpha_matrix(FieldSpec.binary_extension(m, g.poly), g.n)
                pairs = [(p, j) for p in range(m) for j in range(m) if mat[j, p]]
                pairs_cache[key] = pairs
            src, dst = g.controls[0].wire.reg, g.targets[0].reg
            gates.extend(cx(Wire(src, p), Wire(dst, j)) for p, j in pairs)
        else:
            gates.append(g)
    out = Circuit(c.table, gates, meta=c.meta, sealed=c.sealed)
    return out, n_dft


def encoder_classical_cx_cost(spec: RSCodeSpec) -> int:
    """CX cost of the encoder's classical part, from the per-gate closed form."""
    f = spec.field
    total = 0
    for i in range(spec.K):
        for j in range(spec.n - spec.K):
            entry = spec.parity[i][j]
            if entry:
                total += cmuladd_cx_formula(f, f.exponent_of(FieldElement(entry, f)))
    return total
