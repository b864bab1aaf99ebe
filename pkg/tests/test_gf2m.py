import pytest

from qrsmux import galois, gf2m, lowering
from qrsmux.errors import UnsupportedConfigurationError
from qrsmux.galois import FieldSpec
from qrsmux.gf2m import (
    build_code, cmuladd_cx_formula, encoder_classical_cx_cost, expand_cmuladds,
    find_cmuladd_counterexample, synth_cmuladd, synth_encoder_gf2m, verify_cmuladd,
)


def gf4():
    return FieldSpec.binary_extension(2)


# ---------------------------------------------------------------
# Code construction
# ---------------------------------------------------------------

def test_gf4_code_matches_worked_example():
    spec = build_code(2, 2)
    alpha = spec.field.alpha_power(1).value
    alpha2 = spec.field.alpha_power(2).value
    # g_dual(x) = (x - 1)(x - alpha) = x^2 + (1+alpha)x + alpha, ascending coefficients
    assert spec.gen_poly_dual == (alpha, 1 ^ alpha, 1) == (2, 3, 1)
    assert spec.G == ((1, 0, alpha), (0, 1, alpha2))
    assert spec.H == ((alpha, alpha2, 1),)


def test_code_polynomial_degrees():
    for m, K in [(2, 2), (3, 3), (3, 4), (4, 6), (4, 11)]:
        spec = build_code(m, K)
        assert len(spec.gen_poly) - 1 == spec.n - K
        assert len(spec.gen_poly_dual) - 1 == K


def test_g_h_orthogonal_and_unit_messages():
    for m, K in [(2, 2), (3, 2), (3, 4), (3, 5), (4, 8), (5, 16)]:
        spec = build_code(m, K)
        f = spec.field
        for i in range(K):
            codeword = spec.G[i]  # unit message i encoded through G
            for h_row in spec.H:
                acc = 0
                for c, h in zip(codeword, h_row):
                    acc = galois.add_int(f, acc, galois.mul_int(f, c, h))
                assert acc == 0


def test_g_rows_vanish_on_code_roots():
    for m, K in [(2, 2), (3, 4), (4, 8)]:
        spec = build_code(m, K)
        f = spec.field
        for row in spec.G:
            for e in range(1, spec.n - K + 1):
                acc = gf2m._poly_eval(f, list(row), f.alpha_power(e))
                assert acc.value == 0


def test_build_code_k_range():
    with pytest.raises(ValueError):
        build_code(2, 3)
    with pytest.raises(ValueError):
        build_code(3, 0)


def test_build_code_poly_override():
    spec = build_code(3, 4, poly=0b1101)
    assert spec.field.poly == 0b1101
    assert spec.dual_contained()


# ---------------------------------------------------------------
# Multiplier-add gates
# ---------------------------------------------------------------

def test_gf4_gate_cx_counts():
    f = gf4()
    for n, want in [(0, 2), (1, 3), (2, 3)]:
        c = synth_cmuladd(f, n)
        assert c.count()["C1X"] == want == cmuladd_cx_formula(f, n)
        assert verify_cmuladd(c, f, n)


def test_gf8_c1_exhaustive():
    f = FieldSpec.binary_extension(3)
    assert verify_cmuladd(synth_cmuladd(f, 0), f, 0)  # all 64 basis pairs


def test_mutated_cmuladd_fails_with_witness():
    f = gf4()
    c = synth_cmuladd(f, 1)
    broken = c.without_gate(0)
    witness = find_cmuladd_counterexample(broken, f, 1)
    assert witness is not None
    assert not verify_cmuladd(broken, f, 1)
    a, b = witness
    assert 0 <= a < 4 and 0 <= b < 4


def test_cx_count_formula_all_fields():
    for m in range(1, 9):
        f = FieldSpec.binary_extension(m)
        for n in range(max(1, f.order - 1)):
            assert synth_cmuladd(f, n).count()["C1X"] == cmuladd_cx_formula(f, n), (m, n)


def test_cmuladd_semantics_m_up_to_5():
    for m in range(1, 6):
        f = FieldSpec.binary_extension(m)
        for n in range(max(1, f.order - 1)):
            assert verify_cmuladd(synth_cmuladd(f, n), f, n), (m, n)


# ---------------------------------------------------------------
# Encoder
# ---------------------------------------------------------------

def test_encoder_gf4_gate_list():
    spec = build_code(2, 2)
    enc = synth_encoder_gf2m(spec)
    kinds = [(g.kind, g.n) for g in enc.gates]
    assert kinds == [("DFT", None), ("CMulAdd", 1), ("CMulAdd", 2)]
    # gates drawn from {C1, Calpha, Calpha^2} only
    assert {g.n for g in enc.gates if g.kind == "CMulAdd"} <= {0, 1, 2}
    assert enc.gates[1].controls[0].wire.reg == "msg0"
    assert enc.gates[1].targets[0].reg == "par0"


def test_encoder_has_no_multi_controlled_gates():
    for m, K in [(2, 2), (3, 4), (4, 8)]:
        enc = synth_encoder_gf2m(build_code(m, K))
        assert all(g.kind != "MCX" for g in enc.gates)
        expanded, _ = expand_cmuladds(enc)
        assert all(g.arity == 1 for g in expanded.gates if g.kind == "MCX")


def test_encoder_classical_cost_matches_recount():
    for m, K in [(2, 2), (3, 4), (3, 5), (4, 8)]:
        spec = build_code(m, K)
        expanded, n_dft = expand_cmuladds(synth_encoder_gf2m(spec))
        assert expanded.count()["C1X"] == encoder_classical_cx_cost(spec)
        assert n_dft == spec.n - spec.K


def test_encoder_multiplexing_gives_no_advantage():
    for m, K in [(2, 2), (3, 4), (4, 8), (5, 16)]:
        expanded, _ = expand_cmuladds(synth_encoder_gf2m(build_code(m, K)))
        gen = lowering.lower_circuit(expanded, lowering.general()).cx_total
        mux = lowering.lower_circuit(expanded, lowering.multiplexed()).cx_total
        assert gen == mux


def test_encoder_rejects_codes_without_dual_containment():
    with pytest.raises(UnsupportedConfigurationError):
        synth_encoder_gf2m(build_code(3, 2))
    with pytest.raises(UnsupportedConfigurationError):
        synth_encoder_gf2m(build_code(4, 7))


def test_encoder_metadata_labels_generalized_cases():
    assert "generalized" not in synth_encoder_gf2m(build_code(2, 2)).meta.note
    assert "generalized" in synth_encoder_gf2m(build_code(3, 4)).meta.note


def test_encoder_round_trips_through_interchange():
    from qrsmux.circuit import parse, serialize
    enc = synth_encoder_gf2m(build_code(3, 4))
    back = parse(serialize(enc))
    assert back.gates == enc.gates
    assert back.count() == enc.count()
