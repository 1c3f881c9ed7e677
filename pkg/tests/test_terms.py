from __future__ import annotations

import pytest

from cpbs.terms import (
    Colour,
    Empty,
    Gen,
    Par,
    Seq,
    Trace,
    as_word,
    configurations,
    count_generators,
    count_neg,
    count_pbs,
    count_queries,
    gate_h,
    gate_t,
    gate_v,
    ident,
    identity_of,
    letters_of,
    merge_hv,
    merge_vh,
    neg_hv,
    neg_t,
    neg_vh,
    par,
    pbs4,
    pbs_ht_ht,
    pbs_th_th,
    pbs_tv_vt,
    pbs_vt_tv,
    seq,
    split_hv,
    split_vh,
    swap,
    term_size,
    type_of,
    word_str,
)

T, V, H = Colour.T, Colour.V, Colour.H


def test_word_coercion():
    assert as_word("UVU") == ("U", "V", "U")
    assert as_word("") == ()
    assert as_word("U.phase2.U") == ("U", "phase2", "U")
    assert as_word("U1") == ("U1",)
    assert as_word(("Ua", "Ub")) == ("Ua", "Ub")
    with pytest.raises(ValueError):
        as_word("2U")
    with pytest.raises(ValueError):
        as_word(("ok", "not ok"))


def test_word_str_is_composition_order():
    assert word_str(("U", "V")) == "VU"
    assert word_str(()) == ""
    assert word_str(("U1", "V")) == "V.U1"


def test_generator_signatures():
    assert type_of(pbs4()) == ((T, T), (T, T))
    assert type_of(pbs_tv_vt()) == ((T, V), (V, T))
    assert type_of(pbs_vt_tv()) == ((V, T), (T, V))
    assert type_of(pbs_ht_ht()) == ((H, T), (H, T))
    assert type_of(pbs_th_th()) == ((T, H), (T, H))
    assert type_of(split_vh()) == ((T,), (V, H))
    assert type_of(split_hv()) == ((T,), (H, V))
    assert type_of(merge_vh()) == ((V, H), (T,))
    assert type_of(merge_hv()) == ((H, V), (T,))
    assert type_of(neg_t()) == ((T,), (T,))
    assert type_of(neg_vh()) == ((V,), (H,))
    assert type_of(neg_hv()) == ((H,), (V,))
    assert type_of(gate_t("U")) == ((T,), (T,))
    assert type_of(gate_v("U")) == ((V,), (V,))
    assert type_of(gate_h("U")) == ((H,), (H,))
    assert type_of(swap(V, H)) == ((V, H), (H, V))
    assert type_of(ident(T)) == ((T,), (T,))
    assert type_of(Empty()) == ((), ())


def test_composite_types():
    d = Seq(split_vh(), Par(gate_v("U"), gate_h("V")))
    assert type_of(d) == ((T,), (V, H))
    tr = Trace(T, Seq(pbs4(), pbs4()))
    assert type_of(tr) == ((T,), (T,))


def test_type_errors_name_the_subterm():
    bad = Seq(split_vh(), merge_hv())
    with pytest.raises(TypeError) as e:
        type_of(bad)
    assert "merge_hv" in str(e.value)
    with pytest.raises(TypeError):
        type_of(Trace(V, gate_h("U")))
    with pytest.raises(TypeError):
        type_of(Trace(T, split_vh()))


def test_gen_validation():
    with pytest.raises(ValueError):
        Gen("pbs4", word=("U",))
    with pytest.raises(ValueError):
        Gen("id", colours=(T, V))
    with pytest.raises(ValueError):
        Gen("frobnicate")


def test_configuration_order():
    assert configurations((T,)) == [(V, 0), (H, 0)]
    assert configurations((V, T, H)) == [(V, 0), (V, 1), (H, 1), (H, 2)]
    assert configurations(()) == []


def test_counts():
    d = seq(
        split_vh(),
        par(gate_v("UVU"), gate_h("V")),
        par(gate_v(""), ident(H)),
        par(neg_vh(), ident(H)),
    )
    assert type_of(d) == ((T,), (H, H))
    assert count_queries(d, "U") == 2
    assert count_queries(d, "V") == 2
    assert count_queries(d, "W") == 0
    assert count_pbs(d) == 1
    assert count_neg(d) == 1
    assert count_generators(d) == 5
    assert letters_of(d) == {"U", "V"}
    assert term_size(seq(gate_t("UVW"), neg_t())) == 4


def test_identity_of():
    assert isinstance(identity_of(()), Empty)
    assert type_of(identity_of((T, V))) == ((T, V), (T, V))


def test_operator_sugar():
    d = split_vh() >> (gate_v("U") | gate_h("U"))
    assert isinstance(d, Seq)
    assert type_of(d) == ((T,), (V, H))
