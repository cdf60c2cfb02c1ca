"""Smoke tests for the python bindings."""

import re

import pytest

import modalkit


def test_fmt_canonicalizes():
    assert modalkit.fmt("p1->((p2)&p1)") == "p1 -> p2 & p1"
    with pytest.raises(ValueError):
        modalkit.fmt("p1 &")


def test_model_check():
    model = "worlds 2\nrel 0 1\nval p1 0\nval p2 1\n"
    assert modalkit.model_check(model, 0, "p1 & <>p2")
    assert not modalkit.model_check(model, 1, "<>true")


def test_sat_returns_a_checked_witness():
    r = modalkit.sat("p1 & <>[]~p1")
    assert r["status"] == "sat"
    assert modalkit.model_check(r["model"], r["world"], "p1 & <>[]~p1")

    assert modalkit.sat("p1 & <>[]~p1", "KB")["status"] == "unsat"
    assert modalkit.sat("false", "KTB")["status"] == "unsat"


def test_valid():
    assert modalkit.valid("p1 -> []<>p1", "KB")["status"] == "valid"
    r = modalkit.valid("p1 -> []p1", "K")
    assert r["status"] == "invalid"
    assert not modalkit.model_check(r["countermodel"], r["world"], "p1 -> []p1")


def test_qbf():
    assert modalkit.qbf_eval("A p1 E p2 . (p1 -> p2) & (p2 -> p1)")
    assert not modalkit.qbf_eval("A p1 . p1")

    translation = modalkit.qbf_translate("E p1 . p1")
    assert translation.startswith("p2 & ")
    assert modalkit.qbf_translate("E p1 . p1", negated=True) == "~(" + translation + ")"

    model, root = modalkit.qbf_witness("E p1 . p1")
    assert root == 0
    assert modalkit.model_check(model, root, translation)
    with pytest.raises(ValueError):
        modalkit.qbf_witness("A p1 . p1")


def test_onevar_pipeline():
    starred = modalkit.star("p1 & <>p2")
    assert set(re.findall(r"p\d+", starred)) == {"p1"}

    embedded = modalkit.embed("p1 -> []<>p1")
    assert set(re.findall(r"p\d+", embedded)) == {"p1"}

    chain = modalkit.chain_model(1)
    assert chain.startswith("worlds 7\n")
    assert modalkit.model_check(chain, 0, "p1")

    attached = modalkit.attach("worlds 1\nrel 0 0\nval p1 0\nval p2 0\n", 1, "KTB")
    assert attached.startswith("worlds 21\n")
    with pytest.raises(ValueError):
        modalkit.attach("worlds 1\nrel 0 0\nval p1 0\n", 1, "KTB")


def test_selftest_single_suite():
    results = modalkit.selftest(suite="chain-structure")
    assert results == [
        ("chain-structure", True, "world counts and frame properties for k <= 10")
    ]
