import json
import pathlib

import jsonschema
import pytest

rhosk = pytest.importorskip("rhosk")

SCHEMA = json.loads(
    (pathlib.Path(__file__).resolve().parents[2] / "schema" / "trace.schema.json").read_text()
)


def test_reduce_example():
    code, out, _ = rhosk.run(["reduce", "--calculus", "ski", "(I K)"])
    assert code == 0
    assert out.splitlines()[0] == "K"


def test_exit_codes():
    assert rhosk.run(["reduce", "--calculus", "ski", "(I"])[0] == 1
    assert rhosk.run(["reduce", "--calculus", "ski", "--fuel", "5", "(((S I) I) ((S I) I))"])[0] == 2
    assert rhosk.run(["sort", "--calculus", "rho-comb", "(0 0)"])[0] == 3


@pytest.mark.parametrize(
    "calculus,term,extra",
    [
        ("ski", "(((S K) K) ((S I) I))", {"fuel": 4}),
        ("ski-whnf", "(((S K) K) ((K I) S))", {}),
        ("ski-gas", "(((S K) K) ((K I) S))", {"gas": 2}),
        ("rho", "for(y <- &0)(y!0) | &0!0", {}),
        ("rho-comb", "((| C) ((| ((for (& 0)) (K 0))) ((! (& 0)) 0)))", {"strategy": "random", "seed": 3}),
    ],
)
def test_trace_matches_schema(calculus, term, extra):
    trace = rhosk.trace(calculus, term, **extra)
    jsonschema.validate(trace, SCHEMA)
    assert trace["calculus"] == calculus
    assert trace["steps"]


def test_trace_is_deterministic():
    args = dict(strategy="random", seed=9)
    term = "(((S (K I)) K) (I I))"
    assert rhosk.trace("ski", term, **args) == rhosk.trace("ski", term, **args)


def test_translation_roundtrip():
    p = "for(y <- &0)(*y | y!0) | &0!0"
    c = rhosk.interp(p)
    assert rhosk.sort(c) == "W"
    assert rhosk.canon_process(rhosk.backinterp(c)) == rhosk.canon_process(p)


def test_sorts_and_errors():
    assert rhosk.sort("for") == "N => (N => W) => W"
    assert rhosk.sort("(0 0)") is None
    with pytest.raises(rhosk.ParseError):
        rhosk.interp("for(y <- ")
    with pytest.raises(rhosk.BackinterpError):
        rhosk.backinterp("(& 0)")


def test_bisim():
    assert rhosk.bisim("&0!0", "&0!0 | 0") == "bisimilar"
    assert rhosk.bisim("&0!0", "0", depth=1) == "distinguished"
