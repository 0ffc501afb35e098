"""Python bindings for the rhosk rewriting engine."""

import json

from ._rhosk import BackinterpError, ParseError, backinterp, bisim, canon_process, interp, run, sort

__all__ = [
    "BackinterpError",
    "ParseError",
    "backinterp",
    "bisim",
    "canon_process",
    "interp",
    "run",
    "sort",
    "trace",
]


def trace(calculus, term, *, strategy="first", seed=0, fuel=1000, gas=None):
    """Reduce `term` and return the trace as a parsed JSON object."""
    args = ["trace", "--calculus", calculus, "--strategy", strategy,
            "--seed", str(seed), "--fuel", str(fuel), "--format", "json"]
    if gas is not None:
        args += ["--gas", str(gas)]
    code, out, err = run(args + [term])
    if code not in (0, 2):
        raise ValueError(err.strip())
    return json.loads(out)
