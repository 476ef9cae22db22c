#!/usr/bin/env python3
"""Smoke test for the tdg_py extension module.

Builds nothing itself: it locates the compiled cdylib under target/, copies
it next to a temp directory as an importable module, and exercises the main
surface: parse, solve, check, classify, generate.

Usage:
    cargo build -p tdg-py --release   (or without --release)
    python3 python/smoke_test.py
"""

import json
import shutil
import sys
import tempfile
from pathlib import Path

REPO = Path(__file__).resolve().parent.parent


def import_tdg_py():
    candidates = [
        REPO / "target" / "release" / "libtdg_py.so",
        REPO / "target" / "debug" / "libtdg_py.so",
        REPO / "target" / "release" / "libtdg_py.dylib",
        REPO / "target" / "debug" / "libtdg_py.dylib",
    ]
    built = next((p for p in candidates if p.exists()), None)
    if built is None:
        sys.exit("cdylib not found; run `cargo build -p tdg-py` first")
    staging = Path(tempfile.mkdtemp(prefix="tdg_py_"))
    suffix = ".so" if built.suffix == ".so" else ".so"  # CPython loads .so on mac too
    shutil.copy2(built, staging / f"tdg_py{suffix}")
    sys.path.insert(0, str(staging))
    import tdg_py

    return tdg_py


def main():
    tdg = import_tdg_py()

    # A 4-path with one agent holding a friend (+1) and an enemy (-3).
    instance = tdg.Instance.from_json(
        json.dumps(
            {
                "vertices": 4,
                "edges": [[0, 1], [1, 2], [2, 3]],
                "agents": ["p", "q", "e"],
                "utilities": [[0, 1, -3], [0, 0, 0], [0, 0, 0]],
                "dff": {"kind": "reciprocal"},
            }
        )
    )
    assert instance.agent_count == 3 and instance.vertex_count == 4

    classify = instance.classify()
    assert classify.classification == "single-source"
    assert classify.pivot == "p"
    assert classify.is_path

    outcome = instance.solve()
    assert outcome.answer, "a 4-path leaves room to balance the enemy"
    assert outcome.algorithm == "single-source"
    # The friend sits next to p, the enemy at the far end: 1*1 - 3*(1/3) = 0.
    report = instance.check(outcome.witness)
    assert report.individually_rational
    assert report.utilities[report.agents.index("p")] == "0"

    brute = instance.solve(algorithm="brute", threads=2)
    assert brute.answer == outcome.answer

    # Generate the independent-set gadget for H = P3, k = 2 and decide it.
    source = json.dumps(
        {
            "source": {
                "kind": "independent-set",
                "vertices": 3,
                "edges": [[0, 1], [1, 2]],
                "k": 2,
            }
        }
    )
    doc = json.loads(tdg.generate("independent-set", source))
    assert doc["gadget"] == "independent-set"
    gadget = tdg.Instance.from_json(json.dumps(doc["instance"]))
    assert gadget.vertex_count == 4
    solved = gadget.solve(algorithm="brute")
    assert solved.answer, "P3 has an independent set of size 2"
    # The canonical certificate: endpoints plus the guard on the apex.
    cert = gadget.check({"a1": 0, "a2": 2, "g": 3})
    assert cert.individually_rational
    assert cert.utilities == ["0", "0", "1"]

    # Invalid documents raise ValueError.
    try:
        tdg.Instance.from_json("{}")
    except ValueError:
        pass
    else:
        raise AssertionError("expected ValueError for an empty document")

    print("tdg_py smoke test: all checks passed")


if __name__ == "__main__":
    main()
