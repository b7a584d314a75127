import json
from fractions import Fraction
import os
import tempfile

import pytest

import qpencil


def test_hilbert_symbol():
    assert qpencil.hilbert_symbol(-1, -1) == -1
    assert qpencil.hilbert_symbol(-1, -1, 2) == -1
    assert qpencil.hilbert_symbol(-1, -1, 3) == 1
    assert qpencil.hilbert_symbol("2/3", 5, 5) == qpencil.hilbert_symbol(6, 5, 5)
    with pytest.raises(qpencil.QpencilError):
        qpencil.hilbert_symbol(1, 1, 4)


def test_conic_point():
    x, y, z = qpencil.conic_point(1, 1, -2)
    assert x * x + y * y - 2 * z * z == 0
    assert qpencil.conic_point(1, 1, 1) is None
    assert qpencil.conic_point(1, 1, -3) is None


def test_generate_and_find_point():
    inst = qpencil.generate(n=5, seed=3)
    assert qpencil.validate_instance(inst)["n"] == 5
    res = qpencil.find_point(inst)
    assert res["outcome"] == "point-found"
    x = [int(v) for v in res["point"]]
    for name in ("F", "G"):
        m = [[Fraction(str(e)) for e in row] for row in inst[name]]
        assert sum(m[i][j] * x[i] * x[j] for i in range(len(x)) for j in range(len(x))) == 0


def test_cli_round_trip():
    inst = qpencil.generate(n=6, seed=2)
    with tempfile.TemporaryDirectory() as d:
        path = os.path.join(d, "inst.json")
        with open(path, "w") as f:
            json.dump(inst, f)
        code, out, _ = qpencil.run(["find-point", path])
        assert code == qpencil.EXIT_OK
        assert qpencil.replay(out) == (True, [])
        code, _, err = qpencil.run(["find-point", path, "--threads", "0"])
        assert code == qpencil.EXIT_INVALID and err


def test_invalid_instance():
    inst = qpencil.generate(n=4, seed=1)
    inst["F"][0][1] = "7"
    with pytest.raises(qpencil.QpencilError, match="not symmetric"):
        qpencil.validate_instance(inst)
