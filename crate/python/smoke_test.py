"""Smoke test for the waring_py extension module.

Run after `pip install -e crates/waring-py --no-build-isolation`, or just
after `cargo build -p waring-py --release` (the fallback below loads the
cdylib straight out of target/).
"""

import json
import sys
from fractions import Fraction
from pathlib import Path

try:
    import waring_py
except ImportError:
    import shutil
    import tempfile

    root = Path(__file__).resolve().parent.parent
    for profile in ("release", "debug"):
        built = root / "target" / profile / "libwaring_py.so"
        if built.exists():
            stage = Path(tempfile.mkdtemp(prefix="waring-py-"))
            shutil.copy2(built, stage / "waring_py.so")
            sys.path.insert(0, str(stage))
            break
    import waring_py

from waring_py import Form


def check_forms():
    # x (x^2 - y^2) (x^2 - 4 y^2): five distinct real roots
    f = Form(5, [0, 4, 0, -5, 0, 1])
    assert f.degree == 5
    assert f.is_hyperbolic()
    assert f.real_root_count() == 5
    assert str(f) == "x^5 - 5*x^3*y^2 + 4*x*y^4"

    half = Form(2, [Fraction(1, 2), 0, 1])
    assert half.coeffs() == [Fraction(1, 2), Fraction(0), Fraction(1)]
    assert half.evaluate(1, 2) == Fraction(3)
    assert half.evaluate("1/2", 0) == Fraction(1, 4)

    assert Form.from_json(f.to_json()) == f
    assert Form.pure_power(1, -1, 3).evaluate(1, 1) == 0
    assert Form.random(5, seed=9) == Form.random(5, seed=9)
    assert (f.derivative_x() + f.derivative_x().scale(-1)).is_zero()

    try:
        Form(2, [0.5, 0, 1])
    except ValueError as e:
        assert "exact" in str(e)
    else:
        raise AssertionError("float coefficients must be rejected")


def check_rank():
    conic = Form(2, [1, 0, 1])
    cert = waring_py.rank(conic)
    assert cert["schema"] == waring_py.SCHEMA_VERSION
    assert cert["complex_rank"] == 2
    assert (cert["real_lo"], cert["real_hi"]) == (2, 2)
    assert cert["exact"]
    waring_py.verify_certificate(cert)
    waring_py.verify_certificate(json.dumps(cert))

    hyp = Form(5, [0, 4, 0, -5, 0, 1])
    cert = waring_py.rank(hyp)
    assert (cert["real_lo"], cert["real_hi"]) == (5, 5) and cert["exact"]

    # (x + 2y)^5 - (x - y)^5 has rank 2 over both fields
    quintic = Form(5, [33, 75, 90, 30, 15, 0])
    assert waring_py.complex_rank(quintic) == 2
    h = waring_py.contract(Form(2, [-1, 1, 2]), quintic)
    assert h.is_zero()
    basis = waring_py.apolar_kernel_basis(quintic, 2)
    assert len(basis) == 1 and basis[0].is_hyperbolic()

    dec = waring_py.decompose(quintic)
    assert dec["rank"] == 2 and len(dec["terms"]) == 2
    assert Fraction(dec["residual"]) <= Fraction(dec["tolerance"])


def check_witnesses():
    w = waring_py.witness("dminus1", 6, seed=7)
    assert (w["complex_rank"], w["real_rank"]) == (4, 5)
    assert all(c["passed"] for c in w["checked_hypotheses"])
    waring_py.verify_witness(w)

    tampered = dict(w, real_rank=4)
    try:
        waring_py.verify_witness(tampered)
    except RuntimeError as e:
        assert "rank" in str(e)
    else:
        raise AssertionError("tampered witness must fail verification")

    w = waring_py.witness("intersection", 5)
    assert (w["complex_rank"], w["real_rank"]) == (3, 4)
    waring_py.verify_witness(w)

    for kind, degree in [("hyperbolic", 4), ("generic-span", 5)]:
        waring_py.verify_witness(waring_py.witness(kind, degree, seed=3))


def check_census():
    report = waring_py.census(5, 30, seed=3)
    assert sum(report["counts"].values()) == 30
    assert set(report["counts"]) <= {"3", "4", "5", "rejected_nonsquarefree",
                                     "nongeneric_stratum"}
    again = waring_py.census(5, 30, seed=3, jobs=2)
    assert report == again

    example = report["examples"]["3"]
    f = Form.random(5, seed=example["seed"])
    cert = waring_py.rank(f)
    assert cert["exact"] and cert["real_lo"] == 3


if __name__ == "__main__":
    check_forms()
    check_rank()
    check_witnesses()
    check_census()
    print(f"waring_py {waring_py.__version__}: all smoke checks passed")
