"""Smoke test for the Python bindings.

Build and install first:

    pip install --no-build-isolation -e crates/python
    python3 crates/python/python/smoke_test.py
"""

import cmath
import math

import mpmath

import theta_blaschke as tb


def close(a, b, tol):
    return abs(a - b) <= tol * max(1.0, abs(b))


def test_theta_against_mpmath():
    for t in (0.5, 1.0, 3.0):
        q = math.exp(-math.pi * t)
        for x in (0.1 + 0.05j, 0.37 - 0.2j, 0.25 + 0.4j):
            ours = tb.theta1(x, t)
            ref = complex(mpmath.jtheta(1, mpmath.pi * x, q))
            assert close(ours, ref, 1e-12), (t, x, ours, ref)


def test_validation():
    r = tb.validate_disc([0.1 + 0.2j, 0.4 + 0.7j], 1.0)
    assert r["valid"] and r["nearest_integer"] == 1
    r = tb.validate_disc([0.2 + 0.3j], 1.0)
    assert not r["valid"] and r["violations"][0][0] == "CondD"
    r = tb.validate_halfplane([0.1j, 0.5 + 0.5j], [0.4j, 0.5 + 0.2j], 1.0)
    assert r["valid"] and r["nearest_integer"] == 0


def test_disc_cover():
    h = tb.DiscCover([0.1 + 0.2j, 0.4 + 0.7j], 1.0)
    assert h.degree == 2
    for k in range(16):
        y = k / 16
        assert abs(abs(h(complex(0.0, y))) - 1.0) < 1e-9
        assert abs(abs(h(complex(0.5, y))) - 1.0) < 1e-9
    assert abs(h(0.25 + 0.5j)) < 1.0
    assert abs(h(0.1 + 0.2j)) < 1e-12
    assert h.verify()["overall"]


def test_halfplane_cover():
    h = tb.HalfPlaneCover([0.1j, 0.5 + 0.5j], [0.4j, 0.5 + 0.2j], 1.0)
    assert h(0.4j) is None
    assert h(0.25 + 0.25j).imag > 0
    assert abs(h(h.reference_point) - 1.0) < 1e-12
    # finite-difference check of the logarithmic derivative
    x, step = 0.25 + 0.3j, 1e-6
    fd = (cmath.log(h(x + step)) - cmath.log(h(x - step))) / (2 * step)
    assert abs(fd - h.eta(x)) < 1e-6
    assert h.verify()["overall"]


def test_rational_to_blaschke():
    r = tb.RationalCover([0.0], [1.0], -1.0)
    b = r.to_blaschke()
    assert abs(b.zeros[0] - complex(-1, -2) / 5) < 1e-10
    for u in (0.3 + 0.2j, -1.5 + 0.7j, 2.0 + 0.0j):
        assert abs(tb.cayley(r(u)) - b(tb.cayley(u))) < 1e-10


def test_generation_and_errors():
    d = tb.random_divisor(2, 4, "halfplane", 2.0)
    assert tb.validate_halfplane(d["zeros"], d["poles"], 2.0)["valid"]
    try:
        tb.random_divisor(1, 1, "disc", 1.0)
    except ValueError:
        pass
    else:
        raise AssertionError("a single-zero disc divisor must be refused")


def test_reciprocity():
    assert tb.reciprocity_boundary(0.2j, 0.5 + 0.7j, 1.0)["overall"]
    assert tb.reciprocity_mirror(0.25 + 0.3j, 1.0)["overall"]


if __name__ == "__main__":
    tests = [(name, fn) for name, fn in sorted(globals().items()) if name.startswith("test_")]
    for name, fn in tests:
        fn()
        print(f"ok {name}")
    print(f"{len(tests)} smoke tests passed")
