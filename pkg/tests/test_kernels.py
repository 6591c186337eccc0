"""The compiled and pure-Python kernels must agree exactly."""
import json
import os
import subprocess
import sys
from pathlib import Path

import pytest
from hypothesis import given
from hypothesis import strategies as st

from catcomp import _kernels
from catcomp.fincat import FinCategory
from catcomp.fixtures import finset_category, transformation_monoid

from conftest import ALL_CATEGORIES

py = _kernels.python_kernels
cy = _kernels.compiled_kernels
needs_compiled = pytest.mark.skipif(cy is None, reason="compiled kernels not built")

CATEGORIES = [m() for m in ALL_CATEGORIES] + [
    finset_category([0, 1, 2]),
    transformation_monoid([(1, 0, 0), (0, 0, 2)], 3),
    transformation_monoid([(1, 2, 0)], 3),
]


def outputs(k, c):
    args = c.kernel_args()
    dom_arr, comp, hom_off, hom_flat, n_obj = args
    n = len(c.morphisms)
    res = {"assoc": list(k.assoc_violations(c.dom_arr, c.cod_arr, c.comp_arr))}
    res["mono"] = [k.mono_witness(i, *args) for i in range(n)]
    cones = {}
    for f in range(n):
        for g in range(n):
            if c.cod_arr[f] == c.cod_arr[g]:
                cones[(f, g)] = [tuple(x) for x in k.pullback_cones(f, g, *args, False)]
                first = [tuple(x) for x in k.pullback_cones(f, g, *args, True)]
                assert first == cones[(f, g)][:1]
    res["cones"] = cones
    res["universal"] = {
        (p, p1, p2, f, g): bool(k.is_universal_cone(p, p1, p2, f, g, *args))
        for (f, g) in cones
        for p in range(n_obj)
        for p1 in range(n) if c.dom_arr[p1] == p and c.cod_arr[p1] == c.dom_arr[f]
        for p2 in range(n) if c.dom_arr[p2] == p and c.cod_arr[p2] == c.dom_arr[g]
    }
    return res


def test_backend_is_reported():
    assert _kernels.BACKEND in ("python", "cython")
    assert py.BACKEND == "python"


@needs_compiled
def test_compiled_backend_is_default():
    if os.environ.get("CATCOMP_PURE_PYTHON", "") in ("", "0"):
        assert _kernels.BACKEND == "cython"


def test_pure_python_can_be_forced():
    env = dict(os.environ, CATCOMP_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", "from catcomp import _kernels; print(_kernels.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"


@needs_compiled
@pytest.mark.parametrize("c", CATEGORIES, ids=lambda c: c.name or "anon")
def test_backends_agree_on_fixtures(c):
    assert outputs(py, c) == outputs(cy, c)


@needs_compiled
@given(st.integers(1, 3).flatmap(
    lambda k: st.lists(st.tuples(*[st.integers(0, k - 1)] * k), min_size=1, max_size=2)))
def test_backends_agree_on_random_monoids(gens):
    c = transformation_monoid(gens, len(gens[0]))
    assert outputs(py, c) == outputs(cy, c)


@needs_compiled
def test_backends_agree_on_broken_table():
    comp = {("1", "1"): "1", ("1", "a"): "a", ("a", "1"): "a", ("1", "b"): "b", ("b", "1"): "b",
            ("a", "a"): "b", ("a", "b"): "b", ("b", "a"): "a", ("b", "b"): "b"}
    c = FinCategory(["m"], [("1", "m", "m"), ("a", "m", "m"), ("b", "m", "m")], {"m": "1"}, comp)
    assert py.assoc_violations(c.dom_arr, c.cod_arr, c.comp_arr) == \
        cy.assoc_violations(c.dom_arr, c.cod_arr, c.comp_arr) != []


def test_benchmark_runs():
    bench = Path(__file__).resolve().parent.parent / "benchmarks" / "bench_kernels.py"
    out = subprocess.run([sys.executable, str(bench), "--repeat", "1", "--json"],
                         capture_output=True, text=True, check=True)
    rows = json.loads(out.stdout)
    assert {r["category"] for r in rows} >= {"DIAMOND", "FinSet{1,2,3}"}
    assert all(r["python"] >= 0 for r in rows)
