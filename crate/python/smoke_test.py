"""Smoke test for the Python bindings.

Build and run from the repository root:

    cargo build -p coxeter-growth-py --features extension-module
    cp target/debug/libcoxeter_growth_py.so python/coxeter_growth_py.so
    python3 python/smoke_test.py
"""

import json
import pathlib
import sys

HERE = pathlib.Path(__file__).resolve().parent
ROOT = HERE.parent
sys.path.insert(0, str(HERE))

import coxeter_growth_py as cg  # noqa: E402

FIXTURES = ROOT / "crates" / "core" / "fixtures"
SCHEMA = ROOT / "crates" / "core" / "schema" / "growth_report.schema.json"


def fixture(name):
    return cg.Diagram.parse((FIXTURES / f"{name}.cox").read_text())


def main():
    golden = fixture("golden")
    assert golden.rank == 3
    assert golden.label(1, 2) is None and golden.label(1, 3) == 2
    assert golden.is_infinity_spanned() and not golden.is_free_product()
    assert cg.Diagram(3, [(1, 2, None), (2, 3, None)]) == golden
    assert cg.Diagram.parse(golden.to_text()) == golden

    roots = cg.small_roots(fixture("golden_m13_4"))
    assert roots["count"] == 5, roots

    shortlex, geo = cg.automata(golden)
    assert shortlex.kind == "ShortLex" and geo.kind == "Geo", (shortlex, geo)
    assert shortlex.count_words(6) == [1, 3, 5, 8, 13, 21, 34]
    assert geo.count_words(3) == [1, 3, 6, 10]
    assert shortlex.accepts([1, 3]) != shortlex.accepts([3, 1])
    assert geo.accepts([1, 3]) and geo.accepts([3, 1])
    assert not geo.accepts([1, 1])
    assert shortlex.perron_certificate()["conclusion"] == "CertifiedPerron"
    assert geo.to_dot().startswith("digraph")

    w, g = cg.oracle_counts(golden, 6)
    assert w == shortlex.count_words(6) and g == geo.count_words(6)

    # counts past 2^64 come back as Python ints
    big, _ = cg.automata(cg.Diagram.universal(3))
    assert big.count_words(80)[80] == 3 * 2**79

    report = cg.analyze(golden, k=25, oracle=True, corroborate=True)
    assert report["oracle"]["w_agrees"] and report["oracle"]["g_agrees"]
    assert abs(float(report["omega"]["lo_decimal"]) - 1.6180339887) < 1e-6
    assert report["delta"]["strict_domination"]

    try:
        import jsonschema
    except ImportError:
        print("jsonschema not installed; schema check skipped")
    else:
        schema = json.loads(SCHEMA.read_text())
        for name in ["universal3", "golden", "infinite_dihedral", "finite_a2", "pentagon"]:
            for extra in [False, True]:
                jsonschema.validate(cg.analyze(fixture(name), k=10, oracle=extra, corroborate=extra), schema)

    for bad, exc in [("rank 2\nedge 1 3 inf\n", ValueError)]:
        try:
            cg.Diagram.parse(bad)
        except exc:
            pass
        else:
            raise AssertionError("parse error not raised")
    try:
        cg.automata(cg.Diagram(4, [(1, 2, None), (3, 4, None)]))
    except ValueError:
        pass
    else:
        raise AssertionError("disconnected diagram accepted")

    print("python smoke test: ok")


if __name__ == "__main__":
    main()
