"""Smoke test for the qeuclid extension module.

Build and install first, e.g. `maturin build --release -m crates/python/Cargo.toml`
followed by `pip install target/wheels/qeuclid-*.whl`, then run this file.
"""

import json
import pathlib

import qeuclid

CONFIGS = pathlib.Path(__file__).resolve().parent.parent / "configs"


def check_pi_degree():
    for n in range(1, 5):
        for m in (3, 5, 7, 9):
            r = qeuclid.pi_degree(n, m)
            assert r["degree"] == m ** (n - 1), (n, m, r)
    for n in (1, 2):
        for m in (3, 5):
            assert qeuclid.image_cardinality(n, m) == qeuclid.brute_force_image(n, m)
    snf = qeuclid.smith_normal_form([[2, 4, 4], [-6, 6, 12], [10, -4, -16]])
    assert snf["divisors"] == ["2", "6", "12"], snf


def check_rewriter():
    assert all(c["passed"] for c in qeuclid.verify_identities(2)["checks"])
    assert all(c["passed"] for c in qeuclid.verify_central_powers(2, 3)["checks"])
    assert qeuclid.check_local_confluence(2)["failures"] == []
    assert qeuclid.straighten(2, "x2*y1") == "q^-1*y1*x2"
    assert qeuclid.straighten(2, "x1^3*y2 - y2*x1^3", m=3) == "0"


def check_modules():
    for path in sorted(CONFIGS.glob("case*_n[23]_*.json")):
        module = qeuclid.Module.from_config(path.read_text())
        report = module.verify()
        assert report["passed"], (path.name, report)
        assert report["commutant"]["dimension"] == 1
        assert module.dimension == module.m ** (module.n - 1)
        again = qeuclid.Module.from_json(module.to_json())
        assert again.to_json() == module.to_json()
        print(f"  {path.name}: {module!r}")

    module = qeuclid.Module.from_config((CONFIGS / "caseIII_n3_m3.json").read_text())
    assert module.case == "III"
    assert module.relation_failures() == []
    assert module.direct_sum(module).commutant_dimension() >= 2
    assert module.matrix("x1")[0] == (0, 0, ["-1/2", "0"])


def check_errors():
    bad = {"m": 4, "k": 1, "n": 2, "alpha1": "1", "alpha": ["1"], "beta": ["auto"], "lambda": ["1", "1"]}
    try:
        qeuclid.Module.from_config(json.dumps(bad))
    except ValueError as e:
        assert "m must be odd" in str(e)
    else:
        raise AssertionError("even m accepted")
    bad.update(m=3, **{"lambda": ["1", "0"]})
    try:
        qeuclid.Module.from_config(json.dumps(bad))
    except ValueError as e:
        assert "torsion parameters" in str(e)
    else:
        raise AssertionError("lambda = 0 accepted")


if __name__ == "__main__":
    print(f"qeuclid {qeuclid.__version__}")
    check_pi_degree()
    check_rewriter()
    check_modules()
    check_errors()
    print("smoke test passed")
